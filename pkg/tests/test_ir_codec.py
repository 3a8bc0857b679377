import random

import pytest
from hypothesis import given, strategies as st

from tapebot.ir_codec import (FRAME_LENGTH, NEC, REPEAT, BadBit, BadHeader, Button, NecTiming,
                              PulseTrain, Truncated, button_code, decode_nec, encode_nec,
                              encode_repeat, format_code)

codes = st.integers(0, 2**32 - 1)


def test_frame_shape():
    train = encode_nec(0x12345678)
    assert len(train) == FRAME_LENGTH == 67
    assert train.durations[:2] == (9000, 4500)
    assert train.durations[-1] == 560


def test_all_zero_and_all_one_codes():
    zeros = encode_nec(0).durations
    ones = encode_nec(0xFFFFFFFF).durations
    assert all(d == 560 for d in zeros[3:66:2])
    assert all(d == 1690 for d in ones[3:66:2])
    assert all(d == 560 for d in zeros[2:66:2]) and all(d == 560 for d in ones[2:66:2])


def test_most_significant_bit_first():
    d = encode_nec(0x80000001).durations
    assert d[3] == 1690 and d[5] == 560 and d[65] == 1690


@pytest.mark.parametrize("code", [0x00FF6897, 0x00FF9867])
def test_remote_codes_round_trip(code):
    assert decode_nec(encode_nec(code)) == code


def test_buttons():
    assert button_code(Button.Button1) == 0x00FF6897
    assert button_code("Button2") == 0x00FF9867
    assert button_code(Button.Button1) != button_code(Button.Button2)
    # the six-digit form written for the remote is the same value
    assert button_code(Button.Button1) == 0xFF6897


def test_long_header_mark_rejected():
    d = list(encode_nec(0x00FF6897).durations)
    d[0] = 9000 * 1.3
    with pytest.raises(BadHeader):
        decode_nec(PulseTrain(d))


def test_bad_header_space():
    d = list(encode_nec(1).durations)
    d[1] = 3000
    with pytest.raises(BadHeader):
        decode_nec(d)


def test_bad_bit_reports_index():
    d = list(encode_nec(0).durations)
    d[2 + 2 * 7 + 1] = 1100
    with pytest.raises(BadBit) as info:
        decode_nec(d)
    assert info.value.index == 7


def test_truncated():
    d = encode_nec(5).durations
    with pytest.raises(Truncated):
        decode_nec(d[:40])
    with pytest.raises(Truncated):
        decode_nec(d[:1])


def test_repeat_frame():
    assert decode_nec(encode_repeat()) is REPEAT
    assert decode_nec(PulseTrain((9000, 2250, 560))) is REPEAT


@pytest.mark.parametrize("scale", [0.8, 0.9, 1.1, 1.2])
def test_uniform_clock_skew_absorbed(scale):
    assert decode_nec(encode_nec(0x00FF9867).scaled(scale)) == 0x00FF9867


def test_exhaustive_remote_style_codes():
    for cmd in range(256):
        code = 0x00FF0000 | (cmd << 8) | (~cmd & 0xFF)
        assert decode_nec(encode_nec(code)) == code


def test_random_round_trip():
    rng = random.Random(20240417)
    for _ in range(10_000):
        c = rng.getrandbits(32)
        assert decode_nec(encode_nec(c)) == c


@given(codes, st.data())
def test_jitter_within_half_tolerance(code, data):
    half = NEC.tolerance_fraction / 2
    train = encode_nec(code)
    factors = data.draw(st.lists(st.floats(1 - half, 1 + half), min_size=len(train),
                                 max_size=len(train)))
    jittered = PulseTrain(tuple(d * f for d, f in zip(train.durations, factors)))
    assert decode_nec(jittered) == code


@given(codes)
def test_decode_is_pure(code):
    train = encode_nec(code)
    assert decode_nec(train) == decode_nec(PulseTrain(train.durations))


def test_text_form_round_trip():
    train = encode_nec(0x00FF6897)
    text = train.to_text()
    assert text.startswith("9000 -4500 560 -560")
    assert PulseTrain.from_text(text) == train


@pytest.mark.parametrize("text", ["-9000 4500", "9000 4500", "9000 -4500 0"])
def test_text_form_rejects_bad_signs(text):
    with pytest.raises(ValueError):
        PulseTrain.from_text(text)


def test_complement_mismatch_only_warns(caplog):
    with caplog.at_level("WARNING", logger="tapebot.ir_codec"):
        assert decode_nec(encode_nec(0x12345678)) == 0x12345678
    assert "complement" in caplog.text
    caplog.clear()
    with caplog.at_level("WARNING", logger="tapebot.ir_codec"):
        decode_nec(encode_nec(0x00FF6897))
    assert caplog.text == ""


def test_custom_timing():
    slow = NecTiming(header_mark=4500, header_space=4500)
    assert decode_nec(encode_nec(0xABCD, slow), slow) == 0xABCD
    with pytest.raises(BadHeader):
        decode_nec(encode_nec(0xABCD, slow))


def test_timing_validation():
    with pytest.raises(ValueError):
        NecTiming(tolerance_fraction=0.5)
    with pytest.raises(ValueError):
        encode_nec(2**32)


def test_format_code():
    assert format_code(0xFF6897) == "0x00FF6897"
