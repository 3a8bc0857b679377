"""NEC frames for the two remote buttons, and what the decoder does with damage."""

from tapebot import REPEAT, Button, PulseTrain, button_code, decode_nec, encode_nec
from tapebot.ir_codec import NecDecodeError, format_code

for b in Button:
    train = encode_nec(button_code(b))
    print(b.name, format_code(button_code(b)), "frame of", len(train), "durations")
    print("   ", train.to_text()[:60], "...")
    assert decode_nec(train) == button_code(b)

# a receiver with a slow clock stretches every duration by 15%; still within tolerance
stretched = encode_nec(button_code(Button.Button2)).scaled(1.15)
print("stretched:", format_code(decode_nec(stretched)))

# holding a button sends the short repeat frame
print("repeat:", decode_nec(PulseTrain.from_text("9000 -2250 560")) is REPEAT)

# damage: a header that is far too long, and a frame cut short
for text in ("12000 -4500 560 -560", " ".join(encode_nec(0x00FF6897).to_text().split()[:30])):
    try:
        decode_nec(PulseTrain.from_text(text))
    except NecDecodeError as exc:
        print(type(exc).__name__, "-", exc)
