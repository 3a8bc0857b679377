import itertools
import math

import pytest
from hypothesis import given, strategies as st

from tapebot.actuators import (ChannelMode, HBridgeInputs, Level, MotorParams, ServoState,
                               channel_mode, mean_motor_speed, motor_target, step_motor,
                               step_servo)

from reference_tables import bridge_oracle

H, L = Level.H, Level.L
P = MotorParams()


@pytest.mark.parametrize("inputs, mode", [
    (HBridgeInputs(L, H, 255, H), ChannelMode.CCW),
    (HBridgeInputs(H, L, 0, H), ChannelMode.ShortBrake),
    (HBridgeInputs(H, L, 200, L), ChannelMode.Standby),
])
def test_channel_mode_examples(inputs, mode):
    assert channel_mode(inputs) is mode


def test_channel_mode_matches_chart_exhaustively():
    for in1, in2, duty, stby in itertools.product((H, L), (H, L), (0, 255), (H, L)):
        expected = bridge_oracle(in1.name, in2.name, "H" if duty else "L", stby.name)
        got = channel_mode(HBridgeInputs(in1, in2, duty, stby))
        if expected is None:
            # the chart leaves IN1=IN2=L with PWM=L blank; both outputs are off either way
            assert (in1, in2, duty, stby) == (L, L, 0, H)
            assert got is ChannelMode.Stop
        else:
            assert got.value == expected


@given(st.sampled_from([H, L]), st.sampled_from([H, L]), st.integers(0, 255))
def test_standby_dominates(in1, in2, duty):
    assert channel_mode(HBridgeInputs(in1, in2, duty, L)) is ChannelMode.Standby


def test_duty_range_checked():
    with pytest.raises(ValueError):
        HBridgeInputs(H, L, 256, H)


def test_motor_targets():
    assert motor_target(ChannelMode.CW, 255, P) == (20.0, 0.05)
    omega, tau = motor_target(ChannelMode.CW, 100, P)
    assert omega == pytest.approx(20 * 100 / 255) and round(omega, 3) == 7.843
    assert tau == 0.05
    assert motor_target(ChannelMode.CCW, 255, P) == (-20.0, 0.05)
    assert motor_target(ChannelMode.Standby, 255, P) == (0.0, 0.4)
    assert motor_target(ChannelMode.Stop, 255, P) == (0.0, 0.4)
    assert motor_target(ChannelMode.ShortBrake, 255, P) == (0.0, 0.02)


def test_step_motor_examples():
    assert step_motor(3.0, 3.0, 0.05, 0.01) == 3.0
    assert step_motor(0, 10, 0.05, 0.05) == pytest.approx(10 * (1 - math.exp(-1)))
    assert round(step_motor(0, 10, 0.05, 0.05), 4) == 6.3212
    assert step_motor(10, 0, 0.02, 0.2) == pytest.approx(4.54e-4, rel=1e-3)


@given(st.floats(-30, 30), st.floats(-30, 30), st.floats(1e-3, 1), st.floats(1e-4, 5))
def test_step_motor_contracts(omega, target, tau, dt):
    assert abs(step_motor(omega, target, tau, dt) - target) <= abs(omega - target)


@given(st.floats(-30, 30), st.floats(-30, 30), st.floats(1e-2, 1), st.floats(1e-3, 0.1))
def test_mean_speed_matches_quadrature(omega, target, tau, dt):
    def midpoint(n):
        h = dt / n
        return sum(target + (omega - target) * math.exp(-(i + 0.5) * h / tau) for i in range(n)) / n

    # Richardson step cancels the h^2 error of the midpoint rule
    quad = (4 * midpoint(2000) - midpoint(1000)) / 3
    assert mean_motor_speed(omega, target, tau, dt) == pytest.approx(quad, rel=1e-6, abs=1e-9)


def test_servo_examples():
    assert step_servo(ServoState(0, 160, 400), 0.1).angle == pytest.approx(40)
    assert step_servo(ServoState(0, 160, 400), 1.0).angle == 160
    assert step_servo(ServoState(160, 160, 400), 0.3).angle == 160


@given(st.floats(0, 180), st.floats(0, 180), st.floats(1, 1000), st.floats(1e-4, 2))
def test_servo_stays_between_angle_and_command(angle, commanded, rate, dt):
    out = step_servo(ServoState(angle, commanded, rate), dt).angle
    assert min(angle, commanded) <= out <= max(angle, commanded)


def test_level_complement():
    assert ~H is L and ~L is H
