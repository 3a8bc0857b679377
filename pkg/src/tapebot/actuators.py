"""TB6612 H-bridge logic, lumped DC motor response, delivery servo and LEDs."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace


class Level(enum.IntEnum):
    L = 0
    H = 1

    def __invert__(self):
        return Level.L if self is Level.H else Level.H


class ChannelMode(enum.Enum):
    ShortBrake = "ShortBrake"
    CCW = "CCW"
    CW = "CW"
    Stop = "Stop"
    Standby = "Standby"


@dataclass(frozen=True)
class HBridgeInputs:
    in1: Level
    in2: Level
    pwm_duty: int
    stby: Level

    def __post_init__(self):
        if not 0 <= self.pwm_duty <= 255:
            raise ValueError(f"pwm_duty {self.pwm_duty} outside 0..255")


@dataclass(frozen=True)
class MotorParams:
    omega_max: float = 20.0
    tau_drive: float = 0.05
    tau_coast: float = 0.4
    tau_brake: float = 0.02

    def __post_init__(self):
        for name in ("omega_max", "tau_drive", "tau_coast", "tau_brake"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class ServoState:
    angle: float = 0.0
    commanded: float = 0.0
    slew_rate: float = 400.0

    def __post_init__(self):
        if not (0 <= self.angle <= 180 and 0 <= self.commanded <= 180):
            raise ValueError("servo angles must lie in [0, 180]")
        if self.slew_rate <= 0:
            raise ValueError("slew_rate must be positive")


@dataclass(frozen=True)
class LedState:
    on: bool = False


def channel_mode(inputs: HBridgeInputs) -> ChannelMode:
    """Output mode of one bridge channel; PWM high/low means duty > 0 / duty == 0."""
    if inputs.stby is Level.L:
        return ChannelMode.Standby
    in1, in2, pwm_high = inputs.in1, inputs.in2, inputs.pwm_duty > 0
    if in1 is Level.H and in2 is Level.H:
        return ChannelMode.ShortBrake
    if in1 is Level.L and in2 is Level.L:
        return ChannelMode.Stop
    if not pwm_high:
        return ChannelMode.ShortBrake
    return ChannelMode.CW if in1 is Level.H else ChannelMode.CCW


def motor_target(mode: ChannelMode, duty: int, params: MotorParams) -> tuple[float, float]:
    """Steady-state wheel speed and time constant for a channel in ``mode``."""
    if mode is ChannelMode.CW:
        return params.omega_max * duty / 255, params.tau_drive
    if mode is ChannelMode.CCW:
        return -params.omega_max * duty / 255, params.tau_drive
    if mode is ChannelMode.ShortBrake:
        return 0.0, params.tau_brake
    return 0.0, params.tau_coast


def step_motor(omega: float, target_omega: float, tau: float, dt: float) -> float:
    """Exact first-order lag response over ``dt``."""
    if dt <= 0 or tau <= 0:
        raise ValueError("dt and tau must be positive")
    return target_omega + (omega - target_omega) * math.exp(-dt / tau)


def step_servo(s: ServoState, dt: float) -> ServoState:
    if dt <= 0:
        raise ValueError("dt must be positive")
    err = s.commanded - s.angle
    move = s.slew_rate * dt
    if abs(err) <= move:
        return replace(s, angle=s.commanded)
    return replace(s, angle=s.angle + math.copysign(move, err))


def mean_motor_speed(omega: float, target_omega: float, tau: float, dt: float) -> float:
    """Average speed over ``dt`` along the same first-order response as :func:`step_motor`."""
    if dt <= 0 or tau <= 0:
        raise ValueError("dt and tau must be positive")
    return target_omega + (omega - target_omega) * (tau / dt) * -math.expm1(-dt / tau)
