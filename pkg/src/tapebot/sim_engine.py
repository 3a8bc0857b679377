"""Fixed-timestep world: track, chassis, sensors, bridge, motors, servo and controller.

Physics advances every ``physics_dt``; the controller runs on every
``control_period`` boundary and its command is latched in between, like pin
states on the microcontroller.  A run is a pure function of its
:class:`Scenario`, including the optional sensor bit-flip noise, which draws
from a seeded generator.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from collections import deque
from dataclasses import asdict, dataclass, field, fields, replace
from typing import NamedTuple, Sequence, Union

import numpy as np

from .actuators import (ChannelMode, MotorParams, ServoState, channel_mode, mean_motor_speed,
                        motor_target, step_motor, step_servo)
from .controller import (ControlConfig, Phase, PhaseWiring, command_to_bridge_inputs,
                         controller_init, controller_step)
from .ir_codec import (REPEAT, Button, NecDecodeError, PulseTrain, button_code, decode_nec,
                       encode_nec, format_code)
from .kinematics import ChassisParams, Pose, step_pose
from .sensors import SensorGeometry, SensorReading, read_sensors
from .track import Track

log = logging.getLogger(__name__)

_EPS = 1e-9
STOPPED_OMEGA = 0.05


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class IrEvent:
    """A remote button press, or a raw pulse train for malformed-signal tests."""

    time: float
    button: Button | None = None
    pulses: PulseTrain | None = None

    def __post_init__(self):
        if (self.button is None) == (self.pulses is None):
            raise ScenarioError("an IR event needs exactly one of button or pulses")

    def train(self) -> PulseTrain:
        if self.button is not None:
            return encode_nec(button_code(self.button))
        return self.pulses


# --- assertions -------------------------------------------------------------

@dataclass(frozen=True)
class DeliveredCount:
    n: int
    at_least: bool = False


@dataclass(frozen=True)
class OnLineFraction:
    min_fraction: float
    start_t: float
    end_t: float


@dataclass(frozen=True)
class StoppedBy:
    t: float


@dataclass(frozen=True)
class PoseInRegion:
    t: float
    xmin: float
    ymin: float
    xmax: float
    ymax: float


@dataclass(frozen=True)
class LedBlinkCount:
    n: int


Assertion = Union[DeliveredCount, OnLineFraction, StoppedBy, PoseInRegion, LedBlinkCount]
ASSERTION_KINDS = {cls.__name__: cls for cls in
                   (DeliveredCount, OnLineFraction, StoppedBy, PoseInRegion, LedBlinkCount)}


def _assertion_times(a: Assertion) -> list[float]:
    if isinstance(a, OnLineFraction):
        return [a.start_t, a.end_t]
    if isinstance(a, (StoppedBy, PoseInRegion)):
        return [a.t]
    return []


@dataclass(frozen=True)
class Scenario:
    track: Track
    initial_pose: Pose
    max_time: float
    chassis: ChassisParams = ChassisParams()
    sensor_geometry: SensorGeometry = SensorGeometry()
    motor_params: MotorParams = MotorParams()
    control: ControlConfig = ControlConfig()
    ir_events: tuple[IrEvent, ...] = ()
    physics_dt: float = 0.001
    control_period: float = 0.010
    assertions: tuple[Assertion, ...] = ()
    sensor_flip_probability: float = 0.0
    seed: int = 0
    servo_slew_rate: float = 400.0
    phase_wiring: PhaseWiring = PhaseWiring.AS_WIRED

    def __post_init__(self):
        object.__setattr__(self, "ir_events", tuple(self.ir_events))
        object.__setattr__(self, "assertions", tuple(self.assertions))

    @property
    def substeps(self) -> int:
        return round(self.control_period / self.physics_dt)

    def validate(self) -> None:
        if self.physics_dt <= 0 or self.control_period <= 0 or self.max_time <= 0:
            raise ScenarioError("physics_dt, control_period and max_time must be positive")
        if self.physics_dt > self.control_period:
            raise ScenarioError("physics_dt must not exceed control_period")
        ratio = self.control_period / self.physics_dt
        if abs(ratio - round(ratio)) > 1e-6:
            raise ScenarioError("control_period must be an integer multiple of physics_dt")
        times = [e.time for e in self.ir_events]
        if times != sorted(times):
            raise ScenarioError("ir_events must be sorted by time")
        if not 0 <= self.sensor_flip_probability <= 1:
            raise ScenarioError("sensor_flip_probability must lie in [0, 1]")
        for a in self.assertions:
            if isinstance(a, OnLineFraction) and a.start_t >= a.end_t:
                raise ScenarioError(f"{a}: window start must precede its end")
            for t in _assertion_times(a):
                if not 0 <= t <= self.max_time + _EPS:
                    raise ScenarioError(f"{a}: time {t} outside [0, {self.max_time}]")


# --- results ----------------------------------------------------------------

@dataclass(frozen=True)
class TraceRecord:
    t: float
    x: float
    y: float
    heading: float
    sensors: tuple[int, int, int]
    duty_left: int
    duty_right: int
    mode_left: ChannelMode
    mode_right: ChannelMode
    omega_left: float
    omega_right: float
    master_enable: int
    led: int
    servo_angle: float
    ir_decoded: str | None = None

    def to_dict(self) -> dict:
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        d["sensors"] = list(self.sensors)
        d["mode_left"] = self.mode_left.value
        d["mode_right"] = self.mode_right.value
        return d


TRACE_FIELDS = [f.name for f in fields(TraceRecord)]


class AssertionOutcome(NamedTuple):
    assertion: Assertion
    passed: bool
    detail: str


@dataclass
class SimResult:
    trace: list[TraceRecord]
    assertion_outcomes: list[AssertionOutcome]
    deliveries: list[float]
    final_pose: Pose
    # (start, end) of every delivery sequence; end is None if cut off by max_time
    delivery_windows: list[tuple[float, float | None]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.assertion_outcomes)


# --- engine -----------------------------------------------------------------

def _decode_event(ev: IrEvent) -> tuple[int | None, str]:
    try:
        result = decode_nec(ev.train())
    except NecDecodeError as exc:
        log.warning("t=%.3f IR decode failed: %s", ev.time, exc)
        return None, f"ERROR:{type(exc).__name__}"
    if result is REPEAT:
        return None, "REPEAT"
    return result, format_code(result)


def run_scenario(s: Scenario) -> SimResult:
    s.validate()
    dt = s.physics_dt
    n_sub = s.substeps
    n_steps = round(s.max_time / dt)
    rng = np.random.default_rng(s.seed)

    pose = s.initial_pose
    omega_l = omega_r = 0.0
    state, cmd = controller_init(s.control)
    servo = ServoState(cmd.servo_command, cmd.servo_command, s.servo_slew_rate)
    events = deque(s.ir_events)
    trace: list[TraceRecord] = []
    deliveries: list[float] = []
    windows: list[list] = []
    mode_r = mode_l = ChannelMode.Standby

    for k in range(n_steps + 1):
        t = k * dt
        if k % n_sub == 0:
            reading = read_sensors(s.track, pose, s.sensor_geometry)
            if s.sensor_flip_probability > 0:
                flips = rng.random(3) < s.sensor_flip_probability
                reading = SensorReading(*(b ^ int(f) for b, f in zip(reading, flips)))

            ir_code, ir_text = None, None
            if events and events[0].time <= t + _EPS:
                ir_code, ir_text = _decode_event(events.popleft())

            before = state
            state, cmd = controller_step(state, reading, ir_code, t, s.control)
            if state.busy is not None and state.busy.phase is Phase.DeliverBlink and (
                    before.busy is None or before.busy.phase is not Phase.DeliverBlink):
                windows.append([t, None])
            if state.deliveries_completed > before.deliveries_completed:
                deliveries.append(t)
                windows[-1][1] = t

            right_in, left_in = command_to_bridge_inputs(cmd, s.phase_wiring)
            mode_r, mode_l = channel_mode(right_in), channel_mode(left_in)
            servo = replace(servo, commanded=cmd.servo_command)
            trace.append(TraceRecord(
                t=round(t, 9), x=pose.x, y=pose.y, heading=pose.heading,
                sensors=tuple(reading), duty_left=cmd.duty_left, duty_right=cmd.duty_right,
                mode_left=mode_l, mode_right=mode_r, omega_left=omega_l, omega_right=omega_r,
                master_enable=int(cmd.master_enable), led=int(cmd.delivery_led),
                servo_angle=servo.angle, ir_decoded=ir_text))
        if k == n_steps:
            break

        target_r, tau_r = motor_target(mode_r, cmd.duty_right, s.motor_params)
        target_l, tau_l = motor_target(mode_l, cmd.duty_left, s.motor_params)
        # wheels follow the lag exactly; the chassis moves on their mean speed over the step
        mean_r = mean_motor_speed(omega_r, target_r, tau_r, dt)
        mean_l = mean_motor_speed(omega_l, target_l, tau_l, dt)
        omega_r = step_motor(omega_r, target_r, tau_r, dt)
        omega_l = step_motor(omega_l, target_l, tau_l, dt)
        pose = step_pose(pose, mean_l, mean_r, s.chassis, dt)
        servo = step_servo(servo, dt)

    result = SimResult(trace=trace, assertion_outcomes=[], deliveries=deliveries,
                       final_pose=pose, delivery_windows=[tuple(w) for w in windows])
    result.assertion_outcomes = [AssertionOutcome(a, *evaluate_assertion(a, result))
                                 for a in s.assertions]
    return result


# --- assertion evaluation ---------------------------------------------------

def _records_from(trace: Sequence[TraceRecord], t: float) -> list[TraceRecord]:
    return [r for r in trace if r.t >= t - _EPS]


def evaluate_assertion(a: Assertion, result: SimResult) -> tuple[bool, str]:
    trace = result.trace
    if not trace:
        raise ValueError("cannot evaluate an assertion on an empty trace")

    if isinstance(a, DeliveredCount):
        got = len(result.deliveries)
        ok = got >= a.n if a.at_least else got == a.n
        return ok, f"{got} completed deliveries (expected {'>= ' if a.at_least else ''}{a.n})"

    if isinstance(a, OnLineFraction):
        if a.start_t >= a.end_t:
            raise ValueError(f"{a}: window start must precede its end")
        window = [r for r in trace if a.start_t - _EPS <= r.t <= a.end_t + _EPS]
        if not window:
            return False, "no control boundaries in window"
        frac = sum(r.sensors[1] for r in window) / len(window)
        return frac >= a.min_fraction, f"middle sensor on line {frac:.4f} of {len(window)} boundaries"

    if isinstance(a, StoppedBy):
        after = _records_from(trace, a.t)
        if not after:
            return False, f"no records at or after t={a.t}"
        moving = [r for r in after
                  if abs(r.omega_left) >= STOPPED_OMEGA or abs(r.omega_right) >= STOPPED_OMEGA]
        if moving:
            r = moving[0]
            return False, f"moving at t={r.t}: omega=({r.omega_left:.4f}, {r.omega_right:.4f})"
        return True, f"|omega| < {STOPPED_OMEGA} rad/s from t={after[0].t}"

    if isinstance(a, PoseInRegion):
        after = _records_from(trace, a.t)
        if not after:
            return False, f"no records at or after t={a.t}"
        r = after[0]
        ok = a.xmin <= r.x <= a.xmax and a.ymin <= r.y <= a.ymax
        return ok, f"pose at t={r.t}: ({r.x:.4f}, {r.y:.4f})"

    if isinstance(a, LedBlinkCount):
        counts = []
        for start, end in result.delivery_windows:
            if end is None:
                continue
            prev = None
            n = 0
            for r in trace:
                if r.t > end + _EPS:
                    break
                if r.t >= start - _EPS and prev is not None and r.led and not prev.led:
                    n += 1
                prev = r
            counts.append(n)
        ok = bool(counts) and all(c == a.n for c in counts)
        return ok, f"blinks per completed delivery: {counts}"

    raise TypeError(f"unknown assertion {a!r}")


# --- trace output -----------------------------------------------------------

def trace_to_jsonl(trace: Sequence[TraceRecord]) -> str:
    return "".join(json.dumps(r.to_dict(), separators=(",", ":")) + "\n" for r in trace)


def trace_to_csv(trace: Sequence[TraceRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRACE_FIELDS)
    for r in trace:
        d = r.to_dict()
        d["sensors"] = "".join(str(b) for b in r.sensors)
        d["ir_decoded"] = d["ir_decoded"] or ""
        w.writerow([d[k] for k in TRACE_FIELDS])
    return buf.getvalue()


def write_trace(trace: Sequence[TraceRecord], path, fmt: str = "jsonl") -> None:
    if fmt == "jsonl":
        text = trace_to_jsonl(trace)
    elif fmt == "csv":
        text = trace_to_csv(trace)
    else:
        raise ValueError(f"unknown trace format {fmt!r}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def assertion_to_dict(a: Assertion) -> dict:
    return {"kind": type(a).__name__, **asdict(a)}


def coast_distance_bound(v0: float, params: MotorParams) -> float:
    """Distance a chassis at speed ``v0`` covers while coasting to rest."""
    return abs(v0) * params.tau_coast


def forward_speed(duty: int, chassis: ChassisParams = ChassisParams(),
                  params: MotorParams = MotorParams()) -> float:
    """Steady straight-line speed (m/s) at the given duty."""
    return chassis.wheel_radius * params.omega_max * duty / 255
