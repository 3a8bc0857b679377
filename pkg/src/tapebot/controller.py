"""The delivery robot's control program as a non-blocking state machine.

Each call to :func:`controller_step` corresponds to one pass of the
microcontroller loop.  Blocking delays in the original program (the 10 ms turn
nudge, the LED blink delays, the one-second servo hold) become *busy* windows
with a deadline; while a window is open the last command is held and new inputs,
IR codes included, are ignored.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, replace

from .actuators import HBridgeInputs, Level
from .ir_codec import Button, format_code
from .sensors import SensorReading

log = logging.getLogger(__name__)

# slack for comparing float simulation times against deadlines
TIME_EPS = 1e-9


class Action(enum.Enum):
    Forward = "Forward"
    TurnRight = "TurnRight"
    TurnLeft = "TurnLeft"
    Deliver = "Deliver"
    StopAllWhite = "StopAllWhite"
    Hold = "Hold"


class Drive(enum.Enum):
    Forward = "Forward"
    TurnRight = "TurnRight"
    TurnLeft = "TurnLeft"
    Stopped = "Stopped"


class Phase(enum.Enum):
    TurnNudge = "TurnNudge"
    DeliverBlink = "DeliverBlink"
    DeliverHold = "DeliverHold"


@dataclass(frozen=True)
class ControlConfig:
    speed: int = 100
    tspeed: int = 120
    turn_nudge: float = 0.010
    blink_count: int = 5
    blink_on: float = 0.200
    blink_off: float = 0.200
    servo_deploy_angle: float = 160.0
    servo_home_angle: float = 0.0
    deploy_hold: float = 1.000
    one_shot_delivery: bool = False

    def __post_init__(self):
        for name in ("speed", "tspeed"):
            if not 0 <= getattr(self, name) <= 255:
                raise ValueError(f"{name} must lie in 0..255")
        for name in ("turn_nudge", "blink_on", "blink_off", "deploy_hold"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.blink_count < 1:
            raise ValueError("blink_count must be at least 1")
        for name in ("servo_deploy_angle", "servo_home_angle"):
            if not 0 <= getattr(self, name) <= 180:
                raise ValueError(f"{name} must lie in [0, 180]")


@dataclass(frozen=True)
class ActuatorCommand:
    duty_right: int
    duty_left: int
    dir_right: Level
    dir_left: Level
    master_enable: bool
    delivery_led: bool
    servo_command: float


@dataclass(frozen=True)
class Busy:
    phase: Phase
    deadline: float
    blink_index: int = 0


@dataclass(frozen=True)
class ControllerState:
    """Controller memory.  ``command`` is the latched pin state."""

    command: ActuatorCommand
    last_drive: Drive = Drive.Stopped
    busy: Busy | None = None
    delivered_latch: bool = False
    deliveries_completed: int = 0

    @property
    def master_enable(self) -> bool:
        return self.command.master_enable

    @property
    def delivery_led(self) -> bool:
        return self.command.delivery_led

    @property
    def servo_command(self) -> float:
        return self.command.servo_command


_PATTERNS = {
    (0, 1, 0): Action.Forward,
    (0, 0, 1): Action.TurnRight,
    (0, 1, 1): Action.TurnRight,
    (1, 0, 0): Action.TurnLeft,
    (1, 1, 0): Action.TurnLeft,
    (1, 1, 1): Action.Deliver,
    (0, 0, 0): Action.StopAllWhite,
}


def classify(reading: SensorReading) -> Action:
    """Map (left, middle, right) bits to an action; (1, 0, 1) matches no branch."""
    return _PATTERNS.get(tuple(reading), Action.Hold)


def controller_init(config: ControlConfig = ControlConfig()) -> tuple[ControllerState, ActuatorCommand]:
    cmd = ActuatorCommand(duty_right=0, duty_left=0, dir_right=Level.H, dir_left=Level.H,
                          master_enable=True, delivery_led=False,
                          servo_command=config.servo_home_angle)
    return ControllerState(command=cmd), cmd


def _forward(cmd: ActuatorCommand, config: ControlConfig) -> ActuatorCommand:
    return replace(cmd, duty_right=config.speed, duty_left=config.speed,
                   dir_right=Level.H, dir_left=Level.H)


def _emit(state: ControllerState, cmd: ActuatorCommand, **changes) -> tuple[ControllerState, ActuatorCommand]:
    state = replace(state, command=cmd, **changes)
    return state, cmd


def _advance_busy(state: ControllerState, config: ControlConfig) -> tuple[ControllerState, ActuatorCommand]:
    busy = state.busy
    cmd = state.command
    if busy.phase is Phase.TurnNudge:
        return _emit(state, _forward(cmd, config), busy=None, last_drive=Drive.Forward)

    if busy.phase is Phase.DeliverBlink:
        index = busy.blink_index + 1
        if index < 2 * config.blink_count:
            led_on = index % 2 == 0
            step = config.blink_on if led_on else config.blink_off
            return _emit(state, replace(cmd, delivery_led=led_on),
                         busy=Busy(Phase.DeliverBlink, busy.deadline + step, index))
        return _emit(state, replace(cmd, delivery_led=False, servo_command=config.servo_deploy_angle),
                     busy=Busy(Phase.DeliverHold, busy.deadline + config.deploy_hold))

    # DeliverHold finished: re-enable the bridge with both sides forward
    cmd = replace(cmd, master_enable=True, dir_right=Level.H, dir_left=Level.H)
    return _emit(state, cmd, busy=None,
                 delivered_latch=state.delivered_latch or config.one_shot_delivery,
                 deliveries_completed=state.deliveries_completed + 1)


def controller_step(state: ControllerState, reading: SensorReading, ir_code: int | None,
                    now: float, config: ControlConfig = ControlConfig()
                    ) -> tuple[ControllerState, ActuatorCommand]:
    """One control tick.  ``now`` must not decrease between calls."""
    if state.busy is not None:
        if now < state.busy.deadline - TIME_EPS:
            if ir_code is not None:
                log.info("t=%.3f IR %s dropped while %s", now, format_code(ir_code), state.busy.phase.value)
            return state, state.command
        return _advance_busy(state, config)

    # the loop re-homes the servo on every pass
    cmd = replace(state.command, servo_command=config.servo_home_angle)

    if ir_code is not None:
        log.info("t=%.3f IR %s", now, format_code(ir_code))
        if ir_code == Button.Button1.value:
            cmd = replace(cmd, master_enable=True, delivery_led=False)
        elif ir_code == Button.Button2.value:
            cmd = replace(cmd, master_enable=False, delivery_led=True)
        else:
            log.info("t=%.3f IR %s has no binding, ignored", now, format_code(ir_code))

    action = classify(reading)
    if action is Action.Deliver and state.delivered_latch:
        action = Action.Forward

    if action is Action.Forward:
        return _emit(state, _forward(cmd, config), last_drive=Drive.Forward)
    if action is Action.TurnRight or action is Action.TurnLeft:
        right = action is Action.TurnRight
        cmd = replace(cmd, duty_right=config.tspeed, duty_left=config.tspeed,
                      dir_right=Level.H if right else Level.L,
                      dir_left=Level.L if right else Level.H)
        return _emit(state, cmd, busy=Busy(Phase.TurnNudge, now + config.turn_nudge),
                     last_drive=Drive.TurnRight if right else Drive.TurnLeft)
    if action is Action.Deliver:
        cmd = replace(cmd, master_enable=False, delivery_led=True,
                      servo_command=config.servo_home_angle)
        return _emit(state, cmd, busy=Busy(Phase.DeliverBlink, now + config.blink_on, 0))
    if action is Action.StopAllWhite:
        return _emit(state, replace(cmd, duty_right=0, duty_left=0), last_drive=Drive.Stopped)
    return _emit(state, cmd)


class PhaseWiring(enum.Enum):
    """How the two direction pins reach the bridge.

    ``AS_WIRED`` follows the board wiring: pin 7 (``L_Direction`` in the program)
    is AIN1 on the right pair's channel and pin 8 (``R_Direction``) is BIN1 on
    the left pair's.  ``AS_NAMED`` routes each pin to the side its name says;
    under that routing every turn steers away from the tape.
    """

    AS_WIRED = "as_wired"
    AS_NAMED = "as_named"


def command_to_bridge_inputs(cmd: ActuatorCommand, wiring: PhaseWiring = PhaseWiring.AS_WIRED
                             ) -> tuple[HBridgeInputs, HBridgeInputs]:
    """Bridge inputs for (right pair = channel A, left pair = channel B).

    Only one phase pin per channel is wired, so IN2 is the complement of IN1.
    PWM pins are not crossed: ``duty_right`` always drives the right pair.
    """
    stby = Level.H if cmd.master_enable else Level.L
    if wiring is PhaseWiring.AS_WIRED:
        phase_a, phase_b = cmd.dir_left, cmd.dir_right
    else:
        phase_a, phase_b = cmd.dir_right, cmd.dir_left
    right = HBridgeInputs(phase_a, ~phase_a, cmd.duty_right, stby)
    left = HBridgeInputs(phase_b, ~phase_b, cmd.duty_left, stby)
    return right, left
