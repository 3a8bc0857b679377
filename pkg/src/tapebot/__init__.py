"""Desk-scale simulator of an infrared line-tracking delivery robot."""

import logging

from .actuators import (ChannelMode, HBridgeInputs, LedState, Level, MotorParams, ServoState,
                        channel_mode, motor_target, step_motor, step_servo)
from .controller import (ActuatorCommand, Action, ControlConfig, ControllerState, PhaseWiring,
                         classify, command_to_bridge_inputs, controller_init, controller_step)
from .electrical import led_current, pick_kit_resistor, series_resistor
from .ir_codec import REPEAT, Button, NecTiming, PulseTrain, button_code, decode_nec, encode_nec
from .kinematics import ChassisParams, Pose, step_pose
from .scenario_file import load_scenario
from .sensors import SensorGeometry, SensorReading, read_sensors, sensor_positions
from .sim_engine import (DeliveredCount, IrEvent, LedBlinkCount, OnLineFraction, PoseInRegion,
                         Scenario, SimResult, StoppedBy, TraceRecord, evaluate_assertion,
                         run_scenario, trace_to_csv, trace_to_jsonl, write_trace)
from .track import (Point2, Track, TrackCanvas, delivery_track, dump_track, load_track,
                    loop_track, sample_reflectance, straight_track)

logging.getLogger(__name__).addHandler(logging.NullHandler())

__version__ = "0.1.0"
