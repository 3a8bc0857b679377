"""JSON scenario documents.

A scenario file mirrors :class:`~tapebot.sim_engine.Scenario`; the track is a
path to a TRACK v1 file, resolved relative to the scenario file::

    {
      "track": "straight.track",
      "initial_pose": {"x": 0.05, "y": 0.05, "heading_deg": 0},
      "max_time": 7.0,
      "control": {"one_shot_delivery": true},
      "ir_events": [{"time": 1.0, "button": "Button2"},
                    {"time": 1.5, "pulses": "9000 -4500 560"}],
      "assertions": [{"kind": "OnLineFraction", "min_fraction": 0.95,
                      "start_t": 0, "end_t": 7}]
    }

Optional sections: ``chassis``, ``sensor_geometry``, ``motor_params``,
``control``, ``sensor_noise`` (``flip_probability``, ``seed``), plus the
scalars ``physics_dt``, ``control_period``, ``servo_slew_rate`` and
``phase_wiring`` (``"as_wired"`` or ``"as_named"``).
"""

from __future__ import annotations

import copy
import json
import math
from pathlib import Path
from typing import Any, Iterable

from .actuators import MotorParams
from .controller import ControlConfig, PhaseWiring
from .ir_codec import Button, PulseTrain
from .kinematics import ChassisParams, Pose
from .sensors import SensorGeometry
from .sim_engine import ASSERTION_KINDS, IrEvent, Scenario, ScenarioError
from .track import TrackFormatError, read_track_file

REQUIRED_KEYS = ("track", "initial_pose", "max_time", "assertions")
OPTIONAL_KEYS = ("chassis", "sensor_geometry", "motor_params", "control", "ir_events",
                 "physics_dt", "control_period", "sensor_noise", "servo_slew_rate",
                 "phase_wiring")

_SECTIONS = {"chassis": ChassisParams, "sensor_geometry": SensorGeometry,
             "motor_params": MotorParams, "control": ControlConfig}


def parse_override(text: str) -> tuple[list[str], Any]:
    """Split ``a.b.c=value``; the value is read as JSON when it parses, else as a string."""
    key, sep, raw = text.partition("=")
    if not sep or not key:
        raise ScenarioError(f"override {text!r} is not of the form key=value")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key.split("."), value


def apply_overrides(data: dict, overrides: Iterable[str]) -> dict:
    data = copy.deepcopy(data)
    for text in overrides:
        path, value = parse_override(text)
        node = data
        for part in path[:-1]:
            node = node.setdefault(part, {})
            if not isinstance(node, dict):
                raise ScenarioError(f"override {text!r}: {part!r} is not a section")
        node[path[-1]] = value
    return data


def _build(cls, section: str, values: Any):
    if not isinstance(values, dict):
        raise ScenarioError(f"{section} must be an object")
    try:
        return cls(**values)
    except TypeError as exc:
        raise ScenarioError(f"{section}: {exc}") from None
    except ValueError as exc:
        raise ScenarioError(f"{section}: {exc}") from None


def _ir_event(item: dict):
    if not isinstance(item, dict) or "time" not in item:
        raise ScenarioError(f"ir event {item!r} needs a time")
    extra = set(item) - {"time", "button", "pulses"}
    if extra:
        raise ScenarioError(f"ir event has unknown keys {sorted(extra)}")
    if ("button" in item) == ("pulses" in item):
        raise ScenarioError(f"ir event {item!r} needs exactly one of button or pulses")
    try:
        if "button" in item:
            return IrEvent(float(item["time"]), button=Button[item["button"]])
        pulses = item.get("pulses")
        if isinstance(pulses, list):
            pulses = " ".join(str(v) for v in pulses)
        return IrEvent(float(item["time"]), pulses=PulseTrain.from_text(pulses))
    except KeyError:
        raise ScenarioError(f"unknown button {item['button']!r}") from None
    except ValueError as exc:
        raise ScenarioError(f"ir event at t={item['time']}: {exc}") from None


def _assertion(item: dict):
    if not isinstance(item, dict) or "kind" not in item:
        raise ScenarioError(f"assertion {item!r} needs a kind")
    params = dict(item)
    kind = params.pop("kind")
    if kind not in ASSERTION_KINDS:
        raise ScenarioError(f"unknown assertion kind {kind!r}")
    if kind == "PoseInRegion" and "rectangle" in params:
        params.update(zip(("xmin", "ymin", "xmax", "ymax"), params.pop("rectangle")))
    return _build(ASSERTION_KINDS[kind], f"assertion {kind}", params)


def scenario_from_dict(data: dict, base_dir: Path | str = ".") -> Scenario:
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a JSON object")
    missing = [k for k in REQUIRED_KEYS if k not in data]
    if missing:
        raise ScenarioError(f"missing required keys: {', '.join(missing)}")
    unknown = set(data) - set(REQUIRED_KEYS) - set(OPTIONAL_KEYS)
    if unknown:
        raise ScenarioError(f"unknown keys: {', '.join(sorted(unknown))}")

    track_path = Path(base_dir) / data["track"]
    try:
        track = read_track_file(track_path)
    except FileNotFoundError:
        raise ScenarioError(f"track file not found: {track_path}") from None
    except TrackFormatError as exc:
        raise ScenarioError(f"{track_path}: {exc}") from None

    pose = data["initial_pose"]
    if not isinstance(pose, dict) or set(pose) != {"x", "y", "heading_deg"}:
        raise ScenarioError("initial_pose needs exactly x, y, heading_deg")
    try:
        initial = Pose(float(pose["x"]), float(pose["y"]), math.radians(float(pose["heading_deg"])))
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"initial_pose: {exc}") from None

    kwargs: dict[str, Any] = {}
    for key, cls in _SECTIONS.items():
        if key in data:
            kwargs[key] = _build(cls, key, data[key])
    for key in ("physics_dt", "control_period", "servo_slew_rate"):
        if key in data:
            kwargs[key] = float(data[key])
    if "phase_wiring" in data:
        try:
            kwargs["phase_wiring"] = PhaseWiring(data["phase_wiring"])
        except ValueError:
            raise ScenarioError(f"unknown phase_wiring {data['phase_wiring']!r}") from None
    if "sensor_noise" in data:
        noise = data["sensor_noise"]
        if not isinstance(noise, dict) or set(noise) - {"flip_probability", "seed"}:
            raise ScenarioError("sensor_noise takes flip_probability and seed")
        kwargs["sensor_flip_probability"] = float(noise.get("flip_probability", 0.0))
        kwargs["seed"] = int(noise.get("seed", 0))

    scenario = Scenario(
        track=track, initial_pose=initial, max_time=float(data["max_time"]),
        ir_events=tuple(_ir_event(e) for e in data.get("ir_events", [])),
        assertions=tuple(_assertion(a) for a in data["assertions"]),
        **kwargs)
    scenario.validate()
    return scenario


def load_scenario(path: Path | str, overrides: Iterable[str] = ()) -> Scenario:
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise ScenarioError(f"scenario file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: invalid JSON: {exc}") from None
    return scenario_from_dict(apply_overrides(data, overrides), path.parent)
