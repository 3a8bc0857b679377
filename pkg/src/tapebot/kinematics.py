"""Differential-drive pose integration.

Wheel speeds are held constant over a step, so the chassis traces an exact
circular arc (or a straight segment) rather than an Euler approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# below this yaw rate the arc formula loses precision to v / w
STRAIGHT_YAW_RATE = 1e-9


def normalize_angle(a: float) -> float:
    """Wrap an angle into (-pi, pi]."""
    a = math.remainder(a, 2 * math.pi)
    if a <= -math.pi:
        a += 2 * math.pi
    return a


@dataclass(frozen=True)
class Pose:
    x: float
    y: float
    heading: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x, self.y, self.heading)):
            raise ValueError(f"non-finite pose {self}")


@dataclass(frozen=True)
class ChassisParams:
    wheel_radius: float = 0.0335
    track_width: float = 0.15

    def __post_init__(self):
        if self.wheel_radius <= 0 or self.track_width <= 0:
            raise ValueError("wheel_radius and track_width must be positive")


def body_velocity(omega_left: float, omega_right: float, chassis: ChassisParams) -> tuple[float, float]:
    """Forward speed (m/s) and yaw rate (rad/s) for the given wheel speeds."""
    r = chassis.wheel_radius
    v = r * (omega_left + omega_right) / 2
    w = r * (omega_right - omega_left) / chassis.track_width
    return v, w


def step_pose(pose: Pose, omega_left: float, omega_right: float,
              chassis: ChassisParams, dt: float) -> Pose:
    if dt <= 0:
        raise ValueError("dt must be positive")
    v, w = body_velocity(omega_left, omega_right, chassis)
    th = pose.heading
    if abs(w) < STRAIGHT_YAW_RATE:
        return Pose(pose.x + v * math.cos(th) * dt, pose.y + v * math.sin(th) * dt, th)
    th1 = th + w * dt
    radius = v / w
    return Pose(pose.x + radius * (math.sin(th1) - math.sin(th)),
                pose.y - radius * (math.cos(th1) - math.cos(th)),
                normalize_angle(th1))
