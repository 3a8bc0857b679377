"""Three-element reflective line sensor array (left, middle, right)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .kinematics import Pose
from .track import Point2, Track, sample_reflectance


@dataclass(frozen=True)
class SensorGeometry:
    forward_offset: float = 0.06
    lateral_spacing: float = 0.013
    threshold: float = 0.5

    def __post_init__(self):
        if self.lateral_spacing <= 0:
            raise ValueError("lateral_spacing must be positive")
        if not 0 < self.threshold < 1:
            raise ValueError("threshold must lie in (0, 1)")


class SensorReading(NamedTuple):
    """Digital sensor bits; 1 means the element sees dark tape."""

    left: int
    middle: int
    right: int

    def __str__(self):
        return f"{self.left}{self.middle}{self.right}"


def sensor_positions(pose: Pose, geom: SensorGeometry) -> tuple[Point2, Point2, Point2]:
    c, s = math.cos(pose.heading), math.sin(pose.heading)
    mx = pose.x + geom.forward_offset * c
    my = pose.y + geom.forward_offset * s
    # left is +90 degrees from heading
    lx, ly = -s * geom.lateral_spacing, c * geom.lateral_spacing
    return (Point2(mx + lx, my + ly), Point2(mx, my), Point2(mx - lx, my - ly))


def read_sensors(track: Track, pose: Pose, geom: SensorGeometry) -> SensorReading:
    bits = [int(sample_reflectance(track, p) < geom.threshold)
            for p in sensor_positions(pose, geom)]
    return SensorReading(*bits)
