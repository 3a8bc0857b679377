import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from tapebot.kinematics import Pose
from tapebot.sensors import SensorGeometry, SensorReading, read_sensors, sensor_positions
from tapebot.track import Track, TrackCanvas, straight_track

G = SensorGeometry()


def approx_point(p, x, y):
    return p.x == pytest.approx(x, abs=1e-12) and p.y == pytest.approx(y, abs=1e-12)


def test_positions_axis_aligned():
    left, mid, right = sensor_positions(Pose(0, 0, 0), G)
    assert approx_point(left, 0.06, 0.013)
    assert approx_point(mid, 0.06, 0)
    assert approx_point(right, 0.06, -0.013)


def test_positions_heading_up():
    left, mid, right = sensor_positions(Pose(0, 0, math.pi / 2), G)
    assert approx_point(left, -0.013, 0.06)
    assert approx_point(mid, 0, 0.06)
    assert approx_point(right, 0.013, 0.06)


def test_positions_reversed():
    _, mid, _ = sensor_positions(Pose(1, 2, math.pi), G)
    assert approx_point(mid, 0.94, 2)


def test_centered_on_straight_tape():
    t = straight_track(1.0)
    pose = Pose(0.2, 0.05, 0.0)
    left, mid, right = sensor_positions(pose, G)
    # tape spans y in [0.041, 0.059]; outer elements sit 13 mm off center, past the 9 mm half width
    assert abs(left.y - 0.05) > 0.009 and abs(right.y - 0.05) > 0.009
    assert read_sensors(t, pose, G) == SensorReading(0, 1, 0)


def test_all_white():
    t = Track.from_mask(np.zeros((50, 50), bool), 1000)
    assert read_sensors(t, Pose(0.01, 0.025, 0), G) == (0, 0, 0)


def test_crossbar_reads_all_dark():
    canvas = TrackCanvas(0.5, 0.1).line(0, 0.05, 0.5, 0.05, 0.018)
    canvas.rect(0.25, 0.05 - 0.015, 0.28, 0.05 + 0.015)
    t = canvas.to_track()
    assert read_sensors(t, Pose(0.205, 0.05, 0.0), G) == (1, 1, 1)


def test_geometry_validation():
    with pytest.raises(ValueError):
        SensorGeometry(lateral_spacing=0)
    with pytest.raises(ValueError):
        SensorGeometry(threshold=1.0)


@st.composite
def masks(draw):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    return rng.random((40, 30)) < 0.5


@given(masks(), st.floats(0.005, 0.025), st.floats(0.005, 0.035),
       st.floats(-math.pi, math.pi), st.integers(1, 3))
def test_invariant_under_grid_rotation(mask, x, y, heading, quarter_turns):
    geom = SensorGeometry(forward_offset=0.004, lateral_spacing=0.003)
    cpm = 1000
    track = Track.from_mask(mask, cpm)
    pose = Pose(x, y, heading)
    # floor indexing is only rotation-symmetric away from cell edges
    for p in sensor_positions(pose, geom):
        for v in (p.x * cpm, p.y * cpm):
            assume(abs(v - round(v)) > 1e-6)
    rot_mask, rot_pose = mask, pose
    for _ in range(quarter_turns):
        # rotate +90 degrees about the origin, then shift back into the first quadrant
        h = rot_mask.shape[0] / cpm
        rot_mask = np.rot90(rot_mask, -1)
        rot_pose = Pose(h - rot_pose.y, rot_pose.x, rot_pose.heading + math.pi / 2)
    assert read_sensors(Track.from_mask(rot_mask, cpm), rot_pose, geom) == read_sensors(track, pose, geom)


@given(masks(), st.integers(0, 39), st.integers(0, 29), st.floats(0, 0.03), st.floats(0, 0.04),
       st.floats(-math.pi, math.pi))
def test_darkening_only_sets_bits(mask, row, col, x, y, heading):
    geom = SensorGeometry(forward_offset=0.005, lateral_spacing=0.004)
    pose = Pose(x, y, heading)
    before = read_sensors(Track.from_mask(mask, 1000), pose, geom)
    darker = mask.copy()
    darker[row, col] = True
    after = read_sensors(Track.from_mask(darker, 1000), pose, geom)
    assert all(a >= b for a, b in zip(after, before))
