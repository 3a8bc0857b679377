import math

import pytest
from hypothesis import given, strategies as st

from tapebot.kinematics import ChassisParams, Pose, normalize_angle, step_pose

CH = ChassisParams()
speeds = st.floats(-25, 25)


def test_straight_line():
    p = step_pose(Pose(0, 0, 0), 10, 10, CH, 1.0)
    assert p.x == pytest.approx(0.335, abs=1e-12)
    assert p.y == 0 and p.heading == 0


def test_spin_in_place():
    p = step_pose(Pose(0, 0, 0), -3, 3, CH, 0.1)
    assert p.x == pytest.approx(0, abs=1e-15)
    assert p.y == pytest.approx(0, abs=1e-15)
    assert p.heading == pytest.approx(0.0335 * 6 / 0.15 * 0.1)


def test_arc_matches_closed_form_circle():
    # left wheel still: circle of radius track_width / 2 about (0, track_width / 2)
    p = Pose(0, 0, 0)
    for _ in range(100):
        p = step_pose(p, 0.0, 10.0, CH, 0.1)
    w = CH.wheel_radius * 10 / CH.track_width
    R = CH.track_width / 2
    t = 10.0
    assert math.hypot(p.x - R * math.sin(w * t), p.y - R * (1 - math.cos(w * t))) < 1e-6
    assert math.isclose(math.cos(p.heading), math.cos(w * t), abs_tol=1e-9)
    assert math.isclose(math.sin(p.heading), math.sin(w * t), abs_tol=1e-9)


def test_heading_normalized():
    p = step_pose(Pose(0, 0, 3.0), -10, 10, CH, 0.5)
    assert -math.pi < p.heading <= math.pi
    assert normalize_angle(-math.pi) == math.pi
    assert normalize_angle(3 * math.pi) == pytest.approx(math.pi)


def test_rejects_nonpositive_dt():
    with pytest.raises(ValueError):
        step_pose(Pose(0, 0, 0), 1, 1, CH, 0)


@given(speeds, st.floats(-math.pi, math.pi), st.floats(1e-4, 1.0))
def test_equal_speeds_keep_heading(w, heading, dt):
    p = step_pose(Pose(0.3, -0.2, heading), w, w, CH, dt)
    assert p.heading == heading


@given(speeds, speeds, st.floats(1e-4, 0.5))
def test_mirrored_inputs_mirror_trajectory(wl, wr, dt):
    a = step_pose(Pose(0, 0, 0), wl, wr, CH, dt)
    b = step_pose(Pose(0, 0, 0), wr, wl, CH, dt)
    assert b.x == pytest.approx(a.x, abs=1e-12)
    assert b.y == pytest.approx(-a.y, abs=1e-12)
    assert math.remainder(b.heading + a.heading, 2 * math.pi) == pytest.approx(0, abs=1e-12)


@given(speeds, speeds, st.floats(-math.pi, math.pi), st.floats(1e-4, 0.5))
def test_two_half_steps_equal_one_step(wl, wr, heading, dt):
    start = Pose(0.1, 0.2, heading)
    one = step_pose(start, wl, wr, CH, dt)
    two = step_pose(step_pose(start, wl, wr, CH, dt / 2), wl, wr, CH, dt / 2)
    assert two.x == pytest.approx(one.x, abs=1e-12)
    assert two.y == pytest.approx(one.y, abs=1e-12)
    assert math.remainder(two.heading - one.heading, 2 * math.pi) == pytest.approx(0, abs=1e-12)
