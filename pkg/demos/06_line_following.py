"""Closed-loop runs: a straight strip and a rounded-rectangle lap."""

import math

from tapebot import OnLineFraction, Pose, Scenario, loop_track, run_scenario, straight_track
from tapebot.controller import PhaseWiring

res = run_scenario(Scenario(straight_track(2.0), Pose(0.05, 0.05, 0.0), 7.0,
                            assertions=[OnLineFraction(0.95, 0.0, 7.0)]))
print("straight final pose:", res.final_pose)
for o in res.assertion_outcomes:
    print("  ", o.passed, o.detail)

# one lap of a 0.6 x 0.4 m course with 0.3 m corner arcs
start = Pose(0.5, 0.1, 0.0)
res = run_scenario(Scenario(loop_track(), start, 25.0))
far = False
for r in res.trace:
    d = math.hypot(r.x - start.x, r.y - start.y)
    far = far or d > 0.5
    if far and d < 0.05:
        print(f"lap closed at t={r.t:.2f} s")
        break
print("middle sensor on tape:", sum(r.sensors[1] for r in res.trace) / len(res.trace))

# wiring the phase pins by their sketch names steers every correction the wrong way
res = run_scenario(Scenario(loop_track(), start, 10.0, phase_wiring=PhaseWiring.AS_NAMED))
print("as-named wiring ends with sensors", res.trace[-1].sensors, "at", res.final_pose)
