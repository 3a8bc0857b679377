"""The delivery routine on a black crossbar, then the remote's stop and go buttons."""

from tapebot import Button, ControlConfig, IrEvent, Pose, Scenario, delivery_track, run_scenario, straight_track

track = delivery_track()
res = run_scenario(Scenario(track, Pose(0.3, 0.05, 0.0), 10.0,
                            control=ControlConfig(one_shot_delivery=True)))
start, end = res.delivery_windows[0]
print(f"delivery from {start:.2f} s to {end:.2f} s")
prev = None
for r in res.trace:
    # print whenever the LED, the enable line, or the servo's resting state changes
    state = (r.led, r.master_enable, r.servo_angle in (0.0, 160.0))
    if start - 0.01 <= r.t <= end + 0.01 and state != prev:
        print(f"  t={r.t:5.2f}  led={r.led} servo={r.servo_angle:5.1f} enable={r.master_enable}")
    prev = state
print("robot carried on to x =", round(res.final_pose.x, 3))

# without the latch the robot keeps finding the same crossbar
res = run_scenario(Scenario(track, Pose(0.3, 0.05, 0.0), 10.0))
print("deliveries without latch:", [round(t, 2) for t in res.deliveries])

# remote: stop at 1 s, go at 3.5 s
res = run_scenario(Scenario(straight_track(2.0), Pose(0.05, 0.05, 0.0), 6.0,
                            ir_events=[IrEvent(1.0, Button.Button2), IrEvent(3.5, Button.Button1)]))
for r in res.trace:
    if r.ir_decoded or r.t in (2.0, 3.0, 5.0):
        print(f"  t={r.t:4.2f} ir={r.ir_decoded} enable={r.master_enable} led={r.led} "
              f"omega={r.omega_left:.4f} x={r.x:.3f}")
