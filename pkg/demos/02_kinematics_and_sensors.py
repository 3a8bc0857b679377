"""Differential drive on exact arcs, and where the three sensors sit."""

import math

from tapebot import ChassisParams, Pose, SensorGeometry, read_sensors, sensor_positions, step_pose, straight_track

chassis = ChassisParams()
pose = Pose(0.0, 0.0, 0.0)

# equal wheel speeds drive straight: 10 rad/s * 33.5 mm for one second
p = step_pose(pose, 10.0, 10.0, chassis, 1.0)
print("straight:", p)

# opposite speeds spin in place
p = step_pose(pose, -5.0, 5.0, chassis, 0.5)
print("spin:", p, "heading deg:", math.degrees(p.heading))

# unequal speeds trace a circle; four quarter-period steps close it
yaw_rate = chassis.wheel_radius * (6.0 - 4.0) / chassis.track_width
period = 2 * math.pi / yaw_rate
p = pose
for _ in range(4):
    p = step_pose(p, 4.0, 6.0, chassis, period / 4)
    print(f"  quarter: x={p.x:+.4f} y={p.y:+.4f} heading={math.degrees(p.heading):+.1f}")
print("circle radius:", chassis.wheel_radius * 5.0 / yaw_rate)

# sensors sit 60 mm ahead, 13 mm apart; left is +90 degrees from heading
geom = SensorGeometry()
for name, pt in zip(("left", "middle", "right"), sensor_positions(Pose(0.5, 0.05, 0.0), geom)):
    print(f"{name:>6}: ({pt.x:.3f}, {pt.y:.3f})")

track = straight_track(2.0)
for dy in (0.0, 0.012, -0.012, 0.05):
    print(f"offset {dy:+.3f} m ->", read_sensors(track, Pose(0.5, 0.05 + dy, 0.0), geom))
