"""Driving a square with pivot turns.

Forward one meter, pivot 90 degrees left, four times over; the pose should
land back at the origin. Pivot turns cost 1/6 rad per tick, so a quarter turn
is not a whole number of ticks; the residual below is exactly that rounding,
not drift.
"""

import math

from roversim import DEFAULT_DRIVE, DriveCommand, Pose, command_to_pins, integrate_pose, pins_to_wheel_speeds


def tick(pose: Pose, command: DriveCommand) -> Pose:
    v_l, v_r = pins_to_wheel_speeds(command_to_pins(command), DEFAULT_DRIVE)
    return integrate_pose(pose, v_l, v_r, DEFAULT_DRIVE)


FORWARD_TICKS = 80  # 80 * 0.025 m = 2 m sides
PIVOT_STEP = 2 * DEFAULT_DRIVE.wheel_speed_full / DEFAULT_DRIVE.wheel_base * DEFAULT_DRIVE.dt
TURN_TICKS = round((math.pi / 2) / PIVOT_STEP)  # nearest whole tick to 90 degrees

pose = Pose()
print(f"pivot step {PIVOT_STEP:.4f} rad/tick, so a 90 degree turn takes ~{TURN_TICKS} ticks")
print(f"{'leg':>4} {'x':>8} {'y':>8} {'heading deg':>12}")
for leg in range(4):
    for _ in range(FORWARD_TICKS):
        pose = tick(pose, DriveCommand.FORWARD)
    for _ in range(TURN_TICKS):
        pose = tick(pose, DriveCommand.LEFT)
    print(f"{leg + 1:>4} {pose.x_m:>8.3f} {pose.y_m:>8.3f} {math.degrees(pose.heading_rad):>12.2f}")

closure = math.hypot(pose.x_m, pose.y_m)
print(f"\nclosure error after the square: {closure:.3f} m")
print("(all of it comes from 90 degrees not dividing evenly into pivot ticks)")
