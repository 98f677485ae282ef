"""Why the PIR sits on an oscillating mount.

A passive-infrared element sees only change. Park the robot three meters from
a motionless human: with the mount locked the sensor stays silent forever;
let the mount sweep and the moving boresight manufactures the relative motion
it needs. The timeline below marks the ticks on which the output fired.
"""

from roversim import (
    DEFAULT_PIR,
    BodyKind,
    PirConfig,
    Pose,
    WarmBody,
    initial_pir_frame,
    pir_sense,
    sweep_angle,
)

BODY = [WarmBody(id="victim", kind=BodyKind.HUMAN, position=(3.0, 0.0))]
TICKS = 160  # two sweep periods


def timeline(cfg: PirConfig) -> str:
    pose = Pose()
    frame = initial_pir_frame(pose, sweep_angle(0, cfg), BODY, cfg)
    marks = []
    for t in range(TICKS):
        result = pir_sense(pose, sweep_angle(t, cfg), frame, BODY, cfg)
        frame = result.frame
        marks.append("!" if result.output else ".")
    return "".join(marks)


print("human 3 m dead ahead, robot parked; one character per 50 ms tick\n")
print("sweep on :", timeline(DEFAULT_PIR))
print("sweep off:", timeline(PirConfig(sweep_enabled=False)))
print()
print("the bursts line up with where the boresight moves fastest (mid-sweep)")
print("and pause at the turnaround points where it momentarily freezes")
