"""Robot-side actuation: command -> L293D pin levels -> wheel speeds -> pose.

The motor driver is modeled at the logic level of its truth table: an enable
and two direction inputs per channel, where (1,0) runs the motor one way,
(0,1) the other, and equal inputs brake. Left/right turns are pivots
(opposite wheel directions), which keeps steering exact in tight rubble.
Pose integration uses the exact differential-drive arc, falling back to a
straight-line step when the turn rate is numerically zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .gesture import DriveCommand


@dataclass(frozen=True)
class DriveParams:
    """Rover geometry and timing, fixed for a scenario run."""

    wheel_speed_full: float = 0.5  # m/s
    wheel_base: float = 0.3  # m
    dt: float = 0.05  # s per tick

    def __post_init__(self) -> None:
        if min(self.wheel_speed_full, self.wheel_base, self.dt) <= 0:
            raise ValueError("drive parameters must be strictly positive")


DEFAULT_DRIVE = DriveParams()

# Below this turn rate the arc update degenerates; integrate straight instead.
_OMEGA_EPS = 1e-9


@dataclass(frozen=True)
class MotorPins:
    """Logic levels on the driver: (en12, in1, in2) left, (en34, in3, in4) right."""

    en12: int
    in1: int
    in2: int
    en34: int
    in3: int
    in4: int

    def __post_init__(self) -> None:
        for name in ("en12", "in1", "in2", "en34", "in3", "in4"):
            if getattr(self, name) not in (0, 1):
                raise ValueError(f"{name} must be 0 or 1")


@dataclass(frozen=True)
class Pose:
    """Planar position and heading; heading normalized to (-pi, pi]."""

    x_m: float = 0.0
    y_m: float = 0.0
    heading_rad: float = 0.0

    def position(self) -> tuple[float, float]:
        return (self.x_m, self.y_m)


def wrap_heading(theta: float) -> float:
    """Normalize an angle to (-pi, pi]."""
    theta = math.remainder(theta, math.tau)
    if theta <= -math.pi:
        theta += math.tau
    return theta


_PIN_TABLE = {
    DriveCommand.STOP: MotorPins(0, 0, 0, 0, 0, 0),
    DriveCommand.FORWARD: MotorPins(1, 1, 0, 1, 1, 0),
    DriveCommand.BACKWARD: MotorPins(1, 0, 1, 1, 0, 1),
    DriveCommand.LEFT: MotorPins(1, 0, 1, 1, 1, 0),  # left wheel back, right forward
    DriveCommand.RIGHT: MotorPins(1, 1, 0, 1, 0, 1),
}


def command_to_pins(command: DriveCommand) -> MotorPins:
    """Driver pin levels for a drive command (STOP disables both channels)."""
    return _PIN_TABLE[command]


def _channel_speed(enable: int, in_a: int, in_b: int, full: float) -> float:
    if not enable:
        return 0.0  # coast
    if (in_a, in_b) == (1, 0):
        return full
    if (in_a, in_b) == (0, 1):
        return -full
    return 0.0  # equal inputs short the bridge: brake


def pins_to_wheel_speeds(pins: MotorPins, params: DriveParams = DEFAULT_DRIVE) -> tuple[float, float]:
    """(v_left, v_right) in m/s produced by the given pin levels."""
    return (
        _channel_speed(pins.en12, pins.in1, pins.in2, params.wheel_speed_full),
        _channel_speed(pins.en34, pins.in3, pins.in4, params.wheel_speed_full),
    )


def integrate_pose(pose: Pose, v_left: float, v_right: float, params: DriveParams = DEFAULT_DRIVE) -> Pose:
    """Advance one tick of differential-drive kinematics.

    Equal wheel speeds translate along the heading; unequal speeds follow the
    exact circular arc of radius v/omega, so a pure pivot leaves the position
    untouched to machine precision.
    """
    v = (v_left + v_right) / 2.0
    omega = (v_right - v_left) / params.wheel_base
    theta = pose.heading_rad
    theta_next = theta + omega * params.dt
    if abs(omega) < _OMEGA_EPS:
        x = pose.x_m + v * params.dt * math.cos(theta)
        y = pose.y_m + v * params.dt * math.sin(theta)
    else:
        radius = v / omega
        x = pose.x_m + radius * (math.sin(theta_next) - math.sin(theta))
        y = pose.y_m - radius * (math.cos(theta_next) - math.cos(theta))
    return Pose(x_m=x, y_m=y, heading_rad=wrap_heading(theta_next))
