"""Robot-side sensing: sweeping PIR, gas concentration, camera occupancy.

A passive-infrared element only responds to *change* in incident IR, so a
static warm body in front of a static sensor is invisible. The sensor here
sits on a mount that oscillates the boresight sinusoidally; the resulting
relative motion of a body in the sensor frame (or the cone edge passing over
it) is what raises the output. Disabling the sweep reproduces the blindness.

Gas concentration falls off with the square of distance from each source and
is summed per species; fixed alarm thresholds mark hazardous readings. The
camera yields a coarse occupancy snapshot of nearby cells for the operator;
it sees rubble, never what is under it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .drive import DriveParams, Pose, wrap_heading

# HC-SR501-typical envelope: 7 m reach, 110 degree cone.
PIR_RANGE_M = 7.0
PIR_CONE_HALF_ANGLE_RAD = math.radians(55.0)
SWEEP_AMPLITUDE_RAD = math.radians(90.0)
SWEEP_PERIOD_S = 4.0
MIN_RELATIVE_MOTION_RAD = math.radians(0.5)

# Alarm levels per species, ppm, chosen near common hazard guidance.
CO_ALARM_PPM = 200.0
LPG_ALARM_PPM = 1000.0
CH4_ALARM_PPM = 5000.0

CAMERA_RANGE_M = 3.0
CAMERA_RESOLUTION_M = 0.25
CAMERA_RADIUS_CELLS = int(CAMERA_RANGE_M / CAMERA_RESOLUTION_M)


class BodyKind(str, enum.Enum):
    HUMAN = "human"
    ANIMAL = "animal"


class GasSpecies(str, enum.Enum):
    CO = "CO"
    LPG = "LPG"
    CH4 = "CH4"


class CellState(str, enum.Enum):
    FREE = "free"
    RUBBLE = "rubble"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class PirConfig:
    range_m: float = PIR_RANGE_M
    cone_half_angle_rad: float = PIR_CONE_HALF_ANGLE_RAD
    sweep_amplitude_rad: float = SWEEP_AMPLITUDE_RAD
    sweep_period_s: float = SWEEP_PERIOD_S
    min_relative_motion_rad: float = MIN_RELATIVE_MOTION_RAD
    sweep_enabled: bool = True

    def __post_init__(self) -> None:
        if min(self.range_m, self.cone_half_angle_rad, self.sweep_amplitude_rad,
               self.sweep_period_s, self.min_relative_motion_rad) <= 0:
            raise ValueError("PIR parameters must be strictly positive")
        if self.sweep_amplitude_rad > math.pi:
            raise ValueError("sweep amplitude cannot exceed pi")


DEFAULT_PIR = PirConfig()


@dataclass(frozen=True)
class WarmBody:
    """A human or animal the PIR can perceive; ids are unique per scenario."""

    id: str
    kind: BodyKind
    position: tuple[float, float]
    stationary: bool = True


@dataclass(frozen=True)
class GasSource:
    species: GasSpecies
    position: tuple[float, float]
    c0_ppm: float
    r0_m: float

    def __post_init__(self) -> None:
        if self.c0_ppm <= 0 or self.r0_m <= 0:
            raise ValueError("gas source strength and falloff radius must be positive")


@dataclass(frozen=True)
class GasReading:
    co_ppm: float = 0.0
    lpg_ppm: float = 0.0
    ch4_ppm: float = 0.0

    @property
    def alarm(self) -> bool:
        return (
            self.co_ppm >= CO_ALARM_PPM
            or self.lpg_ppm >= LPG_ALARM_PPM
            or self.ch4_ppm >= CH4_ALARM_PPM
        )

    def as_dict(self) -> dict:
        return {
            "co_ppm": self.co_ppm,
            "lpg_ppm": self.lpg_ppm,
            "ch4_ppm": self.ch4_ppm,
            "alarm": self.alarm,
        }


@dataclass(frozen=True)
class BodyTrack:
    """Where one body sat in the sensor frame on the previous tick."""

    in_cone: bool
    bearing_rad: float


# Per-body history carried tick to tick; pir_sense returns the next one.
PirFrame = dict[str, BodyTrack]


@dataclass(frozen=True)
class PirResult:
    output: bool
    detected_ids: tuple[str, ...]
    frame: PirFrame


@dataclass(frozen=True)
class CameraSnapshot:
    """Occupancy of the cells within camera range, centered on the robot.

    ``grid[j][i]`` is the cell ``(origin_cell[0] + i, origin_cell[1] + j)``;
    cells outside the visibility disc (or the world) are UNKNOWN.
    """

    resolution_m: float
    grid: tuple[tuple[CellState, ...], ...]
    robot_pose: Pose

    @property
    def origin_cell(self) -> tuple[int, int]:
        ix = math.floor(self.robot_pose.x_m / self.resolution_m)
        iy = math.floor(self.robot_pose.y_m / self.resolution_m)
        return (ix - CAMERA_RADIUS_CELLS, iy - CAMERA_RADIUS_CELLS)


def sweep_angle(tick: int, cfg: PirConfig = DEFAULT_PIR, params: DriveParams = DriveParams()) -> float:
    """Boresight offset from the robot heading at ``tick`` (0 when disabled)."""
    if not cfg.sweep_enabled:
        return 0.0
    return cfg.sweep_amplitude_rad * math.sin(math.tau * tick * params.dt / cfg.sweep_period_s)


def pir_sense(
    pose: Pose,
    boresight_rad: float,
    prev_frame: PirFrame,
    bodies: list[WarmBody] | tuple[WarmBody, ...],
    cfg: PirConfig = DEFAULT_PIR,
) -> PirResult:
    """Evaluate the PIR for one tick against the previous tick's frame.

    The output goes high when any body's cone membership flips, or when a
    body inside the cone has shifted in the sensor frame by at least the
    minimum relative motion since the previous tick. Bodies absent from
    ``prev_frame`` are treated as previously out of cone with no motion
    history. Reported ids are limited to bodies currently within range.
    """
    frame: PirFrame = {}
    detected: list[str] = []
    output = False
    for body in bodies:
        dx = body.position[0] - pose.x_m
        dy = body.position[1] - pose.y_m
        dist = math.hypot(dx, dy)
        bearing = wrap_heading(math.atan2(dy, dx) - pose.heading_rad - boresight_rad)
        in_cone = dist <= cfg.range_m and abs(bearing) <= cfg.cone_half_angle_rad
        prev = prev_frame.get(body.id)
        prev_in_cone = prev.in_cone if prev is not None else False
        prev_bearing = prev.bearing_rad if prev is not None else bearing

        edge = in_cone != prev_in_cone
        moved = in_cone and abs(wrap_heading(bearing - prev_bearing)) >= cfg.min_relative_motion_rad
        if edge or moved:
            output = True
            if dist <= cfg.range_m:
                detected.append(body.id)
        frame[body.id] = BodyTrack(in_cone=in_cone, bearing_rad=bearing)
    return PirResult(output=output, detected_ids=tuple(detected), frame=frame)


def initial_pir_frame(
    pose: Pose,
    boresight_rad: float,
    bodies: list[WarmBody] | tuple[WarmBody, ...],
    cfg: PirConfig = DEFAULT_PIR,
) -> PirFrame:
    """Frame as the sensor would have settled before the first tick.

    Seeding with this keeps a body that was already in the cone from firing a
    spurious edge at tick 0; only genuine change can raise the output.
    """
    return pir_sense(pose, boresight_rad, {}, bodies, cfg).frame


def _source_concentration(position: tuple[float, float], src: GasSource) -> float:
    r = math.hypot(position[0] - src.position[0], position[1] - src.position[1])
    return src.c0_ppm / (1.0 + (r / src.r0_m) ** 2)


def gas_sense(
    position: tuple[float, float],
    sources: list[GasSource] | tuple[GasSource, ...],
) -> GasReading:
    """Concentration per species at ``position``: sum of c0 / (1 + (r/r0)^2).

    Summed with :func:`math.fsum`, so the reading is exactly invariant under
    reordering of the source list.
    """
    def total(species: GasSpecies) -> float:
        return math.fsum(
            _source_concentration(position, src) for src in sources if src.species is species
        )

    return GasReading(
        co_ppm=total(GasSpecies.CO),
        lpg_ppm=total(GasSpecies.LPG),
        ch4_ppm=total(GasSpecies.CH4),
    )


def camera_capture(
    pose: Pose,
    rubble: set[tuple[int, int]] | frozenset[tuple[int, int]],
    world_size_m: tuple[float, float],
) -> CameraSnapshot:
    """Occupancy snapshot of every cell whose center is within camera range.

    Cells beyond the disc or outside the world stay UNKNOWN. Bodies are never
    visible here: rubble occludes them, so only the PIR can find them.
    """
    res = CAMERA_RESOLUTION_M
    radius = CAMERA_RADIUS_CELLS
    ix_c = math.floor(pose.x_m / res)
    iy_c = math.floor(pose.y_m / res)
    nx = math.ceil(world_size_m[0] / res)
    ny = math.ceil(world_size_m[1] / res)

    rows = []
    for j in range(iy_c - radius, iy_c + radius + 1):
        row = []
        for i in range(ix_c - radius, ix_c + radius + 1):
            center = ((i + 0.5) * res, (j + 0.5) * res)
            visible = math.hypot(center[0] - pose.x_m, center[1] - pose.y_m) <= CAMERA_RANGE_M
            if not visible or not (0 <= i < nx and 0 <= j < ny):
                row.append(CellState.UNKNOWN)
            elif (i, j) in rubble:
                row.append(CellState.RUBBLE)
            else:
                row.append(CellState.FREE)
        rows.append(tuple(row))
    return CameraSnapshot(resolution_m=res, grid=tuple(rows), robot_pose=pose)
