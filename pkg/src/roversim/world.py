"""Rubble-world scenario model: geometry, JSON loading, validation.

A scenario is a rectangular world paved with 0.25 m grid cells, some of which
hold rubble, plus warm bodies (the people and animals to find), gas sources,
the base location, the robot's starting pose, a seed, and a tick budget.
The on-disk format is a single JSON document; see docs/scenario.md.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib.resources import files

from .drive import Pose
from .sensors import BodyKind, GasSource, GasSpecies, WarmBody

CELL_SIZE_M = 0.25

DEFAULT_SEED = 0
DEFAULT_MAX_TICKS = 2000


class ScenarioError(ValueError):
    """Scenario document that cannot be parsed or fails validation."""


@dataclass(frozen=True)
class Scenario:
    name: str
    world_size_m: tuple[float, float]
    base_position: tuple[float, float]
    robot_start: Pose
    seed: int = DEFAULT_SEED
    max_ticks: int = DEFAULT_MAX_TICKS
    rubble: frozenset[tuple[int, int]] = field(default_factory=frozenset)
    bodies: tuple[WarmBody, ...] = ()
    gas_sources: tuple[GasSource, ...] = ()

    @property
    def grid_shape(self) -> tuple[int, int]:
        nx = math.ceil(self.world_size_m[0] / CELL_SIZE_M)
        ny = math.ceil(self.world_size_m[1] / CELL_SIZE_M)
        return (nx, ny)


def cell_of(position: tuple[float, float]) -> tuple[int, int]:
    """Grid cell containing a world position."""
    return (math.floor(position[0] / CELL_SIZE_M), math.floor(position[1] / CELL_SIZE_M))


def in_bounds(position: tuple[float, float], world_size_m: tuple[float, float]) -> bool:
    return 0 <= position[0] < world_size_m[0] and 0 <= position[1] < world_size_m[1]


def move_with_collision(
    old: Pose,
    proposed: Pose,
    rubble: frozenset[tuple[int, int]],
    world_size_m: tuple[float, float],
) -> Pose:
    """Accept ``proposed`` unless its position hits rubble or leaves the world.

    On a blocked move the position reverts to ``old`` while the heading still
    takes the proposed value, so the robot can always rotate free of a wall.
    """
    pos = (proposed.x_m, proposed.y_m)
    if not in_bounds(pos, world_size_m) or cell_of(pos) in rubble:
        return Pose(x_m=old.x_m, y_m=old.y_m, heading_rad=proposed.heading_rad)
    return proposed


def _require(doc: dict, key: str, kind, where: str = "scenario"):
    if key not in doc:
        raise ScenarioError(f"{where}: missing required field '{key}'")
    value = doc[key]
    if kind is float:
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ScenarioError(f"{where}: field '{key}' must be a number")
        return float(value)
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise ScenarioError(f"{where}: field '{key}' must be {kind.__name__}")
    return value


def _point(value, field_name: str) -> tuple[float, float]:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        raise ScenarioError(f"{field_name}: expected a [x, y] pair of numbers")
    x, y = float(value[0]), float(value[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ScenarioError(f"{field_name}: coordinates must be finite")
    return (x, y)


def load_scenario(text: str) -> Scenario:
    """Parse and validate a scenario JSON document.

    Raises:
        ScenarioError: on malformed JSON or any violated invariant, naming
            the offending field.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ScenarioError("scenario: top level must be a JSON object")

    name = _require(doc, "name", str)
    if not name:
        raise ScenarioError("name: must be a non-empty string")
    world = _point(_require(doc, "world_size_m", list), "world_size_m")
    if world[0] <= 0 or world[1] <= 0:
        raise ScenarioError("world_size_m: both extents must be positive")

    seed = doc.get("seed", DEFAULT_SEED)
    if not isinstance(seed, int) or isinstance(seed, bool) or not 0 <= seed < 2**64:
        raise ScenarioError("seed: must be an unsigned 64-bit integer")
    max_ticks = doc.get("max_ticks", DEFAULT_MAX_TICKS)
    if not isinstance(max_ticks, int) or isinstance(max_ticks, bool) or max_ticks <= 0:
        raise ScenarioError("max_ticks: must be a positive integer")

    nx = math.ceil(world[0] / CELL_SIZE_M)
    ny = math.ceil(world[1] / CELL_SIZE_M)
    rubble = set()
    for idx, cell in enumerate(doc.get("rubble", [])):
        if (
            not isinstance(cell, (list, tuple))
            or len(cell) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in cell)
        ):
            raise ScenarioError(f"rubble[{idx}]: expected an [ix, iy] pair of integers")
        ix, iy = cell
        if not (0 <= ix < nx and 0 <= iy < ny):
            raise ScenarioError(f"rubble[{idx}]: cell ({ix}, {iy}) outside the world grid")
        rubble.add((ix, iy))

    bodies = []
    seen_ids = set()
    for idx, raw in enumerate(doc.get("bodies", [])):
        where = f"bodies[{idx}]"
        if not isinstance(raw, dict):
            raise ScenarioError(f"{where}: expected an object")
        body_id = _require(raw, "id", str, where)
        if body_id in seen_ids:
            raise ScenarioError(f"{where}: duplicate body id '{body_id}'")
        # Detection frames carry a kind byte plus the id in a 32-byte payload.
        if not 1 <= len(body_id.encode("utf-8")) <= 31:
            raise ScenarioError(f"{where}: id must be 1..31 UTF-8 bytes")
        seen_ids.add(body_id)
        kind_raw = _require(raw, "kind", str, where)
        try:
            kind = BodyKind(kind_raw)
        except ValueError:
            raise ScenarioError(f"{where}: kind must be 'human' or 'animal'") from None
        position = _point(_require(raw, "position", list, where), f"{where}.position")
        if not in_bounds(position, world):
            raise ScenarioError(f"{where}: position outside world bounds")
        stationary = raw.get("stationary", True)
        if not isinstance(stationary, bool):
            raise ScenarioError(f"{where}: stationary must be a boolean")
        bodies.append(WarmBody(id=body_id, kind=kind, position=position, stationary=stationary))

    sources = []
    for idx, raw in enumerate(doc.get("gas_sources", [])):
        where = f"gas_sources[{idx}]"
        if not isinstance(raw, dict):
            raise ScenarioError(f"{where}: expected an object")
        species_raw = _require(raw, "species", str, where)
        try:
            species = GasSpecies(species_raw)
        except ValueError:
            raise ScenarioError(f"{where}: species must be one of CO, LPG, CH4") from None
        position = _point(_require(raw, "position", list, where), f"{where}.position")
        if not in_bounds(position, world):
            raise ScenarioError(f"{where}: position outside world bounds")
        c0 = _require(raw, "c0_ppm", float, where)
        r0 = _require(raw, "r0_m", float, where)
        if c0 <= 0 or r0 <= 0:
            raise ScenarioError(f"{where}: c0_ppm and r0_m must be positive")
        sources.append(GasSource(species=species, position=position, c0_ppm=c0, r0_m=r0))

    base = _point(_require(doc, "base_position", list), "base_position")
    if not in_bounds(base, world):
        raise ScenarioError("base_position: outside world bounds")

    start_raw = doc.get("robot_start", {"x_m": world[0] / 2, "y_m": world[1] / 2, "heading_rad": 0.0})
    if not isinstance(start_raw, dict):
        raise ScenarioError("robot_start: expected an object with x_m, y_m, heading_rad")
    start = Pose(
        x_m=_require(start_raw, "x_m", float, "robot_start"),
        y_m=_require(start_raw, "y_m", float, "robot_start"),
        heading_rad=float(start_raw.get("heading_rad", 0.0)),
    )
    if not in_bounds((start.x_m, start.y_m), world):
        raise ScenarioError("robot_start: outside world bounds")
    if cell_of((start.x_m, start.y_m)) in rubble:
        raise ScenarioError("robot_start: inside a rubble cell")

    return Scenario(
        name=name,
        world_size_m=world,
        base_position=base,
        robot_start=start,
        seed=seed,
        max_ticks=max_ticks,
        rubble=frozenset(rubble),
        bodies=tuple(bodies),
        gas_sources=tuple(sources),
    )


def load_scenario_file(path: str) -> Scenario:
    """Load a scenario from a JSON file on disk."""
    with open(path) as fh:
        return load_scenario(fh.read())


def packaged_scenario_names() -> list[str]:
    """Names of the scenarios shipped inside the package."""
    root = files("roversim").joinpath("scenarios")
    return sorted(
        entry.name[: -len(".json")]
        for entry in root.iterdir()
        if entry.name.endswith(".json")
    )


def load_packaged_scenario(name: str) -> Scenario:
    """Load a shipped scenario by name (see :func:`packaged_scenario_names`)."""
    resource = files("roversim").joinpath(f"scenarios/{name}.json")
    if not resource.is_file():
        raise ScenarioError(f"no packaged scenario named '{name}'")
    return load_scenario(resource.read_text())
