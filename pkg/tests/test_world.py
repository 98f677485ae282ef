"""Scenario parsing/validation and collision geometry."""

import json
import math

import pytest

from roversim.drive import Pose
from roversim.sensors import BodyKind, GasSpecies
from roversim.world import (
    CELL_SIZE_M,
    ScenarioError,
    cell_of,
    in_bounds,
    load_packaged_scenario,
    load_scenario,
    move_with_collision,
    packaged_scenario_names,
)

MINIMAL = {"name": "mini", "world_size_m": [10.0, 8.0], "base_position": [1.0, 1.0]}


def doc(**overrides) -> str:
    merged = {**MINIMAL, **overrides}
    return json.dumps(merged)


class TestLoadScenario:
    def test_minimal_with_defaults(self):
        sc = load_scenario(doc())
        assert sc.name == "mini"
        assert sc.seed == 0 and sc.max_ticks == 2000
        assert sc.robot_start == Pose(5.0, 4.0, 0.0)  # world center
        assert sc.rubble == frozenset() and sc.bodies == () and sc.gas_sources == ()
        assert sc.grid_shape == (40, 32)

    def test_not_json(self):
        with pytest.raises(ScenarioError, match="JSON"):
            load_scenario("{nope")

    def test_missing_required_field(self):
        with pytest.raises(ScenarioError, match="world_size_m"):
            load_scenario(json.dumps({"name": "x", "base_position": [0, 0]}))

    def test_robot_start_inside_rubble(self):
        bad = doc(rubble=[[20, 16]], robot_start={"x_m": 5.0, "y_m": 4.0})
        with pytest.raises(ScenarioError, match="robot_start.*rubble"):
            load_scenario(bad)

    def test_robot_start_out_of_bounds(self):
        with pytest.raises(ScenarioError, match="robot_start"):
            load_scenario(doc(robot_start={"x_m": 10.0, "y_m": 4.0}))

    def test_body_out_of_bounds(self):
        bad = doc(bodies=[{"id": "b", "kind": "human", "position": [11.0, 1.0]}])
        with pytest.raises(ScenarioError, match=r"bodies\[0\]"):
            load_scenario(bad)

    def test_duplicate_body_id(self):
        bodies = [
            {"id": "b", "kind": "human", "position": [1.0, 1.0]},
            {"id": "b", "kind": "animal", "position": [2.0, 1.0]},
        ]
        with pytest.raises(ScenarioError, match="duplicate"):
            load_scenario(doc(bodies=bodies))

    def test_bad_kind_and_species(self):
        with pytest.raises(ScenarioError, match="kind"):
            load_scenario(doc(bodies=[{"id": "b", "kind": "robot", "position": [1, 1]}]))
        with pytest.raises(ScenarioError, match="species"):
            load_scenario(doc(gas_sources=[
                {"species": "O2", "position": [1, 1], "c0_ppm": 10, "r0_m": 1},
            ]))

    def test_nonpositive_gas_params(self):
        with pytest.raises(ScenarioError, match="c0_ppm"):
            load_scenario(doc(gas_sources=[
                {"species": "CO", "position": [1, 1], "c0_ppm": -5, "r0_m": 1},
            ]))

    def test_rubble_cell_off_grid(self):
        with pytest.raises(ScenarioError, match=r"rubble\[0\]"):
            load_scenario(doc(rubble=[[40, 0]]))

    def test_base_out_of_bounds(self):
        with pytest.raises(ScenarioError, match="base_position"):
            load_scenario(doc(base_position=[-0.1, 0.0]))

    def test_seed_must_be_uint64(self):
        with pytest.raises(ScenarioError, match="seed"):
            load_scenario(doc(seed=-1))
        with pytest.raises(ScenarioError, match="seed"):
            load_scenario(doc(seed=True))

    def test_body_id_length_limit(self):
        bad = doc(bodies=[{"id": "x" * 32, "kind": "human", "position": [1, 1]}])
        with pytest.raises(ScenarioError, match="id"):
            load_scenario(bad)

    def test_full_document(self):
        sc = load_scenario(doc(
            seed=99,
            max_ticks=500,
            rubble=[[0, 0], [1, 0]],
            robot_start={"x_m": 2.0, "y_m": 2.0, "heading_rad": 1.0},
            bodies=[{"id": "v", "kind": "human", "position": [3.0, 3.0]}],
            gas_sources=[{"species": "LPG", "position": [4.0, 4.0], "c0_ppm": 50, "r0_m": 2}],
        ))
        assert sc.seed == 99
        assert sc.rubble == frozenset({(0, 0), (1, 0)})
        assert sc.bodies[0].kind is BodyKind.HUMAN
        assert sc.gas_sources[0].species is GasSpecies.LPG


class TestGeometry:
    def test_cell_of(self):
        assert cell_of((0.0, 0.0)) == (0, 0)
        assert cell_of((0.24, 0.26)) == (0, 1)
        assert cell_of((12.0, 9.99)) == (48, 39)

    def test_in_bounds_edges(self):
        size = (10.0, 8.0)
        assert in_bounds((0.0, 0.0), size)
        assert in_bounds((9.999, 7.999), size)
        assert not in_bounds((10.0, 4.0), size)
        assert not in_bounds((5.0, -0.001), size)

    def test_collision_reverts_position_keeps_heading(self):
        old = Pose(1.0, 1.0, 0.0)
        proposed = Pose(1.2, 1.0, 0.3)
        rubble = frozenset({cell_of((1.2, 1.0))})
        result = move_with_collision(old, proposed, rubble, (10.0, 8.0))
        assert (result.x_m, result.y_m) == (1.0, 1.0)
        assert result.heading_rad == 0.3

    def test_out_of_bounds_blocked(self):
        old = Pose(9.9, 4.0, 0.0)
        proposed = Pose(10.05, 4.0, 0.0)
        result = move_with_collision(old, proposed, frozenset(), (10.0, 8.0))
        assert (result.x_m, result.y_m) == (9.9, 4.0)

    def test_free_move_accepted(self):
        old = Pose(1.0, 1.0, 0.0)
        proposed = Pose(1.2, 1.1, 0.1)
        assert move_with_collision(old, proposed, frozenset(), (10.0, 8.0)) == proposed


class TestPackagedScenarios:
    def test_names(self):
        names = packaged_scenario_names()
        assert "demo-corridor" in names and "out-of-range" in names

    def test_demo_corridor_loads(self):
        sc = load_packaged_scenario("demo-corridor")
        assert sc.name == "demo-corridor"
        assert any(b.kind is BodyKind.HUMAN for b in sc.bodies)
        # the victim hides behind the rubble wall, reachable through the gap
        assert cell_of(sc.bodies[0].position)[0] > 48

    def test_out_of_range_distance(self):
        sc = load_packaged_scenario("out-of-range")
        dist = math.hypot(
            sc.robot_start.x_m - sc.base_position[0],
            sc.robot_start.y_m - sc.base_position[1],
        )
        assert dist > 1000.0

    def test_unknown_name(self):
        with pytest.raises(ScenarioError, match="no packaged scenario"):
            load_packaged_scenario("missing")
