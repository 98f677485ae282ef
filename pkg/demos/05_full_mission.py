"""A complete scripted mission on the packaged demo-corridor scenario.

The operator trace drives the robot east along a corridor, through a gap in
a rubble wall, toward a victim trapped two meters behind it (with a CO leak
nearby for good measure). Prints the event log as a story, the ASCII map,
and the final metrics document.
"""

import json
from importlib.resources import files

from roversim import cell_of, load_packaged_scenario, load_trace, run

scenario = load_packaged_scenario("demo-corridor")
trace = load_trace(str(files("roversim").joinpath("scenarios/demo-corridor.trace.csv")))

state, metrics = run(scenario, trace)

print(f"scenario '{scenario.name}': {len(trace)} operator samples, {state.tick} ticks simulated\n")

for event in state.event_log:
    t = event.tick * 0.05
    mark = "" if event.delivered else "  [LOST ON DOWNLINK]"
    if event.kind == "detection":
        payload = event.payload
        print(f"t={t:6.2f}s  DETECTION  {payload['body_kind']} '{payload['body_id']}'{mark}")
    elif event.kind == "gas_alarm":
        print(f"t={t:6.2f}s  GAS ALARM  CO {event.payload['co_ppm']:.0f} ppm{mark}")

# top-down map: robot path (*), rubble (#), bodies (H/A), base (B), 1 m per char
cols, rows = int(scenario.world_size_m[0]), int(scenario.world_size_m[1])
grid = [[" "] * cols for _ in range(rows)]
for ix, iy in scenario.rubble:
    grid[iy // 4][ix // 4] = "#"

# replay the pose track for the path overlay (same inputs, same seed)
from roversim import Engine

engine = Engine(scenario)
for t in range(state.tick):
    engine.step(trace.get(t))
    px, py = cell_of(engine.state.robot_pose.position())
    grid[py // 4][px // 4] = "*"
for body in scenario.bodies:
    bx, by = cell_of(body.position)
    grid[by // 4][bx // 4] = "H" if body.kind.value == "human" else "A"
bx, by = cell_of(scenario.base_position)
grid[by // 4][bx // 4] = "B"

print("\nmap (1 m per character; B base, * path, # rubble, H human, A animal):")
for row in reversed(grid):
    print("  " + "".join(row))

print("\nmetrics:")
print(json.dumps(metrics.as_dict(), indent=2))
