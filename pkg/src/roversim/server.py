"""Live operator gateway: a WebSocket service wrapped around the engine.

One asyncio loop owns the engine and ticks it at real time (20 Hz). Clients
exchange JSON text frames (one document per frame, see docs/protocol.md):
inbound tilt/set_sweep/reset messages are queued and drained once per tick,
with bursts of tilt coalesced to the most recent; every tick broadcasts a
state snapshot, and detection/gas alarms are broadcast as they happen. Each
engine lifetime is persisted as a run directory holding events.jsonl plus,
once the run closes, metrics.json and run.json.
"""

from __future__ import annotations

import asyncio
import json
import logging
import threading
from dataclasses import replace
from datetime import datetime, timezone
from pathlib import Path

from websockets.asyncio.server import broadcast, serve

from .engine import Engine, EventKind, TelemetryEvent, command_name, event_to_json
from .gesture import AccelSample
from .link import loss_probability
from .sensors import CellState, camera_capture, gas_sense
from .world import Scenario, ScenarioError, load_packaged_scenario

log = logging.getLogger("roversim.server")

TICK_RATE_HZ = 20.0

_CELL_CHARS = {CellState.FREE: ".", CellState.RUBBLE: "#", CellState.UNKNOWN: "?"}


def _dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def state_message(engine: Engine, run_index: int = 1) -> dict:
    """Snapshot of the current tick in the shape the console renders.

    ``run_index`` distinguishes engine lifetimes so clients can tell a reset
    (tick restarts under a new run) from an out-of-order message.
    """
    st = engine.state
    scenario = engine.scenario
    pose = st.robot_pose
    snapshot = camera_capture(pose, scenario.rubble, scenario.world_size_m)
    reading = gas_sense(pose.position(), scenario.gas_sources)
    return {
        "type": "state",
        "run": run_index,
        "tick": st.tick,
        "pose": {"x_m": pose.x_m, "y_m": pose.y_m, "heading_rad": pose.heading_rad},
        "current_command": command_name(st.current_command),
        "auto_stopped": engine.auto_stopped,
        "link": {
            "up_loss_p": loss_probability(st.uplink.distance_m),
            "up_stats": st.uplink_stats.as_dict(),
            "down_stats": st.downlink_stats.as_dict(),
        },
        "gas": reading.as_dict(),
        "camera": {
            "resolution_m": snapshot.resolution_m,
            "origin_cell": list(snapshot.origin_cell),
            "rows": ["".join(_CELL_CHARS[c] for c in row) for row in snapshot.grid],
        },
        "world": {
            "size_m": list(scenario.world_size_m),
            "base_position": list(scenario.base_position),
            "scenario": scenario.name,
        },
    }


class GatewayServer:
    """Owns an engine and serves it to any number of console clients."""

    def __init__(self, scenario: Scenario, out_root: str | Path = "runs") -> None:
        self._scenario = scenario
        self._out_root = Path(out_root)
        self._engine = Engine(scenario)
        self._clients: set = set()
        self._pending_tilt: tuple[float, float] | None = None
        self._pending_control: list[dict] = []
        self._run_index = 0
        self._events_fh = None
        self._run_dir: Path | None = None
        self._started_at = ""
        self._loop: asyncio.AbstractEventLoop | None = None
        self._stopping: asyncio.Event | None = None
        self.port: int | None = None

    # -- run persistence ------------------------------------------------

    def _open_run(self) -> None:
        self._run_index += 1
        self._run_dir = self._out_root / f"run-{self._run_index:03d}"
        self._run_dir.mkdir(parents=True, exist_ok=True)
        self._events_fh = open(self._run_dir / "events.jsonl", "w")
        self._started_at = datetime.now(timezone.utc).isoformat()
        log.info("run %s started for scenario '%s'", self._run_dir, self._engine.scenario.name)

    def _close_run(self) -> None:
        if self._events_fh is None:
            return
        self._events_fh.close()
        self._events_fh = None
        assert self._run_dir is not None
        metrics_path = self._run_dir / "metrics.json"
        metrics_path.write_text(self._engine.metrics().to_json())
        record = {
            "scenario": self._engine.scenario.name,
            "seed": self._engine.scenario.seed,
            "started_at": self._started_at,
            "events_path": str(self._run_dir / "events.jsonl"),
            "metrics_path": str(metrics_path),
        }
        (self._run_dir / "run.json").write_text(json.dumps(record, indent=2) + "\n")
        log.info("run %s closed", self._run_dir)

    def _persist(self, events: list[TelemetryEvent]) -> None:
        if self._events_fh is None:
            return
        for event in events:
            self._events_fh.write(event_to_json(event) + "\n")
        if events:
            self._events_fh.flush()

    # -- inbound messages -------------------------------------------------

    def _ingest(self, raw) -> dict | None:
        """Queue one client message; returns an error reply or None."""
        try:
            doc = json.loads(raw)
        except (json.JSONDecodeError, UnicodeDecodeError):
            return {"type": "error", "message": "message is not valid JSON"}
        if not isinstance(doc, dict):
            return {"type": "error", "message": "message must be a JSON object"}
        kind = doc.get("type")
        if kind == "tilt":
            x, y = doc.get("x_g"), doc.get("y_g")
            if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in (x, y)):
                return {"type": "error", "message": "tilt requires numeric x_g and y_g"}
            self._pending_tilt = (float(x), float(y))
            return None
        if kind == "set_sweep":
            enabled = doc.get("enabled")
            if not isinstance(enabled, bool):
                return {"type": "error", "message": "set_sweep requires boolean 'enabled'"}
            self._pending_control.append(doc)
            return None
        if kind == "reset":
            name = doc.get("scenario_name")
            if not isinstance(name, str):
                return {"type": "error", "message": "reset requires string 'scenario_name'"}
            seed = doc.get("seed")
            if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
                return {"type": "error", "message": "reset seed must be an integer"}
            # resolve the scenario here so an unknown name errors back to the
            # client that asked, and the tick loop only sees ready scenarios
            if name == self._scenario.name:
                scenario = self._scenario
            else:
                try:
                    scenario = load_packaged_scenario(name)
                except ScenarioError as exc:
                    return {"type": "error", "message": str(exc)}
            if seed is not None:
                scenario = replace(scenario, seed=seed)
            self._pending_control.append({"type": "reset", "scenario": scenario})
            return None
        return {"type": "error", "message": f"unknown message type: {kind!r}"}

    def _apply_control(self) -> None:
        pending, self._pending_control = self._pending_control, []
        for doc in pending:
            if doc["type"] == "set_sweep":
                self._engine.set_sweep(doc["enabled"])
            elif doc["type"] == "reset":
                self._reset(doc["scenario"])

    def _reset(self, scenario: Scenario) -> None:
        self._close_run()
        self._engine = Engine(scenario)
        self._pending_tilt = None
        self._open_run()

    # -- the engine loop ---------------------------------------------------

    async def _handle_client(self, conn) -> None:
        self._clients.add(conn)
        log.info("client connected (%d total)", len(self._clients))
        try:
            async for raw in conn:
                reply = self._ingest(raw)
                if reply is not None:
                    await conn.send(_dumps(reply))
        finally:
            self._clients.discard(conn)
            log.info("client disconnected (%d total)", len(self._clients))

    async def _tick_loop(self) -> None:
        assert self._stopping is not None
        period = 1.0 / TICK_RATE_HZ
        loop = asyncio.get_running_loop()
        next_tick = loop.time() + period
        while not self._stopping.is_set():
            delay = next_tick - loop.time()
            if delay > 0:
                try:
                    await asyncio.wait_for(self._stopping.wait(), timeout=delay)
                    break
                except asyncio.TimeoutError:
                    pass
            # Late ticks are skipped, never bursted: the wall-clock rate may
            # drop below 20 Hz but cannot exceed it.
            next_tick = max(next_tick + period, loop.time())
            self.tick_once()

    def tick_once(self) -> list[TelemetryEvent]:
        """One engine tick plus fan-out; factored out for deterministic tests."""
        self._apply_control()
        sample = None
        if self._pending_tilt is not None:
            x_g, y_g = self._pending_tilt
            self._pending_tilt = None
            sample = AccelSample(x_g=x_g, y_g=y_g, tick=self._engine.state.tick)
        events = self._engine.step(sample)
        self._persist(events)
        broadcast(self._clients, _dumps(state_message(self._engine, self._run_index)))
        for event in events:
            if event.kind in (EventKind.DETECTION, EventKind.GAS_ALARM):
                broadcast(self._clients, _dumps({"type": "alert", "event": event.as_dict()}))
        return events

    async def run(self, host: str = "127.0.0.1", port: int = 8765,
                  ready: threading.Event | None = None) -> None:
        """Serve until :meth:`request_stop` (or cancellation)."""
        self._loop = asyncio.get_running_loop()
        self._stopping = asyncio.Event()
        self._open_run()
        try:
            async with serve(self._handle_client, host, port) as server:
                self.port = server.sockets[0].getsockname()[1]
                log.info("gateway listening on ws://%s:%d", host, self.port)
                if ready is not None:
                    ready.set()
                await self._tick_loop()
        finally:
            self._close_run()

    def request_stop(self) -> None:
        """Ask the serve loop to exit; safe to call from any thread, any time."""
        if self._loop is not None and self._stopping is not None:
            try:
                self._loop.call_soon_threadsafe(self._stopping.set)
            except RuntimeError:
                pass  # loop already closed


def serve_forever(scenario: Scenario, host: str, port: int, out_root: str | Path = "runs") -> None:
    """Blocking entry point used by the CLI; Ctrl-C closes the run cleanly."""
    server = GatewayServer(scenario, out_root=out_root)
    try:
        asyncio.run(server.run(host=host, port=port))
    except KeyboardInterrupt:
        log.info("interrupted; run closed")
