"""Operator gateway: message handling, live loop, persistence."""

import json
import threading
import time
import asyncio

import pytest

from roversim.server import GatewayServer, state_message
from roversim.world import load_scenario

from websockets.sync.client import connect

LIVE_SCENARIO = json.dumps({
    "name": "live-test",
    "world_size_m": [30.0, 30.0],
    "base_position": [1.0, 15.0],
    "robot_start": {"x_m": 3.0, "y_m": 15.0, "heading_rad": 0.0},
    "seed": 11,
    "max_ticks": 100000,
    "bodies": [{"id": "planted", "kind": "human", "position": [6.0, 15.0]}],
})


class TestIngest:
    def make(self, tmp_path):
        return GatewayServer(load_scenario(LIVE_SCENARIO), out_root=tmp_path)

    def test_tilt_coalescing_one_frame_per_tick(self, tmp_path):
        server = self.make(tmp_path)
        for y in (0.2, 0.5, 0.8):
            assert server._ingest(json.dumps({"type": "tilt", "x_g": 0.0, "y_g": y})) is None
        server.tick_once()
        assert server._engine.state.uplink_stats.frames_sent == 1
        assert server._engine.state.current_command.name == "FORWARD"  # latest won
        server.tick_once()  # consumed: no sample this tick
        assert server._engine.state.uplink_stats.frames_sent == 1

    def test_malformed_messages_get_error_reply(self, tmp_path):
        server = self.make(tmp_path)
        for raw in ("not json", "[1,2]", '{"type": "warp"}',
                    '{"type": "tilt", "x_g": "a", "y_g": 0}',
                    '{"type": "set_sweep", "enabled": "yes"}',
                    '{"type": "reset"}'):
            reply = server._ingest(raw)
            assert reply is not None and reply["type"] == "error"
        # engine unaffected by the garbage
        server.tick_once()
        assert server._engine.state.uplink_stats.frames_sent == 0

    def test_set_sweep_applies_on_next_tick(self, tmp_path):
        server = self.make(tmp_path)
        assert server._ingest('{"type": "set_sweep", "enabled": false}') is None
        server.tick_once()
        assert server._engine.pir_config.sweep_enabled is False

    def test_reset_restarts_engine_and_rotates_run(self, tmp_path):
        server = self.make(tmp_path)
        server._open_run()
        for _ in range(5):
            server.tick_once()
        assert server._engine.state.tick == 5
        server._ingest('{"type": "reset", "scenario_name": "live-test", "seed": 77}')
        server.tick_once()
        assert server._engine.state.tick == 1  # fresh engine stepped once
        assert server._engine.scenario.seed == 77
        assert (tmp_path / "run-001" / "metrics.json").exists()
        assert (tmp_path / "run-002" / "events.jsonl").exists()
        server._close_run()

    def test_reset_unknown_scenario_errors_to_sender(self, tmp_path):
        server = self.make(tmp_path)
        reply = server._ingest('{"type": "reset", "scenario_name": "missing"}')
        assert reply is not None and reply["type"] == "error"
        assert "missing" in reply["message"]

    def test_state_message_shape(self, tmp_path):
        server = self.make(tmp_path)
        server.tick_once()
        msg = state_message(server._engine)
        assert msg["type"] == "state"
        assert msg["current_command"] == "Stop"
        assert set(msg["link"]) == {"up_loss_p", "up_stats", "down_stats"}
        assert len(msg["camera"]["rows"]) == 25
        assert all(len(row) == 25 for row in msg["camera"]["rows"])
        assert msg["world"]["scenario"] == "live-test"


@pytest.fixture
def live_server(tmp_path):
    server = GatewayServer(load_scenario(LIVE_SCENARIO), out_root=tmp_path / "runs")
    ready = threading.Event()
    thread = threading.Thread(
        target=asyncio.run, args=(server.run(host="127.0.0.1", port=0, ready=ready),),
        daemon=True,
    )
    thread.start()
    assert ready.wait(5.0), "server did not start"
    yield server
    server.request_stop()
    thread.join(5.0)


def recv_json(ws, timeout=2.0):
    return json.loads(ws.recv(timeout=timeout))


def next_state(ws, timeout=2.0):
    deadline = time.monotonic() + timeout
    while time.monotonic() < deadline:
        msg = recv_json(ws, timeout=deadline - time.monotonic())
        if msg["type"] == "state":
            return msg
    raise AssertionError("no state message within timeout")


class TestLiveGateway:
    def test_tilt_drives_forward(self, live_server):
        with connect(f"ws://127.0.0.1:{live_server.port}") as ws:
            deadline = time.monotonic() + 3.0
            command = None
            while time.monotonic() < deadline:
                ws.send(json.dumps({"type": "tilt", "x_g": 0.0, "y_g": 1.0}))
                msg = recv_json(ws)
                if msg["type"] == "state" and msg["current_command"] == "Forward":
                    command = msg["current_command"]
                    break
            assert command == "Forward"

    def test_ticks_monotone_and_not_faster_than_rate(self, live_server):
        with connect(f"ws://127.0.0.1:{live_server.port}") as ws:
            first = next_state(ws)
            start = time.monotonic()
            last = first
            while last["tick"] < first["tick"] + 20:
                msg = recv_json(ws, timeout=3.0)
                if msg["type"] != "state":
                    continue
                assert msg["tick"] > last["tick"]
                last = msg
            elapsed = time.monotonic() - start
            rate = (last["tick"] - first["tick"]) / elapsed
            assert rate <= 22.0  # 20 Hz + 10%

    def test_detection_alert_exactly_once_and_persisted(self, live_server, tmp_path):
        with connect(f"ws://127.0.0.1:{live_server.port}") as ws:
            alerts = []
            deadline = time.monotonic() + 6.0
            while time.monotonic() < deadline and len(alerts) < 2:
                try:
                    msg = recv_json(ws, timeout=0.5)
                except TimeoutError:
                    if alerts:
                        break
                    continue
                if msg["type"] == "alert" and msg["event"]["kind"] == "detection":
                    alerts.append(msg["event"])
            assert len(alerts) == 1
            assert alerts[0]["payload"]["body_id"] == "planted"
        live_server.request_stop()
        time.sleep(0.3)
        events_file = next((tmp_path / "runs").glob("run-*/events.jsonl"))
        logged = [json.loads(line) for line in events_file.read_text().splitlines()]
        assert any(
            e["kind"] == "detection" and e["payload"]["body_id"] == "planted" for e in logged
        )

    def test_malformed_message_isolated(self, live_server):
        with connect(f"ws://127.0.0.1:{live_server.port}") as ws:
            ws.send("garbage")
            deadline = time.monotonic() + 3.0
            got_error = got_state = False
            while time.monotonic() < deadline and not (got_error and got_state):
                msg = recv_json(ws)
                got_error = got_error or msg["type"] == "error"
                got_state = got_state or msg["type"] == "state"
            assert got_error and got_state

    def test_engine_ticks_without_clients(self, live_server):
        time.sleep(0.5)
        with connect(f"ws://127.0.0.1:{live_server.port}") as ws:
            assert next_state(ws)["tick"] >= 5
