"""Deterministic fixed-timestep mission engine.

Each 50 ms tick runs one pass of the full loop: operator tilt sample in,
drive command up the lossy link, motors and kinematics with collision
handling, PIR sweep and gas sampling, telemetry events down the link, and a
periodic status report. Every random draw comes from one scenario-seeded
generator in a fixed order, so a (scenario, trace) pair replays to an
identical event log, byte for byte.
"""

from __future__ import annotations

import dataclasses
import json
import math
import random
import struct
from dataclasses import dataclass, field

from .drive import (
    DEFAULT_DRIVE,
    DriveParams,
    Pose,
    command_to_pins,
    integrate_pose,
    pins_to_wheel_speeds,
)
from .gesture import AccelSample, DriveCommand, classify, command_code, decode_command, sample_to_counts
from .link import ChannelState, Frame, FrameType, LinkStats, decode_frame, encode_frame, transmit
from .sensors import (
    DEFAULT_PIR,
    BodyKind,
    GasReading,
    PirConfig,
    PirFrame,
    WarmBody,
    gas_sense,
    initial_pir_frame,
    pir_sense,
    sweep_angle,
)
from .world import Scenario, move_with_collision

# Command silence (no delivered drive frame) tolerated before forcing STOP:
# 40 ticks = 2 s. Keeps an out-of-range robot from driving on a stale command.
AUTO_STOP_TICKS = 40

# Status telemetry cadence: every 10 ticks = 2 Hz at the 20 Hz tick rate.
STATUS_PERIOD_TICKS = 10


class EventKind:
    DETECTION = "detection"
    GAS_ALARM = "gas_alarm"
    STATUS = "status"


@dataclass(frozen=True)
class TelemetryEvent:
    """One robot-to-base report and whether its frame survived the downlink."""

    tick: int
    kind: str
    payload: dict
    delivered: bool

    def as_dict(self) -> dict:
        return {
            "tick": self.tick,
            "kind": self.kind,
            "payload": self.payload,
            "delivered": self.delivered,
        }


def event_to_json(event: TelemetryEvent) -> str:
    """One JSON Lines record; key order and float text are reproducible."""
    return json.dumps(event.as_dict(), sort_keys=True, separators=(",", ":"))


@dataclass
class SimState:
    """Mutable state owned by the engine; snapshot fields only, no behavior."""

    tick: int
    robot_pose: Pose
    current_command: DriveCommand  # robot side: last delivered (or auto-stopped)
    emitted_command: DriveCommand  # base side: classifier's previous output
    pir_frame: PirFrame
    uplink: ChannelState
    uplink_stats: LinkStats
    downlink: ChannelState
    downlink_stats: LinkStats
    event_log: list[TelemetryEvent] = field(default_factory=list)
    detected_ids: set[str] = field(default_factory=set)
    first_detection_tick: dict[str, int] = field(default_factory=dict)
    gas_alarm_active: bool = False
    ticks_since_command: int = 0
    distance_traveled_m: float = 0.0


@dataclass(frozen=True)
class MetricsReport:
    scenario: str
    seed: int
    ticks_run: int
    humans_total: int
    humans_detected: int
    animals_total: int
    animals_detected: int
    tick_of_first_detection: dict[str, int]
    uplink: LinkStats
    downlink: LinkStats
    distance_traveled_m: float
    gas_alarms: int

    def as_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "seed": self.seed,
            "ticks_run": self.ticks_run,
            "humans_total": self.humans_total,
            "humans_detected": self.humans_detected,
            "animals_total": self.animals_total,
            "animals_detected": self.animals_detected,
            "tick_of_first_detection": dict(sorted(self.tick_of_first_detection.items())),
            "uplink": self.uplink.as_dict(),
            "downlink": self.downlink.as_dict(),
            "distance_traveled_m": self.distance_traveled_m,
            "gas_alarms": self.gas_alarms,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2) + "\n"


def command_name(command: DriveCommand) -> str:
    return command.name.title()


# -- telemetry frame payloads (layouts in docs/wire-frame.md) ----------------

_BODY_KIND_CODES = {BodyKind.HUMAN: 0, BodyKind.ANIMAL: 1}
_BODY_KIND_NAMES = {0: BodyKind.HUMAN, 1: BodyKind.ANIMAL}


def pack_detection(body: WarmBody) -> bytes:
    return bytes([_BODY_KIND_CODES[body.kind]]) + body.id.encode("utf-8")


def unpack_detection(payload: bytes) -> tuple[BodyKind, str]:
    return _BODY_KIND_NAMES[payload[0]], payload[1:].decode("utf-8")


def pack_gas(reading: GasReading) -> bytes:
    return struct.pack(">fffB", reading.co_ppm, reading.lpg_ppm, reading.ch4_ppm, int(reading.alarm))


def unpack_gas(payload: bytes) -> GasReading:
    co, lpg, ch4, _alarm = struct.unpack(">fffB", payload)
    return GasReading(co_ppm=co, lpg_ppm=lpg, ch4_ppm=ch4)


def pack_status(pose: Pose, command: DriveCommand, uplink_stats: LinkStats) -> bytes:
    # Counters saturate at 16 bits on the wire; the JSON log keeps exact values.
    return struct.pack(
        ">fffBHHHH",
        pose.x_m,
        pose.y_m,
        pose.heading_rad,
        command_code(command),
        min(uplink_stats.frames_sent, 0xFFFF),
        min(uplink_stats.frames_delivered, 0xFFFF),
        min(uplink_stats.retransmissions, 0xFFFF),
        min(uplink_stats.frames_dropped, 0xFFFF),
    )


class Engine:
    """Owns all mutable mission state and advances it one tick at a time."""

    def __init__(
        self,
        scenario: Scenario,
        drive_params: DriveParams = DEFAULT_DRIVE,
        pir_config: PirConfig = DEFAULT_PIR,
    ) -> None:
        self.scenario = scenario
        self.drive_params = drive_params
        self.pir_config = pir_config
        self._bodies_by_id = {b.id: b for b in scenario.bodies}
        rng = random.Random(scenario.seed)
        start = scenario.robot_start
        base_dist = self._distance_to_base(start)
        self.state = SimState(
            tick=0,
            robot_pose=start,
            current_command=DriveCommand.STOP,
            emitted_command=DriveCommand.STOP,
            pir_frame=initial_pir_frame(start, sweep_angle(0, pir_config, drive_params),
                                        scenario.bodies, pir_config),
            uplink=ChannelState(distance_m=base_dist, rng=rng),
            uplink_stats=LinkStats(),
            downlink=ChannelState(distance_m=base_dist, rng=rng),
            downlink_stats=LinkStats(),
        )

    def _distance_to_base(self, pose: Pose) -> float:
        bx, by = self.scenario.base_position
        return math.hypot(pose.x_m - bx, pose.y_m - by)

    @property
    def auto_stopped(self) -> bool:
        return self.state.ticks_since_command >= AUTO_STOP_TICKS

    def set_sweep(self, enabled: bool) -> None:
        """Toggle the PIR sweep motor for subsequent ticks."""
        if enabled != self.pir_config.sweep_enabled:
            self.pir_config = dataclasses.replace(self.pir_config, sweep_enabled=enabled)

    def _send_down(self, ftype: int, payload: bytes) -> bool:
        frame = Frame(ftype=ftype, payload=payload)
        result = transmit(frame, self.state.downlink, self.state.downlink_stats)
        return result.delivered

    def step(self, sample: AccelSample | None = None) -> list[TelemetryEvent]:
        """Advance one tick; returns the telemetry events it produced."""
        st = self.state
        scenario = self.scenario

        # (1) Uplink: classify the operator sample (if any) and send the
        # drive command through the real codec path at the pre-move distance.
        delivered = False
        if sample is not None:
            command = classify(sample_to_counts(sample), st.emitted_command)
            st.emitted_command = command
            frame = Frame(ftype=FrameType.DRIVE, payload=bytes([command_code(command)]))
            wire = encode_frame(frame)
            st.uplink.distance_m = self._distance_to_base(st.robot_pose)
            if transmit(frame, st.uplink, st.uplink_stats).delivered:
                st.current_command = decode_command(decode_frame(wire).payload[0])
                delivered = True
        if delivered:
            st.ticks_since_command = 0
        else:
            st.ticks_since_command += 1
            if st.ticks_since_command >= AUTO_STOP_TICKS:
                st.current_command = DriveCommand.STOP

        # (2) Actuation and kinematics, with rubble/bounds collision.
        v_left, v_right = pins_to_wheel_speeds(command_to_pins(st.current_command), self.drive_params)
        proposed = integrate_pose(st.robot_pose, v_left, v_right, self.drive_params)
        new_pose = move_with_collision(st.robot_pose, proposed, scenario.rubble, scenario.world_size_m)
        st.distance_traveled_m += math.hypot(new_pose.x_m - st.robot_pose.x_m,
                                             new_pose.y_m - st.robot_pose.y_m)
        st.robot_pose = new_pose
        st.downlink.distance_m = self._distance_to_base(new_pose)

        events: list[TelemetryEvent] = []

        # (3) PIR sweep; first-time detections go down the link immediately.
        boresight = sweep_angle(st.tick, self.pir_config, self.drive_params)
        pir = pir_sense(new_pose, boresight, st.pir_frame, scenario.bodies, self.pir_config)
        st.pir_frame = pir.frame
        for body_id in pir.detected_ids:
            if body_id in st.detected_ids:
                continue
            st.detected_ids.add(body_id)
            st.first_detection_tick[body_id] = st.tick
            body = self._bodies_by_id[body_id]
            ok = self._send_down(FrameType.PIR_DETECTION, pack_detection(body))
            events.append(TelemetryEvent(
                tick=st.tick,
                kind=EventKind.DETECTION,
                payload={"body_id": body.id, "body_kind": body.kind.value},
                delivered=ok,
            ))

        # (4) Gas sampling; alarm edges (off -> on) are reported once.
        reading = gas_sense(new_pose.position(), scenario.gas_sources)
        if reading.alarm and not st.gas_alarm_active:
            ok = self._send_down(FrameType.GAS, pack_gas(reading))
            events.append(TelemetryEvent(
                tick=st.tick, kind=EventKind.GAS_ALARM, payload=reading.as_dict(), delivered=ok,
            ))
        st.gas_alarm_active = reading.alarm

        # (5) Periodic status report.
        if st.tick % STATUS_PERIOD_TICKS == 0:
            ok = self._send_down(FrameType.STATUS,
                                 pack_status(new_pose, st.current_command, st.uplink_stats))
            events.append(TelemetryEvent(
                tick=st.tick,
                kind=EventKind.STATUS,
                payload={
                    "pose": {"x_m": new_pose.x_m, "y_m": new_pose.y_m,
                             "heading_rad": new_pose.heading_rad},
                    "current_command": command_name(st.current_command),
                    "uplink": st.uplink_stats.as_dict(),
                    "downlink": st.downlink_stats.as_dict(),
                },
                delivered=ok,
            ))

        st.event_log.extend(events)
        st.tick += 1
        return events

    def metrics(self) -> MetricsReport:
        st = self.state
        humans = [b for b in self.scenario.bodies if b.kind is BodyKind.HUMAN]
        animals = [b for b in self.scenario.bodies if b.kind is BodyKind.ANIMAL]
        return MetricsReport(
            scenario=self.scenario.name,
            seed=self.scenario.seed,
            ticks_run=st.tick,
            humans_total=len(humans),
            humans_detected=sum(1 for b in humans if b.id in st.detected_ids),
            animals_total=len(animals),
            animals_detected=sum(1 for b in animals if b.id in st.detected_ids),
            tick_of_first_detection=dict(st.first_detection_tick),
            uplink=st.uplink_stats,
            downlink=st.downlink_stats,
            distance_traveled_m=st.distance_traveled_m,
            gas_alarms=sum(1 for e in st.event_log if e.kind == EventKind.GAS_ALARM),
        )


# A stopped robot with an exhausted trace can still produce detections while
# the sweep finishes its pass; after one full period nothing new can happen.
QUIESCENCE_TICKS = int(DEFAULT_PIR.sweep_period_s / DEFAULT_DRIVE.dt)


def run(
    scenario: Scenario,
    trace: dict[int, AccelSample],
    drive_params: DriveParams = DEFAULT_DRIVE,
    pir_config: PirConfig = DEFAULT_PIR,
) -> tuple[SimState, MetricsReport]:
    """Run a scripted mission to completion.

    Steps from tick 0 until ``scenario.max_ticks``, or stops early once the
    trace is exhausted and the robot has sat commandless and stopped through
    a full sweep period (nothing further can change the log).

    Raises:
        ValueError: if the trace contains ticks at or past ``max_ticks``.
    """
    if trace:
        last = max(trace)
        if last >= scenario.max_ticks:
            raise ValueError(f"trace tick {last} is outside [0, {scenario.max_ticks})")
    engine = Engine(scenario, drive_params=drive_params, pir_config=pir_config)
    last_trace_tick = max(trace) if trace else -1
    quiet = 0
    for tick in range(scenario.max_ticks):
        engine.step(trace.get(tick))
        state = engine.state
        if tick > last_trace_tick and state.current_command is DriveCommand.STOP:
            quiet += 1
            if quiet >= QUIESCENCE_TICKS:
                break
        else:
            quiet = 0
    return engine.state, engine.metrics()
