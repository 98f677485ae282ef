"""Command-line entry points.

    roversim simulate --scenario S.json --trace T.csv --out DIR [--seed N]
    roversim serve --scenario S.json --port 8765 [--host H] [--out DIR]
    roversim decode-trace T.csv

Exit codes: 0 success, 2 missing/unreadable input, 3 failed validation.
Set ROVER_LOG (debug/info/warning/error) to control log verbosity.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from .engine import command_name, event_to_json, run
from .gesture import DriveCommand, TraceError, classify, load_trace, sample_to_counts
from .server import serve_forever
from .world import ScenarioError, load_scenario_file

EXIT_OK = 0
EXIT_MISSING = 2
EXIT_INVALID = 3

log = logging.getLogger("roversim.cli")


def _setup_logging() -> None:
    level = os.environ.get("ROVER_LOG", "warning").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def cmd_simulate(args: argparse.Namespace) -> int:
    try:
        scenario = load_scenario_file(args.scenario)
    except OSError as exc:
        return _fail(EXIT_MISSING, f"cannot read scenario: {exc}")
    except ScenarioError as exc:
        return _fail(EXIT_INVALID, str(exc))
    if args.seed is not None:
        scenario = dataclasses.replace(scenario, seed=args.seed)

    try:
        trace = load_trace(args.trace)
    except OSError as exc:
        return _fail(EXIT_MISSING, f"cannot read trace: {exc}")
    except TraceError as exc:
        return _fail(EXIT_INVALID, str(exc))

    started_at = datetime.now(timezone.utc).isoformat()
    try:
        state, metrics = run(scenario, trace)
    except ValueError as exc:
        return _fail(EXIT_INVALID, str(exc))

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    events_path = out_dir / "events.jsonl"
    metrics_path = out_dir / "metrics.json"
    with open(events_path, "w") as fh:
        for event in state.event_log:
            fh.write(event_to_json(event) + "\n")
    metrics_path.write_text(metrics.to_json())
    record = {
        "scenario": scenario.name,
        "seed": scenario.seed,
        "started_at": started_at,
        "events_path": str(events_path),
        "metrics_path": str(metrics_path),
    }
    (out_dir / "run.json").write_text(json.dumps(record, indent=2) + "\n")

    up = metrics.uplink
    down = metrics.downlink
    print(
        f"{scenario.name}: humans {metrics.humans_detected}/{metrics.humans_total}, "
        f"animals {metrics.animals_detected}/{metrics.animals_total}, "
        f"{metrics.ticks_run} ticks, "
        f"uplink {up.frames_delivered}/{up.frames_sent}, "
        f"downlink {down.frames_delivered}/{down.frames_sent}"
    )
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    try:
        scenario = load_scenario_file(args.scenario)
    except OSError as exc:
        return _fail(EXIT_MISSING, f"cannot read scenario: {exc}")
    except ScenarioError as exc:
        return _fail(EXIT_INVALID, str(exc))
    print(f"serving '{scenario.name}' on ws://{args.host}:{args.port} (Ctrl-C to stop)")
    serve_forever(scenario, host=args.host, port=args.port, out_root=args.out)
    return EXIT_OK


def cmd_decode_trace(args: argparse.Namespace) -> int:
    try:
        trace = load_trace(args.trace)
    except OSError as exc:
        return _fail(EXIT_MISSING, f"cannot read trace: {exc}")
    except TraceError as exc:
        return _fail(EXIT_MISSING, str(exc))

    prev = DriveCommand.STOP
    first = True
    for tick in sorted(trace):
        command = classify(sample_to_counts(trace[tick]), prev)
        if first or command is not prev:
            print(f"{tick}: {command_name(command)}")
        prev = command
        first = False
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roversim",
        description="Gesture-driven search-and-rescue rover simulator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run a scripted mission headlessly")
    p_sim.add_argument("--scenario", required=True, help="scenario JSON path")
    p_sim.add_argument("--trace", required=True, help="gesture trace CSV path")
    p_sim.add_argument("--out", required=True, help="output directory for events/metrics")
    p_sim.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    p_sim.set_defaults(func=cmd_simulate)

    p_srv = sub.add_parser("serve", help="serve the live operator gateway")
    p_srv.add_argument("--scenario", required=True, help="scenario JSON path")
    p_srv.add_argument("--port", type=int, required=True, help="WebSocket port")
    p_srv.add_argument("--host", default="127.0.0.1", help="bind address")
    p_srv.add_argument("--out", default="runs", help="root directory for run records")
    p_srv.set_defaults(func=cmd_serve)

    p_dec = sub.add_parser("decode-trace", help="print the command transitions of a trace")
    p_dec.add_argument("trace", help="gesture trace CSV path")
    p_dec.set_defaults(func=cmd_decode_trace)

    return parser


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
