"""Command line entry points: run, analyze, orbits, serve.

Exit codes: 0 success, 2 validation error (bad scenario, bad arguments),
3 runtime error (I/O and everything else).
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

from .dynamics import Attractor, Cycle, orbit_table
from .simulation import (
    ScenarioError,
    analyze,
    apply_overrides,
    load_scenario_file,
    run,
    serialize_log,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RUNTIME = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psychot",
        description="Deterministic simulation of metric-space agents",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute a scenario and write its event log")
    run_p.add_argument("--scenario", required=True, help="scenario YAML file")
    run_p.add_argument("--ticks", type=int, default=None, help="override run_ticks")
    run_p.add_argument("--seed", type=int, default=None, help="override the master seed")
    run_p.add_argument("--out", default=None, help="log file (default: stdout)")

    analyze_p = sub.add_parser("analyze", help="rebuild a run report from a log")
    analyze_p.add_argument("--log", required=True, help="event log file")
    analyze_p.add_argument("--report", default=None, help="report JSON file (default: stdout)")

    orbits_p = sub.add_parser("orbits", help="dump a processor's orbit structure")
    orbits_p.add_argument("--scenario", required=True, help="scenario YAML file")
    orbits_p.add_argument("--processor", required=True, help="processor id to inspect")

    serve_p = sub.add_parser("serve", help="start the session service")
    serve_p.add_argument("--port", type=int, default=8000)
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--log-dir", default=None, help="directory for persisted session logs")
    serve_p.add_argument("--console", default=None, help="directory of console static assets")

    return parser


def _cmd_run(args: argparse.Namespace) -> int:
    scenario = load_scenario_file(args.scenario)
    scenario = apply_overrides(scenario, run_ticks=args.ticks, seed=args.seed)
    result = run(scenario)
    log_text = serialize_log(scenario, result.events)
    if args.out is None or args.out == "-":
        sys.stdout.write(log_text)
    else:
        Path(args.out).write_text(log_text, encoding="utf-8")
        print(
            f"ran {scenario.run_ticks} ticks, "
            f"{len(result.events)} events -> {args.out}"
        )
    return EXIT_OK


def _cmd_analyze(args: argparse.Namespace) -> int:
    log_text = Path(args.log).read_text(encoding="utf-8")
    try:
        report = analyze(log_text)
    except (ValueError, KeyError) as exc:
        print(f"invalid log: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    text = json.dumps(report.to_dict(), indent=2) + "\n"
    if args.report is None or args.report == "-":
        sys.stdout.write(text)
    else:
        Path(args.report).write_text(text, encoding="utf-8")
        print(f"report -> {args.report}")
    return EXIT_OK


def _cmd_orbits(args: argparse.Namespace) -> int:
    scenario = load_scenario_file(args.scenario)
    found = None
    for cfg in scenario.agents:
        for proc in cfg.processors:
            if proc.id == args.processor:
                found = (cfg, proc)
                break
        if found:
            break
    if found is None:
        print(f"no processor {args.processor!r} in scenario", file=sys.stderr)
        return EXIT_VALIDATION
    cfg, proc = found
    space = scenario.space
    print(
        f"processor {proc.id} (agent {cfg.agent_id}), "
        f"space p={space.p} m={space.m} ({space.size} points)"
    )
    summary: Counter[str] = Counter()
    for start, outcome in orbit_table(space, proc):
        if isinstance(outcome, Attractor):
            print(f"{start} -> attractor {outcome.point} (steps={outcome.steps})")
            summary[f"attractor {outcome.point}"] += 1
        elif isinstance(outcome, Cycle):
            loop = " ".join(str(p) for p in outcome.points)
            print(f"{start} -> cycle period={outcome.period} [{loop}]")
            summary[f"cycle period={outcome.period}"] += 1
        else:
            print(f"{start} -> exhausted at {outcome.last_point}")
            summary["exhausted"] += 1
    print("summary:")
    for key in sorted(summary):
        print(f"  {key}: {summary[key]} start point(s)")
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    from .service import serve

    serve(
        host=args.host,
        port=args.port,
        log_dir=args.log_dir,
        console_dir=args.console,
    )
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "analyze": _cmd_analyze,
        "orbits": _cmd_orbits,
        "serve": _cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except ScenarioError as exc:
        print(f"invalid scenario: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except KeyboardInterrupt:
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
