"""Command-line front end.

Subcommands: ``simulate``, ``bounds``, ``orbit``, ``scenario``, ``search``
and ``verify-paper``.  Results go to standard output (or ``--output``) as
JSON or CSV; the effective settings, with every default filled in, are
echoed to standard error as a ``# effective:`` line.
"""
from __future__ import annotations

import argparse
import itertools
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import bounds as bnd
from .core import as_vector
from .errors import PinnedBallsError
from .folding import Halfspace, run_foldings, wedge_start, wedge_with_angle
from .pinned import Schedule, VelocityState, run_schedule
from .regression import FAIL, format_checks, verify_paper
from .scenarios import SCENARIOS, chain_config, get_scenario
from .search import STRATEGIES, search_max_collisions, sweep, write_sweep_csv
from .serialize import (
    config_from_json,
    config_to_json,
    dumps,
    jumps_csv,
    log_to_json,
    orbit_to_json,
    schedule_from_json,
    state_from_json,
    state_to_json,
)

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_NOT_ABSORBED = 0, 1, 2, 3


def _effective(args: argparse.Namespace) -> None:
    eff = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    print("# effective: " + json.dumps(eff, sort_keys=True, default=str), file=sys.stderr)


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text + ("" if text.endswith("\n") else "\n"))
    else:
        sys.stdout.write(text + ("" if text.endswith("\n") else "\n"))


def _parse_edges(spec: str | None) -> tuple:
    if not spec:
        return ()
    out = []
    for part in spec.split(","):
        j, k = part.strip().split("-")
        out.append((int(j), int(k)))
    return tuple(out)


def _load_request(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise PinnedBallsError(f"cannot read {path}: {exc}") from exc


# simulate ------------------------------------------------------------------


def _simulation_inputs(args):
    if args.request:
        req = _load_request(args.request)
        if "config" not in req:
            raise PinnedBallsError("run request needs a 'config' entry")
        config = config_from_json(req["config"])
        if "velocities_sqrt3" in req:
            v0 = state_from_json(None, config, exact_rows=req["velocities_sqrt3"])
        elif "velocities" in req:
            v0 = state_from_json(req["velocities"], config)
        else:
            v0 = VelocityState.zeros(config.n, config.d)
        schedule = schedule_from_json(req.get("schedule", {}))
        if args.max_steps is None and "max_steps" in req:
            args.max_steps = int(req["max_steps"])
    else:
        sc = get_scenario(args.scenario)
        config, v0 = sc.config, sc.velocities
        if args.schedule in sc.schedules:
            schedule = sc.schedules[args.schedule]
        else:
            schedule = Schedule(args.schedule, _parse_edges(args.edges), args.seed)
    if args.request and args.schedule != "round_robin":
        schedule = Schedule(args.schedule, _parse_edges(args.edges) or schedule.edges, args.seed)
    return config, v0, schedule


def cmd_simulate(args) -> int:
    config, v0, schedule = _simulation_inputs(args)
    if args.max_steps is None:
        args.max_steps = 1_000_000
    _effective(args)
    log = run_schedule(config, v0, schedule, max_steps=args.max_steps)
    _emit(dumps(log_to_json(log)), args.output)
    if args.jumps_csv:
        Path(args.jumps_csv).write_text(jumps_csv(log))
    if schedule.kind != "explicit" and not log.absorbed:
        print(f"not absorbed after {log.steps} steps (partial log written)", file=sys.stderr)
        return EXIT_NOT_ABSORBED
    return EXIT_OK


# bounds --------------------------------------------------------------------


def cmd_bounds(args) -> int:
    formulas = args.formula or ["main"]
    if args.all:
        formulas = list(bnd.FORMULAS)
    _effective(args)
    table = []
    for f in formulas:
        b = bnd.evaluate(f, n=args.n, d=args.d, tau=args.tau, l=args.l, r=args.r, alpha=args.alpha,
                         mass_ratio=args.mass_ratio, radius_ratio=args.radius_ratio)
        table.append({"formula": f, "inputs": b.inputs, "log2": b.log2_value, "log10": b.log10})
    _emit(dumps(table), args.output)
    return EXIT_OK


# orbit ---------------------------------------------------------------------


def cmd_orbit(args) -> int:
    extra = {}
    if args.halfspaces:
        spec = _load_request(args.halfspaces)
        hs = [Halfspace(np.asarray(h["normal"], float), float(h.get("offset", 0.0))) for h in spec["halfspaces"]]
        start = as_vector([float(x) for x in spec["start"]])
        seq = spec.get("sequence", "round_robin")
    elif args.wedge is not None:
        alpha = args.wedge
        hs = wedge_with_angle(alpha)
        phi = math.pi - alpha / 2 if args.start_angle == "auto" else float(args.start_angle)
        args.start_angle = phi
        start = wedge_start(phi)
        seq = "round_robin"
        extra = {"wedge_angle": alpha, "start_angle": phi, "jump_bound": abs(phi) / alpha + 1,
                 "two_halfspace_form": math.pi / alpha + 1}
    else:
        raise PinnedBallsError("orbit needs --wedge or --halfspaces")
    _effective(args)
    order = itertools.cycle(range(len(hs))) if seq == "round_robin" else iter(seq)
    rec = run_foldings(hs, start, order, max_steps=args.max_steps)
    out = orbit_to_json(rec, args.points)
    out.update(extra)
    _emit(dumps(out), args.output)
    return EXIT_OK if rec.absorbed else EXIT_NOT_ABSORBED


# scenario ------------------------------------------------------------------


def cmd_scenario(args) -> int:
    _effective(args)
    if args.action == "list":
        _emit(dumps([{"name": k, "description": v} for k, v in SCENARIOS.items()]), args.output)
        return EXIT_OK
    if not args.name:
        raise PinnedBallsError("scenario export needs a name")
    sc = get_scenario(args.name)
    out = {
        "name": sc.name,
        "config": config_to_json(sc.config),
        **state_to_json(sc.velocities),
        "schedules": {k: {"kind": s.kind, "edges": [list(e) for e in s.edges], "seed": s.seed}
                      for k, s in sc.schedules.items()},
    }
    _emit(dumps(out), args.output)
    return EXIT_OK


# search --------------------------------------------------------------------


def _chain_cases(spec: str):
    lo, hi = (int(x) for x in spec.split("-"))
    for n in range(lo, hi + 1):
        cfg = chain_config(n, 1)
        v = VelocityState(as_vector([float(n - 1 - i) for i in range(n)]), n, 1)
        yield f"chain{n}", cfg, v


def cmd_search(args) -> int:
    _effective(args)
    if args.sweep_chains:
        rows = sweep(_chain_cases(args.sweep_chains), args.strategy, budget=args.budget, seed=args.seed,
                     length=args.len, threads=args.threads)
        _emit(write_sweep_csv(rows), args.output)
        return EXIT_OK
    if args.request:
        req = _load_request(args.request)
        config = config_from_json(req["config"])
        v0 = state_from_json(req.get("velocities"), config, exact_rows=req.get("velocities_sqrt3"))
        name = Path(args.request).stem
    else:
        sc = get_scenario(args.scenario)
        config, v0, name = sc.config, sc.velocities, sc.name
    results = []
    for strategy in args.strategy:
        res = search_max_collisions(config, v0, strategy, budget=args.budget, seed=args.seed, length=args.len,
                                    threads=args.threads)
        results.append({
            "name": name,
            "strategy": strategy,
            "best_count": res.best_count,
            "best_schedule": [list(e) for e in res.best_schedule],
            "certified": res.certified,
            "trials": res.trials,
            "seed": res.seed,
            "bound_log2": res.bound_log2,
        })
    _emit(dumps(results), args.output)
    return EXIT_OK


# verify-paper --------------------------------------------------------------


def cmd_verify_paper(args) -> int:
    _effective(args)
    checks = verify_paper()
    _emit(format_checks(checks), args.output)
    return EXIT_FAIL if any(c.status == FAIL for c in checks) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pinnedballs", description="Pinned-ball collisions, foldings and bounds.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="run a collision schedule")
    src = s.add_mutually_exclusive_group()
    src.add_argument("--request", help="run request JSON (config, velocities, schedule, max_steps)")
    src.add_argument("--scenario", default="four_discs", choices=sorted(SCENARIOS))
    s.add_argument("--schedule", default="round_robin",
                   help="schedule kind (explicit, round_robin, random, greedy) or a scenario schedule name")
    s.add_argument("--edges", help="edges as 'j-k,j-k' (0-based)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-steps", type=int, default=None)
    s.add_argument("--output")
    s.add_argument("--jumps-csv")
    s.set_defaults(func=cmd_simulate)

    b = sub.add_parser("bounds", help="evaluate collision bounds in log2")
    b.add_argument("--formula", action="append", choices=bnd.FORMULAS)
    b.add_argument("--all", action="store_true")
    b.add_argument("--n", type=int, default=4)
    b.add_argument("--d", type=int, default=2)
    b.add_argument("--tau", type=int)
    b.add_argument("--l", type=int, default=2)
    b.add_argument("--r", type=float, default=0.5)
    b.add_argument("--alpha", type=float, default=1.0)
    b.add_argument("--mass-ratio", type=float, default=1.0)
    b.add_argument("--radius-ratio", type=float, default=1.0)
    b.add_argument("--output")
    b.set_defaults(func=cmd_bounds)

    o = sub.add_parser("orbit", help="iterate foldings")
    o.add_argument("--wedge", type=float, help="wedge opening angle (radians)")
    o.add_argument("--start-angle", default="auto", help="angle from the bisector, or 'auto' (pi - wedge/2)")
    o.add_argument("--halfspaces", help="JSON with halfspaces, start, sequence")
    o.add_argument("--max-steps", type=int, default=1_000_000)
    o.add_argument("--points", type=int, default=None, help="include up to this many orbit points")
    o.add_argument("--output")
    o.set_defaults(func=cmd_orbit)

    c = sub.add_parser("scenario", help="list or export scenarios")
    c.add_argument("action", choices=("list", "export"))
    c.add_argument("name", nargs="?")
    c.add_argument("--output")
    c.set_defaults(func=cmd_scenario)

    q = sub.add_parser("search", help="search schedules for many collisions")
    qs = q.add_mutually_exclusive_group()
    qs.add_argument("--scenario", default="chain3", choices=sorted(SCENARIOS))
    qs.add_argument("--request")
    qs.add_argument("--sweep-chains", help="sweep chains with n in 'lo-hi', CSV output")
    q.add_argument("--strategy", action="append", choices=STRATEGIES)
    q.add_argument("--budget", type=int, default=100)
    q.add_argument("--len", type=int, default=None)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--threads", type=int, default=1)
    q.add_argument("--output")
    q.set_defaults(func=cmd_search)

    v = sub.add_parser("verify-paper", help="exact regression of the four-disc example")
    v.add_argument("--output")
    v.set_defaults(func=cmd_verify_paper)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "strategy", None) is None and args.command == "search":
        args.strategy = ["exhaustive"] if args.len else ["greedy"]
    try:
        return args.func(args)
    except PinnedBallsError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
