"""Search over collision orders for schedules with many collisions.

Every reported count is certified by replaying the returned explicit
schedule through :func:`~pinnedballs.pinned.run_schedule`, and compared with
the collision bounds for the configuration.
"""
from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .bounds import LogBound, bound_fold_orbit, bound_main
from .core import BallConfiguration, is_connected, is_exact_array
from .errors import DisconnectedGraph, InfeasibleBudget, InvalidArgument
from .pinned import Schedule, _as_state, _collide, effective_radius, run_schedule

__all__ = [
    "STRATEGIES",
    "SearchResult",
    "search_max_collisions",
    "collision_bounds",
    "exhaustive_limit",
    "sweep",
    "write_sweep_csv",
    "CSV_COLUMNS",
]

STRATEGIES = ("random", "greedy", "exhaustive")
EXHAUSTIVE_LIMIT = 10 ** 7
CSV_COLUMNS = ("name", "n", "d", "edges", "strategy", "best_count", "log2_bound_main", "log2_bound_fold", "seed", "ms")


@dataclass
class SearchResult:
    best_schedule: list
    best_count: int
    bound_main: LogBound | None
    bound_fold: LogBound
    trials: int
    seed: int
    strategy: str
    certified: bool = False

    @property
    def bound_log2(self) -> dict:
        out = {"fold_orbit": self.bound_fold.log2_value}
        if self.bound_main is not None:
            out["main"] = self.bound_main.log2_value
        return out


def collision_bounds(config: BallConfiguration, n_edges: int | None = None) -> tuple[LogBound | None, LogBound]:
    """Main bound (``n >= 3`` only) and the folding bound with the witness radius.

    The folding bound uses ``l = max(edges, 2)``: a single half-space admits
    at most one jump, which is below the two half-space bound.
    """
    n = config.n
    ell = len(config.graph.edges) if n_edges is None else n_edges
    fold = bound_fold_orbit(max(ell, 2), effective_radius(n))
    main = bound_main(n, config.d) if n >= 3 else None
    return main, fold


def _state_key(v: np.ndarray):
    if is_exact_array(v):
        return tuple(v)
    return tuple(int(round(x * 1e12)) for x in v)


def _jumping(config, v, edges):
    out = []
    for e in edges:
        w = _collide(config, v, *e)
        if w is not v:
            out.append((e, w))
    return out


def exhaustive_limit(n_edges: int, length: int) -> int:
    return n_edges ** length


def _exhaustive(config, v, edges, length):
    memo = {}

    def best(v, remaining):
        if remaining == 0:
            return 0, ()
        key = (_state_key(v), remaining)
        hit = memo.get(key)
        if hit is not None:
            return hit
        top = (0, ())
        for e, w in _jumping(config, v, edges):
            sub_count, sub_path = best(w, remaining - 1)
            cand = (sub_count + 1, (e,) + sub_path)
            if cand[0] > top[0] or (cand[0] == top[0] and cand[1] < top[1]):
                top = cand
        memo[key] = top
        return top

    return best(v, length)


def _random_trial(config, v, edges, rng, max_steps):
    path = []
    for _ in range(max_steps):
        options = _jumping(config, v, edges)
        if not options:
            break
        e, v = options[int(rng.integers(len(options)))]
        path.append(e)
    return path


def search_max_collisions(
    config: BallConfiguration,
    v0,
    strategy: str = "random",
    budget: int = 100,
    seed: int = 0,
    length: int | None = None,
    max_steps: int = 100_000,
    threads: int = 1,
) -> SearchResult:
    """Look for a schedule maximizing the number of collisions.

    ``random`` runs ``budget`` restarts, choosing uniformly among the edges
    that would collide at each step.  ``greedy`` always takes the collision
    with the largest velocity change.  ``exhaustive`` finds the exact maximum
    over all schedules of ``length`` steps (guarded by ``|E|**length <= 1e7``).
    """
    if strategy not in STRATEGIES:
        raise InvalidArgument(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    if budget < 1:
        raise InvalidArgument("budget must be >= 1")
    graph = config.graph
    if not is_connected(graph):
        raise DisconnectedGraph("search needs a connected full graph")
    st = _as_state(config, v0)
    edges = list(graph.edges)
    trials = 1
    if strategy == "exhaustive":
        if length is None or length < 1:
            raise InvalidArgument("exhaustive search needs length >= 1")
        if exhaustive_limit(len(edges), length) > EXHAUSTIVE_LIMIT:
            raise InfeasibleBudget(f"{len(edges)}**{length} sequences exceed {EXHAUSTIVE_LIMIT}")
        count, path = _exhaustive(config, st.v, edges, length)
        best = list(path)
    elif strategy == "greedy":
        log = run_schedule(config, st, Schedule("greedy"), max_steps=max_steps)
        best = list(log.edges)
    else:
        rng = np.random.default_rng(seed)
        child_seeds = [int(s) for s in rng.integers(2 ** 63, size=budget)]

        def trial(s):
            return _random_trial(config, st.v, edges, np.random.default_rng(s), max_steps)

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                paths = list(pool.map(trial, child_seeds))
        else:
            paths = [trial(s) for s in child_seeds]
        trials = budget
        # most collisions, ties to the lexicographically smallest schedule
        best = min(paths, key=lambda p: (-len(p), p))
    replay = run_schedule(config, st, Schedule.explicit(best), max_steps=len(best))
    if replay.collisions != len(best):
        raise AssertionError(f"replay gave {replay.collisions} collisions, search claimed {len(best)}")
    main, fold = collision_bounds(config)
    count = len(best)
    for b in (main, fold):
        if b is not None and not b.admits(count):
            raise AssertionError(f"{count} collisions exceed the {b.provenance} bound 2**{b.log2_value}")
    return SearchResult(best, count, main, fold, trials, seed, strategy, certified=True)


def sweep(
    cases: Iterable[tuple],
    strategies: Iterable[str] = ("greedy",),
    budget: int = 100,
    seed: int = 0,
    length: int | None = None,
    threads: int = 1,
) -> list[dict]:
    """One row per ``(case, strategy)``; ``cases`` yields ``(name, config, v0)``.

    Per-run failures become rows whose ``best_count`` starts with ``ERROR``.
    """
    rows = []
    for name, config, v0 in cases:
        for strategy in strategies:
            row = {"name": name, "n": config.n, "d": config.d, "edges": len(config.graph.edges),
                   "strategy": strategy, "seed": seed}
            t0 = time.perf_counter()
            try:
                res = search_max_collisions(config, v0, strategy, budget=budget, seed=seed, length=length,
                                            threads=threads)
                row["best_count"] = res.best_count
                row["log2_bound_main"] = res.bound_main.log2_value if res.bound_main is not None else ""
                row["log2_bound_fold"] = res.bound_fold.log2_value
                row["schedule"] = res.best_schedule
            except Exception as exc:  # row-level marker, sweep continues
                row["best_count"] = f"ERROR: {type(exc).__name__}: {exc}"
                row["log2_bound_main"] = ""
                row["log2_bound_fold"] = ""
                row["schedule"] = []
            row["ms"] = round((time.perf_counter() - t0) * 1000, 3)
            rows.append(row)
    return rows


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def write_sweep_csv(rows: list[dict], fp: io.TextIOBase | None = None) -> str:
    """Write rows with the fixed column set; returns the CSV text."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        w.writerow([_fmt(row.get(c, "")) for c in CSV_COLUMNS])
    text = buf.getvalue()
    if fp is not None:
        fp.write(text)
    return text
