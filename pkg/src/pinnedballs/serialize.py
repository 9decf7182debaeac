"""JSON and CSV formats for configurations, run requests and logs.

Floats are written with 17 significant digits and exact values as
``[a_num, a_den, b_num, b_den]`` quadruples, so output is byte-stable.
"""
from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

from .core import BallConfiguration
from .errors import InvalidArgument
from .exact import Root3Scalar
from .folding import OrbitRecord
from .pinned import CollisionLog, Schedule, VelocityState

__all__ = [
    "dumps",
    "config_to_json",
    "config_from_json",
    "state_from_json",
    "state_to_json",
    "schedule_from_json",
    "log_to_json",
    "orbit_to_json",
    "jumps_csv",
]


def _encode(obj, indent: int | None, level: int) -> str:
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x) or math.isinf(x):
            return json.dumps(str(x))
        return format(x, ".17g")
    if isinstance(obj, Root3Scalar):
        return _encode(obj.to_quadruple(), None, level)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        obj = list(obj)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if indent is None or all(not isinstance(x, (list, tuple, dict, np.ndarray)) for x in obj):
            return "[" + ", ".join(_encode(x, None, level) for x in obj) + "]"
        pad = " " * (indent * (level + 1))
        inner = (",\n").join(pad + _encode(x, indent, level + 1) for x in obj)
        return "[\n" + inner + "\n" + " " * (indent * level) + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        if indent is None:
            return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v, None, level)}" for k, v in obj.items()) + "}"
        pad = " " * (indent * (level + 1))
        inner = ",\n".join(f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items())
        return "{\n" + inner + "\n" + " " * (indent * level) + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int | None = 2) -> str:
    return _encode(obj, indent, 0)


def _rows(arr: np.ndarray) -> list:
    return [[float(x) for x in row] for row in arr]


def config_to_json(config: BallConfiguration) -> dict:
    out = {"dimension": config.d, "centers": _rows(config.centers)}
    if config.exact:
        out["sqrt3"] = [[x.to_quadruple() for x in row] for row in config.centers]
    return out


def _exact_rows(rows) -> list:
    return [[Root3Scalar.from_quadruple(q) for q in row] for row in rows]


def config_from_json(data: dict) -> BallConfiguration:
    """Parse ``{"dimension", "centers"}``; an optional ``"sqrt3"`` block takes precedence.

    An optional ``"radius"`` rescales float centers to unit balls.
    """
    try:
        d = int(data["dimension"])
        if "sqrt3" in data:
            rows = _exact_rows(data["sqrt3"])
        else:
            rows = [[float(x) for x in row] for row in data["centers"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidArgument(f"malformed configuration: {exc}") from exc
    if any(len(r) != d for r in rows):
        raise InvalidArgument(f"every center must have {d} coordinates")
    radius = float(data.get("radius", 1.0))
    if "sqrt3" in data:
        if radius != 1.0:
            raise InvalidArgument("exact configurations must use unit radius")
        return BallConfiguration(rows)
    return BallConfiguration.from_centers(np.asarray(rows, dtype=float), radius=radius)


def state_from_json(data, config: BallConfiguration, exact_rows=None) -> VelocityState:
    """Velocity blocks from ``[[...], ...]``, or exact quadruple rows."""
    if exact_rows is not None:
        st = VelocityState.from_blocks(_exact_rows(exact_rows))
    else:
        try:
            st = VelocityState.from_blocks([[float(x) for x in row] for row in data])
        except (TypeError, ValueError) as exc:
            raise InvalidArgument(f"malformed velocities: {exc}") from exc
    if (st.n, st.d) != (config.n, config.d):
        raise InvalidArgument(f"velocities are {st.n}x{st.d}, configuration is {config.n}x{config.d}")
    return st


def state_to_json(state: VelocityState) -> dict:
    out = {"velocities": _rows(state.blocks())}
    if state.exact:
        out["sqrt3"] = [[x.to_quadruple() for x in row] for row in state.blocks()]
    return out


def schedule_from_json(data: dict) -> Schedule:
    try:
        return Schedule(kind=data.get("kind", "round_robin"),
                        edges=tuple(tuple(e) for e in data.get("edges", ())),
                        seed=int(data.get("seed", 0)))
    except (TypeError, ValueError, IndexError) as exc:
        raise InvalidArgument(f"malformed schedule: {exc}") from exc


def log_to_json(log: CollisionLog) -> dict:
    out = {
        "collisions": log.collisions,
        "absorbed": log.absorbed,
        "steps": log.steps,
        "jump_times": list(log.jump_times),
        "edges": [list(e) for e in log.edges],
        "delta_norms": log.delta_norms,
        "final": state_to_json(log.final),
    }
    return out


def orbit_to_json(rec: OrbitRecord, points_cap: int | None = None) -> dict:
    out = rec.to_json(points_cap)
    if "points" in out:
        out["points"] = [[float(x) for x in p] for p in out["points"]]
    return out


def jumps_csv(log: CollisionLog) -> str:
    """One row per collision: ``step, edge, delta_norm``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["step", "edge", "delta_norm"])
    for t, e, dn in zip(log.jump_times, log.edges, log.delta_norms):
        w.writerow([t, f"{e[0]}-{e[1]}", format(dn, ".17g")])
    return buf.getvalue()
