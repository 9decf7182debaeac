"""Half-spaces, foldings and orbit iteration.

A folding relative to a closed half-space is the identity on the half-space
and the reflection in its boundary hyperplane on the complement.  Iterating
foldings from a start point produces an orbit; a *jump* is a step that
changes the point.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .core import as_vector, dot, is_exact_array, to_float_array
from .errors import DimensionMismatch, IndexOutOfRange, InvalidArgument

__all__ = [
    "JUMP_EPS",
    "MERGE_RADIUS",
    "Halfspace",
    "OrbitRecord",
    "fold",
    "jumps",
    "in_all",
    "run_foldings",
    "make_wedge",
    "wedge_angle",
    "is_degenerate_wedge",
    "wedge_with_angle",
    "wedge_start",
    "orbit_size_witness",
    "random_family",
]

#: a step is a jump only if the point is deeper than this outside the half-space
JUMP_EPS = 1e-12
#: float orbit points closer than this are identified
MERGE_RADIUS = 1e-9


@dataclass(frozen=True, eq=False)
class Halfspace:
    """The closed set ``{v : <v, normal> >= offset}``.

    Float normals must have unit length.  Exact normals (``dtype=object``)
    may be any non-zero vector: unit normals of contact half-spaces carry a
    factor ``2**-1.5`` that has no exact representation, and the set is the
    same either way.
    """

    normal: np.ndarray
    offset: float = 0.0

    def __post_init__(self):
        nv = as_vector(self.normal)
        nv = nv.copy()
        nv.setflags(write=False)
        object.__setattr__(self, "normal", nv)
        if is_exact_array(nv):
            if dot(nv, nv) == 0:
                raise InvalidArgument("normal must be non-zero")
        else:
            norm = float(np.linalg.norm(nv))
            if abs(norm - 1.0) > 1e-12:
                raise InvalidArgument(f"normal must have unit length, got |normal| = {norm!r}")

    @classmethod
    def from_direction(cls, direction, offset: float = 0.0) -> Halfspace:
        """Normalize a float direction; ``offset`` refers to the unit normal."""
        d = np.asarray(direction, dtype=float)
        return cls(d / np.linalg.norm(d), offset)

    @property
    def dim(self) -> int:
        return self.normal.shape[0]

    @property
    def exact(self) -> bool:
        return is_exact_array(self.normal)

    def value(self, v: np.ndarray):
        """``<v, normal> - offset``; non-negative exactly on the half-space."""
        if v.shape != self.normal.shape:
            raise DimensionMismatch(f"point has dimension {v.shape[0]}, half-space {self.dim}")
        return dot(v, self.normal) - self.offset

    def contains(self, v: np.ndarray, slack: float = JUMP_EPS) -> bool:
        s = self.value(v)
        if self.exact:
            if is_exact_array(v):
                return s >= 0
            s = float(s) / self._float_norm
        return s >= -slack

    @property
    def _float_norm(self) -> float:
        return float(np.linalg.norm(to_float_array(self.normal)))

    def unit_normal(self) -> np.ndarray:
        nf = to_float_array(self.normal)
        return nf / np.linalg.norm(nf)


def jumps(h: Halfspace, v: np.ndarray) -> bool:
    """Whether folding ``v`` relative to ``h`` moves it."""
    return not h.contains(v)


def fold(h: Halfspace, v) -> np.ndarray:
    """Fold ``v`` into ``h``.  Points of ``h`` are returned unchanged (same object)."""
    v = as_vector(v)
    s = h.value(v)
    if h.exact and is_exact_array(v):
        if s >= 0:
            return v
        return v - h.normal * (2 * s / dot(h.normal, h.normal))
    if h.exact:
        nf = to_float_array(h.normal)
        s = float(s) / h._float_norm
        if s >= -JUMP_EPS:
            return v
        return to_float_array(v) - (2.0 * s / h._float_norm) * nf
    if s >= -JUMP_EPS:
        return v
    return v - (2.0 * s) * h.normal


def in_all(halfspaces: Sequence[Halfspace], v: np.ndarray) -> bool:
    return all(h.contains(v) for h in halfspaces)


@dataclass
class OrbitRecord:
    """Outcome of a folding run.

    ``jump_times`` are 1-based: a jump at time ``k`` means ``v_{k+1} != v_k``
    where ``v_1`` is the start point.
    """

    points: list = field(default_factory=list)
    jump_times: list = field(default_factory=list)
    absorbed: bool = False
    steps_taken: int = 0
    final: np.ndarray | None = None
    n_points: int = 0

    @property
    def jumps(self) -> int:
        return len(self.jump_times)

    def to_json(self, points_cap: int | None = None) -> dict:
        out = {"jumps": self.jumps, "absorbed": self.absorbed, "steps": self.steps_taken}
        if points_cap is not None:
            out["points"] = [list(p) for p in self.points[:points_cap]]
        return out


class _PointSet:
    """Distinct orbit points under exact equality or a merge radius."""

    def __init__(self, cap: int | None):
        self.cap = cap
        self.stored: list = []
        self.count = 0
        self._float: list = []

    def add(self, v: np.ndarray) -> None:
        if is_exact_array(v):
            key = tuple(v)
            if any(tuple(p) == key for p in self.stored):
                return
        else:
            if self._float:
                arr = np.asarray(self._float)
                if np.min(np.linalg.norm(arr - v, axis=1)) < MERGE_RADIUS:
                    return
            self._float.append(np.array(v, dtype=float))
        self.count += 1
        if self.cap is None or len(self.stored) < self.cap:
            self.stored.append(v)


def run_foldings(
    halfspaces: Sequence[Halfspace],
    start,
    index_sequence: Iterable[int],
    max_steps: int,
    points_cap: int | None = 10_000,
) -> OrbitRecord:
    """Iterate ``v_{j+1} = fold(H[i_j], v_j)``.

    Stops when ``max_steps`` folds were applied, when ``index_sequence`` is
    exhausted, or when the point lies in every half-space (absorbed: no
    later fold can move it).  Pass ``itertools.cycle(range(len(H)))`` for a
    round-robin order.
    """
    if max_steps < 1:
        raise InvalidArgument("max_steps must be >= 1")
    hs = list(halfspaces)
    if not hs:
        raise InvalidArgument("need at least one half-space")
    v = as_vector(start)
    for h in hs:
        if h.dim != v.shape[0]:
            raise DimensionMismatch(f"start has dimension {v.shape[0]}, half-space {h.dim}")
    pts = _PointSet(points_cap)
    pts.add(v)
    rec = OrbitRecord()
    if in_all(hs, v):
        rec.absorbed = True
    else:
        for step, idx in enumerate(itertools.islice(index_sequence, max_steps), start=1):
            if not 0 <= idx < len(hs):
                raise IndexOutOfRange(f"half-space index {idx} out of range 0..{len(hs) - 1}")
            rec.steps_taken = step
            w = fold(hs[idx], v)
            if w is v:
                continue
            v = w
            rec.jump_times.append(step)
            pts.add(v)
            if in_all(hs, v):
                rec.absorbed = True
                break
    rec.points = pts.stored
    rec.n_points = pts.count
    rec.final = v
    return rec


# wedges ------------------------------------------------------------------


def make_wedge(theta1: float, theta2: float) -> list[Halfspace]:
    """The two planar half-planes ``{w : <w, (cos t, sin t)> >= 0}``."""
    return [Halfspace(np.array([math.cos(t), math.sin(t)])) for t in (theta1, theta2)]


def wedge_angle(theta1: float, theta2: float) -> float:
    """Opening angle of the wedge ``make_wedge(theta1, theta2)``."""
    delta = abs(math.remainder(theta1 - theta2, 2 * math.pi))
    return math.pi - delta


def is_degenerate_wedge(theta1: float, theta2: float, tol: float = 1e-15) -> bool:
    """True when the normals are opposite, so the intersection is a line."""
    return wedge_angle(theta1, theta2) <= tol


def wedge_with_angle(alpha: float) -> list[Halfspace]:
    """Wedge of opening ``alpha`` whose bisector is the positive x-axis."""
    if not 0 < alpha <= math.pi:
        raise InvalidArgument("wedge angle must lie in (0, pi]")
    return make_wedge(alpha / 2 - math.pi / 2, math.pi / 2 - alpha / 2)


def wedge_start(phi: float, radius: float = 1.0) -> np.ndarray:
    """Point at angle ``phi`` from the bisector of :func:`wedge_with_angle`."""
    return np.array([radius * math.cos(phi), radius * math.sin(phi)])


def orbit_size_witness(m: int) -> tuple[list[Halfspace], np.ndarray]:
    """A wedge and a start point whose alternating-fold orbit has more than ``m`` points."""
    if m < 1:
        raise InvalidArgument("m must be >= 1")
    alpha = math.pi / (m + 2)
    hs = wedge_with_angle(alpha)
    start = wedge_start(math.pi - alpha / 2)
    rec = run_foldings(hs, start, itertools.cycle((0, 1)), max_steps=4 * (m + 4))
    if rec.n_points <= m:
        raise AssertionError(f"witness orbit has only {rec.n_points} points for m={m}")
    return hs, start


def random_family(n_halfspaces: int, dim: int, radius: float, rng: np.random.Generator):
    """Half-spaces through the origin whose intersection contains ``B(w0, radius)``.

    Returns ``(halfspaces, w0)`` with ``|w0| = 1``.  Normals are sampled
    uniformly and kept only if ``<w0, normal> >= radius``.
    """
    if not 0 < radius < 1:
        raise InvalidArgument("radius must lie in (0, 1)")
    w0 = rng.normal(size=dim)
    w0 /= np.linalg.norm(w0)
    hs = []
    while len(hs) < n_halfspaces:
        nv = rng.normal(size=dim)
        nv /= np.linalg.norm(nv)
        if nv @ w0 >= radius:
            hs.append(Halfspace(nv))
    return hs, w0
