"""Vectors, ball configurations and contact graphs.

Vectors are 1-D numpy arrays.  Float vectors use ``float64``; exact vectors
use ``dtype=object`` holding :class:`~pinnedballs.exact.Root3Scalar`
entries, so the same geometric code runs on both.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange, InvalidArgument, OverlapError
from .exact import Root3Scalar

__all__ = [
    "DEFAULT_TOL",
    "BallConfiguration",
    "ContactGraph",
    "as_vector",
    "dot",
    "is_exact_array",
    "full_contact_graph",
    "is_connected",
    "to_float_array",
]

DEFAULT_TOL = 1e-9


def _is_exact_scalar(x) -> bool:
    return isinstance(x, (Root3Scalar, Fraction))


def as_vector(coords, exact: bool | None = None) -> np.ndarray:
    """Return ``coords`` as a 1-D vector.

    With ``exact=None`` the representation is inferred: any ``Root3Scalar``
    or ``Fraction`` entry makes the whole vector exact.
    """
    if isinstance(coords, np.ndarray) and coords.ndim == 1:
        if exact is None or exact == is_exact_array(coords):
            return coords
    items = list(np.asarray(coords, dtype=object).ravel()) if not isinstance(coords, list) else list(coords)
    if exact is None:
        exact = any(_is_exact_scalar(x) for x in items)
    if exact:
        out = np.empty(len(items), dtype=object)
        for i, x in enumerate(items):
            if isinstance(x, Root3Scalar):
                out[i] = x
            elif isinstance(x, (int, np.integer, Fraction)):
                out[i] = Root3Scalar(int(x) if isinstance(x, np.integer) else x)
            else:
                raise InvalidArgument(f"cannot represent {x!r} exactly")
        return out
    return np.asarray([float(x) for x in items], dtype=float)


def is_exact_array(arr: np.ndarray) -> bool:
    return arr.dtype == object


def to_float_array(arr) -> np.ndarray:
    arr = np.asarray(arr)
    if arr.dtype == object:
        return np.vectorize(float, otypes=[float])(arr) if arr.size else arr.astype(float)
    return arr.astype(float, copy=False)


def dot(u: np.ndarray, v: np.ndarray):
    """Inner product; exact when either operand is exact."""
    if u.shape != v.shape:
        raise DimensionMismatch(f"dimension mismatch: {u.shape} vs {v.shape}")
    if u.dtype == object or v.dtype == object:
        total = Root3Scalar(0)
        for a, b in zip(u, v):
            total = total + a * b
        return total
    return float(np.dot(u, v))


@dataclass(frozen=True)
class ContactGraph:
    """Undirected graph on ``n`` balls; edges are sorted pairs ``(j, k)`` with ``j < k``.

    Ball indices are 0-based.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        norm = []
        for e in self.edges:
            j, k = int(e[0]), int(e[1])
            if j == k or not (0 <= j < self.n and 0 <= k < self.n):
                raise IndexOutOfRange(f"bad edge {e} for n={self.n}")
            norm.append((min(j, k), max(j, k)))
        object.__setattr__(self, "edges", tuple(sorted(set(norm))))

    def __contains__(self, edge) -> bool:
        j, k = edge
        return (min(j, k), max(j, k)) in self._edge_set

    def __len__(self) -> int:
        return len(self.edges)

    @cached_property
    def _edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def neighbors(self, v: int) -> list[int]:
        return [k if j == v else j for j, k in self.edges if v in (j, k)]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def subgraph(self, edges: Iterable) -> ContactGraph:
        sub = ContactGraph(self.n, tuple(edges))
        missing = [e for e in sub.edges if e not in self]
        if missing:
            raise InvalidArgument(f"edges {missing} are not in the graph")
        return sub

    def is_tree(self) -> bool:
        return is_connected(self) and len(self.edges) == self.n - 1


@dataclass(frozen=True, eq=False)
class BallConfiguration:
    """Centers of ``n`` unit balls in ``R^d`` with disjoint interiors.

    ``centers`` has shape ``(n, d)``.  Exact configurations store
    ``Root3Scalar`` entries and are checked with ``tol = 0``.
    """

    centers: np.ndarray
    tol: float = field(default=DEFAULT_TOL)

    def __post_init__(self):
        c = self.centers
        if not isinstance(c, np.ndarray) or c.ndim != 2:
            rows = [as_vector(row) for row in c]
            if len({len(r) for r in rows}) > 1:
                raise DimensionMismatch("all centers must have the same dimension")
            exact = any(is_exact_array(r) for r in rows)
            rows = [as_vector(r, exact=exact) for r in rows]
            c = np.array(rows, dtype=object if exact else float)
            if c.ndim != 2:
                raise DimensionMismatch("all centers must have the same dimension")
        elif c.dtype != object:
            c = c.astype(float)
        if c.shape[0] < 1 or c.shape[1] < 1:
            raise InvalidArgument("need at least one ball in dimension >= 1")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "centers", c)
        if self.exact:
            object.__setattr__(self, "tol", 0.0)
        # validates disjointness
        _ = self.graph

    @classmethod
    def from_centers(cls, centers: Sequence, radius: float = 1.0, tol: float = DEFAULT_TOL):
        """Build a configuration, rescaling so that the common radius is 1."""
        cfg = cls(centers, tol=tol)
        if radius != 1:
            if radius <= 0:
                raise InvalidArgument("radius must be positive")
            return cls(to_float_array(cfg.centers) / radius, tol=tol)
        return cfg

    @property
    def n(self) -> int:
        return self.centers.shape[0]

    @property
    def d(self) -> int:
        return self.centers.shape[1]

    @property
    def exact(self) -> bool:
        return is_exact_array(self.centers)

    def center(self, k: int) -> np.ndarray:
        if not 0 <= k < self.n:
            raise IndexOutOfRange(f"ball index {k} out of range for n={self.n}")
        return self.centers[k]

    def dist2(self, j: int, k: int):
        diff = self.center(j) - self.center(k)
        return dot(diff, diff)

    def touching(self, j: int, k: int) -> bool:
        if j == k:
            return False
        d2 = self.dist2(j, k)
        if self.exact:
            return d2 == 4
        return abs(math.sqrt(d2) - 2.0) <= self.tol

    @cached_property
    def graph(self) -> ContactGraph:
        return full_contact_graph(self, self.tol)

    def as_float(self) -> BallConfiguration:
        if not self.exact:
            return self
        return BallConfiguration(to_float_array(self.centers), tol=DEFAULT_TOL)

    def subset(self, indices: Sequence[int]) -> BallConfiguration:
        return BallConfiguration(self.centers[list(indices)], tol=self.tol)

    def transformed(self, rotation: np.ndarray, shift: np.ndarray) -> BallConfiguration:
        """Apply ``x -> R x + s`` to every center (float result)."""
        pts = to_float_array(self.centers) @ np.asarray(rotation, float).T + np.asarray(shift, float)
        return BallConfiguration(pts, tol=self.tol if not self.exact else DEFAULT_TOL)


def full_contact_graph(config: BallConfiguration, tol: float | None = None) -> ContactGraph:
    """Edges between exactly the touching pairs.

    Raises :class:`OverlapError` when two centers are closer than ``2 - tol``.
    """
    if tol is None:
        tol = 0.0 if config.exact else DEFAULT_TOL
    if tol < 0:
        raise InvalidArgument("tol must be non-negative")
    n = config.n
    edges = []
    for j in range(n):
        for k in range(j + 1, n):
            d2 = config.dist2(j, k)
            if config.exact and tol == 0:
                if d2 < 4:
                    raise OverlapError(f"balls {j} and {k} overlap (|x_j - x_k|^2 = {d2})")
                if d2 == 4:
                    edges.append((j, k))
                continue
            dist = math.sqrt(float(d2))
            if dist < 2.0 - tol:
                raise OverlapError(f"balls {j} and {k} overlap (|x_j - x_k| = {dist!r})")
            if abs(dist - 2.0) <= tol:
                edges.append((j, k))
    return ContactGraph(n, tuple(edges))


def is_connected(graph: ContactGraph) -> bool:
    if graph.n <= 1:
        return True
    adj = {v: [] for v in range(graph.n)}
    for j, k in graph.edges:
        adj[j].append(k)
        adj[k].append(j)
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == graph.n
