"""Pinned balls: the pseudo-collision map and schedule-driven evolution.

Ball centers never move.  Each ball carries a pseudo-velocity, and a
collision between touching balls ``j`` and ``k`` exchanges the components of
their velocities along the line of centers, exactly as in an elastic
collision of equal masses.  In ``R^{nd}`` this map is the folding relative
to the half-space ``{w : <w, z_jk> >= 0}``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import (
    BallConfiguration,
    ContactGraph,
    as_vector,
    dot,
    is_connected,
    is_exact_array,
    to_float_array,
)
from .errors import (
    DimensionMismatch,
    DisconnectedGraph,
    IndexOutOfRange,
    InvalidArgument,
    NotTouching,
    ScheduleEdgeNotInGraph,
)
from .exact import Root3Scalar
from .folding import Halfspace, fold

__all__ = [
    "COLLISION_EPS",
    "VelocityState",
    "Schedule",
    "CollisionLog",
    "WitnessBall",
    "z_tilde",
    "z_vector",
    "collision_map",
    "collides",
    "halfspace_from_edge",
    "run_schedule",
    "effective_radius",
    "witness_ball",
    "verify_fold_equivalence",
    "ps_refutation_check",
]

#: a touching pair collides only if (v_j - v_k).(x_j - x_k) < -COLLISION_EPS
COLLISION_EPS = 1e-12

SCHEDULE_KINDS = ("explicit", "round_robin", "random", "greedy")


@dataclass(frozen=True, eq=False)
class VelocityState:
    """All pseudo-velocities as one vector of length ``n*d``; block ``k`` is ball ``k``."""

    v: np.ndarray
    n: int
    d: int

    def __post_init__(self):
        vec = as_vector(self.v)
        if vec.shape[0] != self.n * self.d:
            raise DimensionMismatch(f"state has length {vec.shape[0]}, expected n*d = {self.n * self.d}")
        vec = vec.copy()
        vec.setflags(write=False)
        object.__setattr__(self, "v", vec)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence]) -> VelocityState:
        rows = [list(b) for b in blocks]
        if not rows or len({len(r) for r in rows}) != 1:
            raise DimensionMismatch("all velocity blocks must have the same length")
        flat = [x for r in rows for x in r]
        return cls(as_vector(flat), len(rows), len(rows[0]))

    @classmethod
    def zeros(cls, n: int, d: int) -> VelocityState:
        return cls(np.zeros(n * d), n, d)

    @property
    def exact(self) -> bool:
        return is_exact_array(self.v)

    def block(self, k: int) -> np.ndarray:
        if not 0 <= k < self.n:
            raise IndexOutOfRange(f"ball index {k} out of range for n={self.n}")
        return self.v[k * self.d:(k + 1) * self.d]

    def blocks(self) -> np.ndarray:
        return self.v.reshape(self.n, self.d)

    def energy(self):
        """Sum of squared speeds (no factor 1/2)."""
        return dot(self.v, self.v)

    def momentum(self) -> np.ndarray:
        b = self.blocks()
        total = b[0]
        for k in range(1, self.n):
            total = total + b[k]
        return total

    def as_float(self) -> VelocityState:
        return self if not self.exact else VelocityState(to_float_array(self.v), self.n, self.d)

    def normalized(self) -> VelocityState:
        """Rescaled to unit energy (float); zero states are returned unchanged."""
        f = to_float_array(self.v)
        e = float(np.linalg.norm(f))
        return VelocityState(f / e if e > 0 else f, self.n, self.d)


@dataclass(frozen=True)
class Schedule:
    """Exogenous order of candidate collisions.

    ``explicit`` applies ``edges`` in order.  ``round_robin``, ``random`` and
    ``greedy`` draw from the edge set ``edges`` (default: every edge of the
    associated graph) until no edge of that set can collide.  ``greedy``
    applies the collision with the largest velocity change, ties to the
    lowest edge.
    """

    kind: str = "round_robin"
    edges: tuple[tuple[int, int], ...] = ()
    seed: int = 0

    def __post_init__(self):
        if self.kind not in SCHEDULE_KINDS:
            raise InvalidArgument(f"unknown schedule kind {self.kind!r}; expected one of {SCHEDULE_KINDS}")
        object.__setattr__(self, "edges", tuple(_norm_edge(e) for e in self.edges))

    @classmethod
    def explicit(cls, edges) -> Schedule:
        return cls("explicit", tuple(edges))


def _norm_edge(e) -> tuple[int, int]:
    j, k = int(e[0]), int(e[1])
    return (j, k) if j < k else (k, j)


@dataclass
class CollisionLog:
    """Record of a schedule run.  Step and jump times are 1-based."""

    jump_times: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    deltas: list = field(default_factory=list)
    final: VelocityState | None = None
    absorbed: bool = False
    steps: int = 0
    states: list | None = None

    @property
    def collisions(self) -> int:
        return len(self.jump_times)

    @property
    def delta_norms(self) -> list[float]:
        return [float(np.linalg.norm(to_float_array(dv))) for dv in self.deltas]


@dataclass(frozen=True, eq=False)
class WitnessBall:
    """A ball ``B(center, radius)`` inside every contact half-space."""

    center: np.ndarray
    radius: float
    scale: float
    inner_products: dict
    threshold: float


def _check_pair(config: BallConfiguration, j: int, k: int) -> None:
    n = config.n
    if not (0 <= j < n and 0 <= k < n):
        raise IndexOutOfRange(f"ball indices ({j}, {k}) out of range for n={n}")
    if j == k:
        raise InvalidArgument("a ball cannot collide with itself")


def _require_touching(config: BallConfiguration, j: int, k: int) -> None:
    _check_pair(config, j, k)
    if not config.touching(j, k):
        raise NotTouching(f"balls {j} and {k} do not touch")


def z_tilde(config: BallConfiguration, j: int, k: int) -> np.ndarray:
    """Unnormalized contact vector: ``x_j - x_k`` in block ``j``, ``x_k - x_j`` in block ``k``."""
    _require_touching(config, j, k)
    d = config.d
    diff = config.center(j) - config.center(k)
    out = np.empty(config.n * d, dtype=object) if config.exact else np.zeros(config.n * d)
    if config.exact:
        out[:] = [Root3Scalar(0)] * out.shape[0]
    out[j * d:(j + 1) * d] = diff
    out[k * d:(k + 1) * d] = -diff
    return out


def z_vector(config: BallConfiguration, j: int, k: int) -> np.ndarray:
    """Unit contact vector ``2**-1.5 * z_tilde`` (always float)."""
    zt = to_float_array(z_tilde(config, j, k))
    return zt / np.linalg.norm(zt)


def halfspace_from_edge(config: BallConfiguration, j: int, k: int) -> Halfspace:
    """``{w : <w, z_jk> >= 0}``; exact configurations keep the exact normal ``z_tilde``."""
    if config.exact:
        return Halfspace(z_tilde(config, j, k), 0)
    return Halfspace(z_vector(config, j, k), 0.0)


def _centers_for(config: BallConfiguration, exact: bool) -> np.ndarray:
    if exact or not config.exact:
        return config.centers
    return to_float_array(config.centers)


def collides(config: BallConfiguration, v: np.ndarray, j: int, k: int) -> bool:
    """Whether ``collision_map`` would change the flat state ``v`` on pair ``(j, k)``."""
    _check_pair(config, j, k)
    if not config.touching(j, k):
        return False
    exact = is_exact_array(v) and config.exact
    d = config.d
    x = _centers_for(config, exact)
    g = dot(v[j * d:(j + 1) * d] - v[k * d:(k + 1) * d], x[j] - x[k])
    return g < 0 if exact else g < -COLLISION_EPS


def _collide(config: BallConfiguration, v: np.ndarray, j: int, k: int) -> np.ndarray:
    """Flat-array collision map; returns ``v`` itself when nothing changes."""
    if not collides(config, v, j, k):
        return v
    exact = is_exact_array(v) and config.exact
    if not exact and is_exact_array(v):
        v = to_float_array(v)
    d = config.d
    x = _centers_for(config, exact)
    diff = x[j] - x[k]
    u = diff / 2 if exact else diff / math.sqrt(float(np.dot(diff, diff)))
    vj = v[j * d:(j + 1) * d]
    vk = v[k * d:(k + 1) * d]
    shift = u * (dot(vk, u) - dot(vj, u))
    w = v.copy()
    w[j * d:(j + 1) * d] = vj + shift
    w[k * d:(k + 1) * d] = vk - shift
    return w


def _as_state(config: BallConfiguration, state) -> VelocityState:
    if isinstance(state, VelocityState):
        if (state.n, state.d) != (config.n, config.d):
            raise DimensionMismatch(f"state is for n={state.n}, d={state.d}; config has n={config.n}, d={config.d}")
        return state
    arr = np.asarray(state, dtype=object)
    if arr.ndim == 2:
        return VelocityState.from_blocks(state)
    return VelocityState(as_vector(state), config.n, config.d)


def collision_map(config: BallConfiguration, state, j: int, k: int) -> VelocityState:
    """Apply the pseudo-collision of balls ``j`` and ``k``.

    Non-touching pairs and touching pairs that are not approaching leave the
    state unchanged (the same object is returned).
    """
    st = _as_state(config, state)
    w = _collide(config, st.v, j, k)
    if w is st.v:
        return st
    return VelocityState(w, st.n, st.d)


def _validate_graph(config: BallConfiguration, graph: ContactGraph | None) -> ContactGraph:
    if graph is None:
        return config.graph
    if graph.n != config.n:
        raise DimensionMismatch(f"graph has {graph.n} vertices, config has {config.n} balls")
    for e in graph.edges:
        if e not in config.graph:
            raise NotTouching(f"graph edge {e} is not a contact of the configuration")
    return graph


def run_schedule(
    config: BallConfiguration,
    v0,
    schedule: Schedule,
    max_steps: int,
    graph: ContactGraph | None = None,
    record_states: bool = False,
) -> CollisionLog:
    """Evolve ``v0`` along ``schedule`` on the associated ``graph`` (default: full graph)."""
    if max_steps < 0:
        raise InvalidArgument("max_steps must be non-negative")
    graph = _validate_graph(config, graph)
    st = _as_state(config, v0)
    for e in schedule.edges:
        if e not in graph:
            raise ScheduleEdgeNotInGraph(f"schedule edge {e} is not an edge of the associated graph")
    active = graph.edges if schedule.kind == "explicit" or not schedule.edges else tuple(sorted(set(schedule.edges)))

    def quiet(vec) -> bool:
        return not any(collides(config, vec, j, k) for j, k in active)

    v = st.v
    log = CollisionLog(states=[st] if record_states else None)
    step = 0

    def apply(edge) -> None:
        nonlocal v
        w = _collide(config, v, *edge)
        if w is not v:
            log.jump_times.append(step)
            log.edges.append(edge)
            log.deltas.append(w - v)
            v = w
        if record_states:
            log.states.append(VelocityState(v, st.n, st.d))

    if schedule.kind == "explicit":
        for edge in schedule.edges[:max_steps]:
            step += 1
            apply(edge)
        log.absorbed = quiet(v)
    elif schedule.kind == "greedy":
        while True:
            best, best_size = None, None
            for edge in active:
                w = _collide(config, v, *edge)
                if w is v:
                    continue
                size = dot(w - v, w - v)
                if best is None or size > best_size:
                    best, best_size = edge, size
            if best is None:
                log.absorbed = True
                break
            if step >= max_steps:
                break
            step += 1
            apply(best)
    else:
        if schedule.kind == "round_robin":
            source = itertools.cycle(active)
        else:
            rng = np.random.default_rng(schedule.seed)
            source = (active[i] for i in iter(lambda: int(rng.integers(len(active))), None))
        log.absorbed = quiet(v)
        while not log.absorbed and step < max_steps and active:
            step += 1
            before = len(log.jump_times)
            apply(next(source))
            if len(log.jump_times) > before:
                log.absorbed = quiet(v)
        if not active:
            log.absorbed = True
    log.steps = step
    log.final = VelocityState(v, st.n, st.d)
    return log


def effective_radius(n: int) -> float:
    """Witness radius after rescaling so the start lies within distance 1 of the center."""
    if n < 2:
        raise InvalidArgument("need at least two balls")
    return 2 ** -1.5 / (math.sqrt(n) * (n - 1))


def witness_ball(config: BallConfiguration) -> WitnessBall:
    """Unit vector ``w`` with blocks ``c (x_k - x_0)`` and the ball radius around it.

    Every contact half-space satisfies ``<w, z_jk> >= 1/(sqrt(2n)(n-1))``;
    this is checked before returning.
    """
    graph = config.graph
    if not is_connected(graph):
        raise DisconnectedGraph("the full contact graph is not connected")
    n = config.n
    if n < 2:
        raise InvalidArgument("need at least two balls")
    x = to_float_array(config.centers)
    rel = x - x[0]
    c = 1.0 / math.sqrt(float(np.sum(rel * rel)))
    w = (c * rel).ravel()
    threshold = 1.0 / (math.sqrt(2 * n) * (n - 1))
    inner = {}
    for j, k in graph.edges:
        ip = float(np.dot(w, z_vector(config, j, k)))
        if ip < threshold - 1e-12:
            raise AssertionError(f"witness inequality fails on edge {(j, k)}: {ip} < {threshold}")
        inner[(j, k)] = ip
    return WitnessBall(center=w, radius=effective_radius(n), scale=c, inner_products=inner, threshold=threshold)


def verify_fold_equivalence(config: BallConfiguration, state, j: int, k: int, tol: float = 1e-12) -> bool:
    """Check that the collision map on ``(j, k)`` equals the folding relative to ``H_jk``."""
    st = _as_state(config, state)
    h = halfspace_from_edge(config, j, k)
    via_collision = collision_map(config, st, j, k).v
    via_fold = fold(h, st.v)
    if is_exact_array(via_collision) and is_exact_array(via_fold):
        return all(a == b for a, b in zip(via_collision, via_fold))
    diff = to_float_array(via_collision) - to_float_array(via_fold)
    return bool(np.max(np.abs(diff)) <= tol)


@dataclass(frozen=True)
class PSReport:
    inner_e1: Root3Scalar
    inner_e2: Root3Scalar
    holds: bool
    verdict: str


def ps_refutation_check() -> PSReport:
    """Redo the approximation argument for the four-disc example in exact arithmetic.

    After the third collision of the first schedule, the relative velocity of
    C towards B along ``e1`` is larger than that of D along ``e2``, so moving
    balls would hit D first; the first schedule (which hits C) cannot be
    realized by moving balls, while the second one can be a candidate.
    """
    from .scenarios import four_disc_scenario

    sc = four_disc_scenario()
    log = run_schedule(sc.config, sc.velocities, sc.schedules["gamma1"], max_steps=3, record_states=True)
    v3 = log.states[3]
    half = Root3Scalar(1, 0) / 2
    e1 = as_vector([-half, Root3Scalar(0, 1) / 2])
    e2 = as_vector([half, Root3Scalar(0, 1) / 2])
    A, B, C, D = range(4)
    ip1 = dot(e1, v3.block(C) - v3.block(B))
    ip2 = dot(e2, v3.block(D) - v3.block(B))
    holds = ip1 > ip2
    verdict = "gamma1 not PS-realizable, gamma2 candidate" if holds else "inequality fails"
    return PSReport(ip1, ip2, holds, verdict)
