"""Collision-count bounds evaluated as base-2 logarithms.

The bounds are far too large to materialize (the lattice bound at ``n = 10``
already exceeds ``10**1500``), so every evaluator returns a :class:`LogBound`
holding ``log2`` of the value.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import total_ordering
from typing import Optional

import numpy as np

from .core import BallConfiguration, dot, to_float_array
from .errors import InvalidArgument, TooManyEdges
from .exact import Root3Scalar

__all__ = [
    "LogBound",
    "KissingInfo",
    "kissing_info",
    "default_tau",
    "bound_main",
    "bound_main_ell",
    "bound_fold_orbit",
    "bound_two_halfspaces",
    "recursion_step",
    "bound_alpha",
    "bound_tree",
    "bound_lattice",
    "bound_tree_improved",
    "bound_main_tree_improved",
    "bound_moving",
    "alpha_F",
    "alpha_star",
    "evaluate",
    "FORMULAS",
]

LOG2_308 = math.log2(308)
ALPHA_CUTOFF = 1e-9


@total_ordering
@dataclass(frozen=True)
class LogBound:
    """A bound represented by ``log2`` of its value.  Ordered by ``log2_value``."""

    log2_value: float
    provenance: str
    inputs: dict = field(default_factory=dict, compare=False)

    @property
    def log10(self) -> float:
        return self.log2_value * math.log10(2)

    @property
    def value(self) -> float:
        """The bound itself, ``inf`` when it overflows a float."""
        try:
            return 2.0 ** self.log2_value
        except OverflowError:
            return math.inf

    def __eq__(self, other):
        if not isinstance(other, LogBound):
            return NotImplemented
        return self.log2_value == other.log2_value

    def __lt__(self, other):
        if not isinstance(other, LogBound):
            return NotImplemented
        return self.log2_value < other.log2_value

    def __hash__(self):
        return hash(self.log2_value)

    def admits(self, count: float) -> bool:
        """``count <= bound``, compared in the log domain."""
        return count <= 0 or math.log2(count) <= self.log2_value


@dataclass(frozen=True)
class KissingInfo:
    d: int
    lower: int
    upper: int
    exact: Optional[int] = None

    def __post_init__(self):
        if self.exact is not None and not self.lower <= self.exact <= self.upper:
            raise InvalidArgument(f"kissing number {self.exact} outside [{self.lower}, {self.upper}] for d={self.d}")


def kissing_info(d: int, exact: int | None = None) -> KissingInfo:
    """Elementary bounds ``2d <= tau_d <= 3**d - 1``.

    ``exact`` is filled in for ``d = 1`` (the bounds coincide), for ``d = 2``
    (``tau_2 = 6``) or when supplied by the caller.
    """
    if d < 1:
        raise InvalidArgument("dimension must be >= 1")
    lower, upper = 2 * d, 3 ** d - 1
    if exact is None:
        if d == 1:
            exact = 2
        elif d == 2:
            exact = 6
    return KissingInfo(d, lower, upper, exact)


def default_tau(d: int, tau: int | None = None) -> int:
    info = kissing_info(d, tau)
    return info.exact if info.exact is not None else info.upper


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise InvalidArgument(msg)


def bound_main_ell(n: int, ell: float) -> LogBound:
    """``2**-27 2**(16 l) n**(-27/2) n**(15 l/2)`` for a given edge budget ``l``."""
    _need(n >= 3, "the main bound needs n >= 3")
    _need(ell > 0, "ell must be positive")
    lg = -27 + 16 * ell + (15 * ell / 2 - 27 / 2) * math.log2(n)
    return LogBound(lg, "main", {"n": n, "ell": ell})


def bound_main(n: int, d: int, tau: int | None = None) -> LogBound:
    """Main collision bound with ``l = n min(tau_d, n) / 2``."""
    _need(n >= 3, "the main bound needs n >= 3")
    _need(d >= 1, "dimension must be >= 1")
    t = default_tau(d, tau)
    ell = 0.5 * n * min(t, n)
    b = bound_main_ell(n, ell)
    return LogBound(b.log2_value, "main", {"n": n, "d": d, "tau": t, "ell": ell})


def bound_fold_orbit(l: int, r: float) -> LogBound:
    """Jump bound ``2 pi 308**(l-2) r**(-5(l-2)-1)`` for ``l`` half-spaces and witness radius ``r``."""
    _need(l >= 2, "the folding bound needs l >= 2")
    _need(0 < r < 1, "r must lie in (0, 1)")
    lg = math.log2(2 * math.pi) + (l - 2) * LOG2_308 - (5 * (l - 2) + 1) * math.log2(r)
    return LogBound(lg, "fold_orbit", {"l": l, "r": r})


def bound_two_halfspaces(r: float) -> float:
    """Jump bound ``pi/r + 1`` for two half-spaces."""
    _need(0 < r < 1, "r must lie in (0, 1)")
    return math.pi / r + 1


def recursion_step(l: int, r: float, prev: LogBound) -> LogBound:
    """One step ``N(l, r) <= 308 r**-5 N(l-1, r)`` in log form."""
    _need(l >= 3, "the recursion applies for l >= 3")
    _need(0 < r < 1, "r must lie in (0, 1)")
    return LogBound(prev.log2_value + LOG2_308 - 5 * math.log2(r), "recursion", {"l": l, "r": r})


def bound_alpha(n: int, d: int, alpha: float, tau: int | None = None) -> LogBound:
    """``(2**(21/2) d n**5 / alpha)**(tau_d n/2 - 1)``."""
    _need(n >= 3, "needs n >= 3")
    _need(alpha > 0, "alpha must be positive")
    t = default_tau(d, tau)
    expo = t * n / 2 - 1
    lg = expo * (10.5 + math.log2(d) + 5 * math.log2(n) - math.log2(alpha))
    return LogBound(lg, "alpha", {"n": n, "d": d, "alpha": alpha, "tau": t})


def bound_tree(n: int, d: int, tau: int | None = None) -> LogBound:
    """Tree bound ``(2**10 d n**6)**(tau_d n/2 - 1)``."""
    _need(n >= 3, "needs n >= 3")
    t = default_tau(d, tau)
    lg = (t * n / 2 - 1) * (10 + math.log2(d) + 6 * math.log2(n))
    return LogBound(lg, "tree", {"n": n, "d": d, "tau": t})


def bound_lattice(n: int) -> LogBound:
    """Planar triangular-lattice bound ``(10**6 n**(11/2) 4**(4n))**(3n - 1)``."""
    _need(n >= 3, "needs n >= 3")
    lg = (3 * n - 1) * (6 * math.log2(10) + 5.5 * math.log2(n) + 8 * n)
    return LogBound(lg, "lattice", {"n": n})


def bound_tree_improved(n: int) -> LogBound:
    """Tree bound with ``n - 1`` half-spaces: ``2**(11n - 22) n**-14 n**(7n)``."""
    _need(n >= 3, "needs n >= 3")
    lg = 11 * n - 22 + (7 * n - 14) * math.log2(n)
    return LogBound(lg, "tree_improved", {"n": n})


def bound_main_tree_improved(n: int) -> LogBound:
    """Main bound for trees as printed: ``2**-27 2**(16n) n**(-27/2) n**(15n)``."""
    _need(n >= 3, "needs n >= 3")
    lg = -27 + 16 * n + (15 * n - 13.5) * math.log2(n)
    return LogBound(lg, "main_tree_improved", {"n": n})


MOVING_VARIANTS = ("moving_n2", "moving_n4", "moving_equal")


def bound_moving(n: int, d: int = 2, variant: str = "moving_n2", mass_ratio: float = 1.0, radius_ratio: float = 1.0) -> LogBound:
    """Published bounds for moving elastic balls, for comparison.

    ``moving_n2``: ``(32 sqrt(M) R n**(3/2))**(n**2)``;
    ``moving_n4``: ``(400 M n**2)**(2 n**4)``;
    ``moving_equal``: ``1600 (1000 * 32**(5**d))**n n**(((3/2) 5**d + 9/2) n + 2)``
    (equal masses and radii), where ``M`` and ``R`` are the max/min mass and
    radius ratios.
    """
    _need(n >= 2, "needs n >= 2")
    _need(mass_ratio >= 1 and radius_ratio >= 1, "ratios must be >= 1")
    L = math.log2(n)
    if variant == "moving_n2":
        lg = n * n * (5 + 0.5 * math.log2(mass_ratio) + math.log2(radius_ratio) + 1.5 * L)
    elif variant == "moving_n4":
        lg = 2 * n ** 4 * (math.log2(400) + math.log2(mass_ratio) + 2 * L)
    elif variant == "moving_equal":
        _need(d >= 1, "dimension must be >= 1")
        f = 5 ** d
        lg = math.log2(1600) + n * (math.log2(1000) + 5 * f) + ((1.5 * f + 4.5) * n + 2) * L
    else:
        raise InvalidArgument(f"unknown variant {variant!r}; expected one of {MOVING_VARIANTS}")
    return LogBound(lg, variant, {"n": n, "d": d, "mass_ratio": mass_ratio, "radius_ratio": radius_ratio})


# alpha(F) ------------------------------------------------------------------


def _z_tildes(config: BallConfiguration, edges) -> list:
    from .pinned import z_tilde

    return [z_tilde(config, j, k) for j, k in edges]


def _exact_dist2(target: np.ndarray, basis: list) -> Root3Scalar:
    """Squared distance from ``target`` to ``span(basis)`` by exact Gram-Schmidt."""
    ortho = []
    for b in basis:
        u = b
        for q, qq in ortho:
            u = u - q * (dot(u, q) / qq)
        uu = dot(u, u)
        if uu != 0:
            ortho.append((u, uu))
    r = target
    for q, qq in ortho:
        r = r - q * (dot(r, q) / qq)
    return dot(r, r)


def _float_dist(target: np.ndarray, basis: list) -> float:
    if not basis:
        return float(np.linalg.norm(target))
    M = np.column_stack(basis)
    coef, *_ = np.linalg.lstsq(M, target, rcond=None)
    return float(np.linalg.norm(target - M @ coef))


def alpha_star(config: BallConfiguration, edges, distinguished) -> float:
    """Distance from ``z`` of ``distinguished`` to the span of the other edges' ``z``."""
    others = [e for e in edges if tuple(e) != tuple(distinguished)]
    if config.exact:
        zt = _z_tildes(config, [distinguished] + others)
        d2 = _exact_dist2(zt[0], zt[1:]) / dot(zt[0], zt[0])
        return math.sqrt(float(d2))
    zs = [to_float_array(z) for z in _z_tildes(config, [distinguished] + others)]
    zs = [z / np.linalg.norm(z) for z in zs]
    return _float_dist(zs[0], zs[1:])


def alpha_F(config: BallConfiguration, max_edges: int = 12) -> float:
    """Minimum positive distance from a contact vector to the span of other contact vectors.

    Runs over every subset of full-graph edges and every distinguished edge,
    so the cost is ``m 2**(m-1)`` projections for ``m`` edges.  Returns
    ``math.inf`` when no positive value exists (no edges).  Float distances
    below ``1e-9`` count as zero; exact configurations are decided exactly.
    """
    edges = list(config.graph.edges)
    m = len(edges)
    if m > max_edges:
        raise TooManyEdges(f"{m} edges exceed max_edges={max_edges}")
    exact = config.exact
    if exact:
        zt = _z_tildes(config, edges)
        norms = [dot(z, z) for z in zt]
    else:
        zt = [to_float_array(z) for z in _z_tildes(config, edges)]
        zt = [z / np.linalg.norm(z) for z in zt]
    best = math.inf
    for i in range(m):
        rest = [zt[k] for k in range(m) if k != i]
        for size in range(len(rest) + 1):
            for subset in itertools.combinations(rest, size):
                if exact:
                    d2 = _exact_dist2(zt[i], list(subset)) / norms[i]
                    if d2 > 0:
                        best = min(best, math.sqrt(float(d2)))
                else:
                    dist = _float_dist(zt[i], list(subset))
                    if dist > ALPHA_CUTOFF:
                        best = min(best, dist)
    return best


# table evaluation ----------------------------------------------------------

FORMULAS = (
    "main",
    "fold_orbit",
    "two_halfspaces",
    "alpha",
    "tree",
    "lattice",
    "tree_improved",
    "main_tree_improved",
    "moving_n2",
    "moving_n4",
    "moving_equal",
)


def evaluate(formula: str, n: int | None = None, d: int | None = None, tau: int | None = None,
             l: int | None = None, r: float | None = None, alpha: float | None = None,
             mass_ratio: float = 1.0, radius_ratio: float = 1.0) -> LogBound:
    """Evaluate one named formula; used by the command line."""
    if formula == "main":
        return bound_main(n, d, tau)
    if formula == "fold_orbit":
        return bound_fold_orbit(l, r)
    if formula == "two_halfspaces":
        return LogBound(math.log2(bound_two_halfspaces(r)), "two_halfspaces", {"r": r})
    if formula == "alpha":
        return bound_alpha(n, d, alpha, tau)
    if formula == "tree":
        return bound_tree(n, d, tau)
    if formula == "lattice":
        return bound_lattice(n)
    if formula == "tree_improved":
        return bound_tree_improved(n)
    if formula == "main_tree_improved":
        return bound_main_tree_improved(n)
    if formula in MOVING_VARIANTS:
        return bound_moving(n, d if d is not None else 2, formula, mass_ratio, radius_ratio)
    raise InvalidArgument(f"unknown formula {formula!r}; expected one of {FORMULAS}")
