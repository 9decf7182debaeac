"""Configuration generators and the four-disc planar example."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import BallConfiguration, as_vector
from .errors import InfeasibleStar, InvalidArgument, PlacementFailure
from .exact import Root3Scalar
from .pinned import Schedule, VelocityState

__all__ = [
    "Expected",
    "Scenario",
    "four_disc_scenario",
    "triangular_lattice_config",
    "random_lattice_config",
    "chain_config",
    "star_config",
    "random_config",
    "SCENARIOS",
    "get_scenario",
]


def _r3(a=0, b=0) -> Root3Scalar:
    return Root3Scalar(a, b)


def _q(num, den=1):
    from fractions import Fraction

    return Fraction(num, den)


@dataclass(frozen=True)
class Expected:
    """A transcribed velocity: ball ``ball`` after collision ``step``."""

    step: int
    ball: int
    value: tuple
    suspect: bool = False


@dataclass
class Scenario:
    name: str
    config: BallConfiguration
    velocities: VelocityState
    schedules: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    ball_names: tuple = ()


def _vec(ax, bx, ay, by) -> tuple:
    """``(ax + bx sqrt3, ay + by sqrt3)``."""
    return (_r3(ax, bx), _r3(ay, by))


A, B, C, D = range(4)

# velocity tables transcribed from the worked example
_GAMMA1_TABLE = (
    Expected(1, B, _vec(0, _q(1, 4), _q(1, 4), 0)),
    Expected(1, C, _vec(0, _q(-1, 4), _q(3, 4), 0)),
    Expected(2, B, _vec(0, _q(1, 8), _q(-1, 8), 0)),
    Expected(2, D, _vec(0, _q(1, 8), _q(3, 8), 0)),
    Expected(3, A, _vec(0, 0, _q(-1, 8), 0)),
    Expected(3, B, _vec(0, _q(1, 8), 2, 0)),
    Expected(4, B, _vec(0, _q(11, 32), _q(43, 32), 0)),
    Expected(4, C, _vec(0, _q(-15, 32), _q(45, 32), 0)),
)

_GAMMA2_TABLE = (
    Expected(1, B, _vec(0, _q(1, 4), _q(1, 4), 0)),
    Expected(1, C, _vec(0, _q(-1, 4), _q(3, 4), 0)),
    Expected(2, B, _vec(0, _q(1, 8), _q(-1, 8), 0)),
    Expected(2, D, _vec(0, _q(1, 8), _q(3, 8), 0)),
    Expected(3, A, _vec(0, 0, _q(-1, 8), 0)),
    # printed as (sqrt3/8, 6); the shared prefix with gamma1 and energy
    # conservation both give (sqrt3/8, 2)
    Expected(3, B, _vec(0, _q(1, 8), 6, 0), suspect=True),
    Expected(4, B, _vec(0, _q(-9, 32), _q(25, 32), 0)),
    Expected(4, D, _vec(0, _q(17, 32), _q(51, 32), 0)),
    Expected(5, B, _vec(0, _q(-17, 64), _q(47, 64), 0)),
    Expected(5, C, _vec(0, _q(-17, 64), _q(51, 64), 0)),
)


def four_disc_scenario() -> Scenario:
    """Four touching discs A, B, C, D in the plane with two collision orders."""
    centers = [
        [_r3(0), _r3(-2)],
        [_r3(0), _r3(0)],
        [_r3(-1), _r3(0, 1)],
        [_r3(1), _r3(0, 1)],
    ]
    config = BallConfiguration(centers)
    v0 = VelocityState.from_blocks([[_r3(0), _r3(2)], [_r3(0), _r3(1)], [_r3(0), _r3(0)], [_r3(0), _r3(0)]])
    AB, BC, BD = (A, B), (B, C), (B, D)
    schedules = {
        "gamma1": Schedule.explicit([BC, BD, AB, BC]),
        "gamma2": Schedule.explicit([BC, BD, AB, BD, BC]),
    }
    return Scenario(
        name="four_discs",
        config=config,
        velocities=v0,
        schedules=schedules,
        expected={"gamma1": _GAMMA1_TABLE, "gamma2": _GAMMA2_TABLE},
        ball_names=("A", "B", "C", "D"),
    )


def _lattice_point(X: int, Y: int, exact: bool):
    if exact:
        return [_r3(X), _r3(0, Y)]
    return [float(X), Y * math.sqrt(3.0)]


def triangular_lattice_config(extent: int, exact: bool = True) -> BallConfiguration:
    """Points ``(2j, 2k sqrt3)`` and ``(2j+1, (2k+1) sqrt3)`` with ``|j|, |k| <= extent``.

    Balls are indexed in lexicographic ``(j, k)`` order, the even point
    before the odd one.
    """
    if extent < 1:
        raise InvalidArgument("extent must be >= 1")
    pts = []
    rng = range(-extent, extent + 1)
    for j in rng:
        for k in rng:
            pts.append(_lattice_point(2 * j, 2 * k, exact))
            pts.append(_lattice_point(2 * j + 1, 2 * k + 1, exact))
    return BallConfiguration(pts)


def random_lattice_config(n: int, seed: int = 0, exact: bool = True) -> BallConfiguration:
    """A connected patch of ``n`` triangular-lattice sites grown at random from the origin."""
    if n < 1:
        raise InvalidArgument("n must be >= 1")
    rng = np.random.default_rng(seed)
    steps = ((2, 0), (-2, 0), (1, 1), (1, -1), (-1, 1), (-1, -1))
    sites = [(0, 0)]
    taken = {(0, 0)}
    while len(sites) < n:
        frontier = sorted({(x + dx, y + dy) for x, y in sites for dx, dy in steps} - taken)
        pick = frontier[int(rng.integers(len(frontier)))]
        sites.append(pick)
        taken.add(pick)
    return BallConfiguration([_lattice_point(X, Y, exact) for X, Y in sites])


def chain_config(n: int, d: int = 1, exact: bool = False) -> BallConfiguration:
    """Collinear centers ``0, 2, 4, ...`` on the first axis; the full graph is a path."""
    if n < 2 or d < 1:
        raise InvalidArgument("chain needs n >= 2 and d >= 1")
    rows = [[2 * i] + [0] * (d - 1) for i in range(n)]
    if exact:
        return BallConfiguration([[_r3(x) for x in r] for r in rows])
    return BallConfiguration(np.asarray(rows, dtype=float))


def star_capacity(d: int) -> int:
    if d == 1:
        return 2
    if d == 2:
        return 6
    return 2 * d


def star_config(n: int, d: int) -> BallConfiguration:
    """Hub (ball 0) touched by ``n - 1`` leaves.

    Leaves sit at ``+-2`` in ``d = 1``, on a regular hexagon in ``d = 2`` and
    at ``+-2 e_i`` for ``d >= 3``.
    """
    if n < 2 or d < 1:
        raise InvalidArgument("star needs n >= 2 and d >= 1")
    cap = star_capacity(d)
    if n - 1 > cap:
        raise InfeasibleStar(f"{n - 1} leaves exceed the {cap} touching positions of this construction in d={d}")
    if d == 2:
        hexagon = [(2, 0), (1, 1), (-1, 1), (-2, 0), (-1, -1), (1, -1)]
        rows = [[_r3(0), _r3(0)]] + [[_r3(x), _r3(0, y)] for x, y in hexagon[: n - 1]]
        return BallConfiguration(rows)
    leaves = []
    for i in range(d):
        for s in (2.0, -2.0):
            e = [0.0] * d
            e[i] = s
            leaves.append(e)
    return BallConfiguration(np.asarray([[0.0] * d] + leaves[: n - 1]))


def random_config(n: int, d: int, seed: int = 0, max_attempts: int = 10_000) -> BallConfiguration:
    """Sequential attachment: each new ball touches a uniformly chosen earlier ball."""
    if n < 2 or d < 1:
        raise InvalidArgument("random_config needs n >= 2 and d >= 1")
    rng = np.random.default_rng(seed)
    centers = [np.zeros(d)]
    for _ in range(1, n):
        for _attempt in range(max_attempts):
            parent = centers[int(rng.integers(len(centers)))]
            direction = rng.normal(size=d)
            norm = np.linalg.norm(direction)
            if norm == 0:
                continue
            cand = parent + 2.0 * direction / norm
            if all(np.linalg.norm(cand - c) >= 2.0 - 1e-12 for c in centers):
                centers.append(cand)
                break
        else:
            raise PlacementFailure(f"could not place ball {len(centers)} after {max_attempts} attempts")
    return BallConfiguration(np.asarray(centers))


def _chain3():
    cfg = chain_config(3, 1)
    return cfg, VelocityState(as_vector([1.0, 0.0, 0.0]), 3, 1)


SCENARIOS = {
    "four_discs": "four discs A, B, C, D with the two collision orders (exact)",
    "chain3": "three balls on a line, left ball moving right",
    "lattice1": "triangular lattice patch, extent 1 (exact)",
    "star7": "hexagonal star of seven discs",
}


def get_scenario(name: str) -> Scenario:
    """Look up a named scenario (see ``SCENARIOS``)."""
    if name == "four_discs":
        return four_disc_scenario()
    if name == "chain3":
        cfg, v = _chain3()
        return Scenario("chain3", cfg, v, {"round_robin": Schedule("round_robin")})
    if name == "lattice1":
        cfg = triangular_lattice_config(1)
        v = VelocityState.zeros(cfg.n, cfg.d)
        return Scenario("lattice1", cfg, v, {"round_robin": Schedule("round_robin")})
    if name == "star7":
        cfg = star_config(7, 2)
        blocks = [[0, 0] for _ in range(cfg.n)]
        blocks[0] = [1, 0]
        v = VelocityState.from_blocks([[_r3(a) for a in b] for b in blocks])
        return Scenario("star7", cfg, v, {"round_robin": Schedule("round_robin")})
    raise InvalidArgument(f"unknown scenario {name!r}; known: {', '.join(SCENARIOS)}")
