"""Acceptance suite: one test per headline criterion, each tagged with ``criterion``.

The terminal summary lists every criterion with PASS or FAIL.
"""
import itertools
import math
import time
from fractions import Fraction

import numpy as np
import pytest

import oracles
from pinnedballs import bounds as bnd
from pinnedballs.core import is_connected
from pinnedballs.exact import Root3Scalar
from pinnedballs.folding import Halfspace, fold, orbit_size_witness, run_foldings, wedge_start, wedge_with_angle
from pinnedballs.pinned import (
    Schedule,
    VelocityState,
    _collide,
    collision_map,
    halfspace_from_edge,
    run_schedule,
    witness_ball,
    z_vector,
)
from pinnedballs.regression import FAIL, PASS, WARN, verify_paper
from pinnedballs.scenarios import chain_config, four_disc_scenario, random_config, random_lattice_config
from pinnedballs.search import collision_bounds, search_max_collisions


def _random_configs(count, seed, n_range=(2, 6), d_range=(1, 3)):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        d = int(rng.integers(d_range[0], d_range[1] + 1))
        out.append(random_config(n, d, seed=int(rng.integers(2 ** 31))))
    return out


def _unit_state(rng, config):
    v = rng.normal(size=config.n * config.d)
    return VelocityState(v / np.linalg.norm(v), config.n, config.d)


@pytest.mark.criterion("four-disc example: exact tables, suspect entry WARN, collision counts 4 and 5, < 1 s")
def test_four_disc_regression():
    t0 = time.perf_counter()
    checks = verify_paper()
    elapsed = time.perf_counter() - t0
    by_anchor = {c.anchor: c for c in checks}
    assert not [c for c in checks if c.status == FAIL]
    warns = [c for c in checks if c.status == WARN]
    assert [c.anchor for c in warns] == ["gamma2 v_B(3)"]
    assert "recomputed (1/8*sqrt3, 2)" in warns[0].detail
    for step, ball in [(1, "B"), (1, "C"), (2, "B"), (2, "D"), (3, "A"), (3, "B"), (4, "B"), (4, "C")]:
        assert by_anchor[f"gamma1 v_{ball}({step})"].status == PASS
    for step, ball in [(1, "B"), (1, "C"), (2, "B"), (2, "D"), (3, "A")]:
        assert by_anchor[f"gamma2 v_{ball}({step})"].status == PASS

    sc = four_disc_scenario()
    counts = [run_schedule(sc.config, sc.velocities, sc.schedules[g], max_steps=10).collisions
              for g in ("gamma1", "gamma2")]
    assert counts == [4, 5]
    assert elapsed < 1.0


@pytest.mark.criterion("collision map equals folding on 10^4 random triples (n <= 6, d <= 3), deviation <= 1e-12, < 10 s")
def test_fold_equivalence_triples():
    rng = np.random.default_rng(1)
    configs = [c for c in _random_configs(200, seed=2) if c.graph.edges]
    t0 = time.perf_counter()
    worst = 0.0
    done = 0
    while done < 10_000:
        cfg = configs[done % len(configs)]
        edges = cfg.graph.edges
        j, k = edges[int(rng.integers(len(edges)))]
        v = rng.normal(size=cfg.n * cfg.d) * rng.uniform(0.1, 10)
        a = collision_map(cfg, v, j, k).v
        b = fold(halfspace_from_edge(cfg, j, k), np.asarray(v))
        worst = max(worst, float(np.max(np.abs(a - b))))
        done += 1
    elapsed = time.perf_counter() - t0
    assert worst <= 1e-12
    assert elapsed < 10.0


@pytest.mark.criterion("energy and pairwise momentum conserved over 10^5 collisions (float rel 1e-12, exact path exact), < 30 s")
def test_conservation():
    rng = np.random.default_rng(3)
    configs = [c for c in _random_configs(100, seed=4) if c.graph.edges]
    t0 = time.perf_counter()
    steps = 0
    worst = 0.0
    while steps < 100_000:
        cfg = configs[steps % len(configs)]
        v = rng.normal(size=cfg.n * cfg.d)
        e0 = float(v @ v)
        p0 = v.reshape(cfg.n, cfg.d).sum(axis=0)
        for _ in range(50):
            j, k = cfg.graph.edges[int(rng.integers(len(cfg.graph.edges)))]
            w = _collide(cfg, v, j, k)
            d = cfg.d
            pair_before = v[j * d:(j + 1) * d] + v[k * d:(k + 1) * d]
            pair_after = w[j * d:(j + 1) * d] + w[k * d:(k + 1) * d]
            scale = math.sqrt(e0)
            worst = max(worst, float(np.max(np.abs(pair_after - pair_before))) / scale)
            v = w
            steps += 1
        worst = max(worst, abs(float(v @ v) - e0) / e0)
        worst = max(worst, float(np.max(np.abs(v.reshape(cfg.n, cfg.d).sum(axis=0) - p0))) / math.sqrt(e0))
    assert worst <= 1e-12

    # exact path on lattice patches with rational velocities
    for seed in range(20):
        cfg = random_lattice_config(int(rng.integers(2, 7)), seed=seed)
        blocks = [[Root3Scalar(Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5))),
                               Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5))))
                   for _ in range(2)] for _ in range(cfg.n)]
        st = VelocityState.from_blocks(blocks)
        e0, p0 = st.energy(), tuple(st.momentum())
        log = run_schedule(cfg, st, Schedule("random", seed=seed), max_steps=200)
        assert log.final.exact
        assert log.final.energy() == e0
        assert tuple(log.final.momentum()) == p0
    assert time.perf_counter() - t0 < 30.0


@pytest.mark.criterion("folding is non-expansive and idempotent: 10^5 random checks at 1e-12")
def test_fold_nonexpansive_idempotent():
    rng = np.random.default_rng(5)
    checks = 0
    while checks < 100_000:
        dim = int(rng.integers(1, 7))
        normal = rng.normal(size=dim)
        h = Halfspace(normal / np.linalg.norm(normal), float(rng.normal()))
        pts = rng.normal(size=(20, dim)) * 3
        for p, q in zip(pts[:10], pts[10:]):
            fp, fq = fold(h, p), fold(h, q)
            assert np.linalg.norm(fp - fq) <= np.linalg.norm(p - q) + 1e-12
            assert np.max(np.abs(fold(h, fp) - fp)) <= 1e-12
            checks += 2


@pytest.mark.criterion("witness ball: 200 random connected configs, every edge has <w, z> >= 1/(sqrt(2n)(n-1)) - 1e-12")
def test_witness_inequality():
    configs = _random_configs(200, seed=6)
    for cfg in configs:
        assert is_connected(cfg.graph)
        wb = witness_ball(cfg)
        threshold = 1 / (math.sqrt(2 * cfg.n) * (cfg.n - 1))
        assert np.isclose(np.linalg.norm(wb.center), 1.0)
        for j, k in cfg.graph.edges:
            assert wb.center @ z_vector(cfg, j, k) >= threshold - 1e-12


@pytest.mark.criterion("wedge jumps <= phi/alpha + 1 <= pi/r + 1 for alpha = pi/10..pi/200; orbit witness > m up to m = 100, < 5 s")
def test_wedge_bound():
    t0 = time.perf_counter()
    for k in range(10, 201, 10):
        alpha = math.pi / k
        hs = wedge_with_angle(alpha)
        # witness ball centred on the bisector; the start points lie within distance 1 of it
        r = 0.5 * math.sin(alpha / 2)
        phis = np.concatenate([np.linspace(alpha / 2, math.pi, 24), [math.pi - alpha / 2, math.pi - 1e-9]])
        for phi in phis:
            for sign in (1, -1):
                rec = run_foldings(hs, wedge_start(sign * phi, 0.5), itertools.cycle((0, 1)), max_steps=10 * k)
                assert rec.absorbed
                assert rec.jumps <= phi / alpha + 1 + 1e-9
                assert rec.jumps <= bnd.bound_two_halfspaces(r)
    for m in range(1, 101):
        hs, start = orbit_size_witness(m)
        rec = run_foldings(hs, start, itertools.cycle((0, 1)), max_steps=4 * (m + 4))
        assert rec.n_points > m
    assert time.perf_counter() - t0 < 5.0


@pytest.mark.criterion("termination: 500 random connected configs absorb under round robin within 10^6 steps, counts <= N(l, r_eff)")
def test_termination():
    rng = np.random.default_rng(7)
    configs = _random_configs(400, seed=8)
    configs += [random_lattice_config(int(rng.integers(2, 8)), seed=s, exact=False) for s in range(100)]
    assert len(configs) == 500
    for cfg in configs:
        v0 = _unit_state(rng, cfg)
        log = run_schedule(cfg, v0, Schedule("round_robin"), max_steps=1_000_000)
        assert log.absorbed
        _, fold_bound = collision_bounds(cfg)
        assert fold_bound.admits(log.collisions)
        assert log.collisions <= 2 ** min(fold_bound.log2_value, 1000)


def _rel(a, b):
    return abs(float(a) - float(b)) / max(abs(float(b)), 1e-300)


@pytest.mark.criterion("bound calculators match 60-digit evaluation to 1e-9 rel on 100 inputs each; main(4, 2, 6) = 2**194; dominance scans")
def test_bound_calculators():
    rng = np.random.default_rng(9)
    tol = 1e-9
    for _ in range(100):
        n = int(rng.integers(3, 400))
        d = int(rng.integers(1, 8))
        tau = int(rng.integers(2 * d, 3 ** d))
        ell = 0.5 * n * min(tau, n)
        l = int(rng.integers(2, 60))
        r = float(rng.uniform(1e-4, 0.999))
        alpha = float(rng.uniform(1e-3, 1.0))
        m_ratio = float(rng.uniform(1, 100))
        r_ratio = float(rng.uniform(1, 100))
        n_small = int(rng.integers(2, 60))
        d_small = int(rng.integers(1, 4))
        assert _rel(bnd.bound_main(n, d, tau).log2_value, oracles.main_bound(n, ell)) <= tol
        assert _rel(bnd.bound_fold_orbit(l, r).log2_value, oracles.fold_bound(l, r)) <= tol
        assert _rel(bnd.bound_two_halfspaces(r), oracles.two_halfspaces(r)) <= tol
        assert _rel(bnd.bound_alpha(n, d, alpha, tau).log2_value, oracles.alpha_bound(n, d, alpha, tau)) <= tol
        assert _rel(bnd.bound_tree(n, d, tau).log2_value, oracles.tree_bound(n, d, tau)) <= tol
        assert _rel(bnd.bound_lattice(n).log2_value, oracles.lattice_bound(n)) <= tol
        assert _rel(bnd.bound_tree_improved(n).log2_value, oracles.tree_improved(n)) <= tol
        assert _rel(bnd.bound_main_tree_improved(n).log2_value, oracles.main_tree_improved(n)) <= tol
        assert _rel(bnd.bound_moving(n_small, 2, "moving_n2", m_ratio, r_ratio).log2_value,
                    oracles.moving_n2(n_small, m_ratio, r_ratio)) <= tol
        assert _rel(bnd.bound_moving(n_small, 2, "moving_n4", m_ratio).log2_value,
                    oracles.moving_n4(n_small, m_ratio)) <= tol
        assert _rel(bnd.bound_moving(n_small, d_small, "moving_equal").log2_value,
                    oracles.moving_equal(n_small, d_small)) <= tol
        # recursion chain from the two half-space bound
        b = bnd.bound_fold_orbit(2, r)
        for step in range(3, l + 1):
            b = bnd.recursion_step(step, r, b)
        assert _rel(b.log2_value, oracles.fold_bound(l, r)) <= tol

    assert bnd.bound_main(4, 2, 6).log2_value == 194

    # improved tree bound wins for all large n
    wins = [bnd.bound_tree_improved(n) < bnd.bound_main_tree_improved(n) for n in range(3, 201)]
    n0 = 3 + wins.index(True)
    assert all(wins[n0 - 3:])
    # planar main bound beats the lattice bound from some n on
    wins = [bnd.bound_main(n, 2, 6) < bnd.bound_lattice(n) for n in range(3, 501)]
    n0 = 3 + wins.index(True)
    assert all(wins[n0 - 3:])
    # leading factor n^(45n/2) of the planar bound is below n^(42n) of the equal-ball bound
    for n in range(3, 501):
        assert 22.5 * n * math.log2(n) < 42 * n * math.log2(n)
        assert bnd.bound_main(n, 2, 6) < bnd.bound_moving(n, 2, "moving_equal")
    # and eventually below the n^2-exponent moving bound
    wins = [bnd.bound_main(n, 2, 6) < bnd.bound_moving(n, 2, "moving_n2") for n in range(3, 501)]
    n0 = 3 + wins.index(True)
    assert all(wins[n0 - 3:])


def _small_edge_configs():
    out = [chain_config(n, d) for n in (2, 3, 4, 5) for d in (1, 2, 3)]
    out += [random_lattice_config(n, seed=s, exact=False) for n in range(2, 6) for s in range(6)]
    out += _random_configs(80, seed=10, n_range=(2, 5))
    return [c for c in out if len(c.graph.edges) <= 4]


@pytest.mark.criterion("alpha(F) matches an independent Gram-Schmidt brute force on configs with <= 4 edges; 3-ball chain gives sqrt(3)/2")
def test_alpha_oracle():
    configs = _small_edge_configs()
    assert len(configs) >= 50
    for cfg in configs:
        centers = cfg.as_float().centers.tolist()
        expected = oracles.brute_alpha(centers)
        got = bnd.alpha_F(cfg)
        if math.isinf(expected):
            assert math.isinf(got)
        else:
            assert abs(got - expected) <= 1e-9
    assert abs(bnd.alpha_F(chain_config(3)) - math.sqrt(3) / 2) <= 1e-12
    assert abs(bnd.alpha_F(chain_config(3, exact=True)) - math.sqrt(3) / 2) <= 1e-12


@pytest.mark.criterion("exhaustive search on the 3-ball chain (length <= 10) equals full enumeration; results replay-certified")
def test_search_soundness():
    cfg = chain_config(3)
    starts = [(1.0, 0.0, 0.0), (2.0, 1.0, 0.0), (0.0, 0.0, -1.0), (3.0, -1.0, 2.0), (5.0, 4.0, -3.0)]
    rng = np.random.default_rng(11)
    starts += [tuple(rng.normal(size=3)) for _ in range(5)]
    for v in starts:
        for length in range(1, 11):
            res = search_max_collisions(cfg, np.array(v), "exhaustive", length=length)
            assert res.certified
            assert res.best_count == oracles.chain_max_collisions(v, length)
            replay = run_schedule(cfg, np.array(v), Schedule.explicit(res.best_schedule), max_steps=length)
            assert replay.collisions == res.best_count
