"""Independent reference implementations used only by the tests.

Nothing here imports the code under test except for configuration objects
(read-only centers); every computation is redone from scratch.
"""
import itertools
import math

import mpmath

mpmath.mp.dps = 60
mpf = mpmath.mpf


def mp_log2(x):
    return mpmath.log(x, 2)


# bound formulas evaluated as products, then logged


def main_bound(n, ell):
    n = mpf(n)
    ell = mpf(ell)
    return mp_log2(mpf(2) ** -27 * mpf(2) ** (16 * ell) * n ** (mpf(-27) / 2) * n ** (15 * ell / 2))


def fold_bound(l, r):
    r = mpf(r)
    return mp_log2(2 * mpmath.pi * mpf(308) ** (l - 2) * r ** (-5 * (l - 2) - 1))


def two_halfspaces(r):
    return mpmath.pi / mpf(r) + 1


def alpha_bound(n, d, alpha, tau):
    base = mpf(2) ** (mpf(21) / 2) * d * mpf(n) ** 5 / mpf(alpha)
    return mp_log2(base ** (mpf(tau) * n / 2 - 1))


def tree_bound(n, d, tau):
    return mp_log2((mpf(2) ** 10 * d * mpf(n) ** 6) ** (mpf(tau) * n / 2 - 1))


def lattice_bound(n):
    return mp_log2((mpf(10) ** 6 * mpf(n) ** (mpf(11) / 2) * mpf(4) ** (4 * n)) ** (3 * n - 1))


def tree_improved(n):
    return mp_log2(mpf(2) ** (11 * n - 22) * mpf(n) ** -14 * mpf(n) ** (7 * n))


def main_tree_improved(n):
    return mp_log2(mpf(2) ** -27 * mpf(2) ** (16 * n) * mpf(n) ** (mpf(-27) / 2) * mpf(n) ** (15 * n))


def moving_n2(n, m, rr):
    return mp_log2((32 * mpmath.sqrt(mpf(m)) * mpf(rr) * mpf(n) ** mpf(1.5)) ** (n * n))


def moving_n4(n, m):
    return mp_log2((400 * mpf(m) * mpf(n) ** 2) ** (2 * n ** 4))


def moving_equal(n, d):
    f = 5 ** d
    return mp_log2(1600 * (1000 * mpf(32) ** f) ** n * mpf(n) ** ((mpf(3) / 2 * f + mpf(9) / 2) * n + 2))


# geometry


def contact_vector(centers, j, k):
    """Unit contact vector built straight from the centers."""
    n, d = len(centers), len(centers[0])
    z = [0.0] * (n * d)
    for i in range(d):
        diff = float(centers[j][i]) - float(centers[k][i])
        z[j * d + i] = diff
        z[k * d + i] = -diff
    norm = math.sqrt(sum(x * x for x in z))
    return [x / norm for x in z]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def distance_to_span(target, vectors, eps=1e-12):
    """Modified Gram-Schmidt projection."""
    basis = []
    for v in vectors:
        u = list(v)
        for q in basis:
            c = _dot(u, q)
            u = [a - c * b for a, b in zip(u, q)]
        norm = math.sqrt(_dot(u, u))
        if norm > eps:
            basis.append([a / norm for a in u])
    r = list(target)
    for q in basis:
        c = _dot(r, q)
        r = [a - c * b for a, b in zip(r, q)]
    return math.sqrt(_dot(r, r))


def touching_pairs(centers, tol=1e-9):
    n = len(centers)
    out = []
    for j in range(n):
        for k in range(j + 1, n):
            dist = math.sqrt(sum((float(a) - float(b)) ** 2 for a, b in zip(centers[j], centers[k])))
            if abs(dist - 2) <= tol:
                out.append((j, k))
    return out


def brute_alpha(centers, cutoff=1e-9):
    edges = touching_pairs(centers)
    zs = {e: contact_vector(centers, *e) for e in edges}
    best = math.inf
    for size in range(1, len(edges) + 1):
        for subgraph in itertools.combinations(edges, size):
            for e in subgraph:
                others = [zs[f] for f in subgraph if f != e]
                dist = distance_to_span(zs[e], others)
                if dist > cutoff:
                    best = min(best, dist)
    return best


# 1-D chain dynamics


def chain_collisions(velocities, sequence):
    """Collisions of a 1-D chain (balls i, i+1 touch) under an edge sequence."""
    v = list(velocities)
    count = 0
    for i in sequence:
        if v[i] > v[i + 1]:
            v[i], v[i + 1] = v[i + 1], v[i]
            count += 1
    return count


def chain_max_collisions(velocities, length):
    n_edges = len(velocities) - 1
    return max(chain_collisions(velocities, seq) for seq in itertools.product(range(n_edges), repeat=length))
