"""Independent brute-force oracles the tests check the library against.

Everything here recomputes results from definitions with plain loops and a
separate code path (dict lookups, cmath exponentials, trial division), so a
bug in the library kernels cannot hide in the expected values.
"""

import cmath
import itertools
import math

import numpy as np


def ball_points(basis, r, center=None):
    """All integer coordinate tuples with |B m - center| < r, by direct scan."""
    B = np.asarray(basis, dtype=float)
    n = B.shape[0]
    c = np.zeros(n) if center is None else np.asarray(center, dtype=float)
    mc = np.linalg.inv(B) @ c
    half = int(math.ceil(np.linalg.norm(np.linalg.inv(B), 2) * r)) + 2
    pts = []
    ranges = [range(int(math.floor(m)) - half, int(math.ceil(m)) + half + 1) for m in mc]
    for m in itertools.product(*ranges):
        x = B @ np.array(m, dtype=float) - c
        if float(x @ x) < r * r:
            pts.append(m)
    return pts


def ball_volume(n, r):
    return math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0) * r**n


def nu_pair(weights, basis, window_r, z, *, vol=None):
    """Pair-in-window coefficient by dict lookups over the window points."""
    B = np.asarray(basis, dtype=float)
    n = B.shape[0]
    window = set(ball_points(B, window_r))
    total = 0j
    for t in window:
        tp = tuple(a - b for a, b in zip(t, z))
        if tp in window:
            total += complex(weights.get(t, 0)) * complex(weights.get(tp, 0)).conjugate()
    return total / (ball_volume(n, window_r) if vol is None else vol)


def nu_single(weights, basis, window_r, z, *, vol=None):
    """Single-window coefficient; second factor reads the full weight table."""
    B = np.asarray(basis, dtype=float)
    n = B.shape[0]
    window = ball_points(B, window_r)
    total = 0j
    for t in window:
        tp = tuple(a - b for a, b in zip(t, z))
        total += complex(weights.get(t, 0)) * complex(weights.get(tp, 0)).conjugate()
    return total / (ball_volume(n, window_r) if vol is None else vol)


def exp_sum_direct(weights, basis, k):
    """Exponential sum via per-point cmath exponentials of Cartesian dots."""
    B = np.asarray(basis, dtype=float)
    k = np.asarray(k, dtype=float)
    total = 0j
    for m, w in sorted(weights.items()):
        x = B @ np.array(m, dtype=float)
        total += complex(w) * cmath.exp(-2j * math.pi * float(k @ x))
    return total


def is_k_free(m, k=2):
    """Trial-division check that no prime power p^k divides m (0 counts as free)."""
    m = abs(int(m))
    if m == 0:
        return True
    d = 2
    while d * d <= m:
        if m % d == 0:
            count = 0
            while m % d == 0:
                m //= d
                count += 1
            if count >= k:
                return False
        d += 1
    return True


def is_visible(coords):
    g = 0
    for c in coords:
        g = math.gcd(g, abs(int(c)))
    return g == 1
