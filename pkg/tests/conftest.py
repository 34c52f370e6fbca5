"""Shared generators and independent oracles for the test suite."""

import numpy as np


def gaussian_solve(g, rhs):
    """Dense solve by Gaussian elimination with partial pivoting.

    Deliberately hand-rolled and tiny so the normal-equations oracle below
    shares no code with the QR path under test.
    """
    g = [list(map(float, row)) for row in np.asarray(g)]
    v = [float(x) for x in np.asarray(rhs)]
    k = len(v)
    for col in range(k):
        piv = max(range(col, k), key=lambda r: abs(g[r][col]))
        g[col], g[piv] = g[piv], g[col]
        v[col], v[piv] = v[piv], v[col]
        for r in range(col + 1, k):
            f = g[r][col] / g[col][col]
            for c in range(col, k):
                g[r][c] -= f * g[col][c]
            v[r] -= f * v[col]
    x = [0.0] * k
    for r in range(k - 1, -1, -1):
        x[r] = (v[r] - sum(g[r][c] * x[c] for c in range(r + 1, k))) / g[r][r]
    return np.array(x)


def oracle_min_norm(a, b):
    """Normal-equations oracle a.T @ inv(a @ a.T) @ b, independent of QR."""
    a = np.asarray(a, dtype=float)
    return a.T @ gaussian_solve(a @ a.T, b)


def random_full_row_rank(rng, m, n, cond_max=1e4):
    """Uniform [-1, 1] matrix, resampled until full row rank under cond_max."""
    while True:
        a = rng.uniform(-1.0, 1.0, (m, n))
        s = np.linalg.svd(a, compute_uv=False)
        if s[-1] > 0.0 and s[0] / s[-1] < cond_max:
            return a
