"""Independent reference implementations used to cross-check the package.

Everything here is written the slow, obvious way on purpose: plain loops,
textbook formulas, no shared code paths with src/. If a test disagrees
with one of these, the fast implementation is wrong until proven
otherwise.
"""

from __future__ import annotations

import numpy as np


def bfs_component_count(points: np.ndarray, eps: float) -> int:
    """Connected components of the eps-neighborhood graph, by breadth-first
    frontier expansion from each unvisited vertex."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    w = pts.shape[0]
    diff = pts[:, None, :] - pts[None, :, :]
    adjacency = np.sqrt((diff**2).sum(axis=-1)) <= eps
    seen = np.zeros(w, dtype=bool)
    components = 0
    for start in range(w):
        if seen[start]:
            continue
        components += 1
        frontier = np.zeros(w, dtype=bool)
        frontier[start] = True
        seen[start] = True
        while frontier.any():
            reached = adjacency[frontier].any(axis=0)
            frontier = reached & ~seen
            seen |= frontier
    return components


def brute_energy_divergence(x, y, alpha: float = 1.0) -> float:
    """Scaled energy divergence via literal double sums."""
    xa = np.asarray(x, dtype=np.float64)
    ya = np.asarray(y, dtype=np.float64)
    if xa.ndim == 1:
        xa = xa.reshape(-1, 1)
    if ya.ndim == 1:
        ya = ya.reshape(-1, 1)
    m, n = xa.shape[0], ya.shape[0]

    def d(a, b):
        return float(np.sqrt(((a - b) ** 2).sum())) ** alpha

    between = 0.0
    for i in range(m):
        for j in range(n):
            between += d(xa[i], ya[j])
    between *= 2.0 / (m * n)

    within_x = 0.0
    if m >= 2:
        for i in range(m):
            for j in range(m):
                if i != j:
                    within_x += d(xa[i], xa[j])
        within_x /= m * (m - 1)

    within_y = 0.0
    if n >= 2:
        for i in range(n):
            for j in range(n):
                if i != j:
                    within_y += d(ya[i], ya[j])
        within_y /= n * (n - 1)

    return m * n / (m + n) * (between - within_x - within_y)


def brute_cvm(x, y) -> float:
    """Two-sample Cramer-von-Mises statistic from its pooled-CDF definition."""
    xa = np.asarray(x, dtype=np.float64).ravel()
    ya = np.asarray(y, dtype=np.float64).ravel()
    a, b = xa.size, ya.size
    total = 0.0
    for z in np.concatenate([xa, ya]):
        fx = np.mean(xa <= z)
        fy = np.mean(ya <= z)
        total += (fx - fy) ** 2
    return a * b / (a + b) ** 2 * total


def least_squares_ar(values, order: int):
    """AR coefficients by conditional least squares (design-matrix regression).

    Not the same estimator as the package's moment-based fit, but the two
    agree closely on long stationary samples.
    """
    v = np.asarray(values, dtype=np.float64).ravel()
    T = v.size
    rows = [v[order - 1 - j : T - 1 - j] for j in range(order)]
    X = np.column_stack([np.ones(T - order), *rows])
    beta, *_ = np.linalg.lstsq(X, v[order:], rcond=None)
    return beta[1:], beta[0]


def pca_scores_by_svd(matrix: np.ndarray, n_components: int) -> np.ndarray:
    """PCA scores via SVD of the centered data matrix."""
    X = np.asarray(matrix, dtype=np.float64)
    Xc = X - X.mean(axis=0)
    U, s, _ = np.linalg.svd(Xc, full_matrices=False)
    return U[:, :n_components] * s[:n_components]
