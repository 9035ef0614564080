"""Naive reference implementations used as test oracles.

Plain Python loops over coordinates (plus one broadcast numpy scan for
the dense sigma grids); nothing here imports the library, so the two
routes stay independent.
"""

import math

import numpy as np


def dist(a, b):
    return math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))


def dist_table(points):
    return [[dist(p, q) for q in points] for p in points]


def field_entropy(table, sigma):
    phi = [sum(math.exp(-((d / sigma) ** 2)) for d in row) for row in table]
    z = sum(phi)
    return -sum((f / z) * math.log(f / z) for f in phi)


def brute_sigma_scan(table, lo, hi, steps):
    """Evaluate the entropy on a log grid; returns (argmin sigma, min H)."""
    best = (None, math.inf)
    a, b = math.log(lo), math.log(hi)
    for k in range(steps):
        s = math.exp(a + (b - a) * k / (steps - 1))
        h = field_entropy(table, s)
        if h < best[1]:
            best = (s, h)
    return best


def dense_sigma_scan(points, lo, hi, steps, chunk=500):
    """Entropy on ``steps`` log-spaced sigmas, vectorized over the grid.

    Returns ``(sigmas, entropies)``.
    """
    x = np.asarray(points, dtype=float)
    d2 = ((x[:, None, :] - x[None, :, :]) ** 2).sum(-1)
    sigmas = np.exp(np.linspace(math.log(lo), math.log(hi), steps))
    out = []
    for k in range(0, steps, chunk):
        s = sigmas[k:k + chunk, None, None]
        phi = np.exp(-d2[None] / s**2).sum(-1)
        p = phi / phi.sum(-1, keepdims=True)
        out.append(-(p * np.log(p)).sum(-1))
    return sigmas, np.concatenate(out)


def gap_cut(gamma, max_rank=50):
    """Number of centers chosen by the largest consecutive gamma ratio."""
    g = sorted(gamma, reverse=True)
    best_r, best = 1, 1.0
    for r in range(1, min(len(g) - 1, max_rank) + 1):
        if g[r - 1] <= 0:
            break
        ratio = math.inf if g[r] <= 0 else g[r - 1] / g[r]
        if ratio > best:
            best_r, best = r, ratio
    return best_r


def naive_dpc(table, dc, kernel, centers_k):
    """Whole pipeline, O(n^3) where it is simplest.

    ``centers_k`` is a center count, or ``"gap"`` for the gamma-ratio rule.

    Returns a dict with rho, delta, nneigh, labels, halo.
    """
    n = len(table)
    rho = []
    for i in range(n):
        terms = []
        for j in range(n):
            if j == i:
                continue
            if kernel == "gaussian":
                terms.append(math.exp(-((table[i][j] / dc) ** 2)))
            else:
                terms.append(1.0 if table[i][j] < dc else 0.0)
        rho.append(math.fsum(terms))

    def ranks_higher(j, i):
        return rho[j] > rho[i] or (rho[j] == rho[i] and j < i)

    d_max = max((table[i][j] for i in range(n) for j in range(n)), default=0.0)
    delta, nneigh = [], []
    for i in range(n):
        higher = [j for j in range(n) if ranks_higher(j, i)]
        if not higher:
            delta.append(d_max)
            nneigh.append(None)
            continue
        # O(n^2) per point: keep j only if no other higher point is nearer
        for j in higher:
            if all(table[i][j] < table[i][m] or (table[i][j] == table[i][m] and j <= m) for m in higher):
                delta.append(table[i][j])
                nneigh.append(j)
                break

    gamma = [r * d for r, d in zip(rho, delta)]
    by_gamma = sorted(range(n), key=lambda i: (-gamma[i], i))
    if centers_k == "gap":
        centers_k = gap_cut(gamma)
    centers = sorted(by_gamma[:centers_k])

    labels = [None] * n
    for lab, c in enumerate(centers):
        labels[c] = lab

    def find(i):
        if labels[i] is not None:
            return labels[i]
        if nneigh[i] is None:
            near = min(centers, key=lambda c: (table[i][c], c))
            labels[i] = labels[near]
        else:
            labels[i] = find(nneigh[i])
        return labels[i]

    for i in range(n):
        find(i)

    halo = naive_halo(table, dc, rho, labels)
    return dict(rho=rho, delta=delta, nneigh=nneigh, gamma=gamma, centers=centers, labels=labels, halo=halo)


def naive_halo(table, dc, rho, labels):
    n = len(table)
    border = {}
    for i in range(n):
        for j in range(n):
            if labels[i] != labels[j] and table[i][j] < dc:
                v = (rho[i] + rho[j]) / 2
                border[labels[i]] = max(border.get(labels[i], 0.0), v)
    return [rho[i] < border.get(labels[i], 0.0) for i in range(n)]
