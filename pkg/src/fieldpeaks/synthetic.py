"""Seeded synthetic point clouds with known ground truth."""

from __future__ import annotations

import numpy as np

from .dataset import Dataset


def gaussian_blobs(centers, n_per, spread, seed):
    """Isotropic Gaussian blobs; returns ``(Dataset, labels)``."""
    rng = np.random.default_rng(seed)
    centers = np.atleast_2d(np.asarray(centers, dtype=float))
    pts = [c + spread * rng.standard_normal((n_per, centers.shape[1])) for c in centers]
    labels = np.repeat(np.arange(len(centers)), n_per)
    return Dataset(np.vstack(pts)), labels


def two_blobs(seed, n_per=20, spread=1.0, separation_ratio=10.0):
    """Two 2-D blobs whose centers are ``separation_ratio * spread`` apart."""
    centers = [[0.0, 0.0], [separation_ratio * spread, 0.0]]
    return gaussian_blobs(centers, n_per, spread, seed)


def blobs_with_background(seed, n_blobs=3, n_per=50, n_background=100, spread=0.04):
    """Blobs inside the unit square over a uniform background.

    Returns ``(Dataset, labels)`` where background points are labelled ``-1``.
    Blob centers are drawn in ``[0.2, 0.8]^2`` at least ``8 * spread`` apart.
    """
    rng = np.random.default_rng(seed)
    centers = []
    attempts = 0
    while len(centers) < n_blobs:
        attempts += 1
        if attempts > 10_000:
            raise ValueError(f"cannot place {n_blobs} blobs {8 * spread:.3g} apart in [0.2, 0.8]^2")
        c = rng.uniform(0.2, 0.8, size=2)
        if all(np.linalg.norm(c - o) >= 8 * spread for o in centers):
            centers.append(c)
    blobs = [c + spread * rng.standard_normal((n_per, 2)) for c in centers]
    background = rng.uniform(0.0, 1.0, size=(n_background, 2))
    labels = np.concatenate([np.repeat(np.arange(n_blobs), n_per), np.full(n_background, -1)])
    return Dataset(np.vstack(blobs + [background])), labels


def uniform_box(seed, n, d=2):
    rng = np.random.default_rng(seed)
    return Dataset(rng.uniform(0.0, 1.0, size=(n, d)))
