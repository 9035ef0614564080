"""Density-peaks clustering: density, separation, centers, assignment, halo.

Points are ranked by ``(rho descending, index ascending)``; that strict
order drives every tie-break below, so results are deterministic even for
duplicated densities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .dataset import DistanceMatrix

KERNELS = ("gaussian", "cutoff")


@dataclass(frozen=True)
class TopK:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("top_k needs k >= 1")

    def __str__(self):
        return f"top:{self.k}"


@dataclass(frozen=True)
class GammaGap:
    max_rank: int = 50

    def __post_init__(self):
        if self.max_rank < 1:
            raise ValueError("gamma_gap needs max_rank >= 1")

    def __str__(self):
        return "gap"


CenterStrategy = Union[TopK, GammaGap]


def parse_centers(text: str) -> CenterStrategy:
    """Parse ``"gap"`` or ``"top:<k>"``."""
    if text == "gap":
        return GammaGap()
    if text.startswith("top:"):
        try:
            k = int(text[4:])
        except ValueError:
            raise ValueError(f"bad center count in {text!r}") from None
        return TopK(k)
    raise ValueError(f"unknown center strategy {text!r}; use 'gap' or 'top:<k>'")


@dataclass(frozen=True)
class DpcParams:
    dc: float
    density_kernel: str = "gaussian"
    center_strategy: CenterStrategy = GammaGap()

    def __post_init__(self):
        if not (math.isfinite(self.dc) and self.dc > 0):
            raise ValueError(f"dc must be a positive finite number, got {self.dc!r}")
        if self.density_kernel not in KERNELS:
            raise ValueError(f"unknown density kernel {self.density_kernel!r}")


@dataclass(frozen=True)
class DpcState:
    rho: np.ndarray
    delta: np.ndarray
    nneigh: list[Optional[int]]
    gamma: np.ndarray
    order: np.ndarray  # point indices, highest-ranked first


@dataclass(frozen=True)
class Partition:
    labels: np.ndarray
    centers: tuple[int, ...]
    is_halo: np.ndarray
    noise_count: int

    @property
    def n_clusters(self) -> int:
        return len(self.centers)


def local_density(dm: DistanceMatrix, params: DpcParams) -> np.ndarray:
    """Self-excluded local density under the chosen kernel."""
    off_diag = ~np.eye(dm.n, dtype=bool)
    if params.density_kernel == "gaussian":
        with np.errstate(over="ignore"):
            w = np.exp(-np.square(dm.dist / params.dc))
    else:
        w = (dm.dist < params.dc).astype(float)
    # summing sorted rows makes coincident points' densities bit-identical,
    # so the index tie-break (not rounding noise) decides their order
    return np.sort(np.where(off_diag, w, 0.0), axis=1).sum(axis=1)


def density_order(rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=float)
    # lexsort keys are minor-first: index ascending breaks ties of -rho
    return np.lexsort((np.arange(rho.size), -rho))


def delta_and_neighbor(dm: DistanceMatrix, rho):
    """Separation from the nearest higher-ranked point.

    Returns ``(delta, nneigh, gamma, order)``. The top-ranked point has no
    neighbour and ``delta = d_max``.
    """
    rho = np.asarray(rho, dtype=float)
    n = rho.size
    order = density_order(rho)
    delta = np.empty(n)
    nneigh: list[Optional[int]] = [None] * n
    delta[order[0]] = dm.d_max
    for r in range(1, n):
        i = order[r]
        higher = order[:r]
        d = dm.dist[i, higher]
        best = d.min()
        # lowest index among equally near higher-ranked points
        j = int(higher[d == best].min())
        delta[i] = best
        nneigh[i] = j
    return delta, nneigh, rho * delta, order


def gamma_order(gamma) -> np.ndarray:
    gamma = np.asarray(gamma, dtype=float)
    return np.lexsort((np.arange(gamma.size), -gamma))


def select_centers(state: DpcState, strategy: CenterStrategy) -> tuple[int, ...]:
    """Pick cluster centers from the decision values.

    ``TopK`` takes the ``k`` largest gammas. ``GammaGap`` cuts the sorted
    gammas at the largest consecutive ratio within the first ``max_rank``
    ranks (earliest cut on ties); a zero following a positive gamma counts
    as an infinite ratio.
    """
    gamma = np.asarray(state.gamma, dtype=float)
    n = gamma.size
    ranked = gamma_order(gamma)
    if isinstance(strategy, TopK):
        if strategy.k > n:
            raise ValueError(f"top_k asks for {strategy.k} centers but only {n} points exist")
        return tuple(sorted(int(i) for i in ranked[: strategy.k]))

    g = gamma[ranked]
    depth = min(n - 1, strategy.max_rank)
    best_r, best_ratio = 1, 1.0
    for r in range(1, depth + 1):
        num, den = g[r - 1], g[r]
        if num <= 0:
            break
        ratio = math.inf if den <= 0 else num / den
        if ratio > best_ratio:
            best_r, best_ratio = r, ratio
    return tuple(sorted(int(i) for i in ranked[:best_r]))


def assign_clusters(state: DpcState, centers, dm: Optional[DistanceMatrix] = None) -> np.ndarray:
    """Propagate center labels down the density ranking.

    ``dm`` is only consulted when the top-ranked point is not a center; it
    then joins the nearest center (lowest index on distance ties).
    """
    centers = sorted(int(c) for c in centers)
    n = state.rho.size
    if not centers:
        raise ValueError("at least one center is required")
    if centers[0] < 0 or centers[-1] >= n:
        raise ValueError("center index out of range")
    labels = np.full(n, -1, dtype=int)
    for lab, c in enumerate(centers):
        labels[c] = lab
    for i in state.order:
        if labels[i] >= 0:
            continue
        j = state.nneigh[i]
        if j is None:
            if dm is None:
                raise ValueError("top-ranked point is not a center; distances are needed to place it")
            d = dm.dist[i, centers]
            j = centers[int(np.flatnonzero(d == d.min())[0])]
        labels[i] = labels[j]
    return labels


def border_density(dm: DistanceMatrix, dc: float, rho, labels) -> np.ndarray:
    """Per-cluster border density; zero for clusters with no pair across a border."""
    rho = np.asarray(rho, dtype=float)
    labels = np.asarray(labels)
    k = int(labels.max()) + 1
    cross = (dm.dist < dc) & (labels[:, None] != labels[None, :])
    avg = 0.5 * (rho[:, None] + rho[None, :])
    row_best = np.where(cross, avg, -np.inf).max(axis=1)
    rho_b = np.full(k, -np.inf)
    np.maximum.at(rho_b, labels, row_best)
    rho_b[np.isneginf(rho_b)] = 0.0
    return rho_b


def detect_halo(dm: DistanceMatrix, params: DpcParams, rho, labels):
    """Flag points less dense than their cluster's border as halo.

    Returns ``(is_halo, noise_count)``.
    """
    rho = np.asarray(rho, dtype=float)
    labels = np.asarray(labels)
    rho_b = border_density(dm, params.dc, rho, labels)
    is_halo = rho < rho_b[labels]
    return is_halo, int(is_halo.sum())


def run_dpc(dm: DistanceMatrix, params: DpcParams):
    """Full pipeline; returns ``(DpcState, Partition)``."""
    rho = local_density(dm, params)
    delta, nneigh, gamma, order = delta_and_neighbor(dm, rho)
    state = DpcState(rho, delta, nneigh, gamma, order)
    centers = select_centers(state, params.center_strategy)
    labels = assign_clusters(state, centers, dm)
    is_halo, noise = detect_halo(dm, params, rho, labels)
    return state, Partition(labels, centers, is_halo, noise)
