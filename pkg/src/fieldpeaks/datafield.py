"""Data-field potentials, potential entropy, and impact-factor selection.

Each point radiates a Gaussian potential of width ``sigma`` (the impact
factor). The entropy of the normalized potentials is large when the field
is flat and small when it follows the data's structure; the ``sigma``
minimizing it fixes the cutoff distance ``dc = 3 / sqrt(2) * sigma``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .dataset import DistanceMatrix

#: influence radius of a Gaussian potential in units of its impact factor
DC_FACTOR = 3.0 / math.sqrt(2.0)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class DegenerateFieldError(ValueError):
    """The entropy curve has no meaningful minimizer.

    ``scan`` holds the coarse samples when they could be computed, so
    callers can still export the flat curve.
    """

    def __init__(self, message, scan=None):
        super().__init__(message)
        self.scan = scan


@dataclass(frozen=True)
class PotentialVector:
    phi: np.ndarray
    z: float

    @classmethod
    def from_phi(cls, phi) -> "PotentialVector":
        phi = np.asarray(phi, dtype=float)
        if phi.ndim != 1 or phi.size < 1 or np.any(phi <= 0):
            raise ValueError("potentials must be a non-empty vector of positive values")
        return cls(phi, float(phi.sum()))

    @property
    def n(self) -> int:
        return self.phi.size


@dataclass(frozen=True)
class SearchConfig:
    """Policy for the two-phase impact-factor search.

    The coarse grid spans ``[max(lo_ratio * d_min_pos, floor), hi_ratio * d_max]``
    unless ``sigma_min`` / ``sigma_max`` override either end.
    """

    n_coarse: int = 200
    lo_ratio: float = 1e-3
    hi_ratio: float = 10.0
    floor: float = 1e-12
    sigma_min: Optional[float] = None
    sigma_max: Optional[float] = None
    rel_tol: float = 1e-6
    flat_tol: float = 1e-9
    tie_tol: float = 1e-12

    def __post_init__(self):
        if self.n_coarse < 2:
            raise ValueError("n_coarse must be at least 2")
        for name in ("lo_ratio", "hi_ratio", "floor", "rel_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        for name in ("sigma_min", "sigma_max"):
            v = getattr(self, name)
            if v is not None and not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be a positive finite number")


@dataclass(frozen=True)
class FieldScan:
    """Sampled entropy curve, optionally with the located minimizer.

    ``refine_width`` is the width of the final golden-section bracket,
    i.e. the resolution to which ``sigma_star`` is known.
    """

    sigmas: np.ndarray
    entropies: np.ndarray
    sigma_star: Optional[float] = None
    h_min: Optional[float] = None
    dc: Optional[float] = None
    refine_width: Optional[float] = None

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.sigmas.tolist(), self.entropies.tolist()))


def _check_sigma(sigma):
    if not (math.isfinite(sigma) and sigma > 0):
        raise ValueError(f"sigma must be a positive finite number, got {sigma!r}")


def potentials(dm: DistanceMatrix, sigma: float) -> PotentialVector:
    """Potential of every point, self-contribution included.

    ``phi[i] = sum_j exp(-(dist[i, j] / sigma) ** 2)`` over all ``j``, so
    ``1 <= phi[i] <= n``.
    """
    _check_sigma(sigma)
    with np.errstate(over="ignore"):
        # far pairs overflow to inf and contribute exp(-inf) = 0
        phi = np.exp(-np.square(dm.dist / sigma)).sum(axis=1)
    return PotentialVector(phi, float(phi.sum()))


def entropy(pv: PotentialVector) -> float:
    """Shannon entropy (nats) of the normalized potentials."""
    p = pv.phi / pv.z
    h = float(-np.sum(p * np.log(p)))
    # rounding can push a uniform field a few ulps past ln(n)
    return min(max(h, 0.0), math.log(pv.n))


def field_entropy(dm: DistanceMatrix, sigma: float) -> float:
    return entropy(potentials(dm, sigma))


def entropy_curve(dm: DistanceMatrix, grid: Sequence[float]) -> FieldScan:
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("sigma grid must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(grid)) or np.any(grid <= 0):
        raise ValueError("sigma grid values must be positive and finite")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("sigma grid must be strictly increasing")
    h = np.array([field_entropy(dm, s) for s in grid])
    return FieldScan(grid.copy(), h)


def sigma_grid(dm: DistanceMatrix, cfg: SearchConfig = SearchConfig()) -> np.ndarray:
    """Default log-spaced coarse grid for ``dm`` under ``cfg``."""
    if cfg.sigma_min is not None:
        lo = cfg.sigma_min
    else:
        if dm.d_min_pos is None:
            raise DegenerateFieldError("all points coincide; no scale to search over")
        lo = max(cfg.lo_ratio * dm.d_min_pos, cfg.floor)
    hi = cfg.sigma_max if cfg.sigma_max is not None else cfg.hi_ratio * dm.d_max
    if not hi > lo:
        raise ValueError(f"empty sigma range [{lo!r}, {hi!r}]")
    return np.geomspace(lo, hi, cfg.n_coarse)


def golden_section(f: Callable[[float], float], a: float, b: float, rel_tol: float = 1e-6):
    """Minimize a unimodal ``f`` on ``[a, b]``.

    Stops once the bracket is narrower than ``rel_tol`` times its midpoint.
    Returns ``(x, f(x), width)`` for the best point evaluated and the final
    bracket width.
    """
    a, b = min(a, b), max(a, b)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) >= rel_tol * 0.5 * (a + b):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    if fc <= fd:
        return c, fc, b - a
    return d, fd, b - a


def optimize_sigma(dm: DistanceMatrix, cfg: SearchConfig = SearchConfig()) -> FieldScan:
    """Locate the entropy-minimizing impact factor and derive ``dc``.

    A log-spaced coarse scan picks the best sample (smallest sigma on
    ties), then golden-section search refines inside the bracket formed by
    its grid neighbours.

    Raises
    ------
    DegenerateFieldError
        If fewer than two distinct points exist, or the coarse curve is flat
        to within ``cfg.flat_tol`` nats (e.g. symmetric configurations).
    """
    if dm.n < 2 or dm.d_min_pos is None:
        raise DegenerateFieldError("need at least two distinct points to optimize sigma")
    coarse = entropy_curve(dm, sigma_grid(dm, cfg))
    h = coarse.entropies
    if h.max() - h.min() < cfg.flat_tol:
        raise DegenerateFieldError(
            f"entropy curve is flat (spread {h.max() - h.min():.3g} nats); sigma is not identifiable",
            scan=coarse,
        )
    k = int(np.flatnonzero(h <= h.min() + cfg.tie_tol)[0])
    s = coarse.sigmas
    lo = s[max(k - 1, 0)]
    hi = s[min(k + 1, s.size - 1)]
    x, fx, width = golden_section(lambda t: field_entropy(dm, t), lo, hi, cfg.rel_tol)
    if fx > h[k]:
        x, fx = float(s[k]), float(h[k])
    return FieldScan(
        coarse.sigmas,
        coarse.entropies,
        sigma_star=float(x),
        h_min=float(fx),
        dc=derive_dc(x),
        refine_width=float(width),
    )


def derive_dc(sigma: float) -> float:
    _check_sigma(sigma)
    return DC_FACTOR * sigma
