"""Persistent rank functions on a grid, and their L2 geometry."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .homology import PersistenceDiagram


@dataclass(frozen=True)
class PRFGrid:
    """``values[i, j]`` = rank function at (a_i, b_j) = (i, j) * eps_max / G; zero where a > b."""

    values: np.ndarray
    eps_max: float

    @property
    def resolution(self) -> int:
        return self.values.shape[0]

    @property
    def axis(self) -> np.ndarray:
        return np.arange(self.resolution) * (self.eps_max / self.resolution)

    def value(self, a: float, b: float) -> float:
        """Value at the grid cell containing (a, b)."""
        step = self.eps_max / self.resolution
        i = min(int(np.floor(a / step + 1e-9)), self.resolution - 1)
        j = min(int(np.floor(b / step + 1e-9)), self.resolution - 1)
        return float(self.values[i, j]) if i <= j else 0.0


def _domain(G: int) -> np.ndarray:
    return np.triu(np.ones((G, G), dtype=bool))


def _cell_weights(G: int, eps_max: float) -> np.ndarray:
    # diagonal cells straddle a = b and count half, so the domain has area eps_max**2 / 2
    w = np.triu(np.ones((G, G)), 1) + 0.5 * np.eye(G)
    return w * (eps_max / G) ** 2


def prf(d: PersistenceDiagram, k: int = 1, G: int = 64, eps_max: float | None = None) -> PRFGrid:
    """Count dimension-k points with birth <= a and death > b, for a <= b.

    ``eps_max`` defaults to the diagram's own cap; pass a shared value to
    make grids from different diagrams comparable.
    """
    if G < 2:
        raise InvalidArgumentError(f"grid resolution must be >= 2, got {G}")
    if eps_max is None:
        eps_max = d.eps_max
    if not eps_max > 0:
        raise InvalidArgumentError(f"eps_max must be positive, got {eps_max}")
    sel = d.k == k
    births = d.birth[sel]
    deaths = d.death[sel]  # inf for essential classes
    axis = np.arange(G) * (eps_max / G)
    born = births[:, None] <= axis[None, :]          # (points, a)
    alive = deaths[:, None] > axis[None, :]          # (points, b)
    counts = born.astype(float).T @ alive.astype(float)
    counts[~_domain(G)] = 0.0
    return PRFGrid(counts, float(eps_max))


def _check_match(f: PRFGrid, g: PRFGrid) -> None:
    if f.resolution != g.resolution or f.eps_max != g.eps_max:
        raise InvalidArgumentError(
            f"grids differ: G={f.resolution}/{g.resolution}, eps_max={f.eps_max}/{g.eps_max}")


def l2_distance(f: PRFGrid, g: PRFGrid) -> float:
    _check_match(f, g)
    diff = f.values - g.values
    return float(np.sqrt(np.sum(diff * diff * _cell_weights(f.resolution, f.eps_max))))


def mean_prf(fs) -> PRFGrid:
    fs = list(fs)
    if not fs:
        raise InvalidArgumentError("mean of an empty list of grids")
    for g in fs[1:]:
        _check_match(fs[0], g)
    return PRFGrid(np.mean([g.values for g in fs], axis=0), fs[0].eps_max)


def sigma(fs, mean: PRFGrid) -> float:
    """Population standard deviation of the L2 distances to ``mean``."""
    fs = list(fs)
    if len(fs) < 2:
        raise InvalidArgumentError(f"need at least 2 grids for a spread, got {len(fs)}")
    return float(np.std([l2_distance(g, mean) for g in fs]))
