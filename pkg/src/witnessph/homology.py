"""Persistent homology over the two-element field.

Boundary columns are Python ints used as bit sets (bit i = row i within the
face dimension), so column addition is a single XOR.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IntegrityError, InvalidArgumentError
from .filtration import WitnessFiltration


@dataclass(frozen=True)
class PersistencePoint:
    k: int
    birth: float
    death: float  # math.inf for essential classes

    @property
    def essential(self) -> bool:
        return self.death == np.inf

    @property
    def persistence(self) -> float:
        return self.death - self.birth


@dataclass(frozen=True)
class PersistenceDiagram:
    """Persistence pairs as parallel arrays; essential points have death = inf."""

    k: np.ndarray
    birth: np.ndarray
    death: np.ndarray
    eps_max: float

    def __len__(self) -> int:
        return self.k.shape[0]

    def __iter__(self):
        for k, b, d in zip(self.k.tolist(), self.birth.tolist(), self.death.tolist()):
            yield PersistencePoint(k, b, d)

    @property
    def essential(self) -> np.ndarray:
        return np.isinf(self.death)

    @property
    def zero_persistence(self) -> np.ndarray:
        return self.birth == self.death

    def select(self, mask) -> "PersistenceDiagram":
        mask = np.asarray(mask, dtype=bool)
        return PersistenceDiagram(self.k[mask], self.birth[mask], self.death[mask], self.eps_max)

    def dimension(self, k: int) -> "PersistenceDiagram":
        return self.select(self.k == k)

    def without_zero(self) -> "PersistenceDiagram":
        return self.select(~self.zero_persistence)

    def persistences(self, k: int | None = None) -> np.ndarray:
        """Lifetimes, longest first; essential classes count up to eps_max."""
        d = self if k is None else self.dimension(k)
        life = np.minimum(d.death, self.eps_max) - d.birth
        return np.sort(life)[::-1]

    def betti(self, eps: float, k: int) -> int:
        """Number of dimension-k classes alive at ``eps``."""
        m = (self.k == k) & (self.birth <= eps) & (eps < self.death)
        return int(m.sum())


def _index_by_dim(f: WitnessFiltration):
    """Per-dimension local indices, checking face closure and order."""
    local: dict[tuple[int, ...], int] = {}
    counters = [0] * (f.max_dim + 1)
    by_dim: list[list[int]] = [[] for _ in range(f.max_dim + 1)]
    for pos, s in enumerate(f.simplices):
        d = len(s) - 1
        if d > f.max_dim:
            raise IntegrityError(f"simplex {s} exceeds max_dim={f.max_dim}")
        if d > 0:
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                if face not in local:
                    raise IntegrityError(f"face {face} of {s} missing or out of order")
        if s in local:
            raise IntegrityError(f"duplicate simplex {s}")
        local[s] = counters[d]
        counters[d] += 1
        by_dim[d].append(pos)
    return local, by_dim


def _boundary_column(s: tuple[int, ...], local) -> int:
    col = 0
    for i in range(len(s)):
        col ^= 1 << local[s[:i] + s[i + 1:]]
    return col


def persistence(f: WitnessFiltration, max_k: int = 1) -> PersistenceDiagram:
    """Pair creators with destroyers by column reduction with clearing.

    Dimensions are processed from ``max_k + 1`` downward; a simplex that is the
    pivot of a higher-dimensional column is a creator and its own column is
    skipped.
    """
    if max_k < 0:
        raise InvalidArgumentError(f"max_k must be nonnegative, got {max_k}")
    if max_k >= f.max_dim:
        raise InvalidArgumentError(f"max_k={max_k} needs a filtration with max_dim > {max_k}")
    local, by_dim = _index_by_dim(f)
    births = f.births
    simplices = f.simplices

    ks: list[int] = []
    bs: list[float] = []
    ds: list[float] = []
    cleared: set[int] = set()  # local indices (in dimension d) that are paired creators

    for d in range(max_k + 1, 0, -1):
        rows = by_dim[d - 1]
        pivots: dict[int, int] = {}
        next_cleared: set[int] = set()
        for j, pos in enumerate(by_dim[d]):
            if j in cleared:
                continue
            col = _boundary_column(simplices[pos], local)
            while col:
                low = col.bit_length() - 1
                other = pivots.get(low)
                if other is None:
                    break
                col ^= other
            if col:
                low = col.bit_length() - 1
                pivots[low] = col
                next_cleared.add(low)
                ks.append(d - 1)
                bs.append(float(births[rows[low]]))
                ds.append(float(births[pos]))
            elif d <= max_k:
                ks.append(d)
                bs.append(float(births[pos]))
                ds.append(np.inf)
        cleared = next_cleared

    for j, pos in enumerate(by_dim[0]):
        if j not in cleared:
            ks.append(0)
            bs.append(float(births[pos]))
            ds.append(np.inf)

    k = np.array(ks, dtype=np.int64)
    b = np.array(bs, dtype=float)
    dd = np.array(ds, dtype=float)
    order = np.lexsort((dd, b, k))
    return PersistenceDiagram(k[order], b[order], dd[order], f.eps_max)


def _gf2_rank(columns) -> int:
    basis: dict[int, int] = {}
    for v in columns:
        while v:
            h = v.bit_length() - 1
            b = basis.get(h)
            if b is None:
                basis[h] = v
                break
            v ^= b
    return len(basis)


def _boundary_rank(cells_hi, index_lo) -> int:
    cols = []
    for s in cells_hi:
        c = 0
        for i in range(len(s)):
            c ^= 1 << index_lo[s[:i] + s[i + 1:]]
        cols.append(c)
    return _gf2_rank(cols)


def betti_at(f: WitnessFiltration, eps: float, k: int) -> int:
    """Betti number of the complex {s : birth(s) <= eps} by rank-nullity."""
    if k < 0 or k >= f.max_dim:
        raise InvalidArgumentError(f"k must satisfy 0 <= k < max_dim={f.max_dim}, got {k}")
    cx = f.complex_at(eps)
    cells = {d: sorted(s for s in cx if len(s) == d + 1) for d in (k - 1, k, k + 1) if d >= 0}
    n_k = len(cells[k])
    rank_k = 0
    if k > 0:
        idx = {s: i for i, s in enumerate(cells[k - 1])}
        rank_k = _boundary_rank(cells[k], idx)
    idx = {s: i for i, s in enumerate(cells[k])}
    rank_k1 = _boundary_rank(cells[k + 1], idx)
    return n_k - rank_k - rank_k1
