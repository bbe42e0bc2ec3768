"""Witness-complex filtrations with exact birth scales, and a Čech reference.

A witness w witnesses a simplex s at scale eps when every vertex of s is
within eps of being the landmark closest to w::

    max_{l in s} D[l, w] <= min_m D[m, w] + eps

so the birth of s is ``min_w (max_{l in s} D[l, w] - min_m D[m, w])``. The
closed inequality is used so that births are attained.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .embed import DistanceMatrix, PointCloud
from .errors import DegenerateInputError, InvalidArgumentError, UnsupportedError

# rows generated per chunk during per-witness enumeration
_CHUNK_ROWS = 2_000_000


@dataclass(frozen=True)
class WitnessFiltration:
    """Face-closed simplices in filtration order (birth, dim, lexicographic vertices)."""

    simplices: list[tuple[int, ...]]
    births: np.ndarray
    eps_max: float
    max_dim: int
    n_vertices: int
    dims: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.dims is None:
            object.__setattr__(self, "dims", np.array([len(s) - 1 for s in self.simplices], dtype=np.int64))

    def __len__(self) -> int:
        return len(self.simplices)

    def complex_at(self, eps: float) -> set[tuple[int, ...]]:
        """Simplices with birth <= eps."""
        n = int(np.searchsorted(self.births, eps, side="right"))
        return set(self.simplices[:n])

    def count(self, dim: int, eps: float | None = None) -> int:
        mask = self.dims == dim
        if eps is not None:
            mask &= self.births <= eps
        return int(mask.sum())


@dataclass(frozen=True)
class CechComplex:
    n_vertices: int
    eps: float
    edges: np.ndarray       # (m, 2), rows sorted
    triangles: np.ndarray   # (t, 3), rows sorted

    def simplices(self) -> set[tuple[int, ...]]:
        out = {(v,) for v in range(self.n_vertices)}
        out.update(tuple(int(v) for v in e) for e in self.edges)
        out.update(tuple(int(v) for v in t) for t in self.triangles)
        return out


def relative_distances(D: DistanceMatrix) -> np.ndarray:
    """D[l, w] minus the distance from w to its nearest landmark."""
    return D.values - D.values.min(axis=0, keepdims=True)


def simplex_birth(s, D: DistanceMatrix) -> float:
    """Smallest eps at which some witness witnesses ``s``."""
    rel = relative_distances(D)
    return float(rel[list(s)].max(axis=0).min())


def epsilon_max_rule(D: DistanceMatrix, stop_dim: int = 20) -> float:
    """First scale at which any witness witnesses a ``stop_dim``-simplex.

    Falls back to the landmark-set diameter when there are too few landmarks
    for such a simplex to exist.
    """
    n = D.n_landmarks
    if n <= stop_dim:
        return float(D.values[:, D.landmark_columns].max())
    ranked = np.sort(D.values, axis=0)
    return float((ranked[stop_dim] - ranked[0]).min())


@lru_cache(maxsize=64)
def _position_combos(k: int, size: int) -> np.ndarray:
    combos = np.array(list(itertools.combinations(range(k), size)), dtype=np.int64)
    return combos.reshape(-1, size)


def _encode(verts: np.ndarray, base: int) -> np.ndarray:
    key = np.zeros(verts.shape[0], dtype=np.int64)
    for c in range(verts.shape[1]):
        key = key * base + verts[:, c]
    return key


def _decode(keys: np.ndarray, base: int, size: int) -> np.ndarray:
    out = np.empty((keys.shape[0], size), dtype=np.int64)
    k = keys.copy()
    for c in range(size - 1, -1, -1):
        out[:, c] = k % base
        k //= base
    return out


def _group_min(keys: np.ndarray, births: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if keys.size == 0:
        return keys, births
    order = np.lexsort((births, keys))
    k, b = keys[order], births[order]
    first = np.ones(k.shape[0], dtype=bool)
    first[1:] = k[1:] != k[:-1]
    return k[first], b[first]


def _close_landmarks(rel: np.ndarray, eps_max: float):
    """Per witness, landmarks with relative distance <= eps_max, nearest first.

    Returns padded (witness, rank) arrays of landmark ids and relative
    distances, and the number of valid entries per witness.
    """
    relT = rel.T
    w_idx, l_idx = np.nonzero(relT <= eps_max)
    r = relT[w_idx, l_idx]
    o = np.lexsort((l_idx, r, w_idx))
    w_idx, l_idx, r = w_idx[o], l_idx[o], r[o]
    counts = np.bincount(w_idx, minlength=relT.shape[0])
    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
    pos = np.arange(w_idx.shape[0]) - starts[w_idx]
    kmax = int(counts.max())
    order = np.zeros((relT.shape[0], kmax), dtype=np.int64)
    ranked = np.full((relT.shape[0], kmax), np.inf)
    order[w_idx, pos] = l_idx
    ranked[w_idx, pos] = r
    return order, ranked, counts


def _births_by_witness(order: np.ndarray, ranked: np.ndarray, counts: np.ndarray,
                       size: int, base: int) -> tuple[np.ndarray, np.ndarray]:
    """Enumerate, per witness, the simplices spanned by its close landmarks.

    Row w of ``order`` lists landmarks by increasing relative distance
    (``ranked``); only the first ``counts[w]`` are within eps_max. A subset of
    those has per-witness birth equal to the relative distance of its
    farthest member, i.e. of its largest position.
    """
    kmax = int(counts.max()) if counts.size else 0
    if kmax < size:
        return np.empty(0, dtype=np.int64), np.empty(0)
    combos = _position_combos(kmax, size)
    per = max(1, _CHUNK_ROWS // max(1, combos.shape[0]))
    keys_acc, births_acc = [], []
    for start in range(0, order.shape[0], per):
        o = order[start:start + per]
        r = ranked[start:start + per]
        c = counts[start:start + per]
        valid = combos[None, :, -1] < c[:, None]
        wi, ci = np.nonzero(valid)
        if wi.size == 0:
            continue
        verts = np.sort(o[wi[:, None], combos[ci]], axis=1)
        b = r[wi, combos[ci, -1]]
        k, b = _group_min(_encode(verts, base), b)
        keys_acc.append(k)
        births_acc.append(b)
    if not keys_acc:
        return np.empty(0, dtype=np.int64), np.empty(0)
    return _group_min(np.concatenate(keys_acc), np.concatenate(births_acc))


def build_filtration(D: DistanceMatrix, max_dim: int = 2, eps_max: float | None = None,
                     stop_dim: int = 20) -> WitnessFiltration:
    """All simplices of dimension <= ``max_dim`` born at or below ``eps_max``.

    ``eps_max`` defaults to :func:`epsilon_max_rule`.
    """
    n = D.n_landmarks
    if max_dim < 1:
        raise InvalidArgumentError(f"max_dim must be >= 1, got {max_dim}")
    if n < max_dim + 1:
        raise InvalidArgumentError(f"need at least {max_dim + 1} landmarks for max_dim={max_dim}, have {n}")
    if n ** (max_dim + 1) >= 2 ** 62:
        raise InvalidArgumentError(f"{n} landmarks too many to index {max_dim}-simplices")
    if eps_max is None:
        eps_max = epsilon_max_rule(D, stop_dim)
    if eps_max == 0:
        raise DegenerateInputError("eps_max is 0: no scale range to filter over")
    if not eps_max > 0 or not math.isfinite(eps_max):
        raise InvalidArgumentError(f"eps_max must be positive and finite, got {eps_max}")

    order, ranked, counts = _close_landmarks(relative_distances(D), eps_max)

    simplices: list[tuple[int, ...]] = [(v,) for v in range(n)]
    births = [np.zeros(n)]
    dims = [np.zeros(n, dtype=np.int64)]
    for size in range(2, max_dim + 2):
        keys, b = _births_by_witness(order, ranked, counts, size, n)
        verts = _decode(keys, n, size)
        simplices.extend(map(tuple, verts.tolist()))
        births.append(b)
        dims.append(np.full(b.shape[0], size - 1, dtype=np.int64))
    births_arr = np.concatenate(births)
    dims_arr = np.concatenate(dims)
    # simplices are lexicographic within each dimension block already
    perm = np.lexsort((np.arange(births_arr.shape[0]), dims_arr, births_arr))
    return WitnessFiltration([simplices[i] for i in perm.tolist()], births_arr[perm],
                             float(eps_max), int(max_dim), n, dims_arr[perm])


def witness_complex(D: DistanceMatrix, eps: float, max_dim: int = 2) -> set[tuple[int, ...]]:
    """The witness complex at a single scale, by direct search over witnesses.

    Every landmark is a vertex; a witness adds each landmark subset whose
    members all lie within ``eps`` of its nearest-landmark distance.
    """
    vals = D.values
    n_l, n_w = vals.shape
    cx = {(i,) for i in range(n_l)}
    for t in range(n_w):
        col = [float(vals[i, t]) for i in range(n_l)]
        d = min(col) + eps
        for size in range(2, max_dim + 2):
            for combo in itertools.combinations(range(n_l), size):
                if all(col[i] <= d for i in combo):
                    cx.add(combo)
    return cx


def eps_steps(eps_max: float, steps: int = 20) -> np.ndarray:
    """``steps`` evenly spaced scales in (0, eps_max], ending at eps_max."""
    if steps < 1 or not eps_max > 0:
        raise InvalidArgumentError(f"need steps >= 1 and eps_max > 0, got {steps}, {eps_max}")
    return eps_max * np.arange(1, steps + 1) / steps


def grid_complexes(D: DistanceMatrix, eps_values=None, max_dim: int = 2) -> list[set[tuple[int, ...]]]:
    """Witness complexes at each requested scale (grid mode).

    Without explicit scales, uses 20 steps up to the default cap.
    """
    if eps_values is None:
        eps_values = eps_steps(epsilon_max_rule(D))
    return [witness_complex(D, float(e), max_dim) for e in eps_values]


def enclosing_radius(sq_a, sq_b, sq_c) -> np.ndarray:
    """Radius of the smallest ball enclosing a triangle, from squared side lengths."""
    sq = np.sort(np.stack([np.asarray(sq_a, float), np.asarray(sq_b, float),
                           np.asarray(sq_c, float)], axis=-1), axis=-1)
    a2, b2, c2 = sq[..., 0], sq[..., 1], sq[..., 2]
    # right/obtuse (incl. collinear): the longest side is a diameter
    obtuse = c2 >= a2 + b2
    area16 = 2 * (a2 * b2 + b2 * c2 + c2 * a2) - (a2 * a2 + b2 * b2 + c2 * c2)
    with np.errstate(divide="ignore", invalid="ignore"):
        circ = np.sqrt(a2 * b2 * c2 / np.where(area16 > 0, area16, np.nan))
    return np.where(obtuse | ~(area16 > 0), np.sqrt(c2) / 2, circ)


def cech_complex(cloud: PointCloud, eps: float, max_dim: int = 2) -> CechComplex:
    """Čech complex on all points at scale ``eps`` (balls of radius eps/2)."""
    if max_dim > 2:
        raise UnsupportedError(f"Čech reference supports max_dim <= 2, got {max_dim}")
    if max_dim < 0:
        raise InvalidArgumentError(f"max_dim must be nonnegative, got {max_dim}")
    pts = np.asarray(cloud.points, dtype=float)
    n = pts.shape[0]
    empty_e = np.empty((0, 2), dtype=np.int64)
    empty_t = np.empty((0, 3), dtype=np.int64)
    if n == 0 or max_dim == 0:
        return CechComplex(n, eps, empty_e, empty_t)

    sq = np.zeros((n, n))
    for k in range(pts.shape[1]):
        sq += (pts[:, k, None] - pts[None, :, k]) ** 2
    eps2 = eps * eps
    adj = sq <= eps2
    np.fill_diagonal(adj, False)
    ei, ej = np.nonzero(np.triu(adj))
    edges = np.column_stack([ei, ej]).astype(np.int64)
    if max_dim == 1:
        return CechComplex(n, eps, edges, empty_t)

    tris = []
    for i in range(n):
        nb = np.nonzero(adj[i, i + 1:])[0] + i + 1
        if nb.size < 2:
            continue
        sub = np.triu(adj[np.ix_(nb, nb)])
        a, b = np.nonzero(sub)
        if a.size == 0:
            continue
        j, k = nb[a], nb[b]
        rad = enclosing_radius(sq[i, j], sq[i, k], sq[j, k])
        keep = rad <= eps / 2
        if keep.any():
            tris.append(np.column_stack([np.full(int(keep.sum()), i), j[keep], k[keep]]))
    triangles = np.concatenate(tris).astype(np.int64) if tris else empty_t
    return CechComplex(n, eps, edges, triangles)
