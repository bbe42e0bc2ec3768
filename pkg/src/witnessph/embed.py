"""Delay-coordinate reconstruction, landmark selection, landmark-witness distances."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError, InvalidArgumentError
from .ingest import TimeSeries


@dataclass(frozen=True)
class DelayParams:
    tau: int
    dim: int = 2

    def __post_init__(self):
        if int(self.tau) != self.tau or self.tau < 1:
            raise InvalidArgumentError(f"tau must be a positive integer, got {self.tau}")
        if int(self.dim) != self.dim or self.dim < 2:
            raise InvalidArgumentError(f"dim must be an integer >= 2, got {self.dim}")

    @property
    def span(self) -> int:
        return (self.dim - 1) * self.tau


@dataclass(frozen=True)
class PointCloud:
    """Reconstructed points in time order; ``times[i]`` is the source index of ``points[i]``."""

    points: np.ndarray
    times: np.ndarray

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class LandmarkSet:
    indices: np.ndarray

    def __len__(self) -> int:
        return self.indices.shape[0]


@dataclass(frozen=True)
class DistanceMatrix:
    """``values[i, j]`` is the distance from landmark i to witness j.

    ``landmark_columns[i]`` is the witness column holding landmark i itself.
    """

    values: np.ndarray
    landmark_columns: np.ndarray

    @property
    def n_landmarks(self) -> int:
        return self.values.shape[0]

    @property
    def n_witnesses(self) -> int:
        return self.values.shape[1]


def delay_embed(ts: TimeSeries, p: DelayParams) -> PointCloud:
    """Points (x_t, x_{t-tau}, ..., x_{t-(dim-1)tau}) for t = span .. N-1."""
    x = ts.samples
    n = x.shape[0]
    if n < p.span + 1:
        raise InsufficientDataError(
            f"delay reconstruction with tau={p.tau}, dim={p.dim} needs {p.span + 1} samples, have {n}",
            required=p.span + 1, available=n)
    m = n - p.span
    cols = [x[p.span - i * p.tau: p.span - i * p.tau + m] for i in range(p.dim)]
    return PointCloud(np.column_stack(cols), np.arange(p.span, n))


def suggest_tau(rate: float, freq: float) -> int:
    """Delay of 1/(freq*pi) seconds, rounded to whole samples (at least 1)."""
    if not (rate > 0 and freq > 0):
        raise InvalidArgumentError(f"rate and freq must be positive, got {rate}, {freq}")
    return max(1, int(round(rate / (freq * math.pi))))


def select_landmarks(cloud: PointCloud, n_landmarks: int, method: str = "even") -> LandmarkSet:
    """Pick landmarks evenly spaced in time (default) or by greedy max-min."""
    n = len(cloud)
    if not 1 <= n_landmarks <= n:
        raise InvalidArgumentError(f"need 1 <= landmarks <= {n}, got {n_landmarks}")
    if method == "even":
        idx = (np.arange(n_landmarks) * n) // n_landmarks
    elif method == "maxmin":
        idx = _maxmin(cloud.points, n_landmarks)
    else:
        raise InvalidArgumentError(f"unknown landmark method {method!r}")
    return LandmarkSet(np.asarray(idx, dtype=np.int64))


def _maxmin(points: np.ndarray, k: int) -> np.ndarray:
    chosen = [0]
    d = np.linalg.norm(points - points[0], axis=1)
    for _ in range(k - 1):
        nxt = int(np.argmax(d))
        chosen.append(nxt)
        d = np.minimum(d, np.linalg.norm(points - points[nxt], axis=1))
    return np.sort(np.array(chosen))


def distances(cloud: PointCloud, lm: LandmarkSet) -> DistanceMatrix:
    """Euclidean landmark-to-witness distances, every point acting as a witness."""
    if len(lm) and (lm.indices.min() < 0 or lm.indices.max() >= len(cloud)):
        raise InvalidArgumentError("landmark index out of range")
    L = cloud.points[lm.indices]
    X = cloud.points
    # coordinate-wise accumulation keeps the summation order fixed
    sq = np.zeros((L.shape[0], X.shape[0]))
    for k in range(cloud.dim):
        sq += (L[:, k, None] - X[None, :, k]) ** 2
    return DistanceMatrix(np.sqrt(sq), lm.indices.copy())
