"""Cost comparison of Čech and witness complexes on one point cloud."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .embed import DelayParams, PointCloud, delay_embed, distances, select_landmarks, suggest_tau
from .filtration import build_filtration, cech_complex, epsilon_max_rule
from .synth import tone

# per simplex: int32 vertex ids plus a float64 birth
_VERTEX_BYTES = 4
_BIRTH_BYTES = 8


@dataclass(frozen=True)
class BenchRow:
    complex: str
    landmarks: int
    eps: float
    vertices: int
    edges: int
    triangles: int
    seconds: float

    @property
    def est_bytes(self) -> int:
        return (self.vertices * (_VERTEX_BYTES + _BIRTH_BYTES)
                + self.edges * (2 * _VERTEX_BYTES + _BIRTH_BYTES)
                + self.triangles * (3 * _VERTEX_BYTES + _BIRTH_BYTES))


def piano_proxy_cloud(n_points: int = 2000, freq: float = 261.62, rate: float = 44100.0,
                      partials: int = 6, noise: float = 0.002, seed: int = 0) -> PointCloud:
    """2-D reconstruction of a synthetic multi-harmonic note, ``n_points`` long."""
    tau = suggest_tau(rate, freq)
    ts = tone("piano", freq, (n_points + tau) / rate, rate, partials=partials, noise=noise, seed=seed)
    ts = type(ts)(ts.samples[: n_points + tau], ts.rate).normalized()
    return delay_embed(ts, DelayParams(tau, 2))


def bench_eps(cloud: PointCloud, n_landmarks: int, factor: float = 0.6) -> float:
    """``factor`` times the eps-max rule for an ``n_landmarks`` witness complex."""
    D = distances(cloud, select_landmarks(cloud, n_landmarks))
    return factor * epsilon_max_rule(D)


def run_bench(cloud: PointCloud, landmark_counts=(200, 50), eps: float | None = None,
              include_cech: bool = True) -> list[BenchRow]:
    """Build the Čech complex on every point and witness complexes at each ℓ, all at ``eps``.

    Witness timings include landmark selection and the distance matrix.
    """
    n = len(cloud)
    if n == 0:
        return []
    counts = [c for c in landmark_counts if 3 <= c <= n]
    if eps is None:
        eps = bench_eps(cloud, max(counts)) if counts else 0.0
    rows = []
    if include_cech:
        t0 = time.perf_counter()
        cx = cech_complex(cloud, eps, 2)
        dt = time.perf_counter() - t0
        rows.append(BenchRow("cech", n, eps, n, len(cx.edges), len(cx.triangles), dt))
    for c in counts:
        t0 = time.perf_counter()
        D = distances(cloud, select_landmarks(cloud, c))
        f = build_filtration(D, 2, eps)
        dt = time.perf_counter() - t0
        rows.append(BenchRow("witness", c, eps, c, f.count(1), f.count(2), dt))
    return rows
