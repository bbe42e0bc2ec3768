"""Desk-scale membership experiment on synthetic clarinet-like and viol-like tones.

Training uses 25 disjoint 0.05 s windows from one long tone; each test
window is its own short tone with a fresh noise seed and a small random
detuning.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classify import (
    FFTModel,
    PipelineConfig,
    PRFModel,
    ROCCurve,
    default_k_grid,
    roc_from_distances,
    train_fft,
    train_prf,
)
from .embed import suggest_tau
from .ingest import TimeSeries, WindowSpec, windows
from .synth import tone

PARTIALS = {"clarinet": 4, "viol": 8}


@dataclass(frozen=True)
class ExperimentConfig:
    freq: float = 440.0
    rate: float = 44100.0
    window_sec: float = 0.05
    n_train: int = 25
    n_test: int = 25
    noise: float = 0.01
    jitter: float = 0.005
    landmarks: int = 100
    grid: int = 64
    seed: int = 0


@dataclass(frozen=True)
class ExperimentResult:
    prf_model: PRFModel
    fft_model: FFTModel
    prf_distances: tuple[np.ndarray, np.ndarray]   # (positives, negatives)
    fft_distances: tuple[np.ndarray, np.ndarray]
    prf_roc: ROCCurve
    fft_roc: ROCCurve


def training_windows(kind: str, cfg: ExperimentConfig) -> list[TimeSeries]:
    duration = cfg.window_sec * cfg.n_train + 0.01
    ts = tone(kind, cfg.freq, duration, cfg.rate, PARTIALS[kind], cfg.noise, seed=cfg.seed)
    return windows(ts, WindowSpec(cfg.window_sec, cfg.n_train))


def held_out_windows(kind: str, cfg: ExperimentConfig, offset: int) -> list[TimeSeries]:
    rng = np.random.default_rng([cfg.seed, offset])
    out = []
    for i in range(cfg.n_test):
        f = cfg.freq * (1 + rng.uniform(-cfg.jitter, cfg.jitter))
        ts = tone(kind, f, cfg.window_sec, cfg.rate, PARTIALS[kind], cfg.noise,
                  seed=cfg.seed * 100_003 + offset * 1_000 + i + 1)
        out.append(windows(ts, WindowSpec(cfg.window_sec, 1))[0])
    return out


def run_membership(target: str = "clarinet", other: str = "viol",
                   cfg: ExperimentConfig = ExperimentConfig(), k_grid=None) -> ExperimentResult:
    """Train both classifiers on ``target`` and test on fresh ``target``/``other`` windows."""
    ks = default_k_grid() if k_grid is None else np.asarray(k_grid, dtype=float)
    train = training_windows(target, cfg)
    pos = held_out_windows(target, cfg, offset=1)
    neg = held_out_windows(other, cfg, offset=2)
    pcfg = PipelineConfig(tau=suggest_tau(cfg.rate, cfg.freq), landmarks=cfg.landmarks,
                          grid=cfg.grid, window_sec=cfg.window_sec)
    pm = train_prf(train, pcfg)
    fm = train_fft(train)
    pd = (np.array([pm.distance(w) for w in pos]), np.array([pm.distance(w) for w in neg]))
    fd = (np.array([fm.distance(w) for w in pos]), np.array([fm.distance(w) for w in neg]))
    return ExperimentResult(pm, fm, pd, fd,
                            roc_from_distances(*pd, pm.sigma, ks),
                            roc_from_distances(*fd, fm.sigma, ks))
