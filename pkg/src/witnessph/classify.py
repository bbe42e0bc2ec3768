"""Membership classifiers: PRF distance and FFT feature distance against k * sigma."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from .embed import DelayParams, delay_embed, distances, select_landmarks
from .errors import (
    ClassificationError,
    FormatError,
    InvalidArgumentError,
    TrainingError,
    UnsupportedError,
    WitnessPHError,
)
from .filtration import build_filtration, epsilon_max_rule
from .homology import persistence
from .ingest import TimeSeries
from .prf import PRFGrid, l2_distance, mean_prf, prf, sigma

FFT_BINS = 2000
FFT_LOW, FFT_HIGH = 10.0, 10_000.0
MODEL_VERSION = 1


@dataclass(frozen=True)
class PipelineConfig:
    tau: int
    dim: int = 2
    landmarks: int = 100
    grid: int = 64
    eps_max: float | None = None
    window_sec: float = 0.05
    stop_dim: int = 20
    homology_dim: int = 1
    landmark_method: str = "even"


@dataclass(frozen=True)
class PRFModel:
    mean: PRFGrid
    sigma: float
    config: PipelineConfig

    def distance(self, sample: TimeSeries) -> float:
        try:
            g = window_prf(sample, self.config)
        except WitnessPHError as exc:
            raise ClassificationError(f"sample failed the PRF pipeline: {exc}") from exc
        return l2_distance(g, self.mean)


@dataclass(frozen=True)
class FFTModel:
    mean: np.ndarray
    sigma: float
    taper: str = "none"

    @property
    def freqs(self) -> np.ndarray:
        return fft_grid()

    def distance(self, sample: TimeSeries) -> float:
        try:
            v = fft_features(sample.normalized(), self.taper)
        except WitnessPHError as exc:
            raise ClassificationError(f"sample failed the FFT pipeline: {exc}") from exc
        return float(np.linalg.norm(v - self.mean))


@dataclass(frozen=True)
class ROCCurve:
    k: np.ndarray
    tpr: np.ndarray
    fpr: np.ndarray

    def __len__(self) -> int:
        return self.k.shape[0]


def default_k_grid(n: int = 100, k_max: float = 5.0) -> np.ndarray:
    """``n`` points evenly spaced in (0, k_max]."""
    return np.arange(1, n + 1) * (k_max / n)


# PRF route

def _cloud_distances(window: TimeSeries, cfg: PipelineConfig):
    cloud = delay_embed(window.normalized(), DelayParams(cfg.tau, cfg.dim))
    lm = select_landmarks(cloud, cfg.landmarks, cfg.landmark_method)
    return distances(cloud, lm)


def window_prf(window: TimeSeries, cfg: PipelineConfig) -> PRFGrid:
    """Normalize, reconstruct, filter, pair and grid one window."""
    if cfg.eps_max is None:
        raise InvalidArgumentError("window_prf needs a fixed eps_max in the config")
    D = _cloud_distances(window, cfg)
    f = build_filtration(D, max_dim=cfg.homology_dim + 1, eps_max=cfg.eps_max)
    dg = persistence(f, max_k=cfg.homology_dim)
    return prf(dg, k=cfg.homology_dim, G=cfg.grid, eps_max=cfg.eps_max)


def _check_windows(windows) -> list[TimeSeries]:
    windows = list(windows)
    if len(windows) < 2:
        raise TrainingError(f"need at least 2 training windows, got {len(windows)}")
    n0, r0 = len(windows[0]), windows[0].rate
    for i, w in enumerate(windows):
        if len(w) != n0 or w.rate != r0:
            raise TrainingError(
                f"window {i} has {len(w)} samples at {w.rate} Hz; window 0 has {n0} at {r0} Hz")
    return windows


def train_prf(windows, config: PipelineConfig) -> PRFModel:
    """Mean PRF and scalar spread over the training windows.

    Without an explicit ``eps_max`` the cap is the largest per-window value of
    the eps-max rule, so every grid shares one domain.
    """
    windows = _check_windows(windows)
    cfg = config
    if cfg.eps_max is None:
        caps = []
        for i, w in enumerate(windows):
            try:
                caps.append(epsilon_max_rule(_cloud_distances(w, cfg), cfg.stop_dim))
            except WitnessPHError as exc:
                raise TrainingError(f"window {i}: {exc}") from exc
        cfg = replace(cfg, eps_max=float(max(caps)))
    if not cfg.eps_max > 0:
        raise TrainingError(f"eps_max must be positive, got {cfg.eps_max}")
    grids = []
    for i, w in enumerate(windows):
        try:
            grids.append(window_prf(w, cfg))
        except WitnessPHError as exc:
            raise TrainingError(f"window {i}: {exc}") from exc
    m = mean_prf(grids)
    return PRFModel(m, sigma(grids, m), cfg)


def membership(model, sample: TimeSeries, k: float) -> tuple[bool, float]:
    """Accept iff distance to the model mean is strictly below k * sigma."""
    d = model.distance(sample)
    return bool(d < k * model.sigma), d


# FFT route

def fft_grid() -> np.ndarray:
    return np.logspace(np.log10(FFT_LOW), np.log10(FFT_HIGH), FFT_BINS)


def periodogram(ts: TimeSeries, taper: str = "none") -> tuple[np.ndarray, np.ndarray]:
    """One-sided |DFT|^2 / N with bin frequencies."""
    x = ts.samples
    if taper == "hann":
        x = x * np.hanning(x.shape[0])
    elif taper != "none":
        raise InvalidArgumentError(f"unknown taper {taper!r}")
    spec = np.fft.rfft(x)
    return np.fft.rfftfreq(x.shape[0], 1.0 / ts.rate), (spec.real ** 2 + spec.imag ** 2) / x.shape[0]


def fft_features(ts: TimeSeries, taper: str = "none") -> np.ndarray:
    """Periodogram sampled at 2000 log-spaced frequencies in [10 Hz, 10 kHz]."""
    if not ts.rate > 2 * FFT_HIGH:
        raise UnsupportedError(f"sample rate {ts.rate} Hz cannot resolve {FFT_HIGH:g} Hz")
    if len(ts) < 2:
        raise InvalidArgumentError("need at least 2 samples for a spectrum")
    freqs, power = periodogram(ts, taper)
    return np.interp(fft_grid(), freqs, power)


def train_fft(windows, taper: str = "none") -> FFTModel:
    windows = _check_windows(windows)
    try:
        feats = np.array([fft_features(w.normalized(), taper) for w in windows])
    except WitnessPHError as exc:
        raise TrainingError(str(exc)) from exc
    mean = feats.mean(axis=0)
    dist = np.linalg.norm(feats - mean, axis=1)
    return FFTModel(mean, float(np.std(dist)), taper)


def membership_fft(model: FFTModel, sample: TimeSeries, k: float) -> tuple[bool, float]:
    return membership(model, sample, k)


# evaluation

def roc(model, positives, negatives, k_grid=None) -> ROCCurve:
    """True/false positive rates of ``membership`` along ``k_grid``."""
    positives, negatives = list(positives), list(negatives)
    if not positives or not negatives:
        raise InvalidArgumentError("ROC needs nonempty positive and negative sets")
    ks = default_k_grid() if k_grid is None else np.asarray(k_grid, dtype=float)
    dp = np.array([model.distance(s) for s in positives])
    dn = np.array([model.distance(s) for s in negatives])
    return roc_from_distances(dp, dn, model.sigma, ks)


def roc_from_distances(dp, dn, spread: float, ks) -> ROCCurve:
    ks = np.asarray(ks, dtype=float)
    thr = ks * spread
    tpr = (np.asarray(dp)[None, :] < thr[:, None]).mean(axis=1)
    fpr = (np.asarray(dn)[None, :] < thr[:, None]).mean(axis=1)
    return ROCCurve(ks, tpr, fpr)


# model files

def _fmt(x: float) -> str:
    return repr(float(x))


def save_model(model, path) -> None:
    lines = [f"witnessph-model,{MODEL_VERSION}"]
    if isinstance(model, PRFModel):
        lines.append("kind,prf")
        lines.append("[config]")
        for f in fields(PipelineConfig):
            v = getattr(model.config, f.name)
            lines.append(f"{f.name},{_fmt(v) if isinstance(v, float) else v}")
        lines += ["[sigma]", _fmt(model.sigma), "[mean]"]
        lines.append(f"eps_max,{_fmt(model.mean.eps_max)}")
        lines += [",".join(_fmt(v) for v in row) for row in model.mean.values]
    elif isinstance(model, FFTModel):
        lines += ["kind,fft", "[config]", f"taper,{model.taper}", "[sigma]", _fmt(model.sigma), "[mean]"]
        lines += [f"{_fmt(fr)},{_fmt(v)}" for fr, v in zip(fft_grid(), model.mean)]
    else:
        raise InvalidArgumentError(f"cannot save {type(model).__name__}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _sections(path) -> tuple[str, dict[str, list[str]]]:
    text = Path(path).read_text(encoding="utf-8").splitlines()
    if not text or not text[0].startswith("witnessph-model,"):
        raise FormatError(f"{path}: not a model file")
    version = text[0].split(",", 1)[1]
    if version != str(MODEL_VERSION):
        raise FormatError(f"{path}: unsupported model version {version}")
    if len(text) < 2 or not text[1].startswith("kind,"):
        raise FormatError(f"{path}: missing kind line")
    sections: dict[str, list[str]] = {}
    current = None
    for line in text[2:]:
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1]
            sections[current] = []
        elif current is not None and line:
            sections[current].append(line)
    return text[1].split(",", 1)[1], sections


def load_model(path):
    kind, sec = _sections(path)
    try:
        cfg_items = dict(line.split(",", 1) for line in sec["config"])
        spread = float(sec["sigma"][0])
        if kind == "prf":
            kwargs = {}
            for f in fields(PipelineConfig):
                raw = cfg_items[f.name]
                if f.name == "eps_max":
                    kwargs[f.name] = None if raw == "None" else float(raw)
                elif f.name == "window_sec":
                    kwargs[f.name] = float(raw)
                elif f.name == "landmark_method":
                    kwargs[f.name] = raw
                else:
                    kwargs[f.name] = int(raw)
            rows = sec["mean"]
            eps = float(rows[0].split(",", 1)[1])
            grid = np.array([[float(v) for v in r.split(",")] for r in rows[1:]])
            return PRFModel(PRFGrid(grid, eps), spread, PipelineConfig(**kwargs))
        if kind == "fft":
            vec = np.array([float(r.split(",")[1]) for r in sec["mean"]])
            if vec.shape[0] != FFT_BINS:
                raise FormatError(f"{path}: FFT mean has {vec.shape[0]} entries, expected {FFT_BINS}")
            return FFTModel(vec, spread, cfg_items.get("taper", "none"))
    except (KeyError, IndexError, ValueError) as exc:
        raise FormatError(f"{path}: malformed model file ({exc})") from exc
    raise FormatError(f"{path}: unknown model kind {kind!r}")
