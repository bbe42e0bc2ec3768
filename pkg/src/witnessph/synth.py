"""Deterministic synthetic tones standing in for recorded instruments."""

from __future__ import annotations

import numpy as np

from .errors import InvalidArgumentError
from .ingest import TimeSeries

KINDS = ("sine", "clarinet", "viol", "piano")

# relative amplitudes of harmonics 1..8 for the viol-like tone
_VIOL_AMPS = (1.0, 0.85, 0.95, 0.7, 0.8, 0.6, 0.65, 0.5)
_VIOL_PHASES = (0.0, 1.1, 2.3, 0.4, 3.0, 1.7, 5.2, 2.8)


def partial_table(kind: str, partials: int) -> list[tuple[float, float, float]]:
    """(frequency multiple, amplitude, phase) for each partial of ``kind``."""
    if partials < 1:
        raise InvalidArgumentError(f"partials must be >= 1, got {partials}")
    if kind == "sine":
        return [(1.0, 1.0, 0.0)]
    if kind == "clarinet":
        # odd harmonics only, amplitude falling as 1/n^2
        return [(float(n), 1.0 / n ** 2, 0.0) for n in range(1, 2 * partials, 2)]
    if kind == "viol":
        return [(float(n), _VIOL_AMPS[(n - 1) % 8] * (0.9 ** ((n - 1) // 8)), _VIOL_PHASES[(n - 1) % 8])
                for n in range(1, partials + 1)]
    if kind == "piano":
        # slightly stretched partials, amplitude 1/n
        b = 4e-4
        return [(n * np.sqrt(1 + b * n * n), 1.0 / n, 0.3 * n) for n in range(1, partials + 1)]
    raise InvalidArgumentError(f"unknown tone kind {kind!r}; expected one of {', '.join(KINDS)}")


def tone(kind: str, freq: float = 440.0, duration: float = 1.0, rate: float = 44100.0,
         partials: int = 4, noise: float = 0.0, seed: int = 0, amplitude: float = 0.8) -> TimeSeries:
    """Sum of partials scaled to peak ``amplitude``, plus optional Gaussian noise.

    ``noise`` is the noise standard deviation relative to the peak.
    """
    if not duration > 0:
        raise InvalidArgumentError(f"duration must be positive, got {duration}")
    if not (freq > 0 and rate > 0):
        raise InvalidArgumentError(f"freq and rate must be positive, got {freq}, {rate}")
    table = partial_table(kind, partials)
    n = int(round(duration * rate))
    if n < 1:
        raise InvalidArgumentError(f"duration {duration} s yields no samples at {rate} Hz")
    t = np.arange(n) / rate
    x = np.zeros(n)
    for mult, amp, phase in table:
        if mult * freq < rate / 2:
            x += amp * np.sin(2 * np.pi * mult * freq * t + phase)
    peak = np.max(np.abs(x))
    if peak > 0:
        x *= amplitude / peak
    if noise > 0:
        x += np.random.default_rng(seed).normal(0.0, noise * amplitude, n)
    return TimeSeries(x, rate)
