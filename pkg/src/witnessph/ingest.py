"""Reading scalar series from WAV/CSV files and cutting analysis windows."""

from __future__ import annotations

import struct
import wave
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    EmptyInputError,
    FormatError,
    InsufficientDataError,
    InvalidArgumentError,
    ParseError,
    UnsupportedError,
)

_PCM = 0x0001
_IEEE_FLOAT = 0x0003
_EXTENSIBLE = 0xFFFE


@dataclass(frozen=True)
class TimeSeries:
    """Uniformly sampled scalar signal."""

    samples: np.ndarray
    rate: float

    def __post_init__(self):
        if not self.rate > 0:
            raise InvalidArgumentError(f"sample rate must be positive, got {self.rate}")
        arr = np.asarray(self.samples, dtype=float).reshape(-1)
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    def __len__(self) -> int:
        return self.samples.shape[0]

    @property
    def duration(self) -> float:
        return len(self) / self.rate

    def skip(self, seconds: float) -> "TimeSeries":
        """Drop the first ``seconds`` of the series (lead-in trimming)."""
        if seconds < 0:
            raise InvalidArgumentError(f"skip must be nonnegative, got {seconds}")
        n = int(round(seconds * self.rate))
        if n >= len(self):
            raise InsufficientDataError(
                f"cannot skip {n} samples of a {len(self)}-sample series",
                required=n + 1, available=len(self))
        return TimeSeries(self.samples[n:], self.rate)

    def normalized(self) -> "TimeSeries":
        """Peak-normalize to [-1, 1]; an all-zero series is returned unchanged."""
        peak = float(np.max(np.abs(self.samples))) if len(self) else 0.0
        if peak == 0.0:
            return self
        return TimeSeries(self.samples / peak, self.rate)


@dataclass(frozen=True)
class WindowSpec:
    duration: float
    count: int
    disjoint: bool = True

    def __post_init__(self):
        if not self.duration > 0:
            raise InvalidArgumentError(f"window duration must be positive, got {self.duration}")
        if self.count < 1:
            raise InvalidArgumentError(f"window count must be positive, got {self.count}")


def read_wav(path) -> TimeSeries:
    """Read a RIFF/WAVE file as a mono series with amplitudes in [-1, 1].

    Supports PCM 8/16/24/32-bit integer and 32-bit IEEE float (plain or
    WAVE_FORMAT_EXTENSIBLE). Channels are averaged.
    """
    data = Path(path).read_bytes()
    if len(data) < 12 or data[0:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise FormatError(f"{path}: not a RIFF/WAVE file")

    fmt = None
    payload = None
    pos = 12
    while pos + 8 <= len(data):
        cid, size = struct.unpack_from("<4sI", data, pos)
        body = data[pos + 8: pos + 8 + size]
        if cid == b"fmt ":
            if size < 16:
                raise FormatError(f"{path}: fmt chunk too short ({size} bytes)")
            fmt = struct.unpack_from("<HHIIHH", body, 0)
            if fmt[0] == _EXTENSIBLE:
                if size < 40:
                    raise FormatError(f"{path}: truncated extensible fmt chunk")
                sub = struct.unpack_from("<H", body, 24)[0]
                fmt = (sub,) + fmt[1:]
        elif cid == b"data":
            payload = body
        pos += 8 + size + (size & 1)

    if fmt is None or payload is None:
        raise FormatError(f"{path}: missing fmt or data chunk")
    tag, channels, rate, _, block_align, bits = fmt
    if channels < 1 or rate < 1:
        raise FormatError(f"{path}: bad header (channels={channels}, rate={rate})")

    if tag == _PCM and bits == 8:
        raw = (np.frombuffer(payload, dtype=np.uint8).astype(float) - 128.0) / 128.0
    elif tag == _PCM and bits == 16:
        raw = np.frombuffer(payload[: len(payload) // 2 * 2], dtype="<i2") / 32768.0
    elif tag == _PCM and bits == 24:
        b = np.frombuffer(payload[: len(payload) // 3 * 3], dtype=np.uint8).reshape(-1, 3).astype(np.int32)
        ints = b[:, 0] | (b[:, 1] << 8) | (b[:, 2] << 16)
        ints = np.where(ints >= 1 << 23, ints - (1 << 24), ints)
        raw = ints / float(1 << 23)
    elif tag == _PCM and bits == 32:
        raw = np.frombuffer(payload[: len(payload) // 4 * 4], dtype="<i4") / float(1 << 31)
    elif tag == _IEEE_FLOAT and bits == 32:
        raw = np.frombuffer(payload[: len(payload) // 4 * 4], dtype="<f4").astype(float)
    else:
        raise UnsupportedError(f"{path}: unsupported encoding (format tag {tag:#06x}, {bits} bits)")

    frames = raw.shape[0] // channels
    mono = raw[: frames * channels].reshape(frames, channels).mean(axis=1)
    return TimeSeries(mono, float(rate))


def write_wav(path, ts: TimeSeries) -> None:
    """Write ``ts`` as mono PCM16; samples are clipped to [-1, 1)."""
    if ts.rate != int(ts.rate):
        raise InvalidArgumentError(f"WAV needs an integer sample rate, got {ts.rate}")
    ints = np.clip(np.round(ts.samples * 32768.0), -32768, 32767).astype("<i2")
    with wave.open(str(path), "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(2)
        w.setframerate(int(ts.rate))
        w.writeframes(ints.tobytes())


def read_csv(path, rate: float) -> TimeSeries:
    """One real number per line; a non-numeric first line is taken as a header."""
    values = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                values.append(float(text))
            except ValueError:
                if lineno == 1:
                    continue
                raise ParseError(f"{path}: line {lineno}: not a number: {text!r}", line=lineno) from None
    if not values:
        raise EmptyInputError(f"{path}: no samples")
    return TimeSeries(np.array(values), rate)


def windows(ts: TimeSeries, spec: WindowSpec) -> list[TimeSeries]:
    """Cut ``spec.count`` windows of floor(duration * rate) samples from the start.

    Disjoint windows are consecutive; overlapping windows (``disjoint=False``)
    are spread evenly so the last one ends at the end of the series.
    """
    size = int(np.floor(spec.duration * ts.rate + 1e-9))
    if size < 1:
        raise InvalidArgumentError(f"window of {spec.duration} s holds no samples at {ts.rate} Hz")
    n = len(ts)
    if spec.disjoint:
        need = size * spec.count
        if need > n:
            raise InsufficientDataError(
                f"need {need} samples ({need / ts.rate:g} s) for {spec.count} windows, have {n}",
                required=need, available=n)
        starts = [i * size for i in range(spec.count)]
    else:
        if size > n:
            raise InsufficientDataError(
                f"need {size} samples for one window, have {n}", required=size, available=n)
        if spec.count == 1:
            starts = [0]
        else:
            starts = [int(i * (n - size) // (spec.count - 1)) for i in range(spec.count)]
    return [TimeSeries(ts.samples[s: s + size], ts.rate) for s in starts]
