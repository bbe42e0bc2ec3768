"""Command-line entry point: ``witnessph <command> [options]``.

Exit codes: 0 success, 1 usage, 2 data, 3 internal. Failures print a single
line ``witnessph: error: <kind>: <message>`` to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import classify as clf
from . import io
from .bench import piano_proxy_cloud, run_bench
from .embed import DelayParams, delay_embed, distances, select_landmarks, suggest_tau
from .errors import DegenerateInputError, InvalidArgumentError, WitnessPHError
from .filtration import build_filtration, epsilon_max_rule
from .homology import persistence
from .ingest import TimeSeries, WindowSpec, read_csv, read_wav, windows, write_wav
from .prf import prf
from .synth import KINDS, tone

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# argument groups

def _add_input(p, required=True):
    p.add_argument("--input", required=required, help="WAV file, or CSV with one sample per line")
    p.add_argument("--rate", type=float, help="sample rate in Hz (required for CSV input)")


def _add_windows(p, count):
    p.add_argument("--windows", type=int, default=count, help=f"number of disjoint windows (default {count})")
    p.add_argument("--window-sec", type=float, default=0.05, help="window length in seconds (default 0.05)")
    p.add_argument("--skip-seconds", type=float, default=0.0, help="trim this much lead-in first")


def _add_pipeline(p):
    p.add_argument("--tau", type=int, help="delay in samples")
    p.add_argument("--freq", type=float, help="fundamental in Hz; sets tau = rate / (freq * pi)")
    p.add_argument("--dim", type=int, default=2, help="reconstruction dimension (default 2)")
    p.add_argument("--landmarks", type=int, default=100, help="number of landmarks (default 100)")
    p.add_argument("--landmark-method", choices=("even", "maxmin"), default="even")
    p.add_argument("--eps-max", type=float, help="filtration cap (default: first 20-simplex rule)")
    p.add_argument("--grid", type=int, default=64, help="PRF grid resolution (default 64)")


def _add_out(p):
    p.add_argument("--out-dir", default=".", help="output directory (default .)")
    p.add_argument("--seed", type=int, default=0, help="seed for synthetic generators")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="witnessph", description="Witness-complex persistent homology for time series.")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("synth", help="write a synthetic tone as PCM16 WAV")
    p.add_argument("--kind", required=True, help=f"one of {', '.join(KINDS)}")
    p.add_argument("--freq", type=float, default=440.0)
    p.add_argument("--duration", type=float, default=1.0)
    p.add_argument("--rate", type=float, default=44100.0)
    p.add_argument("--partials", type=int, default=4)
    p.add_argument("--noise", type=float, default=0.0, help="noise std relative to peak")
    p.add_argument("--out", help="output WAV path (default <out-dir>/<kind>.wav)")
    _add_out(p)

    p = sub.add_parser("embed", help="export delay reconstruction and landmark distances")
    _add_input(p)
    _add_windows(p, 1)
    _add_pipeline(p)
    _add_out(p)

    p = sub.add_parser("persist", help="persistence diagrams of each window")
    _add_input(p)
    _add_windows(p, 1)
    _add_pipeline(p)
    p.add_argument("--max-k", type=int, default=1, help="highest homology dimension (default 1)")
    p.add_argument("--keep-zero", action="store_true", help="keep zero-persistence points")
    p.add_argument("--export-filtration", action="store_true")
    _add_out(p)

    p = sub.add_parser("train", help="train a membership model")
    _add_input(p)
    _add_windows(p, 25)
    _add_pipeline(p)
    p.add_argument("--classifier", choices=("prf", "fft"), default="prf")
    p.add_argument("--taper", choices=("none", "hann"), default="none")
    p.add_argument("--model", help="output model path (default <out-dir>/model.txt)")
    _add_out(p)

    p = sub.add_parser("classify", help="test windows against a model")
    p.add_argument("--model", required=True)
    _add_input(p)
    _add_windows(p, 1)
    p.add_argument("--k", type=float, default=1.0, help="threshold multiplier (default 1)")
    _add_out(p)

    p = sub.add_parser("roc", help="ROC sweep over the threshold multiplier")
    p.add_argument("--model", required=True)
    p.add_argument("--positives", required=True, nargs="+")
    p.add_argument("--negatives", required=True, nargs="+")
    p.add_argument("--rate", type=float, help="sample rate for CSV inputs")
    _add_windows(p, 25)
    p.add_argument("--k-grid", default="100",
                   help="N for N points in (0, 5], or a comma-separated list of k values")
    _add_out(p)

    p = sub.add_parser("bench", help="Čech vs witness complex cost table")
    _add_input(p, required=False)
    p.add_argument("--tau", type=int)
    p.add_argument("--freq", type=float)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--landmarks", default="200,50", help="comma-separated landmark counts")
    p.add_argument("--eps-max", type=float, help="fixed scale (default 0.6 x rule for the largest count)")
    p.add_argument("--witnesses", type=int, default=2000, help="points in the cloud (default 2000)")
    p.add_argument("--repeats", type=int, default=1, help="report the best of this many timings")
    p.add_argument("--no-cech", action="store_true")
    _add_out(p)
    return ap


# helpers

def _load(path: str, rate: float | None) -> TimeSeries:
    if not Path(path).exists():
        raise FileNotFoundError(path)
    if path.lower().endswith(".wav"):
        return read_wav(path)
    if rate is None:
        raise UsageError(f"--rate is required for non-WAV input {path}")
    return read_csv(path, rate)


def _windows(args, path) -> list[TimeSeries]:
    ts = _load(path, args.rate)
    if args.skip_seconds:
        ts = ts.skip(args.skip_seconds)
    return windows(ts, WindowSpec(args.window_sec, args.windows))


def _tau(args, rate: float) -> int:
    if args.tau is not None and args.freq is not None:
        raise UsageError("give exactly one of --tau and --freq")
    if args.tau is None and args.freq is None:
        raise UsageError("one of --tau or --freq is required")
    return args.tau if args.tau is not None else suggest_tau(rate, args.freq)


def _eps(value):
    if value is not None and value <= 0:
        raise DegenerateInputError(f"--eps-max must be positive, got {value}")
    return value


def _out_dir(args) -> Path:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _suffix(i: int, n: int) -> str:
    return "" if n == 1 else f"_{i:03d}"


def _config(args, rate: float) -> clf.PipelineConfig:
    return clf.PipelineConfig(tau=_tau(args, rate), dim=args.dim, landmarks=args.landmarks,
                              grid=args.grid, eps_max=_eps(args.eps_max), window_sec=args.window_sec,
                              landmark_method=args.landmark_method)


# commands

def cmd_synth(args) -> int:
    if args.kind not in KINDS:
        raise UsageError(f"unknown kind {args.kind!r}; expected one of {', '.join(KINDS)}")
    if not args.duration > 0:
        raise UsageError(f"--duration must be positive, got {args.duration}")
    ts = tone(args.kind, args.freq, args.duration, args.rate, args.partials, args.noise, args.seed)
    path = Path(args.out) if args.out else _out_dir(args) / f"{args.kind}.wav"
    path.parent.mkdir(parents=True, exist_ok=True)
    write_wav(path, ts)
    print(f"wrote {path} ({len(ts)} samples at {ts.rate:g} Hz)")
    return EXIT_OK


def cmd_embed(args) -> int:
    wins = _windows(args, args.input)
    out = _out_dir(args)
    p = DelayParams(_tau(args, wins[0].rate), args.dim)
    for i, w in enumerate(wins):
        cloud = delay_embed(w.normalized(), p)
        D = distances(cloud, select_landmarks(cloud, args.landmarks, args.landmark_method))
        sfx = _suffix(i, len(wins))
        io.write_cloud_csv(out / f"cloud{sfx}.csv", cloud)
        io.write_distances_csv(out / f"distances{sfx}.csv", D)
        print(f"window {i}: {len(cloud)} points, tau={p.tau}, eps_max rule={epsilon_max_rule(D):.6g}")
    return EXIT_OK


def cmd_persist(args) -> int:
    eps = _eps(args.eps_max)
    wins = _windows(args, args.input)
    out = _out_dir(args)
    cfg = _config(args, wins[0].rate)
    for i, w in enumerate(wins):
        cloud = delay_embed(w.normalized(), DelayParams(cfg.tau, cfg.dim))
        D = distances(cloud, select_landmarks(cloud, cfg.landmarks, cfg.landmark_method))
        f = build_filtration(D, max_dim=args.max_k + 1, eps_max=eps)
        dg = persistence(f, max_k=args.max_k)
        sfx = _suffix(i, len(wins))
        io.write_diagram_csv(out / f"diagram{sfx}.csv", dg, keep_zero=args.keep_zero)
        io.write_text(out / f"diagram{sfx}.svg", io.diagram_svg(dg, k=1 if args.max_k >= 1 else 0))
        if args.max_k >= 1:
            io.write_prf_csv(out / f"prf{sfx}.csv", prf(dg, 1, cfg.grid))
        if args.export_filtration:
            io.write_filtration_csv(out / f"filtration{sfx}.csv", f)
        h1 = dg.dimension(1).without_zero()
        print(f"window {i}: eps_max={f.eps_max:.6g}, {len(f)} simplices, "
              f"{len(h1)} H1 points ({int(h1.essential.sum())} essential)")
    return EXIT_OK


def cmd_train(args) -> int:
    wins = _windows(args, args.input)
    if args.classifier == "prf":
        model = clf.train_prf(wins, _config(args, wins[0].rate))
    else:
        model = clf.train_fft(wins, args.taper)
    path = Path(args.model) if args.model else _out_dir(args) / "model.txt"
    path.parent.mkdir(parents=True, exist_ok=True)
    clf.save_model(model, path)
    print(f"wrote {path} ({args.classifier}, {len(wins)} windows, sigma={model.sigma:.6g})")
    return EXIT_OK


def cmd_classify(args) -> int:
    model = clf.load_model(args.model)
    if isinstance(model, clf.PRFModel):
        args.window_sec = model.config.window_sec
    wins = _windows(args, args.input)
    rows = []
    for i, w in enumerate(wins):
        member, d = clf.membership(model, w, args.k)
        rows.append([i, repr(d), repr(args.k * model.sigma), int(member)])
        print(f"window {i}: distance={d:.6g} threshold={args.k * model.sigma:.6g} member={member}")
    io.write_table_csv(_out_dir(args) / "classify.csv", ["window", "distance", "threshold", "member"], rows)
    return EXIT_OK


def _k_grid(spec: str) -> np.ndarray:
    if "," in spec:
        ks = np.array([float(v) for v in spec.split(",")])
    else:
        n = int(spec)
        if n < 1:
            raise UsageError(f"--k-grid count must be positive, got {n}")
        ks = clf.default_k_grid(n)
    if np.any(ks < 0):
        raise UsageError("k values must be nonnegative")
    return ks


def cmd_roc(args) -> int:
    model = clf.load_model(args.model)
    if isinstance(model, clf.PRFModel):
        args.window_sec = model.config.window_sec
    try:
        ks = _k_grid(args.k_grid)
    except ValueError as exc:
        raise UsageError(f"bad --k-grid {args.k_grid!r}: {exc}") from None
    pos = [w for p in args.positives for w in _windows(args, p)]
    neg = [w for p in args.negatives for w in _windows(args, p)]
    curve = clf.roc(model, pos, neg, ks)
    io.write_roc_csv(_out_dir(args) / "roc.csv", curve)
    best = int(np.argmax(curve.tpr - curve.fpr))
    print(f"{len(pos)} positives, {len(neg)} negatives; best k={curve.k[best]:.4g} "
          f"tpr={curve.tpr[best]:.3f} fpr={curve.fpr[best]:.3f}")
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        counts = [int(v) for v in args.landmarks.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad --landmarks {args.landmarks!r}") from None
    eps = _eps(args.eps_max)
    if args.input:
        ts = _load(args.input, args.rate).normalized()
        cloud = delay_embed(ts, DelayParams(_tau(args, ts.rate), args.dim))
        cloud = type(cloud)(cloud.points[: args.witnesses], cloud.times[: args.witnesses])
    else:
        cloud = piano_proxy_cloud(args.witnesses, seed=args.seed)
    rows = None
    for _ in range(max(1, args.repeats)):
        trial = run_bench(cloud, counts, eps, include_cech=not args.no_cech)
        if rows is None:
            rows = trial
        else:
            rows = [r if r.seconds <= t.seconds else t for r, t in zip(rows, trial)]
    header = ["complex", "landmarks", "eps", "edges", "triangles", "seconds", "est_bytes"]
    table = [[r.complex, r.landmarks, repr(r.eps), r.edges, r.triangles, f"{r.seconds:.4f}", r.est_bytes]
             for r in rows]
    io.write_table_csv(_out_dir(args) / "bench.csv", header, table)
    print(f"{'complex':<8} {'landmarks':>9} {'triangles':>10} {'seconds':>9} {'est. memory':>12}")
    for r in rows:
        print(f"{r.complex:<8} {r.landmarks:>9} {r.triangles:>10} {r.seconds:>9.3f} {r.est_bytes / 1e6:>9.3f} MB")
    if rows:
        print(f"eps = {rows[0].eps:.6g}, {len(cloud)} points")
    return EXIT_OK


COMMANDS = {
    "synth": cmd_synth, "embed": cmd_embed, "persist": cmd_persist, "train": cmd_train,
    "classify": cmd_classify, "roc": cmd_roc, "bench": cmd_bench,
}


def _fail(kind: str, message: str, code: int) -> int:
    msg = " ".join(str(message).split())
    print(f"witnessph: error: {kind}: {msg}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        return _fail("usage", exc, EXIT_USAGE)
    except InvalidArgumentError as exc:
        return _fail(exc.kind, exc, EXIT_USAGE)
    except WitnessPHError as exc:
        return _fail(exc.kind, exc, EXIT_DATA)
    except FileNotFoundError as exc:
        return _fail("io", f"no such file: {exc.filename or exc}", EXIT_DATA)
    except OSError as exc:
        return _fail("io", f"{exc.filename or ''}: {exc.strerror or exc}", EXIT_DATA)
    except Exception as exc:  # noqa: BLE001
        return _fail("internal", f"{type(exc).__name__}: {exc}", EXIT_INTERNAL)


if __name__ == "__main__":
    sys.exit(main())
