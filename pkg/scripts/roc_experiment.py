"""ROC curves for the clarinet-vs-viol membership experiment (PRF and FFT).

Writes roc_prf.csv, roc_fft.csv and distances.csv to --out-dir.
"""

import argparse
from pathlib import Path

import numpy as np

from witnessph import io
from witnessph.experiments import ExperimentConfig, run_membership


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="results/roc")
    ap.add_argument("--target", default="clarinet")
    ap.add_argument("--other", default="viol")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--landmarks", type=int, default=100)
    args = ap.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cfg = ExperimentConfig(seed=args.seed, landmarks=args.landmarks)
    res = run_membership(args.target, args.other, cfg)
    io.write_roc_csv(out / "roc_prf.csv", res.prf_roc)
    io.write_roc_csv(out / "roc_fft.csv", res.fft_roc)
    rows = []
    for name, (pos, neg), s in (("prf", res.prf_distances, res.prf_model.sigma),
                                ("fft", res.fft_distances, res.fft_model.sigma)):
        rows += [[name, "positive", repr(float(d)), repr(float(d / s))] for d in pos]
        rows += [[name, "negative", repr(float(d)), repr(float(d / s))] for d in neg]
    io.write_table_csv(out / "distances.csv", ["classifier", "label", "distance", "ratio"], rows)

    for name, c in (("PRF", res.prf_roc), ("FFT", res.fft_roc)):
        print(f"{name}: sigma={(res.prf_model if name == 'PRF' else res.fft_model).sigma:.4g}")
        for k in (0.5, 1, 2, 3, 4, 5):
            i = int(np.argmin(np.abs(c.k - k)))
            print(f"  k={c.k[i]:.2f}  tpr={c.tpr[i]:.2f}  fpr={c.fpr[i]:.2f}")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
