"""Cost table for the Cech complex against witness complexes on the piano proxy cloud."""

import argparse
from pathlib import Path

from witnessph import io
from witnessph.bench import bench_eps, piano_proxy_cloud, run_bench


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="results/bench")
    ap.add_argument("--points", type=int, default=2000)
    ap.add_argument("--landmarks", default="200,50")
    ap.add_argument("--factor", type=float, default=0.6, help="eps as a multiple of the rule value")
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    counts = [int(v) for v in args.landmarks.split(",")]
    cloud = piano_proxy_cloud(args.points, seed=args.seed)
    eps = bench_eps(cloud, max(counts), args.factor)
    best = None
    for _ in range(args.repeats):
        rows = run_bench(cloud, counts, eps)
        best = rows if best is None else [r if r.seconds <= b.seconds else b for r, b in zip(rows, best)]

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    io.write_table_csv(out / "bench.csv", ["complex", "landmarks", "eps", "edges", "triangles", "seconds", "est_bytes"],
                       [[r.complex, r.landmarks, repr(r.eps), r.edges, r.triangles, f"{r.seconds:.4f}", r.est_bytes]
                        for r in best])
    print(f"{len(cloud)} points, eps = {eps:.5g}")
    print(f"{'complex':<8} {'landmarks':>9} {'triangles':>10} {'seconds':>9} {'memory MB':>10}")
    for r in best:
        print(f"{r.complex:<8} {r.landmarks:>9} {r.triangles:>10} {r.seconds:>9.3f} {r.est_bytes / 1e6:>10.3f}")


if __name__ == "__main__":
    main()
