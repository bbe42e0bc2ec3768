"""CSV/SVG export. Floats are written with ``repr`` so output is byte-stable."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .embed import DistanceMatrix, PointCloud
from .errors import FormatError
from .filtration import WitnessFiltration
from .homology import PersistenceDiagram
from .prf import PRFGrid


def _f(x) -> str:
    return repr(float(x))


def _write(path, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def write_cloud_csv(path, cloud: PointCloud) -> None:
    header = ["t"] + [f"x{i}" for i in range(cloud.dim)]
    _write(path, header, ([int(t)] + [_f(v) for v in p] for t, p in zip(cloud.times, cloud.points)))


def write_distances_csv(path, D: DistanceMatrix) -> None:
    header = ["landmark", "column"] + [f"w{j}" for j in range(D.n_witnesses)]
    _write(path, header, ([i, int(c)] + [_f(v) for v in row]
                          for i, (c, row) in enumerate(zip(D.landmark_columns, D.values))))


def write_filtration_csv(path, f: WitnessFiltration) -> None:
    _write(path, ["dim", "vertices", "birth"],
           ([len(s) - 1, " ".join(map(str, s)), _f(b)] for s, b in zip(f.simplices, f.births)))


def write_diagram_csv(path, dg: PersistenceDiagram, keep_zero: bool = False) -> None:
    """Rows (k, birth, death, essential); essential deaths are written as eps_max."""
    d = dg if keep_zero else dg.without_zero()
    rows = []
    for k, b, death in zip(d.k, d.birth, d.death):
        ess = bool(np.isinf(death))
        rows.append([int(k), _f(b), _f(dg.eps_max if ess else death), int(ess)])
    _write(path, ["k", "birth", "death", "essential"], rows)


def read_diagram_csv(path, eps_max: float | None = None) -> PersistenceDiagram:
    ks, bs, ds = [], [], []
    with open(path, encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["k", "birth", "death", "essential"]:
            raise FormatError(f"{path}: unexpected diagram header {header}")
        cap = 0.0
        for row in reader:
            k, b, d, e = int(row[0]), float(row[1]), float(row[2]), row[3] == "1"
            ks.append(k)
            bs.append(b)
            ds.append(np.inf if e else d)
            cap = max(cap, d)
    return PersistenceDiagram(np.array(ks, dtype=np.int64), np.array(bs), np.array(ds),
                              cap if eps_max is None else eps_max)


def write_prf_csv(path, g: PRFGrid) -> None:
    axis = g.axis
    G = g.resolution
    _write(path, ["a", "b", "value"],
           ([_f(axis[i]), _f(axis[j]), _f(g.values[i, j])] for i in range(G) for j in range(i, G)))


def write_roc_csv(path, curve) -> None:
    _write(path, ["k", "tpr", "fpr"],
           ([_f(k), _f(t), _f(f)] for k, t, f in zip(curve.k, curve.tpr, curve.fpr)))


def write_table_csv(path, header, rows) -> None:
    _write(path, header, rows)


def diagram_svg(dg: PersistenceDiagram, k: int = 1, size: int = 360) -> str:
    """Birth/death scatter; essential classes drawn as triangles at eps_max."""
    pad = 40
    span = size - 2 * pad
    cap = dg.eps_max if dg.eps_max > 0 else 1.0
    d = dg.dimension(k).without_zero()

    def px(v):
        return pad + span * min(v, cap) / cap

    def py(v):
        return size - pad - span * min(v, cap) / cap

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
        f'<line x1="{pad}" y1="{size - pad}" x2="{size - pad}" y2="{pad}" stroke="#999" stroke-dasharray="4 3"/>',
        f'<line x1="{pad}" y1="{size - pad}" x2="{size - pad}" y2="{size - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{size - pad}" x2="{pad}" y2="{pad}" stroke="black"/>',
        f'<text x="{size / 2:.1f}" y="{size - 8}" font-size="12" text-anchor="middle">birth</text>',
        f'<text x="12" y="{size / 2:.1f}" font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 12 {size / 2:.1f})">death</text>',
        f'<text x="{size - pad}" y="{size - pad + 16}" font-size="10" text-anchor="end">{cap:.4g}</text>',
    ]
    for b, death in zip(d.birth, d.death):
        x = px(b)
        if np.isinf(death):
            y = py(cap)
            out.append(f'<polygon points="{x:.2f},{y - 5:.2f} {x - 5:.2f},{y + 4:.2f} {x + 5:.2f},{y + 4:.2f}" '
                       f'fill="#c0392b"/>')
        else:
            out.append(f'<circle cx="{x:.2f}" cy="{py(death):.2f}" r="3" fill="#2c3e50"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_text(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
