"""Compute, validate and plot the upper bild of every matrix in data/fixtures.

    python3 scripts/fixtures.py --out-dir runs/fixtures
"""
import argparse
import time
from pathlib import Path

from qbild import RunConfig, upper_bild, validate
from qbild.errors import NotComplex
from qbild.fileio import bild_svg, read_matrix, write_atomic, write_json

ROOT = Path(__file__).resolve().parents[1]


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--out-dir", default="runs/fixtures")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=42)
    args = p.parse_args()
    cfg = RunConfig(samples=args.samples, seed=args.seed)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    print(f"{'fixture':<16} {'path':<20} {'v_min':>14} {'v_max':>14} {'gap':>9} {'viol':>5} {'cover':>9} {'sec':>6}")
    for f in sorted((ROOT / "data" / "fixtures").iterdir()):
        try:
            A = read_matrix(f).complex()
        except NotComplex:
            continue
        t0 = time.perf_counter()
        b = upper_bild(A, cfg.bild_options())
        rep = validate(A, b, cfg.samples, cfg.seed, cfg.tol)
        dt = time.perf_counter() - t0
        doc = b.to_dict()
        doc["validation"] = rep.to_dict()
        write_json(out / f"{f.stem}.json", doc)
        write_atomic(out / f"{f.stem}.svg", bild_svg(b, f"{f.stem}: {b.path.value}"))
        lo, hi = b.v_band.interval()
        lo_s = "-" if lo is None else f"{lo:.10f}"
        hi_s = "-" if hi is None else f"{hi:.10f}"
        print(f"{f.stem:<16} {b.path.value:<20} {lo_s:>14} {hi_s:>14} {b.gap():9.2e} {rep.violations:5d} {rep.coverage:9.2e} {dt:6.2f}")


if __name__ == "__main__":
    main()
