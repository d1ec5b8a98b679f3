"""Band optimizer on random matrices: timing, KKT residuals, oracle agreement.

    python3 scripts/band_survey.py --count 20 --max-n 5
"""
import argparse
import time

import numpy as np

from qbild import BandOptions, band, band_oracle, canonical_form


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--oracle-samples", type=int, default=50_000)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"{'n':>2} {'v_min':>13} {'v_max':>13} {'status':>13} {'kkt':>9} {'oracle lo-v_min':>16} {'v_max-oracle hi':>16} {'sec':>6}")
    for k in range(args.count):
        n = int(rng.integers(2, args.max_n + 1))
        A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        cf = canonical_form(A)
        t0 = time.perf_counter()
        res = band(cf, BandOptions())
        dt = time.perf_counter() - t0
        lo, hi = band_oracle(cf, args.oracle_samples, eps_real=1e-4, seed=k)
        print(f"{n:2d} {res.v_min:13.8f} {res.v_max:13.8f} {res.status.value:>13} {res.kkt_residual:9.1e} "
              f"{lo - res.v_min:16.3e} {res.v_max - hi:16.3e} {dt:6.2f}")


if __name__ == "__main__":
    main()
