"""Both counterexample demonstrations, written to an output directory.

    python3 scripts/demos.py --out-dir runs/demos --samples 1000000
"""
import argparse
import sys

from qbild.cli import main as cli_main


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--out-dir", default="runs/demos")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=42)
    args = p.parse_args()
    return cli_main(["demos", "--out-dir", args.out_dir, "--samples", str(args.samples), "--seed", str(args.seed), "--svg"])


if __name__ == "__main__":
    sys.exit(main())
