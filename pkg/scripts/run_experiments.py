"""Run every experiment subcommand with its default parameters and write one CSV each.

Usage: python3 scripts/run_experiments.py [--seed 7] [--outdir results]
"""

import argparse
import sys
from pathlib import Path

from conjcrypt.cli import main as cli

RUNS = {
    "encrypt-demo": ["--k", "2,4,8", "--n", "16", "--trials", "1000"],
    "distance": ["--k", "1..6"],
    "sigma-distance": ["--k", "1..6"],
    "channel-check": ["--k", "1..4"],
    "breidbart": ["--k", "1..4", "--trials", "100000"],
    "scan": ["--k", "1..4", "--resolution", "256"],
    "nosignal": ["--trials", "100000"],
    "unicity": ["--k", "2,4,6", "--N", "64", "--L", "8", "--runs", "100"],
    "complexity": [],
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", default="7")
    parser.add_argument("--outdir", type=Path, default=Path("results"))
    args = parser.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    status = 0
    for name, extra in RUNS.items():
        out = args.outdir / f"{name}.csv"
        code = cli([name, *extra, "--seed", args.seed, "--out", str(out)])
        print(f"{name:15s} -> {out} (exit {code})")
        status |= code
    return status


if __name__ == "__main__":
    sys.exit(main())
