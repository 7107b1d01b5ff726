"""Print the qubit budgets of both key-recovery attacks next to their success rates.

Usage: python3 scripts/unicity_table.py [--runs 100] [--seed 7]
"""

import argparse

from conjcrypt.unicity import DetectorConfig, compare_unicity


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--runs", type=int, default=100)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--N", type=int, default=64)
    parser.add_argument("--L", type=int, default=8)
    args = parser.parse_args()
    rows = compare_unicity([2, 4, 6], DetectorConfig(args.N, args.L), args.seed, args.runs)
    print(f"{'k':>3} {'prob qubits':>12} {'det qubits':>11} {'ratio':>6} {'prob ok':>8} {'det ok':>7}")
    for r in rows:
        print(
            f"{r.k:3d} {r.qubits_probabilistic:12d} {r.qubits_deterministic:11d} {r.ratio:6g} "
            f"{r.success_probabilistic:8.2f} {r.success_deterministic:7.2f}"
        )


if __name__ == "__main__":
    main()
