"""Command-line experiment runner.

Every subcommand writes ``ExperimentRecord`` rows as CSV (default) or
JSON, to ``--out`` or to stdout. ``selftest`` runs the acceptance
criteria and prints a pass/fail table.
"""

from __future__ import annotations

import argparse
import shlex
import sys
from pathlib import Path

from . import experiments
from .acceptance import run_selftest
from .records import to_csv, to_json


def _k_list(text: str) -> list[int]:
    try:
        return experiments.parse_k_range(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=0, help="u64 seed (default 0)")
    common.add_argument("--out", type=Path, help="output file (default stdout)")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv", help="CSV output (default)")
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON output")
    common.add_argument("--timing", action="store_true", help="fill wall_ms (output no longer byte-stable)")

    parser = argparse.ArgumentParser(prog="conjcrypt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encrypt-demo", parents=[common], help="round trips with right and wrong keys")
    p.add_argument("--k", type=_k_list, default=[4])
    p.add_argument("--n", type=_positive, default=16, help="message length in bits")
    p.add_argument("--trials", type=_positive, default=1000)

    for name, default, helptext in (
        ("distance", "1..6", "D(rho_0, rho_1) against (sqrt2/2)^k"),
        ("sigma-distance", "1..6", "D(sigma_0, sigma_1) against (sin pi/4)^k"),
        ("channel-check", "1..4", "channel identity and Kraus completeness"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--k", type=_k_list, default=_k_list(default))

    p = sub.add_parser("breidbart", parents=[common], help="Breidbart probabilities and distance")
    p.add_argument("--k", type=_k_list, default=_k_list("1..4"))
    p.add_argument("--trials", type=_nonnegative, default=100_000, help="Monte Carlo draws (0 to skip)")

    p = sub.add_parser("scan", parents=[common], help="scan rotated product bases")
    p.add_argument("--k", type=_k_list, default=_k_list("1..4"))
    p.add_argument("--resolution", type=_positive, default=256, help="angles in [0, pi)")

    p = sub.add_parser("nosignal", parents=[common], help="Eve's marginals and signalling advantage")
    p.add_argument("--trials", type=_nonnegative, default=100_000)
    p.add_argument("--povms", type=_positive, default=100)

    p = sub.add_parser("unicity", parents=[common], help="key-recovery attacks on both schemes")
    p.add_argument("--k", type=_k_list, default=_k_list("2,4,6"))
    p.add_argument("--N", type=_positive, default=64, help="detector sample length")
    p.add_argument("--L", type=_positive, default=8, help="linear-complexity bound and LFSR length")
    p.add_argument("--runs", type=_positive, default=100)

    sub.add_parser("complexity", parents=[common], help="cost formulas on the 20-profile grid")
    sub.add_parser("selftest", parents=[common], help="run all acceptance criteria")
    return parser


def _validate(args, parser) -> None:
    if args.command in {"distance", "sigma-distance", "breidbart"} and max(args.k) > 8:
        parser.error("k above 8 exceeds the eigendecomposition cap")
    if args.command in {"channel-check"} and max(args.k) > 8:
        parser.error("k above 8 exceeds the dimension cap")
    if args.command == "scan" and max(args.k) > 4:
        parser.error("scan supports k <= 4")
    if args.command == "unicity":
        if any(k % 2 for k in args.k):
            parser.error("unicity needs even k (the deterministic scheme pairs key bits)")
        if args.N <= 2 * args.L:
            parser.error("detector needs N > 2L")
        if args.L > 16:
            parser.error("LFSR tables cover L <= 16")
        if max(args.k) > 12:
            parser.error("k above 12 is not desk-scale for the probabilistic attack")
    if args.command == "encrypt-demo" and max(args.k) > 12:
        parser.error("k above 12 exceeds the dimension cap")


def _run(args) -> list:
    t = args.timing
    match args.command:
        case "encrypt-demo":
            return experiments.encrypt_demo(args.k, args.n, args.seed, args.trials, t)
        case "distance":
            return experiments.distance(args.k, args.seed, t)
        case "sigma-distance":
            return experiments.sigma_distance(args.k, args.seed, t)
        case "channel-check":
            return experiments.channel_check(args.k, args.seed, t)
        case "breidbart":
            return experiments.breidbart(args.k, args.seed, args.trials, t)
        case "scan":
            return experiments.scan(args.k, args.seed, args.resolution, t)
        case "nosignal":
            return experiments.nosignal(args.seed, args.trials, args.povms, t)
        case "unicity":
            return experiments.unicity(args.k, args.N, args.L, args.runs, args.seed, t)
        case "complexity":
            return experiments.complexity(args.seed, t)
    raise AssertionError(args.command)


def _write(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(args, parser)
    argv_list = sys.argv[1:] if argv is None else list(argv)
    # the header records the command without the output path
    shown = [a for i, a in enumerate(argv_list) if a != "--out" and (i == 0 or argv_list[i - 1] != "--out")]
    command = shlex.join(shown)
    fmt = args.fmt or ("json" if args.out is not None and args.out.suffix == ".json" else "csv")
    serialize = to_json if fmt == "json" else to_csv

    if args.command == "selftest":
        results, records = run_selftest(args.seed, command)
        for r in results:
            print(r.line())
        failed = [r.number for r in results if not r.passed]
        print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
        if args.out is not None:
            try:
                _write(serialize(records, command), args.out)
            except OSError as exc:
                print(f"conjcrypt: cannot write {args.out}: {exc}", file=sys.stderr)
                return 2
        return 1 if failed else 0

    try:
        records = _run(args)
    except ValueError as exc:
        print(f"conjcrypt: {exc}", file=sys.stderr)
        return 2
    try:
        _write(serialize(records, command), args.out)
    except OSError as exc:
        print(f"conjcrypt: cannot write {args.out}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
