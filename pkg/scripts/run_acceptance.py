"""Run the acceptance criteria and print one PASS/FAIL line per criterion.

Usage: python3 scripts/run_acceptance.py [--seed 7] [--out acceptance.csv]
"""

import sys

from conjcrypt.cli import main

if __name__ == "__main__":
    args = sys.argv[1:]
    if "--seed" not in args:
        args += ["--seed", "7"]
    sys.exit(main(["selftest", *args]))
