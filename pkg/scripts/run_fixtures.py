#!/usr/bin/env python3
"""Run every bundled fixture through its recorded checks and print a table.

Exit status is 0 when all checks pass, 1 otherwise.  Pass fixture names as
arguments to restrict the run; pass ``--list`` to only print the registry.
"""

from __future__ import annotations

import argparse
import sys

from colsub import fixtures


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", help="fixture names (default: all)")
    ap.add_argument("--list", action="store_true", help="list fixtures and exit")
    args = ap.parse_args(argv)

    if args.list:
        for name in fixtures.names():
            fx = fixtures.REGISTRY[name]
            print(f"{name:16s} {fx.filename:22s} {fx.description}")
        return 0

    names = args.names or fixtures.names()
    all_ok = True
    for name in names:
        checks = fixtures.run_checks(name)
        ok = all(flag for _, flag in checks)
        all_ok &= ok
        status = "PASS" if ok else "FAIL"
        print(f"{status} {name}")
        if not ok:
            for label, flag in checks:
                print(f"     {'ok ' if flag else 'BAD'} {label}")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
