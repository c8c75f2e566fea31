#!/usr/bin/env python3
"""Exhaustively decide the bijective-factor question for a substitution file.

Thin wrapper over :func:`colsub.decide_bijective_general` that prints the
sweep log as it would appear in the JSON report, for long-running searches
where the CLI's single final document is inconvenient.
"""

from __future__ import annotations

import argparse
import sys
import time

from colsub import decide_bijective_general, parse_rules
from colsub.errors import ColsubError


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("file", help="substitution file ('-' for stdin)")
    ap.add_argument("--max-n", type=int, default=None, help="cap the shift-extension order")
    ap.add_argument("--max-k", type=int, default=None, help="cap the shift parameter")
    ap.add_argument("--jobs", type=int, default=None, help="parallel worker processes")
    args = ap.parse_args(argv)

    text = sys.stdin.read() if args.file == "-" else open(args.file).read()
    s = parse_rules(text)
    t0 = time.monotonic()
    try:
        verdict = decide_bijective_general(
            s, max_n=args.max_n, max_k=args.max_k, jobs=args.jobs
        )
    except ColsubError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    dt = time.monotonic() - t0

    for entry in verdict.sweep_log:
        parts = " ".join("|".join(",".join(b) for b in p) for p in entry.partitions)
        print(f"n={entry.n} k={entry.k}: {entry.n_ideals} minimal left ideal(s)  {parts}")
    print(f"answer: {verdict.answer} (mode={verdict.mode}, {dt:.1f}s)")
    if verdict.hit is not None:
        print(f"hit: n={verdict.hit[0]} k={verdict.hit[1]}")
    if verdict.answer == "yes" and verdict.encoding is not None:
        q = verdict.encoding.quotient
        print("quotient:")
        print(q.rules_text())
    return 0 if verdict.answer != "inconclusive" else 3


if __name__ == "__main__":
    sys.exit(main())
