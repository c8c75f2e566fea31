"""Command-line interface: subcommands over substitution files, with human
text or single-document JSON reports.

Exit codes: 0 = computed (whatever the verdict), 1 = input error,
2 = resource budget exceeded, 3 = sweep inconclusive under user caps.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fixtures as fixtures_mod
from .deciders import (
    AAVerdict,
    BijectiveVerdict,
    analyze,
    decide_aa_factor,
    decide_bijective_general,
    decide_bijective_inner,
)
from .encodings import (
    InnerEncoding,
    MinimalSets,
    OuterEncoding,
    Partition,
    RSet,
    inner_encoding_from_code,
    inner_encoding_from_partition,
)
from .errors import ColsubError, InputError, ResourceBudgetError
from .semigroup import (
    PairAperiodicityReport,
    generate,
    green,
    j_depth,
    naive_column_number,
)
from .transforms import CollaredLetterMap, collar, power, pure_base, shift_ext, height
from .words import Substitution, format_rules, parse_rules
from .words import fixed_point_seed

SCHEMA_ID = "colsub-report/1"

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BUDGET = 2
EXIT_INCONCLUSIVE = 3


def parse_file(text: str) -> Substitution:
    """Parse substitution file text (compact or whitespace-separated rules)."""
    return parse_rules(text)


# --- serialization -----------------------------------------------------------


def sub_doc(s: Substitution) -> dict:
    return {
        "letters": list(s.letters),
        "length": s.length,
        "rules": {s.letters[a]: list(s.names(s.images[a])) for a in range(s.n_letters)},
    }


def blocks_doc(s: Substitution, blocks) -> list:
    return [[s.letters[a] for a in b] for b in blocks]


def encoding_doc(e: InnerEncoding) -> dict:
    return {
        "code": e.code_by_name(),
        "partition": blocks_doc(e.source, e.partition.blocks),
        "quotient": sub_doc(e.quotient),
        "trivial": e.is_trivial,
    }


def letter_map_doc(m: CollaredLetterMap) -> dict:
    return {
        "center": m.center,
        "words": {
            composite: list(m.base.names(w))
            for composite, w in zip(_derived_letters(m), m.words)
        },
    }


def _derived_letters(m: CollaredLetterMap):
    from .transforms import composite_name

    return [composite_name(m.base, w) for w in m.words]


def minimal_sets_doc(ms: MinimalSets) -> dict:
    doc = {
        "sets": [list(x) for x in ms.sets_by_name()],
        "covers_alphabet": ms.covers_alphabet,
        "is_partition": ms.is_partition,
    }
    if ms.covers_alphabet:
        doc["coincidence_partition"] = blocks_doc(ms.sub, ms.coincidence_blocks)
    return doc


def outer_doc(o: OuterEncoding) -> dict:
    return {
        "labels": list(o.labels),
        "class_images": {
            label: [o.source.letters[a] for a in img]
            for label, img in zip(o.labels, o.class_images)
        },
        "column_actions": [
            {o.labels[i]: o.labels[action[i]] for i in range(len(o.labels))}
            for action in o.phi
        ],
        "quotient": sub_doc(o.quotient),
    }


def r_set_doc(r: RSet) -> dict:
    return {
        "size": r.size,
        "pointwise_disjoint": r.pointwise_disjoint,
        "n_pairs": r.n_pairs,
        "counting_ok": r.counting_ok,
    }


def pair_aperiodicity_doc(p: PairAperiodicityReport) -> dict:
    return {
        "p_theta": p.p_theta,
        "periodic_pairs": [
            {"a": a, "b": b, "power": n, "columns": list(word)}
            for a, b, n, word in p.periodic_pairs
        ],
    }


def aa_doc(v: AAVerdict) -> dict:
    doc = {
        "answer": "yes" if v.answer else "no",
        "power_used": v.power_used,
        "height": {"h": v.height_info.h, "g": v.height_info.g},
        "stage_base": sub_doc(v.stage_base),
        "stages": [
            {
                "collar": {"l": st.spec.l, "r": st.spec.r},
                "n_letters": st.collared.n_letters,
                "partition": blocks_doc(st.collared, st.encoding.partition.blocks),
                "quotient": sub_doc(st.encoding.quotient),
                "aperiodic": st.aperiodic,
            }
            for st in v.stages
        ],
    }
    if v.answer:
        doc["witness_collar"] = {"l": v.witness_spec.l, "r": v.witness_spec.r}
        doc["witness"] = encoding_doc(v.witness)
        if v.suspended is not None:
            doc["suspended"] = sub_doc(v.suspended)
            doc["local_rule"] = {
                "radius_left": v.local_rule.radius_left,
                "radius_right": v.local_rule.radius_right,
                "rows": [
                    {"window": list(w), "output": out} for w, out in v.local_rule.rows
                ],
            }
    if v.r_info is not None:
        doc["r_set"] = r_set_doc(v.r_info)
    return doc


def bijective_doc(v: BijectiveVerdict, source: Substitution | None = None) -> dict:
    doc = {"answer": v.answer, "mode": v.mode, "trivial": v.trivial}
    if v.partition is not None and v.encoding is not None:
        doc["partition"] = blocks_doc(v.encoding.source, v.partition.blocks)
        doc["encoding"] = encoding_doc(v.encoding)
    if v.hit is not None:
        doc["hit"] = {"n": v.hit[0], "k": v.hit[1]}
    if v.mode == "inner" and v.answer == "no" and source is not None:
        doc["kernel_partitions"] = [blocks_doc(source, p) for p in v.kernel_partitions]
    if v.n_bound is not None:
        doc["n_bound"] = v.n_bound
        doc["j"] = v.j
        doc["capped"] = v.capped
        doc["sweep_log"] = [
            {
                "n": e.n,
                "k": e.k,
                "n_ideals": e.n_ideals,
                "partitions": [[list(b) for b in p] for p in e.partitions],
            }
            for e in v.sweep_log
        ]
    return doc


def semigroup_doc(s: Substitution, with_green: bool, budget=None) -> dict:
    sg = generate(s, budget=budget)
    doc = {
        "size": len(sg),
        "column_number": naive_column_number(sg),
        "j": j_depth(sg),
        "level_preperiod": sg.preperiod,
        "level_period": sg.period,
    }
    if with_green:
        gd = green(sg)
        doc["green"] = {
            "kernel_size": len(gd.kernel),
            "n_r_classes": len(gd.r_classes),
            "n_l_classes": len(gd.l_classes),
            "n_idempotents": len(gd.idempotents),
            "group_order": gd.group_order,
            "kernel_partitions": [blocks_doc(s, p) for p in gd.kernel_partitions],
            "minimal_sets": [
                [s.letters[a] for a in img] for img in gd.kernel_images
            ],
        }
    return doc


def analyze_doc(s: Substitution, budget=None, cap=None) -> dict:
    rep = analyze(s, budget=budget, aperiodicity_cap=cap)
    doc: dict = {"primitive": rep["primitive"], "fix_power": rep["fix_power"],
                 "least_fixed_power": rep["least_fixed_power"]}
    if "aperiodic" in rep:
        doc["aperiodic"] = rep["aperiodic"]
    if "height" in rep:
        doc["height"] = {"h": rep["height"].h, "g": rep["height"].g}
    if "semigroup" in rep:
        doc["semigroup"] = rep["semigroup"]
    if "minimal_sets" in rep:
        doc["minimal_sets"] = minimal_sets_doc(rep["minimal_sets"])
    if "pair_aperiodicity" in rep:
        doc["pair_aperiodicity"] = pair_aperiodicity_doc(rep["pair_aperiodicity"])
    if "canonical_is_inner" in rep:
        doc["canonical_is_inner"] = rep["canonical_is_inner"]
    if "outer" in rep:
        doc["outer"] = outer_doc(rep["outer"])
    if "r_set" in rep:
        doc["r_set"] = r_set_doc(rep["r_set"])
    if "aa" in rep:
        doc["aa"] = aa_doc(rep["aa"])
    if "bijective_inner" in rep:
        doc["bijective_inner"] = bijective_doc(rep["bijective_inner"], s)
    doc["bijective_general"] = rep["bijective_general"]
    doc["errors"] = rep["errors"]
    return doc


# --- human rendering ---------------------------------------------------------


def _print_sub(s: Substitution, out):
    print(format_rules(s), end="", file=out)


def _render_aa(doc: dict, out):
    print("almost automorphic factor: %s" % doc["answer"], file=out)
    print(
        "power used: %d, height: %d" % (doc["power_used"], doc["height"]["h"]),
        file=out,
    )
    for st in doc["stages"]:
        print(
            "  collar (%d,%d): %d letters, quotient on %d, %s"
            % (
                st["collar"]["l"],
                st["collar"]["r"],
                st["n_letters"],
                len(st["quotient"]["letters"]),
                "aperiodic" if st["aperiodic"] else "periodic",
            ),
            file=out,
        )
    if doc["answer"] == "yes":
        q = doc["witness"]["quotient"]
        print("witness quotient:", file=out)
        for a in q["letters"]:
            print("  %s -> %s" % (a, " ".join(q["rules"][a])), file=out)
        print("code:", file=out)
        for a, b in doc["witness"]["code"].items():
            print("  %s -> %s" % (a, b), file=out)
        if "suspended" in doc:
            sd = doc["suspended"]
            print("suspended witness:", file=out)
            for a in sd["letters"]:
                print("  %s -> %s" % (a, " ".join(sd["rules"][a])), file=out)
            lr = doc["local_rule"]
            print(
                "local rule (radius %d,%d):" % (lr["radius_left"], lr["radius_right"]),
                file=out,
            )
            for row in lr["rows"]:
                print("  %s -> %s" % (" ".join(row["window"]), row["output"]), file=out)
    if "r_set" in doc:
        r = doc["r_set"]
        print(
            "pair maps: %d distinct, %d allowed pairs, counting %s"
            % (r["size"], r["n_pairs"], "ok" if r["counting_ok"] else "fails"),
            file=out,
        )


def _render_bijective(doc: dict, out):
    print("bijective factor: %s (mode %s)" % (doc["answer"], doc["mode"]), file=out)
    if "hit" in doc:
        print("hit at n=%d, k=%d" % (doc["hit"]["n"], doc["hit"]["k"]), file=out)
    if "encoding" in doc:
        q = doc["encoding"]["quotient"]
        print("partition: %s" % " | ".join(",".join(b) for b in doc["partition"]), file=out)
        print("quotient:", file=out)
        for a in q["letters"]:
            print("  %s -> %s" % (a, " ".join(q["rules"][a])), file=out)
    if "kernel_partitions" in doc:
        print("distinct kernel partitions:", file=out)
        for p in doc["kernel_partitions"]:
            print("  %s" % " | ".join(",".join(b) for b in p), file=out)
    if "sweep_log" in doc:
        print(
            "sweep: %d cases, bound n <= %d%s"
            % (len(doc["sweep_log"]), doc["n_bound"], " (capped)" if doc["capped"] else ""),
            file=out,
        )
        for e in doc["sweep_log"]:
            print("  n=%d k=%d: %d minimal left ideals" % (e["n"], e["k"], e["n_ideals"]), file=out)


def _render_analyze(doc: dict, out):
    print("primitive: %s" % doc["primitive"], file=out)
    if "aperiodic" in doc:
        print("aperiodic: %s" % doc["aperiodic"], file=out)
    if "height" in doc:
        print("height: %d (gcd %d)" % (doc["height"]["h"], doc["height"]["g"]), file=out)
    if "semigroup" in doc:
        sgd = doc["semigroup"]
        print(
            "semigroup: |S|=%d, column number %d, j=%d"
            % (sgd["size"], sgd["column_number"], sgd["j"]),
            file=out,
        )
    if "minimal_sets" in doc:
        ms = doc["minimal_sets"]
        print(
            "minimal sets: %s%s"
            % (
                " | ".join(",".join(x) for x in ms["sets"]),
                " (partition)" if ms["is_partition"] else "",
            ),
            file=out,
        )
        if "coincidence_partition" in ms:
            print(
                "coincidence partition: %s"
                % " | ".join(",".join(b) for b in ms["coincidence_partition"]),
                file=out,
            )
    if "outer" in doc:
        q = doc["outer"]["quotient"]
        print("canonical outer encoding (inner: %s):" % doc.get("canonical_is_inner"), file=out)
        for a in q["letters"]:
            print("  %s -> %s" % (a, " ".join(q["rules"][a])), file=out)
    if "pair_aperiodicity" in doc:
        print("pair-aperiodicity p = %d" % doc["pair_aperiodicity"]["p_theta"], file=out)
    if "aa" in doc:
        _render_aa(doc["aa"], out)
    if "bijective_inner" in doc:
        _render_bijective(doc["bijective_inner"], out)
    print("bijective sweep: %s" % doc["bijective_general"], file=out)
    for key, msg in doc["errors"].items():
        print("skipped %s: %s" % (key, msg), file=out)


# --- argument plumbing -------------------------------------------------------


def _read_sub(path: str) -> Substitution:
    if path == "-":
        return parse_file(sys.stdin.read())
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_file(fh.read())
    except OSError as e:
        raise InputError("cannot read %s: %s" % (path, e)) from e


def _parse_partition_spec(s: Substitution, spec: str) -> Partition:
    blocks = []
    for chunk in spec.split("|"):
        chunk = chunk.strip()
        if not chunk:
            raise InputError("empty partition block in %r" % spec)
        if "," in chunk:
            names = [x.strip() for x in chunk.split(",")]
        elif chunk in s.letters:
            names = [chunk]
        else:
            names = list(chunk)
        blocks.append(tuple(names))
    try:
        return Partition.from_names(s, blocks)
    except KeyError as e:
        raise InputError("unknown letter in partition spec: %s" % e) from e


def _parse_code_spec(spec: str) -> dict:
    tau = {}
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise InputError("code spec items must be letter=class, got %r" % item)
        k, v = item.split("=", 1)
        tau[k.strip()] = v.strip()
    if not tau:
        raise InputError("empty code spec")
    return tau


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="colsub",
        description="Analyze constant-length substitutions: semigroup structure, "
        "derived substitutions, and factor decisions with witnesses.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_text, with_file=True):
        p = sub.add_parser(name, help=help_text)
        if with_file:
            p.add_argument("file", help="substitution file ('-' for stdin)")
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument("--budget", type=int, default=None, help="semigroup element budget")
        return p

    add("analyze", "full structural report")
    p = add("aa-factor", "decide the aperiodic almost automorphic factor")
    p.add_argument("--cap", type=int, default=None, help="aperiodicity scan cap override")
    p = add("bijective", "decide the bijective substitution factor")
    p.add_argument("--max-n", type=int, default=None, help="cap the power sweep")
    p.add_argument("--max-k", type=int, default=None, help="cap the shift sweep")
    p.add_argument("--jobs", type=int, default=None, help="parallel sweep workers")
    p.add_argument(
        "--inner-only",
        action="store_true",
        help="only the fixed-fibre test on the substitution itself, no sweep",
    )
    p = add("semigroup", "semigroup size and structure")
    p.add_argument("--green", action="store_true", help="include kernel and Green's classes")
    p = add("collar", "the (l,r)-collared substitution")
    p.add_argument("-l", type=int, required=True, help="left collar radius")
    p.add_argument("-r", type=int, required=True, help="right collar radius")
    p = add("shift", "the k-shifted pair extension")
    p.add_argument("-k", type=int, required=True, help="shift offset")
    p = add("power", "the n-th power substitution")
    p.add_argument("-n", type=int, required=True, help="power")
    add("pure-base", "height and the induced pure base")
    p = add("encode", "inner encoding from a partition or code")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--partition", help="blocks like 'ab|cd' or 'a,b|c,d'")
    g.add_argument("--code", help="assignments like 'a=x,b=x,c=y'")
    p = add("fixtures", "bundled examples", with_file=False)
    p.add_argument("action", choices=["list", "run"])
    p.add_argument("name", nargs="?", default=None, help="restrict to one fixture")
    return ap


def _emit(args, command: str, result: dict, human, out) -> None:
    if args.json:
        doc = {"schema": SCHEMA_ID, "command": command, "result": result}
        json.dump(doc, out, indent=2, sort_keys=True)
        out.write("\n")
    else:
        human(result, out)


def _derived_result(s_doc, derived, letter_map=None) -> dict:
    doc = {"source": s_doc, "derived": sub_doc(derived)}
    if letter_map is not None:
        doc["letter_map"] = letter_map_doc(letter_map)
    return doc


def _render_derived(doc: dict, out):
    derived = doc["derived"]
    s = Substitution.from_dict({a: derived["rules"][a] for a in derived["letters"]})
    _print_sub(s, out)


def run(argv=None) -> int:
    """Entry point; returns the exit status."""
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code not in (0, None) else 0
    out = sys.stdout
    try:
        if args.command == "fixtures":
            return _cmd_fixtures(args, out)
        s = _read_sub(args.file)
        s_doc = sub_doc(s)
        if args.command == "analyze":
            result = analyze_doc(s, budget=args.budget)
            result["substitution"] = s_doc
            _emit(args, "analyze", result, _render_analyze, out)
            return EXIT_OK
        if args.command == "aa-factor":
            v = decide_aa_factor(s, budget=args.budget, aperiodicity_cap=args.cap)
            result = aa_doc(v)
            result["substitution"] = s_doc
            _emit(args, "aa-factor", result, _render_aa, out)
            return EXIT_OK
        if args.command == "bijective":
            if args.inner_only:
                v = decide_bijective_inner(s, budget=args.budget)
            else:
                v = decide_bijective_general(
                    s,
                    max_n=args.max_n,
                    max_k=args.max_k,
                    jobs=args.jobs,
                    budget=args.budget,
                )
            result = bijective_doc(v, s)
            result["substitution"] = s_doc
            _emit(args, "bijective", result, _render_bijective, out)
            return EXIT_INCONCLUSIVE if v.answer == "inconclusive" else EXIT_OK
        if args.command == "semigroup":
            result = semigroup_doc(s, args.green, budget=args.budget)
            result["substitution"] = s_doc

            def render(doc, out):
                print(
                    "|S| = %d, column number %d, j = %d"
                    % (doc["size"], doc["column_number"], doc["j"]),
                    file=out,
                )
                if "green" in doc:
                    g = doc["green"]
                    print(
                        "kernel %d, %d R-classes, %d L-classes, group order %d"
                        % (
                            g["kernel_size"],
                            g["n_r_classes"],
                            g["n_l_classes"],
                            g["group_order"],
                        ),
                        file=out,
                    )
                    print(
                        "minimal left ideals: %d" % len(g["kernel_partitions"]), file=out
                    )

            _emit(args, "semigroup", result, render, out)
            return EXIT_OK
        if args.command == "collar":
            derived, cmap = collar(s, (args.l, args.r))
            _emit(args, "collar", _derived_result(s_doc, derived, cmap), _render_derived, out)
            return EXIT_OK
        if args.command == "shift":
            derived, cmap = shift_ext(s, args.k)
            _emit(args, "shift", _derived_result(s_doc, derived, cmap), _render_derived, out)
            return EXIT_OK
        if args.command == "power":
            if args.n < 1:
                raise InputError("power must be >= 1")
            derived = power(s, args.n)
            _emit(args, "power", _derived_result(s_doc, derived), _render_derived, out)
            return EXIT_OK
        if args.command == "pure-base":
            m0, _ = fixed_point_seed(s)
            hinfo = height(power(s, m0))
            derived, cmap = pure_base(power(s, m0), hinfo)
            result = _derived_result(s_doc, derived, cmap)
            result["height"] = {"h": hinfo.h, "g": hinfo.g}
            result["power_used"] = m0

            def render(doc, out):
                print("height %d (gcd %d)" % (doc["height"]["h"], doc["height"]["g"]), file=out)
                _render_derived(doc, out)

            _emit(args, "pure-base", result, render, out)
            return EXIT_OK
        if args.command == "encode":
            if args.partition is not None:
                p = _parse_partition_spec(s, args.partition)
                enc = inner_encoding_from_partition(s, p)
            else:
                enc, _ = inner_encoding_from_code(s, _parse_code_spec(args.code))
            result = {"substitution": s_doc, "encoding": encoding_doc(enc)}

            def render(doc, out):
                e = doc["encoding"]
                print(
                    "partition: %s" % " | ".join(",".join(b) for b in e["partition"]),
                    file=out,
                )
                q = e["quotient"]
                for a in q["letters"]:
                    print("%s -> %s" % (a, " ".join(q["rules"][a])), file=out)

            _emit(args, "encode", result, render, out)
            return EXIT_OK
        raise AssertionError("unhandled command %r" % args.command)
    except ResourceBudgetError as e:
        print("budget exceeded: %s" % e, file=sys.stderr)
        return EXIT_BUDGET
    except ColsubError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_INPUT


def _cmd_fixtures(args, out) -> int:
    if args.action == "list":
        rows = [
            {"name": f.name, "file": f.filename, "description": f.description}
            for f in (fixtures_mod.REGISTRY[n] for n in fixtures_mod.names())
        ]
        if args.json:
            json.dump(
                {"schema": SCHEMA_ID, "command": "fixtures", "result": {"fixtures": rows}},
                out,
                indent=2,
                sort_keys=True,
            )
            out.write("\n")
        else:
            for row in rows:
                print("%-16s %s" % (row["name"], row["description"]), file=out)
        return EXIT_OK
    names = [args.name] if args.name else fixtures_mod.names()
    for n in names:
        if n not in fixtures_mod.REGISTRY:
            raise InputError("unknown fixture %r" % n)
    results = {}
    all_ok = True
    for n in names:
        checks = [
            {"label": label, "ok": bool(ok)} for label, ok in fixtures_mod.run_checks(n)
        ]
        results[n] = checks
        all_ok = all_ok and all(c["ok"] for c in checks)
    if args.json:
        json.dump(
            {
                "schema": SCHEMA_ID,
                "command": "fixtures",
                "result": {"checks": results, "all_ok": all_ok},
            },
            out,
            indent=2,
            sort_keys=True,
        )
        out.write("\n")
    else:
        for n in names:
            for c in results[n]:
                print("%s %-16s %s" % ("PASS" if c["ok"] else "FAIL", n, c["label"]), file=out)
    return EXIT_OK


def main() -> int:
    return run()


if __name__ == "__main__":
    sys.exit(run())
