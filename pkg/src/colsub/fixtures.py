"""The bundled example corpus: named substitutions with their expected
structural facts encoded as runnable checks."""

from __future__ import annotations

from dataclasses import dataclass
from importlib.resources import files

from .deciders import (
    decide_aa_factor,
    decide_bijective_general,
    decide_bijective_inner,
)
from .encodings import associated_inner_encoding, canonical_outer_encoding, r_set
from .errors import PreconditionError
from .semigroup import generate, green, j_depth, naive_column_number
from .transforms import collar, height, power, pure_base, shift_ext
from .words import (
    LanguageCache,
    Substitution,
    equivalent_up_to_renaming,
    is_aperiodic,
    is_primitive,
    parse_rules,
)
from .encodings import minimal_sets


@dataclass(frozen=True)
class Fixture:
    name: str
    filename: str
    description: str


REGISTRY = {
    f.name: f
    for f in (
        Fixture("tm", "tm.sub", "Thue-Morse: 2-letter bijective, length 4"),
        Fixture(
            "tm-collared",
            "tm-collared.sub",
            "(0,1)-collar of Thue-Morse; outer encoding = period doubling",
        ),
        Fixture("ex-aacc", "ex-aacc.sub", "4 letters, length 4; minimal sets partition {ab|cd}"),
        Fixture(
            "ex-7l",
            "ex-7l.sub",
            "7 letters, length 5; overlapping minimal sets, no almost automorphic factor",
        ),
        Fixture(
            "ex-abcca",
            "ex-abcca.sub",
            "3-letter bijective, length 5; 5 allowed 2-words block any coincidence",
        ),
        Fixture(
            "ex-abacaaa",
            "ex-abacaaa.sub",
            "3-letter bijective, length 7; collared coincidence yields a 3-letter factor",
        ),
        Fixture("ex-abc", "ex-abc.sub", "cyclic 3-letter bijective, length 3"),
        Fixture("ex-aba", "ex-aba.sub", "3 letters, length 3, height 2; pure base on 2 letters"),
        Fixture(
            "ex-d4",
            "ex-d4.sub",
            "4-letter bijective, length 7, dihedral group, height 2",
        ),
        Fixture("ex-021", "ex-021.sub", "4 letters, length 3; bijective inner factor on 2 letters"),
        Fixture("ex-kappa-eta", "ex-kappa-eta.sub", "3-letter bijective, length 5"),
        Fixture(
            "ex-kappa-theta",
            "ex-kappa-theta.sub",
            "1-shifted extension of ex-kappa-eta; two minimal left ideals",
        ),
        Fixture(
            "ex-kappa-zeta",
            "ex-kappa-zeta.sub",
            "3-shifted extension of ex-kappa-theta; unique minimal left ideal",
        ),
        Fixture(
            "ex-qb",
            "ex-qb.sub",
            "6 letters, length 3, column number 2; no shifted power has a unique minimal left ideal",
        ),
        Fixture(
            "ex-hb",
            "ex-hb.sub",
            "7 letters, length 3, height 2; bijective inner factor merges a with abar",
        ),
    )
}


def names() -> list[str]:
    return sorted(REGISTRY)


def load(name: str) -> Substitution:
    if name not in REGISTRY:
        raise KeyError("unknown fixture %r; see names()" % name)
    text = (files("colsub") / "data" / "fixtures" / REGISTRY[name].filename).read_text()
    return parse_rules(text)


def _sub(d: dict) -> Substitution:
    return Substitution.from_dict(d)


def _renames(a: Substitution, b) -> bool:
    if isinstance(b, dict):
        b = _sub(b)
    return equivalent_up_to_renaming(a, b) is not None


def _blocks(s: Substitution, obj) -> tuple:
    return tuple(tuple(s.letters[a] for a in b) for b in obj)


def _check_tm(s):
    v = decide_aa_factor(s)
    sg = generate(s)
    yield "column number 2", naive_column_number(sg) == 2
    yield "aa factor: yes", v.answer
    yield "aa witness is period doubling", _renames(v.witness.quotient, {"o": "oeoo", "e": "oeoe"})
    yield "bijective inner factor: itself", decide_bijective_inner(s).answer == "yes"


def _check_tm_collared(s):
    base = load("tm")
    collared, _ = collar(base, (0, 1))
    yield "equals collar(tm,(0,1))", _renames(s, collared)
    sg = generate(s)
    gd = green(sg)
    yield "|S| = 5", len(sg) == 5
    yield "kernel size 4", len(gd.kernel) == 4
    yield "2 R-classes", len(gd.r_classes) == 2
    yield "1 L-class", len(gd.l_classes) == 1
    yield "group order 2", gd.group_order == 2
    out = canonical_outer_encoding(s)
    yield "outer encoding is period doubling", _renames(out.quotient, {"o": "oeoo", "e": "oeoe"})
    from .encodings import canonical_is_inner

    yield "outer encoding is inner here", canonical_is_inner(s)


def _check_aacc(s):
    ms = minimal_sets(s)
    yield "minimal sets {ab|cd}", ms.sets_by_name() == (("a", "b"), ("c", "d"))
    v = decide_aa_factor(s)
    yield "aa factor: yes", v.answer
    yield "witness at the uncollared stage", v.witness_spec.width == 1
    yield "witness is AACC/CACC", _renames(v.witness.quotient, {"A": "AACC", "C": "CACC"})
    yield "no bijective inner factor", decide_bijective_inner(s).answer == "no"


def _check_7l(s):
    lang = LanguageCache(s)
    yield "29 allowed 2-words", lang.complexity(2) == 29
    yield "51 allowed 3-words", lang.complexity(3) == 51
    ms = minimal_sets(s)
    yield "three overlapping triples", ms.sets_by_name() == (
        ("a", "b", "c"),
        ("c", "d", "e"),
        ("e", "f", "g"),
    ) and not ms.is_partition
    yield "coincidence partition trivial", _blocks(s, ms.coincidence_blocks) == (
        ("a", "b", "c", "d", "e", "f", "g"),
    )
    collared, _ = collar(s, (1, 1))
    yield "(1,1)-collar has 51 letters", collared.n_letters == 51
    enc = associated_inner_encoding(collared)
    pat = {"a": list("bgbaa"), "b": list("bgbaa"), "g": list("bgbaa")}
    yield "collared quotient all-images-equal", _renames(enc.quotient, pat)
    yield "collared quotient periodic", not is_aperiodic(enc.quotient)
    yield "aa factor: no", not decide_aa_factor(s).answer


def _check_abcca(s):
    info = r_set(s)
    yield "5 allowed 2-words", LanguageCache(s).complexity(2) == 5
    yield "pair-letter counting fails", not info.counting_ok
    yield "aa factor: no", not decide_aa_factor(s).answer
    v = decide_bijective_inner(s)
    yield "bijective inner factor: itself", v.answer == "yes" and len(v.partition) == 3


def _check_abacaaa(s):
    v = decide_aa_factor(s)
    yield "aa factor: yes", v.answer
    yield "witness is AABBCC*", _renames(
        v.witness.quotient, {"A": "AABBCCA", "B": "AABBCCB", "C": "AABBCCC"}
    )


def _check_abc(s):
    yield "all 9 pairs allowed", LanguageCache(s).complexity(2) == 9
    v = decide_aa_factor(s)
    yield "aa factor: yes", v.answer
    yield "witness on 3 letters", v.witness.quotient.n_letters == 3
    yield "witness aperiodic", is_aperiodic(v.witness.quotient)


def _check_aba(s):
    h = height(s)
    yield "height 2", h.h == 2
    pb, _ = pure_base(s, h)
    yield "pure base PPQ/PQP", _renames(pb, {"P": "PPQ", "Q": "PQP"})
    gd = green(generate(s))
    yield "kernel 2R x 2 x 1L", (
        len(gd.r_classes) == 2 and gd.group_order == 2 and len(gd.l_classes) == 1
    )
    ms = minimal_sets(s)
    yield "minimal sets {ab, ac} overlap", ms.sets_by_name() == (
        ("a", "b"),
        ("a", "c"),
    ) and not ms.is_partition
    out = canonical_outer_encoding(s)
    yield "outer encoding BBC/CBB", _renames(out.quotient, {"B": "BBC", "C": "CBB"})
    from .encodings import canonical_is_inner

    yield "outer encoding not inner", not canonical_is_inner(s)
    v = decide_aa_factor(s)
    yield "aa factor: yes", v.answer
    yield "suspended witness on 4 letters", v.suspended.n_letters == 4
    yield "radius-1 local rule, 5 rows", (
        v.local_rule.radius_left == 1
        and v.local_rule.radius_right == 1
        and len(v.local_rule.rows) == 5
    )


def _check_d4(s):
    h = height(s)
    yield "height 2", h.h == 2
    pb, _ = pure_base(s, h)
    paper_base = _sub(
        {"0": "3010102", "1": "2101013", "2": "2102102", "3": "3013013"}
    )
    yield "pure base matches", _renames(pb, paper_base)
    v = decide_aa_factor(s)
    yield "aa factor: yes", v.answer
    part = v.witness.partition.names(pb)
    yield "coincidence pairs {ab,cd}|{ad,cb}", part == (
        ("[ab]", "[cd]"),
        ("[ad]", "[cb]"),
    )
    yield "base witness BAAAAAB/BAABAAB", _renames(
        v.witness.quotient, {"A": "BAAAAAB", "B": "BAABAAB"}
    )
    paper_susp = _sub(
        {"A": "BbAaAaA", "B": "BbAaAaB", "a": "aAaAaBb", "b": "bAaAaBb"}
    )
    yield "suspended witness matches", _renames(v.suspended, paper_susp)
    yield "radius-1 local rule, 8 rows", (
        v.local_rule.radius_left == 1
        and v.local_rule.radius_right == 1
        and len(v.local_rule.rows) == 8
    )


def _check_021(s):
    v = decide_bijective_inner(s)
    yield "bijective inner factor: yes", v.answer == "yes"
    yield "partition {02|13}", v.partition.names(s) == (("0", "2"), ("1", "3"))
    yield "quotient aab/bba", _renames(v.encoding.quotient, {"a": "aab", "b": "bba"})
    ms = minimal_sets(s)
    yield "minimal sets {01|23} partition", ms.sets_by_name() == (
        ("0", "1"),
        ("2", "3"),
    ) and ms.is_partition
    yield "aa factor: yes", decide_aa_factor(s).answer


def _check_kappa_eta(s):
    yield "bijective", all(len(set(c)) == s.n_letters for c in s.columns())
    yield "bijective inner factor: itself", decide_bijective_inner(s).answer == "yes"
    yield "aa factor: yes", decide_aa_factor(s).answer


def _check_kappa_theta(s):
    eta = load("ex-kappa-eta")
    ext, _ = shift_ext(eta, 1)
    yield "equals shift_ext(eta,1)", _renames(s, ext)
    gd = green(generate(s))
    parts = tuple(_blocks(s, p) for p in gd.kernel_partitions)
    yield "two kernel partitions", sorted(parts) == [
        (("0", "1"), ("2", "3"), ("4", "5")),
        (("0", "5"), ("1", "3"), ("2", "4")),
    ]
    yield "no bijective inner factor", decide_bijective_inner(s).answer == "no"
    v = decide_bijective_general(s)
    yield "sweep hit at (1,3)", v.answer == "yes" and v.hit == (1, 3)
    yield "sweep witness is eta", _renames(v.encoding.quotient, eta)


def _check_kappa_zeta(s):
    theta = load("ex-kappa-theta")
    ext, _ = shift_ext(theta, 3)
    yield "equals shift_ext(theta,3)", _renames(s, ext)
    v = decide_bijective_inner(s)
    yield "unique minimal left ideal", v.answer == "yes"
    yield "quotient is eta", _renames(v.encoding.quotient, load("ex-kappa-eta"))


def _check_qb(s):
    sg = generate(s)
    yield "|S| = 12", len(sg) == 12
    yield "column number 2", naive_column_number(sg) == 2
    yield "j = 1", j_depth(sg) == 1
    v = decide_aa_factor(s)
    yield "aa factor: yes on 6 letters", v.answer and v.witness.quotient.n_letters == 6
    g = decide_bijective_general(s)
    yield "sweep: no", g.answer == "no"
    yield "sweep bound n <= 3", g.n_bound == 3
    yield "ideal counts in 2..4", all(2 <= e.n_ideals <= 4 for e in g.sweep_log)


def _check_hb(s):
    h = height(s)
    yield "height 2", h.h == 2
    v = decide_bijective_inner(s)
    yield "bijective inner factor: yes", v.answer == "yes"
    yield "partition merges a with abar", v.partition.names(s)[0] == ("a", "abar")
    q = v.encoding.quotient
    yield "quotient bijective on 6 letters", q.n_letters == 6 and all(
        len(set(c)) == 6 for c in q.columns()
    )
    try:
        decide_bijective_general(s)
        scoped = False
    except PreconditionError:
        scoped = True
    yield "general decision out of scope", scoped
    pb, _ = pure_base(s, h)
    yield "pure base on 11 letters", pb.n_letters == 11
    g = decide_bijective_general(pb)
    yield "pure-base sweep: no", g.answer == "no" and g.n_bound == 3
    yield "aa factor: yes", decide_aa_factor(s).answer


_CHECKS = {
    "tm": _check_tm,
    "tm-collared": _check_tm_collared,
    "ex-aacc": _check_aacc,
    "ex-7l": _check_7l,
    "ex-abcca": _check_abcca,
    "ex-abacaaa": _check_abacaaa,
    "ex-abc": _check_abc,
    "ex-aba": _check_aba,
    "ex-d4": _check_d4,
    "ex-021": _check_021,
    "ex-kappa-eta": _check_kappa_eta,
    "ex-kappa-theta": _check_kappa_theta,
    "ex-kappa-zeta": _check_kappa_zeta,
    "ex-qb": _check_qb,
    "ex-hb": _check_hb,
}


def run_checks(name: str) -> list[tuple[str, bool]]:
    """Run the expected-fact checks of one fixture; every substitution is
    also re-verified to be primitive."""
    s = load(name)
    results = [("primitive", is_primitive(s))]
    results.extend(_CHECKS[name](s))
    return results


def run_all() -> dict:
    return {name: run_checks(name) for name in names()}
