"""Factor deciders: almost automorphic verdicts, bijective verdicts, the
twist arithmetic, and the aggregate report."""

from fractions import Fraction

import pytest

from colsub import (
    Substitution,
    analyze,
    decide_aa_factor,
    decide_bijective_general,
    decide_bijective_inner,
    equivalent_up_to_renaming,
    kappa_of_shift,
    shift_for_kappa,
)
from colsub import fixtures
from colsub.errors import InputError, PreconditionError, ResourceBudgetError

PD = Substitution.from_dict({"a": "ab", "b": "aa"})


def quotient_matches(verdict, rules: dict) -> bool:
    return (
        equivalent_up_to_renaming(
            verdict.witness.quotient, Substitution.from_dict(rules)
        )
        is not None
    )


# ---------------------------------------------------------------- aa factor


def test_aa_tm():
    v = decide_aa_factor(fixtures.load("tm"))
    assert v.answer is True
    assert v.power_used == 1
    assert v.height_info.h == 1
    assert (v.witness_spec.l, v.witness_spec.r) == (0, 1)
    assert quotient_matches(v, {"o": "oeoo", "e": "oeoe"})
    assert [st.aperiodic for st in v.stages] == [False, True]
    assert v.suspended is None and v.local_rule is None
    assert v.r_info is not None and v.r_info.counting_ok


def test_aa_aacc():
    v = decide_aa_factor(fixtures.load("ex-aacc"))
    assert v.answer is True
    assert (v.witness_spec.l, v.witness_spec.r) == (0, 0)
    assert quotient_matches(v, {"A": "AACC", "C": "CACC"})


def test_aa_7l_no():
    v = decide_aa_factor(fixtures.load("ex-7l"))
    assert v.answer is False
    assert [(st.spec.l, st.spec.r) for st in v.stages] == [(0, 0), (0, 1), (1, 1)]
    assert all(not st.aperiodic for st in v.stages)
    assert v.witness is None


def test_aa_abcca_no_and_abacaaa_yes():
    v = decide_aa_factor(fixtures.load("ex-abcca"))
    assert v.answer is False
    w = decide_aa_factor(fixtures.load("ex-abacaaa"))
    assert w.answer is True
    assert (w.witness_spec.l, w.witness_spec.r) == (0, 1)
    assert quotient_matches(w, {"A": "AABBCCA", "B": "AABBCCB", "C": "AABBCCC"})


def test_aa_abc():
    v = decide_aa_factor(fixtures.load("ex-abc"))
    assert v.answer is True
    assert (v.witness_spec.l, v.witness_spec.r) == (0, 1)
    assert v.witness.quotient.n_letters == 3


def test_aa_height_two_cases():
    for name, n_rule_rows in (("ex-aba", 5), ("ex-d4", 8), ("ex-hb", 44)):
        v = decide_aa_factor(fixtures.load(name))
        assert v.answer is True, name
        assert v.height_info.h == 2, name
        assert (v.witness_spec.l, v.witness_spec.r) == (0, 0), name
        # the shift factor is realised over the original alphabet by a
        # suspended substitution and a sliding block code of radius h-1
        assert v.suspended is not None
        assert v.suspended.n_letters == 2 * v.witness.quotient.n_letters, name
        assert v.local_rule is not None
        assert (v.local_rule.radius_left, v.local_rule.radius_right) == (1, 1), name
        assert len(v.local_rule.rows) == n_rule_rows, name


def test_aa_twisted_pair_family():
    v = decide_aa_factor(fixtures.load("ex-kappa-eta"))
    assert v.answer is True and (v.witness_spec.l, v.witness_spec.r) == (0, 1)
    w = decide_aa_factor(fixtures.load("ex-kappa-theta"))
    assert w.answer is True and (w.witness_spec.l, w.witness_spec.r) == (0, 0)
    assert w.power_used == 3
    z = decide_aa_factor(fixtures.load("ex-kappa-zeta"))
    assert z.answer is True and (z.witness_spec.l, z.witness_spec.r) == (0, 0)
    assert z.witness.quotient.n_letters == 4


def test_aa_qb():
    v = decide_aa_factor(fixtures.load("ex-qb"))
    assert v.answer is True
    assert (v.witness_spec.l, v.witness_spec.r) == (0, 1)
    assert v.witness.quotient.n_letters == 6


def test_aa_preconditions():
    with pytest.raises(PreconditionError):
        decide_aa_factor(Substitution.from_dict({"a": "ab", "b": "bb"}))
    with pytest.raises(PreconditionError):
        decide_aa_factor(Substitution.from_dict({"a": "ab", "b": "ab"}))


def test_aa_budget():
    with pytest.raises(ResourceBudgetError):
        decide_aa_factor(fixtures.load("ex-7l"), budget=10)


# ------------------------------------------------------------- bijective


def test_bijective_inner_yes_cases():
    s = fixtures.load("ex-021")
    v = decide_bijective_inner(s)
    assert v.answer == "yes" and v.mode == "inner" and not v.trivial
    assert v.partition.names(s) == (("0", "2"), ("1", "3"))
    assert equivalent_up_to_renaming(
        v.encoding.quotient, Substitution.from_dict({"a": "aab", "b": "bba"})
    ) is not None

    tm = decide_bijective_inner(fixtures.load("tm"))
    assert tm.answer == "yes" and not tm.trivial
    assert equivalent_up_to_renaming(
        tm.encoding.quotient, fixtures.load("tm")
    ) is not None

    s_hb = fixtures.load("ex-hb")
    hb = decide_bijective_inner(s_hb)
    assert hb.answer == "yes"
    assert hb.encoding.quotient.n_letters == 6
    merged = [b for b in hb.partition.names(s_hb) if len(b) > 1]
    assert merged == [("a", "abar")]

    z = decide_bijective_inner(fixtures.load("ex-kappa-zeta"))
    assert z.answer == "yes"
    assert equivalent_up_to_renaming(
        z.encoding.quotient, fixtures.load("ex-kappa-eta")
    ) is not None


def test_bijective_inner_no_cases():
    for name in ("ex-aacc", "ex-qb", "ex-kappa-theta"):
        v = decide_bijective_inner(fixtures.load(name))
        assert v.answer == "no", name
        assert v.mode == "inner"
        assert len(v.kernel_partitions) >= 2, name
    assert len(decide_bijective_inner(fixtures.load("ex-kappa-theta")).kernel_partitions) == 2


def test_bijective_general_fixed_fibre():
    v = decide_bijective_general(fixtures.load("tm"))
    assert v.answer == "yes" and v.mode == "fixed-fibre" and v.hit == (1, 0)
    w = decide_bijective_general(fixtures.load("ex-021"))
    assert w.answer == "yes" and w.mode == "fixed-fibre" and w.hit == (1, 0)
    assert equivalent_up_to_renaming(
        w.encoding.quotient, Substitution.from_dict({"a": "aab", "b": "bba"})
    ) is not None


def test_bijective_general_sweep_hit():
    v = decide_bijective_general(fixtures.load("ex-kappa-theta"))
    assert v.answer == "yes" and v.mode == "general-sweep"
    assert v.hit == (1, 3)
    assert v.j == 1
    assert v.n_bound == 15
    assert [(e.n, e.k, e.n_ideals) for e in v.sweep_log] == [
        (1, 0, 2),
        (1, 1, 2),
        (1, 2, 2),
        (1, 3, 1),
    ]
    assert equivalent_up_to_renaming(
        v.encoding.quotient, fixtures.load("ex-kappa-eta")
    ) is not None


def test_bijective_general_exhaustive_no():
    v = decide_bijective_general(fixtures.load("ex-qb"))
    assert v.answer == "no" and v.mode == "general-sweep"
    assert not v.capped
    assert v.n_bound == 3
    counts = [e.n_ideals for e in v.sweep_log]
    assert len(counts) == 3 + 9 + 27
    assert counts[:3] == [2, 4, 2]
    assert counts[3:12] == [2, 3, 3, 4, 4, 4, 3, 3, 2]
    assert counts[12:] == [2] + [3] * 8 + [4] * 9 + [3] * 8 + [2]
    assert all(2 <= c <= 4 for c in counts)


def test_bijective_general_parallel_matches_serial():
    v = decide_bijective_general(fixtures.load("ex-kappa-theta"), jobs=2)
    assert v.answer == "yes" and v.hit == (1, 3)


def test_bijective_general_caps_give_inconclusive():
    v = decide_bijective_general(fixtures.load("ex-qb"), max_n=1)
    assert v.answer == "inconclusive" and v.capped
    w = decide_bijective_general(fixtures.load("ex-qb"), max_k=2)
    assert w.answer == "inconclusive" and w.capped


def test_bijective_general_preconditions():
    with pytest.raises(PreconditionError) as exc:
        decide_bijective_general(fixtures.load("ex-hb"))
    assert "height" in str(exc.value)
    with pytest.raises(PreconditionError) as exc2:
        decide_bijective_general(PD)
    assert "trivial" in str(exc2.value)


# ------------------------------------------------------------------ twists


def test_kappa_of_shift():
    assert kappa_of_shift(5, 1, 3) == Fraction(-3, 4)
    assert kappa_of_shift(5, 1, 1) == Fraction(-1, 4)
    assert kappa_of_shift(2, 1, 0) == Fraction(0)
    with pytest.raises(InputError):
        kappa_of_shift(5, 1, 5)
    with pytest.raises(InputError):
        kappa_of_shift(5, 1, -1)


def test_shift_for_kappa():
    eta = fixtures.load("ex-kappa-eta")
    assert shift_for_kappa(eta, Fraction(-1, 4)) == (2, 6, 0)
    assert shift_for_kappa(eta, Fraction(3, 4)) == (2, 6, 1)
    assert shift_for_kappa(eta, 0) == (1, 0, 0)
    n, k, M = shift_for_kappa(eta, Fraction(-3, 4))
    assert kappa_of_shift(eta.length, n, k) == Fraction(-3, 4) + M
    with pytest.raises(InputError):
        shift_for_kappa(eta, Fraction(1, 5))  # denominator shares a factor with 5


# ------------------------------------------------------------------ report


def test_analyze_tm():
    rep = analyze(fixtures.load("tm"))
    assert rep["primitive"] and rep["aperiodic"]
    assert rep["errors"] == {}
    assert rep["aa"].answer is True
    assert rep["bijective_inner"].answer == "yes"
    assert "subcommand" in rep["bijective_general"]
    assert rep["semigroup"]["size"] == 2
    assert rep["canonical_is_inner"] is not None


def test_analyze_collects_errors_instead_of_raising():
    rep = analyze(Substitution.from_dict({"a": "ab", "b": "bb"}))
    assert rep["primitive"] is False
    assert rep["errors"]  # aa/bijective preconditions recorded as reasons
    assert rep.get("aa") is None
