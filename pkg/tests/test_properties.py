"""Cross-cutting invariants, run over the bundled corpus plus deterministic
and hypothesis-generated random substitutions."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import invariants
from colsub import (
    Substitution,
    allowed_words,
    column_map,
    complexity_profile,
    equivalent_up_to_renaming,
    format_rules,
    is_primitive,
    kappa_of_shift,
    parse_rules,
    power,
    shift_for_kappa,
)
from colsub import fixtures

CORPUS = [(name, fixtures.load(name)) for name in fixtures.names()] + [
    ("random-%02d" % i, s)
    for i, s in enumerate(invariants.random_primitive_substitutions(40))
]


@pytest.mark.parametrize("check", invariants.ALL_CHECKS, ids=lambda c: c.__name__)
@pytest.mark.parametrize("subject", CORPUS, ids=[n for n, _ in CORPUS])
def test_invariants(subject, check):
    _, s = subject
    check(s)


@st.composite
def substitutions(draw, max_letters=4, max_length=3):
    n = draw(st.integers(2, max_letters))
    ell = draw(st.integers(2, max_length))
    images = tuple(
        tuple(draw(st.integers(0, n - 1)) for _ in range(ell)) for _ in range(n)
    )
    return Substitution(tuple("abcdefgh"[:n]), images)


@given(substitutions())
def test_parse_format_round_trip(s):
    assert parse_rules(format_rules(s)) == s


@given(substitutions())
def test_column_maps_of_powers(s):
    for n in (1, 2):
        t = power(s, n)
        for j in range(s.length**n):
            col = column_map(s, n, j)
            assert col == tuple(t.images[a][j] for a in range(s.n_letters))


@given(substitutions())
def test_language_is_factor_closed(s):
    if not is_primitive(s):
        return
    two = allowed_words(s, 2)
    three = allowed_words(s, 3)
    for w in three:
        assert w[:2] in two and w[1:] in two
    profile = complexity_profile(s, 4)
    assert profile[0] == s.n_letters
    assert all(p <= q for p, q in zip(profile, profile[1:]))


@given(substitutions(), st.permutations(list("wxyz")))
def test_renaming_equivalence_is_found(s, perm):
    names = tuple(perm[: s.n_letters])
    t = Substitution(names, s.images)
    phi = equivalent_up_to_renaming(s, t)
    assert phi is not None
    assert tuple(phi[a] for a in s.letters) == names


@given(
    st.integers(-20, 20),
    st.integers(1, 12).filter(lambda q: q % 5 != 0),
)
def test_twist_parameter_round_trip(p, q):
    eta = fixtures.load("ex-kappa-eta")  # length 5
    target = Fraction(p, q)
    n, k, M = shift_for_kappa(eta, target)
    assert 1 <= n and 0 <= k < 5**n
    assert kappa_of_shift(eta.length, n, k) == target - M
