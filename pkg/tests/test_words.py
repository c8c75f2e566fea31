"""Words layer: parsing, languages, complexity, primitivity, aperiodicity."""

import pytest

from colsub import (
    LanguageCache,
    Substitution,
    allowed_words,
    column_map,
    complexity_profile,
    equivalent_up_to_renaming,
    fix_power,
    fixed_point_prefix,
    fixed_point_seed,
    format_rules,
    is_aperiodic,
    is_primitive,
    parse_rules,
    power,
    substitute,
)
from colsub import fixtures
from colsub.errors import InputError, PreconditionError

TM2 = Substitution.from_dict({"a": "ab", "b": "ba"})  # length-2 Thue-Morse


def test_substitution_basics():
    s = fixtures.load("tm")
    assert s.letters == ("a", "b")
    assert s.length == 4
    assert s.word_str(s.apply(s.word("ab"))) == "abbabaab"
    assert substitute(s, (0,)) == (0, 1, 1, 0)
    assert s.names((0, 1)) == ("a", "b")


def test_constructor_rejects_ragged_and_empty():
    with pytest.raises(InputError):
        Substitution.from_dict({"a": "ab", "b": "b"})
    with pytest.raises(InputError):
        Substitution.from_dict({})
    with pytest.raises(InputError):
        Substitution.from_dict({"a": "ax", "b": "ba"})


def test_parse_compact_and_spaced():
    s = parse_rules("a -> ab\nb -> ba\n")
    assert s == TM2
    t = parse_rules("# comment\nletters: y x\ny -> y x\nx -> x y\n")
    assert t.letters == ("y", "x")
    assert t.images == ((0, 1), (1, 0))
    u = parse_rules("abar -> abar d\nd -> d abar\n")
    assert u.letters == ("abar", "d")


def test_parse_errors():
    with pytest.raises(InputError):
        parse_rules("")
    with pytest.raises(InputError):
        parse_rules("a -> ab")  # no rule for b
    with pytest.raises(InputError):
        parse_rules("a -> ab\na -> ba\nb -> ba")  # duplicate rule
    with pytest.raises(InputError):
        parse_rules("letters: a\nletters: a\na -> aa")
    with pytest.raises(InputError):
        parse_rules("a => ab")  # not a rule line
    with pytest.raises(InputError):
        parse_rules("letters: a b\na -> ab\nb -> ba\nc -> cc")


def test_round_trip_modulo_whitespace():
    for name in fixtures.names():
        s = fixtures.load(name)
        assert parse_rules(format_rules(s)) == s


def test_column_maps_read_off_power_images():
    for name in ("tm", "ex-021", "ex-qb"):
        s = fixtures.load(name)
        for n in (1, 2):
            t = power(s, n)
            for j in range(s.length**n):
                col = column_map(s, n, j)
                assert col == tuple(t.images[a][j] for a in range(s.n_letters))


def test_language_and_complexity():
    s7 = fixtures.load("ex-7l")
    assert complexity_profile(s7, 3) == [7, 29, 51]
    lang = LanguageCache(s7)
    assert lang.complexity(2) == 29
    assert len(allowed_words(s7, 3)) == 51
    assert complexity_profile(fixtures.load("ex-abc"), 2) == [3, 9]
    assert complexity_profile(fixtures.load("ex-abcca"), 2) == [3, 5]
    assert complexity_profile(TM2, 5) == [2, 4, 6, 10, 12]


def test_primitivity():
    assert all(is_primitive(fixtures.load(n)) for n in fixtures.names())
    assert not is_primitive(Substitution.from_dict({"a": "ab", "b": "bb"}))
    assert not is_primitive(Substitution.from_dict({"a": "aa", "b": "bb"}))


def test_aperiodicity():
    assert is_aperiodic(TM2)
    assert is_aperiodic(fixtures.load("tm"))
    assert is_aperiodic(fixtures.load("ex-abcca"))
    # the shift of this one is the two-point orbit of (ab)^infinity
    assert not is_aperiodic(Substitution.from_dict({"a": "ab", "b": "ab"}))
    with pytest.raises(PreconditionError):
        is_aperiodic(Substitution.from_dict({"a": "ab", "b": "bb"}))


def test_fixed_points():
    assert fixed_point_seed(TM2) == (1, 0)
    assert fix_power(TM2) == 2  # the last-letter map is the swap
    m0, seed = fixed_point_seed(fixtures.load("ex-kappa-theta"))
    assert m0 == 3
    w = fixed_point_prefix(TM2, 0, 8)
    assert TM2.word_str(w).startswith("abbabaab")


def test_equivalence_up_to_renaming():
    s = fixtures.load("tm")
    t = Substitution.from_dict({"x": "xyyx", "y": "yxxy"})
    phi = equivalent_up_to_renaming(s, t)
    assert phi == {"a": "x", "b": "y"}
    assert equivalent_up_to_renaming(s, TM2) is None
    assert equivalent_up_to_renaming(
        TM2, Substitution.from_dict({"a": "ab", "b": "aa"})
    ) is None
