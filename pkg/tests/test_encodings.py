"""Inner and outer encodings, minimal sets, coincidence blocks, map sets."""

import pytest

from colsub import (
    Partition,
    Substitution,
    associated_inner_encoding,
    canonical_is_inner,
    canonical_outer_encoding,
    equivalent_up_to_renaming,
    inner_encoding_from_code,
    inner_encoding_from_partition,
    minimal_sets,
    r_set,
)
from colsub import fixtures
from colsub.errors import InputError, PreconditionError


def test_partition_canonical_form():
    p = Partition(((3, 1), (2, 0)), 4)
    assert p.blocks == ((0, 2), (1, 3))
    assert p.block_of == (0, 1, 0, 1)
    assert len(p) == 2
    assert Partition.discrete(3).blocks == ((0,), (1,), (2,))
    s = fixtures.load("ex-021")
    q = Partition.from_names(s, (("0", "2"), ("1", "3")))
    assert q.blocks == ((0, 2), (1, 3))
    assert q.names(s) == (("0", "2"), ("1", "3"))


def test_partition_errors():
    with pytest.raises(InputError):
        Partition(((0, 1), (1, 2)), 3)  # overlap
    with pytest.raises(InputError):
        Partition(((0,), (2,)), 3)  # does not cover
    with pytest.raises(InputError):
        Partition(((0,), ()), 1)  # empty block


def test_inner_encoding_from_partition():
    s = fixtures.load("ex-021")
    enc = inner_encoding_from_partition(s, Partition.from_names(s, (("0", "2"), ("1", "3"))))
    assert enc.code == (0, 1, 0, 1)
    assert not enc.is_trivial
    assert equivalent_up_to_renaming(
        enc.quotient, Substitution.from_dict({"a": "aab", "b": "bba"})
    ) is not None
    with pytest.raises(InputError):
        inner_encoding_from_partition(s, Partition.from_names(s, (("0", "3"), ("1", "2"))))


def test_inner_encoding_from_code_refines():
    s = Substitution.from_dict({"a": "ab", "b": "cb", "c": "ac"})
    enc, tau_prime = inner_encoding_from_code(s, {"a": "x", "b": "x", "c": "y"})
    assert enc.code == (0, 1, 2)  # the merge of a and b is not compatible
    assert equivalent_up_to_renaming(enc.quotient, s) is not None
    assert tau_prime == {"{a}": "x", "{b}": "x", "{c}": "y"}
    t = fixtures.load("tm")
    enc2, tau2 = inner_encoding_from_code(t, {"a": "x", "b": "x"})
    assert enc2.is_trivial and enc2.quotient.n_letters == 1
    assert set(tau2.values()) == {"x"}


def test_minimal_sets():
    ms = minimal_sets(fixtures.load("ex-aacc"))
    assert ms.sets_by_name() == (("a", "b"), ("c", "d"))
    assert ms.covers_alphabet and ms.is_partition

    ms_aba = minimal_sets(fixtures.load("ex-aba"))
    assert ms_aba.sets_by_name() == (("a", "b"), ("a", "c"))
    assert ms_aba.covers_alphabet and not ms_aba.is_partition
    assert len(ms_aba.coincidence_partition) == 1  # overlap closure merges all

    ms7 = minimal_sets(fixtures.load("ex-7l"))
    assert ms7.sets_by_name() == (("a", "b", "c"), ("c", "d", "e"), ("e", "f", "g"))
    assert ms7.covers_alphabet and not ms7.is_partition
    assert len(ms7.coincidence_partition) == 1


def test_associated_inner_encoding():
    enc = associated_inner_encoding(fixtures.load("ex-aacc"))
    assert enc.code == (0, 0, 1, 1)
    assert equivalent_up_to_renaming(
        enc.quotient, Substitution.from_dict({"A": "AACC", "C": "CACC"})
    ) is not None
    # overlapping minimal sets close up to the trivial quotient
    enc_aba = associated_inner_encoding(fixtures.load("ex-aba"))
    assert enc_aba.is_trivial and enc_aba.quotient.n_letters == 1


def test_canonical_outer_encoding():
    o = canonical_outer_encoding(fixtures.load("tm-collared"))
    assert equivalent_up_to_renaming(
        o.quotient, Substitution.from_dict({"o": "oeoo", "e": "oeoe"})
    ) is not None
    assert canonical_is_inner(fixtures.load("tm-collared"))

    o_aba = canonical_outer_encoding(fixtures.load("ex-aba"))
    assert equivalent_up_to_renaming(
        o_aba.quotient, Substitution.from_dict({"B": "BBC", "C": "CBB"})
    ) is not None
    assert not canonical_is_inner(fixtures.load("ex-aba"))


def test_r_set():
    rs = r_set(fixtures.load("tm"))
    assert rs.size == 2
    assert rs.pointwise_disjoint
    assert rs.n_pairs == 4
    assert rs.counting_ok

    rs2 = r_set(fixtures.load("ex-abcca"))
    assert rs2.n_pairs == 5
    assert not rs2.counting_ok

    with pytest.raises(PreconditionError):
        r_set(Substitution.from_dict({"a": "ab", "b": "aa"}))
