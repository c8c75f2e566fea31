"""Reusable structural invariants for substitution analysis.

Each ``check_*`` function asserts a mathematical identity that must hold for
every primitive constant-length substitution.  They are shared between the
per-module property tests and the final whole-corpus gate, so a regression
anywhere in the pipeline shows up as a named invariant violation.
"""

from __future__ import annotations

import random

from colsub import (
    Substitution,
    allowed_words,
    aperiodicity_cap,
    associated_inner_encoding,
    collar,
    column_map,
    fixed_point_prefix,
    fixed_point_seed,
    generate,
    green,
    has_unique_minimal_left_ideal,
    height,
    is_aperiodic,
    is_primitive,
    power,
    pure_base,
    shift_ext,
)
from colsub.errors import PreconditionError
from colsub.semigroup import compose, idempotent_power, image_set, kernel_partition

ALPHABET = "abcdefghij"


def random_primitive_substitutions(
    count: int, seed: int = 20260818, max_letters: int = 5, max_length: int = 4
) -> list[Substitution]:
    """A deterministic corpus of random primitive substitutions."""
    rng = random.Random(seed)
    out: list[Substitution] = []
    while len(out) < count:
        n = rng.randint(2, max_letters)
        ell = rng.randint(2, max_length)
        s = Substitution(
            tuple(ALPHABET[:n]),
            tuple(tuple(rng.randrange(n) for _ in range(ell)) for _ in range(n)),
        )
        if is_primitive(s):
            out.append(s)
    return out


def check_semigroup_closure(s: Substitution) -> None:
    """Every product of two semigroup elements is again an element."""
    sg = generate(s)
    els = list(sg.elements)
    eset = set(els)
    if len(els) <= 64:
        pairs = ((f, g) for f in els for g in els)
    else:
        rng = random.Random(7)
        pairs = ((rng.choice(els), rng.choice(els)) for _ in range(2000))
    for f, g in pairs:
        assert compose(f, g) in eset


def check_kernel_of_powers(s: Substitution, nmax: int = 3) -> None:
    """The minimal rank and the set of kernel partitions do not change when
    the substitution is replaced by a power."""
    base = green(generate(s))
    base_parts = set(base.kernel_partitions)
    for n in range(2, nmax + 1):
        gd = green(generate(power(s, n)))
        assert gd.rank == base.rank
        assert set(gd.kernel_partitions) == base_parts


def check_unique_ideal_power_invariance(s: Substitution, nmax: int = 3) -> None:
    """Uniqueness of the minimal left ideal is a power invariant, and so is
    the common kernel partition when it exists."""
    base = has_unique_minimal_left_ideal(generate(s))
    for n in range(2, nmax + 1):
        assert has_unique_minimal_left_ideal(generate(power(s, n))) == base


def check_rees_identities(s: Substitution) -> None:
    """The kernel is completely simple: every element sits in a group whose
    identity shares its image and partition, and a product takes its image
    from the left factor and its partition from the right factor."""
    gd = green(generate(s))
    kernel = list(gd.kernel)
    kset = set(kernel)
    for a in kernel:
        _, e = idempotent_power(a)
        assert e in kset
        assert compose(e, a) == a
        assert compose(a, e) == a
        assert kernel_partition(e) == kernel_partition(a)
        assert image_set(e) == image_set(a)
    sample = kernel[:40]
    for a in sample:
        for b in sample:
            ab = compose(a, b)
            assert ab in kset
            assert image_set(ab) == image_set(a)
            assert kernel_partition(ab) == kernel_partition(b)


def check_level_sets_are_power_columns(s: Substitution, pmax: int = 3) -> None:
    """The p-th level set of the generated semigroup is exactly the set of
    column maps of the p-th power."""
    sg = generate(s)
    for p in range(1, pmax + 1):
        idx = p - 1
        if idx >= len(sg.level_sets):
            idx = sg.preperiod + (idx - sg.preperiod) % sg.period
        cols = frozenset(column_map(s, p, j) for j in range(s.length**p))
        assert sg.level_sets[idx] == cols


def check_intertwining(s: Substitution) -> None:
    """Derived substitutions intertwine with their base through the recorded
    letter maps: centre projection for collars, window projections for shift
    extensions, block concatenation for the pure base."""
    for spec in ((0, 1), (1, 1)):
        t, cm = collar(s, spec)
        width = spec[0] + 1 + spec[1]
        lang = allowed_words(s, width)
        c = cm.center
        for i, w in enumerate(cm.words):
            assert w in lang
            centres = tuple(cm.words[x][c] for x in t.images[i])
            assert centres == s.apply((w[c],))
    for k in range(s.length):
        t, cm = shift_ext(s, k)
        for i, w in enumerate(cm.words):
            iw = s.apply(w)
            firsts = tuple(cm.words[x][0] for x in t.images[i])
            seconds = tuple(cm.words[x][1] for x in t.images[i])
            assert firsts == iw[k : k + s.length]
            assert seconds == iw[k + 1 : k + 1 + s.length]
    if not is_aperiodic(s):
        return  # height normalization is only meaningful for aperiodic shifts
    m0, _ = fixed_point_seed(s)
    powered = power(s, m0)
    hi = height(powered)
    if hi.h > 1:
        pb, pm = pure_base(powered, hi)
        for i in range(pb.n_letters):
            img = tuple(x for b in pb.images[i] for x in pm.words[b])
            assert img == powered.apply(pm.words[i])


def check_inner_encoding_of_powers(s: Substitution, nmax: int = 3) -> None:
    """The coincidence-class encoding of a power is the power of the
    coincidence-class encoding (same letter classes, powered quotient)."""
    try:
        base = associated_inner_encoding(s)
    except PreconditionError:
        base = None
    for n in range(2, nmax + 1):
        try:
            enc = associated_inner_encoding(power(s, n))
        except PreconditionError:
            assert base is None
            continue
        assert base is not None
        assert enc.code == base.code
        assert enc.quotient == power(base.quotient, n)


def check_aperiodicity_against_prefix_oracle(s: Substitution) -> None:
    """The complexity-based aperiodicity decision agrees with a direct
    periodicity scan of a long fixed-point prefix."""
    if not is_primitive(s) or s.length == 1:
        return
    verdict = is_aperiodic(s)
    cap = aperiodicity_cap(s)
    m0, a = fixed_point_seed(s)
    w = fixed_point_prefix(power(s, m0), a, 9 * cap)
    periodic = any(
        all(w[i] == w[i + p] for i in range(len(w) - p)) for p in range(1, cap + 1)
    )
    assert verdict == (not periodic)


ALL_CHECKS = (
    check_semigroup_closure,
    check_kernel_of_powers,
    check_unique_ideal_power_invariance,
    check_rees_identities,
    check_level_sets_are_power_columns,
    check_intertwining,
    check_inner_encoding_of_powers,
    check_aperiodicity_against_prefix_oracle,
)
