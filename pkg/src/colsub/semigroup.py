"""The transformation semigroup generated by the column maps of a substitution.

Transformations are tuples of letter indices (f[a] = image of a).  The product
fg means "apply g first, then f", matching the convention that the column map
of a power composes the digit columns with the most significant digit applied
first.  The kernel (minimal-rank elements) carries the Green structure used by
the deciders: R-classes are grouped by image, L-classes by induced partition,
and the Rees counting identity pins down the group order.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

from .errors import InputError, ResourceBudgetError
from .words import Substitution

Transformation = tuple[int, ...]

DEFAULT_BUDGET = 10 ** 6
BUDGET_ENV = "COLSUB_BUDGET"


def compose(f: Transformation, g: Transformation) -> Transformation:
    """fg: apply g first, then f."""
    return tuple(f[x] for x in g)


def identity(n: int) -> Transformation:
    return tuple(range(n))


def rank(f: Transformation) -> int:
    return len(set(f))


def kernel_partition(f: Transformation) -> tuple[tuple[int, ...], ...]:
    """The partition of the letters into fibres of f, blocks sorted by their
    least element."""
    fibres: dict[int, list[int]] = {}
    for a, fa in enumerate(f):
        fibres.setdefault(fa, []).append(a)
    return tuple(sorted((tuple(b) for b in fibres.values()), key=lambda b: b[0]))


def image_set(f: Transformation) -> tuple[int, ...]:
    return tuple(sorted(set(f)))


def _current_budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError("%s must be an integer, got %r" % (BUDGET_ENV, env))
    return DEFAULT_BUDGET


@dataclass
class TransformationSemigroup:
    """Closure of the column maps under composition.

    elements maps each transformation to its depth (minimal number of
    generators in a product expressing it).  level_sets[k-1] is L_k, the set
    of products of exactly k generators; the sequence is computed until it
    repeats, with the preperiod and period recorded.
    """

    generators: tuple[Transformation, ...]
    n: int
    elements: dict = field(repr=False)
    level_sets: tuple = field(repr=False)
    preperiod: int
    period: int

    def __len__(self):
        return len(self.elements)

    def __contains__(self, f):
        return f in self.elements

    def depth(self, f: Transformation) -> int:
        return self.elements[f]

    def level(self, p: int):
        """L_p for any p >= 1, folding the eventual periodicity."""
        if p < 1:
            raise InputError("level index must be >= 1")
        if p <= len(self.level_sets):
            return self.level_sets[p - 1]
        q = self.preperiod + (p - 1 - self.preperiod) % self.period
        return self.level_sets[q]


def generate(s, budget: int | None = None) -> TransformationSemigroup:
    """Generate S_theta from the column maps of a substitution (or from an
    explicit iterable of transformations) by breadth-first closure under
    right multiplication by generators.

    Raises ResourceBudgetError when the element count would exceed the budget
    (default 10^6, overridable via the COLSUB_BUDGET environment variable or
    the budget argument); never silently truncates.
    """
    if isinstance(s, Substitution):
        gens = tuple(s.columns())
        label = s.rules_text()
    else:
        gens = tuple(tuple(f) for f in s)
        label = "generators %r" % (gens,)
    if not gens:
        raise InputError("need at least one generator")
    n = len(gens[0])
    for f in gens:
        if len(f) != n or any(not (0 <= x < n) for x in f):
            raise InputError("bad transformation %r" % (f,))
    cap = _current_budget(budget)

    elements: dict[Transformation, int] = {}
    frontier: list[Transformation] = []
    for g in gens:
        if g not in elements:
            elements[g] = 1
            frontier.append(g)
    depth = 1
    while frontier:
        depth += 1
        new: list[Transformation] = []
        for f in frontier:
            for g in gens:
                h = compose(f, g)
                if h not in elements:
                    if len(elements) >= cap:
                        raise ResourceBudgetError(
                            "semigroup of %s exceeded the budget of %d elements; "
                            "raise it via %s or budget=" % (label, cap, BUDGET_ENV)
                        )
                    elements[h] = depth
                    new.append(h)
        frontier = new

    # level sets L_1, L_2, ... until the subset sequence repeats
    levels: list[frozenset] = []
    seen: dict[frozenset, int] = {}
    cur = frozenset(gens)
    preperiod = period = None
    while True:
        if cur in seen:
            preperiod = seen[cur]
            period = len(levels) - preperiod
            break
        seen[cur] = len(levels)
        levels.append(cur)
        if len(levels) > 4 * len(elements) + 64:
            raise ResourceBudgetError(
                "level-set sequence of %s did not cycle within %d steps"
                % (label, len(levels))
            )
        cur = frozenset(compose(f, g) for f in cur for g in gens)

    return TransformationSemigroup(
        generators=gens,
        n=n,
        elements=elements,
        level_sets=tuple(levels),
        preperiod=preperiod,
        period=period,
    )


@dataclass
class GreenData:
    """Green structure of the kernel (the minimal-rank elements)."""

    rank: int
    kernel: tuple
    r_classes: tuple  # grouped by image set
    l_classes: tuple  # grouped by induced partition
    idempotents: tuple
    group_order: int

    @property
    def kernel_images(self):
        return tuple(sorted(image_set(fs[0]) for fs in self.r_classes))

    @property
    def kernel_partitions(self):
        return tuple(sorted(kernel_partition(fs[0]) for fs in self.l_classes))


def green(sg: TransformationSemigroup) -> GreenData:
    """Kernel, R/L classes, idempotents, and the Rees group order."""
    c = min(rank(f) for f in sg.elements)
    kernel = tuple(sorted(f for f in sg.elements if rank(f) == c))
    by_image: dict[tuple, list] = {}
    by_part: dict[tuple, list] = {}
    for f in kernel:
        by_image.setdefault(image_set(f), []).append(f)
        by_part.setdefault(kernel_partition(f), []).append(f)
    r_classes = tuple(tuple(by_image[k]) for k in sorted(by_image))
    l_classes = tuple(tuple(by_part[k]) for k in sorted(by_part))
    idem = tuple(f for f in kernel if compose(f, f) == f)
    nr, nl = len(r_classes), len(l_classes)
    assert len(kernel) % (nr * nl) == 0, "Rees counting failed"
    g_order = len(kernel) // (nr * nl)
    # the kernel of a finite semigroup is completely simple: every H-class
    # (an R-class meets an L-class) is a group of the same order with exactly
    # one idempotent
    for rc in r_classes:
        for lc in l_classes:
            h = set(rc) & set(lc)
            assert len(h) == g_order, "H-class of unexpected size"
            assert sum(1 for f in h if compose(f, f) == f) == 1
    return GreenData(
        rank=c,
        kernel=kernel,
        r_classes=r_classes,
        l_classes=l_classes,
        idempotents=idem,
        group_order=g_order,
    )


def naive_column_number(sg: TransformationSemigroup) -> int:
    """c = the minimal rank attained in S_theta."""
    return min(rank(f) for f in sg.elements)


def j_depth(sg: TransformationSemigroup) -> int:
    """The least k such that a product of exactly k column maps has minimal
    rank (the length of the smallest minimal-rank column word)."""
    c = naive_column_number(sg)
    for p in range(1, len(sg.level_sets) + 1):
        if any(rank(f) == c for f in sg.level_sets[p - 1]):
            return p
    raise AssertionError("kernel element missing from every level set")


def has_unique_minimal_left_ideal(sg: TransformationSemigroup):
    """(True, common partition blocks) iff all kernel elements induce the same
    partition of the letters; (False, None) otherwise."""
    gd = green(sg)
    parts = gd.kernel_partitions
    if len(parts) == 1:
        return True, parts[0]
    return False, None


def idempotent_power(f: Transformation):
    """(k, f^k) with k >= 1 minimal such that f^k is idempotent."""
    powers = {f: 1}
    cur = f
    k = 1
    while True:
        if compose(cur, cur) == cur:
            return k, cur
        cur = compose(cur, f)
        k += 1
        if cur in powers:  # cycled without an idempotent: impossible
            raise AssertionError("iteration of %r found no idempotent" % (f,))
        powers[cur] = k


@dataclass
class PairAperiodicityReport:
    """Periodic pairs of letters and the lcm of their periods.

    A pair (a, b), a != b, is periodic when some product of exactly p column
    maps fixes both letters; each entry carries a witnessing column word
    (m_1, ..., m_p), meaning theta_{m_1} o ... o theta_{m_p} with m_p applied
    first.
    """

    periodic_pairs: tuple  # ((a, b, p, witness_word), ...)
    p_theta: int


def pair_aperiodicity(s: Substitution, budget: int | None = None) -> PairAperiodicityReport:
    """Scan the level sets L_p (p up to the detected preperiod + period) for
    elements fixing a pair of distinct letters; later levels repeat earlier
    subsets, so nothing new can appear past the window."""
    sg = generate(s, budget=budget)
    gens = sg.generators
    window = sg.preperiod + sg.period
    n = sg.n
    found: dict[tuple[int, int], tuple[int, tuple]] = {}
    # representative column words alongside the level elements
    reps: dict[Transformation, tuple] = {g: (m,) for m, g in enumerate(gens)}
    level = dict(reps)
    for p in range(1, window + 1):
        if p > 1:
            nxt: dict[Transformation, tuple] = {}
            for f, wf in level.items():
                for m, g in enumerate(gens):
                    h = compose(f, g)
                    if h not in nxt:
                        nxt[h] = wf + (m,)
            level = nxt
        assert frozenset(level) == sg.level_sets[p - 1]
        for f, wf in level.items():
            for a in range(n):
                if f[a] != a:
                    continue
                for b in range(a + 1, n):
                    if f[b] == b and (a, b) not in found:
                        found[(a, b)] = (p, wf)
    pairs = tuple(
        (a, b, p, wf) for (a, b), (p, wf) in sorted(found.items())
    )
    p_theta = math.lcm(*[p for (_, _, p, _) in pairs]) if pairs else 1
    return PairAperiodicityReport(periodic_pairs=pairs, p_theta=p_theta)


def kernel_is_left_zero(sg: TransformationSemigroup) -> bool:
    """True iff x o y = x for all kernel elements x, y."""
    kernel = [f for f in sg.elements if rank(f) == naive_column_number(sg)]
    return all(compose(x, y) == x for x in kernel for y in kernel)
