"""Partitions of the alphabet, inner and outer encodings, minimal sets, and
the bijective-column map set.

An inner encoding is a letter code beta onto a quotient substitution eta with
beta o theta_m = eta_m o beta for every column m; the quotient of a compatible
partition, the refinement of an arbitrary letter code, the coincidence
partition of the minimal sets, and the canonical outer encoding on kernel
R-classes are all produced here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, PreconditionError
from .semigroup import compose, generate, green, image_set, naive_column_number
from .words import Substitution, allowed_words, is_primitive


@dataclass(frozen=True)
class Partition:
    """A partition of {0, ..., n-1} into disjoint blocks covering everything;
    blocks are stored sorted, ordered by least element."""

    blocks: tuple
    n: int

    def __post_init__(self):
        seen = set()
        for b in self.blocks:
            if not b:
                raise InputError("empty partition block")
            for x in b:
                if not (0 <= x < self.n) or x in seen:
                    raise InputError("partition blocks must be disjoint letter sets")
                seen.add(x)
        if len(seen) != self.n:
            raise InputError("partition blocks must cover the alphabet")
        canon = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0]))
        if canon != self.blocks:
            object.__setattr__(self, "blocks", canon)

    @classmethod
    def from_names(cls, s: Substitution, blocks) -> "Partition":
        return cls(tuple(tuple(s.index(x) for x in b) for b in blocks), s.n_letters)

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(tuple((a,) for a in range(n)), n)

    @property
    def block_of(self):
        out = [None] * self.n
        for i, b in enumerate(self.blocks):
            for x in b:
                out[x] = i
        return tuple(out)

    def names(self, s: Substitution):
        return tuple(tuple(s.letters[x] for x in b) for b in self.blocks)

    def __len__(self):
        return len(self.blocks)


def block_names(s: Substitution, blocks) -> tuple[str, ...]:
    """Deterministic display names for quotient letters: brace-wrapped block
    contents when every name stays short, positional names otherwise."""
    cand = []
    for b in blocks:
        names = [s.letters[x] for x in b]
        joined = ",".join(names) if any(len(x) > 1 for x in names) else "".join(names)
        cand.append("{%s}" % joined)
    if all(len(x) <= 16 for x in cand):
        return tuple(cand)
    return tuple("B%d" % i for i in range(len(blocks)))


@dataclass(frozen=True)
class InnerEncoding:
    """A quotient substitution together with the letter code onto it.

    code[a] is the quotient letter of source letter a; the defining
    intertwining beta(theta_m(a)) = eta_m(beta(a)) is re-checked on
    construction.
    """

    source: Substitution
    quotient: Substitution
    code: tuple

    def __post_init__(self):
        s, q, beta = self.source, self.quotient, self.code
        assert len(beta) == s.n_letters
        assert set(beta) == set(range(q.n_letters)), "code must be surjective"
        assert s.length == q.length
        for a in range(s.n_letters):
            for m in range(s.length):
                assert beta[s.images[a][m]] == q.images[beta[a]][m], (
                    "intertwining fails at letter %r, column %d" % (s.letters[a], m)
                )

    @property
    def partition(self) -> Partition:
        blocks: dict[int, list[int]] = {}
        for a, b in enumerate(self.code):
            blocks.setdefault(b, []).append(a)
        return Partition(tuple(tuple(v) for v in blocks.values()), self.source.n_letters)

    def code_by_name(self) -> dict:
        return {
            self.source.letters[a]: self.quotient.letters[self.code[a]]
            for a in range(self.source.n_letters)
        }

    @property
    def is_trivial(self) -> bool:
        """True when the quotient has a single letter."""
        return self.quotient.n_letters == 1


def inner_encoding_from_partition(s: Substitution, p: Partition) -> InnerEncoding:
    """The inner encoding defined by a compatible partition: every column must
    map each block inside a single block."""
    if p.n != s.n_letters:
        raise InputError(
            "partition is over %d letters but the substitution has %d" % (p.n, s.n_letters)
        )
    block_of = p.block_of
    for m in range(s.length):
        col = s.column(m)
        for bi, block in enumerate(p.blocks):
            targets = {block_of[col[a]] for a in block}
            if len(targets) != 1:
                raise InputError(
                    "column %d maps block {%s} into several blocks; "
                    "the partition is not compatible"
                    % (m, ",".join(s.letters[a] for a in block))
                )
    names = block_names(s, p.blocks)
    images = []
    for block in p.blocks:
        rep = block[0]
        images.append(tuple(block_of[x] for x in s.images[rep]))
    quotient = Substitution(names, tuple(images))
    return InnerEncoding(source=s, quotient=quotient, code=block_of)


def inner_encoding_from_code(s: Substitution, tau: dict):
    """The coarsest inner encoding through which a letter code tau factors.

    Starting from the partition induced by tau, blocks are split while some
    column map separates their members in the current partition (the usual
    automaton-minimization refinement, run on the generators).  Returns the
    encoding plus the residual code tau' with tau = tau' o beta.
    """
    missing = [x for x in s.letters if x not in tau]
    if missing:
        raise InputError("code does not cover letter(s): %s" % ", ".join(missing))
    n = s.n_letters
    color = [None] * n
    labels = {}
    for a in range(n):
        lab = tau[s.letters[a]]
        labels.setdefault(lab, len(labels))
        color[a] = labels[lab]
    cols = s.columns()
    while True:
        sig = {}
        nxt = [None] * n
        for a in range(n):
            key = (color[a],) + tuple(color[col[a]] for col in cols)
            sig.setdefault(key, len(sig))
            nxt[a] = sig[key]
        if nxt == color:
            break
        color = nxt
    blocks: dict[int, list[int]] = {}
    for a in range(n):
        blocks.setdefault(color[a], []).append(a)
    p = Partition(tuple(tuple(v) for v in blocks.values()), n)
    enc = inner_encoding_from_partition(s, p)
    tau_prime = {}
    for a in range(n):
        q = enc.quotient.letters[enc.code[a]]
        lab = tau[s.letters[a]]
        assert tau_prime.setdefault(q, lab) == lab, "refinement left tau ill-defined"
    return enc, tau_prime


@dataclass(frozen=True)
class MinimalSets:
    """The distinct images of the kernel elements, whether they cover the
    alphabet (essential surjectivity), and the coincidence partition obtained
    by closing the overlap relation between them."""

    sub: Substitution
    sets: tuple  # sorted tuples of letter indices
    covers_alphabet: bool
    coincidence_blocks: tuple  # blocks over the covered letters

    @property
    def is_partition(self) -> bool:
        return (
            self.covers_alphabet
            and sum(len(x) for x in self.sets) == self.sub.n_letters
        )

    @property
    def coincidence_partition(self) -> Partition:
        if not self.covers_alphabet:
            raise PreconditionError(
                "minimal sets do not cover the alphabet; "
                "the coincidence partition is only total for essentially "
                "surjective substitutions"
            )
        return Partition(self.coincidence_blocks, self.sub.n_letters)

    def sets_by_name(self):
        return tuple(tuple(self.sub.letters[a] for a in u) for u in self.sets)


def minimal_sets(s: Substitution, budget: int | None = None) -> MinimalSets:
    """Kernel images, cover flag, and overlap-closure blocks (union-find)."""
    gd = green(generate(s, budget=budget))
    sets = gd.kernel_images
    covered = sorted({a for u in sets for a in u})
    parent = {a: a for a in covered}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u in sets:
        for x in u[1:]:
            rx, ry = find(u[0]), find(x)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    blocks: dict[int, list[int]] = {}
    for a in covered:
        blocks.setdefault(find(a), []).append(a)
    coincidence = tuple(tuple(blocks[r]) for r in sorted(blocks))
    return MinimalSets(
        sub=s,
        sets=sets,
        covers_alphabet=len(covered) == s.n_letters,
        coincidence_blocks=coincidence,
    )


def associated_inner_encoding(s: Substitution, budget: int | None = None) -> InnerEncoding:
    """The inner encoding defined by the coincidence partition of the minimal
    sets; requires essential surjectivity.  The quotient provably has naive
    column number 1, which is re-checked."""
    ms = minimal_sets(s, budget=budget)
    if not ms.covers_alphabet:
        raise PreconditionError(
            "substitution is not essentially surjective: the minimal sets "
            "cover only %d of %d letters" % (
                sum(len(b) for b in ms.coincidence_blocks), s.n_letters,
            )
        )
    enc = inner_encoding_from_partition(s, ms.coincidence_partition)
    assert naive_column_number(generate(enc.quotient, budget=budget)) == 1, (
        "quotient of the coincidence partition must have column number 1"
    )
    return enc


@dataclass(frozen=True)
class OuterEncoding:
    """The canonical quotient on kernel R-classes.

    labels[i] names class i by its (lexicographically least, hence unique)
    image set; phi[m] is the action of column m on the classes; quotient is
    the induced substitution."""

    source: Substitution
    labels: tuple
    class_images: tuple  # image set (letter indices) per class
    quotient: Substitution
    phi: tuple  # per column: transformation on class indices


def canonical_outer_encoding(s: Substitution, budget: int | None = None) -> OuterEncoding:
    """Quotient substitution on kernel R-classes via [x] -> [theta_m o x];
    the result is primitive with naive column number 1 (re-checked)."""
    gd = green(generate(s, budget=budget))
    class_images = gd.kernel_images  # sorted: label order is deterministic
    idx_of_image = {img: i for i, img in enumerate(class_images)}
    members: dict[int, list] = {i: [] for i in range(len(class_images))}
    for f in gd.kernel:
        members[idx_of_image[image_set(f)]].append(f)
    cols = s.columns()
    phi = []
    for col in cols:
        action = []
        for i in range(len(class_images)):
            targets = {idx_of_image[image_set(compose(col, x))] for x in members[i]}
            assert len(targets) == 1, "outer quotient not well-defined on an R-class"
            action.append(targets.pop())
        phi.append(tuple(action))
    labels = block_names(s, class_images)
    quotient = Substitution(
        labels,
        tuple(tuple(phi[m][i] for m in range(s.length)) for i in range(len(class_images))),
    )
    assert is_primitive(quotient), "canonical outer quotient must be primitive"
    assert naive_column_number(generate(quotient, budget=budget)) == 1
    return OuterEncoding(
        source=s,
        labels=labels,
        class_images=class_images,
        quotient=quotient,
        phi=tuple(phi),
    )


def canonical_is_inner(s: Substitution, budget: int | None = None) -> bool:
    """The canonical outer encoding is inner exactly when the minimal sets
    form a partition of the alphabet."""
    return minimal_sets(s, budget=budget).is_partition


@dataclass(frozen=True)
class RSet:
    """I = {theta_{m+1} o theta_m^{-1}} for a substitution whose columns are
    all bijections, with the pointwise-disjointness flag and the counting
    check |I| * |A| vs the number of allowed 2-words."""

    maps: tuple
    pointwise_disjoint: bool
    n_pairs: int
    n_letters: int

    @property
    def size(self) -> int:
        return len(self.maps)

    @property
    def counting_ok(self) -> bool:
        return self.size * self.n_letters == self.n_pairs


def r_set(s: Substitution) -> RSet:
    cols = s.columns()
    n = s.n_letters
    for m, col in enumerate(cols):
        if len(set(col)) != n:
            raise PreconditionError(
                "column %d is not a bijection; the map set is defined only "
                "for bijective substitutions" % m
            )
    inv = []
    for col in cols:
        v = [0] * n
        for a, fa in enumerate(col):
            v[fa] = a
        inv.append(tuple(v))
    maps = sorted({compose(cols[m + 1], inv[m]) for m in range(s.length - 1)})
    disjoint = all(
        all(f[a] != g[a] for a in range(n))
        for i, f in enumerate(maps)
        for g in maps[i + 1:]
    )
    return RSet(
        maps=tuple(maps),
        pointwise_disjoint=disjoint,
        n_pairs=len(allowed_words(s, 2)),
        n_letters=n,
    )
