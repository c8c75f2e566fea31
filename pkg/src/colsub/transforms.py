"""Derived substitutions: powers, collared and shifted-pair extensions,
injectivization, height, the pure base, and the height-h suspension split.

Composite letters of derived substitutions carry their provenance: each letter
of a collared/shifted/pure-base substitution corresponds to a word over the
base alphabet, serialized in brackets (e.g. ``[ad]``, or ``[abar,d]`` when base
names have several characters).  Split letters append a phase suffix
(``[ad]_1``).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .encodings import InnerEncoding, Partition, inner_encoding_from_partition
from .errors import InputError, PreconditionError
from .words import (
    Substitution,
    Word,
    allowed_words,
    fixed_point_prefix,
    is_primitive,
)


@dataclass(frozen=True)
class CollarSpec:
    """Left/right collar widths; (0, 0) is the substitution itself."""

    l: int
    r: int

    def __post_init__(self):
        if self.l < 0 or self.r < 0:
            raise InputError("collar widths must be >= 0")

    @property
    def width(self) -> int:
        return self.l + 1 + self.r


def composite_name(base: Substitution, w: Word) -> str:
    names = base.names(w)
    if any(len(x) > 1 for x in names):
        return "[%s]" % ",".join(names)
    return "[%s]" % "".join(names)


@dataclass(frozen=True)
class CollaredLetterMap:
    """Provenance of composite letters: letter i of the derived substitution
    stands for the base word words[i]; iota projects onto the distinguished
    position (the a_0 of a collared word, the first letter of a block)."""

    base: Substitution
    words: tuple  # base word per composite letter
    center: int

    def iota(self, i: int) -> int:
        return self.words[i][self.center]

    def word_of(self, i: int) -> Word:
        return self.words[i]

    def iota_code(self) -> tuple:
        return tuple(w[self.center] for w in self.words)


def power(s: Substitution, n: int) -> Substitution:
    """theta^n by iterated substitution of the images; length ell^n."""
    if n < 1:
        raise InputError("power must be >= 1")
    if n == 1:
        return s
    images = []
    for a in range(s.n_letters):
        w: Word = (a,)
        for _ in range(n):
            w = s.apply(w)
        images.append(w)
    return Substitution(s.letters, tuple(images))


def collar(s: Substitution, spec: CollarSpec | tuple):
    """The collared extension: letters are the allowed (l+1+r)-words, and
    column m of the image of a_{-l}..a_r is the window [m-l, m+r] of
    theta(a_{-l}..a_r), indexed so that the image of a_0 starts at 0.

    Returns (substitution, letter map).
    """
    if isinstance(spec, tuple):
        spec = CollarSpec(*spec)
    k = spec.width
    letters = sorted(allowed_words(s, k))
    if not letters:
        raise InputError(
            "no allowed %d-words (length-1 substitution?); cannot collar" % k
        )
    idx = {w: i for i, w in enumerate(letters)}
    ell = s.length
    images = []
    for w in letters:
        iw = s.apply(w)  # position t of the collared word sits at t + ell*l
        img = []
        for m in range(ell):
            start = (m - spec.l) + ell * spec.l
            window = iw[start : start + k]
            assert window in idx, "collared image window is not an allowed word"
            img.append(idx[window])
        images.append(tuple(img))
    sub = Substitution(tuple(composite_name(s, w) for w in letters), tuple(images))
    return sub, CollaredLetterMap(base=s, words=tuple(letters), center=spec.l)


def shift_ext(s: Substitution, k: int):
    """The k-shifted pair extension: letters are the allowed 2-words, and
    column m of the image of a_0 a_1 is the pair at offset m+k inside
    theta(a_0 a_1).  shift_ext(s, 0) coincides with collar(s, (0, 1)).

    Returns (substitution, letter map).
    """
    ell = s.length
    if not (0 <= k <= ell - 1):
        raise InputError("shift offset must satisfy 0 <= k <= %d" % (ell - 1))
    letters = sorted(allowed_words(s, 2))
    if not letters:
        raise InputError("no allowed 2-words (length-1 substitution?)")
    idx = {w: i for i, w in enumerate(letters)}
    images = []
    for w in letters:
        iw = s.apply(w)
        img = []
        for m in range(ell):
            pair = iw[m + k : m + k + 2]
            assert pair in idx, "shifted image pair is not an allowed word"
            img.append(idx[pair])
        images.append(tuple(img))
    sub = Substitution(tuple(composite_name(s, w) for w in letters), tuple(images))
    return sub, CollaredLetterMap(base=s, words=tuple(letters), center=0)


def injectivize(s: Substitution) -> InnerEncoding:
    """Merge letters with identical image words, repeatedly, until the
    quotient is injective on letters; returned as an inner encoding."""
    n = s.n_letters
    color = list(range(n))
    while True:
        # rewrite images in current colors and merge letters with equal ones;
        # each round only coarsens, so comparing class counts detects the fixpoint
        imgs = [tuple(color[x] for x in img) for img in s.images]
        remap: dict = {}
        nxt = [None] * n
        for a in range(n):
            remap.setdefault(imgs[a], len(remap))
            nxt[a] = remap[imgs[a]]
        if len(remap) == len(set(color)):
            break
        color = nxt
    blocks: dict[int, list[int]] = {}
    for a in range(n):
        blocks.setdefault(color[a], []).append(a)
    p = Partition(tuple(tuple(v) for v in blocks.values()), n)
    return inner_encoding_from_partition(s, p)


@dataclass(frozen=True)
class HeightInfo:
    """h: the height; g: the gcd of return positions of the seed letter in
    the one-sided fixed point it generates; seed: that letter's index."""

    h: int
    g: int
    seed: int

    def __post_init__(self):
        assert self.g % self.h == 0


def height(s: Substitution, stable_len: int | None = None) -> HeightInfo:
    """The height of a primitive substitution with a theta_0-fixed letter.

    g is the gcd of the return positions of the seed letter within prefixes
    theta^m(a) of its fixed point, accepted once it is unchanged from one m to
    the next and the prefix length reaches ell * |A|^2 (overridable via
    stable_len); h is the largest divisor of g coprime to ell.
    """
    if not is_primitive(s):
        raise PreconditionError("height requires a primitive substitution")
    first = s.column(0)
    seeds = [a for a in range(s.n_letters) if first[a] == a]
    if not seeds:
        raise PreconditionError(
            "no letter is fixed by the first column; take a suitable power first"
        )
    seed = seeds[0]
    ell = s.length
    if ell == 1:
        raise PreconditionError("height of a length-1 substitution is undefined")
    min_len = stable_len if stable_len is not None else ell * s.n_letters ** 2

    w: Word = (seed,)
    prev_g = None
    g = None
    while True:
        w = s.apply(w)
        g_now = 0
        for k in range(1, len(w)):
            if w[k] == seed:
                g_now = math.gcd(g_now, k)
        if g_now == 0:
            prev_g = None  # no return yet; keep growing
            continue
        if prev_g == g_now and len(w) >= min_len:
            g = g_now
            break
        prev_g = g_now
    h = g
    while (d := math.gcd(h, ell)) > 1:
        h //= d
    if not (h < ell):
        warnings.warn(
            "height %d is not smaller than the length %d; this lies outside "
            "the usual normalization" % (h, ell),
            stacklevel=2,
        )
    return HeightInfo(h=h, g=g, seed=seed)


def pure_base(s: Substitution, h) -> tuple[Substitution, CollaredLetterMap]:
    """The pure base: letters are the h-blocks occurring at positions
    divisible by h in the fixed point, obtained by closing the seed block
    under cutting images into h-blocks; theta'(b) is theta(b) cut into ell
    blocks of length h.

    h may be a HeightInfo or a plain integer; h = 1 returns the substitution
    unchanged with the identity decoding.
    """
    if isinstance(h, HeightInfo):
        hinfo = h
    else:
        if h == 1:
            return s, CollaredLetterMap(
                base=s, words=tuple((a,) for a in range(s.n_letters)), center=0
            )
        hinfo = height(s)
        if hinfo.h != h:
            raise InputError("substitution has height %d, not %d" % (hinfo.h, h))
    hval = hinfo.h
    if hval == 1:
        return s, CollaredLetterMap(
            base=s, words=tuple((a,) for a in range(s.n_letters)), center=0
        )
    seed_block = fixed_point_prefix(s, hinfo.seed, hval)[:hval]
    ell = s.length
    order: list[Word] = [seed_block]
    seen = {seed_block}
    queue = [seed_block]
    while queue:
        blk = queue.pop(0)
        iw = s.apply(blk)  # length h*ell, cut into ell blocks of length h
        for t in range(ell):
            nb = iw[t * hval : (t + 1) * hval]
            if nb not in seen:
                seen.add(nb)
                order.append(nb)
                queue.append(nb)
    idx = {w: i for i, w in enumerate(order)}
    images = []
    for blk in order:
        iw = s.apply(blk)
        images.append(tuple(idx[iw[t * hval : (t + 1) * hval]] for t in range(ell)))
    sub = Substitution(tuple(composite_name(s, w) for w in order), tuple(images))
    assert is_primitive(sub), "the pure base of a primitive substitution is primitive"
    return sub, CollaredLetterMap(base=s, words=tuple(order), center=0)


def split_name(name: str, j: int) -> str:
    return "%s_%d" % (name, j)


def suspend_split(sp: Substitution, h: int) -> Substitution:
    """The height-h suspension of a substitution: each letter a is split into
    a_1, ..., a_h, and the concatenation of the images of a_1 .. a_h is the
    letter-split of the image of a.  When gcd(h, ell) = 1 the result has
    height h and pure base equivalent to the input."""
    if h < 1:
        raise InputError("split count must be >= 1")
    if h == 1:
        return sp
    ell = sp.length
    letters = tuple(
        split_name(sp.letters[a], j) for a in range(sp.n_letters) for j in range(1, h + 1)
    )

    def split_index(a: int, j: int) -> int:  # j is 1-based
        return a * h + (j - 1)

    images = []
    for a in range(sp.n_letters):
        flat = []
        for b in sp.images[a]:
            flat.extend(split_index(b, j) for j in range(1, h + 1))
        for j in range(h):
            images.append(tuple(flat[j * ell : (j + 1) * ell]))
    return Substitution(letters, tuple(images))
