"""Constant-length substitutions, their languages, and basic word combinatorics.

A substitution is stored as a tuple of letter names plus, for each letter, the
tuple of letter *indices* making up its image.  All images must have the same
length ell >= 1.  Words are tuples of letter indices throughout; helpers
convert to and from human-readable names.

The language machinery (allowed_words / LanguageCache / complexity profile)
follows the usual convention that the language of theta is the set of factors
of words theta^m(a), closed under taking images.  Complexity counts for large
lengths are computed on a generalized suffix automaton instead of enumerating
factor sets.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .errors import InputError, PreconditionError

Word = tuple[int, ...]

_ARROW_RE = re.compile(r"\s*->\s*")


@dataclass(frozen=True)
class Substitution:
    """A constant-length substitution over a finite alphabet.

    letters  -- letter names, in display order
    images   -- images[a] is the image of letter a, as a tuple of indices
    """

    letters: tuple[str, ...]
    images: tuple[Word, ...]

    def __post_init__(self):
        if not self.letters:
            raise InputError("substitution needs at least one letter")
        if len(set(self.letters)) != len(self.letters):
            raise InputError("duplicate letter names: %r" % (self.letters,))
        for name in self.letters:
            if not name or any(ch.isspace() for ch in name) or "#" in name:
                raise InputError("bad letter name %r" % (name,))
        if len(self.images) != len(self.letters):
            raise InputError("need exactly one image per letter")
        ell = len(self.images[0])
        if ell == 0:
            raise InputError("images must be nonempty")
        n = len(self.letters)
        for name, img in zip(self.letters, self.images):
            if len(img) != ell:
                raise InputError(
                    "image of %r has length %d, expected %d" % (name, len(img), ell)
                )
            for a in img:
                if not (0 <= a < n):
                    raise InputError("image of %r uses unknown letter index %r" % (name, a))

    # --- basic accessors -------------------------------------------------

    @property
    def length(self) -> int:
        """The (constant) image length ell."""
        return len(self.images[0])

    @property
    def n_letters(self) -> int:
        return len(self.letters)

    def index(self, name: str) -> int:
        try:
            return self.letters.index(name)
        except ValueError:
            raise InputError("unknown letter %r (alphabet: %s)" % (name, ", ".join(self.letters)))

    def word(self, text) -> Word:
        """Parse a word given as a string (single-char letters), an iterable of
        names, or an iterable of indices."""
        if isinstance(text, str):
            if all(len(x) == 1 for x in self.letters):
                return tuple(self.index(ch) for ch in text)
            return tuple(self.index(tok) for tok in text.split())
        out = []
        for tok in text:
            out.append(tok if isinstance(tok, int) else self.index(tok))
        return tuple(out)

    def names(self, w: Word) -> tuple[str, ...]:
        return tuple(self.letters[a] for a in w)

    def word_str(self, w: Word) -> str:
        names = self.names(w)
        if all(len(x) == 1 for x in self.letters):
            return "".join(names)
        return " ".join(names)

    # --- acting on words -------------------------------------------------

    def apply(self, w: Word) -> Word:
        out: list[int] = []
        for a in w:
            out.extend(self.images[a])
        return tuple(out)

    def column(self, m: int) -> tuple[int, ...]:
        """The m-th column map theta_m, as a transformation a |-> theta(a)[m]."""
        if not (0 <= m < self.length):
            raise InputError("column index %d out of range [0, %d)" % (m, self.length))
        return tuple(img[m] for img in self.images)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(m) for m in range(self.length)]

    # --- construction helpers ---------------------------------------------

    @classmethod
    def from_rules(cls, rules) -> "Substitution":
        """Build from (name, image_tokens) pairs; image tokens are names."""
        pairs = list(rules)
        letters = tuple(name for name, _ in pairs)
        idx = {name: i for i, name in enumerate(letters)}
        if len(idx) != len(letters):
            raise InputError("duplicate letter names in rules")
        images = []
        for name, toks in pairs:
            img = []
            for tok in toks:
                if tok not in idx:
                    raise InputError("image of %r mentions unknown letter %r" % (name, tok))
                img.append(idx[tok])
            images.append(tuple(img))
        return cls(letters, tuple(images))

    @classmethod
    def from_dict(cls, d) -> "Substitution":
        """Build from {name: image} where image is a string (single-char
        letters) or an iterable of letter names."""
        rules = []
        for name, img in d.items():
            toks = list(img) if not isinstance(img, str) else (
                list(img) if all(len(k) == 1 for k in d) else img.split()
            )
            rules.append((name, toks))
        return cls.from_rules(rules)

    def rules_text(self) -> str:
        return "; ".join(
            "%s -> %s" % (name, self.word_str(img))
            for name, img in zip(self.letters, self.images)
        )

    def __repr__(self):
        return "Substitution(%s)" % self.rules_text()


def substitute(s: Substitution, w: Word) -> Word:
    """Apply theta once to a word."""
    return s.apply(w)


def column_map(s: Substitution, n: int, j: int) -> tuple[int, ...]:
    """The transformation a |-> theta^n(a)[j].

    Writing j in base ell with n digits (most significant first), the map is
    the composition of the corresponding column maps with the most significant
    digit's column applied first.
    """
    if n < 0:
        raise InputError("power must be >= 0")
    ell = s.length
    if not (0 <= j < ell ** n):
        raise InputError("position %d out of range [0, %d)" % (j, ell ** n))
    digits = []
    x = j
    for _ in range(n):
        digits.append(x % ell)
        x //= ell
    digits.reverse()  # most significant first
    f = tuple(range(s.n_letters))
    for d in digits:
        col = s.column(d)
        f = tuple(col[a] for a in f)
    return f


# --- language ------------------------------------------------------------


def allowed_words(s: Substitution, k: int) -> frozenset:
    """All length-k factors of the language of theta.

    Seeded with the k-factors of theta^m(a) for every letter a (m minimal with
    ell^m >= k) and closed under w |-> k-factors of theta(w).  Every k-factor
    of the language arises inside the image of some allowed k-factor once
    ell^m >= k, so the fixpoint is exact.
    """
    if k < 1:
        raise InputError("factor length must be >= 1")
    ell = s.length
    if ell == 1 and k > 1:
        # images never grow, so no word of length > 1 ever appears
        return frozenset()
    seen: set[Word] = set()
    queue: list[Word] = []

    def add_factors(w: Word):
        for i in range(len(w) - k + 1):
            f = w[i : i + k]
            if f not in seen:
                seen.add(f)
                queue.append(f)

    for a in range(s.n_letters):
        w: Word = (a,)
        while len(w) < k:
            w = s.apply(w)
        add_factors(w)
    while queue:
        add_factors(s.apply(queue.pop()))
    return frozenset(seen)


@dataclass
class LanguageCache:
    """Memoized access to the language of one substitution.

    words(k) enumerates the allowed k-factors; complexity(k) returns p(k),
    using the factor-set when already enumerated and a suffix-automaton count
    otherwise.  computed_p is a log of every p(k) this cache has established.
    """

    sub: Substitution
    _words: dict = field(default_factory=dict, repr=False)
    computed_p: dict = field(default_factory=dict)

    def words(self, k: int) -> frozenset:
        if k not in self._words:
            self._words[k] = allowed_words(self.sub, k)
            self.computed_p[k] = len(self._words[k])
        return self._words[k]

    def complexity(self, k: int) -> int:
        if k not in self.computed_p:
            if k in self._words:
                self.computed_p[k] = len(self._words[k])
            else:
                for kk, p in enumerate(complexity_profile(self.sub, k), start=1):
                    self.computed_p.setdefault(kk, p)
        return self.computed_p[k]


def _sam_count_factors(words, kmax: int) -> list[int]:
    """Number of distinct factors of each length 1..kmax over a set of words,
    via a generalized suffix automaton (transitions keyed by letter index)."""
    # state 0 is the root; parallel arrays for speed
    trans: list[dict] = [{}]
    link: list[int] = [-1]
    length: list[int] = [0]

    def clone_state(q: int, new_len: int) -> int:
        trans.append(dict(trans[q]))
        link.append(link[q])
        length.append(new_len)
        return len(trans) - 1

    def extend(last: int, c: int) -> int:
        if c in trans[last]:
            q = trans[last][c]
            if length[q] == length[last] + 1:
                return q
            cl = clone_state(q, length[last] + 1)
            p = last
            while p != -1 and trans[p].get(c) == q:
                trans[p][c] = cl
                p = link[p]
            link[q] = cl
            return cl
        trans.append({})
        link.append(-1)
        length.append(length[last] + 1)
        cur = len(trans) - 1
        p = last
        while p != -1 and c not in trans[p]:
            trans[p][c] = cur
            p = link[p]
        if p == -1:
            link[cur] = 0
        else:
            q = trans[p][c]
            if length[q] == length[p] + 1:
                link[cur] = q
            else:
                cl = clone_state(q, length[p] + 1)
                while p != -1 and trans[p].get(c) == q:
                    trans[p][c] = cl
                    p = link[p]
                link[q] = cl
                link[cur] = cl
        return cur

    for w in words:
        last = 0
        for c in w:
            last = extend(last, c)

    # state v recognizes exactly the factors of length len(link(v))+1 .. len(v)
    diff = [0] * (kmax + 2)
    for v in range(1, len(trans)):
        lo = length[link[v]] + 1
        hi = min(length[v], kmax)
        if lo <= hi:
            diff[lo] += 1
            diff[hi + 1] -= 1
    out = []
    acc = 0
    for k in range(1, kmax + 1):
        acc += diff[k]
        out.append(acc)
    return out


def complexity_profile(s: Substitution, kmax: int) -> list[int]:
    """[p(1), ..., p(kmax)] for the language of theta.

    Uses the fact that for ell^m >= kmax every factor of length <= kmax occurs
    inside theta^m(v) for an allowed 2-word v, so the profile of that finite
    pool of words is exact.  Requires a primitive substitution (so that the
    2-word pool generates the whole language).
    """
    if kmax < 1:
        raise InputError("kmax must be >= 1")
    ell = s.length
    if ell == 1:
        # single-letter images: language is just the letters themselves
        return [len(allowed_words(s, 1))] + [0] * (kmax - 1)
    m = 0
    while ell ** m < kmax:
        m += 1
    pool = []
    for v in allowed_words(s, 2) if kmax > 1 else allowed_words(s, 1):
        w = v
        for _ in range(m):
            w = s.apply(w)
        pool.append(w)
    return _sam_count_factors(pool, kmax)


# --- primitivity, fixed letters, powers ----------------------------------


def is_primitive(s: Substitution) -> bool:
    """Primitivity of the occurrence matrix, tested at the Wielandt power
    (n-1)^2 + 1: the matrix is primitive iff that power is strictly positive.
    Rows are bitsets, so the boolean product is a few machine-word ORs."""
    n = s.n_letters
    if n == 1:
        return True
    rows = []
    for img in s.images:
        bits = 0
        for a in img:
            bits |= 1 << a
        rows.append(bits)

    def matmul(A, B):
        out = []
        for a in range(n):
            acc = 0
            x = A[a]
            while x:
                b = (x & -x).bit_length() - 1
                acc |= B[b]
                x &= x - 1
            out.append(acc)
        return out

    M = None
    E = rows
    k = (n - 1) ** 2 + 1
    while k:
        if k & 1:
            M = E if M is None else matmul(M, E)
        E = matmul(E, E)
        k >>= 1
    full = (1 << n) - 1
    return all(row == full for row in M)


def _cycle_elements(f: tuple[int, ...]) -> set:
    n = len(f)
    out = set()
    for start in range(n):
        x = start
        for _ in range(n):
            x = f[x]
        # after n steps we are on the cycle
        y = f[x]
        cyc = {x}
        while y != x:
            cyc.add(y)
            y = f[y]
        out |= cyc
    return out


def fixed_point_seed(s: Substitution) -> tuple[int, int]:
    """(m0, a): the least m >= 1 such that theta^m(a) begins with a for some
    letter, together with the least such letter.  theta^m0(a) then generates a
    one-sided fixed point of theta^m0."""
    first = s.column(0)
    cyc = _cycle_elements(first)
    best = None
    for a in sorted(cyc):
        # length of a's cycle under the first-letter map
        x = first[a]
        m = 1
        while x != a:
            x = first[x]
            m += 1
        if best is None or m < best[0] or (m == best[0] and a < best[1]):
            best = (m, a)
    return best


def fix_power(s: Substitution) -> int:
    """The least m >= 1 such that theta^m fixes every letter lying on a cycle
    of the first-letter map and of the last-letter map: the lcm of all cycle
    lengths of theta_0 and theta_{ell-1}."""
    m = 1
    for col in (s.column(0), s.column(s.length - 1)):
        for a in _cycle_elements(col):
            x = col[a]
            c = 1
            while x != a:
                x = col[x]
                c += 1
            m = math.lcm(m, c)
    return m


def theta_fixed_letters(s: Substitution) -> list[tuple[str, str]]:
    """Pairs of letter names (b, a) such that, with m = fix_power(s), ba is an
    allowed 2-word, theta^m(b) ends in b and theta^m(a) begins with a.  Each
    pair seeds a two-sided fixed point of theta^m."""
    m = fix_power(s)
    first = s.column(0)
    last = s.column(s.length - 1)

    def iterate(f, a, k):
        for _ in range(k):
            a = f[a]
        return a

    pairs = []
    for (b, a) in sorted(allowed_words(s, 2)):
        if iterate(last, b, m) == b and iterate(first, a, m) == a:
            pairs.append((s.letters[b], s.letters[a]))
    return pairs


def fixed_point_prefix(s: Substitution, seed: int, min_len: int) -> Word:
    """A prefix (length >= min_len) of the one-sided fixed point generated by
    a letter with theta(seed) starting with seed."""
    if s.images[seed][0] != seed:
        raise PreconditionError(
            "letter %r is not prolongable (its image does not start with it)"
            % (s.letters[seed],)
        )
    w: Word = (seed,)
    while len(w) < min_len:
        w = s.apply(w)
    return w


# --- aperiodicity ---------------------------------------------------------


def aperiodicity_cap(s: Substitution) -> int:
    """Default length cap N for the aperiodicity scan."""
    return s.length * s.n_letters ** 2 + s.n_letters


def is_aperiodic(s: Substitution, cap: int | None = None) -> bool:
    """Decide whether the subshift of a primitive substitution is aperiodic.

    Morse-Hedlund: the shift is periodic iff p(k) <= k for some k, or
    equivalently p stalls (p(k+1) = p(k)).  For a primitive constant-length
    substitution a stall must happen by the cap, so a strictly increasing
    profile past the cap certifies aperiodicity.
    """
    if not is_primitive(s):
        raise PreconditionError("aperiodicity test requires a primitive substitution")
    if s.length == 1:
        return False
    if cap is None:
        cap = aperiodicity_cap(s)
    if cap < 1:
        raise InputError("cap must be >= 1")
    kmax = cap + 1

    def scan(profile, full: bool):
        # returns True (periodic), False (aperiodic), or None (inconclusive)
        for k in range(1, len(profile) + 1):
            p = profile[k - 1]
            if p <= k:
                return True
            if k >= 2 and p == profile[k - 2]:
                return True
        return False if full else None

    probe = min(kmax, 48)
    verdict = scan(complexity_profile(s, probe), probe == kmax)
    if verdict is None:
        verdict = scan(complexity_profile(s, kmax), True)
    return not verdict


# --- renaming-equivalence --------------------------------------------------


def equivalent_up_to_renaming(s: Substitution, t: Substitution):
    """A letter bijection phi with phi(theta_s(a)) = theta_t(phi(a)), as a
    name->name dict, or None if the substitutions are not equivalent."""
    if s.n_letters != t.n_letters or s.length != t.length:
        return None
    n = s.n_letters

    def pattern(sub, a):
        # renaming-invariant signature: equality pattern of the image plus
        # the positions where the letter maps to itself
        img = sub.images[a]
        firstpos = {}
        shape = []
        for x in img:
            if x not in firstpos:
                firstpos[x] = len(firstpos)
            shape.append(firstpos[x])
        selfpos = tuple(i for i, x in enumerate(img) if x == a)
        return (tuple(shape), selfpos)

    pat_s = [pattern(s, a) for a in range(n)]
    pat_t = [pattern(t, b) for b in range(n)]
    from collections import Counter

    if Counter(pat_s) != Counter(pat_t):
        return None

    def propagate(phi, a, b):
        stack = [(a, b)]
        while stack:
            x, y = stack.pop()
            if phi[x] is not None:
                if phi[x] != y:
                    return False
                continue
            if pat_s[x] != pat_t[y]:
                return False
            phi[x] = y
            for i in range(s.length):
                stack.append((s.images[x][i], t.images[y][i]))
        return True

    def backtrack(phi):
        used = set(v for v in phi if v is not None)
        try:
            a = phi.index(None)
        except ValueError:
            # complete; verify bijectivity and the intertwining
            if len(used) != n:
                return None
            for x in range(n):
                for i in range(s.length):
                    if phi[s.images[x][i]] != t.images[phi[x]][i]:
                        return None
            return list(phi)
        for b in range(n):
            if b in used or pat_t[b] != pat_s[a]:
                continue
            trial = list(phi)
            if propagate(trial, a, b):
                # propagation may have produced a non-injective partial map
                assigned = [v for v in trial if v is not None]
                if len(set(assigned)) != len(assigned):
                    continue
                res = backtrack(trial)
                if res is not None:
                    return res
        return None

    res = backtrack([None] * n)
    if res is None:
        return None
    return {s.letters[a]: t.letters[res[a]] for a in range(n)}


# --- rule-file parsing and serialization ----------------------------------


def parse_rules(text: str) -> Substitution:
    """Parse a substitution from rule text.

    Lines look like ``a -> abba`` (compact: one letter per character) or
    ``abar -> abar d c`` (spaced: whitespace-separated letter names).  The
    whole file is spaced as soon as any left-hand side has more than one
    character or any right-hand side contains whitespace.  ``#`` starts a
    comment; an optional ``letters: ...`` header fixes the alphabet order.
    """
    header: list[str] | None = None
    raw_rules: list[tuple[int, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("letters:"):
            if header is not None:
                raise InputError("line %d: duplicate letters: header" % lineno)
            if raw_rules:
                raise InputError("line %d: letters: header must come first" % lineno)
            header = line[len("letters:"):].split()
            if not header:
                raise InputError("line %d: empty letters: header" % lineno)
            continue
        if "->" not in line:
            raise InputError("line %d: expected 'letter -> image', got %r" % (lineno, raw.strip()))
        lhs, rhs = _ARROW_RE.split(line, maxsplit=1)
        lhs = lhs.strip()
        rhs = rhs.strip()
        if not lhs or len(lhs.split()) != 1:
            raise InputError("line %d: left-hand side must be a single letter name" % lineno)
        if not rhs:
            raise InputError("line %d: empty image" % lineno)
        raw_rules.append((lineno, lhs, rhs))
    if not raw_rules:
        raise InputError("no rules found")

    spaced = any(len(lhs) > 1 for _, lhs, _ in raw_rules) or any(
        len(rhs.split()) > 1 for _, _, rhs in raw_rules
    )
    if header is not None and any(len(x) > 1 for x in header):
        spaced = True

    order = header if header is not None else [lhs for _, lhs, _ in raw_rules]
    if len(set(order)) != len(order):
        raise InputError("duplicate letter in alphabet order")
    rules_by_name = {}
    for lineno, lhs, rhs in raw_rules:
        if lhs in rules_by_name:
            raise InputError("line %d: duplicate rule for %r" % (lineno, lhs))
        toks = rhs.split() if spaced else list(rhs)
        rules_by_name[lhs] = (lineno, toks)
    missing = [x for x in order if x not in rules_by_name]
    if missing:
        raise InputError("no rule for letter(s): %s" % ", ".join(missing))
    extra = [x for x in rules_by_name if x not in order]
    if extra:
        raise InputError(
            "line %d: rule for %r not in letters: header"
            % (rules_by_name[extra[0]][0], extra[0])
        )
    ordered = []
    for name in order:
        lineno, toks = rules_by_name[name]
        for tok in toks:
            if tok not in rules_by_name:
                raise InputError("line %d: image of %r mentions unknown letter %r" % (lineno, name, tok))
        ordered.append((name, toks))
    return Substitution.from_rules(ordered)


def format_rules(s: Substitution) -> str:
    """Serialize a substitution to rule text that parse_rules round-trips."""
    spaced = any(len(x) > 1 for x in s.letters)
    lines = []
    if spaced:
        lines.append("letters: " + " ".join(s.letters))
    for name, img in zip(s.letters, s.images):
        names = s.names(img)
        rhs = " ".join(names) if spaced else "".join(names)
        lines.append("%s -> %s" % (name, rhs))
    return "\n".join(lines) + "\n"
