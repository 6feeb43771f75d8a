"""Alphabets, finite words, substitution morphisms and their fixed points.

Finite words are plain Python strings; every letter of an alphabet is a
single character.  All matrix and counting arithmetic in this module is
exact integer arithmetic (numpy is used only for 0/1 masks in the cube
scanner).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

MAX_ALPHABET_SIZE = 10


class NotProlongableError(ValueError):
    """The morphism does not extend the requested letter to an infinite word."""


class NotRecurrentError(ValueError):
    """Fewer than two occurrences of the factor within the horizon."""


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of single-character letters."""

    letters: tuple[str, ...]

    def __post_init__(self):
        if not self.letters:
            raise ValueError("alphabet must be nonempty")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError(f"duplicate letters in {self.letters!r}")
        for c in self.letters:
            if len(c) != 1 or c.isspace():
                raise ValueError(f"letters must be single symbols, got {c!r}")
        if len(self.letters) > MAX_ALPHABET_SIZE:
            raise ValueError(f"alphabets larger than {MAX_ALPHABET_SIZE} letters are not supported")

    @property
    def size(self) -> int:
        return len(self.letters)

    def index(self, letter: str) -> int:
        try:
            return self.letters.index(letter)
        except ValueError:
            raise ValueError(f"{letter!r} is not a letter of {self.letters!r}") from None

    def check_word(self, word: str) -> str:
        for c in word:
            if c not in self.letters:
                raise ValueError(f"{c!r} is not a letter of {self.letters!r}")
        return word


@dataclass(frozen=True)
class Morphism:
    """Monoid endomorphism of the free monoid over ``alphabet``, given letterwise."""

    alphabet: Alphabet
    images: dict[str, str]

    def __post_init__(self):
        for c in self.alphabet.letters:
            if c not in self.images:
                raise ValueError(f"no image given for letter {c!r}")
        for c, img in self.images.items():
            self.alphabet.index(c)
            self.alphabet.check_word(img)

    def apply(self, word: str) -> str:
        images = self.images
        return "".join(images[c] for c in word)

    def iterate(self, word: str, n: int) -> str:
        for _ in range(n):
            word = self.apply(word)
        return word


def make_morphism(letters: str, **images: str) -> Morphism:
    """Convenience constructor: ``make_morphism("xy", x="xy", y="yyx")``."""
    return Morphism(Alphabet(tuple(letters)), dict(images))


# ---------------------------------------------------------------------------
# mortality, prolongability, primitivity


def mortal_letters(m: Morphism) -> frozenset[str]:
    """Letters erased by some iterate of the morphism."""
    mortal: set[str] = set()
    changed = True
    while changed:
        changed = False
        for c in m.alphabet.letters:
            if c not in mortal and all(ch in mortal for ch in m.images[c]):
                mortal.add(c)
                changed = True
    return frozenset(mortal)


def is_prolongable(m: Morphism, letter: str) -> bool:
    """True if the image of ``letter`` is ``letter + tail`` with a non-mortal tail."""
    img = m.images[letter]
    if len(img) < 2 or img[0] != letter:
        return False
    mortal = mortal_letters(m)
    return any(c not in mortal for c in img[1:])


def incidence_matrix(m: Morphism) -> tuple[tuple[int, ...], ...]:
    """Entry (i, j) counts occurrences of letter i in the image of letter j."""
    letters = m.alphabet.letters
    return tuple(
        tuple(m.images[col].count(row) for col in letters) for row in letters
    )


def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def mat_vec(a, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in a)


def mat_power_vec(a, v, n):
    """a^n applied to v, by repeated multiplication (exact)."""
    for _ in range(n):
        v = mat_vec(a, v)
    return v


def exact_det(matrix) -> int:
    """Determinant by fraction-free (Bareiss) integer elimination."""
    n = len(matrix)
    a = [list(map(int, row)) for row in matrix]
    for row in a:
        if len(row) != n:
            raise ValueError("matrix must be square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_primitive(m: Morphism) -> bool:
    """Every letter eventually occurs in every letter's iterated image.

    Decided by reachability of the incidence matrix: the sum M + M^2 + ... + M^(d^2)
    must be entrywise positive.
    """
    mat = incidence_matrix(m)
    d = m.alphabet.size
    acc = [[0] * d for _ in range(d)]
    power = mat
    for _ in range(d * d):
        for i in range(d):
            for j in range(d):
                acc[i][j] += power[i][j]
        power = _mat_mul(power, mat)
    return all(acc[i][j] > 0 for i in range(d) for j in range(d))


@dataclass(frozen=True)
class MorphismReport:
    mortal: frozenset[str]
    prolongable: tuple[str, ...]
    primitive: bool
    matrix: tuple[tuple[int, ...], ...]
    det: int


def analyze_morphism(m: Morphism) -> MorphismReport:
    """Mortality, prolongability, primitivity, incidence matrix and its determinant."""
    return MorphismReport(
        mortal=mortal_letters(m),
        prolongable=tuple(c for c in m.alphabet.letters if is_prolongable(m, c)),
        primitive=is_primitive(m),
        matrix=incidence_matrix(m),
        det=exact_det(incidence_matrix(m)),
    )


# ---------------------------------------------------------------------------
# Parikh vectors and weights


def parikh(alphabet: Alphabet, word: str) -> tuple[int, ...]:
    """Occurrence counts of each alphabet letter, in alphabet order."""
    alphabet.check_word(word)
    return tuple(word.count(c) for c in alphabet.letters)


def check_weights(alphabet: Alphabet, weights) -> tuple[int, ...]:
    weights = tuple(int(w) for w in weights)
    if len(weights) != alphabet.size:
        raise ValueError(f"expected {alphabet.size} weights, got {len(weights)}")
    if any(w < 1 for w in weights):
        raise ValueError("weights must be positive integers")
    return weights


def word_weight(alphabet: Alphabet, word: str, weights) -> int:
    """Dot product of the weight vector with the Parikh vector of the word."""
    weights = check_weights(alphabet, weights)
    return sum(w * c for w, c in zip(weights, parikh(alphabet, word)))


# ---------------------------------------------------------------------------
# fixed points and prefix streams


def fixed_point_prefix(m: Morphism, start: str, n: int) -> str:
    """First ``n`` letters of the infinite fixed point of ``m`` beginning with ``start``.

    The word is built as start, tail, image(tail), image^2(tail), ... where
    image(start) = start + tail; extending ``n`` never changes earlier letters.
    """
    if n < 0:
        raise ValueError("length must be nonnegative")
    if not is_prolongable(m, start):
        raise NotProlongableError(f"morphism is not prolongable on {start!r}")
    if n == 0:
        return ""
    pieces = [start]
    total = 1
    block = m.images[start][1:]
    while total < n:
        pieces.append(block)
        total += len(block)
        block = m.apply(block)
    return "".join(pieces)[:n]


class PrefixStream:
    """Deterministic, monotone generator of prefixes of a right-infinite word.

    Extension is serialized under a lock; readers always observe a consistent
    immutable prefix.  Subclasses supply ``_grow`` returning the next chunk.
    """

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self._lock = threading.Lock()
        self._chunks: list[str] = []
        self._length = 0
        self._cache = ""

    def _grow(self) -> str:
        raise NotImplementedError

    def _ensure(self, n: int):
        if len(self._cache) >= n:
            return
        with self._lock:
            while self._length < n:
                chunk = self._grow()
                if not chunk:
                    raise RuntimeError("stream stopped growing")
                self._chunks.append(chunk)
                self._length += len(chunk)
            if len(self._cache) < self._length:
                joined = "".join([self._cache] + self._chunks) if self._cache else "".join(self._chunks)
                self._cache = joined
                self._chunks = []
                self._length = len(joined)

    def prefix(self, n: int) -> str:
        self._ensure(n)
        return self._cache[:n]

    def slice(self, start: int, stop: int) -> str:
        """Letters at 0-based positions [start, stop)."""
        self._ensure(stop)
        return self._cache[start:stop]


class MorphicStream(PrefixStream):
    """Prefixes of the fixed point of a morphism prolongable on ``start``."""

    def __init__(self, morphism: Morphism, start: str):
        super().__init__(morphism.alphabet)
        if not is_prolongable(morphism, start):
            raise NotProlongableError(f"morphism is not prolongable on {start!r}")
        self.morphism = morphism
        self.start = start
        self._block = morphism.images[start][1:]
        self._chunks = [start]
        self._length = 1

    def _grow(self) -> str:
        chunk = self._block
        self._block = self.morphism.apply(chunk)
        return chunk


class PeriodicStream(PrefixStream):
    """The periodic word ``period`` repeated forever."""

    def __init__(self, period: str, alphabet: Alphabet | None = None):
        if not period:
            raise ValueError("period must be nonempty")
        if alphabet is None:
            seen = tuple(dict.fromkeys(period))
            alphabet = Alphabet(seen)
        alphabet.check_word(period)
        super().__init__(alphabet)
        self.period = period

    def _grow(self) -> str:
        return self.period


# ---------------------------------------------------------------------------
# factor sets and factor statistics


@dataclass(frozen=True, eq=False)
class FactorSet:
    """All factors of length <= ell seen in a fixed prefix (always includes the
    empty word, so the set is closed under taking subwords)."""

    ell: int
    horizon: int
    factors: frozenset[str]
    stabilized: bool | None = None

    def __contains__(self, word: str) -> bool:
        if len(word) > self.ell:
            raise ValueError(f"factor set only covers lengths <= {self.ell}")
        return word in self.factors

    def of_length(self, n: int) -> frozenset[str]:
        return frozenset(f for f in self.factors if len(f) == n)

    def count(self, n: int) -> int:
        return sum(1 for f in self.factors if len(f) == n)


def _slice_factors(text: str, ell: int) -> set[str]:
    out = {""}
    for k in range(1, ell + 1):
        out.update(text[i : i + k] for i in range(len(text) - k + 1))
    return out


def factors(stream: PrefixStream, ell: int, horizon: int, check_stabilization: bool = False) -> FactorSet:
    """Distinct factors of length <= ell within the first ``horizon`` letters.

    With ``check_stabilization`` the horizon is doubled once and the flag records
    whether that added any new factor.  Absence from the set only means "not seen
    within the horizon".
    """
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    if horizon < ell:
        raise ValueError("horizon must be at least ell")
    found = _slice_factors(stream.prefix(horizon), ell)
    stabilized = None
    if check_stabilization:
        stabilized = _slice_factors(stream.prefix(2 * horizon), ell) == found
    return FactorSet(ell, horizon, frozenset(found), stabilized)


@dataclass(frozen=True)
class CubeCheck:
    is_cube_free: bool
    position: int | None = None  # 1-based start of the first cube
    period: int | None = None


def _codes(word: str) -> np.ndarray:
    return np.frombuffer(word.encode("utf-32-le"), dtype=np.uint32)


def is_cube_free(word: str) -> CubeCheck:
    """True iff no nonempty u has uuu as a factor; otherwise the first violation."""
    n = len(word)
    if n < 3:
        return CubeCheck(True)
    arr = _codes(word)
    best: tuple[int, int] | None = None
    for p in range(1, n // 3 + 1):
        eq = arr[:-p] == arr[p:]
        # a cube of period p starts at i iff word[i+t] == word[i+t+p] for t < 2p
        sums = np.concatenate(([0], np.cumsum(eq, dtype=np.int64)))
        hits = np.flatnonzero(sums[2 * p :] - sums[: -2 * p] == 2 * p)
        if hits.size:
            i = int(hits[0])
            if best is None or (i, p) < best:
                best = (i, p)
    if best is None:
        return CubeCheck(True)
    return CubeCheck(False, best[0] + 1, best[1])


def recurrence_gap(stream: PrefixStream, factor: str, horizon: int) -> int:
    """Maximum gap between consecutive occurrence starts of ``factor`` in the prefix."""
    if not factor:
        raise ValueError("factor must be nonempty")
    text = stream.prefix(horizon)
    starts = []
    i = text.find(factor)
    while i != -1:
        starts.append(i)
        i = text.find(factor, i + 1)
    if len(starts) < 2:
        raise NotRecurrentError(
            f"{factor!r} occurs {len(starts)} time(s) within horizon {horizon}"
        )
    return max(b - a for a, b in zip(starts, starts[1:]))


def subword_complexity(stream: PrefixStream, n: int, horizon: int) -> int:
    """Number of distinct length-n factors within the first ``horizon`` letters."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if horizon < n:
        raise ValueError("horizon must be at least n")
    if n == 0:
        return 1
    text = stream.prefix(horizon)
    return len({text[i : i + n] for i in range(len(text) - n + 1)})


class SuffixAutomaton:
    """Online index of all factors of a word.

    Gives O(|query|) factor membership and distinct-factor counts for every
    length at once; results agree with naive scanning by construction.
    """

    __slots__ = ("link", "length", "trans", "last")

    def __init__(self, text: str = ""):
        self.link = [-1]
        self.length = [0]
        self.trans: list[dict[str, int]] = [{}]
        self.last = 0
        for ch in text:
            self.extend(ch)

    def extend(self, ch: str):
        cur = len(self.length)
        self.length.append(self.length[self.last] + 1)
        self.link.append(-1)
        self.trans.append({})
        p = self.last
        while p != -1 and ch not in self.trans[p]:
            self.trans[p][ch] = cur
            p = self.link[p]
        if p == -1:
            self.link[cur] = 0
        else:
            q = self.trans[p][ch]
            if self.length[p] + 1 == self.length[q]:
                self.link[cur] = q
            else:
                clone = len(self.length)
                self.length.append(self.length[p] + 1)
                self.link.append(self.link[q])
                self.trans.append(dict(self.trans[q]))
                while p != -1 and self.trans[p].get(ch) == q:
                    self.trans[p][ch] = clone
                    p = self.link[p]
                self.link[q] = clone
                self.link[cur] = clone
        self.last = cur

    def contains(self, word: str) -> bool:
        state = 0
        for ch in word:
            nxt = self.trans[state].get(ch)
            if nxt is None:
                return False
            state = nxt
        return True

    def factor_counts(self, max_len: int) -> list[int]:
        """counts[k] = number of distinct factors of length k, for k = 0..max_len."""
        delta = [0] * (max_len + 2)
        for s in range(1, len(self.length)):
            lo = self.length[self.link[s]] + 1
            if lo > max_len:
                continue
            hi = min(self.length[s], max_len)
            delta[lo] += 1
            delta[hi + 1] -= 1
        counts = [1]
        run = 0
        for k in range(1, max_len + 1):
            run += delta[k]
            counts.append(run)
        return counts


# ---------------------------------------------------------------------------
# morphism spec files
#
# line 1: alphabet letters separated by spaces
# then one line per letter:  a -> image      (image `_` denotes the empty word)
# optionally:                weights: p1 p2 ...


def parse_morphism_spec(text: str) -> tuple[Morphism, tuple[int, ...] | None]:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty morphism spec")
    alphabet = Alphabet(tuple(lines[0].split()))
    images: dict[str, str] = {}
    weights = None
    for ln in lines[1:]:
        if ln.startswith("weights:"):
            parts = ln[len("weights:") :].replace(",", " ").split()
            weights = tuple(int(p) for p in parts)
            continue
        if "->" not in ln:
            raise ValueError(f"unrecognized morphism spec line: {ln!r}")
        lhs, rhs = ln.split("->", 1)
        letter = lhs.strip()
        image = rhs.strip()
        if len(letter) != 1:
            raise ValueError(f"left side must be a single letter: {ln!r}")
        images[letter] = "" if image == "_" else image
    morphism = Morphism(alphabet, images)
    if weights is not None:
        weights = check_weights(alphabet, weights)
    return morphism, weights


def load_morphism_file(path) -> tuple[Morphism, tuple[int, ...] | None]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_morphism_spec(fh.read())


def format_morphism_spec(m: Morphism, weights=None) -> str:
    lines = [" ".join(m.alphabet.letters)]
    for c in m.alphabet.letters:
        lines.append(f"{c} -> {m.images[c] or '_'}")
    if weights is not None:
        lines.append("weights: " + " ".join(str(w) for w in weights))
    return "\n".join(lines) + "\n"
