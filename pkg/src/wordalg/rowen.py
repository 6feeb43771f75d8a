"""Thue-Morse banded operators at finite truncation.

The two degree-one generators are superdiagonal 0/1 matrices: one carries the
Thue-Morse bits, the other their complements.  A word in the generators is
supported on a single superdiagonal whose entries are products of bits, so a
word evaluates to zero exactly when the corresponding letter pattern never
occurs in the Thue-Morse word.  All arithmetic is exact integer arithmetic
(int64 with an overflow guard).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .monalg import NcPolynomial
from .words import MorphicStream, PrefixStream, SuffixAutomaton, make_morphism

DEFAULT_MARGIN = 64

WORD_LETTERS = ("x", "y")  # word letter y maps to the bit generator, x to its complement


class MarginTooSmallError(ValueError):
    """The truncation is too small to decide zero/nonzero for this word length."""


class IndexExceedsTruncationError(RuntimeError):
    """The nilpotency search approached the truncation band; result inconclusive."""


class NotFoundWithinBoundError(RuntimeError):
    """No witness within the configured cap (a would-be counterexample)."""


def thue_morse_bit(i: int) -> int:
    """1 if i-1 has an even number of binary ones, else 0 (i >= 1)."""
    if i < 1:
        raise ValueError("indices start at 1")
    return 1 - ((i - 1).bit_count() & 1)


class ThueMorseSequence:
    """Bit oracle m_1, m_2, ... with a doubling cache; bit 1 <-> letter y, 0 <-> x."""

    def __init__(self):
        self._bits = np.array([1], dtype=np.int64)

    def bits(self, n: int) -> np.ndarray:
        """The first n bits m_1..m_n as an int64 array."""
        while self._bits.size < n:
            self._bits = np.concatenate([self._bits, 1 - self._bits])
        return self._bits[:n]

    def bit(self, i: int) -> int:
        if i < 1:
            raise ValueError("indices start at 1")
        return int(self.bits(i)[i - 1])

    def word_prefix(self, n: int) -> str:
        bits = self.bits(n)
        return "".join("y" if b else "x" for b in bits)


_TM = ThueMorseSequence()


def tm_morphism():
    return make_morphism("xy", x="xy", y="yx")


def tm_word_stream() -> MorphicStream:
    """The Thue-Morse word over {x, y} starting with y, as a prefix stream."""
    return MorphicStream(tm_morphism(), "y")


# ---------------------------------------------------------------------------
# banded matrices


_GUARD = 2**31


class BandMatrix:
    """Square integer matrix supported on upper diagonals.

    ``diags`` maps offset k >= 0 to the vector of entries (i, i+k) for
    i = 1..size-k.  Entries are exact int64; multiplication asserts operands
    stay below 2^31 so products cannot overflow.
    """

    __slots__ = ("size", "diags")

    def __init__(self, size: int, diags):
        if size < 1:
            raise ValueError("size must be positive")
        store: dict[int, np.ndarray] = {}
        for k, vec in diags.items():
            if not 0 <= k < size:
                raise ValueError(f"diagonal offset {k} out of range for size {size}")
            arr = np.asarray(vec, dtype=np.int64)
            if arr.shape != (size - k,):
                raise ValueError(f"diagonal {k} must have length {size - k}")
            if arr.any():
                store[k] = arr
        self.size = size
        self.diags = store

    @classmethod
    def zero(cls, size: int) -> "BandMatrix":
        return cls(size, {})

    @classmethod
    def identity(cls, size: int) -> "BandMatrix":
        return cls(size, {0: np.ones(size, dtype=np.int64)})

    @classmethod
    def from_superdiagonal(cls, vec) -> "BandMatrix":
        vec = np.asarray(vec, dtype=np.int64)
        return cls(vec.size + 1, {1: vec})

    def diagonal(self, k: int) -> np.ndarray:
        if k in self.diags:
            return self.diags[k].copy()
        return np.zeros(self.size - k, dtype=np.int64)

    def entry(self, i: int, j: int) -> int:
        """1-based entry (i, j)."""
        if not (1 <= i <= self.size and 1 <= j <= self.size):
            raise IndexError("entry out of range")
        k = j - i
        if k < 0 or k not in self.diags:
            return 0
        return int(self.diags[k][i - 1])

    def is_zero(self) -> bool:
        return not self.diags

    def nnz(self) -> int:
        return int(sum(np.count_nonzero(v) for v in self.diags.values()))

    def max_abs(self) -> int:
        if not self.diags:
            return 0
        return int(max(np.abs(v).max() for v in self.diags.values()))

    def __eq__(self, other):
        if not isinstance(other, BandMatrix) or self.size != other.size:
            return NotImplemented
        keys = set(self.diags) | set(other.diags)
        return all(np.array_equal(self.diagonal(k), other.diagonal(k)) for k in keys)

    def __add__(self, other):
        self._check(other)
        out = {}
        for k in set(self.diags) | set(other.diags):
            out[k] = self.diagonal(k) + other.diagonal(k)
        return BandMatrix(self.size, out)

    def scaled(self, c: int) -> "BandMatrix":
        if c == 0:
            return BandMatrix.zero(self.size)
        return BandMatrix(self.size, {k: v * int(c) for k, v in self.diags.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scaled(other)
        self._check(other)
        if self.max_abs() >= _GUARD or other.max_abs() >= _GUARD:
            raise OverflowError("band matrix entries exceed the exactness guard")
        out: dict[int, np.ndarray] = {}
        n = self.size
        for k1, d1 in self.diags.items():
            for k2, d2 in other.diags.items():
                k = k1 + k2
                if k >= n:
                    continue
                length = n - k
                prod = d1[:length] * d2[k1 : k1 + length]
                if k in out:
                    out[k] = out[k] + prod
                else:
                    out[k] = prod
        return BandMatrix(n, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scaled(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> "BandMatrix":
        if exponent < 0:
            raise ValueError("exponent must be nonnegative")
        result = BandMatrix.identity(self.size)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base_needed = exponent >> 1
            if base_needed:
                base = base * base
            exponent = base_needed
        return result

    def _check(self, other):
        if not isinstance(other, BandMatrix) or other.size != self.size:
            raise ValueError("band matrices must have equal size")


def build_generators(n: int, tm: ThueMorseSequence | None = None) -> tuple[BandMatrix, BandMatrix]:
    """Truncated generators: bit m_i at (i, i+1) for the first, 1-m_i for the second."""
    if n < 2:
        raise ValueError("truncation must be at least 2")
    bits = (tm or _TM).bits(n - 1)
    return BandMatrix.from_superdiagonal(bits), BandMatrix.from_superdiagonal(1 - bits)


# ---------------------------------------------------------------------------
# word evaluation


def _check_word_letters(word: str):
    for c in word:
        if c not in WORD_LETTERS:
            raise ValueError(f"word letters must be in {WORD_LETTERS}, got {c!r}")


def evaluate_word(word: str, n: int, margin: int = DEFAULT_MARGIN, tm: ThueMorseSequence | None = None) -> BandMatrix:
    """Image of a word over {x, y} (y -> bit generator, x -> complement) at
    truncation n.  Requires n > len(word) + margin so the probed band cannot be
    an artifact of the truncation."""
    _check_word_letters(word)
    if n <= len(word) + margin:
        raise MarginTooSmallError(
            f"need truncation > {len(word) + margin} for a word of length {len(word)}"
        )
    length = len(word)
    if length == 0:
        return BandMatrix.identity(n)
    bits = (tm or _TM).bits(n - 1)
    vec = np.ones(n - length, dtype=np.int64)
    for j, ch in enumerate(word):
        letter_bits = bits if ch == "y" else 1 - bits
        vec = vec * letter_bits[j : j + n - length]
    return BandMatrix(n, {length: vec})


def coefficient(word: str, t: int, tm: ThueMorseSequence | None = None) -> int:
    """Product of bits/complements along the word starting at index t: equals the
    (t, t+len) entry of the evaluated word."""
    _check_word_letters(word)
    if t < 1:
        raise ValueError("indices start at 1")
    tm = tm or _TM
    out = 1
    for j, ch in enumerate(word):
        b = tm.bit(t + j)
        out *= b if ch == "y" else 1 - b
        if out == 0:
            return 0
    return out


def vanishing_matches_factor(
    word: str,
    n: int,
    horizon: int,
    margin: int = DEFAULT_MARGIN,
    factor_text: str | None = None,
) -> bool:
    """True when "the evaluated word is zero" agrees with "the word is not a
    factor of the Thue-Morse word within the horizon"."""
    if not word:
        raise ValueError("word must be nonempty")
    zero = evaluate_word(word, n, margin).is_zero()
    if factor_text is None:
        factor_text = _TM.word_prefix(horizon)
    is_factor = factor_text.find(word) >= 0
    return zero == (not is_factor)


@dataclass(frozen=True)
class CorrespondenceReport:
    max_len: int
    truncation: int
    horizon: int
    checked: int
    mismatches: tuple[str, ...]

    @property
    def all_agree(self) -> bool:
        return not self.mismatches


def correspondence_scan(
    max_len: int, n: int, horizon: int, margin: int = DEFAULT_MARGIN
) -> CorrespondenceReport:
    """Compare zero-evaluation with factor-set absence for every word of length
    <= max_len, reusing parent products along the word tree."""
    if max_len < 1:
        raise ValueError("max_len must be positive")
    if n <= max_len + margin:
        raise MarginTooSmallError(f"need truncation > {max_len + margin}")
    bits = _TM.bits(n - 1)
    letter_vecs = {"y": bits, "x": 1 - bits}
    text = _TM.word_prefix(horizon)
    factor_sets = [
        {text[i : i + k] for i in range(len(text) - k + 1)} for k in range(max_len + 1)
    ]
    checked = 0
    mismatches = []
    stack = [("", np.ones(n - 1, dtype=np.int64))]
    while stack:
        word, vec = stack.pop()
        length = len(word)
        for ch in ("x", "y"):
            child = word + ch
            # entry t of the child diagonal is parent[t] * bit(t + length)
            cvec = vec[: n - length - 1] * letter_vecs[ch][length : n - 1]
            zero = not cvec.any()
            checked += 1
            if zero != (child not in factor_sets[length + 1]):
                mismatches.append(child)
            if length + 1 < max_len:
                stack.append((child, cvec))
    return CorrespondenceReport(max_len, n, horizon, checked, tuple(mismatches))


# ---------------------------------------------------------------------------
# the both-bits witness


def n_u_witness(step: int, i_max: int, cap: int = 64, bit_at=None) -> int:
    """Minimal n such that for every i <= i_max the bits at i, i+step, ...,
    i+n*step contain both 0 and 1."""
    if step < 1 or i_max < 1:
        raise ValueError("step and i_max must be positive")
    needed = i_max + cap * step + 1
    if bit_at is None:
        arr = _TM.bits(needed)
    else:
        arr = np.fromiter((bit_at(i) for i in range(1, needed + 1)), dtype=np.int64, count=needed)
    idx = np.arange(i_max, dtype=np.int64)  # 0-based index of position i = idx+1
    undecided = idx
    n = 0
    while undecided.size:
        n += 1
        if n > cap:
            raise NotFoundWithinBoundError(
                f"no witness for step {step} within cap {cap} (range {i_max})"
            )
        same = arr[undecided + n * step] == arr[undecided]
        undecided = undecided[same]
    return n


# ---------------------------------------------------------------------------
# nilpotency of homogeneous multiples


@dataclass(frozen=True)
class NilpotencyResult:
    index: int
    index_at_double: int | None

    @property
    def stable(self) -> bool:
        return self.index_at_double is not None and self.index == self.index_at_double


def _element_words(element) -> dict[str, int]:
    """Normalize a homogeneous element over the generator symbols a, b to integer
    coefficients (scaling by a common denominator; nilpotency is unaffected)."""
    if isinstance(element, NcPolynomial):
        coeffs = dict(element.coeffs)
    elif isinstance(element, dict):
        coeffs = {w: Fraction(c) for w, c in element.items()}
    elif element == 1:
        coeffs = {"": Fraction(1)}
    else:
        raise ValueError("element must be an NcPolynomial, a dict or 1")
    if not coeffs:
        raise ValueError("element must be nonzero")
    for word in coeffs:
        for c in word:
            if c not in ("a", "b"):
                raise ValueError(f"element words must use letters a, b; got {c!r}")
    degrees = {len(w) for w in coeffs}
    if len(degrees) != 1:
        raise ValueError("element must be homogeneous")
    denom = lcm(*(Fraction(c).denominator for c in coeffs.values()))
    return {w: int(Fraction(c) * denom) for w, c in coeffs.items()}


def _element_operator(words_int: dict[str, int], n: int, tm: ThueMorseSequence) -> BandMatrix:
    gen_a, gen_b = build_generators(n, tm)
    acc = BandMatrix.zero(n)
    for word, c in words_int.items():
        mat = BandMatrix.identity(n)
        for ch in word:
            mat = mat * (gen_a if ch == "a" else gen_b)
        acc = acc + mat.scaled(c)
    return acc


def nilpotency_index(
    element,
    side: str,
    n: int,
    margin: int = DEFAULT_MARGIN,
    check_double: bool = True,
    tm: ThueMorseSequence | None = None,
) -> NilpotencyResult:
    """Smallest k with (element * generator)^k = 0 at truncation n, re-verified at
    truncation 2n.  ``side`` selects the generator: "a" (bits) or "b" (complements)."""
    if side not in ("a", "b"):
        raise ValueError("side must be 'a' or 'b'")
    tm = tm or _TM
    words_int = _element_words(element)
    degree = len(next(iter(words_int)))
    stride = degree + 1

    def index_at(size: int) -> int:
        gen_a, gen_b = build_generators(size, tm)
        gen = gen_a if side == "a" else gen_b
        p = _element_operator(words_int, size, tm) * gen
        power = p
        k = 1
        while not power.is_zero():
            k += 1
            if k * stride + margin >= size:
                raise IndexExceedsTruncationError(
                    f"index search reached the truncation band at k={k}, size={size}"
                )
            power = power * p
        return k

    index = index_at(n)
    double = index_at(2 * n) if check_double else None
    return NilpotencyResult(index, double)


# ---------------------------------------------------------------------------
# growth


@dataclass(frozen=True)
class GrowthProfile:
    n_values: tuple[int, ...]
    cumulative: tuple[int, ...]          # sum of distinct-factor counts for lengths 0..n
    doubled: tuple[int, ...]             # the same at 2n
    ratios: tuple[float, ...]
    lower_constant: float                # min cumulative(n)/n^2 over the sample
    upper_constant: float                # max cumulative(n)/n^2 over the sample
    quadratic: bool

    def to_record(self) -> dict[str, str]:
        rec = {
            "n_values": ",".join(str(v) for v in self.n_values),
            "cumulative": ",".join(str(v) for v in self.cumulative),
            "cumulative_at_2n": ",".join(str(v) for v in self.doubled),
            "ratios": ",".join(f"{r:.6f}" for r in self.ratios),
            "lower_constant": f"{self.lower_constant:.6f}",
            "upper_constant": f"{self.upper_constant:.6f}",
            "quadratic": "true" if self.quadratic else "false",
        }
        return rec


RATIO_BAND = (3.5, 4.5)


def growth_profile(n_values, horizon: int, stream: PrefixStream | None = None) -> GrowthProfile:
    """Cumulative distinct-factor counts with the quadratic-band check: for each n
    in the sample, cumulative(2n)/cumulative(n) must lie in [3.5, 4.5]."""
    n_values = tuple(int(v) for v in n_values)
    if not n_values or any(v < 1 for v in n_values):
        raise ValueError("n_values must be positive")
    max_needed = 2 * max(n_values)
    if horizon < 4 * max_needed:
        raise ValueError("horizon too small for complexity stabilization at max n")
    if stream is None:
        stream = tm_word_stream()
    automaton = SuffixAutomaton(stream.prefix(horizon))
    counts = automaton.factor_counts(max_needed)
    cumsum = []
    total = 0
    for c in counts:
        total += c
        cumsum.append(total)
    cumulative = tuple(cumsum[v] for v in n_values)
    doubled = tuple(cumsum[2 * v] for v in n_values)
    ratios = tuple(d / c for c, d in zip(cumulative, doubled))
    lo, hi = RATIO_BAND
    quadratic = all(lo <= r <= hi for r in ratios)
    lower_constant = min(c / (v * v) for v, c in zip(n_values, cumulative))
    upper_constant = max(c / (v * v) for v, c in zip(n_values, cumulative))
    return GrowthProfile(
        n_values, cumulative, doubled, ratios, lower_constant, upper_constant, quadratic
    )
