"""Interleaving a base word with a primed copy along a universal difference
sequence.

The universal sequence 0 = n_0 < n_1 < n_2 < ... has the property that every
finite sequence of positive integers occurs as a run of consecutive differences
n_{m+1}-n_m, ...  The interleaved word copies the base word but switches
between the unprimed and primed alphabets at the cut points n_1, n_2, ...:
segment k (covering positions n_{k-1}+1 .. n_k, 1-based) is primed exactly for
even k.  Projecting primes away recovers the base word letter for letter.

Primed companion letters are represented internally by the uppercase letter
(x -> X); the CLI accepts the x' spelling and translates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grading import (
    Certificate,
    ScanReport,
    certify_graded_nilpotence,
    graded_nilpotence_scan,
    weight_sum_prefix,
)
from .monalg import (
    FreenessReport,
    NcPolynomial,
    WordFactorView,
    freeness_check,
    linear_independence,
    pattern_images,
)
from .words import Alphabet, Morphism, MorphicStream, PrefixStream, make_morphism

ENUMERATION_ORDER = "sum-length-lex"


def _compositions(total: int, parts: int):
    """Compositions of ``total`` into ``parts`` positive parts, lexicographically."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _composition_stream():
    total = 1
    while True:
        for parts in range(1, total + 1):
            yield from _compositions(total, parts)
        total += 1


class UniversalSequence:
    """Increasing integers n_0 = 0 < n_1 < ... whose consecutive differences are
    the concatenation of every finite positive-integer sequence, enumerated by
    (sum, length, lex).  Reproducible bit for bit."""

    order_tag = ENUMERATION_ORDER

    def __init__(self):
        self._diffs: list[int] = []
        self._values: list[int] = [0]
        self._source = _composition_stream()

    def _pull(self):
        block = next(self._source)
        for d in block:
            self._diffs.append(d)
            self._values.append(self._values[-1] + d)

    def ensure_terms(self, count: int):
        """Materialize n_0 .. n_count."""
        while len(self._values) <= count:
            self._pull()

    def ensure_value(self, v: int):
        while self._values[-1] < v:
            self._pull()

    def value(self, i: int) -> int:
        self.ensure_terms(i)
        return self._values[i]

    def values(self, count: int) -> tuple[int, ...]:
        self.ensure_terms(count)
        return tuple(self._values[: count + 1])

    def difference(self, t: int) -> int:
        """n_t - n_{t-1} for t >= 1."""
        self.ensure_terms(t)
        return self._diffs[t - 1]

    def differences(self, count: int) -> tuple[int, ...]:
        self.ensure_terms(count)
        return tuple(self._diffs[:count])


def universal_difference_sequence(count: int) -> UniversalSequence:
    if count < 1:
        raise ValueError("count must be positive")
    seq = UniversalSequence()
    seq.ensure_terms(count)
    return seq


class FixedDifferenceSequence:
    """Exploratory alternative cut sequence n_i = i * difference.

    Not universal: its difference runs realize only one sequence.  Offered for
    comparison runs; no freeness claim is attached to it.
    """

    def __init__(self, difference: int = 1):
        if difference < 1:
            raise ValueError("difference must be positive")
        self.difference = difference
        self.order_tag = f"constant-{difference}"

    def ensure_terms(self, count: int):
        pass

    def ensure_value(self, v: int):
        pass

    def value(self, i: int) -> int:
        return i * self.difference

    def values(self, count: int) -> tuple[int, ...]:
        return tuple(i * self.difference for i in range(count + 1))

    def difference_at(self, t: int) -> int:
        return self.difference


def locate_pattern(seq: UniversalSequence, pattern, parity: int | None = None) -> int:
    """Smallest m with pattern equal to the differences at positions m+1..m+len.

    ``parity`` restricts the search to even (0) or odd (1) m; the sequence is
    extended on demand, so the search always terminates.
    """
    pattern = tuple(int(a) for a in pattern)
    if not pattern or any(a < 1 for a in pattern):
        raise ValueError("pattern must be a nonempty sequence of positive integers")
    if parity not in (None, 0, 1):
        raise ValueError("parity must be None, 0 or 1")
    s = len(pattern)
    m = 0 if parity is None else parity
    step = 1 if parity is None else 2
    while True:
        seq.ensure_terms(m + s)
        if tuple(seq._diffs[m : m + s]) == pattern:
            return m
        m += step


# ---------------------------------------------------------------------------
# priming


def primed_companion(letter: str) -> str:
    c = letter.upper()
    if c == letter:
        raise ValueError(f"no primed companion available for {letter!r}")
    return c


def primed_alphabet(base: Alphabet) -> tuple[Alphabet, dict[str, str]]:
    """Extend the alphabet with a primed companion for every letter."""
    mapping = {c: primed_companion(c) for c in base.letters}
    if set(mapping.values()) & set(base.letters):
        raise ValueError("primed companions collide with base letters")
    return Alphabet(base.letters + tuple(mapping[c] for c in base.letters)), mapping


def prime_copy(word: str, mapping: dict[str, str]) -> str:
    """Letterwise substitution onto the primed alphabet."""
    return word.translate(str.maketrans(mapping))


def unprime(word: str, mapping: dict[str, str]) -> str:
    """Letterwise projection sending each primed companion back to its base letter."""
    inverse = {v: k for k, v in mapping.items()}
    return word.translate(str.maketrans(inverse))


@dataclass(eq=False)
class InterleaveSpec:
    base: PrefixStream
    sequence: UniversalSequence | FixedDifferenceSequence

    def __post_init__(self):
        self.alphabet, self.mapping = primed_alphabet(self.base.alphabet)


class InterleaveStream(PrefixStream):
    """Prefixes of the interleaved word over the doubled alphabet."""

    def __init__(self, spec: InterleaveSpec):
        super().__init__(spec.alphabet)
        self.spec = spec
        self._segment = 0
        self._table = str.maketrans(spec.mapping)

    def _grow(self) -> str:
        k = self._segment + 1
        seq = self.spec.sequence
        seq.ensure_terms(k)
        lo, hi = seq.value(k - 1), seq.value(k)
        chunk = self.spec.base.slice(lo, hi)
        if k % 2 == 0:
            chunk = chunk.translate(self._table)
        self._segment = k
        return chunk


def interleaved_prefix(spec: InterleaveSpec, n: int) -> str:
    return InterleaveStream(spec).prefix(n)


# ---------------------------------------------------------------------------
# the full construction: certified base word, interleaved word, AP scan and
# freeness of (x + y, X + Y)


def base_morphism() -> Morphism:
    """The binary substitution x -> xy, y -> yyx used as the certified base word."""
    return make_morphism("xy", x="xy", y="yyx")


BASE_START = "x"
BASE_WEIGHTS = (1, 2)


@dataclass(frozen=True)
class PipelineReport:
    horizon: int
    free_pattern_length: int
    d_max: int
    order_tag: str
    certificate: Certificate
    scan: ScanReport
    sum_sets_equal: bool
    freeness: FreenessReport
    rank_with_identity: int

    @property
    def all_clear(self) -> bool:
        return (
            self.certificate.certified
            and not self.scan.flagged
            and self.sum_sets_equal
            and self.freeness.independent
        )

    def to_record(self) -> dict[str, str]:
        rec = {
            "horizon": str(self.horizon),
            "free_pattern_length": str(self.free_pattern_length),
            "d_max": str(self.d_max),
            "enumeration_order": self.order_tag,
            "all_clear": "true" if self.all_clear else "false",
            "sum_sets_equal": "true" if self.sum_sets_equal else "false",
            "rank_with_identity": str(self.rank_with_identity),
        }
        for k, v in self.certificate.to_record().items():
            rec[f"certificate_{k}"] = v
        for k, v in self.scan.to_record().items():
            rec[f"scan_{k}"] = v
        for k, v in self.freeness.to_record().items():
            rec[f"freeness_{k}" if not k.startswith("freeness") else k] = v
        return rec


def construction_pipeline(
    horizon: int = 1_000_000,
    free_pattern_length: int = 5,
    d_max: int = 6,
    sequence: UniversalSequence | FixedDifferenceSequence | None = None,
) -> PipelineReport:
    """Certify the base word, build the interleaved word, scan it for growing
    arithmetic progressions, and test freeness of the two mixed generators."""
    if horizon < 100:
        raise ValueError("horizon too small to be meaningful")
    m = base_morphism()
    certificate = certify_graded_nilpotence(m, BASE_START, BASE_WEIGHTS)

    base_stream = MorphicStream(m, BASE_START)
    spec = InterleaveSpec(base_stream, sequence or UniversalSequence())
    tilde = InterleaveStream(spec)

    # weights on the doubled alphabet: primed companions inherit the base weight
    weights = BASE_WEIGHTS + BASE_WEIGHTS
    horizons = (max(horizon // 10, 10), horizon)
    scan = graded_nilpotence_scan(tilde, weights, d_max, horizons)

    tilde_sums = weight_sum_prefix(tilde, weights, horizon)
    base_sums = weight_sum_prefix(base_stream, BASE_WEIGHTS, horizon)
    sums_equal = bool(np.array_equal(tilde_sums.sums, base_sums.sums))

    view = WordFactorView(tilde, horizon)
    x, y = spec.base.alphabet.letters
    gens = [
        NcPolynomial(view, {x: 1, y: 1}),
        NcPolynomial(view, {spec.mapping[x]: 1, spec.mapping[y]: 1}),
    ]
    freeness = freeness_check(view, gens, free_pattern_length)
    with_identity = [NcPolynomial.one(view)] + pattern_images(view, gens, free_pattern_length)
    rank_with_identity = linear_independence(with_identity).rank

    return PipelineReport(
        horizon=horizon,
        free_pattern_length=free_pattern_length,
        d_max=d_max,
        order_tag=spec.sequence.order_tag,
        certificate=certificate,
        scan=scan,
        sum_sets_equal=sums_equal,
        freeness=freeness,
        rank_with_identity=rank_with_identity,
    )
