"""Eventual periodicity of streams and of their block-difference orbits.

A stream is (eventually) periodic with period ``p`` and offset ``n0`` when
``s(n + p) == s(n)`` for every ``n >= n0``. From a finite prefix this can only
be observed, never decided, so every certificate carries the length of the
window it was checked on and requires two full periods of evidence.

The orbit of a periodic stream repeats vertically: with ``N1 = 2^m1 > n0`` and
``N2 = 2^m2`` congruent to ``N1`` mod ``p``, rows ``N1`` and ``N2`` coincide.
Conversely, equal rows ``N1`` and ``N2`` make every bit a fixed function of the
``d * N2`` bits before it, which forces the stream to cycle.
"""

from dataclasses import dataclass

from bitorbit.bitword import BitWord, first_disagreement, shift
from bitorbit.difference import block_diff, diff_pow2, iterate_diff_fast
from bitorbit.errors import ContradictionError, InsufficientPrefixError
from bitorbit.orbit import build_orbit
from bitorbit.streams import EvP, Point, materialize

__all__ = [
    "PeriodCertificate", "OrbitPeriodWitness", "Fact", "Report",
    "holds", "detect_period", "certificate_for_evp", "check_strong_preservation",
    "choose_powers", "orbit_witness_from_period", "check_recurrence_relation",
    "reconstruct_period", "period_from_orbit_witness",
    "point_orbit_facts", "distinct_rows", "recurrence_profile",
]


@dataclass(frozen=True)
class PeriodCertificate:
    offset: int
    period: int
    evidence_len: int

    def __post_init__(self):
        if self.period < 1:
            raise ValueError("period must be >= 1")
        if self.offset < 0:
            raise ValueError("offset must be >= 0")
        if self.evidence_len < self.offset + 2 * self.period:
            raise ValueError("evidence window %d is shorter than offset + two periods (%d)"
                             % (self.evidence_len, self.offset + 2 * self.period))

    def to_text(self):
        return "offset=%d period=%d evidence=%d" % (self.offset, self.period, self.evidence_len)


@dataclass(frozen=True)
class OrbitPeriodWitness:
    d: int
    n1: int
    n2: int
    window: int
    stream_offset: int
    stream_period: int

    def __post_init__(self):
        for n in (self.n1, self.n2):
            if n < 1 or n & (n - 1):
                raise ValueError("%d is not a power of two" % n)
        if not self.n1 < self.n2:
            raise ValueError("need n1 < n2")

    @property
    def vertical_offset(self):
        return self.n1

    @property
    def vertical_period(self):
        return self.n2 - self.n1

    def to_text(self):
        return ("d=%d N1=%d N2=%d vertical_offset=%d vertical_period=%d window=%d"
                % (self.d, self.n1, self.n2, self.vertical_offset, self.vertical_period, self.window))


def holds(w, offset, period):
    """True iff ``w(n + period) == w(n)`` for all ``offset <= n < len(w) - period``."""
    if period > len(w):
        return True
    x = w ^ shift(w, period)
    return (x.value >> offset) == 0


def detect_period(w, max_p, max_offset):
    """Least ``(period, offset)`` pair, period first, observed on ``w``; None if none in bounds.

    A candidate counts only with at least two full periods of evidence past the offset.
    """
    n = len(w)
    for p in range(1, max_p + 1):
        if 2 * p > n:
            break
        # every position at or beyond the highest mismatch agrees
        n0 = (w ^ shift(w, p)).value.bit_length()
        if n0 <= max_offset and n >= n0 + 2 * p:
            return PeriodCertificate(n0, p, n)
    return None


def certificate_for_evp(e, evidence_len=None, *, store=None):
    """Read ``(offset, period)`` off an :class:`EvP` expression and re-verify it."""
    if not isinstance(e, EvP):
        raise TypeError("certificate_for_evp needs an EvP expression, got %r" % (e,))
    n0, p = len(e.prefix), len(e.cycle)
    if evidence_len is None:
        evidence_len = max(64, n0 + 4 * p)
    cert = PeriodCertificate(n0, p, evidence_len)
    if not holds(materialize(e, evidence_len, store=store), n0, p):
        raise ContradictionError("evp representation does not verify: %r" % (e,))
    return cert


def check_strong_preservation(cert, d, e, *, store=None):
    """Does ``block_diff(d, .)`` of the stream keep the certificate's period and offset?"""
    w = materialize(e, cert.evidence_len, store=store)
    if not holds(w, cert.offset, cert.period):
        raise ValueError("certificate %s does not hold for %r" % (cert.to_text(), e))
    if cert.evidence_len - d < cert.offset + 2 * cert.period:
        raise InsufficientPrefixError(
            "after block_diff(%d) only %d bits remain; need %d"
            % (d, cert.evidence_len - d, cert.offset + 2 * cert.period))
    return holds(block_diff(d, w), cert.offset, cert.period)


def choose_powers(offset, period):
    """Least ``m1``, then least ``m2 > m1``, with ``2^m1 > offset`` and ``2^m1 == 2^m2 (mod period)``."""
    m1 = offset.bit_length()  # least m with 2^m > offset
    while True:
        target = pow(2, m1, period)
        r = target
        # powers of two mod p cycle with period <= p once they enter the cycle
        for m2 in range(m1 + 1, m1 + period + 1):
            r = (2 * r) % period
            if r == target:
                return m1, m2
        m1 += 1


def orbit_witness_from_period(e, cert, d, window, *, store=None):
    """Construct and verify the vertical period of the orbit of a periodic stream.

    Rows ``N1`` and ``N2`` are compared on columns ``0 .. offset + window``;
    every one of them must agree when the certificate is valid.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    m1, m2 = choose_powers(cert.offset, cert.period)
    n1, n2 = 1 << m1, 1 << m2
    cols = cert.offset + window
    w = materialize(e, cols + d * n2, store=store)
    row1 = diff_pow2(d, m1, w).take(cols)
    row2 = diff_pow2(d, m2, w).take(cols)
    bad = first_disagreement(row1, row2)
    if bad is not None:
        raise ContradictionError("rows %d and %d differ at column %d for %r with %s"
                                 % (n1, n2, bad, e, cert.to_text()))
    return OrbitPeriodWitness(d, n1, n2, window, cert.offset, cert.period)


def check_recurrence_relation(e, witness, window, *, store=None):
    """Check ``s(i + d*N2) == sum_j<=d s(i + j*N1) + sum_j<d s(i + j*N2)`` for ``i < window``."""
    d, n1, n2 = witness.d, witness.n1, witness.n2
    w = materialize(e, window + d * n2, store=store)
    v = w.value
    lhs = v >> (d * n2)
    rhs = 0
    for j in range(d + 1):
        rhs ^= v >> (j * n1)
    for j in range(d):
        rhs ^= v >> (j * n2)
    mask = (1 << window) - 1
    return (lhs ^ rhs) & mask == 0


def reconstruct_period(seed, d, n1, n2, *, max_steps=1 << 20):
    """Extend ``seed`` (the first ``d*n2`` bits) by the recurrence until a
    ``d*n2``-bit block repeats; return the resulting certificate.
    """
    if d < 1:
        raise ValueError("reconstruction needs d >= 1: with d = 0 the orbit is constant")
    span = d * n2
    if len(seed) != span:
        raise ValueError("seed must have exactly d*n2 = %d bits" % span)
    bits = seed.tolist()
    taps = [j * n1 for j in range(d + 1)] + [j * n2 for j in range(d)]
    state = seed.value
    top = 1 << (span - 1)
    seen = {state: 0}
    for i in range(max_steps):
        b = 0
        for t in taps:
            b ^= bits[i + t]
        bits.append(b)
        state = (state >> 1) | (top if b else 0)
        start = i + 1
        if state in seen:
            first = seen[state]
            period = start - first
            return PeriodCertificate(first, period, max(len(bits), first + 2 * period))
        seen[state] = start
    raise ContradictionError("no repeated block within %d steps" % max_steps)


def period_from_orbit_witness(e, witness, *, max_steps=1 << 20, store=None):
    """Periodicity certificate derived from equal orbit rows, then checked against ``e``."""
    span = witness.d * witness.n2
    seed = materialize(e, span, store=store)
    cert = reconstruct_period(seed, witness.d, witness.n1, witness.n2, max_steps=max_steps)
    if not holds(materialize(e, cert.evidence_len, store=store), cert.offset, cert.period):
        raise ContradictionError("reconstructed %s does not hold for %r" % (cert.to_text(), e))
    return cert


@dataclass(frozen=True)
class Fact:
    name: str
    passed: bool
    detail: str = ""

    def to_text(self):
        line = "FACT %s %s" % (self.name, "PASS" if self.passed else "FAIL")
        return line + (" " + self.detail if self.detail else "")


@dataclass(frozen=True)
class Report:
    facts: tuple

    @property
    def passed(self):
        return all(f.passed for f in self.facts)

    def to_text(self):
        return "".join(f.to_text() + "\n" for f in self.facts)


def point_orbit_facts(p, window, *, store=None):
    """For ``p = 2^m``: the orbit of the point stream at ``p - 1`` returns after ``p`` steps,
    and row ``p - 1`` is ``p`` ones followed by zeros."""
    if p < 1 or p & (p - 1):
        raise ValueError("p must be a power of two, got %d" % p)
    if window < 2 * p:
        raise InsufficientPrefixError("window %d is smaller than 2p = %d" % (window, 2 * p))
    e = Point(p - 1)
    top = materialize(e, window, store=store)
    back = iterate_diff_fast(1, p, materialize(e, window + p, store=store))
    ones = iterate_diff_fast(1, p - 1, materialize(e, window + p - 1, store=store))
    expect = BitWord.ones(p) + BitWord.zeros(window - p)
    return Report((
        Fact("period-returns", back == top,
             "p=%d window=%d first-mismatch=%s" % (p, window, first_disagreement(back, top))),
        Fact("row-of-ones", ones == expect,
             "p=%d window=%d first-mismatch=%s" % (p, window, first_disagreement(ones, expect))),
    ))


def distinct_rows(e, d, rows, cols, *, store=None):
    """True iff the first ``rows`` orbit rows are pairwise distinct on ``cols`` columns."""
    m = build_orbit(e, d, rows, cols, store=store)
    return len(set(m.rows)) == rows


def recurrence_profile(e, operator, count, cols, *, d=1, store=None):
    """Agreement length (capped at ``cols``) between row 0 and rows 1..count of an orbit.

    ``operator`` is ``"tail"`` (shift orbit) or ``"diff"`` (``block_diff(d, .)`` orbit).
    """
    if count < 1 or cols < 1:
        raise ValueError("count and cols must be >= 1")
    if operator == "tail":
        w = materialize(e, cols + count, store=store)
        rows = [shift(w, n).take(cols) for n in range(count + 1)]
    elif operator == "diff":
        rows = build_orbit(e, d, count + 1, cols, store=store).rows
    else:
        raise ValueError("operator must be 'tail' or 'diff', got %r" % operator)
    out = []
    for row in rows[1:]:
        k = first_disagreement(rows[0], row)
        out.append(cols if k is None else k)
    return out
