"""Block-difference operators on stream prefixes.

``block_diff(d, w)`` sums each window of ``d + 1`` consecutive bits mod 2.
A ``w``-bit prefix yields exactly ``len(w) - d`` valid output bits; every
operator here returns only the valid part, so the shrinkage is visible in the
result length and callers over-materialize instead of guessing.
"""

from bitorbit import kernels
from bitorbit.bitword import BitWord
from bitorbit.errors import InsufficientPrefixError
from bitorbit.pascal import parity_row

__all__ = [
    "block_diff",
    "iterate_diff_naive",
    "diff_pow2",
    "iterate_diff_fast",
    "triangle_apply",
    "shrinkage",
]

# windows wider than this go through the running-parity kernel instead of taps
_TAP_LIMIT = 16


def shrinkage(d, n):
    """Bits lost at the end of a prefix by ``n`` applications of ``block_diff(d, .)``."""
    return d * n


def _require(w, need, what):
    if w.length < need:
        raise InsufficientPrefixError(
            "%s needs at least %d bits, got %d" % (what, need, w.length))


def _taps(w, stride, taps, out_len):
    # XOR of `taps` copies of w shifted by 0, stride, 2*stride, ...
    v = w.value
    acc = 0
    for j in range(taps):
        acc ^= v >> (j * stride)
    return BitWord._raw(acc & ((1 << out_len) - 1), out_len)


def block_diff(d, w):
    """One application of the ``d+1``-block difference to a prefix."""
    if d < 0:
        raise ValueError("d must be >= 0")
    _require(w, d, "block_diff(d=%d)" % d)
    out_len = w.length - d
    if d == 0:
        return w
    if d == 1:
        return BitWord._raw((w.value ^ (w.value >> 1)) & ((1 << out_len) - 1), out_len)
    if d + 1 <= _TAP_LIMIT:
        return _taps(w, 1, d + 1, out_len)
    # window parity = running parity at i+d  XOR  running parity at i-1
    run = kernels.prefix_xor(w.value, w.length)
    return BitWord._raw(((run << 1) ^ (run >> d)) & ((1 << out_len) - 1), out_len)


def iterate_diff_naive(d, n, w):
    """``n`` successive applications of :func:`block_diff`; the reference path."""
    if n < 0:
        raise ValueError("n must be >= 0")
    _require(w, d * n, "iterate_diff_naive(d=%d, n=%d)" % (d, n))
    for _ in range(n):
        w = block_diff(d, w)
    return w


def diff_pow2(d, m, w):
    """``block_diff(d, .)`` applied ``2^m`` times, as ``d+1`` taps at stride ``2^m``."""
    if d < 0 or m < 0:
        raise ValueError("need d >= 0 and m >= 0")
    stride = 1 << m
    _require(w, d * stride, "diff_pow2(d=%d, m=%d)" % (d, m))
    return _taps(w, stride, d + 1, w.length - d * stride)


def iterate_diff_fast(d, n, w):
    """Decompose ``n`` into powers of two, largest first, and apply :func:`diff_pow2` per digit."""
    if n < 0:
        raise ValueError("n must be >= 0")
    _require(w, d * n, "iterate_diff_fast(d=%d, n=%d)" % (d, n))
    if d == 0:
        return w
    for m in range(n.bit_length() - 1, -1, -1):
        if (n >> m) & 1:
            w = diff_pow2(d, m, w)
    return w


def triangle_apply(d, n, w):
    """XOR of ``w`` shifted by every ``k`` where the parity row ``(d, n)`` has a one."""
    if n < 0:
        raise ValueError("n must be >= 0")
    _require(w, d * n, "triangle_apply(d=%d, n=%d)" % (d, n))
    out_len = w.length - d * n
    row = parity_row(d, n).bits.value
    v = w.value
    acc = 0
    while row:
        low = row & -row
        acc ^= v >> (low.bit_length() - 1)
        row ^= low
    return BitWord._raw(acc & ((1 << out_len) - 1), out_len)
