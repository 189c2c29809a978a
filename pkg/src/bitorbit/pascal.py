"""Generalized Pascal triangles: row ``n`` of triangle ``d`` holds the
coefficients of ``(1 + x + ... + x^d)^n``.

Exact rows use Python integers; parity rows are GF(2) polynomials packed into
a :class:`BitWord` and never touch big-integer arithmetic beyond bit ops.
"""

from dataclasses import dataclass
from functools import lru_cache

from bitorbit import kernels
from bitorbit.bitword import BitWord
from bitorbit.errors import ResourceLimitError

MAX_EXACT_ROW_LENGTH = 1 << 17
MAX_PARITY_ROW_LENGTH = 1 << 28
MAX_ORACLE_ROW = 64


@dataclass(frozen=True)
class PascalRow:
    d: int
    n: int
    entries: tuple

    def to_text(self):
        return " ".join(map(str, self.entries))


@dataclass(frozen=True)
class ParityRow:
    d: int
    n: int
    bits: BitWord

    def ones(self):
        """Positions ``k`` with ``P_d(n, k)`` odd, ascending."""
        v = self.bits.value
        out = []
        while v:
            low = v & -v
            out.append(low.bit_length() - 1)
            v ^= low
        return out

    def to_text(self):
        return self.bits.to_text()


def _check_args(d, n, cap):
    if d < 0 or n < 0:
        raise ValueError("need d >= 0 and n >= 0, got d=%d n=%d" % (d, n))
    if d * n + 1 > cap:
        raise ResourceLimitError("row of length %d exceeds the cap of %d" % (d * n + 1, cap))


def pascal_row_exact(d, n, *, cap=MAX_EXACT_ROW_LENGTH):
    """Row ``n`` of triangle ``d`` by the ``d+1``-term row recursion."""
    _check_args(d, n, cap)
    row = [1]
    for _ in range(n):
        # entry k of the next row sums row[k-d .. k]; sliding window over prefix sums
        prefix = [0]
        for x in row:
            prefix.append(prefix[-1] + x)
        width = len(row)
        row = [prefix[min(k, width - 1) + 1] - prefix[max(0, k - d)]
               for k in range(width + d)]
    return PascalRow(d, n, tuple(row))


def _block_poly(d):
    return (1 << (d + 1)) - 1


def parity_row_frobenius(d, m):
    """Parity row for ``n = 2^m`` read off ``q(x)^(2^m) = q(x^(2^m))``."""
    n = 1 << m
    value = 0
    for j in range(d + 1):
        value |= 1 << (j * n)
    return ParityRow(d, n, BitWord(value, d * n + 1))


def parity_row_square_multiply(d, n):
    """``(1 + ... + x^d)^n`` over GF(2) by left-to-right square-and-multiply."""
    q = _block_poly(d)
    acc = 1
    for bit in bin(n)[2:] if n else "":
        acc = kernels.clsquare(acc)
        if bit == "1":
            acc = kernels.clmul(acc, q)
    return ParityRow(d, n, BitWord(acc, d * n + 1))


@lru_cache(maxsize=512)
def _parity_row_cached(d, n):
    if n and n & (n - 1) == 0:
        return parity_row_frobenius(d, n.bit_length() - 1)
    return parity_row_square_multiply(d, n)


def parity_row(d, n, *, cap=MAX_PARITY_ROW_LENGTH):
    """Row ``n`` of triangle ``d`` modulo 2 as a packed bit row."""
    _check_args(d, n, cap)
    return _parity_row_cached(d, n)


def path_count_oracle(d, n, k, *, max_n=MAX_ORACLE_ROW):
    """Count paths from the root to vertex ``(n, k)`` of the triangle graph.

    Vertices are ``(r, j)`` with ``0 <= j <= d*r``; edges go from ``(r, j)``
    to ``(r+1, j+i)`` for ``0 <= i <= d``. Forward DP over explicit vertices.
    """
    if n > max_n:
        raise ResourceLimitError("oracle refuses n=%d (budget %d)" % (n, max_n))
    if d < 0 or n < 0:
        raise ValueError("need d >= 0 and n >= 0")
    if not 0 <= k <= d * n:
        return 0
    paths = {(0, 0): 1}
    for r in range(n):
        layer = {}
        for (_, j), count in paths.items():
            for i in range(d + 1):
                layer[(r + 1, j + i)] = layer.get((r + 1, j + i), 0) + count
        paths = layer
    return paths.get((n, k), 0)
