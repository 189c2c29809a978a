"""Immutable packed bit sequences.

A :class:`BitWord` stores its bits in a single Python int, little-bit-endian:
bit ``i`` of the word is ``(value >> i) & 1``. CPython keeps big ints as arrays
of machine words, so shifts and XORs below run as word-level loops in C.
"""

import numpy as np

from bitorbit.errors import OutOfRangeError

__all__ = ["BitWord", "xor", "invert", "shift", "first_disagreement"]


class BitWord:
    """Finite bit sequence; the materialized prefix of a stream."""

    __slots__ = ("value", "length")

    def __init__(self, value=0, length=0):
        if length < 0:
            raise ValueError("negative length")
        if value < 0 or value >> length:
            raise ValueError("payload has bits at or beyond position %d" % length)
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "length", length)

    @classmethod
    def _raw(cls, value, length):
        # trusted constructor: caller guarantees canonical form
        w = object.__new__(cls)
        object.__setattr__(w, "value", value)
        object.__setattr__(w, "length", length)
        return w

    def __setattr__(self, name, value):
        raise AttributeError("BitWord is immutable")

    # construction

    @classmethod
    def empty(cls):
        return _EMPTY

    @classmethod
    def from_text(cls, text):
        """Parse '0'/'1' characters, position 0 leftmost."""
        text = text.strip()
        if text.strip("01"):
            raise ValueError("bit text may only contain '0' and '1': %r" % text)
        if not text:
            return _EMPTY
        return cls._raw(int(text[::-1], 2), len(text))

    @classmethod
    def from_bits(cls, bits):
        bits = list(bits)
        value = 0
        for i, b in enumerate(bits):
            if b not in (0, 1, True, False):
                raise ValueError("not a bit: %r" % (b,))
            if b:
                value |= 1 << i
        return cls._raw(value, len(bits))

    @classmethod
    def from_array(cls, arr):
        arr = np.asarray(arr, dtype=np.uint8)
        n = arr.shape[0]
        if n == 0:
            return _EMPTY
        packed = np.packbits(arr & 1, bitorder="little")
        return cls._raw(int.from_bytes(packed.tobytes(), "little"), n)

    @classmethod
    def zeros(cls, n):
        return cls._raw(0, n)

    @classmethod
    def ones(cls, n):
        return cls._raw((1 << n) - 1, n)

    @classmethod
    def unit(cls, p, n):
        """``n`` bits, all zero except position ``p`` (if ``p < n``)."""
        return cls._raw(1 << p if p < n else 0, n)

    @classmethod
    def repeat(cls, cycle, n):
        """First ``n`` bits of ``cycle`` repeated forever."""
        if cycle.length == 0:
            raise ValueError("cannot repeat an empty word")
        v, k = cycle.value, cycle.length
        while k < n:
            v |= v << k
            k *= 2
        return cls._raw(v & ((1 << n) - 1), n)

    # conversion

    def to_text(self):
        if self.length == 0:
            return ""
        return format(self.value, "0%db" % self.length)[::-1]

    def to_array(self):
        if self.length == 0:
            return np.zeros(0, dtype=np.uint8)
        raw = self.value.to_bytes((self.length + 7) // 8, "little")
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
        return bits[:self.length]

    def tolist(self):
        return [(self.value >> i) & 1 for i in range(self.length)]

    # access

    def get(self, i):
        if not 0 <= i < self.length:
            raise OutOfRangeError("bit index %d out of range for length %d" % (i, self.length))
        return (self.value >> i) & 1

    def take(self, n):
        """First ``min(n, len)`` bits."""
        if n >= self.length:
            return self
        if n <= 0:
            return _EMPTY
        return BitWord._raw(self.value & ((1 << n) - 1), n)

    def concat(self, other):
        return BitWord._raw(self.value | (other.value << self.length),
                            self.length + other.length)

    def count(self):
        return self.value.bit_count()

    def __len__(self):
        return self.length

    def __getitem__(self, key):
        if isinstance(key, slice):
            start, stop, step = key.indices(self.length)
            if step != 1:
                return BitWord.from_bits(self.tolist()[key])
            if stop <= start:
                return _EMPTY
            return shift(self, start).take(stop - start)
        if key < 0:
            key += self.length
        return self.get(key)

    def __iter__(self):
        v = self.value
        for _ in range(self.length):
            yield v & 1
            v >>= 1

    def __add__(self, other):
        if not isinstance(other, BitWord):
            return NotImplemented
        return self.concat(other)

    def __xor__(self, other):
        if not isinstance(other, BitWord):
            return NotImplemented
        return xor(self, other)

    def __invert__(self):
        return invert(self)

    def __eq__(self, other):
        if not isinstance(other, BitWord):
            return NotImplemented
        return self.length == other.length and self.value == other.value

    def __hash__(self):
        return hash((self.value, self.length))

    def __repr__(self):
        text = self.to_text()
        if len(text) > 64:
            text = text[:64] + "..."
        return "BitWord(%r, len=%d)" % (text, self.length)

    def __str__(self):
        return self.to_text()


_EMPTY = BitWord._raw(0, 0)


def xor(a, b):
    """Positionwise sum mod 2 over the common length."""
    n = min(a.length, b.length)
    return BitWord._raw((a.value ^ b.value) & ((1 << n) - 1), n)


def invert(w):
    return BitWord._raw(w.value ^ ((1 << w.length) - 1), w.length)


def shift(w, k):
    """Drop the first ``k`` bits (``tail^k`` on a prefix)."""
    if k < 0 or k > w.length:
        raise OutOfRangeError("cannot shift a %d-bit word by %d" % (w.length, k))
    return BitWord._raw(w.value >> k, w.length - k)


def first_disagreement(a, b):
    """Least index where ``a`` and ``b`` differ, or None if they agree on their overlap."""
    n = min(a.length, b.length)
    diff = (a.value ^ b.value) & ((1 << n) - 1)
    if diff == 0:
        return None
    return (diff & -diff).bit_length() - 1
