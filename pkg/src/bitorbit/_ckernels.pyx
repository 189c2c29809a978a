# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same names and semantics as ``_kernels_py``.

Ints are moved into little-endian uint64 buffers; a little-endian host is
assumed (checked at import by ``kernels``).
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport calloc, free
from libc.string cimport memcpy


cdef extern from *:
    int __builtin_ctzll(unsigned long long x) nogil


cdef uint64_t* _load(object value, Py_ssize_t nwords) except NULL:
    cdef bytes raw = value.to_bytes(nwords * 8, "little")
    cdef uint64_t* buf = <uint64_t*>calloc(nwords + 1, sizeof(uint64_t))
    if buf == NULL:
        raise MemoryError()
    memcpy(buf, <const char*>raw, nwords * 8)
    return buf


cdef object _store(uint64_t* buf, Py_ssize_t nwords):
    return int.from_bytes((<char*>buf)[:nwords * 8], "little")


cdef inline Py_ssize_t _words(Py_ssize_t nbits):
    return (nbits + 63) // 64


def clmul(a, b):
    if a == 0 or b == 0:
        return 0
    if a.bit_count() > b.bit_count():
        a, b = b, a
    cdef Py_ssize_t na = _words(a.bit_length())
    cdef Py_ssize_t nb = _words(b.bit_length())
    cdef uint64_t* pa = _load(a, na)
    cdef uint64_t* pb = NULL
    cdef uint64_t* pr = NULL
    cdef Py_ssize_t i, k
    cdef int j
    cdef uint64_t x, bk
    try:
        pb = _load(b, nb)
        pr = <uint64_t*>calloc(na + nb + 1, sizeof(uint64_t))
        if pr == NULL:
            raise MemoryError()
        for i in range(na):
            x = pa[i]
            while x:
                j = __builtin_ctzll(x)
                x &= x - 1
                if j == 0:
                    for k in range(nb):
                        pr[i + k] ^= pb[k]
                else:
                    for k in range(nb):
                        bk = pb[k]
                        pr[i + k] ^= bk << j
                        pr[i + k + 1] ^= bk >> (64 - j)
        return _store(pr, na + nb)
    finally:
        free(pa)
        free(pb)
        free(pr)


cdef inline uint64_t _spread32(uint64_t x):
    x &= 0xFFFFFFFFULL
    x = (x | (x << 16)) & 0x0000FFFF0000FFFFULL
    x = (x | (x << 8)) & 0x00FF00FF00FF00FFULL
    x = (x | (x << 4)) & 0x0F0F0F0F0F0F0F0FULL
    x = (x | (x << 2)) & 0x3333333333333333ULL
    x = (x | (x << 1)) & 0x5555555555555555ULL
    return x


def clsquare(a):
    if a == 0:
        return 0
    cdef Py_ssize_t n = _words(a.bit_length())
    cdef uint64_t* pa = _load(a, n)
    cdef uint64_t* pr = NULL
    cdef Py_ssize_t i
    try:
        pr = <uint64_t*>calloc(2 * n, sizeof(uint64_t))
        if pr == NULL:
            raise MemoryError()
        for i in range(n):
            pr[2 * i] = _spread32(pa[i])
            pr[2 * i + 1] = _spread32(pa[i] >> 32)
        return _store(pr, 2 * n)
    finally:
        free(pa)
        free(pr)


def prefix_xor(a, Py_ssize_t nbits):
    if nbits <= 0:
        return 0
    cdef Py_ssize_t n = _words(nbits)
    cdef object mask = (<object>1 << nbits) - 1
    a = a & mask
    cdef uint64_t* pa = _load(a, n)
    cdef Py_ssize_t i
    cdef uint64_t x, carry = 0
    try:
        for i in range(n):
            x = pa[i]
            x ^= x << 1
            x ^= x << 2
            x ^= x << 4
            x ^= x << 8
            x ^= x << 16
            x ^= x << 32
            if carry:
                x = ~x
            carry = x >> 63
            pa[i] = x
        return _store(pa, n) & mask
    finally:
        free(pa)


def fst_run(next_state, out_value, out_len, int initial, value, Py_ssize_t nbits):
    cdef Py_ssize_t ntrans = len(next_state)
    cdef Py_ssize_t i, pos = 0, w, cap
    cdef int state = initial, k, ln, maxlen = 0, sh
    cdef uint64_t v
    cdef int* nxt = <int*>calloc(ntrans + 1, sizeof(int))
    cdef int* olen = <int*>calloc(ntrans + 1, sizeof(int))
    cdef uint64_t* oval = <uint64_t*>calloc(ntrans + 1, sizeof(uint64_t))
    cdef uint64_t* pin = NULL
    cdef uint64_t* pout = NULL
    try:
        if nxt == NULL or olen == NULL or oval == NULL:
            raise MemoryError()
        for i in range(ntrans):
            nxt[i] = next_state[i]
            olen[i] = out_len[i]
            if olen[i] > 64:
                raise ValueError("compiled fst_run supports outputs of at most 64 bits")
            oval[i] = out_value[i]
            if olen[i] > maxlen:
                maxlen = olen[i]
        if nbits == 0:
            return 0, 0, state
        pin = _load(value, _words(nbits))
        cap = _words(nbits * maxlen) + 2
        pout = <uint64_t*>calloc(cap, sizeof(uint64_t))
        if pout == NULL:
            raise MemoryError()
        for i in range(nbits):
            k = 2 * state + <int>((pin[i >> 6] >> (i & 63)) & 1)
            ln = olen[k]
            if ln:
                v = oval[k]
                w = pos >> 6
                sh = pos & 63
                pout[w] ^= v << sh
                if sh and sh + ln > 64:
                    pout[w + 1] ^= v >> (64 - sh)
                pos += ln
            state = nxt[k]
        return _store(pout, _words(pos)), pos, state
    finally:
        free(nxt)
        free(olen)
        free(oval)
        free(pin)
        free(pout)
