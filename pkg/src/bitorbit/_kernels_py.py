"""Pure-Python reference kernels.

Every function here has a twin of the same name and signature in the compiled
``_ckernels`` module. Words are Python ints read little-bit-endian (bit ``i``
of the sequence is ``(value >> i) & 1``).
"""

_SPREAD = [sum(((b >> j) & 1) << (2 * j) for j in range(8)).to_bytes(2, "little")
           for b in range(256)]


def clmul(a, b):
    """Carry-less product of two GF(2)[x] polynomials."""
    if a.bit_count() > b.bit_count():
        a, b = b, a
    acc = 0
    while a:
        low = a & -a
        acc ^= b << (low.bit_length() - 1)
        a ^= low
    return acc


def clsquare(a):
    """Square over GF(2): spread bit ``i`` to bit ``2i``."""
    if a == 0:
        return 0
    data = a.to_bytes((a.bit_length() + 7) // 8, "little")
    return int.from_bytes(b"".join(_SPREAD[x] for x in data), "little")


def prefix_xor(a, nbits):
    """Inclusive running parity: bit ``i`` of the result is XOR of bits 0..i."""
    acc = a
    step = 1
    while step < nbits:
        acc ^= acc << step
        step <<= 1
    return acc & ((1 << nbits) - 1)


def fst_run(next_state, out_value, out_len, initial, value, nbits):
    """Run a table-driven transducer over ``nbits`` input bits.

    Tables are flat, indexed by ``2 * state + bit``. Returns
    ``(output_value, output_length, final_state)``.
    """
    texts = [format(v, "0%db" % n)[::-1] if n else ""
             for v, n in zip(out_value, out_len)]
    nxt = list(next_state)
    state = initial
    pieces = []
    append = pieces.append
    if nbits:
        bits = format(value, "0%db" % nbits)[::-1]
        for ch in bits:
            k = 2 * state + (ch == "1")
            append(texts[k])
            state = nxt[k]
    out = "".join(pieces)
    return (int(out[::-1], 2) if out else 0), len(out), state
