"""Acceptance criteria, one check per criterion.

Run with pytest (a summary block lists every criterion) or directly::

    python tests/test_acceptance.py
"""

import hashlib
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from itertools import product

import pytest

from conftest import ACCEPTANCE_LINES
from bitorbit import streams
from bitorbit.bitword import BitWord
from bitorbit.cli import main as cli_main
from bitorbit.difference import (block_diff, diff_pow2, iterate_diff_fast, iterate_diff_naive,
                                 triangle_apply)
from bitorbit.orbit import build_orbit
from bitorbit.pascal import parity_row, pascal_row_exact
from bitorbit.parser import parse_expr
from bitorbit.periodicity import (certificate_for_evp, check_strong_preservation, distinct_rows,
                                  holds, orbit_witness_from_period, point_orbit_facts)
from bitorbit.render import decode_pbm, render_orbit_pbm, turtle_path
from bitorbit.streams import EvP, Named, StreamStore, gen_named, materialize, zip_words
from bitorbit.transducer import delta_fst, run

T31 = "1011101010111011101110101011101"
DIFF_PREFIX = "1100110111100111"
TRIANGLE_2_ROWS = [
    [1],
    [1, 1, 1],
    [1, 2, 3, 2, 1],
    [1, 3, 6, 7, 6, 3, 1],
    [1, 4, 10, 16, 19, 16, 10, 4, 1],
    [1, 5, 15, 30, 45, 51, 45, 30, 15, 5, 1],
    [1, 6, 21, 50, 90, 126, 141, 126, 90, 50, 21, 6, 1],
]


@contextmanager
def cold_store():
    """Swap in an empty process-wide store so timings include stream generation."""
    saved = streams.default_store
    streams.default_store = StreamStore()
    try:
        yield
    finally:
        streams.default_store = saved


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def evp_corpus(count=200, seed=2009):
    r = random.Random(seed)
    corpus = []
    for _ in range(count):
        p, n0, d = r.randint(1, 8), r.randint(0, 4), r.randint(0, 3)
        prefix = "".join(r.choice("01") for _ in range(n0))
        cycle = "".join(r.choice("01") for _ in range(p))
        corpus.append((EvP(prefix, cycle), d))
    return corpus


def criterion_1():
    with cold_store():
        code, secs = timed(lambda: cli_main(["check", "diff(thue-morse)", "period-doubling",
                                             "--len", "65536"]))
    head = materialize(parse_expr("diff(thue-morse)"), 31).to_text()
    ok = code == 0 and head == T31 and secs < 1.0
    return ok, "exit=%d prefix31=%s time=%.3fs" % (code, head == T31, secs)


def criterion_2():
    def both():
        a = materialize(parse_expr("diff^2(sierpinski)"), 65536)
        b = materialize(parse_expr("diff^3(mephisto)"), 65536)
        return a, b
    with cold_store():
        (a, b), secs = timed(both)
    ok = a == b and a.take(16).to_text() == DIFF_PREFIX and secs < 1.0
    return ok, "agree=%s prefix=%s time=%.3fs" % (a == b, a.take(16).to_text(), secs)


def criterion_3():
    rows = [list(pascal_row_exact(2, n).entries) for n in range(7)]
    sums = [sum(r) for r in rows]
    ok = rows == TRIANGLE_2_ROWS and sums == [3 ** n for n in range(7)]
    return ok, "rows=%s sums=%s" % (rows == TRIANGLE_2_ROWS, sums)


def criterion_4():
    ones = parity_row(2, 4).ones()
    bad = []
    for d in range(4):
        for m in range(11):
            n = 1 << m
            expected = [0] * (d * n + 1)
            for k in range(d + 1):
                expected[k * n] = 1
            if parity_row(d, n).bits.tolist() != expected:
                bad.append((d, m))
    ok = ones == [0, 4, 8] and not bad
    return ok, "ones(2,4)=%s bad=%s" % (ones, bad)


def criterion_5():
    def suite():
        r = random.Random(5)
        mismatches = 0
        for _ in range(200):
            w = BitWord(r.getrandbits(1024), 1024)
            for d in (1, 2, 3):
                for n in range(65):
                    ref = iterate_diff_naive(d, n, w)
                    same = iterate_diff_fast(d, n, w) == ref and triangle_apply(d, n, w) == ref
                    if n and n & (n - 1) == 0:
                        same = same and diff_pow2(d, n.bit_length() - 1, w) == ref
                    mismatches += not same
        exhaustive = 0
        for length in range(13):
            for bits in product((0, 1), repeat=length):
                w = BitWord.from_bits(bits)
                for n in range(min(4, length) + 1):
                    ref = iterate_diff_naive(1, n, w)
                    same = iterate_diff_fast(1, n, w) == ref and triangle_apply(1, n, w) == ref
                    if n and n & (n - 1) == 0:
                        same = same and diff_pow2(1, n.bit_length() - 1, w) == ref
                    mismatches += not same
                    exhaustive += 1
        return mismatches, exhaustive
    (mismatches, exhaustive), secs = timed(suite)
    ok = mismatches == 0 and secs < 30.0
    return ok, "mismatches=%d exhaustive-cases=%d time=%.2fs" % (mismatches, exhaustive, secs)


def criterion_6():
    r = random.Random(6)
    bad = []
    for trial in range(50):
        w = BitWord(r.getrandbits(512), 512)
        for m in range(6):
            n = (1 << m) - 1
            if iterate_diff_naive(1, n, w) != block_diff(n, w):
                bad.append((trial, m))
    return not bad, "words=50 m=0..5 bad=%s" % bad


def criterion_7():
    failed = []
    for p in (8, 16, 32, 512):
        rep = point_orbit_facts(p, 4 * p)
        failed += ["%s@p=%d" % (f.name, p) for f in rep.facts if not f.passed]
    return not failed, "p=8,16,32,512 window=4p failed=%s" % failed


def criterion_8():
    failures = []
    for e, d in evp_corpus():
        cert = certificate_for_evp(e)
        try:
            w = orbit_witness_from_period(e, cert, d, 512)
        except Exception as exc:  # reported, not raised
            failures.append("%r: %s" % (e, exc))
            continue
        # independent recheck of the row equality with the triangle operator
        cols = cert.offset + 512
        s = materialize(e, cols + d * w.n2)
        if triangle_apply(d, w.n1, s).take(cols) != triangle_apply(d, w.n2, s).take(cols):
            failures.append("%r: rows %d/%d differ" % (e, w.n1, w.n2))
    return not failures, "streams=200 columns=512 failures=%d %s" % (len(failures), failures[:3])


def criterion_9():
    ok = distinct_rows(Named("thue-morse"), 1, 64, 2048)
    return ok, "rows=64 cols=2048 distinct=%s" % ok


def criterion_10():
    failures = []
    for e, d in evp_corpus():
        cert = certificate_for_evp(e, evidence_len=512)
        out = block_diff(d, materialize(e, cert.evidence_len))
        if not (check_strong_preservation(cert, d, e) and holds(out, cert.offset, cert.period)):
            failures.append(repr(e))
    return not failures, "streams=200 failures=%d %s" % (len(failures), failures[:3])


def criterion_11():
    window = 4096
    bad = []
    m = gen_named("thue-morse", window + 2 * 17)
    for n in range(1, 9):
        dn = iterate_diff_fast(1, n, m)
        dn1 = iterate_diff_fast(1, n + 1, m)
        if iterate_diff_fast(1, 2 * n, m).take(window) != zip_words(1, 1, dn, dn, window):
            bad.append("even n=%d" % n)
        if iterate_diff_fast(1, 2 * n + 1, m).take(window) != \
                zip_words(1, 1, BitWord.zeros(window), dn1, window):
            bad.append("odd n=%d" % n)
    return not bad, "n=1..8 window=4096 bad=%s" % bad


def criterion_12():
    def suite():
        t = delta_fst()
        mism = 0
        for length in range(13):
            for bits in product((0, 1), repeat=length):
                w = BitWord.from_bits(bits)
                expected = block_diff(1, w) if length else BitWord.empty()
                mism += run(t, w) != expected
        w = gen_named("thue-morse", 10 ** 6)
        big = run(t, w) == block_diff(1, w)
        return mism, big
    with cold_store():
        (mism, big), secs = timed(suite)
    ok = mism == 0 and big and secs < 5.0
    return ok, "exhaustive-mismatches=%d 1e6-bit=%s time=%.2fs" % (mism, big, secs)


_PBM_SNIPPET = (
    "import hashlib, sys\n"
    "from bitorbit.orbit import build_orbit\n"
    "from bitorbit.render import render_orbit_pbm\n"
    "from bitorbit.streams import Named\n"
    "sys.stdout.write(hashlib.sha256(render_orbit_pbm("
    "build_orbit(Named('thue-morse'), 1, 400, 400))).hexdigest())\n"
)


def criterion_13():
    m = build_orbit(Named("thue-morse"), 1, 400, 400)
    data = render_orbit_pbm(m)
    with cold_store():
        again = render_orbit_pbm(build_orbit(Named("thue-morse"), 1, 400, 400))
    other = subprocess.run([sys.executable, "-c", _PBM_SNIPPET], capture_output=True,
                           text=True, check=False).stdout
    deterministic = data == again and other == hashlib.sha256(data).hexdigest()
    decodes = (decode_pbm(data) == m.to_array()).all()
    x, y = turtle_path(BitWord.from_text("111111")).vertices[-1]
    closes = (x * x + y * y) ** 0.5 < 1e-9
    ok = deterministic and decodes and closes
    return ok, "deterministic=%s decodes=%s hexagon-gap=%.1e" % (deterministic, decodes,
                                                                 (x * x + y * y) ** 0.5)


def criterion_14():
    r = random.Random(14)
    n = 1 << 12
    w = BitWord(r.getrandbits((1 << 16) + n), (1 << 16) + n)
    fast, secs = timed(lambda: iterate_diff_fast(1, n, w))
    same = fast == triangle_apply(1, n, w) and len(fast) == 1 << 16
    return same and secs < 2.0, "equal=%s time=%.3fs" % (same, secs)


CRITERIA = [
    (1, "diff(thue-morse) = period-doubling", criterion_1),
    (2, "diff^2(sierpinski) = diff^3(mephisto)", criterion_2),
    (3, "Pascal rows d=2, n<=6", criterion_3),
    (4, "parity rows", criterion_4),
    (5, "operator equivalence suite", criterion_5),
    (6, "Mersenne iterate = block difference", criterion_6),
    (7, "point-stream facts", criterion_7),
    (8, "orbit witness from period", criterion_8),
    (9, "distinct thue-morse orbit rows", criterion_9),
    (10, "strong preservation", criterion_10),
    (11, "thue-morse zip identities", criterion_11),
    (12, "FST equivalence", criterion_12),
    (13, "renderers", criterion_13),
    (14, "fast iteration performance", criterion_14),
]


def _line(num, title, ok, detail):
    return "criterion %2d %s: %s (%s)" % (num, "PASS" if ok else "FAIL", title, detail)


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=["criterion_%02d" % c[0] for c in CRITERIA])
def test_acceptance(num, title, fn):
    ok, detail = fn()
    line = _line(num, title, ok, detail)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    results = []
    for num, title, fn in CRITERIA:
        ok, detail = fn()
        results.append(ok)
        print(_line(num, title, ok, detail), flush=True)
    sys.exit(0 if all(results) else 1)
