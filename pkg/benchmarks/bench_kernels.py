"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

from bitorbit import kernels
from bitorbit.difference import block_diff
from bitorbit.pascal import parity_row_square_multiply
from bitorbit.streams import gen_named
from bitorbit.transducer import delta_fst, run


def cases():
    r = random.Random(1)
    a, b = r.getrandbits(1 << 14), r.getrandbits(1 << 14)
    big = r.getrandbits(1 << 20)
    tm = gen_named("thue-morse", 10 ** 6)
    fst = delta_fst()
    return [
        ("clmul 16k x 16k bits", lambda: kernels.clmul(a, b)),
        ("clsquare 1M bits", lambda: kernels.clsquare(big)),
        ("prefix_xor 1M bits", lambda: kernels.prefix_xor(big, 1 << 20)),
        ("parity_row(3, 99999)", lambda: parity_row_square_multiply(3, 99999)),
        ("block_diff(200, 1M bits)", lambda: block_diff(200, tm)),
        ("delta FST on 1e6 bits", lambda: run(fst, tm)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    names = sorted(kernels.BACKENDS)
    previous = kernels.backend
    table = {}
    for name in names:
        kernels.use_backend(name)
        for label, fn in cases():
            fn()  # warm caches
            table.setdefault(label, {})[name] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
    kernels.use_backend(previous)

    width = max(len(k) for k in table)
    print("%-*s" % (width, "kernel") + "".join("%12s" % n for n in names)
          + ("%10s" % "speedup" if len(names) > 1 else ""))
    for label, row in table.items():
        line = "%-*s" % (width, label) + "".join("%11.4fs" % row[n] for n in names)
        if "cython" in row:
            line += "%9.1fx" % (row["python"] / row["cython"])
        print(line)
    if len(names) == 1:
        print("(compiled backend not available; only the pure-Python kernels were timed)")


if __name__ == "__main__":
    main()
