"""Stream expressions over {0,1} and their finite materialization.

Expressions are immutable trees. ``materialize(e, n)`` returns the first ``n``
bits of the stream ``e`` denotes, reading each subexpression to exactly the
length given by :func:`demand_of`.

Named streams are defined by guarded corecursive equations (``EQUATIONS``) and
solved by :func:`fixpoint_materialize`, which repeatedly re-evaluates each
right-hand side against the prefixes known so far. Each named stream also has
an independent direct generator, :func:`gen_named`, used to cross-check the
equation solver.
"""

import threading
from dataclasses import dataclass, field

import numpy as np

from bitorbit import kernels
from bitorbit.bitword import BitWord, invert, shift, xor
from bitorbit.difference import iterate_diff_fast
from bitorbit.errors import ProductivityError

__all__ = [
    "StreamExpr", "Named", "Point", "EvP", "Cons", "Inv", "Tail", "ZipNM", "Xor",
    "Diff", "Ref", "Subst", "Demand", "NAMES", "EQUATIONS",
    "materialize", "demand_of", "gen_named", "fixpoint_materialize",
    "zip_words", "StreamStore", "default_store",
]

NAMES = ("thue-morse", "period-doubling", "fibonacci", "mephisto", "sierpinski")


def _bits(x):
    return BitWord.from_text(x) if isinstance(x, str) else x


class StreamExpr:
    """Base class of expression nodes."""

    def children(self):
        return ()


@dataclass(frozen=True)
class Named(StreamExpr):
    name: str

    def __post_init__(self):
        if self.name not in NAMES:
            raise ValueError("unknown stream %r (known: %s)" % (self.name, ", ".join(NAMES)))


@dataclass(frozen=True)
class Point(StreamExpr):
    """Zero everywhere except a single one at position ``p``."""
    p: int

    def __post_init__(self):
        if self.p < 0:
            raise ValueError("point position must be >= 0")


@dataclass(frozen=True)
class EvP(StreamExpr):
    """Eventually periodic stream ``prefix cycle cycle cycle ...``."""
    prefix: BitWord
    cycle: BitWord

    def __post_init__(self):
        object.__setattr__(self, "prefix", _bits(self.prefix))
        object.__setattr__(self, "cycle", _bits(self.cycle))
        if len(self.cycle) == 0:
            raise ValueError("evp cycle must be nonempty")


@dataclass(frozen=True)
class Cons(StreamExpr):
    word: BitWord
    body: StreamExpr

    def __post_init__(self):
        object.__setattr__(self, "word", _bits(self.word))

    def children(self):
        return (self.body,)


@dataclass(frozen=True)
class Inv(StreamExpr):
    body: StreamExpr

    def children(self):
        return (self.body,)


@dataclass(frozen=True)
class Tail(StreamExpr):
    k: int
    body: StreamExpr

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("tail count must be >= 0")

    def children(self):
        return (self.body,)


@dataclass(frozen=True)
class ZipNM(StreamExpr):
    """Alternate blocks: ``n`` bits of ``left``, then ``m`` bits of ``right``."""
    n: int
    m: int
    left: StreamExpr
    right: StreamExpr

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("zip block sizes must be >= 1")

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Xor(StreamExpr):
    left: StreamExpr
    right: StreamExpr

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Diff(StreamExpr):
    """``n``-fold ``d+1``-block difference of ``body``."""
    d: int
    n: int
    body: StreamExpr

    def __post_init__(self):
        if self.d < 0 or self.n < 0:
            raise ValueError("diff needs d >= 0 and n >= 0")

    def children(self):
        return (self.body,)


@dataclass(frozen=True)
class Ref(StreamExpr):
    """Reference to another equation of an equation system."""
    name: str


@dataclass(frozen=True)
class Subst(StreamExpr):
    """Letter-to-word substitution applied to ``body``: 0 -> image0, 1 -> image1."""
    image0: BitWord
    image1: BitWord
    body: StreamExpr

    def __post_init__(self):
        object.__setattr__(self, "image0", _bits(self.image0))
        object.__setattr__(self, "image1", _bits(self.image1))
        if not len(self.image0) or not len(self.image1):
            raise ValueError("substitution images must be nonempty")

    def children(self):
        return (self.body,)


# Equation system for the named streams. The auxiliary words are private names.
EQUATIONS = {
    "thue-morse": Cons("0", ZipNM(1, 1, Inv(Ref("thue-morse")), Tail(1, Ref("thue-morse")))),
    "period-doubling": ZipNM(3, 1, Ref("_w-period-doubling"), Ref("period-doubling")),
    "_w-period-doubling": Cons("101", Ref("_w-period-doubling")),
    "mephisto": Subst("001", "110", Cons("0", Tail(1, Ref("mephisto")))),
    "sierpinski": ZipNM(8, 1, Ref("_w-sierpinski"), Ref("sierpinski")),
    "_w-sierpinski": Cons("11000011", Inv(Ref("_w-sierpinski"))),
    "fibonacci": Subst("1", "10", Cons("1", Tail(1, Ref("fibonacci")))),
}


# ---------------------------------------------------------------------------
# demand


@dataclass(frozen=True)
class Demand:
    """Prefix length required of ``expr``, with the demands it places on its children."""
    expr: StreamExpr
    length: int
    children: tuple = field(default=())

    def leaves(self):
        if not self.children:
            yield self
        for child in self.children:
            yield from child.leaves()


def _child_lengths(e, n):
    if n == 0:
        # an empty prefix needs nothing, even through tail or diff
        return (0,) * len(e.children())
    match e:
        case Cons(word=w):
            return (max(0, n - len(w)),)
        case Inv():
            return (n,)
        case Tail(k=k):
            return (n + k,)
        case Xor():
            return (n, n)
        case Diff(d=d, n=times):
            return (n + d * times,)
        case ZipNM(n=bn, m=bm):
            c, r = divmod(n, bn + bm)
            return (c * bn + min(r, bn), c * bm + max(0, r - bn))
        case Subst(image0=u0, image1=u1):
            shortest = min(len(u0), len(u1))
            return (-(-n // shortest),)
    return ()


def demand_of(e, length):
    """Required prefix lengths of every subexpression for ``length`` output bits."""
    sub = _child_lengths(e, length)
    return Demand(e, length, tuple(demand_of(c, k) for c, k in zip(e.children(), sub)))


# ---------------------------------------------------------------------------
# evaluation


def zip_words(n, m, a, b, limit=None):
    """Interleave ``n``-blocks of ``a`` with ``m``-blocks of ``b`` for as long as both last.

    A trailing block that cannot be completed is emitted partially, and the
    output stops there. Result is capped at ``limit`` bits.
    """
    c = min(len(a) // n, len(b) // m)
    if n == 1 and m == 1:
        full_a, full_b = a.take(c), b.take(c)
        body = BitWord._raw(kernels.clsquare(full_a.value) | (kernels.clsquare(full_b.value) << 1), 2 * c)
    else:
        A, B = a.to_array(), b.to_array()
        blocks = np.concatenate([A[:c * n].reshape(c, n), B[:c * m].reshape(c, m)], axis=1)
        body = BitWord.from_array(blocks.ravel())
    rest_a = shift(a, c * n)
    if len(rest_a) < n:
        out = body + rest_a
    else:
        out = body + rest_a.take(n) + shift(b, c * m)
    return out if limit is None else out.take(limit)


def apply_substitution(image0, image1, w):
    """Concatenate the images of the letters of ``w``."""
    if len(w) == 0:
        return BitWord.empty()
    bits = w.to_array()
    if len(image0) == len(image1):
        table = np.stack([image0.to_array(), image1.to_array()])
        return BitWord.from_array(table[bits].ravel())
    width = max(len(image0), len(image1))
    table = np.zeros((2, width), dtype=np.uint8)
    valid = np.zeros((2, width), dtype=bool)
    for row, img in enumerate((image0, image1)):
        table[row, :len(img)] = img.to_array()
        valid[row, :len(img)] = True
    return BitWord.from_array(table[bits][valid[bits]])


def _evaluate(e, n, lookup):
    """First ``n`` bits of ``e``, or fewer if a referenced prefix runs short."""
    if n == 0:
        return BitWord.empty()
    sub = _child_lengths(e, n)
    match e:
        case Point(p=p):
            return BitWord.unit(p, n)
        case EvP(prefix=pre, cycle=cyc):
            return pre.take(n) + BitWord.repeat(cyc, max(0, n - len(pre)))
        case Named(name=name) | Ref(name=name):
            return lookup(e, n)
        case Cons(word=w, body=b):
            if n <= len(w):
                return w.take(n)
            return w + _evaluate(b, sub[0], lookup)
        case Inv(body=b):
            return invert(_evaluate(b, sub[0], lookup))
        case Tail(k=k, body=b):
            x = _evaluate(b, sub[0], lookup)
            return shift(x, min(k, len(x)))
        case Xor(left=a, right=b):
            return xor(_evaluate(a, sub[0], lookup), _evaluate(b, sub[1], lookup))
        case Diff(d=d, n=times, body=b):
            x = _evaluate(b, sub[0], lookup)
            if len(x) < d * times:
                return BitWord.empty()
            return iterate_diff_fast(d, times, x)
        case ZipNM(n=bn, m=bm, left=a, right=b):
            return zip_words(bn, bm, _evaluate(a, sub[0], lookup), _evaluate(b, sub[1], lookup), n)
        case Subst(image0=u0, image1=u1, body=b):
            return apply_substitution(u0, u1, _evaluate(b, sub[0], lookup)).take(n)
    raise TypeError("not a stream expression: %r" % (e,))


def materialize(e, length, *, store=None):
    """The first ``length`` bits of the stream denoted by ``e``."""
    if length < 0:
        raise ValueError("length must be >= 0")
    store = default_store if store is None else store

    def lookup(node, n):
        if isinstance(node, Ref):
            raise ValueError("unbound reference %r outside an equation system" % node.name)
        return store.prefix(node.name, n)

    out = _evaluate(e, length, lookup)
    assert len(out) == length
    return out


# ---------------------------------------------------------------------------
# equation systems


def _required_lengths(defs, target, length):
    required = {name: 0 for name in defs}
    required[target] = length
    # a self-demand that keeps growing means the system is not productive;
    # stop propagating after a bounded number of rounds and let the solver report it
    for _ in range(len(defs) + 2):
        changed = False
        for name, rhs in defs.items():
            if not required[name]:
                continue
            for leaf in demand_of(rhs, required[name]).leaves():
                if isinstance(leaf.expr, Ref):
                    ref = leaf.expr.name
                    if ref not in defs:
                        raise KeyError("equation %r references undefined name %r" % (name, ref))
                    if leaf.length > required[ref]:
                        required[ref] = leaf.length
                        changed = True
        if not changed:
            break
    return required


def _solve(defs, target, length, env, max_sweeps=None):
    if target not in defs:
        raise KeyError("no equation for %r" % target)
    required = _required_lengths(defs, target, length)
    for name in defs:
        env.setdefault(name, BitWord.empty())
    budget = max_sweeps if max_sweeps is not None else max(16, 10 * length)

    def lookup(node, n):
        if isinstance(node, Ref):
            return env[node.name].take(n)
        return default_store.prefix(node.name, n)

    for _ in range(budget):
        if len(env[target]) >= length:
            return env[target].take(length)
        progress = 0
        stalled = []
        for name, rhs in defs.items():
            grown = False
            while len(env[name]) < required[name]:
                new = _evaluate(rhs, required[name], lookup)
                old = env[name]
                if len(new) <= len(old):
                    break
                env[name] = new
                progress += len(new) - len(old)
                grown = True
            if not grown and len(env[name]) < required[name]:
                stalled.append(name)
        if progress == 0:
            raise ProductivityError(
                "no progress on %s; stuck at %s" % (
                    ", ".join(stalled),
                    ", ".join("%s=%r (%d of %d bits)" % (s, defs[s], len(env[s]), required[s])
                              for s in stalled)),
                stuck=stalled)
    if len(env[target]) >= length:
        return env[target].take(length)
    raise ProductivityError("sweep budget of %d exhausted before %r reached %d bits"
                            % (budget, target, length), stuck=[target])


def fixpoint_materialize(defs, target, length, *, max_sweeps=None):
    """Solve the equation system ``defs`` (name -> expression using :class:`Ref`)
    until ``target`` has ``length`` known bits.

    Raises ProductivityError when a full sweep over all equations adds no bits.
    """
    return _solve(defs, target, length, {}, max_sweeps)


class StreamStore:
    """Longest materialized prefix of every named stream, extended on demand.

    Extension of the shared prefixes is serialized by a lock; reads of an
    already long enough prefix do not take it.
    """

    def __init__(self, defs=None):
        self.defs = dict(EQUATIONS if defs is None else defs)
        self._env = {}
        self._lock = threading.Lock()

    def prefix(self, name, n):
        known = self._env.get(name)
        if known is not None and len(known) >= n:
            return known.take(n)
        with self._lock:
            known = self._env.get(name)
            if known is None or len(known) < n:
                _solve(self.defs, name, n, self._env)
            return self._env[name].take(n)

    def known_length(self, name):
        w = self._env.get(name)
        return 0 if w is None else len(w)


default_store = StreamStore()


# ---------------------------------------------------------------------------
# direct generators


def _iterate_uniform_or_not(image0, image1, start, n):
    w = BitWord.from_bits([start])
    while len(w) < n:
        nxt = apply_substitution(image0, image1, w)
        if len(nxt) <= len(w):
            raise ValueError("substitution does not grow from %d" % start)
        w = nxt
    return w.take(n)


def _periodic_zip(block, word, n):
    # zip_{block,1}(word^omega, X) = X, read off by index: position i sits in
    # cycle i // (block+1); the last slot of each cycle repeats X(i // (block+1))
    q = block + 1
    idx = np.arange(n, dtype=np.int64)
    r = idx % q
    hit = r == block
    while hit.any():
        idx[hit] //= q
        r = idx % q
        hit = r == block
    pos = (idx // q) * block + r
    return BitWord.from_array(word.to_array()[pos % len(word)])


def _thue_morse(n):
    v, k = 0, 1
    while k < n:
        v |= (v ^ ((1 << k) - 1)) << k
        k *= 2
    return BitWord._raw(v & ((1 << n) - 1), n)


def gen_named(name, length):
    """First ``length`` bits of a named stream, computed without the equation solver."""
    if length < 0:
        raise ValueError("length must be >= 0")
    if length == 0:
        return BitWord.empty()
    if name == "thue-morse":
        return _thue_morse(length)
    if name == "period-doubling":
        return _periodic_zip(3, BitWord.from_text("101"), length)
    if name == "sierpinski":
        return _periodic_zip(8, BitWord.from_text("1100001100111100"), length)
    if name == "mephisto":
        return _iterate_uniform_or_not(BitWord.from_text("001"), BitWord.from_text("110"), 0, length)
    if name == "fibonacci":
        return _iterate_uniform_or_not(BitWord.from_text("1"), BitWord.from_text("10"), 1, length)
    raise ValueError("unknown stream %r" % name)
