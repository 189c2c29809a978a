"""Surface syntax for stream expressions.

Grammar (whitespace between tokens is ignored)::

    expr := NAME
          | "point" "(" NAT ")"
          | "evp" "(" [BITS] "," BITS ")"
          | "inv" "(" expr ")"
          | "tail" ["^" NAT] "(" expr ")"
          | "cons" "(" BITS "," expr ")"
          | "xor" "(" expr "," expr ")"
          | "zip" "(" NAT "," NAT "," expr "," expr ")"
          | "diff" ["_" NAT] ["^" NAT] "(" expr ")"

``NAME`` is one of the named streams; ``diff`` defaults to ``d = 1, n = 1``.
"""

from bitorbit.bitword import BitWord
from bitorbit.errors import ExprSyntaxError
from bitorbit.streams import NAMES, Cons, Diff, EvP, Inv, Named, Point, Tail, Xor, ZipNM

__all__ = ["parse_expr", "format_expr"]

_KEYWORDS = ("point", "evp", "inv", "tail", "cons", "xor", "zip", "diff")


class _Parser:

    def __init__(self, text):
        self.text = text
        self.pos = 0

    def where(self, pos=None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def fail(self, message, expected=(), pos=None):
        line, col = self.where(pos)
        raise ExprSyntaxError(message, line, col, expected)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            self.fail("unexpected %r" % found, ["'%s'" % ch])
        self.pos += 1

    def accept(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def word(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "-"):
            self.pos += 1
        return self.text[start:self.pos], start

    def nat(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected a number", ["NAT"])
        return int(self.text[start:self.pos])

    def bits(self, optional=False):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in "01":
            self.pos += 1
        if start == self.pos and not optional:
            self.fail("expected bits", ["BITS"])
        return BitWord.from_text(self.text[start:self.pos])

    def expr(self):
        name, start = self.word()
        if not name:
            found = self.peek() or "end of input"
            self.fail("unexpected %r" % found, ("NAME",) + _KEYWORDS)
        if name in NAMES:
            return Named(name)
        if name == "point":
            self.expect("(")
            p = self.nat()
            self.expect(")")
            return Point(p)
        if name == "evp":
            self.expect("(")
            prefix = self.bits(optional=True)
            self.expect(",")
            at = self.pos
            cycle = self.bits(optional=True)
            if not len(cycle):
                self.fail("evp cycle must be nonempty", ["BITS"], pos=at)
            self.expect(")")
            return EvP(prefix, cycle)
        if name == "inv":
            self.expect("(")
            body = self.expr()
            self.expect(")")
            return Inv(body)
        if name == "tail":
            k = self.nat() if self.accept("^") else 1
            self.expect("(")
            body = self.expr()
            self.expect(")")
            return Tail(k, body)
        if name == "cons":
            self.expect("(")
            w = self.bits()
            self.expect(",")
            body = self.expr()
            self.expect(")")
            return Cons(w, body)
        if name == "xor":
            self.expect("(")
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect(")")
            return Xor(a, b)
        if name == "zip":
            self.expect("(")
            at = self.pos
            n = self.nat()
            self.expect(",")
            m = self.nat()
            if n < 1 or m < 1:
                self.fail("zip block sizes must be >= 1", ["NAT >= 1"], pos=at)
            self.expect(",")
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect(")")
            return ZipNM(n, m, a, b)
        if name == "diff":
            d = self.nat() if self.accept("_") else 1
            n = self.nat() if self.accept("^") else 1
            self.expect("(")
            body = self.expr()
            self.expect(")")
            return Diff(d, n, body)
        self.fail("unknown name %r" % name, ("NAME",) + _KEYWORDS, pos=start)


def parse_expr(text):
    """Parse the textual form of a stream expression."""
    p = _Parser(text)
    e = p.expr()
    if p.peek():
        p.fail("trailing input %r" % p.text[p.pos:], ["end of input"])
    return e


def format_expr(e):
    """Canonical text of ``e``; ``parse_expr(format_expr(e)) == e``."""
    match e:
        case Named(name=name):
            return name
        case Point(p=p):
            return "point(%d)" % p
        case EvP(prefix=pre, cycle=cyc):
            return "evp(%s,%s)" % (pre.to_text(), cyc.to_text())
        case Inv(body=b):
            return "inv(%s)" % format_expr(b)
        case Tail(k=k, body=b):
            return "tail^%d(%s)" % (k, format_expr(b))
        case Cons(word=w, body=b):
            if not len(w):
                raise ValueError("cons with an empty word has no surface syntax")
            return "cons(%s,%s)" % (w.to_text(), format_expr(b))
        case Xor(left=a, right=b):
            return "xor(%s,%s)" % (format_expr(a), format_expr(b))
        case ZipNM(n=n, m=m, left=a, right=b):
            return "zip(%d,%d,%s,%s)" % (n, m, format_expr(a), format_expr(b))
        case Diff(d=d, n=n, body=b):
            return "diff_%d^%d(%s)" % (d, n, format_expr(b))
    raise ValueError("no surface syntax for %r" % (e,))
