"""Deterministic finite-state transducers over {0,1} with word outputs.

Text format, one transition per line::

    initial: init
    init 0 -> s0
    s0 1 -> s1 1

Each line reads ``state input -> next-state [output-bits]``; a missing output
is the empty word. ``#`` starts a comment.
"""

from bitorbit import kernels
from bitorbit.bitword import BitWord
from bitorbit.errors import FormatError

__all__ = ["Transducer", "run", "delta_fst", "parse_transducer", "format_transducer"]


class Transducer:
    """States, an initial state, and a total step function ``(state, bit) -> (next, output)``."""

    def __init__(self, states, initial, transitions):
        self.states = tuple(states)
        self.initial = initial
        self.transitions = {(s, b): (nxt, out if isinstance(out, BitWord) else BitWord.from_text(out))
                            for (s, b), (nxt, out) in transitions.items()}
        if initial not in self.states:
            raise ValueError("initial state %r is not a state" % (initial,))
        index = {s: i for i, s in enumerate(self.states)}
        if len(index) != len(self.states):
            raise ValueError("duplicate state names")
        nxt, val, ln = [], [], []
        for s in self.states:
            for b in (0, 1):
                try:
                    target, out = self.transitions[(s, b)]
                except KeyError:
                    raise ValueError("no transition from %r on %d" % (s, b)) from None
                if target not in index:
                    raise ValueError("transition %r --%d--> unknown state %r" % (s, b, target))
                nxt.append(index[target])
                val.append(out.value)
                ln.append(out.length)
        extra = set(self.transitions) - {(s, b) for s in self.states for b in (0, 1)}
        if extra:
            raise ValueError("transitions from unknown states or inputs: %r" % sorted(extra))
        self._index = index
        self._tables = (nxt, val, ln)

    def step(self, state, bit):
        return self.transitions[(state, bit)]

    def execute(self, w):
        """Run over ``w``; return ``(output, final_state)``."""
        nxt, val, ln = self._tables
        value, length, final = kernels.fst_run(nxt, val, ln, self._index[self.initial],
                                               w.value, w.length)
        return BitWord._raw(value, length), self.states[final]

    def __eq__(self, other):
        if not isinstance(other, Transducer):
            return NotImplemented
        return (self.states, self.initial, self.transitions) == \
            (other.states, other.initial, other.transitions)

    def __repr__(self):
        return "Transducer(states=%r, initial=%r)" % (self.states, self.initial)


def run(t, w):
    """Concatenated outputs of ``t`` on input ``w``."""
    return t.execute(w)[0]


def delta_fst():
    """Three-state transducer for the first difference: remember the last bit, emit the XOR."""
    return Transducer(
        ("init", "s0", "s1"),
        "init",
        {
            ("init", 0): ("s0", ""),
            ("init", 1): ("s1", ""),
            ("s0", 0): ("s0", "0"),
            ("s0", 1): ("s1", "1"),
            ("s1", 0): ("s0", "1"),
            ("s1", 1): ("s1", "0"),
        },
    )


def format_transducer(t):
    lines = ["initial: %s" % t.initial]
    for s in t.states:
        for b in (0, 1):
            target, out = t.transitions[(s, b)]
            lines.append(("%s %d -> %s %s" % (s, b, target, out.to_text())).rstrip())
    return "\n".join(lines) + "\n"


def parse_transducer(text):
    initial = None
    states = []
    transitions = {}

    def add_state(s):
        if s not in states:
            states.append(s)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("initial:"):
            if initial is not None:
                raise FormatError("line %d: second 'initial:' header" % lineno)
            initial = line[len("initial:"):].strip()
            if not initial or len(initial.split()) != 1:
                raise FormatError("line %d: bad initial state" % lineno)
            continue
        parts = line.split()
        if len(parts) not in (4, 5) or parts[2] != "->":
            raise FormatError("line %d: expected 'state input -> next [output]', got %r"
                              % (lineno, raw))
        src, bit, _, dst = parts[:4]
        if bit not in ("0", "1"):
            raise FormatError("line %d: input must be 0 or 1, got %r" % (lineno, bit))
        out = parts[4] if len(parts) == 5 else ""
        if out.strip("01"):
            raise FormatError("line %d: output must be bits, got %r" % (lineno, out))
        key = (src, int(bit))
        if key in transitions:
            raise FormatError("line %d: duplicate transition for %s on %s" % (lineno, src, bit))
        add_state(src)
        transitions[key] = (dst, out)
    if initial is None:
        raise FormatError("missing 'initial:' header")
    add_state(initial)
    for dst, _ in list(transitions.values()):
        add_state(dst)
    # keep the initial state first so that formatting round-trips
    states.remove(initial)
    states.insert(0, initial)
    try:
        return Transducer(states, initial, transitions)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
