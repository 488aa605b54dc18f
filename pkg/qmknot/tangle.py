# vim: expandtab:ts=4:sw=4
"""Closed link diagrams as Morse-event tapes, evaluated by tensor contraction.

A tape is read bottom to top. ``cup i`` creates two strands at positions
``i, i+1`` weighted by ``M^ab``; ``cap i`` closes them against ``M_ab``;
``pos i`` and ``neg i`` apply B and B^-1 to strands ``i, i+1``.

Braid generators follow the usual sign: ``j > 0`` is the positive crossing
sigma_j (writhe +1) on strands ``j, j+1``. For these matrices the trace closure
of a positive crossing carries the twist alpha, which is ``neg``; so
``closure_tape`` writes sigma_j as ``neg j-1`` and sigma_j^-1 as ``pos j-1``.
"""
import logging
from collections import namedtuple

import pyparsing as pp

from . import laurent
from .braiding import build_matrices
from .errors import GeneratorOutOfRange, InvalidTape, ParseError

log = logging.getLogger(__name__)

EVENT_KINDS = ("cup", "cap", "pos", "neg")


class MorseEvent(namedtuple("MorseEvent", ["kind", "position"])):

    __slots__ = ()

    @classmethod
    def cup(cls, i):
        return cls("cup", i)

    @classmethod
    def cap(cls, i):
        return cls("cap", i)

    @classmethod
    def pos(cls, i):
        return cls("pos", i)

    @classmethod
    def neg(cls, i):
        return cls("neg", i)

    def __str__(self):
        return f"{self.kind} {self.position}"


class Tape(object):
    """An ordered list of Morse events presenting a closed diagram.

    Parameters
    ----------
    events : Iterable[MorseEvent]

    """

    def __init__(self, events):
        self.events = tuple(events)

    def __len__(self):
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def __eq__(self, other):
        return isinstance(other, Tape) and self.events == other.events

    def __repr__(self):
        return f"Tape({list(self.events)!r})"

    def strand_profile(self):
        """Strand counts before the first event and after each event.

        Raises
        ------
        InvalidTape
            If an event addresses strands that do not exist.

        """
        count = 0
        profile = [count]
        for k, event in enumerate(self.events):
            i = event.position
            if event.kind not in EVENT_KINDS:
                raise InvalidTape(f"event {k}: unknown kind {event.kind!r}")
            if event.kind == "cup":
                if not 0 <= i <= count:
                    raise InvalidTape(f"event {k}: cup {i} with {count} strands")
                count += 2
            else:
                if i < 0 or i + 1 >= count:
                    raise InvalidTape(f"event {k}: {event} with {count} strands")
                if event.kind == "cap":
                    count -= 2
            profile.append(count)
        return profile

    def validate(self):
        profile = self.strand_profile()
        if profile[-1] != 0:
            raise InvalidTape(f"tape ends with {profile[-1]} open strands")
        return self

    def width(self):
        return max(self.strand_profile())

    def to_text(self):
        return "".join(f"{event}\n" for event in self.events)


class BraidWord(object):
    """A word in the braid generators on ``strands`` strands.

    Attributes
    ----------
    generators : Tuple[int, ...]
        Nonzero generator indices, ``j`` for sigma_j and ``-j`` for its inverse.
    strands : int

    """

    def __init__(self, generators, strands):
        self.generators = tuple(int(j) for j in generators)
        self.strands = int(strands)
        if self.strands < 1:
            raise GeneratorOutOfRange(f"a braid needs at least one strand, got {strands}")
        for k, j in enumerate(self.generators):
            if j == 0 or abs(j) >= self.strands:
                raise GeneratorOutOfRange(
                    f"generator {j} at {k} is out of range for {self.strands} strands")

    def __len__(self):
        return len(self.generators)

    def __eq__(self, other):
        return (isinstance(other, BraidWord)
                and (self.generators, self.strands) == (other.generators, other.strands))

    def __str__(self):
        return " ".join(str(j) for j in self.generators)

    def __repr__(self):
        return f"BraidWord({str(self)!r}, strands={self.strands})"

    def __add__(self, other):
        return BraidWord(self.generators + other.generators,
                         max(self.strands, other.strands))

    def inverse(self):
        return BraidWord([-j for j in reversed(self.generators)], self.strands)


def _generator_action(s, loc, toks):
    value = int(toks[0])
    if value == 0:
        raise pp.ParseFatalException(s, loc, "generator 0 does not exist")
    return [value]


_GENERATOR = pp.Regex(r"[+-]?\d+").setParseAction(_generator_action)
_BRAID = pp.ZeroOrMore(_GENERATOR) + pp.StringEnd()

_EVENT = pp.Group(pp.oneOf(" ".join(EVENT_KINDS))
                  + pp.Word(pp.nums).setParseAction(lambda t: int(t[0])))
_TAPE = pp.ZeroOrMore(_EVENT) + pp.StringEnd()
_TAPE.ignore(pp.pythonStyleComment)


def parse_braid(word, strands):
    """Parse a whitespace-separated braid word.

    Raises
    ------
    ParseError
        If a token is not a nonzero integer.
    GeneratorOutOfRange
        If ``|j| >= strands``.

    """
    try:
        generators = _BRAID.parseString(word or "", parseAll=True)
    except pp.ParseBaseException as exc:
        raise ParseError(f"malformed braid word {word!r}: {exc.msg}", exc.loc)
    return BraidWord(list(generators), strands)


def parse_tape(text):
    """Read the ``cup i | cap i | pos i | neg i`` line format (``#`` comments allowed)."""
    try:
        groups = _TAPE.parseString(text, parseAll=True)
    except pp.ParseBaseException as exc:
        raise ParseError(f"malformed tape on line {exc.lineno}: {exc.msg}", exc.loc)
    return Tape(MorseEvent(kind, i) for kind, i in groups)


def closure_tape(braid):
    """Trace closure of ``braid`` with explicit cups and caps.

    ``cup 0 .. cup k-1`` open ``k`` nested cups, so the braid acts on the
    leftmost positions ``0 .. k-1`` (generator ``j`` on ``j-1, j``) while the
    returning halves sit untouched at ``k .. 2k-1``. The caps close the cups
    in reverse order. This is the standard closure up to planar isotopy.
    """
    k = braid.strands
    events = [MorseEvent.cup(i) for i in range(k)]
    for j in braid.generators:
        if j > 0:
            events.append(MorseEvent.neg(j - 1))
        else:
            events.append(MorseEvent.pos(-j - 1))
    events.extend(MorseEvent.cap(i) for i in reversed(range(k)))
    return Tape(events)


def _accumulate(out, key, value):
    prev = out.get(key)
    value = value if prev is None else prev + value
    if value.is_zero():
        out.pop(key, None)
    else:
        out[key] = value


def insert_cup(state, i, fusion):
    """Insert ``sum M^ab v_a (x) v_b`` at positions ``i, i+1``."""
    m = fusion.m
    out = {}
    for key, amp in state.items():
        head, tail = key[:i], key[i:]
        for a in range(m + 1):
            _accumulate(out, head + (a, m - a) + tail, amp * fusion.cozeta[a])
    return out


def contract_cap(state, i, fusion):
    """Contract positions ``i, i+1`` against ``M_ab``."""
    m = fusion.m
    out = {}
    for key, amp in state.items():
        a, b = key[i], key[i + 1]
        if a + b == m:
            _accumulate(out, key[:i] + key[i + 2:], amp * fusion.zeta[a])
    return out


def evaluate_tape(spec, tape, matrices=None):
    """Contract ``tape`` to the scalar <K>.

    Parameters
    ----------
    spec : AlgebraSpec
    tape : Tape
    matrices : Optional[(FusionMatrix, BraidMatrix, BraidMatrix)]
        Defaults to the cached matrices of ``spec``.

    Raises
    ------
    InvalidTape

    """
    tape.validate()
    if matrices is None:
        _, fusion, braiding, inverse = build_matrices(spec.family, spec.rank)
    else:
        fusion, braiding, inverse = matrices
    state = {(): laurent.ONE}
    for event in tape:
        i = event.position
        if event.kind == "cup":
            state = insert_cup(state, i, fusion)
        elif event.kind == "cap":
            state = contract_cap(state, i, fusion)
        elif event.kind == "pos":
            state = braiding.apply_at(state, i)
        else:
            state = inverse.apply_at(state, i)
    log.debug("%s: contracted %d events", spec.name, len(tape))
    return state.get((), laurent.ZERO)


def writhe(braid):
    """Exponent sum; the writhe of the closure."""
    return sum(1 if j > 0 else -1 for j in braid.generators)


def normalized_invariant(spec, braid, matrices=None):
    """``alpha^-w <closure(braid)>``, invariant under ambient isotopy."""
    raw = evaluate_tape(spec, closure_tape(braid), matrices)
    return spec.alpha ** (-writhe(braid)) * raw
