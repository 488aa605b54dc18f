# vim: expandtab:ts=4:sw=4
"""Exact Laurent polynomials in x = q^{1/4} with Gaussian-integer coefficients.

Every scalar of the braiding and fusion matrices lives in this ring. An element
is stored as a map ``exponent -> (re, im)`` where the exponent counts quarter
powers of q and ``re``/``im`` are Python integers. Zero coefficients are never
stored, so equal values always have identical maps.

Text form (``render``/``parse``)::

    q^{1/2} - q^{-1/2}
    -i*q^{-1/4} + (2-3i)*q + 5

JSON form (``to_json``/``from_json``)::

    {"den": 4, "terms": [[e, re, im], ...]}   # ascending e, quarter units

"""
import re
from types import MappingProxyType

import numpy as np
import pyparsing as pp

from .errors import DivideByZero, DivisionNotExact, ParseError

JSON_DENOMINATOR = 4


def _as_gaussian(value):
    if isinstance(value, tuple):
        re_, im = value
        return int(re_), int(im)
    if isinstance(value, (bool, complex, float)):
        raise TypeError(f"not an exact Gaussian integer: {value!r}")
    return int(value), 0


def _gmul(c1, c2):
    return (c1[0] * c2[0] - c1[1] * c2[1], c1[0] * c2[1] + c1[1] * c2[0])


def _gdiv(c1, c2):
    """Exact Gaussian-integer quotient ``c1 / c2``, or None if inexact."""
    norm = c2[0] * c2[0] + c2[1] * c2[1]
    re_ = c1[0] * c2[0] + c1[1] * c2[1]
    im = c1[1] * c2[0] - c1[0] * c2[1]
    if re_ % norm or im % norm:
        return None
    return re_ // norm, im // norm


class RingElement(object):
    """An immutable element of Z[i][x, x^-1].

    Parameters
    ----------
    terms : Optional[Mapping[int, int | (int, int)]]
        Exponent (quarter powers of q) to coefficient. Integer coefficients
        are read as real Gaussian integers. Zero coefficients are dropped.

    Attributes
    ----------
    terms : Mapping[int, (int, int)]
        Read-only canonical term map.

    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for exponent, coeff in dict(terms).items():
                c = _as_gaussian(coeff)
                if c != (0, 0):
                    clean[int(exponent)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, clean):
        obj = cls.__new__(cls)
        obj._terms = clean
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, value):
        if isinstance(value, RingElement):
            return value
        return cls({0: value})

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def items(self):
        """Terms as ``(exponent, (re, im))`` pairs in ascending exponent."""
        return sorted(self._terms.items())

    def is_zero(self):
        return not self._terms

    def is_monomial(self):
        return len(self._terms) == 1

    def is_real(self):
        return all(c[1] == 0 for c in self._terms.values())

    def is_imaginary(self):
        return all(c[0] == 0 for c in self._terms.values())

    def max_exponent(self):
        return max(self._terms)

    def min_exponent(self):
        return min(self._terms)

    def coefficient(self, exponent):
        return self._terms.get(exponent, (0, 0))

    def inverse(self):
        """Inverse of a unit, i.e. a monomial whose coefficient is 1, -1, i or -i."""
        if not self.is_monomial():
            raise DivisionNotExact(f"{render(self)} is not a unit")
        (exponent, coeff), = self._terms.items()
        inv = _gdiv((1, 0), coeff)
        if inv is None:
            raise DivisionNotExact(f"{render(self)} is not a unit")
        return RingElement._wrap({-exponent: inv})

    def __add__(self, other):
        other = RingElement.coerce(other)
        out = dict(self._terms)
        for exponent, c in other._terms.items():
            prev = out.get(exponent)
            if prev is None:
                out[exponent] = c
                continue
            s = (prev[0] + c[0], prev[1] + c[1])
            if s == (0, 0):
                del out[exponent]
            else:
                out[exponent] = s
        return RingElement._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return RingElement._wrap(
            {e: (-c[0], -c[1]) for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-RingElement.coerce(other))

    def __rsub__(self, other):
        return RingElement.coerce(other) + (-self)

    def __mul__(self, other):
        other = RingElement.coerce(other)
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                p = _gmul(c1, c2)
                prev = out.get(e)
                if prev is not None:
                    p = (prev[0] + p[0], prev[1] + p[1])
                out[e] = p
        return RingElement._wrap({e: c for e, c in out.items() if c != (0, 0)})

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = RingElement({0: other})
        if not isinstance(other, RingElement):
            return NotImplemented
        return self._terms == other._terms

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"RingElement({render(self)!r})"

    def __str__(self):
        return render(self)


ZERO = RingElement()
ONE = RingElement({0: 1})
I_UNIT = RingElement({0: (0, 1)})


def monomial(exponent, coeff=1):
    """``coeff * x^exponent`` with x = q^{1/4}."""
    return RingElement({exponent: coeff})


def q_power(numerator, denominator=1, coeff=1):
    """``coeff * q^{numerator/denominator}``; the exponent must be a quarter integer."""
    units = numerator * 4
    if units % denominator:
        raise ValueError(f"q^({numerator}/{denominator}) is not a quarter power")
    return monomial(units // denominator, coeff)


def add(p, r):
    return RingElement.coerce(p) + r


def mul(p, r):
    return RingElement.coerce(p) * r


def negate(p):
    return -RingElement.coerce(p)


def exact_div(p, r):
    """Exact quotient ``p / r`` by Laurent long division from the top exponent.

    Raises
    ------
    DivideByZero
        If ``r`` is zero.
    DivisionNotExact
        If ``r`` does not divide ``p`` in the ring.

    """
    p = RingElement.coerce(p)
    r = RingElement.coerce(r)
    if r.is_zero():
        raise DivideByZero("division by the zero polynomial")
    if p.is_zero():
        return ZERO

    r_top, r_low = r.max_exponent(), r.min_exponent()
    r_lead = r.coefficient(r_top)
    floor = p.min_exponent() - r_low
    remainder = dict(p.terms)
    quotient = {}
    while remainder:
        top = max(remainder)
        shift = top - r_top
        c = _gdiv(remainder[top], r_lead)
        if c is None or shift < floor:
            raise DivisionNotExact(
                f"{render(r)} does not divide {render(p)}")
        quotient[shift] = c
        for e, rc in r.terms.items():
            key = e + shift
            prod = _gmul(rc, c)
            prev = remainder.get(key, (0, 0))
            diff = (prev[0] - prod[0], prev[1] - prod[1])
            if diff == (0, 0):
                remainder.pop(key, None)
            else:
                remainder[key] = diff
    return RingElement(quotient)


def eval_numeric(p, x0):
    """Evaluate ``p`` at the complex point x = x0 (so q = x0**4)."""
    if x0 == 0:
        raise DivideByZero("evaluation at x = 0")
    p = RingElement.coerce(p)
    if p.is_zero():
        return 0j
    exponents = np.array(list(p.terms.keys()))
    coeffs = np.array([complex(c[0], c[1]) for c in p.terms.values()])
    return complex(np.sum(coeffs * np.power(complex(x0), exponents)))


# -- text form ---------------------------------------------------------------

def _format_power(exponent):
    num, den = exponent, 4
    while den > 1 and num % 2 == 0:
        num //= 2
        den //= 2
    if den == 1:
        return "q" if num == 1 else f"q^{{{num}}}"
    return f"q^{{{num}/{den}}}"


def _format_coefficient(c):
    re_, im = c
    if im == 0:
        return re_ < 0, str(abs(re_))
    if re_ == 0:
        b = abs(im)
        return im < 0, "i" if b == 1 else f"{b}i"
    negative = re_ < 0
    if negative:
        re_, im = -re_, -im
    b = "" if abs(im) == 1 else str(abs(im))
    return negative, f"({re_}{'+' if im > 0 else '-'}{b}i)"


def render(p):
    """Text form with descending exponents, e.g. ``q^{1/2} - q^{-1/2}``."""
    p = RingElement.coerce(p)
    if p.is_zero():
        return "0"
    pieces = []
    for exponent, c in sorted(p.terms.items(), reverse=True):
        negative, coeff = _format_coefficient(c)
        if exponent == 0:
            term = coeff
        elif coeff == "1":
            term = _format_power(exponent)
        else:
            term = f"{coeff}*{_format_power(exponent)}"
        if not pieces:
            pieces.append(f"-{term}" if negative else term)
        else:
            pieces.append(f" - {term}" if negative else f" + {term}")
    return "".join(pieces)


_GAUSSIAN_RE = re.compile(r"\((-?\d+)([+-])(\d*)i\)")
_IMAGINARY_RE = re.compile(r"(\d*)i")


def _coefficient_action(s, loc, toks):
    text = toks[0].replace(" ", "")
    m = _GAUSSIAN_RE.fullmatch(text)
    if m:
        im = int(m.group(3) or 1)
        return [(int(m.group(1)), -im if m.group(2) == "-" else im)]
    m = _IMAGINARY_RE.fullmatch(text)
    if m:
        return [(0, int(m.group(1) or 1))]
    return [(int(text), 0)]


def _power_action(s, loc, toks):
    body = toks[0].replace(" ", "")[1:].lstrip("^").strip("{}")
    if not body:
        return [4]
    num, _, den = body.partition("/")
    den = int(den) if den else 1
    if den not in (1, 2, 4):
        raise pp.ParseFatalException(s, loc, f"exponent denominator {den} not in {{1,2,4}}")
    return [int(num) * (4 // den)]


def _build_grammar():
    sign = pp.oneOf("+ -")
    coefficient = (pp.Regex(r"\(\s*-?\d+\s*[+-]\s*\d*i\s*\)")
                   | pp.Regex(r"\d*i")
                   | pp.Regex(r"\d+"))
    coefficient.setParseAction(_coefficient_action)
    # single token; "power" holds the exponent in quarter powers
    power = pp.Regex(r"q(\s*\^\s*(\{\s*-?\d+\s*(/\s*\d+\s*)?\}|-?\d+))?")
    power.setParseAction(_power_action)
    term = ((coefficient("coeff") + pp.Optional(pp.Suppress("*"))
             + pp.Optional(power("power")))
            | power("power"))
    first = pp.Group(pp.Optional(sign, default="+")("sign") + term)
    rest = pp.Group(sign("sign") + term)
    return first + pp.ZeroOrMore(rest) + pp.StringEnd()


_GRAMMAR = _build_grammar()


def parse(text):
    """Inverse of ``render``.

    Terms are ``[coeff][*]q^{p/d}`` with d in {1, 2, 4}, joined by ``+``/``-``.
    ``coeff`` is an integer, ``i``, ``bi`` or ``(a+bi)``; bare ``q`` means q^1.

    Raises
    ------
    ParseError
        With the character position of the first offending token.

    """
    try:
        groups = _GRAMMAR.parseString(text, parseAll=True)
    except pp.ParseBaseException as exc:
        raise ParseError(f"malformed polynomial {text!r}: {exc.msg}", exc.loc)
    result = ZERO
    for group in groups:
        coeff = group.get("coeff", (1, 0))
        exponent = group.get("power", 0)
        if group["sign"] == "-":
            coeff = (-coeff[0], -coeff[1])
        result = result + RingElement({exponent: coeff})
    return result


# -- JSON form ---------------------------------------------------------------

def to_json(p):
    p = RingElement.coerce(p)
    return {"den": JSON_DENOMINATOR,
            "terms": [[e, c[0], c[1]] for e, c in p.items()]}


def from_json(obj):
    try:
        den = int(obj["den"])
        rows = obj["terms"]
    except (KeyError, TypeError, ValueError):
        raise ParseError("polynomial JSON needs 'den' and 'terms'")
    if den not in (1, 2, 4):
        raise ParseError(f"unsupported denominator {den}")
    terms = {}
    for k, row in enumerate(rows):
        if len(row) != 3 or not all(isinstance(v, int) for v in row):
            raise ParseError(f"bad term {row!r}", k)
        e = row[0] * (JSON_DENOMINATOR // den)
        if e in terms:
            raise ParseError(f"duplicate exponent {row[0]}", k)
        terms[e] = (row[1], row[2])
    return RingElement(terms)
