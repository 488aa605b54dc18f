# vim: expandtab:ts=4:sw=4
"""Weight systems and scalar constants of the B_n, C_n and D_n vector
representations.

Weights are listed in their braiding order. Position ``o`` (the *order* of a
label) runs over ``0..m`` with ``m = dim - 1``; complementary labels sit at
``o`` and ``m - o``. In D_n the middle pair is ``n-1`` and ``n-1'`` (written
``"n-1p"``), so the label index and its order differ past the middle.

Inner products are returned as integers in units of 1/2.
"""
import functools
from collections import namedtuple

import numpy as np

from . import laurent
from .errors import InvalidLabel, SpecError, UnsupportedRank

FAMILIES = ("B", "C", "D")


class WeightLabel(namedtuple("WeightLabel", ["index", "prime"])):
    """A weight ``lambda^index`` (``prime`` only for D's ``lambda^{n-1'}``)."""

    __slots__ = ()

    def __new__(cls, index, prime=False):
        return super(WeightLabel, cls).__new__(cls, int(index), bool(prime))

    def __str__(self):
        return f"{self.index}p" if self.prime else str(self.index)

    def to_json(self):
        return str(self) if self.prime else self.index


class AlgebraSpec(object):
    """Data of one Lie algebra family at fixed rank.

    Parameters
    ----------
    family : str
        One of ``"B"``, ``"C"``, ``"D"``.
    rank : int
        The rank n.

    Attributes
    ----------
    family : str
    rank : int
    dim : int
        Dimension of the vector representation.
    m : int
        ``dim - 1``; the order of the last label.
    labels : List[WeightLabel]
        Labels in order, so ``labels[o]`` has order ``o``.
    gamma : RingElement
        Diagonal braiding eigenvalue on equal-weight pairs.
    z : RingElement
        ``gamma^-1 - gamma``.
    alpha : RingElement
        Twist eigenvalue.
    delta : RingElement
        Loop value ``(alpha - alpha^-1)/z + 1``.

    """

    def __init__(self, family, rank):
        self.family = family
        self.rank = rank
        n = rank
        self.dim = 2 * n + 1 if family == "B" else 2 * n
        self.m = self.dim - 1
        if family == "D":
            self.labels = ([WeightLabel(k) for k in range(n)]
                           + [WeightLabel(n - 1, prime=True)]
                           + [WeightLabel(k) for k in range(n, 2 * n - 1)])
        else:
            self.labels = [WeightLabel(k) for k in range(self.dim)]
        self._order = {label: o for o, label in enumerate(self.labels)}

        # x = q^{1/4}
        if family == "B":
            self.gamma = laurent.monomial(-2)
            self.alpha = laurent.monomial(4 * n)
        elif family == "C":
            self.gamma = laurent.monomial(-1)
            self.alpha = laurent.monomial(2 * n + 1, -1)
        else:
            self.gamma = laurent.monomial(-2)
            self.alpha = laurent.monomial(2 * (2 * n - 1))
        self.z = self.gamma.inverse() - self.gamma
        self.delta = laurent.exact_div(
            self.alpha - self.alpha.inverse(), self.z) + laurent.ONE

    @property
    def name(self):
        return f"{self.family}{self.rank}"

    def __repr__(self):
        return f"AlgebraSpec({self.family!r}, {self.rank})"

    def order(self, label):
        label = self.label(label)
        return self._order[label]

    def label(self, value):
        """Coerce an int, a ``"2p"`` style string or a WeightLabel to a label of this spec."""
        if isinstance(value, WeightLabel):
            label = value
        elif isinstance(value, str):
            text = value.strip()
            prime = text.endswith("p")
            try:
                label = WeightLabel(int(text[:-1] if prime else text), prime)
            except ValueError:
                raise InvalidLabel(f"bad weight label {value!r}")
        elif isinstance(value, (int, np.integer)) and not isinstance(value, bool):
            label = WeightLabel(value)
        else:
            raise InvalidLabel(f"bad weight label {value!r}")
        if label not in self._order:
            raise InvalidLabel(f"{label} is not a weight of {self.name}")
        return label


@functools.lru_cache(maxsize=None)
def make_spec(family, rank):
    """Build the AlgebraSpec of ``family`` at ``rank``.

    Raises
    ------
    SpecError
        If ``family`` is not B, C or D.
    UnsupportedRank
        If ``rank < 1`` (B, C) or ``rank < 2`` (D).

    """
    family = str(family).upper()
    if family not in FAMILIES:
        raise SpecError(f"unknown family {family!r}; expected one of {FAMILIES}")
    minimum = 2 if family == "D" else 1
    if int(rank) < minimum:
        raise UnsupportedRank(f"{family} needs rank >= {minimum}, got {rank}")
    return AlgebraSpec(family, int(rank))


def order(spec, s):
    return spec.order(s)


def complement(spec, s):
    return spec.labels[spec.m - spec.order(s)]


def inner_product(spec, s, t):
    """Inner product ``(lambda^s, lambda^t)`` in units of 1/2, read off the case tables."""
    os_, ot = spec.order(s), spec.order(t)
    n = spec.rank
    if spec.family == "B":
        if os_ + ot == 2 * n:
            return 0 if os_ == ot else -2
        return 2 if os_ == ot else 0
    if spec.family == "C":
        if os_ == ot:
            return 1
        return -1 if os_ + ot == 2 * n - 1 else 0
    if os_ + ot == 2 * n - 1:
        return -2
    return 2 if os_ == ot else 0


# -- Cartan-matrix cross-check -------------------------------------------------

def _simple_roots(spec):
    """Simple roots in the orthonormal epsilon basis."""
    n = spec.rank
    roots = np.zeros((n, n))
    for i in range(n - 1):
        roots[i, i], roots[i, i + 1] = 1.0, -1.0
    if spec.family == "B":
        roots[n - 1, n - 1] = 1.0
    elif spec.family == "C":
        roots[n - 1, n - 1] = 2.0
    else:
        roots[n - 1, n - 2], roots[n - 1, n - 1] = 1.0, 1.0
    return roots


def _root_walk(spec):
    """Simple roots to subtract, in turn, starting at the highest weight.

    Each entry is a tuple of 0-based root indices subtracted from the
    previous weight, or ``("base", i, ...)`` to subtract from the last weight
    reached before the D_n fork.
    """
    n = spec.rank
    if spec.family == "B":
        return [(i,) for i in range(n)] + [(i,) for i in reversed(range(n))]
    if spec.family == "C":
        return [(i,) for i in range(n)] + [(i,) for i in reversed(range(n - 1))]
    head = [(i,) for i in range(n - 2)]
    # branch at the fork of the diagram
    fork = [("base", n - 2), ("base", n - 1), ("base", n - 2, n - 1)]
    return head + fork + [(i,) for i in reversed(range(n - 2))]


def cartan_weights(spec):
    """Weights of the vector representation as Dynkin labels, in order.

    Returns
    -------
    (ndarray, ndarray)
        The ``dim x n`` array of Dynkin labels and the ``n x n`` Cartan
        matrix ``A_ij = 2 (a_i, a_j) / (a_j, a_j)``.

    """
    roots = _simple_roots(spec)
    form = roots @ roots.T
    cartan = 2.0 * form / np.diag(form)[None, :]
    highest = 2.0 * roots[:, 0] / np.diag(form)
    weights = [highest]
    base = highest
    for step in _root_walk(spec):
        if step and step[0] == "base":
            w = base - cartan[list(step[1:])].sum(axis=0)
        else:
            w = weights[-1] - cartan[list(step)].sum(axis=0)
            base = w
        weights.append(w)
    return np.array(weights), cartan


def cartan_inner_product(spec, s, t):
    """Inner product recomputed from the Cartan matrix, in units of 1/2.

    Uses the Gram matrix ``(w_i, w_j) = (A^-1)_ij (a_j, a_j) / 2`` of the
    fundamental weights, normalized so ``(lambda, lambda)`` is 1 (B, D) or
    1/2 (C).
    """
    weights, cartan = cartan_weights(spec)
    roots = _simple_roots(spec)
    lengths = np.einsum("ij,ij->i", roots, roots)
    gram = np.linalg.inv(cartan) * lengths[None, :] / 2.0
    scale = 0.5 if spec.family == "C" else 1.0
    value = weights[spec.order(s)] @ gram @ weights[spec.order(t)] * scale
    return int(round(2.0 * value))
