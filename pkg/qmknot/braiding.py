# vim: expandtab:ts=4:sw=4
"""Fusion and braiding matrices on V (x) V.

Basis vectors of V are addressed by their order ``0..m`` (see
``AlgebraSpec.labels``). A pair ``(a, b)`` is the basis vector
``v_a (x) v_b``. The braiding acts as

    B (v_a (x) v_b) = sum B_ab^cd v_c (x) v_d

and is stored column-wise: ``entries[(a, b)]`` lists ``((c, d), B_ab^cd)``.
Pairs with ``a + b == m`` span the critical block; every other pair lives in a
block of size one or two.
"""
import functools
import logging

from . import laurent
from .algebra_data import make_spec
from .errors import AssemblyMismatch, InverseCheckFailed

log = logging.getLogger(__name__)


def _accumulate(out, key, value):
    prev = out.get(key)
    value = value if prev is None else prev + value
    if value.is_zero():
        out.pop(key, None)
    else:
        out[key] = value


class FusionMatrix(object):
    """Antidiagonal annihilation matrix M and its inverse M^-1.

    Parameters
    ----------
    m : int
        Largest weight order.
    zeta : List[RingElement]
        ``zeta[a] = M_{a, m-a}``.
    cozeta : Optional[List[RingElement]]
        ``cozeta[a] = M^{a, m-a}``. Defaults to the values forced by
        ``sum_c M^{bc} M_{ca} = delta_a^b``.

    """

    def __init__(self, m, zeta, cozeta=None):
        self.m = m
        self.zeta = tuple(zeta)
        if cozeta is None:
            cozeta = [self.zeta[m - a].inverse() for a in range(m + 1)]
        self.cozeta = tuple(cozeta)

    def entry(self, a, b):
        """``M_ab``."""
        return self.zeta[a] if a + b == self.m else laurent.ZERO

    def inverse_entry(self, a, b):
        """``M^ab``."""
        return self.cozeta[a] if a + b == self.m else laurent.ZERO

    def with_entry(self, a, value):
        """Copy with ``M_{a, m-a}`` replaced and ``M^-1`` left as it was."""
        zeta = list(self.zeta)
        zeta[a] = laurent.RingElement.coerce(value)
        return FusionMatrix(self.m, zeta, self.cozeta)


class BraidMatrix(object):
    """Sparse exact operator on V (x) V.

    Parameters
    ----------
    side : int
        ``m + 1``, the dimension of V.
    entries : Dict[(int, int), List[((int, int), RingElement)]]
        Nonzero entries per source pair.

    """

    def __init__(self, side, entries):
        self.side = side
        self.entries = {
            src: tuple((dst, v) for dst, v in sorted(col, key=lambda t: t[0])
                       if not v.is_zero())
            for src, col in entries.items()}

    @property
    def side_dim(self):
        return self.side * self.side

    def column(self, a, b):
        return self.entries.get((a, b), ())

    def entry(self, a, b, c, d):
        """``B_ab^cd``."""
        for dst, value in self.column(a, b):
            if dst == (c, d):
                return value
        return laurent.ZERO

    def nonzeros(self):
        for src in sorted(self.entries):
            for dst, value in self.entries[src]:
                yield src, dst, value

    def apply_at(self, state, i):
        """Apply to tensor factors ``i, i+1`` of a sparse state vector.

        Parameters
        ----------
        state : Dict[Tuple[int, ...], RingElement]
            Amplitudes keyed by basis tuples.
        i : int
            Position of the left factor.

        Returns
        -------
        Dict[Tuple[int, ...], RingElement]

        """
        out = {}
        for key, amp in state.items():
            head, tail = key[:i], key[i + 2:]
            for (c, d), value in self.column(key[i], key[i + 1]):
                _accumulate(out, head + (c, d) + tail, amp * value)
        return out

    def with_entry(self, src, dst, value):
        """Copy with ``B_src^dst`` replaced by ``value``."""
        value = laurent.RingElement.coerce(value)
        entries = {s: list(col) for s, col in self.entries.items()}
        col = [(d, v) for d, v in entries.get(src, []) if d != dst]
        col.append((dst, value))
        entries[src] = col
        return BraidMatrix(self.side, entries)

    def critical_block(self):
        """Dense critical block in the basis J_{m,0}, J_{m-1,1}, ..., J_{0,m}.

        Row ``r`` / column ``s`` hold the coefficient of basis vector ``r`` in
        the image of basis vector ``s``.
        """
        m = self.side - 1
        basis = [(m - k, k) for k in range(m + 1)]
        position = {pair: k for k, pair in enumerate(basis)}
        block = [[laurent.ZERO] * (m + 1) for _ in basis]
        for s, src in enumerate(basis):
            for dst, value in self.column(*src):
                block[position[dst]][s] = value
        return block

    def dump(self, spec):
        """Debug listing, one ``a,b -> c,d : poly`` line per nonzero entry."""
        name = [str(label) for label in spec.labels]
        lines = [f"{name[a]},{name[b]} -> {name[c]},{name[d]} : {laurent.render(v)}"
                 for (a, b), (c, d), v in self.nonzeros()]
        return "\n".join(sorted(lines))


def _fusion_exponent(spec, o):
    """Exponent of x and unit coefficient of ``M_{o, m-o}``."""
    n = spec.rank
    if spec.family == "B":
        if o < n:
            return 2 * n - 2 * o - 1, 1
        if o == n:
            return 0, 1
        return 2 * n - 2 * o + 1, 1
    if spec.family == "C":
        if o <= n - 1:
            return n - o, (0, -1)
        return n - 1 - o, (0, 1)
    if o <= n - 1:
        return 2 * (n - 1 - o), 1
    return 2 * (n - o), 1


def build_fusion(spec):
    zeta = [laurent.monomial(*_fusion_exponent(spec, o)) for o in range(spec.m + 1)]
    return FusionMatrix(spec.m, zeta)


def _wall_crossing(spec, a, b):
    """Coefficient of J_{m-b, b} in B J_{a, m-a} for ``a < b``, in closed form."""
    n, z = spec.rank, spec.z
    kronecker = laurent.ONE if a == spec.m - b else laurent.ZERO
    if spec.family == "B":
        side = (a - n) * (b - n)
        if side > 0:
            return z * laurent.monomial(2 * (b - a))
        if side == 0:
            return z * laurent.monomial(2 * (b - a) - 1)
        return z * laurent.monomial(2 * (b - a - 1)) - z * kronecker
    if spec.family == "C":
        # (a - n + 1/2)(b - n + 1/2) is never zero
        if (2 * a - 2 * n + 1) * (2 * b - 2 * n + 1) > 0:
            return z * laurent.monomial(b - a)
        return -z * laurent.monomial(b - a + 1) - z * kronecker
    if (2 * a - 2 * n + 1) * (2 * b - 2 * n + 1) > 0:
        return z * laurent.monomial(2 * (b - a))
    return z * laurent.monomial(2 * (b - a - 1)) - z * kronecker


def _diagonal_constraint(spec, fusion, a):
    """Diagonal critical entry ``B_{a,m-a}^{a,m-a}`` for ``a < m - a``."""
    gamma, m = spec.gamma, spec.m
    power = gamma ** (2 * a - m + 1)
    if m % 2 == 0:
        return (gamma - gamma.inverse()) * (laurent.ONE - power)
    middle = m // 2 + 1
    x = fusion.zeta[middle] * fusion.cozeta[middle]
    return gamma - gamma.inverse() + (gamma.inverse() - x.inverse() ** 2 * gamma) * power


def build_braiding(spec, fusion):
    """Assemble B column by column.

    Raises
    ------
    AssemblyMismatch
        If the diagonal of the critical block read from the wall-crossing
        formula disagrees with the constraint formula.

    """
    m, gamma = spec.m, spec.gamma
    shift = gamma - gamma.inverse()
    entries = {}
    for a in range(m + 1):
        for b in range(m + 1):
            if a + b != m:
                if a == b:
                    entries[(a, b)] = [((a, a), gamma)]
                elif a > b:
                    entries[(a, b)] = [((b, a), laurent.ONE)]
                else:
                    entries[(a, b)] = [((b, a), laurent.ONE), ((a, b), shift)]
                continue
            skew = laurent.ONE if a == b else gamma.inverse()
            col = [((b, a), skew)]
            for c in range(m - a):
                if c == a:
                    value = _diagonal_constraint(spec, fusion, a)
                    check = _wall_crossing(spec, a, m - a)
                    if value != check:
                        raise AssemblyMismatch(
                            f"{spec.name}: diagonal entry at {a} is {value} by the "
                            f"constraint formula but {check} by the wall-crossing formula")
                else:
                    value = _wall_crossing(spec, a, m - c)
                col.append(((c, m - c), value))
            entries[(a, b)] = col
    braiding = BraidMatrix(m + 1, entries)
    log.debug("%s: braiding has %d nonzero entries", spec.name,
              sum(len(col) for col in braiding.entries.values()))
    return braiding


def identity_check(left, right):
    """First source pair where ``left . right`` is not the identity, or None."""
    side = left.side
    for a in range(side):
        for b in range(side):
            state = left.apply_at(right.apply_at({(a, b): laurent.ONE}, 0), 0)
            if state != {(a, b): laurent.ONE}:
                return a, b
    return None


def build_braiding_inverse(braiding, fusion, spec):
    """``B^-1 = B - z (E - I)`` with ``E_ab^cd = M_ab M^cd``.

    Raises
    ------
    InverseCheckFailed
        If the result does not invert ``braiding`` exactly.

    """
    m, z = spec.m, spec.z
    entries = {}
    for (a, b), col in braiding.entries.items():
        out = {dst: value for dst, value in col}
        _accumulate(out, (a, b), z)
        if a + b == m:
            for c in range(m + 1):
                _accumulate(out, (c, m - c), -z * fusion.zeta[a] * fusion.cozeta[c])
        entries[(a, b)] = list(out.items())
    inverse = BraidMatrix(m + 1, entries)
    bad = identity_check(braiding, inverse)
    if bad is not None:
        raise InverseCheckFailed(f"{spec.name}: B * B^-1 differs from I at {bad}")
    return inverse


@functools.lru_cache(maxsize=None)
def build_matrices(family, rank):
    """Spec, M, B and B^-1 for one algebra, built once per process."""
    spec = make_spec(family, rank)
    fusion = build_fusion(spec)
    braiding = build_braiding(spec, fusion)
    inverse = build_braiding_inverse(braiding, fusion, spec)
    return spec, fusion, braiding, inverse
