# vim: expandtab:ts=4:sw=4
"""Exact identity checks for the fusion and braiding matrices.

Every check takes an AlgebraSpec plus an optional ``(fusion, braiding, inverse)``
triple and returns a ``CheckResult``; a failed identity is a result, never an
exception. Equalities are exact ring equalities.
"""
import itertools
import logging

from . import laurent
from .braiding import build_matrices, identity_check
from .tangle import contract_cap, insert_cup

log = logging.getLogger(__name__)


class CheckResult(object):
    """Outcome of one identity check.

    Attributes
    ----------
    name : str
    passed : bool
    counterexample : Optional[tuple]
        First failing index tuple, if any.
    detail : str

    """

    def __init__(self, name, passed, counterexample=None, detail=""):
        self.name = name
        self.passed = bool(passed)
        self.counterexample = counterexample
        self.detail = detail

    def to_json(self):
        record = {"name": self.name, "pass": self.passed}
        if not self.passed:
            record["counterexample"] = (list(self.counterexample)
                                        if self.counterexample is not None else None)
            if self.detail:
                record["detail"] = self.detail
        return record

    def __repr__(self):
        return f"CheckResult({self.name!r}, {self.passed})"


class VerifyReport(object):

    def __init__(self, spec_name, checks):
        self.spec_name = spec_name
        self.checks = list(checks)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self):
        return {"spec": self.spec_name, "checks": [c.to_json() for c in self.checks]}


def _resolve(spec, matrices):
    if matrices is None:
        _, fusion, braiding, inverse = build_matrices(spec.family, spec.rank)
        return fusion, braiding, inverse
    return matrices


def _first(name, failures, detail=""):
    bad = next(failures, None)
    if bad is None:
        return CheckResult(name, True)
    log.info("check %s failed at %s", name, bad)
    return CheckResult(name, False, bad, detail)


def _twist_x(spec):
    """``M_{k,m-k} M^{k,m-k}`` at ``k = [m/2] + 1`` for odd m, else 1."""
    if spec.family == "C":
        return laurent.q_power(-1, 2, coeff=-1)
    return laurent.ONE


def check_fusion(spec, matrices=None):
    """Antidiagonal shape, inverse contract, normalization and the constraint profile."""
    fusion, _, _ = _resolve(spec, matrices)
    m, gamma, x = spec.m, spec.gamma, _twist_x(spec)

    def expected_square(a):
        if 2 * a < m:
            return gamma ** (2 * a - m + 1) * x.inverse()
        if 2 * a == m:
            return laurent.ONE
        return gamma ** (2 * a - m - 1) * x

    def failures():
        for a in range(m + 1):
            if fusion.zeta[a].is_zero():
                yield ("shape", a)
            if fusion.zeta[a] != fusion.cozeta[a]:
                yield ("normalization", a)
            if fusion.zeta[a] * fusion.zeta[m - a] != laurent.ONE:
                yield ("pairing", a)
            if fusion.zeta[a] * fusion.cozeta[a] != expected_square(a):
                yield ("constraint", a)
        for a, b in itertools.product(range(m + 1), repeat=2):
            total = laurent.ZERO
            for c in range(m + 1):
                total = total + fusion.inverse_entry(b, c) * fusion.entry(c, a)
            if total != (laurent.ONE if a == b else laurent.ZERO):
                yield ("inverse", a, b)

    return _first("fusion", failures())


def check_inverse(spec, matrices=None):
    """``B B^-1 = B^-1 B = I``."""
    _, braiding, inverse = _resolve(spec, matrices)
    bad = identity_check(braiding, inverse) or identity_check(inverse, braiding)
    return CheckResult("inverse", bad is None, bad)


def check_conservation(spec, matrices=None):
    """Entries only connect pairs with equal order sums; D's fork pairs are gamma-eigenvectors."""
    _, braiding, _ = _resolve(spec, matrices)
    n, gamma = spec.rank, spec.gamma

    def failures():
        for (a, b), (c, d), _ in braiding.nonzeros():
            if a + b != c + d:
                yield (a, b, c, d)
        if spec.family == "D":
            for o in (n - 1, n):
                if braiding.column(o, o) != (((o, o), gamma),):
                    yield (o, o)

    return _first("conservation", failures())


def check_reality(spec, matrices=None):
    """Braiding entries are real; fusion entries are imaginary exactly for C."""
    fusion, braiding, inverse = _resolve(spec, matrices)

    def failures():
        for matrix in (braiding, inverse):
            for src, dst, value in matrix.nonzeros():
                if not value.is_real():
                    yield src + dst
        imaginary = spec.family == "C"
        for a, value in enumerate(fusion.zeta):
            ok = value.is_imaginary() if imaginary else value.is_real()
            if not ok:
                yield (a,)

    return _first("reality", failures())


def check_yang_baxter(spec, matrices=None):
    """``B_12 B_23 B_12 = B_23 B_12 B_23`` on every basis vector of V (x) V (x) V."""
    _, braiding, _ = _resolve(spec, matrices)
    side = braiding.side

    def failures():
        for key in itertools.product(range(side), repeat=3):
            left = right = {key: laurent.ONE}
            for i in (0, 1, 0):
                left = braiding.apply_at(left, i)
            for i in (1, 0, 1):
                right = braiding.apply_at(right, i)
            if left != right:
                yield key

    return _first("yang_baxter", failures())


def check_skein(spec, matrices=None):
    """``B_ac^bd - (B^-1)_ac^bd = z (M_ac M^bd - delta_a^b delta_c^d)``."""
    fusion, braiding, inverse = _resolve(spec, matrices)
    z = spec.z

    def failures():
        for a, c, b, d in itertools.product(range(braiding.side), repeat=4):
            lhs = braiding.entry(a, c, b, d) - inverse.entry(a, c, b, d)
            rhs = fusion.entry(a, c) * fusion.inverse_entry(b, d)
            if (a, c) == (b, d):
                rhs = rhs - laurent.ONE
            if lhs != z * rhs:
                yield (a, c, b, d)

    return _first("skein", failures())


def check_loop_twist(spec, matrices=None):
    """Loop value delta and the twist eigenvalues alpha, alpha^-1 under a cap."""
    fusion, braiding, inverse = _resolve(spec, matrices)
    m, alpha = spec.m, spec.alpha
    pairs = list(itertools.product(range(m + 1), repeat=2))

    def failures():
        loop = laurent.ZERO
        for a, b in pairs:
            loop = loop + fusion.entry(a, b) * fusion.inverse_entry(a, b)
        if loop != spec.delta:
            yield ("loop",)
        for matrix, eigen, tag in ((braiding, alpha, "B"), (inverse, alpha.inverse(), "B^-1")):
            for a, b in pairs:
                total = laurent.ZERO
                for (c, d), value in matrix.column(a, b):
                    total = total + value * fusion.entry(c, d)
                if total != eigen * fusion.entry(a, b):
                    yield (tag, a, b)

    return _first("loop_twist", failures())


def check_partial_trace(spec, matrices=None):
    """Closing either leg of B gives ``C * I`` with ``C = alpha^-1``.

    ``C`` is also compared against ``gamma^m`` (m even) or ``x gamma^m`` (m odd)
    with ``x`` read from the fusion matrix.
    """
    fusion, braiding, _ = _resolve(spec, matrices)
    m = spec.m

    def failures():
        if m % 2 == 0:
            constant = spec.gamma ** m
        else:
            k = m // 2 + 1
            constant = fusion.zeta[k] * fusion.cozeta[k] * spec.gamma ** m
        if constant != spec.alpha.inverse():
            yield ("constant",)
        for a in range(m + 1):
            start = {(a,): laurent.ONE}
            right = contract_cap(braiding.apply_at(insert_cup(start, 1, fusion), 0), 1, fusion)
            left = contract_cap(braiding.apply_at(insert_cup(start, 0, fusion), 1), 0, fusion)
            for side, state in (("right", right), ("left", left)):
                if state != {(a,): constant}:
                    yield (side, a)

    return _first("partial_trace", failures())


def critical_multiplicities(spec):
    """Multiplicities of ``gamma`` and ``-gamma^-1`` on the critical block (alpha has 1)."""
    n = spec.rank
    if spec.family == "B":
        return n, n
    if spec.family == "C":
        return n, n - 1
    return n - 1, n


def bareiss_determinant(matrix):
    """Fraction-free determinant over the Laurent ring."""
    rows = [list(r) for r in matrix]
    size = len(rows)
    if size == 0:
        return laurent.ONE
    sign, previous = 1, laurent.ONE
    for k in range(size - 1):
        if rows[k][k].is_zero():
            pivot = next((i for i in range(k + 1, size) if not rows[i][k].is_zero()), None)
            if pivot is None:
                return laurent.ZERO
            rows[k], rows[pivot] = rows[pivot], rows[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                rows[i][j] = laurent.exact_div(
                    rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j], previous)
        previous = rows[k][k]
    det = rows[-1][-1]
    return det if sign > 0 else -det


def check_spectrum_trace_det(spec, matrices=None):
    """Annihilating cubic, critical-block trace and determinant, and ``B cup = alpha cup``."""
    fusion, braiding, _ = _resolve(spec, matrices)
    gamma, alpha, m = spec.gamma, spec.alpha, spec.m
    k_plus, k_minus = critical_multiplicities(spec)

    def shifted(state, eigen):
        out = dict(braiding.apply_at(state, 0))
        for key, amp in state.items():
            value = out.get(key, laurent.ZERO) - eigen * amp
            if value.is_zero():
                out.pop(key, None)
            else:
                out[key] = value
        return out

    def failures():
        for key in itertools.product(range(m + 1), repeat=2):
            state = {key: laurent.ONE}
            for eigen in (alpha, -gamma.inverse(), gamma):
                state = shifted(state, eigen)
            if state:
                yield ("cubic",) + key
        block = braiding.critical_block()
        trace = laurent.ZERO
        for k in range(m + 1):
            trace = trace + block[k][k]
        if trace != k_plus * gamma - k_minus * gamma.inverse() + alpha:
            yield ("trace",)
        det = bareiss_determinant(block)
        if det != gamma ** k_plus * (-gamma.inverse()) ** k_minus * alpha:
            yield ("det",)
        cup = insert_cup({(): laurent.ONE}, 0, fusion)
        image = braiding.apply_at(cup, 0)
        if image != {key: alpha * amp for key, amp in cup.items()}:
            yield ("cup",)

    return _first("spectrum_trace_det", failures())


CHECKS = (
    check_fusion,
    check_inverse,
    check_conservation,
    check_reality,
    check_yang_baxter,
    check_skein,
    check_loop_twist,
    check_partial_trace,
    check_spectrum_trace_det,
)


def run_suite(spec, matrices=None):
    """Run every check on one spec and collect a VerifyReport."""
    matrices = _resolve(spec, matrices)
    results = []
    for check in CHECKS:
        result = check(spec, matrices)
        log.debug("%s %s: %s", spec.name, result.name, "pass" if result.passed else "FAIL")
        results.append(result)
    return VerifyReport(spec.name, results)


def tampered_matrices(spec):
    """Matrices of ``spec`` with the diagonal wall-crossing entry at J_{0,m} zeroed.

    ``B^-1`` is left untouched, so the inverse and skein identities see the
    corruption.
    """
    fusion, braiding, inverse = _resolve(spec, None)
    src = (0, spec.m)
    return fusion, braiding.with_entry(src, src, laurent.ZERO), inverse
