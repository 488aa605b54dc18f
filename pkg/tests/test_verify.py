import numpy as np
import pytest

from qmknot import laurent, verify
from qmknot.algebra_data import make_spec
from qmknot.laurent import ONE, ZERO, monomial

from conftest import matrices

x = monomial(1)

SUITE_SPECS = [("B", 1), ("B", 2), ("B", 3), ("C", 1), ("C", 2), ("C", 3),
               ("D", 3), ("D", 4)]


@pytest.mark.parametrize("family,rank", SUITE_SPECS)
def test_suite_passes(family, rank):
    spec, fusion, braiding, inverse = matrices(family, rank)
    report = verify.run_suite(spec, (fusion, braiding, inverse))
    assert report.failures() == []
    assert report.passed
    assert [c.name for c in report.checks] == [
        "fusion", "inverse", "conservation", "reality", "yang_baxter", "skein",
        "loop_twist", "partial_trace", "spectrum_trace_det"]


def test_report_json():
    report = verify.run_suite(make_spec("B", 1))
    record = report.to_json()
    assert record["spec"] == "B1"
    assert {"name": "yang_baxter", "pass": True} in record["checks"]


def test_b2_trace_and_determinant():
    spec, _, braiding, _ = matrices("B", 2)
    block = braiding.critical_block()
    trace = laurent.ZERO
    for k in range(len(block)):
        trace = trace + block[k][k]
    assert trace == 2 * (x ** -2 - x ** 2) + x ** 8
    assert verify.bareiss_determinant(block) == x ** 8


def test_bareiss_determinant_small():
    two, three = 2 * ONE, 3 * ONE
    assert verify.bareiss_determinant([[two, ONE], [ONE, three]]) == 5
    assert verify.bareiss_determinant([[ZERO, ONE], [ONE, ZERO]]) == -1
    assert verify.bareiss_determinant([[x, x], [ONE, ONE]]) == ZERO
    assert verify.bareiss_determinant([]) == ONE


@pytest.mark.parametrize("family,rank", [("B", 2), ("C", 2), ("C", 3), ("D", 3)])
def test_numeric_eigenvalue_multiplicities(family, rank):
    spec, _, braiding, _ = matrices(family, rank)
    x0 = 1.3
    block = np.array([[laurent.eval_numeric(v, x0) for v in row]
                      for row in braiding.critical_block()])
    k_plus, k_minus = verify.critical_multiplicities(spec)
    size = block.shape[0]
    for eigen, expected in ((spec.gamma, k_plus), (-spec.gamma.inverse(), k_minus),
                            (spec.alpha, 1)):
        shifted = block - laurent.eval_numeric(eigen, x0) * np.eye(size)
        assert size - np.linalg.matrix_rank(shifted) == expected
    assert k_plus + k_minus + 1 == size


def test_perturbed_beta_entries_are_detected():
    spec, fusion, braiding, inverse = matrices("B", 1)
    m = spec.m
    perturbed = 0
    for a in range(m + 1):
        src = (a, m - a)
        for dst, value in braiding.column(*src):
            if dst == (m - a, a) or value.is_zero():
                continue
            for replacement in (ZERO, value + 1):
                tampered = (fusion, braiding.with_entry(src, dst, replacement), inverse)
                results = [verify.check_yang_baxter(spec, tampered),
                           verify.check_skein(spec, tampered),
                           verify.check_loop_twist(spec, tampered)]
                assert not all(r.passed for r in results), (src, dst)
            perturbed += 1
    assert perturbed == 3


def test_tampered_build_names_failing_check():
    spec = make_spec("B", 1)
    report = verify.run_suite(spec, verify.tampered_matrices(spec))
    assert not report.passed
    skein = report["skein"]
    assert not skein.passed
    assert skein.counterexample == (0, 2, 0, 2)
    assert skein.to_json()["counterexample"] == [0, 2, 0, 2]
    assert report["fusion"].passed


def test_tampered_fusion_entry_fails_fusion_check():
    spec, fusion, braiding, inverse = matrices("C", 2)
    bad = fusion.with_entry(0, 2 * fusion.zeta[0])
    result = verify.check_fusion(spec, (bad, braiding, inverse))
    assert not result.passed
    assert result.counterexample == ("normalization", 0)
    report = verify.run_suite(spec, (bad, braiding, inverse))
    assert "fusion" in [c.name for c in report.failures()]


def test_critical_multiplicities():
    assert verify.critical_multiplicities(make_spec("B", 3)) == (3, 3)
    assert verify.critical_multiplicities(make_spec("C", 3)) == (3, 2)
    assert verify.critical_multiplicities(make_spec("D", 3)) == (2, 3)
