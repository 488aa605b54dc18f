import pytest

from qmknot import laurent
from qmknot.braiding import (BraidMatrix, FusionMatrix, build_braiding_inverse,
                             build_fusion, identity_check)
from qmknot.errors import InverseCheckFailed
from qmknot.laurent import ONE, ZERO, monomial

from conftest import matrices

x = monomial(1)


def test_fusion_examples():
    _, fusion, _, _ = matrices("B", 1)
    assert fusion.zeta == (laurent.parse("q^{1/4}"), ONE, laurent.parse("q^{-1/4}"))
    assert fusion.entry(0, 2) == x and fusion.entry(0, 1) == ZERO
    assert fusion.inverse_entry(2, 0) == x ** -1

    _, fusion, _, _ = matrices("B", 2)
    assert fusion.entry(0, 4) == laurent.parse("q^{3/4}")

    _, fusion, _, _ = matrices("C", 2)
    assert fusion.entry(2, 1) == laurent.parse("i*q^{-1/4}")
    assert fusion.entry(0, 3) == laurent.parse("-i*q^{1/2}")

    spec, fusion, _, _ = matrices("D", 3)
    assert fusion.entry(spec.order("2"), spec.order("2p")) == ONE
    assert fusion.entry(spec.order("2p"), spec.order("2")) == ONE


def test_fusion_with_entry_keeps_inverse():
    spec, fusion, _, _ = matrices("B", 2)
    changed = fusion.with_entry(1, 5)
    assert changed.zeta[1] == 5
    assert changed.cozeta == fusion.cozeta
    assert fusion.zeta[1] == build_fusion(spec).zeta[1]


def test_non_critical_block_b1():
    _, _, braiding, inverse = matrices("B", 1)
    assert braiding.entry(1, 0, 0, 1) == ONE
    assert braiding.entry(1, 0, 1, 0) == ZERO
    assert braiding.entry(0, 1, 1, 0) == ONE
    assert braiding.entry(0, 1, 0, 1) == laurent.parse("q^{-1/2} - q^{1/2}")
    assert inverse.entry(1, 0, 1, 0) == laurent.parse("q^{1/2} - q^{-1/2}")
    assert inverse.entry(1, 0, 0, 1) == ONE
    assert inverse.entry(0, 1, 1, 0) == ONE
    assert inverse.entry(0, 1, 0, 1) == ZERO


def test_equal_weight_pairs_carry_gamma():
    spec, _, braiding, _ = matrices("B", 2)
    assert braiding.column(1, 1) == (((1, 1), laurent.parse("q^{-1/2}")),)
    assert braiding.column(0, 0) == (((0, 0), spec.gamma),)


def test_critical_block_b1():
    spec, _, braiding, _ = matrices("B", 1)
    block = braiding.critical_block()
    # basis (2, 0), (1, 1), (0, 2)
    assert block[0][2] == x ** 2
    assert block[1][1] == ONE
    assert block[2][2] == (x ** -2 - x ** 2) * (1 - x ** 2)
    assert block[2][1] == x ** 3 - x ** -1
    assert block[1][2] == x ** 3 - x ** -1
    assert block[0][0] == ZERO
    trace = block[0][0] + block[1][1] + block[2][2]
    assert trace == x ** -2 - x ** 2 + spec.alpha


def test_cup_is_twist_eigenvector():
    for family, rank in (("B", 1), ("C", 2), ("D", 3)):
        spec, fusion, braiding, inverse = matrices(family, rank)
        m = spec.m
        cup = {(a, m - a): fusion.cozeta[a] for a in range(m + 1)}
        image = braiding.apply_at(cup, 0)
        assert image == {key: spec.alpha * amp for key, amp in cup.items()}
        image = inverse.apply_at(cup, 0)
        assert image == {key: spec.alpha.inverse() * amp for key, amp in cup.items()}


def test_c2_twist_eigenvalue_sign():
    spec, _, _, _ = matrices("C", 2)
    assert spec.alpha == laurent.parse("-q^{5/4}")


def test_inverse_is_exact():
    for family, rank in (("B", 2), ("C", 2), ("D", 3)):
        _, _, braiding, inverse = matrices(family, rank)
        assert identity_check(braiding, inverse) is None
        assert identity_check(inverse, braiding) is None
    _, _, braiding, _ = matrices("B", 1)
    assert identity_check(braiding, braiding) is not None


def test_apply_at_acts_on_chosen_factors():
    spec, _, braiding, _ = matrices("B", 1)
    state = {(2, 1, 0): ONE}
    out = braiding.apply_at(state, 1)
    assert out == {(2, 0, 1): ONE}
    out = braiding.apply_at({(0, 1, 2): 3 * ONE}, 0)
    assert out == {(1, 0, 2): 3 * ONE, (0, 1, 2): 3 * (spec.gamma - spec.gamma.inverse())}


def test_tampered_braiding_fails_inverse_check():
    spec, fusion, braiding, _ = matrices("B", 1)
    tampered = braiding.with_entry((0, 2), (0, 2), ZERO)
    assert tampered.entry(0, 2, 0, 2) == ZERO
    assert braiding.entry(0, 2, 0, 2) != ZERO
    with pytest.raises(InverseCheckFailed):
        build_braiding_inverse(tampered, fusion, spec)


def test_sparse_storage_drops_zeros():
    matrix = BraidMatrix(2, {(0, 1): [((1, 0), ONE), ((0, 1), ZERO)]})
    assert matrix.column(0, 1) == (((1, 0), ONE),)
    assert list(matrix.nonzeros()) == [((0, 1), (1, 0), ONE)]
    assert matrix.side_dim == 4


def test_default_cozeta_inverts_fusion():
    fusion = FusionMatrix(1, [monomial(3), monomial(-3)])
    assert fusion.cozeta == (monomial(3), monomial(-3))


def test_dump_lists_every_entry():
    spec, _, braiding, _ = matrices("D", 3)
    lines = braiding.dump(spec).splitlines()
    assert len(lines) == sum(1 for _ in braiding.nonzeros())
    assert "2p,2p -> 2p,2p : q^{-1/2}" in lines
    assert lines == sorted(lines)
