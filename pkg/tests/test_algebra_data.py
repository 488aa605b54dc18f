import pytest

from qmknot import algebra_data, laurent
from qmknot.algebra_data import WeightLabel, make_spec
from qmknot.errors import InvalidLabel, SpecError, UnsupportedRank
from qmknot.laurent import monomial


def test_make_spec_b1():
    spec = make_spec("B", 1)
    assert spec.dim == 3 and spec.m == 2
    assert spec.gamma == laurent.parse("q^{-1/2}")
    assert spec.alpha == laurent.parse("q")
    assert spec.delta == laurent.parse("q^{1/2} + 1 + q^{-1/2}")
    assert spec.name == "B1"


def test_make_spec_c2():
    spec = make_spec("C", 2)
    assert spec.dim == 4
    assert spec.gamma == laurent.parse("q^{-1/4}")
    assert spec.alpha == laurent.parse("-q^{5/4}")
    assert spec.z == laurent.parse("q^{1/4} - q^{-1/4}")


def test_make_spec_d3():
    spec = make_spec("D", 3)
    assert spec.dim == 6
    assert spec.alpha == laurent.parse("q^{5/2}")
    assert laurent.eval_numeric(spec.delta, 1.0) == pytest.approx(6.0)


def test_make_spec_errors():
    with pytest.raises(UnsupportedRank):
        make_spec("B", 0)
    with pytest.raises(UnsupportedRank):
        make_spec("D", 1)
    with pytest.raises(SpecError):
        make_spec("E", 6)
    assert make_spec("b", 2).name == "B2"


@pytest.mark.parametrize("family", ["B", "C", "D"])
def test_loop_value_identity(family):
    for rank in range(2, 6):
        spec = make_spec(family, rank)
        assert spec.delta * spec.z == spec.alpha - spec.alpha.inverse() + spec.z
        assert spec.z == spec.gamma.inverse() - spec.gamma


@pytest.mark.parametrize("family,expected", [
    ("B", lambda n: 2 * n + 1),
    ("C", lambda n: -2 * n),
    ("D", lambda n: 2 * n),
])
def test_loop_value_is_signed_dimension(family, expected):
    first = 2 if family == "D" else 1
    for rank in range(first, 6):
        value = laurent.eval_numeric(make_spec(family, rank).delta, 1.0)
        assert abs(value - expected(rank)) < 1e-12


def test_inner_product_examples():
    b2 = make_spec("B", 2)
    assert algebra_data.inner_product(b2, 1, 3) == -2
    assert algebra_data.inner_product(b2, 2, 2) == 0
    assert algebra_data.inner_product(make_spec("C", 2), 1, 2) == -1
    assert algebra_data.inner_product(make_spec("D", 3), 2, "2p") == -2


def test_complement_and_order():
    b2 = make_spec("B", 2)
    assert algebra_data.complement(b2, 1) == WeightLabel(3)
    d3 = make_spec("D", 3)
    assert algebra_data.complement(d3, 2) == WeightLabel(2, prime=True)
    assert algebra_data.order(d3, "2p") == 3
    assert algebra_data.order(d3, 3) == 4
    assert [str(label) for label in d3.labels] == ["0", "1", "2", "2p", "3", "4"]
    for family, rank in (("B", 3), ("C", 3), ("D", 4)):
        spec = make_spec(family, rank)
        for label in spec.labels:
            twice = algebra_data.complement(spec, algebra_data.complement(spec, label))
            assert twice == label


def test_invalid_labels():
    d3 = make_spec("D", 3)
    with pytest.raises(InvalidLabel):
        d3.label(6)
    with pytest.raises(InvalidLabel):
        d3.label("1p")
    with pytest.raises(InvalidLabel):
        make_spec("B", 2).label("x")
    with pytest.raises(InvalidLabel):
        algebra_data.inner_product(make_spec("C", 1), 0, 2)


def test_weight_label_json():
    assert WeightLabel(2, prime=True).to_json() == "2p"
    assert WeightLabel(4).to_json() == 4


@pytest.mark.parametrize("family,ranks", [
    ("B", range(1, 5)), ("C", range(1, 5)), ("D", range(2, 6))])
def test_cartan_cross_check_matches_tables(family, ranks):
    for rank in ranks:
        spec = make_spec(family, rank)
        weights, cartan = algebra_data.cartan_weights(spec)
        assert weights.shape == (spec.dim, rank)
        for s in spec.labels:
            for t in spec.labels:
                expected = algebra_data.inner_product(spec, s, t)
                assert algebra_data.cartan_inner_product(spec, s, t) == expected
                assert algebra_data.inner_product(spec, t, s) == expected


def test_gamma_is_monomial_unit():
    for family, rank in (("B", 2), ("C", 3), ("D", 3)):
        spec = make_spec(family, rank)
        assert spec.gamma.is_monomial()
        assert spec.gamma * spec.gamma.inverse() == 1
    assert make_spec("C", 1).gamma == monomial(-1)
