from fractions import Fraction
import itertools

import pytest
from hypothesis import given, strategies as st

from nablakit.nabla import (Grid, IsPolynomial, NoBound, NotPolynomial, TabulatedFunction,
                            degree_detect, nabla_1d, nabla_apply, nabla_chain, nabla_commute_check,
                            newton_interpolate, polynomiality_test, product_table)
from nablakit.polyring import vandermonde_weight
from nablakit.scalars import GF, QQ

F5 = GF(5)


def cube_table(nodes):
    return TabulatedFunction.line(nodes, lambda s: s ** 3)


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid([("a", [0, 1]), ("a", [2])])
    with pytest.raises(ValueError):
        Grid([("a", [0, 0])])
    g = Grid([("a", [0, 1]), ("b", [5, 6, 7])])
    assert g.shape == (2, 3) and len(g) == 6
    assert g.without("a").labels == ("b",)


def test_table_must_be_total():
    g = Grid.line([0, 1, 2])
    with pytest.raises(ValueError):
        TabulatedFunction(g, {(0,): 1, (1,): 2})


def test_nabla_on_square_frozen():
    # weights (-1, 2, -1) on nodes (0, 1, 2) against values (0, 1, 4)
    f = TabulatedFunction.line([0, 1, 2], lambda s: s * s)
    assert nabla_apply(f, "s", [0, 1, 2]).scalar() == -2
    assert nabla_1d(lambda s: s * s, [0, 1, 2]) == -2


def test_nabla_rejects_bad_nodes():
    f = cube_table([0, 1, 2, 3])
    with pytest.raises(ValueError):
        nabla_apply(f, "s", [0, 0, 1])
    with pytest.raises(ValueError):
        nabla_apply(f, "s", [0, 9])
    with pytest.raises(KeyError):
        nabla_apply(f, "t", [0, 1])


def test_axis_labels_survive_contraction():
    g = Grid([("a", [0, 1, 2]), ("b", [0, 1, 2]), ("c", [0, 1])])
    f = TabulatedFunction.from_function(g, lambda a, b, c: a * b + c)
    h = nabla_apply(f, "b", [0, 1, 2])
    assert h.grid.labels == ("a", "c")
    assert h.is_zero()  # linear in b


def test_commute_requires_distinct_axes():
    g = Grid([("a", [0, 1, 2])])
    f = TabulatedFunction.from_function(g, lambda a: a)
    with pytest.raises(ValueError):
        nabla_commute_check(f, ("a", [0, 1]), ("a", [1, 2]))


def test_product_table_factorizes():
    g = Grid([("a", [0, 1, 2]), ("b", [1, 2, 4])])
    fa = lambda s: s ** 2 + 1
    fb = lambda s: 3 * s ** 2 - s
    t = product_table(g, {"a": fa, "b": fb})
    za, zb = [0, 1, 2], [1, 2, 4]
    chain = nabla_chain(t, [("a", za), ("b", zb)]).scalar()
    assert chain == nabla_1d(fa, za) * nabla_1d(fb, zb)


def test_polynomiality_frozen_cases():
    got = polynomiality_test(cube_table(range(6)), 2)
    assert isinstance(got, NotPolynomial)
    assert got.witness == (0, 1, 2, 3)
    # weights for (0,1,2,3): -P(1,2,3), P(0,2,3), -P(0,1,3), P(0,1,2) = -2, 6, -6, 2
    assert got.value == -2 * 0 + 6 * 1 - 6 * 8 + 2 * 27
    ok = polynomiality_test(cube_table(range(6)), 3)
    assert isinstance(ok, IsPolynomial)
    assert str(ok.witness) == "x^3"


def test_polynomiality_needs_enough_nodes():
    with pytest.raises(ValueError):
        polynomiality_test(cube_table([0, 1, 2]), 2)


def test_degree_detect():
    assert degree_detect(cube_table(range(6))) == 3
    assert degree_detect(cube_table(range(4))) is NoBound
    assert degree_detect(TabulatedFunction.line([1, 2, 3], [7, 7, 7])) == 0


def test_csv_round_trip():
    g = Grid([("a", [Fraction(1, 2), 3]), ("b", [0, 1])])
    f = TabulatedFunction.from_function(g, lambda a, b: a - b)
    assert TabulatedFunction.from_csv(f.to_csv()) == f
    h = TabulatedFunction.line([F5(0), F5(1)], [F5(3), F5(4)])
    assert TabulatedFunction.from_csv(h.to_csv(), F5) == h


def test_interpolation_matches_sympy():
    sympy = pytest.importorskip("sympy")
    nodes = [Fraction(-2), Fraction(1, 3), Fraction(4), Fraction(5, 2)]
    vals = [Fraction(7), Fraction(-1, 2), Fraction(0), Fraction(3)]
    p = newton_interpolate(nodes, vals, "x", QQ)
    X = sympy.Symbol("x")
    ref = sympy.interpolate([(sympy.Rational(s.numerator, s.denominator),
                              sympy.Rational(v.numerator, v.denominator))
                             for s, v in zip(nodes, vals)], X)
    assert sympy.expand(sympy.sympify(str(p).replace("^", "**")) - ref) == 0


def _brute_degree(values, nodes, F, d):
    p = F.characteristic
    for cs in itertools.product(range(p), repeat=d + 1):
        if all(sum((F(c) * s ** k for k, c in enumerate(cs)), F.zero) == v
               for s, v in zip(nodes, values)):
            return True
    return False


@given(st.lists(st.integers(0, 4), min_size=4, max_size=4), st.integers(0, 2))
def test_polynomiality_matches_brute_force_gf5(vals, d):
    nodes = [F5(v) for v in range(4)]
    values = [F5(v) for v in vals]
    got = polynomiality_test(TabulatedFunction.line(nodes, values), d)
    assert isinstance(got, IsPolynomial) == _brute_degree(values, nodes, F5, d)
    if isinstance(got, NotPolynomial):
        assert len(got.witness) == d + 2
        assert nabla_1d(dict(zip(nodes, values)), got.witness) == got.value != 0


@given(st.lists(st.integers(-30, 30), min_size=2, max_size=7, unique=True),
       st.lists(st.integers(-5, 5), min_size=1, max_size=6))
def test_annihilation_property(z, coeffs):
    d = len(coeffs) - 1
    f = lambda s: sum(c * s ** k for k, c in enumerate(coeffs))
    value = nabla_1d(f, z)
    if d <= len(z) - 2:
        assert value == 0
    if d == len(z) - 1:
        assert value == coeffs[-1] * (-1) ** len(z) * vandermonde_weight(z)


@given(st.integers(0, 10 ** 6))
def test_commutation_property_gf5(seed):
    import random
    rng = random.Random(seed)
    nodes = [F5(v) for v in range(3)]
    g = Grid([("a", nodes), ("b", nodes)])
    f = TabulatedFunction.from_function(g, lambda *_: F5(rng.randrange(5)))
    assert nabla_commute_check(f, ("a", nodes), ("b", rng.sample(nodes, 2)))


@given(st.lists(st.fractions(max_denominator=9).filter(lambda q: abs(q) < 50),
                min_size=1, max_size=6, unique=True), st.data())
def test_newton_reproduces_values(nodes, data):
    vals = data.draw(st.lists(st.integers(-9, 9), min_size=len(nodes), max_size=len(nodes)))
    p = newton_interpolate(nodes, vals, "x", QQ)
    assert p.total_degree() <= len(nodes) - 1
    assert all(p.evaluate((s,)) == v for s, v in zip(nodes, vals))
