from fractions import Fraction
import itertools

import pytest
from hypothesis import given, strategies as st

from nablakit.polyring import (MultiPoly, alternating_weights, lagrange_identity, monomials_up_to,
                               poly_divmod, poly_xgcd, vandermonde_poly, vandermonde_weight)
from nablakit.scalars import GF, QQ

x, y = MultiPoly.gens("x y")
small = st.integers(-6, 6)


@st.composite
def univariate(draw, max_degree=4, field=QQ):
    deg = draw(st.integers(0, max_degree))
    coeffs = {(k,): draw(small) for k in range(deg + 1)}
    return MultiPoly(coeffs, ("x",), field)


@st.composite
def bivariate(draw):
    terms = draw(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), small,
                                 max_size=5))
    return MultiPoly(terms, ("x", "y"))


def test_expansion():
    assert str((x + y) ** 2) == "x^2 + 2*x*y + y^2"
    assert ((x + y) ** 2).evaluate((1, 2)) == 9


def test_parse_round_trip():
    p = MultiPoly.parse("2*x1^2*x2 - 1/3")
    assert p.total_degree() == 3
    assert MultiPoly.parse(str(p), p.variables) == p


def test_zero_degree_is_negative_infinity():
    assert MultiPoly.zero().total_degree() == float("-inf")


def test_evaluate_checks_arity():
    with pytest.raises(ValueError):
        (x * y).evaluate((1,))


def test_exact_division():
    assert (x ** 2 - y ** 2) / (x + y) == x - y
    with pytest.raises(ArithmeticError):
        (x ** 2 + 1).divexact(x + y)


def test_vandermonde_values():
    # (1-0)(2-0)(2-1) = 2
    assert vandermonde_weight([0, 1, 2]) == 2
    assert vandermonde_weight([]) == 1
    assert vandermonde_weight([5]) == 1
    assert str(vandermonde_poly(2)) == "-x1 + x2"


def test_alternating_weights_small():
    # (-1)^j P(z without z_j) for z = (0, 1, 2)
    assert alternating_weights([0, 1, 2]) == [-1, 2, -1]


def test_lagrange_frozen_values():
    # weights (-1, 2, -1) against (0, 1, 4)
    assert lagrange_identity(x ** 2, [0, 1, 2]) == -2
    assert lagrange_identity(x ** 2, [0, 1, 2, 3]) == 0


def test_lagrange_repeated_nodes():
    with pytest.raises(ValueError):
        lagrange_identity(x, [1, 1, 2])


def test_monomials_up_to():
    ms = monomials_up_to(2, 2)
    assert len(ms) == 6
    assert ms[0] == (0, 0)
    assert monomials_up_to(3, -1) == []


def test_univariate_division_and_gcd():
    a = (x - 1) * (x - 2) * (x + 3)
    b = (x - 1) * (x + 5)
    q, r = poly_divmod(a, b)
    assert q * b + r == a
    g, s, t = poly_xgcd(a, b)
    assert g == x - 1
    assert s * a + t * b == g


def test_vandermonde_against_determinant():
    sympy = pytest.importorskip("sympy")
    z = [Fraction(3), Fraction(-1, 2), Fraction(5), Fraction(7, 3)]
    M = sympy.Matrix([[sympy.Rational(s.numerator, s.denominator) ** k for k in range(4)]
                      for s in z])
    assert sympy.Rational(M.det()) == vandermonde_weight(z)


@given(bivariate(), bivariate(), bivariate())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == MultiPoly.zero(QQ, ("x", "y"))


@given(bivariate(), bivariate(), small, small)
def test_evaluation_is_a_homomorphism(a, b, u, v):
    assert (a * b).evaluate((u, v)) == a.evaluate((u, v)) * b.evaluate((u, v))
    assert (a + b).evaluate((u, v)) == a.evaluate((u, v)) + b.evaluate((u, v))


@given(bivariate())
def test_string_round_trip(a):
    assert MultiPoly.parse(str(a), ("x", "y")) == a


@given(bivariate(), bivariate())
def test_product_division(a, b):
    if b:
        assert (a * b).divexact(b) == a


@given(univariate(), st.lists(st.integers(-20, 20), min_size=2, max_size=7, unique=True))
def test_lagrange_annihilation(f, z):
    if f.total_degree() <= len(z) - 2:
        assert lagrange_identity(f, z) == 0


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=6, unique=True), st.integers(0, 1))
def test_lagrange_monic_top_degree(z, p_choice):
    F = [QQ, GF(101)][p_choice]
    zz = [F(v) for v in z]
    m = len(zz)
    f = MultiPoly({(m - 1,): 1, (0,): 7}, ("x",), F)
    if m == 1:
        f = MultiPoly({(0,): 1}, ("x",), F)
    assert lagrange_identity(f, zz) == (-1) ** m * vandermonde_weight(zz)


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=5, unique=True))
def test_weights_sum_to_zero(z):
    # constants are killed whenever there are at least two nodes
    assert sum(alternating_weights(z)) == 0


def test_gf_polynomials():
    F = GF(5)
    a = MultiPoly({(2,): 1, (0,): -1}, ("x",), F)
    assert a.evaluate((F(1),)) == F(0)
    assert a.evaluate((F(4),)) == F(0)
    assert all((a * a).evaluate((F(v),)) == a.evaluate((F(v),)) ** 2 for v in range(5))


def test_many_variable_expansion_matches_sympy():
    sympy = pytest.importorskip("sympy")
    p = vandermonde_poly(4)
    s = sympy.symbols("x1:5")
    ref = sympy.expand(sympy.prod([s[j] - s[i] for i, j in itertools.combinations(range(4), 2)]))
    assert sympy.expand(sympy.sympify(str(p).replace("^", "**"))) == ref
