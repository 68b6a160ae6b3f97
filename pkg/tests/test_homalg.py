from fractions import Fraction
import itertools
import json

import pytest
from hypothesis import given, strategies as st

from nablakit.homalg import (ZZ, ChainComplex, FPModule, ModuleMap, MultivariatePolys, NoSplit,
                             ProductRing, Split, UnivariatePolys, build_f_RS, check_retraction,
                             check_smith, determinant, resolution_tensor_map, has_left_inverse,
                             indivisible_check, kernel_basis, matches_tensor_top, ring_from_name,
                             smith_normal_form, solve_over_ring, sym_truncation, tensor_complexes,
                             tensor_quotient_check, tensor_quotient_dimension, two_term)
from nablakit.homalg.split import check_bezout_certificate, coker
from nablakit.scalars import GF, QQ

R = UnivariatePolys()
x = R.x
small = st.integers(-9, 9)


def int_matrix(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@st.composite
def qx_matrix(draw, rows=2, cols=2):
    def entry():
        deg = draw(st.integers(0, 2))
        return R(sum((draw(st.integers(-3, 3)) * x ** k for k in range(deg + 1)), R.zero))
    return ModuleMap(R, [[entry() for _ in range(cols)] for _ in range(rows)])


# -- Smith normal form ------------------------------------------------------


def test_snf_frozen_examples():
    assert smith_normal_form(ModuleMap(ZZ, [[2, 0], [0, 3]])).diagonal == [1, 6]
    d = smith_normal_form(ModuleMap(R, [[x, 0], [0, x - 1]])).diagonal
    assert d == [R.one, x * (x - 1)]
    z = smith_normal_form(ModuleMap.zeros(ZZ, 2, 3))
    assert z.diagonal == [0, 0] and z.rank == 0


def test_snf_rejects_multivariate():
    M = MultivariatePolys(QQ, ("a", "b"))
    with pytest.raises(ValueError):
        smith_normal_form(ModuleMap(M, [[1]]))


def test_determinant():
    assert determinant(ModuleMap(ZZ, [[2, 4, 4], [-6, 6, 12], [10, -4, -16]])) == -144
    assert determinant(ModuleMap(ZZ, [[0, 1], [1, 0]])) == -1
    assert determinant(ModuleMap(R, [[x, 1], [1, x]])) == x * x - 1


@given(int_matrix(3, 3))
def test_snf_postconditions_integers(rows):
    m = ModuleMap(ZZ, rows)
    sf = smith_normal_form(m)
    assert check_smith(m, sf) == []


@given(int_matrix(3, 3))
def test_snf_against_sympy(rows):
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import smith_normal_form as ref_snf
    ref = ref_snf(sympy.Matrix(rows), domain=sympy.ZZ)
    ref_diag = sorted(abs(int(ref[i, i])) for i in range(3))
    ours = sorted(abs(d) for d in smith_normal_form(ModuleMap(ZZ, rows)).diagonal)
    assert ours == ref_diag


@given(qx_matrix())
def test_snf_postconditions_qx(m):
    assert check_smith(m, smith_normal_form(m)) == []


@given(int_matrix(2, 3))
def test_determinantal_divisors(rows):
    # d1 = gcd of entries, d1*d2 = gcd of 2x2 minors
    from math import gcd
    m = ModuleMap(ZZ, rows)
    d = smith_normal_form(m).diagonal
    g1 = 0
    for r in rows:
        for a in r:
            g1 = gcd(g1, a)
    g2 = 0
    for i, j in itertools.combinations(range(3), 2):
        g2 = gcd(g2, rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i])
    assert abs(d[0]) == g1
    assert abs(d[0] * d[1]) == g2


@given(int_matrix(2, 3), st.lists(small, min_size=3, max_size=3))
def test_kernel_and_solve(rows, v):
    m = ModuleMap(ZZ, rows)
    K = kernel_basis(m)
    assert (m @ K).is_zero() if K.cols else True
    b = m.apply(v)
    sol = solve_over_ring(m, b)
    assert sol is not None and m.apply(sol) == b


def test_json_round_trip():
    m = ModuleMap(R, [[x, 1], [0, x ** 2 - Fraction(1, 2)]])
    assert ModuleMap.from_json(json.dumps(m.to_json())) == m
    c = two_term(ModuleMap(ZZ, [[2]]))
    assert ChainComplex.from_json(json.dumps(c.to_json())) == c


def test_ring_names():
    assert ring_from_name("ZZ") is ZZ
    assert ring_from_name("GF(5)[t]").field is GF(5)
    assert isinstance(ring_from_name("QQ[a,b]"), MultivariatePolys)
    with pytest.raises(ValueError):
        ring_from_name("RR")


# -- splitting ----------------------------------------------------------------


def test_split_examples():
    got = has_left_inverse(ModuleMap(R, [[x], [x - 1]]))
    assert isinstance(got, Split)
    assert got.retraction == ModuleMap(R, [[1, -1]])
    no = has_left_inverse(ModuleMap(R, [[x], [x * x]]))
    assert isinstance(no, NoSplit) and no.factor == x
    assert isinstance(has_left_inverse(ModuleMap(ZZ, [[2], [4]])), NoSplit)
    assert isinstance(has_left_inverse(ModuleMap(ZZ, [[1, 1]])), NoSplit)


def test_build_f_RS_shape():
    f = build_f_RS(R, [x - 1, x - 2])
    assert f == ModuleMap(R, [[1, 1], [x - 1, 0], [0, x - 2]])
    assert build_f_RS(R, [x - 5]) == ModuleMap(R, [[1], [x - 5]])
    assert build_f_RS(R, []).shape == (1, 0)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_finite_S_splits(k):
    f = build_f_RS(R, [x - s for s in range(k)])
    got = has_left_inverse(f)
    assert isinstance(got, Split) and check_retraction(f, got.retraction)


def test_multivariate_split_is_bounded():
    M = MultivariatePolys(QQ, ("a", "b"))
    a, b = M.gens()
    with pytest.raises(ValueError):
        has_left_inverse(ModuleMap(M, [[a], [b]]))
    assert isinstance(has_left_inverse(ModuleMap(M, [[a], [b]]), 2), NoSplit)
    got = has_left_inverse(ModuleMap(M, [[a], [1 - a]]), 0)
    assert isinstance(got, Split)
    # b * a + 1 * (1 - a b) = 1 needs a degree-one entry
    m = ModuleMap(M, [[a], [1 - a * b]])
    assert isinstance(has_left_inverse(m, 0), NoSplit)
    got = has_left_inverse(m, 1)
    assert isinstance(got, Split) and check_retraction(m, got.retraction)


def _bounded_integer_retraction(a, b, B):
    return any(u * a + v * b == 1 for u in range(-B, B + 1) for v in range(-B, B + 1))


@given(small, small)
def test_split_matches_exhaustive_search(a, b):
    got = has_left_inverse(ModuleMap(ZZ, [[a], [b]]))
    # a Bezout pair for (a, b) exists with |u|, |v| <= max(|a|, |b|)
    assert isinstance(got, Split) == _bounded_integer_retraction(a, b, 9)


# -- indivisibility ------------------------------------------------------------


def test_linear_family_is_indivisible():
    v = indivisible_check(R, {s: x - s for s in [0, 1, 3]})
    assert v.passed
    c = {tuple(d["pair"]): d["coefficients"] for d in v.certificates}
    assert c[(0, 3)] == ["1/3", "-1/3"]
    for (s, t), (u, w) in c.items():
        assert check_bezout_certificate(R, x - s, x - t, (R.parse(u), R.parse(w)))


def test_shared_root_fails():
    v = indivisible_check(R, [x, x * x])
    assert not v.passed and not v.checks["pairwise_unit_ideal"]


def test_constant_quotient_fails():
    v = indivisible_check(R, [x, R(3)])
    assert not v.checks["quotients_nonzero_free"]


def test_zero_element_rejected():
    with pytest.raises(ValueError):
        indivisible_check(R, [x, R.zero])


def test_idempotent_family():
    P = ProductRing(2, 4)
    elems = {s: tuple(0 if t == s else 1 for t in range(4)) for s in range(4)}
    v = indivisible_check(P, elems)
    assert v.passed and len(v.certificates) == 6
    bad = indivisible_check(P, {0: (0, 0, 1, 1), 1: (0, 1, 1, 1)})
    assert not bad.passed


def test_tensor_quotient_examples():
    assert tensor_quotient_dimension([x - 1, x - 2]) == 1
    assert tensor_quotient_dimension([x * x]) == 2
    assert tensor_quotient_check([x - 1, x + 2, x - 7])
    assert tensor_quotient_dimension([x * x + 1, x ** 3 - x]) == 6


# -- complexes -------------------------------------------------------------------


def test_tor_of_z2():
    two = two_term(ModuleMap(ZZ, [[2]]))
    t = tensor_complexes(two, two)
    assert t.ranks == [1, 2, 1]
    assert t.homology(0).torsion == (2,) and t.homology(0).free_rank == 0
    assert t.homology(1).torsion == (2,) and t.homology(1).free_rank == 0
    assert t.homology(2).is_zero()


def test_coprime_resolutions_have_zero_tor():
    t = tensor_complexes(two_term(ModuleMap(R, [[x]])), two_term(ModuleMap(R, [[x - 1]])))
    assert all(t.homology(i).is_zero() for i in range(3))


def test_tensor_with_unit_complex():
    c = two_term(ModuleMap(ZZ, [[3, 1], [0, 6]]))
    assert tensor_complexes(c, ChainComplex.concentrated(ZZ, 1)) == c


def test_d_squared_validated():
    with pytest.raises(ValueError):
        ChainComplex(ZZ, [ModuleMap(ZZ, [[1]]), ModuleMap(ZZ, [[1]])])


def test_tensor_top_sign_convention():
    assert matches_tensor_top(ModuleMap(ZZ, [[1], [2]]), ModuleMap(ZZ, [[3], [5], [7]]))
    e = resolution_tensor_map(ModuleMap(R, [[x]]), ModuleMap(R, [[x - 1]]))
    assert isinstance(has_left_inverse(e), Split)
    e2 = resolution_tensor_map(ModuleMap(ZZ, [[2]]), ModuleMap(ZZ, [[2]]))
    assert isinstance(has_left_inverse(e2), NoSplit)


@given(int_matrix(2, 2), int_matrix(1, 2))
def test_tensor_d_squared(a, b):
    c1 = ChainComplex(ZZ, [ModuleMap(ZZ, a)])
    c2 = ChainComplex(ZZ, [ModuleMap(ZZ, b)])
    t = tensor_complexes(c1, c2)
    for k in range(len(t.maps) - 1):
        assert (t.maps[k] @ t.maps[k + 1]).is_zero()


@given(st.integers(1, 9), st.integers(1, 9))
def test_tor_of_cyclic_groups(m, n):
    from math import gcd
    t = tensor_complexes(two_term(ModuleMap(ZZ, [[m]])), two_term(ModuleMap(ZZ, [[n]])))
    g = gcd(m, n)
    expected = () if g == 1 else (g,)
    assert t.homology(0).torsion == expected
    assert t.homology(1).torsion == expected


# -- Sym truncation ----------------------------------------------------------------


def test_sym_truncation_first_basis_vector():
    stages = sym_truncation(ModuleMap(R, [[1], [0]]), 6)
    for st_ in stages:
        assert st_.sym_rank == st_.n + 1
        assert st_.cokernel.invariants().free_rank == st_.n
        assert st_.sym_quotient.invariants().free_rank == 1
        assert st_.exact
    assert stages[0].cokernel.isomorphic(coker(ModuleMap(R, [[1], [0]])))


def test_sym_truncation_identity_eta():
    assert all(s.cokernel.is_zero() and s.exact for s in sym_truncation(ModuleMap(R, [[1]]), 3))


def test_sym_truncation_with_torsion():
    eta = ModuleMap(ZZ, [[2], [0]])
    stages = sym_truncation(eta, 3)
    assert all(s.exact for s in stages)
    assert stages[0].cokernel.invariants().torsion == (2,)


def test_sym_truncation_errors():
    with pytest.raises(ValueError):
        sym_truncation(ModuleMap(R, [[0], [0]]), 2)
    with pytest.raises(ValueError):
        sym_truncation(ModuleMap(R, [[1, 0], [0, 1]]), 2)


@given(st.lists(st.integers(-4, 4), min_size=2, max_size=3).filter(any))
def test_sym_truncation_random_integer_eta(v):
    stages = sym_truncation(ModuleMap(ZZ, [[a] for a in v]), 3)
    assert all(s.exact for s in stages)
    assert stages[0].cokernel.isomorphic(FPModule(ZZ, len(v), ModuleMap(ZZ, [[a] for a in v])))
