from fractions import Fraction

from hypothesis import given, strategies as st

from nablakit.linsolve import Feasible, Infeasible, LinearSystem, solve
from nablakit.ratfunc import RationalFunctionField
from nablakit.scalars import GF, QQ


def system(rows, n):
    s = LinearSystem()
    for k in range(n):
        s.unknown(k)
    for coeffs, rhs in rows:
        s.add_equation(dict(enumerate(coeffs)), rhs)
    return s


def test_empty_system():
    assert solve(LinearSystem()) == Feasible({})


def test_contradiction_certificate():
    s = system([([1], 1), ([1], 2)], 1)
    got = solve(s)
    assert isinstance(got, Infeasible)
    assert got.certificate == {0: -1, 1: 1} or got.certificate == {0: 1, 1: -1}
    assert s.check_certificate(got.certificate)


def test_underdetermined_sets_free_unknowns_to_zero():
    s = system([([1, 1], 3)], 2)
    got = solve(s)
    assert s.satisfied_by(got.assignment)
    assert sorted(got.assignment.values()) == [0, 3]


def test_undeclared_unknown():
    s = LinearSystem()
    try:
        s.add_equation({"u": 1}, 0)
    except KeyError:
        pass
    else:
        raise AssertionError("expected KeyError")


def test_symbolic_right_hand_sides():
    F = RationalFunctionField.get(QQ, ("A", "B"))
    A, B = F.gens()
    s = system([([1, 1], A), ([1, -1], B)], 2)
    got = solve(s)
    assert got.assignment[0] == (A + B) / 2
    s2 = system([([1, 1], A), ([2, 2], B)], 2)
    got2 = solve(s2)
    assert isinstance(got2, Infeasible)
    assert s2.check_certificate(got2.certificate)


def test_matches_sympy_rank():
    import pytest
    sympy = pytest.importorskip("sympy")
    rows = [([1, 2, 3], 1), ([2, 4, 6], 2), ([1, 0, 1], 5)]
    M = sympy.Matrix([r for r, _ in rows])
    aug = M.row_join(sympy.Matrix([b for _, b in rows]))
    assert isinstance(solve(system(rows, 3)), Feasible) == (M.rank() == aug.rank())


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_verdicts_are_certified(n, m, data):
    F = data.draw(st.sampled_from([QQ, GF(3)]))
    rows = [([F(data.draw(st.integers(-2, 2))) for _ in range(n)], F(data.draw(st.integers(-2, 2))))
            for _ in range(m)]
    s = system(rows, n)
    got = solve(s)
    if isinstance(got, Feasible):
        assert s.satisfied_by(got.assignment)
    else:
        assert s.check_certificate(got.certificate)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=4),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_consistent_by_construction(rows, x):
    # rhs built from a known solution must be feasible
    s = system([([Fraction(c) for c in r], sum(c * v for c, v in zip(r, x))) for r in rows], 3)
    assert isinstance(solve(s), Feasible)
