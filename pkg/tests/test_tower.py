from fractions import Fraction
import json
import threading

import pytest
from hypothesis import given, strategies as st

from nablakit.nabla import nabla_1d
from nablakit.scalars import GF
from nablakit.tower import StageError, Tower


def test_register_is_idempotent_and_staged():
    t = Tower()
    a = t.register(3)
    assert t.register(3) is a
    assert t.stage(3) == 1
    assert t.stage(a) == 2
    b = t.register(a)
    assert t.stage(b) == 3
    assert t.symbol(3) == "X_3"
    assert t.symbol(-2) == "X_m2"
    assert t.symbol(Fraction(1, 2)).startswith("X__")


def test_unregistered_indeterminate_has_no_stage():
    from nablakit.ratfunc import RationalFunctionField
    from nablakit.scalars import QQ
    Z = RationalFunctionField.get(QQ, ("Zed",)).gen("Zed")
    with pytest.raises(StageError):
        Tower().stage(Z)


def test_certificate_frozen():
    t = Tower()
    w = t.nonpoly_certificate([0, 1, 2, 3], 1)
    assert w.nodes == (0, 1, 2)
    assert str(w.value) == "-X_0 + 2*X_1 - X_2"
    assert w.stage == 1


def test_certificate_validation():
    t = Tower()
    with pytest.raises(ValueError):
        t.nonpoly_certificate([0, 1], 1)
    with pytest.raises(ValueError):
        t.nonpoly_certificate([0, 0, 1], 0)
    x0 = t.register(0)
    with pytest.raises(StageError):
        t.nonpoly_certificate([0, x0, 1], 1)


def test_higher_stage_certificate():
    t = Tower()
    S = [t.register(s) for s in range(4)]
    w = t.nonpoly_certificate(S, 2)
    assert w.stage == 2 and w.value


def test_substituting_polynomial_values_kills_witness():
    t = Tower()
    w = t.nonpoly_certificate([0, 1, 2, 3, 4], 2)
    subs = {t.symbol(s): s ** 2 - 3 * s + 1 for s in range(5)}
    assert w.value.subs(subs) == 0


def test_dump_restore_round_trip():
    t = Tower()
    for s in [0, 1, Fraction(1, 2), -4]:
        t.register(s)
    t.register(t.register(0) + 1)
    data = json.loads(json.dumps(t.dump()))
    u = Tower.restore(data)
    assert u.dump() == t.dump()


def test_finite_field_base():
    t = Tower(GF(7))
    w = t.nonpoly_certificate([GF(7)(v) for v in range(3)], 1)
    assert w.value


def test_concurrent_registration():
    t = Tower()
    out = []

    def work():
        out.append([t.symbol(s) for s in range(30)])
    threads = [threading.Thread(target=work) for _ in range(4)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert all(o == out[0] for o in out)
    assert len(t) == 30


@given(st.lists(st.integers(-20, 20), min_size=2, max_size=7, unique=True))
def test_generic_function_never_polynomial(S):
    t = Tower()
    for d in range(len(S) - 1):
        assert t.nonpoly_certificate(S, d).value


@given(st.lists(st.integers(-9, 9), min_size=3, max_size=6, unique=True),
       st.lists(st.integers(-3, 3), min_size=1, max_size=3))
def test_witness_vanishes_on_low_degree_specialization(S, coeffs):
    t = Tower()
    d = len(S) - 2
    if len(coeffs) - 1 > d:
        return
    w = t.nonpoly_certificate(S, d)
    subs = {t.symbol(s): sum(c * s ** k for k, c in enumerate(coeffs)) for s in S}
    assert w.value.subs(subs) == 0
    assert nabla_1d(lambda s: subs[t.symbol(s)], w.nodes) == 0
