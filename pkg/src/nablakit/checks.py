"""Seeded property checks over every module, used by ``verify-all``.

Each check returns (passed, detail).  Sizes are kept small so the whole
battery runs in a few seconds."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .homalg import (ZZ, ModuleMap, Split, UnivariatePolys, build_f_RS, check_smith,
                     has_left_inverse, indivisible_check, smith_normal_form, sym_truncation,
                     tensor_complexes, tensor_quotient_check, two_term)
from .linsolve import Feasible
from .nabla import (Grid, IsPolynomial, TabulatedFunction, nabla_apply, nabla_commute_check,
                    polynomiality_test)
from .obstruction import RetractionProblem, nabla_witness, solve_problem, sweep, tower_h
from .polyring import MultiPoly, lagrange_identity, vandermonde_weight
from .ramsey import Exhausted, find_mono_subset, pentagon, random_coloring, verify_mono_subset
from .scalars import GF, QQ
from .tower import Tower


def _random_poly(rng, field, degree, monic=False):
    coeffs = {(k,): field(rng.randint(-9, 9)) for k in range(degree)}
    coeffs[(degree,)] = field(1) if monic else field(rng.randint(1, 9))
    return MultiPoly(coeffs, ("x",), field)


def check_annihilation(rng, trials=40):
    for _ in range(trials):
        F = rng.choice([QQ, GF(101)])
        d = rng.randint(0, 4)
        z = [F(v) for v in rng.sample(range(-50, 50), d + 2)]
        if lagrange_identity(_random_poly(rng, F, d), z):
            return False, f"degree {d} not annihilated on {z}"
        z = z[:d + 1] if d else z[:1]
        f = _random_poly(rng, F, len(z) - 1, monic=True)
        m = len(z)
        if len(z) > 1 and lagrange_identity(f, z) != (-1) ** m * vandermonde_weight(z):
            return False, "monic top-degree value differs from the Vandermonde weight"
    return True, f"{trials} random polynomials"


def check_commutation(rng):
    F = GF(5)
    nodes = [F(v) for v in range(4)]
    g = Grid([("a", nodes), ("b", nodes), ("c", nodes)])
    f = TabulatedFunction.from_function(g, lambda *_: F(rng.randrange(5)))
    for a, b in itertools.permutations("abc", 2):
        za = rng.sample(nodes, 3)
        zb = rng.sample(nodes, 3)
        if not nabla_commute_check(f, (a, za), (b, zb)):
            return False, f"axes {a}, {b} do not commute"
    return True, "all axis pairs of a 4x4x4 grid"


def check_polynomiality(rng, trials=60):
    F = GF(7)
    nodes = [F(v) for v in range(5)]
    for _ in range(trials):
        vals = [F(rng.randrange(7)) for _ in nodes]
        f = TabulatedFunction.line(nodes, vals)
        for d in range(4):
            got = isinstance(polynomiality_test(f, d), IsPolynomial)
            coeffs = None
            # brute force: some polynomial of degree <= d matches every node
            for cs in itertools.product(range(7), repeat=d + 1):
                if all(sum(F(c) * s ** k for k, c in enumerate(cs)) == v
                       for s, v in zip(nodes, vals)):
                    coeffs = cs
                    break
            if got != (coeffs is not None):
                return False, f"verdict mismatch on {vals} at d={d}"
    return True, f"{trials} random tables over GF(7)"


def check_tower(rng):
    t = Tower()
    for size in range(3, 7):
        S = rng.sample(range(-20, 20), size)
        for d in range(size - 1):
            w = t.nonpoly_certificate(S, d)
            if not w.value:
                return False, f"zero witness on {S}, d={d}"
    return True, "sample sets of size 3..6"


def check_ramsey(rng):
    if not isinstance(find_mono_subset(pentagon(), 3), Exhausted):
        return False, "pentagon has a monochromatic triangle"
    for seed in range(30):
        c = random_coloring(6, seed=rng.randrange(10 ** 6))
        got = find_mono_subset(c, 3)
        if isinstance(got, Exhausted) or not verify_mono_subset(c, got.subset, got.color):
            return False, "K6 colouring without verified triangle"
    return True, "pentagon and 30 random K6 colourings"


def check_snf(rng, trials=60):
    R = UnivariatePolys()
    for _ in range(trials):
        m = ModuleMap(ZZ, [[rng.randint(-9, 9) for _ in range(3)] for _ in range(3)])
        problems = check_smith(m, smith_normal_form(m))
        if problems:
            return False, f"{m}: {problems}"
    for _ in range(trials // 3):
        m = ModuleMap(R, [[_random_poly(rng, QQ, rng.randint(0, 2)) for _ in range(2)]
                          for _ in range(2)])
        problems = check_smith(m, smith_normal_form(m))
        if problems:
            return False, f"{m}: {problems}"
    return True, f"{trials} integer and {trials // 3} QQ[x] matrices"


def check_split(rng):
    R = UnivariatePolys()
    x = R.x
    for k in range(1, 5):
        S = rng.sample(range(-10, 10), k)
        f = build_f_RS(R, [x - s for s in S])
        got = has_left_inverse(f)
        if not isinstance(got, Split) or got.retraction @ f != ModuleMap.identity(R, k):
            return False, f"f_RS on {S} did not split"
    return True, "f_RS splits for |S| <= 4"


def check_indivisible(rng):
    R = UnivariatePolys()
    x = R.x
    S = rng.sample(range(-10, 10), 4)
    v = indivisible_check(R, {s: x - s for s in S})
    if not v.passed:
        return False, v.reason
    if not tensor_quotient_check([x - s for s in S[:3]]):
        return False, "tensor quotient dimension"
    return True, "x - s family"


def check_complexes(rng, trials=20):
    for _ in range(trials):
        a = ModuleMap(ZZ, [[rng.randint(-4, 4) for _ in range(2)] for _ in range(2)])
        b = ModuleMap(ZZ, [[rng.randint(-4, 4) for _ in range(2)]])
        tensor_complexes(two_term(a), two_term(b))  # validates d o d = 0
    two = two_term(ModuleMap(ZZ, [[2]]))
    t = tensor_complexes(two, two)
    if [t.homology(i).torsion for i in (0, 1)] != [(2,), (2,)]:
        return False, "Tor(Z/2, Z/2) mismatch"
    return True, f"{trials} random tensor pairs"


def check_sym(rng):
    R = UnivariatePolys()
    for st in sym_truncation(ModuleMap(R, [[1], [0]]), 4):
        if not st.exact:
            return False, f"stage {st.n} not exact: {st.checks}"
    return True, "stages 1..4"


def check_obstruction(rng):
    nodes = [Fraction(v) for v in rng.sample(range(-10, 10), 6)]
    for D in range(3):
        for size in range(1, 7):
            S = nodes[:size]
            H = {s: Fraction(rng.randint(-5, 5)) for s in S}
            p = RetractionProblem(1, [S], H, D)
            feas = isinstance(solve_problem(p), Feasible)
            expect = size < D + 2 or isinstance(
                polynomiality_test(TabulatedFunction.line(S, [H[s] for s in S]), D), IsPolynomial)
            if feas != expect:
                return False, f"n=1 mismatch at |S|={size}, D={D}"
    p = RetractionProblem(2, [[0, 1, 2]] * 2, tower_h([0, 1, 2]), 1)
    if not nabla_witness(p) or isinstance(solve_problem(p), Feasible):
        return False, "n=2 tower instance not certified"
    rep = sweep(2, [0, 1], [2, 3], "tower", with_box=False)
    if not rep["all_consistent"]:
        return False, "witness/solver disagreement in sweep"
    return True, "n=1 equivalence and n=2 tower instance"


CHECKS = {
    "nabla.annihilation": check_annihilation,
    "nabla.commutation": check_commutation,
    "nabla.polynomiality": check_polynomiality,
    "tower.certificates": check_tower,
    "ramsey.search": check_ramsey,
    "homalg.snf": check_snf,
    "homalg.split": check_split,
    "homalg.indivisible": check_indivisible,
    "homalg.complexes": check_complexes,
    "homalg.sym": check_sym,
    "obstruction.consistency": check_obstruction,
}


def verify_all(seed: int = 0, only=None) -> list[dict]:
    out = []
    for name, fn in CHECKS.items():
        if only and name not in only:
            continue
        rng = random.Random(f"{seed}:{name}")
        try:
            ok, detail = fn(rng)
        except Exception as exc:  # report, do not abort the battery
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append({"check": name, "passed": bool(ok), "detail": detail})
    return out
