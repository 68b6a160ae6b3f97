"""Split-injectivity of module maps, the extension f_{R,S}, indivisibility
checks, and truncations of the Sym-colimit of an extension."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb, prod
from typing import Mapping, Sequence

from ..linsolve import Feasible, LinearSystem, solve
from ..polyring import MultiPoly, grlex, monomials_up_to
from ..scalars import QQ, Field
from .matrices import (FPHom, FPModule, ModuleMap, is_exact_at, smith_normal_form)
from .rings import MultivariatePolys, ProductRing, RingSpec, UnivariatePolys


def build_f_RS(ring: RingSpec, elements: Sequence) -> ModuleMap:
    """sum_{s in S} R -> R + sum_{s in S} R, 1_s |-> 1 + x_s 1_s."""
    xs = [ring(x) for x in elements]
    n = len(xs)
    rows = [[ring.one] * n]
    for i in range(n):
        rows.append([xs[i] if j == i else ring.zero for j in range(n)])
    return ModuleMap(ring, rows, n)


@dataclass(frozen=True)
class Split:
    retraction: ModuleMap


@dataclass(frozen=True)
class NoSplit:
    reason: str
    factor: object = None


def has_left_inverse(m: ModuleMap, degree_bound: int | None = None):
    """Split(r) with r o m = 1, or NoSplit.

    Over a Euclidean ring the verdict is absolute.  Over a multivariate ring
    only retractions with entries of total degree <= degree_bound are
    searched, so NoSplit means "none of that degree"."""
    R = m.ring
    if R.euclidean:
        return _split_euclidean(m)
    if degree_bound is None:
        raise ValueError("multivariate split test needs a degree bound")
    return _split_bounded(m, degree_bound)


def _split_euclidean(m: ModuleMap):
    R = m.ring
    if m.cols == 0:
        return Split(ModuleMap.zeros(R, 0, m.rows))
    sf = smith_normal_form(m)
    diag = sf.diagonal
    if sf.rank < m.cols:
        return NoSplit("map is not injective")
    bad = next((d for d in diag if not R.is_unit(d)), None)
    if bad is not None:
        return NoSplit(f"non-unit invariant factor {R.format(bad)}", bad)
    pinv = [[R.zero] * m.rows for _ in range(m.cols)]
    for i, d in enumerate(diag):
        pinv[i][i] = R.unit_inverse(d)
    r = sf.V @ ModuleMap(R, pinv, m.rows) @ sf.U
    if r @ m != ModuleMap.identity(R, m.cols):
        raise AssertionError("reconstructed retraction fails r o m = 1")
    return Split(r)


def _split_bounded(m: ModuleMap, bound: int):
    R = m.ring
    if not isinstance(R, MultivariatePolys):
        raise ValueError(f"bounded split search needs a polynomial ring, not {R}")
    F = R.field
    nv = len(R.variables)
    monos = monomials_up_to(nv, bound)
    sysm = LinearSystem()
    for i in range(m.cols):
        for k in range(m.rows):
            for e in monos:
                sysm.unknown((i, k, e))
    top = max((a.total_degree() for row in m.entries for a in row if a), default=0)
    targets = monomials_up_to(nv, bound + top)
    for i in range(m.cols):
        for j in range(m.cols):
            # (r m)[i][j] = sum_k r[i][k] m[k][j]
            eqs: dict = {t: {} for t in targets}
            for k in range(m.rows):
                a = m.entries[k][j]
                for ea, c in a.terms.items():
                    for e in monos:
                        t = tuple(x + y for x, y in zip(ea, e))
                        row = eqs[t]
                        row[(i, k, e)] = row.get((i, k, e), F.zero) + c
            for t in targets:
                rhs = F.one if (i == j and not any(t)) else F.zero
                sysm.add_equation(eqs[t], rhs, (i, j, t))
    verdict = solve(sysm)
    if not isinstance(verdict, Feasible):
        return NoSplit(f"no retraction with entries of total degree <= {bound}")
    a = verdict.assignment
    entries = [[MultiPoly({e: a[(i, k, e)] for e in monos}, R.variables, F)
                for k in range(m.rows)] for i in range(m.cols)]
    r = ModuleMap(R, entries, m.rows)
    if r @ m != ModuleMap.identity(R, m.cols):
        raise AssertionError("solver retraction fails r o m = 1")
    return Split(r)


def check_retraction(m: ModuleMap, r: ModuleMap) -> bool:
    return r.shape == (m.cols, m.rows) and r @ m == ModuleMap.identity(m.ring, m.cols)


# ---------------------------------------------------------------------------
# indivisibility


@dataclass
class Verdict:
    passed: bool
    checks: dict = field(default_factory=dict)
    certificates: list = field(default_factory=list)
    reason: str = ""


def _bezout_univariate(R: UnivariatePolys, a, b):
    g, s, t = R.xgcd(a, b)
    if not g.is_constant():
        return None, g
    c = R.unit_inverse(g)
    return (s * c, t * c), g


def _bezout_product(R: ProductRing, a, b):
    F = R.F
    u, v = [], []
    for x, y in zip(a, b):
        if x:
            u.append(F(1) / x)
            v.append(F(0))
        elif y:
            u.append(F(0))
            v.append(F(1) / y)
        else:
            return None
    return tuple(u), tuple(v)


def indivisible_check(ring: RingSpec, elements: Mapping | Sequence) -> Verdict:
    """Pairwise unit ideals with Bezout certificates, nonzero free quotients
    R/x_s, and Ann(x_s) meet Ann(x_s') = 0."""
    if not isinstance(elements, Mapping):
        elements = dict(enumerate(elements))
    labels = list(elements)
    if isinstance(ring, ProductRing):
        xs = {s: ring(v) for s, v in elements.items()}
        if any(ring.is_zero(v) for v in xs.values()):
            raise ValueError("zero element in the sequence")
    elif isinstance(ring, UnivariatePolys):
        xs = {s: ring(v) for s, v in elements.items()}
        if any(not v for v in xs.values()):
            raise ValueError("zero element in the sequence")
    else:
        raise ValueError(f"indivisibility check supports k[x] and GF(p)^n, not {ring}")

    out = Verdict(True)
    # quotients: nonzero and free over the ground field
    if isinstance(ring, ProductRing):
        bad = [s for s in labels if ring.is_unit(xs[s])]
    else:
        bad = [s for s in labels if xs[s].total_degree() < 1]
    out.checks["quotients_nonzero_free"] = not bad
    if bad:
        out.passed = False
        out.reason = f"R/x_s is zero for s in {bad}"

    unit_ok = ann_ok = True
    for s, t in itertools.combinations(labels, 2):
        a, b = xs[s], xs[t]
        if isinstance(ring, ProductRing):
            cert = _bezout_product(ring, a, b)
            # Ann(a) meet Ann(b) is supported where both vanish
            both_zero = any(not x and not y for x, y in zip(a, b))
            ann_ok &= not both_zero
            if cert is None:
                unit_ok = False
                out.reason = out.reason or f"({s}, {t}) vanish together at some coordinate"
                continue
            lhs = ring.add(ring.mul(cert[0], a), ring.mul(cert[1], b))
            assert lhs == ring.one
            out.certificates.append({"pair": [s, t], "coefficients": [ring.format(cert[0]),
                                                                      ring.format(cert[1])]})
        else:
            cert, g = _bezout_univariate(ring, a, b)
            if cert is None:
                unit_ok = False
                out.reason = out.reason or f"gcd of x_{s}, x_{t} is {g}"
                continue
            assert cert[0] * a + cert[1] * b == ring.one
            out.certificates.append({"pair": [s, t], "coefficients": [str(cert[0]),
                                                                      str(cert[1])]})
    out.checks["pairwise_unit_ideal"] = unit_ok
    out.checks["annihilators_meet_trivially"] = ann_ok
    out.passed = out.passed and unit_ok and ann_ok
    return out


def check_bezout_certificate(ring: RingSpec, a, b, cert) -> bool:
    u, v = cert
    if isinstance(ring, ProductRing):
        return ring.add(ring.mul(u, a), ring.mul(v, b)) == ring.one
    return ring(u) * ring(a) + ring(v) * ring(b) == ring.one


# ---------------------------------------------------------------------------
# k[x_1..x_n] / (x_{s_1}(x_1), ..., x_{s_n}(x_n))


def _reduce(f: MultiPoly, gens: Sequence[MultiPoly]) -> MultiPoly:
    """Multivariate division remainder (grlex)."""
    F = f.field
    vs = f.variables
    leads = [(g.leading_term(), g) for g in gens]
    rem: dict = {}
    p = dict(f.terms)
    while p:
        m = max(p, key=grlex)
        c = p[m]
        for (lm, lc), g in leads:
            if all(x >= y for x, y in zip(m, lm)):
                q = c / lc
                shift = tuple(x - y for x, y in zip(m, lm))
                for gm, gc in g.terms.items():
                    t = tuple(x + y for x, y in zip(gm, shift))
                    v = p.get(t, F.zero) - q * gc
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
                break
        else:
            rem[m] = c
            del p[m]
    return MultiPoly(rem, vs, F)


def tensor_quotient_dimension(elements: Sequence[MultiPoly], field: Field = QQ) -> int:
    """k-dimension of the quotient, after checking the generators form a
    Groebner basis (every S-polynomial reduces to zero)."""
    n = len(elements)
    names = tuple(f"x{i + 1}" for i in range(n))
    gens = []
    for i, e in enumerate(elements):
        (v,) = e.used_variables() or (None,)
        if v is None or e.total_degree() < 1:
            raise ValueError("elements must have positive degree")
        gens.append(e.rename({v: names[i]}).with_variables(names, field))
    for a, b in itertools.combinations(gens, 2):
        (ma, ca), (mb, cb) = a.leading_term(), b.leading_term()
        lcm = tuple(max(x, y) for x, y in zip(ma, mb))
        ua = MultiPoly({tuple(x - y for x, y in zip(lcm, ma)): 1 / ca}, names, field)
        ub = MultiPoly({tuple(x - y for x, y in zip(lcm, mb)): 1 / cb}, names, field)
        if _reduce(ua * a - ub * b, gens):
            raise AssertionError("generators are not a Groebner basis")
    degs = [g.leading_term()[0] for g in gens]
    box = [max(m[i] for m in degs) for i in range(n)]
    return sum(1 for m in itertools.product(*(range(b) for b in box))
               if not any(all(x >= y for x, y in zip(m, lm)) for lm in degs))


def tensor_quotient_check(elements: Sequence[MultiPoly], field: Field = QQ) -> bool:
    """Dimension of the quotient equals prod deg x_{s_i}."""
    return tensor_quotient_dimension(elements, field) == prod(e.total_degree() for e in elements)


# ---------------------------------------------------------------------------
# Sym truncation


def sym_basis(rank: int, n: int) -> list[tuple]:
    """Exponent vectors of degree-n monomials in rank generators."""
    return [m for m in itertools.product(range(n + 1), repeat=rank) if sum(m) == n][::-1]


def _mult_matrix(R: RingSpec, v: Sequence, rank: int, n: int) -> ModuleMap:
    """Multiplication by v = sum v_i e_i : Sym^n N -> Sym^{n+1} N."""
    src = sym_basis(rank, n)
    dst = sym_basis(rank, n + 1)
    pos = {m: k for k, m in enumerate(dst)}
    rows = [[R.zero] * len(src) for _ in dst]
    for j, m in enumerate(src):
        for i, c in enumerate(v):
            if c:
                t = list(m)
                t[i] += 1
                rows[pos[tuple(t)]][j] = rows[pos[tuple(t)]][j] + c
    return ModuleMap(R, rows, len(src))


@dataclass
class SymStage:
    n: int
    sym_rank: int
    transition: ModuleMap  # Sym^n N -> Sym^{n+1} N
    cokernel: FPModule  # M'_n = Sym^n N / A v^n
    next_cokernel: FPModule
    sym_quotient: FPModule  # Sym^{n+1} M
    exact: bool
    checks: dict


def sym_truncation(eta: ModuleMap, n_max: int) -> list[SymStage]:
    """Stages n = 1..n_max of 0 -> M'_n -> M'_{n+1} -> Sym^{n+1} M -> 0 for
    an injective eta : A -> N = A^r with M = coker eta."""
    R = eta.ring
    if not R.euclidean:
        raise ValueError("Sym truncation needs a Euclidean ring")
    if eta.cols != 1:
        raise ValueError("eta must be a single column A -> N")
    v = eta.column_vector(0)
    if not any(v):
        raise ValueError("eta is not injective")
    r = eta.rows
    powers = [None, ModuleMap.column(R, v)]  # v^n in the Sym^n basis
    for n in range(1, n_max + 1):
        powers.append(_mult_matrix(R, v, r, n) @ powers[n])
    stages = []
    for n in range(1, n_max + 1):
        T = _mult_matrix(R, v, r, n)
        Mn = FPModule(R, comb(n + r - 1, r - 1), powers[n])
        Mn1 = FPModule(R, comb(n + r, r - 1), powers[n + 1])
        SymM = FPModule(R, Mn1.gens, T)
        f = FPHom(Mn, Mn1, T)
        g = FPHom(Mn1, SymM, ModuleMap.identity(R, Mn1.gens))
        checks = {
            "well_defined": f.is_well_defined() and g.is_well_defined(),
            "injective": f.is_injective(),
            "surjective": g.is_surjective(),
            "exact_middle": is_exact_at(f, g),
        }
        stages.append(SymStage(n, Mn.gens, T, Mn, Mn1, SymM, all(checks.values()), checks))
    return stages


def coker(eta: ModuleMap) -> FPModule:
    return FPModule(eta.ring, eta.rows, eta)


__all__ = [
    "build_f_RS", "Split", "NoSplit", "has_left_inverse", "check_retraction", "Verdict",
    "indivisible_check", "check_bezout_certificate", "tensor_quotient_dimension",
    "tensor_quotient_check", "sym_basis", "SymStage", "sym_truncation", "coker",
]
