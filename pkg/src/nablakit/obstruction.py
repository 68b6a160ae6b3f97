"""Finite retraction problems.

For sample sets S_1, ..., S_n, a function H on their union and a degree
bound D, look for polynomials f_i(s') in x_1..x_n (one for every
s' in prod_{j != i} S_j) and g_i(t) (one for every grid point t) of total
degree <= D with

    sum_i f_i(t without t_i) + sum_i (x_i - t_i) g_i(t) = prod_i H(t_i)

as polynomials, at every grid point t.  ``compile`` turns this into an
exact linear system; ``nabla_witness`` is the independent certificate
prod_i nabla^{z_i} H, which is nonzero only when the system is infeasible.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .linsolve import Feasible, Infeasible, LinearSystem, solve
from .nabla import Grid, TabulatedFunction, nabla_1d, nabla_chain
from .polyring import MultiPoly, monomials_up_to
from .ramsey import Coloring, Exhausted, find_mono_box, verify_mono_box
from .scalars import Field, common_field_of, format_scalar
from .tower import Tower


class InstanceTooLarge(ValueError):
    """The instance exceeds the configured desk-scale limits."""


@dataclass(frozen=True)
class SizeLimits:
    max_n: int = 3
    max_grid: int = 8
    max_unknowns: int = 5000

    def check(self, problem: "RetractionProblem"):
        if problem.n > self.max_n:
            raise InstanceTooLarge(f"n = {problem.n} exceeds limit {self.max_n}")
        big = max(len(S) for S in problem.sample_sets)
        if big > self.max_grid:
            raise InstanceTooLarge(f"sample set of size {big} exceeds limit {self.max_grid}")
        u = problem.unknown_count()
        if u > self.max_unknowns:
            raise InstanceTooLarge(f"{u} unknowns exceed limit {self.max_unknowns}")


@dataclass
class RetractionProblem:
    n: int
    sample_sets: tuple
    H: dict
    D: int

    def __post_init__(self):
        self.sample_sets = tuple(tuple(S) for S in self.sample_sets)
        if self.n < 1:
            raise ValueError("need at least one tensor factor")
        if len(self.sample_sets) != self.n:
            raise ValueError(f"need {self.n} sample sets, got {len(self.sample_sets)}")
        if self.D < 0:
            raise ValueError("degree bound must be nonnegative")
        for S in self.sample_sets:
            if not S:
                raise ValueError("sample sets must be nonempty")
            if len(set(S)) != len(S):
                raise ValueError(f"sample set {S} has repeated entries")
        if callable(self.H) and not isinstance(self.H, Mapping):
            self.H = {s: self.H(s) for s in self.nodes()}
        else:
            self.H = dict(self.H)
        missing = [s for s in self.nodes() if s not in self.H]
        if missing:
            raise ValueError(f"H has no value at {missing}")

    def nodes(self) -> list:
        seen = []
        for S in self.sample_sets:
            for s in S:
                if s not in seen:
                    seen.append(s)
        return seen

    @property
    def variables(self) -> tuple:
        return tuple(f"x{i + 1}" for i in range(self.n))

    def grid_points(self):
        return itertools.product(*self.sample_sets)

    def node_field(self) -> Field:
        return common_field_of(self.nodes())

    def unknown_count(self) -> int:
        m = len(monomials_up_to(self.n, self.D))
        faces = sum(_prod(len(S) for j, S in enumerate(self.sample_sets) if j != i)
                    for i in range(self.n))
        points = _prod(len(S) for S in self.sample_sets)
        return m * (faces + self.n * points)

    def h_tilde(self, t):
        v = None
        for s in t:
            v = self.H[s] if v is None else v * self.H[s]
        return v

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "D": self.D,
            "sample_sets": [[format_scalar(s) for s in S] for S in self.sample_sets],
            "H": [[format_scalar(s), format_scalar(self.H[s])] for s in self.nodes()],
        }


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def _face(t: tuple, i: int) -> tuple:
    return t[:i] + t[i + 1:]


# ---------------------------------------------------------------------------
# compilation


def compile(p: RetractionProblem) -> LinearSystem:
    """Unknown labels: ("f", i, s', e) and ("g", i, t, e) with e an exponent
    tuple of total degree <= D.  Provenance of each equation: (t, monomial)."""
    F = p.node_field()
    one = F.one
    monos = monomials_up_to(p.n, p.D)
    system = LinearSystem()
    for i in range(p.n):
        others = [S for j, S in enumerate(p.sample_sets) if j != i]
        for s in itertools.product(*others):
            for e in monos:
                system.unknown(("f", i, s, e))
    points = list(p.grid_points())
    for t in points:
        for i in range(p.n):
            for e in monos:
                system.unknown(("g", i, t, e))
    targets = monomials_up_to(p.n, p.D + 1)
    units = [tuple(int(j == i) for j in range(p.n)) for i in range(p.n)]
    zero_exp = (0,) * p.n
    for t in points:
        rows: dict = {mu: {} for mu in targets}
        for i in range(p.n):
            s = _face(t, i)
            for e in monos:
                rows[e][("f", i, s, e)] = one
                g = ("g", i, t, e)
                up = tuple(a + b for a, b in zip(e, units[i]))
                rows[up][g] = rows[up].get(g, F.zero) + one
                if t[i]:
                    rows[e][g] = rows[e].get(g, F.zero) - F(t[i])
        for mu in targets:
            rhs = p.h_tilde(t) if mu == zero_exp else F.zero
            system.add_equation(rows[mu], rhs, (t, mu))
    return system


def solve_problem(p: RetractionProblem):
    return solve(compile(p))


def polynomials(p: RetractionProblem, assignment: Mapping) -> dict:
    """The unknown polynomials: keys ("f", i, s') and ("g", i, t)."""
    F = p.node_field()
    coeffs: dict = {}
    for label, v in assignment.items():
        kind, i, key, e = label
        coeffs.setdefault((kind, i, key), {})[e] = v
    out = {}
    for k, terms in coeffs.items():
        fld = common_field_of(list(terms.values()) + [F.zero])
        out[k] = MultiPoly(terms, p.variables, fld)
    return out


def _f_at(p: RetractionProblem, polys: dict, i: int, t: tuple):
    poly = polys.get(("f", i, _face(t, i)))
    if poly is None:
        return 0
    return poly.evaluate(t)


def evaluation_identity(p: RetractionProblem, assignment: Mapping) -> TabulatedFunction:
    """t |-> sum_i f_i(t without t_i)(t) - prod_i H(t_i).  The g terms drop
    out under evaluation at t."""
    polys = polynomials(p, assignment)
    grid = Grid((f"s{i + 1}", S) for i, S in enumerate(p.sample_sets))

    def residual(*t):
        total = -p.h_tilde(t)
        for i in range(p.n):
            total = total + _f_at(p, polys, i, t)
        return total
    return TabulatedFunction.from_function(grid, residual)


def check_polynomial_identity(p: RetractionProblem, assignment: Mapping) -> bool:
    """Substitute the assignment into the polynomial identity at every grid
    point using polynomial arithmetic, independently of the compiled rows."""
    polys = polynomials(p, assignment)
    F = p.node_field()
    xs = MultiPoly.gens(p.variables, F)
    for t in p.grid_points():
        lhs = MultiPoly.zero(F, p.variables)
        for i in range(p.n):
            f = polys.get(("f", i, _face(t, i)))
            if f is not None:
                lhs = lhs + f
            g = polys.get(("g", i, t))
            if g is not None:
                lhs = lhs + (xs[i] - t[i]) * g
            for e in monomials_up_to(p.n, p.D):
                if ("f", i, _face(t, i), e) not in assignment or ("g", i, t, e) not in assignment:
                    return False
        rhs = MultiPoly.const(p.h_tilde(t), None, p.variables)
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# nabla witness


def default_witness_nodes(p: RetractionProblem) -> list:
    return [S[:p.D + 2] for S in p.sample_sets]


def nabla_witness(p: RetractionProblem, nodes: Sequence[Sequence] | None = None):
    """prod_i nabla^{z_i} H on the one-variable tables H|_{S_i}, |z_i| = D+2."""
    nodes = default_witness_nodes(p) if nodes is None else [tuple(z) for z in nodes]
    if len(nodes) != p.n:
        raise ValueError(f"need {p.n} node lists")
    for S, z in zip(p.sample_sets, nodes):
        if len(z) != p.D + 2:
            raise ValueError(f"witness needs D + 2 = {p.D + 2} nodes per axis, got {len(z)}")
        if not set(z) <= set(S):
            raise ValueError(f"nodes {z} are not in the sample set")
    value = None
    for z in nodes:
        v = nabla_1d(p.H, z)
        value = v if value is None else value * v
    return value


def nabla_chain_witness(p: RetractionProblem, nodes: Sequence[Sequence] | None = None):
    """The same quantity computed as nabla_n o ... o nabla_1 of the full
    table t |-> prod_i H(t_i)."""
    nodes = default_witness_nodes(p) if nodes is None else [tuple(z) for z in nodes]
    grid = Grid((f"s{i + 1}", z) for i, z in enumerate(nodes))
    table = TabulatedFunction.from_function(grid, lambda *t: p.h_tilde(t))
    return nabla_chain(table, [(f"s{i + 1}", z) for i, z in enumerate(nodes)]).scalar()


# ---------------------------------------------------------------------------
# H sources


def tower_h(nodes: Sequence, tower: Tower | None = None) -> dict:
    """The generic function s |-> X_s."""
    tower = Tower() if tower is None else tower
    return {s: tower.register(s) for s in nodes}


def random_h(nodes: Sequence, seed: int = 0, low: int = -20, high: int = 20) -> dict:
    """Seeded random integers; results are generic only modulo the seed."""
    rng = random.Random(seed)
    return {s: Fraction(rng.randint(low, high)) for s in nodes}


def polynomial_h(nodes: Sequence, expr: str | Callable, var: str = "s") -> dict:
    if callable(expr):
        return {s: expr(s) for s in nodes}
    poly = MultiPoly.parse(expr, (var,))
    return {s: poly.evaluate((s,)) for s in nodes}


def make_h(source: str, nodes: Sequence, seed: int = 0, table: Mapping | None = None) -> dict:
    """``tower``, ``random``, ``poly:<expr in s>`` or ``table``."""
    if source == "tower":
        return tower_h(nodes)
    if source == "random":
        return random_h(nodes, seed)
    if source.startswith("poly:"):
        return polynomial_h(nodes, source[5:])
    if source == "table":
        if table is None:
            raise ValueError("H source 'table' needs a table")
        return {s: table[s] for s in nodes}
    raise ValueError(f"unknown H source {source!r}")


# ---------------------------------------------------------------------------
# degree colouring and reports


def degree_coloring(p: RetractionProblem, assignment: Mapping) -> Coloring:
    """Box colouring t |-> max_i deg f_i(t without t_i), made symmetric by
    taking the max over coordinate permutations.  Needs equal sample sets."""
    S = p.sample_sets[0]
    if any(T != S for T in p.sample_sets):
        raise ValueError("degree colouring needs the same sample set on every axis")
    polys = polynomials(p, assignment)

    def deg(t):
        best = -1
        for i in range(p.n):
            f = polys.get(("f", i, _face(t, i)))
            if f is not None and f:
                best = max(best, f.total_degree())
        return best

    raw = {t: deg(t) for t in p.grid_points()}
    return Coloring.from_function(
        S, p.n, lambda *t: max(raw[perm] for perm in itertools.permutations(t)) + 1, box=True)


def largest_mono_box(c: Coloring):
    """The largest k with a monochromatic box of side k (searched downward)."""
    for k in range(len(c.ground), 0, -1):
        got = find_mono_box(c, [k] * c.arity)
        if not isinstance(got, Exhausted):
            assert verify_mono_box(c, got.sides, got.color)
            return k, got
    raise AssertionError("a single point is always a monochromatic box")


def verdict_to_json(p: RetractionProblem, system: LinearSystem, verdict) -> dict:
    if isinstance(verdict, Feasible):
        return {
            "verdict": "Feasible",
            "assignment": {_label_str(k): format_scalar(v)
                           for k, v in verdict.assignment.items() if v},
        }
    return {
        "verdict": "Infeasible",
        "certificate": [
            {"equation": e, "point": [format_scalar(s) for s in system.provenance[e][0]],
             "monomial": list(system.provenance[e][1]), "multiplier": format_scalar(y)}
            for e, y in verdict.certificate.items()
        ],
    }


def _label_str(label) -> str:
    kind, i, key, e = label
    pts = ",".join(format_scalar(s) for s in key)
    return f"{kind}{i + 1}[{pts}]:" + ".".join(str(a) for a in e)


@dataclass
class InstanceResult:
    size: int
    D: int
    solver: str | None
    witness: str | None
    witness_value: object = None
    consistent: bool = True
    box: dict | None = None
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"grid_size": self.size, "D": self.D, "solver": self.solver,
               "witness": self.witness, "consistent": self.consistent}
        if self.witness_value is not None:
            out["witness_value"] = format_scalar(self.witness_value)
        if self.box is not None:
            out["mono_box"] = self.box
        out.update(self.detail)
        return out


def run_instance(p: RetractionProblem, limits: SizeLimits | None = None,
                 with_box: bool = True) -> InstanceResult:
    """Solver and witness verdicts for one problem, cross-checked."""
    (limits or SizeLimits()).check(p)
    system = compile(p)
    verdict = solve(system)
    solver = "Feasible" if isinstance(verdict, Feasible) else "Infeasible"
    if isinstance(verdict, Feasible):
        assert evaluation_identity(p, verdict.assignment).is_zero()
    else:
        assert system.check_certificate(verdict.certificate)
    witness = wvalue = None
    if all(len(S) >= p.D + 2 for S in p.sample_sets):
        wvalue = nabla_witness(p)
        witness = "nonzero" if wvalue else "zero"
    consistent = not (witness == "nonzero" and solver == "Feasible")
    box = None
    if with_box and isinstance(verdict, Feasible) and \
            all(S == p.sample_sets[0] for S in p.sample_sets):
        c = degree_coloring(p, verdict.assignment)
        k, mb = largest_mono_box(c)
        box = {"side": k, "sides": [[format_scalar(s) for s in side] for side in mb.sides],
               "color": mb.color - 1}
    return InstanceResult(len(p.sample_sets[0]), p.D, solver, witness, wvalue, consistent, box,
                          {"unknowns": system.shape[1], "equations": system.shape[0]})


def sweep(n: int, Ds: Sequence[int], sizes: Sequence[int], h_source: str = "tower",
          seed: int = 0, nodes: Sequence | None = None, limits: SizeLimits | None = None,
          with_box: bool = True) -> dict:
    """Square grids S_i = nodes[:size] on every axis, for every (size, D)."""
    limits = limits or SizeLimits()
    if n > limits.max_n:
        raise InstanceTooLarge(f"n = {n} exceeds limit {limits.max_n}")
    top = max(sizes)
    if top > limits.max_grid:
        raise InstanceTooLarge(f"grid size {top} exceeds limit {limits.max_grid}")
    nodes = list(range(top)) if nodes is None else list(nodes)
    if len(nodes) < top:
        raise ValueError(f"need at least {top} nodes")
    H = make_h(h_source, nodes, seed)
    rows = []
    start = time.perf_counter()
    for size in sorted(set(sizes)):
        for D in sorted(set(Ds)):
            p = RetractionProblem(n, [nodes[:size]] * n, H, D)
            rows.append(run_instance(p, limits, with_box).to_json())
    return {
        "n": n, "D": sorted(set(Ds)), "sizes": sorted(set(sizes)), "h_source": h_source,
        "seed": seed, "generic_modulo_seed": h_source == "random",
        "instances": rows,
        "all_consistent": all(r["consistent"] for r in rows),
        "elapsed": time.perf_counter() - start,
    }


__all__ = [
    "InstanceTooLarge", "SizeLimits", "RetractionProblem", "compile", "solve_problem",
    "polynomials", "evaluation_identity", "check_polynomial_identity", "nabla_witness",
    "nabla_chain_witness", "default_witness_nodes", "tower_h", "random_h", "polynomial_h",
    "make_h", "degree_coloring", "largest_mono_box", "verdict_to_json", "run_instance",
    "sweep", "Infeasible", "Feasible",
]
