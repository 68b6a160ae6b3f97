"""Exact sparse Gaussian elimination with certificates.

A feasible system comes back with an assignment (free unknowns set to 0)
that has been re-substituted into every equation.  An infeasible one comes
back with multipliers y over the equations such that sum_e y_e * row_e has
all coefficients zero but a nonzero right-hand side.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable

from .scalars import common_field_of


@dataclass
class LinearSystem:
    """Equations ``sum_u coeffs[u] * u = rhs`` over an exact field."""

    unknowns: list = field(default_factory=list)
    equations: list = field(default_factory=list)
    provenance: list = field(default_factory=list)

    def __post_init__(self):
        self._index = {u: k for k, u in enumerate(self.unknowns)}

    def unknown(self, label: Hashable) -> int:
        k = self._index.get(label)
        if k is None:
            k = self._index[label] = len(self.unknowns)
            self.unknowns.append(label)
        return k

    def add_equation(self, coeffs: dict, rhs, provenance=None):
        """coeffs maps unknown labels to scalars; zero coefficients dropped."""
        row = {}
        rhs = _exact(rhs)
        for label, c in coeffs.items():
            c = _exact(c)
            if label not in self._index:
                raise KeyError(f"undeclared unknown {label!r}")
            if c:
                k = self._index[label]
                row[k] = row[k] + c if k in row else c
        self.equations.append(({k: c for k, c in row.items() if c}, rhs))
        self.provenance.append(provenance)

    @property
    def shape(self) -> tuple:
        return len(self.equations), len(self.unknowns)

    def coefficient_field(self):
        vals = [c for row, _ in self.equations for c in row.values()]
        vals += [b for _, b in self.equations]
        return common_field_of(vals)

    def residual(self, assignment: dict) -> list:
        """Per-equation lhs - rhs under an assignment keyed by label."""
        vals = [assignment.get(u, 0) for u in self.unknowns]
        out = []
        for row, rhs in self.equations:
            total = -rhs
            for k, c in row.items():
                if vals[k]:
                    total = total + c * vals[k]
            out.append(total)
        return out

    def satisfied_by(self, assignment: dict) -> bool:
        return not any(self.residual(assignment))

    def check_certificate(self, certificate: dict) -> bool:
        """True iff the multipliers combine the equations into 0 = nonzero."""
        combo: dict = {}
        rhs = 0
        for e, y in certificate.items():
            row, b = self.equations[e]
            for k, c in row.items():
                combo[k] = combo[k] + y * c if k in combo else y * c
            rhs = rhs + y * b
        return not any(combo.values()) and bool(rhs)


@dataclass(frozen=True)
class Feasible:
    assignment: dict


@dataclass(frozen=True)
class Infeasible:
    certificate: dict


def _exact(c):
    """Plain ints become Fractions so that inversion stays exact."""
    return Fraction(c) if isinstance(c, int) and not isinstance(c, bool) else c


def _cost(c) -> int:
    num = getattr(c, "num", None)
    if num is None:
        return 0
    return len(num) + len(c.den) - 1


def solve(system: LinearSystem):
    pivots: dict[int, tuple] = {}
    order: list[int] = []
    for e, (row, rhs) in enumerate(system.equations):
        row = dict(row)
        combo = {e: 1}
        for p in order:
            c = row.get(p)
            if not c:
                continue
            prow, prhs, pcombo = pivots[p]
            for k, v in prow.items():
                w = row.get(k)
                w = -c * v if w is None else w - c * v
                if w:
                    row[k] = w
                else:
                    row.pop(k, None)
            rhs = rhs - c * prhs
            for k, v in pcombo.items():
                w = combo.get(k)
                w = -c * v if w is None else w - c * v
                if w:
                    combo[k] = w
                else:
                    combo.pop(k, None)
        if not row:
            if rhs:
                cert = {k: v for k, v in combo.items() if v}
                assert system.check_certificate(cert)
                return Infeasible(dict(sorted(cert.items())))
            continue
        p = min(row, key=lambda k: (_cost(row[k]), k))
        inv = 1 / row[p]
        row = {k: v * inv for k, v in row.items()}
        pivots[p] = (row, rhs * inv, {k: v * inv for k, v in combo.items()})
        order.append(p)
    values: dict[int, object] = {}
    for p in reversed(order):
        prow, prhs, _ = pivots[p]
        v = prhs
        for k, c in prow.items():
            if k != p and k in values:
                v = v - c * values[k]
        values[p] = v
    zero = system.coefficient_field().zero
    assignment = {u: values.get(k, zero) for k, u in enumerate(system.unknowns)}
    if not system.satisfied_by(assignment):
        raise AssertionError("elimination produced an assignment that fails re-substitution")
    return Feasible(assignment)
