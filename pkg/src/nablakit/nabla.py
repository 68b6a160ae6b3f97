"""Difference operators on exact function tables.

A :class:`Grid` is a product of labelled finite node lists.  For nodes
``z = (z_1, ..., z_m)`` on one axis, ``nabla_apply`` collapses that axis::

    (nabla^z f)(s) = sum_j (-1)^j P(z without z_j) f(s with z_j inserted)

with ``P`` the Vandermonde weight.  It kills every table that is a
polynomial of degree <= m - 2 along the axis.  Axes are addressed by label,
never by position, so removing one axis leaves the others' names intact.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .polyring import MultiPoly, alternating_weights
from .scalars import common_field, common_field_of, field_of, format_scalar, parse_scalar


class Grid:
    """Ordered product of labelled axes with pairwise distinct nodes."""

    __slots__ = ("axes", "_pos")

    def __init__(self, axes: Iterable[tuple[str, Sequence]]):
        axes = tuple((str(label), tuple(nodes)) for label, nodes in axes)
        labels = [a for a, _ in axes]
        if len(set(labels)) != len(labels):
            raise ValueError(f"axis labels must be unique: {labels}")
        for label, nodes in axes:
            if not nodes:
                raise ValueError(f"axis {label!r} has no nodes")
            if len(set(nodes)) != len(nodes):
                raise ValueError(f"axis {label!r} has repeated nodes")
        self.axes = axes
        self._pos = {a: k for k, a in enumerate(labels)}

    @classmethod
    def line(cls, nodes: Sequence, label: str = "s") -> "Grid":
        return cls([(label, nodes)])

    @property
    def labels(self) -> tuple:
        return tuple(a for a, _ in self.axes)

    @property
    def shape(self) -> tuple:
        return tuple(len(n) for _, n in self.axes)

    def nodes(self, axis: str) -> tuple:
        return self.axes[self.position(axis)][1]

    def position(self, axis: str) -> int:
        try:
            return self._pos[axis]
        except KeyError:
            raise KeyError(f"unknown axis {axis!r}; grid has {self.labels}") from None

    def points(self):
        return itertools.product(*(n for _, n in self.axes))

    def without(self, axis: str) -> "Grid":
        k = self.position(axis)
        return Grid(self.axes[:k] + self.axes[k + 1:])

    def __len__(self):
        n = 1
        for s in self.shape:
            n *= s
        return n

    def __eq__(self, other):
        return isinstance(other, Grid) and self.axes == other.axes

    def __hash__(self):
        return hash(self.axes)

    def __repr__(self):
        return f"Grid({list(self.axes)!r})"


class TabulatedFunction:
    """A total map from grid points to scalars of one field."""

    __slots__ = ("grid", "values", "field")

    def __init__(self, grid: Grid, values: Mapping[tuple, object]):
        vals = {}
        for pt in grid.points():
            if pt not in values:
                raise ValueError(f"no value at grid point {pt}")
            vals[pt] = values[pt]
        if len(values) != len(vals):
            raise ValueError("values given at points outside the grid")
        F = common_field_of(vals.values())
        self.grid = grid
        self.field = F
        self.values = {pt: F(v) if isinstance(v, int) or field_of(v) is not F else v
                       for pt, v in vals.items()}

    @classmethod
    def from_function(cls, grid: Grid, fn: Callable) -> "TabulatedFunction":
        return cls(grid, {pt: fn(*pt) for pt in grid.points()})

    @classmethod
    def line(cls, nodes: Sequence, values: Sequence | Callable, label: str = "s"):
        g = Grid.line(nodes, label)
        if callable(values):
            return cls.from_function(g, values)
        if len(values) != len(nodes):
            raise ValueError("need one value per node")
        return cls(g, {(s,): v for s, v in zip(nodes, values)})

    def __getitem__(self, pt):
        if not isinstance(pt, tuple):
            pt = (pt,)
        return self.values[pt]

    def __add__(self, other: "TabulatedFunction"):
        if other.grid != self.grid:
            raise ValueError("tables live on different grids")
        return TabulatedFunction(self.grid, {p: v + other.values[p] for p, v in self.values.items()})

    def __sub__(self, other: "TabulatedFunction"):
        return self + other.scale(-1)

    def scale(self, c) -> "TabulatedFunction":
        return TabulatedFunction(self.grid, {p: c * v for p, v in self.values.items()})

    __rmul__ = scale

    def __eq__(self, other):
        return (isinstance(other, TabulatedFunction) and other.grid == self.grid
                and all(v == other.values[p] for p, v in self.values.items()))

    def __hash__(self):
        return hash(self.grid)

    def is_zero(self) -> bool:
        return not any(self.values.values())

    def scalar(self):
        """Value of a table on the zero-dimensional grid."""
        if self.grid.axes:
            raise ValueError("table still has axes")
        return self.values[()]

    def restrict(self, axis: str, nodes: Sequence) -> "TabulatedFunction":
        k = self.grid.position(axis)
        axes = list(self.grid.axes)
        if not set(nodes) <= set(axes[k][1]):
            raise ValueError(f"nodes not on axis {axis!r}")
        axes[k] = (axis, tuple(nodes))
        g = Grid(axes)
        return TabulatedFunction(g, {p: self.values[p] for p in g.points()})

    def __repr__(self):
        return f"TabulatedFunction({self.grid!r}, {len(self.values)} values over {self.field})"

    # -- CSV: one column per axis, then "value"; scalars in string grammar --

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(list(self.grid.labels) + ["value"])
        for pt in self.grid.points():
            w.writerow([format_scalar(s) for s in pt] + [format_scalar(self.values[pt])])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, field=None) -> "TabulatedFunction":
        rows = list(csv.reader(io.StringIO(text)))
        rows = [r for r in rows if r and not r[0].startswith("#")]
        header, body = rows[0], rows[1:]
        if header[-1].strip() != "value":
            raise ValueError("last CSV column must be 'value'")
        labels = [h.strip() for h in header[:-1]]
        nodes: list[dict] = [dict() for _ in labels]
        vals = {}
        for r in body:
            if len(r) != len(header):
                raise ValueError(f"malformed CSV row {r}")
            pt = tuple(parse_scalar(c, field) for c in r[:-1])
            for k, s in enumerate(pt):
                nodes[k].setdefault(s, None)
            vals[pt] = parse_scalar(r[-1], field)
        g = Grid(zip(labels, (tuple(n) for n in nodes)))
        return cls(g, vals)


def _check_nodes(grid: Grid, axis: str, z: Sequence) -> tuple:
    z = tuple(z)
    on_axis = grid.nodes(axis)
    if len(z) < 2:
        raise ValueError("nabla needs at least two nodes")
    if len(set(z)) != len(z):
        raise ValueError(f"repeated nodes {z}")
    missing = [s for s in z if s not in on_axis]
    if missing:
        raise ValueError(f"nodes {missing} are not on axis {axis!r}")
    return z


def nabla_1d(h: Callable | Mapping, z: Sequence):
    """nabla^z applied to a function of one variable (callable or mapping)."""
    z = tuple(z)
    if len(set(z)) != len(z):
        raise ValueError(f"repeated nodes {z}")
    get = h.__getitem__ if isinstance(h, Mapping) else h
    total = None
    for w, s in zip(alternating_weights(z), z):
        t = w * get(s)
        total = t if total is None else total + t
    return total


def nabla_apply(f: TabulatedFunction, axis: str, z: Sequence) -> TabulatedFunction:
    g = f.grid
    z = _check_nodes(g, axis, z)
    k = g.position(axis)
    weights = alternating_weights(z)
    rest = g.without(axis)
    out = {}
    for s in rest.points():
        total = None
        for w, node in zip(weights, z):
            t = w * f.values[s[:k] + (node,) + s[k:]]
            total = t if total is None else total + t
        out[s] = total
    return TabulatedFunction(rest, out)


def nabla_chain(f: TabulatedFunction, steps: Iterable[tuple[str, Sequence]]) -> TabulatedFunction:
    for axis, z in steps:
        f = nabla_apply(f, axis, z)
    return f


def nabla_commute_check(f: TabulatedFunction, first: tuple[str, Sequence],
                        second: tuple[str, Sequence]) -> bool:
    """Both composition orders of two nablas on distinct axes agree exactly."""
    if first[0] == second[0]:
        raise ValueError(f"axis {first[0]!r} supplied twice")
    a = nabla_chain(f, [first, second])
    b = nabla_chain(f, [second, first])
    return a == b


def product_table(grid: Grid, factors: Mapping[str, Callable]) -> TabulatedFunction:
    """The table of prod_axis factor_axis(s_axis)."""
    labels = grid.labels

    def value(*pt):
        v = None
        for a, s in zip(labels, pt):
            t = factors[a](s)
            v = t if v is None else v * t
        return v
    return TabulatedFunction.from_function(grid, value)


# ---------------------------------------------------------------------------
# polynomiality


@dataclass(frozen=True)
class IsPolynomial:
    witness: MultiPoly


@dataclass(frozen=True)
class NotPolynomial:
    witness: tuple
    value: object


class _NoBound:
    def __repr__(self):
        return "NoBound"

    def __bool__(self):
        return False


NoBound = _NoBound()


def newton_interpolate(nodes: Sequence, values: Sequence, var: str = "x", field=None) -> MultiPoly:
    """The unique polynomial of degree < len(nodes) through the points."""
    if field is None:
        field = common_field_of(list(nodes) + list(values))
    nodes = [field(s) for s in nodes]
    coef = [field(v) for v in values]
    n = len(nodes)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (nodes[i] - nodes[i - j])
    x = MultiPoly.var(var, field)
    p = MultiPoly.const(coef[-1] if n else field.zero, field, (var,))
    for i in range(n - 2, -1, -1):
        p = p * (x - nodes[i]) + coef[i]
    return p


def _line_axis(f: TabulatedFunction) -> tuple:
    if len(f.grid.axes) != 1:
        raise ValueError("polynomiality is decided on one-axis tables")
    return f.grid.axes[0]


def polynomiality_test(f: TabulatedFunction, d: int, var: str = "x"):
    """Decide whether the table agrees with a polynomial of degree <= d.

    Interpolates on the first d+1 nodes and checks the rest; on the first
    mismatch the d+1 interpolation nodes plus the offending node form a
    witness z with nabla^z f != 0."""
    label, nodes = _line_axis(f)
    if d < 0:
        raise ValueError("degree bound must be nonnegative")
    if len(nodes) < d + 2:
        raise ValueError(f"{len(nodes)} nodes cannot decide degree <= {d}; need {d + 2}")
    vals = [f.values[(s,)] for s in nodes]
    F = common_field(f.field, common_field_of(nodes))
    p = newton_interpolate(nodes[:d + 1], vals[:d + 1], var, F)
    for s, v in zip(nodes[d + 1:], vals[d + 1:]):
        if p.evaluate((s,)) != v:
            z = tuple(nodes[:d + 1]) + (s,)
            value = nabla_apply(f, label, z).scalar()
            assert value, "interpolation mismatch must give a nonzero nabla"
            return NotPolynomial(z, value)
    return IsPolynomial(p)


def degree_detect(f: TabulatedFunction):
    """Least d (with d + 2 <= #nodes) at which the table is polynomial, else NoBound."""
    _, nodes = _line_axis(f)
    if len(nodes) < 2:
        raise ValueError("need at least two nodes")
    for d in range(0, len(nodes) - 1):
        if isinstance(polynomiality_test(f, d), IsPolynomial):
            return d
    return NoBound
