"""Concrete coefficient rings for module maps.

``Integers`` and ``UnivariatePolys`` are Euclidean (divmod, gcd, unit
normalization); ``MultivariatePolys`` is not.  ``ProductRing`` is the
Boolean-style ring GF(p)^S used for idempotent families.
"""

from __future__ import annotations

from math import gcd as igcd
from typing import Sequence

from ..polyring import MultiPoly, poly_divmod, poly_xgcd
from ..scalars import QQ, Field, Fp, GF


class RingSpec:
    euclidean = False
    name = "?"

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        raise NotImplementedError

    def divexact(self, a, b):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class Integers(RingSpec):
    euclidean = True
    name = "ZZ"

    def __call__(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            if hasattr(x, "denominator") and x.denominator == 1:
                return int(x.numerator)
            raise TypeError(f"{x!r} is not an integer")
        return x

    def is_unit(self, a) -> bool:
        return a in (1, -1)

    def norm(self, a) -> int:
        return abs(a)

    def divmod(self, a, b):
        q, r = divmod(a, b)
        # symmetric remainder keeps norms small
        if 2 * abs(r) > abs(b):
            r -= b
            q += 1
        return q, r

    def divexact(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{b} does not divide {a}")
        return q

    def divides(self, a, b) -> bool:
        return b % a == 0 if a else b == 0

    def unit_normal(self, a):
        """Unit u with a*u in normal form (nonnegative)."""
        return -1 if a < 0 else 1

    def unit_inverse(self, u):
        return u

    def gcd(self, a, b):
        return igcd(a, b)

    def xgcd(self, a, b):
        s0, s1, t0, t1 = 1, 0, 0, 1
        r0, r1 = a, b
        while r1:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0 < 0:
            r0, s0, t0 = -r0, -s0, -t0
        return r0, s0, t0

    def parse(self, text: str):
        return int(text)


ZZ = Integers()


class UnivariatePolys(RingSpec):
    """k[x] over an exact field, elements are MultiPoly in the single variable."""

    euclidean = True

    def __init__(self, field: Field = QQ, var: str = "x"):
        self.field = field
        self.var = var
        self.name = f"{field.name}[{var}]"
        self.x = MultiPoly.var(var, field)

    def __eq__(self, other):
        return isinstance(other, UnivariatePolys) and (other.field, other.var) == (self.field, self.var)

    def __hash__(self):
        return hash((self.field, self.var))

    def __call__(self, a):
        if isinstance(a, MultiPoly):
            if set(a.used_variables()) - {self.var}:
                raise TypeError(f"{a} is not in {self.name}")
            return a.with_variables((self.var,), self.field)
        if isinstance(a, str):
            return self.parse(a)
        return MultiPoly.const(self.field(a), self.field, (self.var,))

    def is_unit(self, a) -> bool:
        return bool(a) and a.is_constant()

    def norm(self, a) -> int:
        return a.total_degree()

    def divmod(self, a, b):
        q, r = poly_divmod(a, b)
        return self(q), self(r)

    def divexact(self, a, b):
        return self(a.divexact(b))

    def divides(self, a, b) -> bool:
        if not a:
            return not b
        return not poly_divmod(b, a)[1]

    def unit_normal(self, a):
        if not a:
            return self.one
        return self(self.field.one / a.leading_coefficient())

    def unit_inverse(self, u):
        return self(self.field.one / u.constant_value())

    def gcd(self, a, b):
        return self(poly_xgcd(a, b)[0])

    def xgcd(self, a, b):
        g, s, t = poly_xgcd(a, b)
        return self(g), self(s), self(t)

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        return MultiPoly.parse(text, (self.var,), self.field)


class MultivariatePolys(RingSpec):
    """k[x_1, ..., x_n]; no Euclidean structure."""

    def __init__(self, field: Field, variables: Sequence[str]):
        self.field = field
        self.variables = tuple(variables)
        self.name = f"{field.name}[{','.join(self.variables)}]"

    def __eq__(self, other):
        return isinstance(other, MultivariatePolys) and \
            (other.field, other.variables) == (self.field, self.variables)

    def __hash__(self):
        return hash((self.field, self.variables))

    def __call__(self, a):
        if isinstance(a, MultiPoly):
            return a.with_variables(self.variables, self.field)
        if isinstance(a, str):
            return self.parse(a)
        return MultiPoly.const(self.field(a), self.field, self.variables)

    def gens(self):
        return MultiPoly.gens(self.variables, self.field)

    def is_unit(self, a) -> bool:
        return bool(a) and a.is_constant()

    def divexact(self, a, b):
        return self(a.divexact(b))

    def parse(self, text: str):
        return MultiPoly.parse(text, self.variables, self.field)


class ProductRing(RingSpec):
    """GF(p)^n with componentwise operations; elements are tuples of Fp."""

    def __init__(self, p: int, n: int):
        self.p = p
        self.n = n
        self.F = GF(p)
        self.name = f"GF({p})^{n}"

    def __call__(self, a):
        if isinstance(a, (tuple, list)):
            if len(a) != self.n:
                raise ValueError(f"need {self.n} components")
            return tuple(self.F(v) for v in a)
        return tuple(self.F(a) for _ in range(self.n))

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def mul(self, a, b):
        return tuple(x * y for x, y in zip(a, b))

    def is_zero(self, a) -> bool:
        return not any(a)

    def is_unit(self, a) -> bool:
        return all(a)

    def delta(self, k: int):
        return tuple(self.F(1 if i == k else 0) for i in range(self.n))

    def format(self, a) -> str:
        return "(" + ",".join(str(v.v) for v in a) + ")"

    def parse(self, text: str):
        return self(tuple(int(v) for v in text.strip("() ").split(",")))


def ring_from_name(name: str) -> RingSpec:
    """``ZZ``, ``QQ[x]``, ``GF(p)[x]``, ``QQ[x,y]``."""
    import re

    from ..scalars import parse_field

    name = name.replace(" ", "")
    if name == "ZZ":
        return ZZ
    m = re.fullmatch(r"(QQ|GF\(\d+\))\[([^\]]+)\]", name)
    if not m:
        raise ValueError(f"unknown ring {name!r}")
    F = parse_field(m.group(1))
    vs = m.group(2).split(",")
    if len(vs) == 1:
        return UnivariatePolys(F, vs[0])
    return MultivariatePolys(F, vs)


__all__ = [
    "RingSpec", "Integers", "ZZ", "UnivariatePolys", "MultivariatePolys", "ProductRing",
    "ring_from_name", "Fp",
]
