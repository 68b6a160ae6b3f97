"""Rational function fields K(X_1, ..., X_n) over K = QQ or GF(p).

Elements are reduced fractions num/den of polynomials over the ground field,
with gcd(num, den) = 1 and den monic under graded lex order, so equal
elements have identical representations.  An iterated extension
K(X)(Y) is represented flat as K(X, Y); the inclusion K(X) -> K(X, Y) is
the registered embedding.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .polyring import (
    MultiPoly, _add, _divexact, _gcd, _is_const, _lead, _mul, _neg, _scale, parse_expression,
)
from .scalars import (
    QQ, Field, Fp, IncompatibleFields, PrimeField, Rationals, common_field, field_of,
)


class RationalFunctionField(Field):
    _cache: dict = {}

    def __init__(self, ground: Field, variables: Sequence[str]):
        if not isinstance(ground, (Rationals, PrimeField)):
            raise ValueError("ground field must be QQ or GF(p)")
        self.ground = ground
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"repeated indeterminates {self.variables}")
        self.name = f"{ground.name}({','.join(self.variables)})"
        self._unit = {(0,) * len(self.variables): ground.one}
        self._index = {v: k for k, v in enumerate(self.variables)}

    @classmethod
    def get(cls, ground: Field, variables: Sequence[str]) -> "RationalFunctionField":
        key = (ground, tuple(variables))
        F = cls._cache.get(key)
        if F is None:
            F = cls._cache[key] = cls(ground, variables)
        return F

    def extend(self, new_variables: Sequence[str]) -> "RationalFunctionField":
        extra = tuple(v for v in new_variables if v not in self._index)
        return RationalFunctionField.get(self.ground, self.variables + extra)

    @property
    def characteristic(self) -> int:
        return self.ground.characteristic

    def embeds_into(self, other: Field) -> bool:
        if other is self:
            return True
        return (isinstance(other, RationalFunctionField) and other.ground is self.ground
                and set(self.variables) <= set(other.variables))

    def contains(self, x) -> bool:
        return isinstance(x, RatFunc) and x.field is self

    def gen(self, name: str) -> "RatFunc":
        e = [0] * len(self.variables)
        e[self._index[name]] = 1
        return RatFunc(self, {tuple(e): self.ground.one}, self._unit)

    def gens(self) -> tuple:
        return tuple(self.gen(v) for v in self.variables)

    def _reindex(self, terms: dict, variables: tuple) -> dict:
        if variables == self.variables:
            return terms
        idx = [self._index[v] for v in variables]
        n = len(self.variables)
        out = {}
        for m, c in terms.items():
            e = [0] * n
            for k, j in enumerate(idx):
                e[j] = m[k]
            out[tuple(e)] = c
        return out

    def __call__(self, x):
        if isinstance(x, RatFunc):
            if x.field is self:
                return x
            if not x.field.embeds_into(self):
                raise IncompatibleFields(f"no embedding {x.field} -> {self}")
            vs = x.field.variables
            return RatFunc(self, self._reindex(x.num, vs), self._reindex(x.den, vs))
        if isinstance(x, MultiPoly):
            P = x.with_variables(self.variables) if set(x.used_variables()) <= set(self.variables) \
                else None
            if P is None:
                raise IncompatibleFields(f"{x} has variables outside {self}")
            if P.field is self.ground:
                return RatFunc(self, dict(P.terms), self._unit)
            total = self.zero
            for mono, c in P.items():
                t = self(c)
                for v, e in mono.items():
                    t = t * self.gen(v) ** e
                total = total + t
            return total
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool):
            raise IncompatibleFields("booleans are not scalars")
        if isinstance(x, int) or (isinstance(x, Fraction) and self.ground is QQ) or \
                (isinstance(x, Fp) and self.ground.contains(x)):
            c = self.ground(x)
            return RatFunc(self, {self._zero_exp: c} if c else {}, self._unit)
        raise IncompatibleFields(f"cannot coerce {x!r} into {self}")

    @property
    def _zero_exp(self):
        return (0,) * len(self.variables)

    def format(self, a) -> str:
        return str(self(a))

    def parse(self, text: str) -> "RatFunc":
        gens = {v: self.gen(v) for v in self.variables}

        def name(v):
            if v not in gens:
                raise ValueError(f"unknown indeterminate {v!r} for {self}")
            return gens[v]

        val = parse_expression(text, number=self, name=name)
        return self(val)


def _canon(F: RationalFunctionField, num: dict, den: dict):
    one = F.ground.one
    if not den:
        raise ZeroDivisionError(f"division by zero in {F}")
    if not num:
        return {}, F._unit
    if _is_const(den):
        c = next(iter(den.values()))
        if c != one:
            num = _scale(num, one / c)
        return num, F._unit
    g = _gcd(num, den, one)
    if not _is_const(g):
        num = _divexact(num, g)
        den = _divexact(den, g)
    lc = den[_lead(den)]
    if lc != one:
        inv = one / lc
        num = _scale(num, inv)
        den = _scale(den, inv)
    return num, den


class RatFunc:
    """Element of a :class:`RationalFunctionField` in reduced form."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: RationalFunctionField, num: dict, den: dict, reduced: bool = False):
        if not reduced:
            num, den = _canon(field, num, den)
        self.field = field
        self.num = num
        self.den = den

    def _coerce(self, b):
        if isinstance(b, RatFunc):
            if b.field is self.field:
                return self, b
            F = common_field(self.field, b.field)
            return F(self), F(b)
        if isinstance(b, MultiPoly):
            return None
        try:
            return self, self.field(b)
        except IncompatibleFields:
            # b may live in a larger field only via its own coercion rules
            F = common_field(self.field, field_of(b))
            return F(self), F(b)

    def _unit_den(self):
        return self.den is self.field._unit or self.den == self.field._unit

    def __add__(self, b):
        pair = self._coerce(b)
        if pair is None:
            return NotImplemented
        x, y = pair
        F = x.field
        if x._unit_den() and y._unit_den():
            return RatFunc(F, _add(x.num, y.num), F._unit, reduced=True)
        if x.den == y.den:
            return RatFunc(F, _add(x.num, y.num), x.den)
        return RatFunc(F, _add(_mul(x.num, y.den), _mul(y.num, x.den)), _mul(x.den, y.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, _neg(self.num), self.den, reduced=True)

    def __pos__(self):
        return self

    def __sub__(self, b):
        pair = self._coerce(b)
        if pair is None:
            return NotImplemented
        x, y = pair
        return x + (-y)

    def __rsub__(self, b):
        pair = self._coerce(b)
        if pair is None:
            return NotImplemented
        x, y = pair
        return y + (-x)

    def __mul__(self, b):
        pair = self._coerce(b)
        if pair is None:
            return NotImplemented
        x, y = pair
        F = x.field
        if not x.num or not y.num:
            return RatFunc(F, {}, F._unit, reduced=True)
        if x._unit_den() and y._unit_den():
            return RatFunc(F, _mul(x.num, y.num), F._unit, reduced=True)
        return RatFunc(F, _mul(x.num, y.num), _mul(x.den, y.den))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError(f"division by zero in {self.field}")
        return RatFunc(self.field, self.den, self.num)

    def __truediv__(self, b):
        pair = self._coerce(b)
        if pair is None:
            return NotImplemented
        x, y = pair
        return x * y.inverse()

    def __rtruediv__(self, b):
        pair = self._coerce(b)
        if pair is None:
            return NotImplemented
        x, y = pair
        return y * x.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return bool(self.num)

    def is_constant(self) -> bool:
        return _is_const(self.num) and self._unit_den()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.num.values())) if self.num else self.field.ground.zero

    def used_variables(self) -> tuple:
        vs = self.field.variables
        return tuple(v for k, v in enumerate(vs)
                     if any(m[k] for m in self.num) or any(m[k] for m in self.den))

    def numerator(self) -> MultiPoly:
        return MultiPoly._raw(self.num, self.field.variables, self.field.ground)

    def denominator(self) -> MultiPoly:
        return MultiPoly._raw(self.den, self.field.variables, self.field.ground)

    def subs(self, mapping: Mapping[str, object]):
        """Substitute scalars for indeterminates.  When every indeterminate
        that occurs is substituted by a ground scalar the result is a ground
        scalar."""
        F = self.field
        point = {v: mapping[v] if v in mapping else F.gen(v) for v in F.variables}
        n = self.numerator().evaluate(point)
        d = self.denominator().evaluate(point)
        if not d:
            raise ZeroDivisionError(f"denominator of {self} vanishes under substitution")
        return n / d

    def _key(self):
        vs = self.field.variables

        def named(t):
            return frozenset((tuple((vs[k], e) for k, e in enumerate(m) if e), c)
                             for m, c in t.items())
        return named(self.num), named(self.den)

    def __eq__(self, b):
        if isinstance(b, RatFunc):
            if b.field is self.field:
                return self.num == b.num and self.den == b.den
            try:
                x, y = self._coerce(b)
            except IncompatibleFields:
                return False
            return x.num == y.num and x.den == y.den
        if isinstance(b, MultiPoly):
            return NotImplemented
        try:
            y = self.field(b)
        except IncompatibleFields:
            return NotImplemented
        return self.num == y.num and self.den == y.den

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash(self._key())

    def __str__(self):
        n = str(self.numerator())
        if self._unit_den():
            return n
        return f"({n})/({self.denominator()})"

    def __repr__(self):
        return f"RatFunc({str(self)!r} in {self.field})"
