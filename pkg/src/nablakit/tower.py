"""Finite truncation of the tower k = k_1 < k_2 < ... where k_{n+1} adjoins a
fresh indeterminate X_s for every registered s in k_n minus k_{n-1}.

Only registered elements get indeterminates, and no algebraic closure is
taken: what the non-polynomiality argument consumes is that X_s is
transcendental over the stage of s.  The generic function is s -> X_s.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .nabla import TabulatedFunction, nabla_1d
from .ratfunc import RatFunc, RationalFunctionField
from .scalars import QQ, Field, field_of, parse_field


class StageError(ValueError):
    """The stage of an element cannot be read off its representation."""


@dataclass(frozen=True)
class NonZeroWitness:
    nodes: tuple
    value: object
    stage: int


class Tower:
    """Registry of generic values X_s.  Writers are serialized by a lock."""

    def __init__(self, base: Field = QQ, prefix: str = "X"):
        if isinstance(base, RationalFunctionField):
            raise ValueError("tower base must be QQ or GF(p)")
        self.base = base
        self.prefix = prefix
        self.field: Field = base
        self._symbol: dict = {}
        self._gen: dict = {}
        self._var_stage: dict[str, int] = {}
        self._records: list[tuple[int, object, str]] = []
        self._lock = threading.Lock()

    def __len__(self):
        return len(self._records)

    @property
    def records(self) -> list:
        return list(self._records)

    def stage(self, s) -> int:
        """n such that s lies in k_n but not k_{n-1}."""
        if isinstance(s, RatFunc):
            vs = s.used_variables()
            unknown = [v for v in vs if v not in self._var_stage]
            if unknown:
                raise StageError(f"{s} involves unregistered indeterminates {unknown}")
            return max((self._var_stage[v] for v in vs), default=1)
        try:
            F = field_of(s)
        except TypeError:
            raise StageError(f"{s!r} is not a scalar") from None
        if F is self.base:
            return 1
        raise StageError(f"{s!r} is not in the tower over {self.base}")

    def _key(self, s):
        if isinstance(s, RatFunc):
            if s.is_constant():
                return ("c", s.constant_value())
            return ("r", s._key())
        return ("c", self.base(s))

    def _name(self, s) -> str:
        if isinstance(s, RatFunc) and s.is_constant():
            s = s.constant_value()
        if isinstance(s, (int, Fraction)) and Fraction(s).denominator == 1:
            k = int(s)
            name = f"{self.prefix}_{k}" if k >= 0 else f"{self.prefix}_m{-k}"
        else:
            name = f"{self.prefix}__{len(self._records)}"
        while name in self._var_stage:
            name += "_"
        return name

    def register(self, s) -> RatFunc:
        """f(s) = X_s, a fresh indeterminate one stage above s; idempotent."""
        key = self._key(s)
        with self._lock:
            name = self._symbol.get(key)
            if name is not None:
                return self._gen[name]
            n = self.stage(s)
            name = self._name(s)
            self.field = (self.field.extend([name]) if isinstance(self.field, RationalFunctionField)
                          else RationalFunctionField.get(self.base, (name,)))
            gen = self.field.gen(name)
            self._symbol[key] = name
            self._gen[name] = gen
            self._var_stage[name] = n + 1
            self._records.append((n, s, name))
            return gen

    __call__ = register

    def symbol(self, s) -> str:
        self.register(s)
        return self._symbol[self._key(s)]

    def table(self, S: Sequence, label: str = "s") -> TabulatedFunction:
        return TabulatedFunction.line(list(S), self.register, label)

    def nonpoly_certificate(self, S: Sequence, d: int) -> NonZeroWitness:
        """A nonzero nabla^z f on d+2 points of S, certifying that the
        generic function is not a polynomial of degree <= d on S."""
        S = list(S)
        if d < 0:
            raise ValueError("degree bound must be nonnegative")
        if len(S) < d + 2:
            raise ValueError(f"|S| = {len(S)} < d + 2 = {d + 2}")
        if len(set(S)) != len(S):
            raise ValueError("sample points must be distinct")
        stages = {self.stage(s) for s in S}
        if len(stages) != 1:
            raise StageError(f"sample points span stages {sorted(stages)}")
        z = tuple(S[:d + 2])
        value = nabla_1d(self.register, z)
        if not value:
            raise AssertionError(f"nabla of independent indeterminates vanished on {z}")
        return NonZeroWitness(z, value, stages.pop())

    # -- persistence ---------------------------------------------------------

    def dump(self) -> dict:
        return {
            "base": self.base.name,
            "prefix": self.prefix,
            "entries": [
                {"stage": n, "element": str(s) if isinstance(s, RatFunc) else self.base.format(s),
                 "symbol": name}
                for n, s, name in self._records
            ],
        }

    @classmethod
    def restore(cls, data: dict) -> "Tower":
        t = cls(parse_field(data["base"]), data.get("prefix", "X"))
        for e in data["entries"]:
            if e["stage"] == 1:
                s = t.base.parse(e["element"])
            else:
                s = t.field.parse(e["element"])
            got = t.symbol(s)
            if got != e["symbol"] or t.stage(s) != e["stage"]:
                raise ValueError(f"registry entry {e} does not replay consistently")
        return t
