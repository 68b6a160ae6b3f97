"""Exact scalar fields: the rationals, prime fields, and (in :mod:`ratfunc`)
rational function fields over either.

Rationals are plain :class:`fractions.Fraction` values.  Prime field residues
are :class:`Fp` instances.  Every field object is a singleton per parameter
set, so ``field_of(a) == field_of(b)`` is an identity comparison.

String grammar used by reports and CSV tables::

    rational   := ["-"] digits ["/" digits]          e.g. "2/7", "-3"
    residue    := digits " mod " prime                e.g. "3 mod 5"
    ratfunc    := poly | "(" poly ")/(" poly ")"     see polyring for poly
"""

from __future__ import annotations

import re
from fractions import Fraction


class IncompatibleFields(TypeError):
    """Raised when two scalars have no common field in the registered tower."""


class Field:
    """Base class for exact fields."""

    name = "?"

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def characteristic(self) -> int:
        raise NotImplementedError

    def contains(self, x) -> bool:
        return field_of(x) is self

    def embeds_into(self, other: "Field") -> bool:
        return other is self

    def format(self, a) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class Rationals(Field):
    name = "QQ"
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise IncompatibleFields(f"cannot coerce {x!r} into QQ")

    def contains(self, x) -> bool:
        return isinstance(x, (Fraction, int))

    def embeds_into(self, other: Field) -> bool:
        if other is self:
            return True
        ground = getattr(other, "ground", None)
        return ground is not None and self.embeds_into(ground)

    def format(self, a) -> str:
        a = Fraction(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def parse(self, text: str):
        return Fraction(text.strip().replace(" ", ""))


QQ = Rationals()


class Fp:
    """Residue class modulo a word-sized prime."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    @property
    def field(self):
        return GF(self.p)

    def _other(self, b):
        if isinstance(b, Fp):
            if b.p != self.p:
                raise IncompatibleFields(f"GF({self.p}) vs GF({b.p})")
            return b.v
        if isinstance(b, int):
            return b
        return None

    def __add__(self, b):
        o = self._other(b)
        if o is None:
            return _defer(self, b, "__radd__")
        return Fp(self.v + o, self.p)

    def __radd__(self, b):
        o = self._other(b)
        if o is None:
            raise IncompatibleFields(f"{b!r} + GF({self.p})")
        return Fp(o + self.v, self.p)

    def __sub__(self, b):
        o = self._other(b)
        if o is None:
            return _defer(self, b, "__rsub__")
        return Fp(self.v - o, self.p)

    def __rsub__(self, b):
        o = self._other(b)
        if o is None:
            raise IncompatibleFields(f"{b!r} - GF({self.p})")
        return Fp(o - self.v, self.p)

    def __mul__(self, b):
        o = self._other(b)
        if o is None:
            return _defer(self, b, "__rmul__")
        return Fp(self.v * o, self.p)

    def __rmul__(self, b):
        o = self._other(b)
        if o is None:
            raise IncompatibleFields(f"{b!r} * GF({self.p})")
        return Fp(o * self.v, self.p)

    def __truediv__(self, b):
        o = self._other(b)
        if o is None:
            return _defer(self, b, "__rtruediv__")
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, b):
        o = self._other(b)
        if o is None:
            raise IncompatibleFields(f"{b!r} / GF({self.p})")
        if self.v == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return Fp(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            if self.v == 0:
                raise ZeroDivisionError(f"division by zero in GF({self.p})")
            return Fp(pow(pow(self.v, -1, self.p), -e, self.p), self.p)
        return Fp(pow(self.v, e, self.p), self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, b):
        if isinstance(b, Fp):
            return self.p == b.p and self.v == b.v
        if isinstance(b, int):
            return (self.v - b) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return f"{self.v} mod {self.p}"

    __str__ = __repr__


def _defer(a, b, reflected):
    # let the richer operand (e.g. a rational function over GF(p)) handle it
    op = getattr(b, reflected, None)
    if op is None:
        raise IncompatibleFields(f"no common field for {a!r} and {b!r}")
    res = op(a)
    if res is NotImplemented:
        raise IncompatibleFields(f"no common field for {a!r} and {b!r}")
    return res


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or p >= 2**63 or not _is_prime(p):
            raise ValueError(f"{p} is not a word-sized prime")
        self.p = p
        self.name = f"GF({p})"

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, x):
        if isinstance(x, Fp):
            if x.p != self.p:
                raise IncompatibleFields(f"GF({x.p}) element into {self.name}")
            return x
        if isinstance(x, int):
            return Fp(x, self.p)
        if isinstance(x, Fraction):
            return Fp(x.numerator, self.p) / Fp(x.denominator, self.p)
        if isinstance(x, str):
            return self.parse(x)
        raise IncompatibleFields(f"cannot coerce {x!r} into {self.name}")

    def contains(self, x) -> bool:
        return isinstance(x, Fp) and x.p == self.p

    def embeds_into(self, other: Field) -> bool:
        if other is self:
            return True
        ground = getattr(other, "ground", None)
        return ground is not None and self.embeds_into(ground)

    def elements(self):
        return [Fp(v, self.p) for v in range(self.p)]

    def format(self, a) -> str:
        return f"{self(a).v} mod {self.p}"

    def parse(self, text: str):
        m = _RESIDUE.fullmatch(text.strip())
        if m:
            if int(m.group(2)) != self.p:
                raise IncompatibleFields(f"{text!r} is not in {self.name}")
            return Fp(int(m.group(1)), self.p)
        return self(Fraction(text.strip()))


_RESIDUE = re.compile(r"(-?\d+)\s*mod\s*(\d+)")
_PRIME_FIELDS: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    F = _PRIME_FIELDS.get(p)
    if F is None:
        F = _PRIME_FIELDS[p] = PrimeField(p)
    return F


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def field_of(x) -> Field:
    """The ambient field of a scalar; plain ints are treated as rationals."""
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return QQ
    f = getattr(x, "field", None)
    if isinstance(f, Field):
        return f
    raise IncompatibleFields(f"{x!r} is not a scalar")


def common_field(F: Field, G: Field) -> Field:
    if F is G:
        return F
    if F.embeds_into(G):
        return G
    if G.embeds_into(F):
        return F
    raise IncompatibleFields(f"no embedding between {F} and {G}")


def common_field_of(values) -> Field:
    F = None
    for v in values:
        G = field_of(v)
        F = G if F is None else common_field(F, G)
    return QQ if F is None else F


def embed(a, target: Field):
    """Image of ``a`` under the canonical inclusion of its field into ``target``."""
    F = field_of(a)
    if not F.embeds_into(target):
        raise IncompatibleFields(f"no registered embedding {F} -> {target}")
    return target(a)


def is_zero(a) -> bool:
    return not a


def format_scalar(a) -> str:
    return field_of(a).format(a)


def parse_field(text: str) -> Field:
    """Parse a field descriptor: ``QQ``, ``GF(p)``, ``QQ(X,Y)``, ``GF(p)(X)``."""
    text = text.replace(" ", "")
    m = re.fullmatch(r"(QQ|GF\((\d+)\))(?:\(([^()]*)\))?", text)
    if not m:
        raise ValueError(f"bad field descriptor {text!r}")
    ground = QQ if m.group(1) == "QQ" else GF(int(m.group(2)))
    if m.group(3) is None:
        return ground
    from .ratfunc import RationalFunctionField

    names = tuple(v for v in m.group(3).split(",") if v)
    return RationalFunctionField.get(ground, names)


def parse_scalar(text: str, field: Field | None = None):
    """Parse a scalar string.  Without a field the grammar decides: a residue
    string gives GF(p), a plain fraction gives QQ, anything with identifiers
    gives a rational function over QQ in the identifiers that occur."""
    if field is not None:
        return field.parse(text)
    s = text.strip()
    m = _RESIDUE.fullmatch(s)
    if m:
        return GF(int(m.group(2)))(int(m.group(1)))
    if re.fullmatch(r"-?\d+(/\d+)?", s.replace(" ", "")):
        return QQ.parse(s)
    from .ratfunc import RationalFunctionField

    names = tuple(dict.fromkeys(re.findall(r"[A-Za-z_][A-Za-z0-9_]*", s)))
    return RationalFunctionField.get(QQ, names).parse(s)
