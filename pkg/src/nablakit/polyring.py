"""Sparse multivariate polynomials over an exact field, and the Vandermonde
weight ``P(x_1, ..., x_n) = prod_{i<j} (x_j - x_i)`` with its alternating
interpolation identity.

Terms are stored as ``{exponent tuple: coefficient}`` aligned with an ordered
tuple of variable names.  The canonical monomial order is graded lex in the
declared variable order; printing, leading terms and normalization all use it.

Text format (round-trips through :meth:`MultiPoly.parse`)::

    poly := term (("+" | "-") term)*
    term := [coef "*"] mono | coef       coef := digits ["/" digits]
    mono := var ["^" digits] ("*" var ["^" digits])*

e.g. ``"2*x1^2*x2 - 1/3"``.  The parser accepts general expressions with
parentheses, ``*``, ``^`` and division by constants.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import scalars
from .scalars import QQ, Field, common_field, field_of

NEG_INF = float("-inf")


def grlex(exps: tuple) -> tuple:
    return (sum(exps), exps)


# ---------------------------------------------------------------------------
# raw term-dict kernels (fixed variable count)


def _lead(t: dict) -> tuple:
    return max(t, key=grlex)


def _add(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for m, c in b.items():
        v = out.get(m)
        if v is None:
            out[m] = c
        else:
            v = v + c
            if v:
                out[m] = v
            else:
                del out[m]
    return out


def _neg(a: dict) -> dict:
    return {m: -c for m, c in a.items()}


def _sub(a: dict, b: dict) -> dict:
    return _add(a, _neg(b))


def _scale(a: dict, c) -> dict:
    if not c:
        return {}
    return {m: v * c for m, v in a.items()}


def _mul(a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    if len(a) == 1 and len(b) == 1:
        (ma, ca), = a.items()
        (mb, cb), = b.items()
        return {tuple(x + y for x, y in zip(ma, mb)): ca * cb}
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            v = out.get(m)
            out[m] = ca * cb if v is None else v + ca * cb
    return {m: c for m, c in out.items() if c}


def _is_const(a: dict) -> bool:
    return not a or (len(a) == 1 and not any(next(iter(a))))


def _monic(a: dict, one) -> dict:
    if not a:
        return a
    lc = a[_lead(a)]
    if lc == one:
        return a
    inv = one / lc
    return {m: c * inv for m, c in a.items()}


def _divexact(a: dict, b: dict):
    """Quotient a/b when b divides a, else None.  Division by a single
    polynomial under any monomial order leaves remainder 0 iff b | a."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lb = _lead(b)
    cb = b[lb]
    q: dict = {}
    r = dict(a)
    while r:
        lr = _lead(r)
        if any(x < y for x, y in zip(lr, lb)):
            return None
        m = tuple(x - y for x, y in zip(lr, lb))
        c = r[lr] / cb
        q[m] = c
        r = _sub(r, _mul({m: c}, b))
    return q


def _split(a: dict, i: int) -> dict:
    """View a as univariate in variable i: {degree: coefficient dict}."""
    out: dict = {}
    for m, c in a.items():
        d = m[i]
        out.setdefault(d, {})[m[:i] + (0,) + m[i + 1:]] = c
    return out


def _join(parts: dict, i: int) -> dict:
    out = {}
    for d, t in parts.items():
        for m, c in t.items():
            out[m[:i] + (d,) + m[i + 1:]] = c
    return out


def _content(a: dict, i: int, one) -> dict:
    n = len(next(iter(a)))
    unit = {(0,) * n: one}
    g: dict = {}
    for part in _split(a, i).values():
        g = _gcd(g, part, one)
        if g == unit:
            break
    return g


def _prem(a: dict, b: dict, i: int) -> dict:
    A = _split(a, i)
    B = _split(b, i)
    db = max(B)
    lcb = B[db]
    e = max(A) - db + 1
    R = A
    while R and max(R) >= db:
        dr = max(R)
        lr = R[dr]
        new = {d: _mul(lcb, c) for d, c in R.items()}
        for d, c in B.items():
            k = d + dr - db
            new[k] = _sub(new.get(k, {}), _mul(lr, c))
        R = {d: c for d, c in new.items() if c}
        e -= 1
    if e > 0 and R:
        f = lcb
        for _ in range(e - 1):
            f = _mul(f, lcb)
        R = {d: _mul(f, c) for d, c in R.items()}
    return _join(R, i)


def _gcd(a: dict, b: dict, one) -> dict:
    """Monic (grlex) gcd over a field via recursive primitive remainder
    sequences.  gcd(0, 0) = 0."""
    if not a:
        return _monic(b, one)
    if not b:
        return _monic(a, one)
    n = len(next(iter(a)))
    unit = {(0,) * n: one}
    if _is_const(a) or _is_const(b):
        return unit
    occurring = [
        i for i in range(n)
        if any(m[i] for m in a) or any(m[i] for m in b)
    ]
    i = occurring[0]
    ca = _content(a, i, one)
    cb = _content(b, i, one)
    c = _gcd(ca, cb, one)
    pa = _divexact(a, ca)
    pb = _divexact(b, cb)
    if max(m[i] for m in pa) < max(m[i] for m in pb):
        pa, pb = pb, pa
    while True:
        if max(m[i] for m in pb) == 0:
            g = unit
            break
        r = _prem(pa, pb, i)
        if not r:
            g = pb
            break
        pa, pb = pb, _divexact(r, _content(r, i, one))
    return _monic(_mul(c, _monic(g, one)), one)


# ---------------------------------------------------------------------------


def _is_scalar(x) -> bool:
    try:
        field_of(x)
    except TypeError:
        return False
    return True


class MultiPoly:
    """Immutable sparse polynomial with named variables."""

    __slots__ = ("field", "variables", "terms")

    def __init__(self, terms: Mapping | None = None, variables: Sequence[str] = (),
                 field: Field = QQ):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"repeated variable names in {variables}")
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != len(variables):
                raise ValueError(f"exponent {m} does not match {variables}")
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
            c = field(c)
            if c:
                clean[m] = clean[m] + c if m in clean else c
        self.field = field
        self.variables = variables
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def _raw(cls, terms: dict, variables: tuple, field: Field) -> "MultiPoly":
        p = object.__new__(cls)
        p.field = field
        p.variables = variables
        p.terms = terms
        return p

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field: Field = QQ, variables: Sequence[str] = ()) -> "MultiPoly":
        return cls._raw({}, tuple(variables), field)

    @classmethod
    def const(cls, c, field: Field | None = None,
              variables: Sequence[str] = ()) -> "MultiPoly":
        field = field_of(c) if field is None else field
        variables = tuple(variables)
        c = field(c)
        return cls._raw({(0,) * len(variables): c} if c else {}, variables, field)

    @classmethod
    def var(cls, name: str, field: Field = QQ) -> "MultiPoly":
        return cls._raw({(1,): field.one}, (name,), field)

    @classmethod
    def gens(cls, names: Iterable[str] | str, field: Field = QQ) -> tuple:
        if isinstance(names, str):
            names = names.replace(",", " ").split()
        names = tuple(names)
        out = []
        for i, _ in enumerate(names):
            e = [0] * len(names)
            e[i] = 1
            out.append(cls._raw({tuple(e): field.one}, names, field))
        return tuple(out)

    # -- alignment -----------------------------------------------------------

    def with_variables(self, variables: Sequence[str],
                       field: Field | None = None) -> "MultiPoly":
        """Re-express over a superset of variables (and optionally a larger field)."""
        variables = tuple(variables)
        field = self.field if field is None else field
        if variables == self.variables and field is self.field:
            return self
        pos = {v: k for k, v in enumerate(variables)}
        idx = []
        for k, v in enumerate(self.variables):
            if v in pos:
                idx.append(pos[v])
            elif any(m[k] for m in self.terms):
                raise ValueError(f"variable {v} missing from {variables}")
            else:
                idx.append(None)
        terms = {}
        for m, c in self.terms.items():
            e = [0] * len(variables)
            for k, j in enumerate(idx):
                if j is not None:
                    e[j] = m[k]
            terms[tuple(e)] = c if field is self.field else field(c)
        return MultiPoly._raw(terms, variables, field)

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if _is_scalar(other):
            F = common_field(self.field, field_of(other))
            return MultiPoly.const(F(other), F, self.variables)
        raise TypeError(f"cannot combine polynomial with {other!r}")

    def _align(self, other: "MultiPoly"):
        F = common_field(self.field, other.field)
        if self.variables == other.variables:
            vs = self.variables
        else:
            vs = self.variables + tuple(v for v in other.variables if v not in self.variables)
        return vs, F, self.with_variables(vs, F).terms, other.with_variables(vs, F).terms

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        vs, F, a, b = self._align(other)
        return MultiPoly._raw(_add(a, b), vs, F)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(_neg(self.terms), self.variables, self.field)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        vs, F, a, b = self._align(other)
        return MultiPoly._raw(_sub(a, b), vs, F)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if not _is_scalar(other):
                return NotImplemented
            F = common_field(self.field, field_of(other))
            base = self.with_variables(self.variables, F)
            return MultiPoly._raw(_scale(base.terms, F(other)), self.variables, F)
        vs, F, a, b = self._align(other)
        return MultiPoly._raw(_mul(a, b), vs, F)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            if not other.is_constant():
                q = self.divexact(other)
                return q
            other = other.constant_value()
        if not _is_scalar(other):
            return NotImplemented
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        F = common_field(self.field, field_of(other))
        return self * (F.one / F(other))

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = MultiPoly.const(self.field.one, self.field, self.variables)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c) -> "MultiPoly":
        return self * c

    # -- queries -------------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return _is_const(self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        if not self.terms:
            return self.field.zero
        return next(iter(self.terms.values()))

    def coefficient(self, monomial: Mapping[str, int] | Sequence[int]):
        if isinstance(monomial, Mapping):
            if any(v not in self.variables and e for v, e in monomial.items()):
                return self.field.zero
            m = tuple(monomial.get(v, 0) for v in self.variables)
        else:
            m = tuple(monomial)
        return self.terms.get(m, self.field.zero)

    def total_degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(m) for m in self.terms)

    def degree(self, var: str | None = None):
        if var is None:
            if len(self.used_variables()) > 1:
                raise ValueError("degree() needs a variable for multivariate input")
            return self.total_degree()
        if not self.terms:
            return NEG_INF
        if var not in self.variables:
            return 0
        k = self.variables.index(var)
        return max(m[k] for m in self.terms)

    def used_variables(self) -> tuple:
        return tuple(v for k, v in enumerate(self.variables)
                     if any(m[k] for m in self.terms))

    def leading_term(self):
        """(exponent tuple, coefficient) of the grlex-largest term."""
        m = _lead(self.terms)
        return m, self.terms[m]

    def leading_coefficient(self):
        return self.leading_term()[1] if self.terms else self.field.zero

    def monic(self) -> "MultiPoly":
        return MultiPoly._raw(_monic(self.terms, self.field.one), self.variables, self.field)

    def items(self):
        """Terms as ({var: exp}, coeff) in descending grlex order."""
        for m in sorted(self.terms, key=grlex, reverse=True):
            yield {v: e for v, e in zip(self.variables, m) if e}, self.terms[m]

    # -- evaluation / substitution ------------------------------------------

    def evaluate(self, point):
        """Value at a point given as a sequence (declared variable order) or a
        mapping from variable name to scalar."""
        if isinstance(point, Mapping):
            missing = [v for v in self.used_variables() if v not in point]
            if missing:
                raise ValueError(f"no value for variables {missing}")
            vals = [point.get(v, 0) for v in self.variables]
        else:
            vals = list(point)
            if len(vals) != len(self.variables):
                raise ValueError(
                    f"point has {len(vals)} coordinates, polynomial has "
                    f"{len(self.variables)} variables")
        if not self.terms:
            return self.field.zero
        total = 0
        powers: dict = {}
        for m, c in self.terms.items():
            t = c
            for k, e in enumerate(m):
                if e:
                    key = (k, e)
                    pw = powers.get(key)
                    if pw is None:
                        pw = powers[key] = vals[k] ** e
                    t = t * pw
            total = total + t
        if isinstance(total, int):
            return self.field(total)
        return total

    __call__ = evaluate

    def subs(self, mapping: Mapping[str, object]) -> "MultiPoly":
        """Substitute scalars or polynomials for variables."""
        keep = tuple(v for v in self.variables if v not in mapping)
        result = MultiPoly.zero(self.field, keep)
        for m, c in self.terms.items():
            term_exp = tuple(e for v, e in zip(self.variables, m) if v not in mapping)
            t = MultiPoly._raw({term_exp: c}, keep, self.field)
            for v, e in zip(self.variables, m):
                if e and v in mapping:
                    t = t * (mapping[v] ** e)
            result = result + t
        return result

    def rename(self, mapping: Mapping[str, str]) -> "MultiPoly":
        vs = tuple(mapping.get(v, v) for v in self.variables)
        return MultiPoly._raw(dict(self.terms), vs, self.field)

    # -- division ------------------------------------------------------------

    def divexact(self, other: "MultiPoly") -> "MultiPoly":
        other = self._coerce(other)
        vs, F, a, b = self._align(other)
        q = _divexact(a, b)
        if q is None:
            raise ArithmeticError(f"{other} does not divide {self}")
        return MultiPoly._raw(q, vs, F)

    def divides(self, other: "MultiPoly") -> bool:
        vs, F, a, b = self._align(self._coerce(other))
        if not a:
            return not b
        return _divexact(b, a) is not None

    def gcd(self, other: "MultiPoly") -> "MultiPoly":
        vs, F, a, b = self._align(self._coerce(other))
        return MultiPoly._raw(_gcd(a, b, F.one), vs, F)

    # -- comparison / printing ----------------------------------------------

    def _canon(self):
        used = {k for k, v in enumerate(self.variables) if any(m[k] for m in self.terms)}
        return frozenset(
            (tuple((self.variables[k], m[k]) for k in sorted(used, key=lambda k: self.variables[k]) if m[k]), c)
            for m, c in self.terms.items()
        )

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self._canon() == other._canon()
        if _is_scalar(other):
            if not other:
                return not self.terms
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash(self._canon())

    def __repr__(self):
        return f"MultiPoly({str(self)!r}, {self.variables}, {self.field})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for mono, c in self.items():
            body = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono.items())
            neg, cs = _coef_str(c)
            if body:
                if cs == "1":
                    s = body
                else:
                    s = f"{cs}*{body}"
            else:
                s = cs
            if not out:
                out.append(("-" if neg else "") + s)
            else:
                out.append((" - " if neg else " + ") + s)
        return "".join(out)

    @classmethod
    def parse(cls, text: str, variables: Sequence[str] | None = None,
              field: Field = QQ) -> "MultiPoly":
        names = re.findall(r"[A-Za-z_][A-Za-z0-9_]*", text)
        if variables is None:
            variables = tuple(dict.fromkeys(names))
        variables = tuple(variables)
        unknown = set(names) - set(variables)
        if unknown:
            raise ValueError(f"unknown variables {sorted(unknown)}")
        gens = dict(zip(variables, cls.gens(variables, field))) if variables else {}
        val = parse_expression(
            text,
            number=lambda k: MultiPoly.const(field(k), field, variables),
            name=gens.__getitem__,
        )
        return val.with_variables(variables) if isinstance(val, MultiPoly) else \
            MultiPoly.const(val, field, variables)


def _coef_str(c):
    """(is_negative, text) for a coefficient inside a polynomial string."""
    if isinstance(c, Fraction):
        s = QQ.format(abs(c))
        return c < 0, s
    if isinstance(c, scalars.Fp):
        return False, str(c.v)
    s = str(c)
    if s.startswith("-") and _is_atomic(s[1:]):
        return True, s[1:]
    if _is_atomic(s):
        return False, s
    return False, f"({s})"


def _is_atomic(s: str) -> bool:
    return re.fullmatch(r"[A-Za-z0-9_/^]+", s) is not None


# ---------------------------------------------------------------------------
# expression parser shared with the rational function field

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def parse_expression(text: str, number, name):
    """Evaluate an arithmetic expression with ``+ - * / ^`` and parentheses,
    building values with ``number(int)`` and ``name(identifier)``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at {pos}")
        pos = m.end()
        if m.group(1):
            tokens.append(("num", int(m.group(1))))
        elif m.group(2):
            tokens.append(("name", m.group(2)))
        elif m.group(3):
            tokens.append(("op", "^" if m.group(3) == "**" else m.group(3)))
    tokens.append(("end", None))
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        t = tokens[i]
        i += 1
        return t

    def expr():
        v = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            w = term()
            v = v + w if op == "+" else v - w
        return v

    def term():
        v = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            w = unary()
            v = v * w if op == "*" else v / w
        return v

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        v = atom()
        if peek() == ("op", "^"):
            take()
            kind, e = take()
            if kind != "num":
                raise ValueError(f"exponent must be an integer in {text!r}")
            v = v ** e
        return v

    def atom():
        kind, val = take()
        if kind == "num":
            return number(val)
        if kind == "name":
            return name(val)
        if (kind, val) == ("op", "("):
            v = expr()
            if take() != ("op", ")"):
                raise ValueError(f"unbalanced parentheses in {text!r}")
            return v
        raise ValueError(f"unexpected token {val!r} in {text!r}")

    v = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input in {text!r}")
    return v


# ---------------------------------------------------------------------------
# univariate Euclidean operations (used by homalg over k[x])


def _univariate_var(*polys: MultiPoly):
    used = set()
    for p in polys:
        used.update(p.used_variables())
    if len(used) > 1:
        raise ValueError(f"univariate operation on polynomials in {sorted(used)}")
    return next(iter(used)) if used else None


def poly_divmod(a: MultiPoly, b: MultiPoly):
    """Euclidean division in k[x]: a = q*b + r with deg r < deg b."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    x = _univariate_var(a, b)
    F = common_field(a.field, b.field)
    if x is None or b.is_constant():
        return a / b.constant_value(), MultiPoly.zero(F, a.variables)
    A = a.with_variables((x,), F) if a.variables != (x,) else a
    B = b.with_variables((x,), F) if b.variables != (x,) else b
    db = B.degree(x)
    lc = B.terms[(db,)]
    r = dict(A.terms)
    q: dict = {}
    while r:
        dr = max(m[0] for m in r)
        if dr < db:
            break
        c = r[(dr,)] / lc
        q[(dr - db,)] = c
        r = _sub(r, {(m[0] + dr - db,): v * c for m, v in B.terms.items()})
    return MultiPoly._raw(q, (x,), F), MultiPoly._raw(r, (x,), F)


def poly_xgcd(a: MultiPoly, b: MultiPoly):
    """(g, s, t) with s*a + t*b = g, g monic (or zero)."""
    F = common_field(a.field, b.field)
    x = _univariate_var(a, b)
    vs = (x,) if x else ()
    one = MultiPoly.const(F.one, F, vs)
    zero = MultiPoly.zero(F, vs)
    r0, r1 = a.with_variables(vs, F), b.with_variables(vs, F)
    s0, s1, t0, t1 = one, zero, zero, one
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0:
        lc = r0.leading_coefficient()
        r0, s0, t0 = r0 / lc, s0 / lc, t0 / lc
    return r0, s0, t0


# ---------------------------------------------------------------------------
# Vandermonde weight


def vandermonde_poly(n: int, field: Field = QQ, prefix: str = "x") -> MultiPoly:
    """prod_{1 <= i < j <= n} (x_j - x_i) in variables x1..xn."""
    names = tuple(f"{prefix}{k}" for k in range(1, max(n, 0) + 1))
    gens = MultiPoly.gens(names, field) if names else ()
    p = MultiPoly.const(field.one, field, names)
    for j in range(len(gens)):
        for i in range(j):
            p = p * (gens[j] - gens[i])
    return p


def vandermonde_weight(z: Sequence):
    """prod_{i<j} (z_j - z_i); the empty product is 1."""
    z = list(z)
    w = None
    for j in range(len(z)):
        for i in range(j):
            d = z[j] - z[i]
            w = d if w is None else w * d
    if w is None:
        return scalars.common_field_of(z).one
    return w


def alternating_weights(z: Sequence) -> list:
    """The coefficients (-1)^j P(z with z_j removed), j = 1..len(z)."""
    z = list(z)
    one = scalars.common_field_of(z).one
    out = []
    for j in range(len(z)):
        rest = z[:j] + z[j + 1:]
        w = vandermonde_weight(rest) if len(rest) > 1 else one
        out.append(-w if j % 2 == 0 else w)
    return out


def lagrange_identity(f: MultiPoly, z: Sequence):
    """sum_{j=1}^{m} (-1)^j P(z without z_j) f(z_j) over m = len(z) distinct
    nodes.  Vanishes exactly when f agrees with a polynomial of degree
    <= m - 2 on the nodes; for monic f of degree m - 1 it equals
    (-1)^m P(z)."""
    z = list(z)
    if len(set(z)) != len(z):
        raise ValueError("repeated interpolation nodes")
    x = _univariate_var(f)
    vals = [f.evaluate({x: s}) if x else f.constant_value() for s in z]
    total = None
    for w, v in zip(alternating_weights(z), vals):
        t = w * v
        total = t if total is None else total + t
    return f.field.zero if total is None else total


def monomials_up_to(nvars: int, degree: int) -> list[tuple]:
    """All exponent tuples of total degree <= degree, ascending grlex."""
    if degree < 0:
        return []
    out = [m for m in itertools.product(range(degree + 1), repeat=nvars) if sum(m) <= degree]
    return sorted(out, key=grlex)
