"""Matrices over a ring as maps of free modules, Smith normal form over
Euclidean rings, and finitely presented modules over a PID."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .rings import RingSpec, ring_from_name


class ModuleMap:
    """A map R^cols -> R^rows, stored as a rows x cols matrix."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: RingSpec, entries: Sequence[Sequence], cols: int | None = None):
        entries = [[ring(v) for v in row] for row in entries]
        if cols is None:
            if not entries:
                raise ValueError("give cols explicitly for a matrix with no rows")
            cols = len(entries[0])
        if any(len(r) != cols for r in entries):
            raise ValueError("ragged matrix")
        self.ring = ring
        self.rows = len(entries)
        self.cols = cols
        self.entries = entries

    @classmethod
    def identity(cls, ring: RingSpec, n: int) -> "ModuleMap":
        return cls(ring, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, ring: RingSpec, rows: int, cols: int) -> "ModuleMap":
        return cls(ring, [[ring.zero] * cols for _ in range(rows)], cols)

    @classmethod
    def column(cls, ring: RingSpec, values: Sequence) -> "ModuleMap":
        return cls(ring, [[v] for v in values], 1)

    @property
    def shape(self) -> tuple:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column_vector(self, j: int) -> list:
        return [r[j] for r in self.entries]

    def columns(self) -> list:
        return [self.column_vector(j) for j in range(self.cols)]

    def transpose(self) -> "ModuleMap":
        return ModuleMap(self.ring, [list(c) for c in self.columns()], self.rows)

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        """Composition self o other."""
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch {self.ring} vs {other.ring}")
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        zero = self.ring.zero
        out = []
        for row in self.entries:
            new = []
            for j in range(other.cols):
                s = zero
                for k, a in enumerate(row):
                    if a:
                        b = other.entries[k][j]
                        if b:
                            s = s + a * b
                new.append(s)
            out.append(new)
        return ModuleMap(self.ring, out, other.cols)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ModuleMap(self.ring, [[a + b for a, b in zip(r, s)]
                                     for r, s in zip(self.entries, other.entries)], self.cols)

    def __neg__(self):
        return ModuleMap(self.ring, [[-a for a in r] for r in self.entries], self.cols)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.ring, [[c * a for a in r] for r in self.entries], self.cols)

    def apply(self, v: Sequence) -> list:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        zero = self.ring.zero
        out = []
        for row in self.entries:
            s = zero
            for a, b in zip(row, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return out

    def is_zero(self) -> bool:
        return not any(a for r in self.entries for a in r)

    def hstack(self, other: "ModuleMap") -> "ModuleMap":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return ModuleMap(self.ring, [r + s for r, s in zip(self.entries, other.entries)],
                         self.cols + other.cols)

    def vstack(self, other: "ModuleMap") -> "ModuleMap":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return ModuleMap(self.ring, self.entries + other.entries, self.cols)

    def select_columns(self, idx: Sequence[int]) -> "ModuleMap":
        return ModuleMap(self.ring, [[r[j] for j in idx] for r in self.entries], len(idx))

    def __eq__(self, other):
        return (isinstance(other, ModuleMap) and self.shape == other.shape
                and all(a == b for r, s in zip(self.entries, other.entries) for a, b in zip(r, s)))

    def __hash__(self):
        return hash(self.shape)

    def __repr__(self):
        body = "; ".join(", ".join(self.ring.format(a) for a in r) for r in self.entries)
        return f"ModuleMap({self.ring}, [{body}])"

    # -- serialization: JSON arrays of ring-element strings --

    def to_json(self) -> dict:
        return {"ring": self.ring.name, "rows": self.rows, "cols": self.cols,
                "matrix": [[self.ring.format(a) for a in r] for r in self.entries]}

    @classmethod
    def from_json(cls, data) -> "ModuleMap":
        if isinstance(data, str):
            data = json.loads(data)
        ring = ring_from_name(data["ring"])
        m = cls(ring, [[ring.parse(a) for a in r] for r in data["matrix"]], data["cols"])
        if m.rows != data.get("rows", m.rows):
            raise ValueError("declared row count disagrees with matrix")
        return m


def kron(a: ModuleMap, b: ModuleMap) -> ModuleMap:
    """Kronecker product; basis of the tensor product ordered (i, j) lexicographically."""
    entries = []
    for ra in a.entries:
        for rb in b.entries:
            entries.append([x * y for x in ra for y in rb])
    return ModuleMap(a.ring, entries, a.cols * b.cols)


def block_diagonal(ring: RingSpec, blocks: Sequence[ModuleMap]) -> ModuleMap:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[ring.zero] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r0 + i][c0 + j] = b.entries[i][j]
        r0 += b.rows
        c0 += b.cols
    return ModuleMap(ring, out, cols)


def determinant(m: ModuleMap):
    """Fraction-free Bareiss elimination; exact divisions only."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    R = m.ring
    n = m.rows
    if n == 0:
        return R.one
    A = [list(r) for r in m.entries]
    sign = 1
    prev = R.one
    for k in range(n - 1):
        if not A[k][k]:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return R.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = R.divexact(A[i][j] * A[k][k] - A[i][k] * A[k][j], prev)
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return d if sign == 1 else -d


def is_unimodular(m: ModuleMap) -> bool:
    return m.rows == m.cols and m.ring.is_unit(determinant(m))


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    U: ModuleMap
    D: ModuleMap
    V: ModuleMap

    def __iter__(self):
        return iter((self.U, self.D, self.V))

    @property
    def diagonal(self) -> list:
        n = min(self.D.rows, self.D.cols)
        return [self.D.entries[i][i] for i in range(n)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(m: ModuleMap) -> SmithForm:
    """U m V = D with D diagonal, d_1 | d_2 | ..., U and V invertible."""
    R = m.ring
    if not R.euclidean:
        raise ValueError(f"Smith normal form needs a Euclidean ring, not {R}")
    nr, nc = m.rows, m.cols
    A = [list(r) for r in m.entries]
    U = [[R.one if i == j else R.zero for j in range(nr)] for i in range(nr)]
    V = [[R.one if i == j else R.zero for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        for M in (A, U):
            M[dst] = [a + q * b if b else a for a, b in zip(M[dst], M[src])]

    def add_col(dst, src, q):
        for M in (A, V):
            for r in M:
                if r[src]:
                    r[dst] = r[dst] + q * r[src]

    for t in range(min(nr, nc)):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                a = A[i][j]
                if a and (best is None or R.norm(a) < best[0]):
                    best = (R.norm(a), i, j)
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        while True:
            changed = False
            for i in range(t + 1, nr):
                if A[i][t]:
                    q, r = R.divmod(A[i][t], A[t][t])
                    add_row(i, t, -q)
                    if r:
                        swap_rows(i, t)
                        changed = True
            for j in range(t + 1, nc):
                if A[t][j]:
                    q, r = R.divmod(A[t][j], A[t][t])
                    add_col(j, t, -q)
                    if r:
                        swap_cols(j, t)
                        changed = True
            if changed:
                continue
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if A[i][j] and not R.divides(A[t][t], A[i][j])), None)
            if bad is None:
                break
            add_row(t, bad[0], R.one)
        u = R.unit_normal(A[t][t])
        if u != R.one:
            A[t] = [a * u for a in A[t]]
            U[t] = [a * u for a in U[t]]
    return SmithForm(ModuleMap(R, U, nr), ModuleMap(R, A, nc), ModuleMap(R, V, nc))


def check_smith(m: ModuleMap, sf: SmithForm) -> list[str]:
    """Independent postcondition check; returns a list of violations."""
    R = m.ring
    U, D, V = sf
    problems = []
    if U @ m @ V != D:
        problems.append("U m V != D")
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j and D.entries[i][j]:
                problems.append(f"off-diagonal entry at {(i, j)}")
    diag = sf.diagonal
    for a, b in zip(diag, diag[1:]):
        if not R.divides(a, b):
            problems.append(f"{R.format(a)} does not divide {R.format(b)}")
    if not is_unimodular(U):
        problems.append("U not invertible")
    if not is_unimodular(V):
        problems.append("V not invertible")
    return problems


def invariant_factors(m: ModuleMap) -> list:
    return [d for d in smith_normal_form(m).diagonal if d]


# ---------------------------------------------------------------------------
# submodules of free modules over a PID


def kernel_basis(m: ModuleMap) -> ModuleMap:
    """Columns form a basis of ker(m) (a free submodule of R^cols)."""
    sf = smith_normal_form(m)
    r = sf.rank
    return sf.V.select_columns(list(range(r, m.cols)))


def solve_over_ring(m: ModuleMap, b: Sequence):
    """Some x with m x = b, or None when b is not in the image."""
    R = m.ring
    sf = smith_normal_form(m)
    Ub = sf.U.apply(list(b))
    diag = sf.diagonal
    y = [R.zero] * m.cols
    for i, v in enumerate(Ub):
        d = diag[i] if i < len(diag) else R.zero
        if d:
            if not R.divides(d, v):
                return None
            y[i] = R.divexact(v, d)
        elif v:
            return None
    return sf.V.apply(y)


def in_image(m: ModuleMap, v: Sequence) -> bool:
    if m.cols == 0:
        return not any(v)
    return solve_over_ring(m, v) is not None


def image_contains(big: ModuleMap, small: ModuleMap) -> bool:
    return all(in_image(big, c) for c in small.columns())


@dataclass(frozen=True)
class ModuleInvariants:
    """Structure of a finitely generated module over a PID: R^free + sum R/(t)."""

    free_rank: int
    torsion: tuple

    def describe(self, ring: RingSpec) -> str:
        parts = [f"{ring.name}/({ring.format(t)})" for t in self.torsion]
        if self.free_rank:
            parts.insert(0, ring.name if self.free_rank == 1 else f"{ring.name}^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


class FPModule:
    """R^gens / image(relations) over a Euclidean ring."""

    def __init__(self, ring: RingSpec, gens: int, relations: ModuleMap | None = None):
        if relations is None:
            relations = ModuleMap.zeros(ring, gens, 0)
        if relations.rows != gens:
            raise ValueError("relation matrix must have one row per generator")
        self.ring = ring
        self.gens = gens
        self.relations = relations

    def invariants(self) -> ModuleInvariants:
        R = self.ring
        if self.relations.cols == 0:
            return ModuleInvariants(self.gens, ())
        diag = [d for d in smith_normal_form(self.relations).diagonal if d]
        torsion = tuple(d for d in diag if not R.is_unit(d))
        return ModuleInvariants(self.gens - len(diag), torsion)

    def is_zero(self) -> bool:
        inv = self.invariants()
        return inv.free_rank == 0 and not inv.torsion

    def isomorphic(self, other: "FPModule") -> bool:
        return self.invariants() == other.invariants()


class FPHom:
    """A map of presented modules induced by a matrix on generators."""

    def __init__(self, src: FPModule, dst: FPModule, matrix: ModuleMap):
        if matrix.shape != (dst.gens, src.gens):
            raise ValueError("matrix shape does not match generator counts")
        self.src, self.dst, self.matrix = src, dst, matrix

    def is_well_defined(self) -> bool:
        return image_contains(self.dst.relations, self.matrix @ self.src.relations)

    def _preimage_of_relations(self) -> ModuleMap:
        """Generators of {x : matrix x in im(dst.relations)}."""
        joined = self.matrix.hstack(-self.dst.relations) if self.dst.relations.cols else self.matrix
        K = kernel_basis(joined)
        return ModuleMap(self.src.ring, K.entries[:self.src.gens], K.cols)

    def is_injective(self) -> bool:
        P = self._preimage_of_relations()
        if P.cols == 0:
            return True
        if self.src.relations.cols == 0:
            return P.is_zero()
        return image_contains(self.src.relations, P)

    def is_surjective(self) -> bool:
        R = self.src.ring
        span = self.matrix.hstack(self.dst.relations) if self.dst.relations.cols else self.matrix
        for k in range(self.dst.gens):
            e = [R.one if i == k else R.zero for i in range(self.dst.gens)]
            if not in_image(span, e):
                return False
        return True


def is_exact_at(f: FPHom, g: FPHom) -> bool:
    """im f = ker g for A --f--> B --g--> C."""
    if f.dst is not g.src and f.dst.gens != g.src.gens:
        raise ValueError("maps are not composable")
    comp = g.matrix @ f.matrix
    if not image_contains(g.dst.relations, comp) if g.dst.relations.cols else not comp.is_zero():
        return False
    ker = g._preimage_of_relations()
    span = f.matrix.hstack(g.src.relations) if g.src.relations.cols else f.matrix
    return image_contains(span, ker)
