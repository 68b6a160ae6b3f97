"""Bounded chain complexes of free modules, homology over a PID, and
tensor products of complexes."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .matrices import (FPModule, ModuleInvariants, ModuleMap, block_diagonal, kron,
                       smith_normal_form)
from .rings import RingSpec, ring_from_name


class ChainComplex:
    """C_low <- C_{low+1} <- ... <- C_high.

    ``maps[k]`` is the differential C_{low+k+1} -> C_{low+k}, so a complex
    with m maps has m+1 modules.  ``ranks`` are the free ranks of the
    modules, needed when a module has rank 0 or the complex has no maps."""

    def __init__(self, ring: RingSpec, maps: Sequence[ModuleMap] = (), low: int = 0,
                 ranks: Sequence[int] | None = None):
        maps = list(maps)
        if ranks is None:
            if not maps:
                raise ValueError("give ranks for a complex without differentials")
            ranks = [maps[0].rows] + [m.cols for m in maps]
        ranks = list(ranks)
        if len(ranks) != len(maps) + 1:
            raise ValueError("need one more module than differentials")
        for k, m in enumerate(maps):
            if m.ring != ring:
                raise ValueError(f"differential {k} is over {m.ring}, not {ring}")
            if m.shape != (ranks[k], ranks[k + 1]):
                raise ValueError(f"differential {k} has shape {m.shape}, "
                                 f"expected {(ranks[k], ranks[k + 1])}")
        for k in range(len(maps) - 1):
            if not (maps[k] @ maps[k + 1]).is_zero():
                raise ValueError(f"d o d != 0 at degree {low + k + 1}")
        self.ring = ring
        self.maps = maps
        self.low = low
        self.ranks = ranks

    @classmethod
    def concentrated(cls, ring: RingSpec, rank: int, degree: int = 0) -> "ChainComplex":
        return cls(ring, [], degree, [rank])

    @property
    def high(self) -> int:
        return self.low + len(self.maps)

    def degrees(self) -> range:
        return range(self.low, self.high + 1)

    def rank(self, i: int) -> int:
        if self.low <= i <= self.high:
            return self.ranks[i - self.low]
        return 0

    def differential(self, i: int) -> ModuleMap:
        """d_i : C_i -> C_{i-1} (zero map outside the stored range)."""
        if self.low < i <= self.high:
            return self.maps[i - self.low - 1]
        return ModuleMap.zeros(self.ring, self.rank(i - 1), self.rank(i))

    def homology(self, i: int) -> "HomologyGroup":
        """H_i over a Euclidean ring via Smith normal form.

        ker d_i is a summand of C_i, so the torsion of H_i is read off the
        invariant factors of d_{i+1}."""
        if not self.ring.euclidean:
            raise ValueError(f"homology needs a Euclidean ring, not {self.ring}")
        n = self.rank(i)
        d_out = self.differential(i)
        d_in = self.differential(i + 1)
        rank_out = smith_normal_form(d_out).rank if d_out.rows and d_out.cols else 0
        if d_in.rows and d_in.cols:
            diag = [d for d in smith_normal_form(d_in).diagonal if d]
        else:
            diag = []
        torsion = tuple(d for d in diag if not self.ring.is_unit(d))
        return HomologyGroup(self.ring, n - rank_out - len(diag), torsion)

    def __eq__(self, other):
        return (isinstance(other, ChainComplex) and self.ring == other.ring
                and self.low == other.low and self.ranks == other.ranks
                and self.maps == other.maps)

    def __hash__(self):
        return hash((self.low, tuple(self.ranks)))

    def to_json(self) -> dict:
        return {"ring": self.ring.name, "low": self.low, "ranks": self.ranks,
                "maps": [m.to_json()["matrix"] for m in self.maps]}

    @classmethod
    def from_json(cls, data) -> "ChainComplex":
        if isinstance(data, str):
            data = json.loads(data)
        ring = ring_from_name(data["ring"])
        ranks = data["ranks"]
        maps = [ModuleMap(ring, [[ring.parse(a) for a in r] for r in mat], ranks[k + 1])
                for k, mat in enumerate(data["maps"])]
        return cls(ring, maps, data.get("low", 0), ranks)


@dataclass(frozen=True)
class HomologyGroup:
    ring: RingSpec
    free_rank: int
    torsion: tuple

    @property
    def invariants(self) -> ModuleInvariants:
        return ModuleInvariants(self.free_rank, self.torsion)

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def as_module(self) -> FPModule:
        k = len(self.torsion)
        n = self.free_rank + k
        rel = [[self.ring.zero] * k for _ in range(n)]
        for j, t in enumerate(self.torsion):
            rel[self.free_rank + j][j] = t
        return FPModule(self.ring, n, ModuleMap(self.ring, rel, k))

    def __str__(self):
        return self.invariants.describe(self.ring)


def _blocks(c1: ChainComplex, c2: ChainComplex, k: int) -> list[tuple[int, int]]:
    """(p, q) with p + q = k, ascending p, both degrees present."""
    return [(p, k - p) for p in c1.degrees() if c2.low <= k - p <= c2.high]


def tensor_complexes(c1: ChainComplex, c2: ChainComplex) -> ChainComplex:
    """Total complex of C1 (x) C2 with d(a (x) b) = da (x) b + (-1)^p a (x) db.

    The basis of degree k lists the blocks C1_p (x) C2_q by ascending p,
    each in Kronecker order."""
    if c1.ring != c2.ring:
        raise ValueError(f"ring mismatch {c1.ring} vs {c2.ring}")
    R = c1.ring
    low = c1.low + c2.low
    high = c1.high + c2.high
    ranks = [sum(c1.rank(p) * c2.rank(q) for p, q in _blocks(c1, c2, k))
             for k in range(low, high + 1)]
    maps = []
    for k in range(low + 1, high + 1):
        src = _blocks(c1, c2, k)
        dst = _blocks(c1, c2, k - 1)
        col_blocks = []
        for p, q in src:
            width = c1.rank(p) * c2.rank(q)
            parts = []
            for p2, q2 in dst:
                if p2 == p - 1 and q2 == q:
                    part = kron(c1.differential(p), ModuleMap.identity(R, c2.rank(q)))
                elif p2 == p and q2 == q - 1:
                    part = kron(ModuleMap.identity(R, c1.rank(p)), c2.differential(q))
                    if p % 2:
                        part = -part
                else:
                    part = ModuleMap.zeros(R, c1.rank(p2) * c2.rank(q2), width)
                parts.append(part)
            col = parts[0]
            for part in parts[1:]:
                col = col.vstack(part)
            col_blocks.append(col)
        if col_blocks:
            d = col_blocks[0]
            for b in col_blocks[1:]:
                d = d.hstack(b)
        else:
            d = ModuleMap.zeros(R, ranks[k - 1 - low], 0)
        maps.append(d)
    return ChainComplex(R, maps, low, ranks)


def two_term(d: ModuleMap, low: int = 0) -> ChainComplex:
    """The complex  target <-d- source  with the target in degree ``low``."""
    return ChainComplex(d.ring, [d], low)


def resolution_tensor_map(d1: ModuleMap, d2: ModuleMap) -> ModuleMap:
    """P1 (x) P1' -> (P2 (x) P1') + (P1 (x) P2') given by d1 (x) 1 and 1 (x) d2,
    for two-term resolutions d1 : P1 -> P2, d2 : P1' -> P2'."""
    R = d1.ring
    top = kron(d1, ModuleMap.identity(R, d2.cols))
    bottom = kron(ModuleMap.identity(R, d1.cols), d2)
    return top.vstack(bottom)


def matches_tensor_top(d1: ModuleMap, d2: ModuleMap) -> bool:
    """The top differential of the tensor of the two-term complexes equals
    resolution_tensor_map(d1, d2) with the second block negated (Koszul sign)."""
    total = tensor_complexes(two_term(d1), two_term(d2))
    top = total.maps[-1]
    e = resolution_tensor_map(d1, d2)
    k = d1.rows * d2.cols
    R = d1.ring
    signs = [[R.one if i == j else R.zero for j in range(e.rows)] for i in range(e.rows)]
    for i in range(k, e.rows):
        signs[i][i] = -R.one
    return top == ModuleMap(R, signs, e.rows) @ e


__all__ = [
    "ChainComplex", "HomologyGroup", "tensor_complexes", "two_term", "resolution_tensor_map",
    "matches_tensor_top", "block_diagonal",
]
