"""Finite Erdos-Rado style searches.

Subset mode colours the (r+1)-element subsets of a ground set; box mode
colours ordered (r+1)-tuples (repeats allowed) by a symmetric map.  Both
searches are complete backtracking over increasing index sequences, so the
first hit in canonical order is returned and ``Exhausted`` is a proof that
no monochromatic object of the requested size exists.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence


class Coloring:
    """Total colouring of (r+1)-subsets, or of symmetric (r+1)-tuples in box mode.

    Keys of ``colors`` are index tuples into ``ground``: sorted and distinct
    in subset mode, arbitrary in box mode.
    """

    __slots__ = ("ground", "arity", "box", "colors", "_index")

    def __init__(self, ground: Sequence, arity: int, colors: Mapping, box: bool = False):
        self.ground = tuple(ground)
        if len(set(self.ground)) != len(self.ground):
            raise ValueError("ground set has repeated labels")
        if arity < 1:
            raise ValueError("arity must be at least 1")
        self.arity = arity
        self.box = box
        self._index = {g: k for k, g in enumerate(self.ground)}
        table = {}
        for key, c in colors.items():
            idx = tuple(self._index[g] for g in key)
            if len(idx) != arity:
                raise ValueError(f"key {key} has wrong arity")
            if not box:
                if len(set(idx)) != arity:
                    raise ValueError(f"subset key {key} has repeats")
                idx = tuple(sorted(idx))
            table[idx] = int(c)
        expected = (itertools.product(range(len(self.ground)), repeat=arity) if box
                    else itertools.combinations(range(len(self.ground)), arity))
        for idx in expected:
            if idx not in table:
                raise ValueError(f"colouring is not total: missing {self.labels(idx)}")
            if box and table[idx] != table[tuple(sorted(idx))]:
                raise ValueError(f"box colouring not symmetric at {self.labels(idx)}")
        self.colors = table

    @classmethod
    def from_function(cls, ground: Sequence, arity: int, fn: Callable,
                      box: bool = False) -> "Coloring":
        ground = tuple(ground)
        keys = (itertools.product(ground, repeat=arity) if box
                else itertools.combinations(ground, arity))
        return cls(ground, arity, {k: fn(*k) for k in keys}, box)

    def labels(self, idx: Iterable[int]) -> tuple:
        return tuple(self.ground[i] for i in idx)

    def color(self, *elements) -> int:
        idx = tuple(self._index[g] for g in elements)
        return self.colors[idx if self.box else tuple(sorted(idx))]

    def to_json(self) -> dict:
        return {
            "ground": list(self.ground),
            "arity": self.arity,
            "box": self.box,
            "colors": [[list(self.labels(k)), c] for k, c in sorted(self.colors.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Coloring":
        if "builtin" in data:
            return builtin(data["builtin"], **data.get("params", {}))
        return cls(data["ground"], data["arity"],
                   {tuple(k): c for k, c in data["colors"]}, data.get("box", False))


@dataclass(frozen=True)
class MonoSubset:
    subset: tuple
    color: int

    def to_json(self) -> dict:
        return {"kind": "subset", "subset": list(self.subset), "color": self.color}


@dataclass(frozen=True)
class MonoBox:
    sides: tuple
    color: int

    def to_json(self) -> dict:
        return {"kind": "box", "sides": [list(s) for s in self.sides], "color": self.color}


@dataclass(frozen=True)
class Exhausted:
    explored: int = 0

    def to_json(self) -> dict:
        return {"kind": "exhausted", "explored": self.explored}


def find_mono_subset(c: Coloring, q: int):
    """A q-subset all of whose (r+1)-subsets share one colour, or Exhausted."""
    if c.box:
        raise ValueError("find_mono_subset needs a subset-mode colouring")
    k = c.arity
    n = len(c.ground)
    if q < k:
        raise ValueError(f"target size {q} below arity {k}")
    if q > n:
        raise ValueError(f"target size {q} exceeds ground set of size {n}")
    colors = c.colors
    explored = 0

    def extend(chosen: list, start: int, color):
        nonlocal explored
        if len(chosen) == q:
            return chosen, color
        for e in range(start, n - (q - len(chosen)) + 1):
            explored += 1
            col = color
            ok = True
            for sub in itertools.combinations(chosen, k - 1):
                cc = colors[sub + (e,)]
                if col is None:
                    col = cc
                elif cc != col:
                    ok = False
                    break
            if ok:
                found = extend(chosen + [e], e + 1, col)
                if found:
                    return found
        return None

    found = extend([], 0, None)
    if found is None:
        return Exhausted(explored)
    chosen, color = found
    if color is None:
        color = colors[tuple(chosen[:k])]
    return MonoSubset(c.labels(chosen), color)


def verify_mono_subset(c: Coloring, subset: Sequence, color: int) -> bool:
    subset = list(subset)
    if len(set(subset)) != len(subset) or not set(subset) <= set(c.ground):
        return False
    return all(c.color(*s) == color for s in itertools.combinations(subset, c.arity))


def find_mono_box(c: Coloring, sizes: Sequence[int], disjoint: bool = False):
    """Subsets S_1..S_{r+1} of the given sizes with prod S_i in one colour class.

    Sides may overlap unless ``disjoint``.  Sides are grown round-robin (the
    shortest side first) with increasing indices, which enumerates every box
    exactly once."""
    if not c.box:
        raise ValueError("find_mono_box needs a box-mode colouring")
    sizes = list(sizes)
    k = c.arity
    n = len(c.ground)
    if len(sizes) != k:
        raise ValueError(f"need {k} side sizes, got {len(sizes)}")
    if any(s < 1 or s > n for s in sizes):
        raise ValueError(f"side sizes must lie in 1..{n}")
    if disjoint and sum(sizes) > n:
        raise ValueError("disjoint sides do not fit in the ground set")
    colors = c.colors
    sides: list[list[int]] = [[] for _ in range(k)]
    explored = 0

    def next_axis():
        open_axes = [a for a in range(k) if len(sides[a]) < sizes[a]]
        if not open_axes:
            return None
        return min(open_axes, key=lambda a: (len(sides[a]), a))

    def search(color):
        nonlocal explored
        a = next_axis()
        if a is None:
            return color
        start = sides[a][-1] + 1 if sides[a] else 0
        used = {e for b in range(k) if b != a for e in sides[b]} if disjoint else ()
        need = sizes[a] - len(sides[a])
        for e in range(start, n - need + 1):
            if e in used:
                continue
            explored += 1
            col = color
            ok = True
            others = [sides[b] if b != a else [e] for b in range(k)]
            if all(others):
                for t in itertools.product(*others):
                    cc = colors[t]
                    if col is None:
                        col = cc
                    elif cc != col:
                        ok = False
                        break
            if ok:
                sides[a].append(e)
                got = search(col)
                if got is not None:
                    return got
                sides[a].pop()
        return None

    color = search(None)
    if color is None:
        return Exhausted(explored)
    return MonoBox(tuple(c.labels(s) for s in sides), color)


def verify_mono_box(c: Coloring, sides: Sequence[Sequence], color: int,
                    disjoint: bool = False) -> bool:
    if len(sides) != c.arity:
        return False
    for s in sides:
        if len(set(s)) != len(s) or not set(s) <= set(c.ground):
            return False
    if disjoint:
        flat = [e for s in sides for e in s]
        if len(set(flat)) != len(flat):
            return False
    return all(c.color(*t) == color for t in itertools.product(*sides))


# ---------------------------------------------------------------------------
# builtin families


def pentagon() -> Coloring:
    """K5 with the 5-cycle in colour 0 and the pentagram in colour 1."""
    return Coloring.from_function(range(5), 2, lambda a, b: 0 if (b - a) % 5 in (1, 4) else 1)


def constant(n: int, arity: int = 2, box: bool = False, color: int = 0) -> Coloring:
    return Coloring.from_function(range(n), arity, lambda *_: color, box)


def parity(n: int, box: bool = True) -> Coloring:
    """Pairs coloured 1 when both ends have the same parity."""
    return Coloring.from_function(range(n), 2, lambda a, b: int(a % 2 == b % 2), box)


def random_coloring(n: int, arity: int = 2, ncolors: int = 2, seed: int = 0,
                    box: bool = False) -> Coloring:
    rng = random.Random(seed)
    base = {k: rng.randrange(ncolors) for k in itertools.combinations_with_replacement(range(n), arity)}
    return Coloring.from_function(range(n), arity, lambda *t: base[tuple(sorted(t))], box)


def graph_coloring(n: int, code: int) -> Coloring:
    """The 2-colouring of the pairs of {0..n-1} whose bits (pairs in
    lexicographic order) are given by ``code``."""
    pairs = list(itertools.combinations(range(n), 2))
    return Coloring(range(n), 2, {p: (code >> i) & 1 for i, p in enumerate(pairs)})


def all_graph_colorings(n: int):
    m = n * (n - 1) // 2
    for code in range(1 << m):
        yield graph_coloring(n, code)


_BUILTINS = {
    "pentagon": lambda: pentagon(),
    "constant": constant,
    "parity": parity,
    "random": random_coloring,
    "graph": graph_coloring,
}


def builtin(name: str, **params) -> Coloring:
    try:
        make = _BUILTINS[name]
    except KeyError:
        raise ValueError(f"unknown builtin colouring {name!r}; have {sorted(_BUILTINS)}") from None
    return make(**params)


def load_coloring(text: str) -> Coloring:
    return Coloring.from_json(json.loads(text))


def ramsey_threshold(q: int, max_n: int, arity: int = 2) -> dict:
    """For 2-colourings of pairs: the least n <= max_n such that every
    colouring of K_n has a monochromatic q-subset (exhaustive), with the
    per-n count of colourings that avoid one."""
    if arity != 2:
        raise ValueError("exhaustive threshold sweep is implemented for pairs only")
    avoiding = {}
    for n in range(q, max_n + 1):
        avoiding[n] = sum(1 for c in all_graph_colorings(n)
                          if isinstance(find_mono_subset(c, q), Exhausted))
        if avoiding[n] == 0:
            return {"q": q, "threshold": n, "avoiding": avoiding}
    return {"q": q, "threshold": None, "avoiding": avoiding}
