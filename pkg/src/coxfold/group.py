"""Finite matrix groups over Q(tau).

Generators are :class:`~coxfold.exactnum.GoldenMatrix` instances.  Words
are tuples of generator labels; a generator set is either a sequence
(labelled 1, 2, ...) or a mapping from label to matrix, so that an affine
node can carry label 0.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .exactnum import GoldenMatrix, Vector, dot, vector_key
from .rootsys import RootSystem, dynkin_edges

__all__ = [
    "CapExceeded",
    "NonBipartite",
    "Orbit",
    "RelationResult",
    "RelationReport",
    "DEFAULT_GROUP_CAP",
    "reflection_matrix",
    "is_orthogonal",
    "word_matrix",
    "element_order",
    "two_coloring",
    "class_product",
    "dihedral_generators",
    "orbit",
    "enumerate_group",
    "verify_relations",
    "simple_reflections",
]

DEFAULT_GROUP_CAP = 20_000_000


class CapExceeded(RuntimeError):
    """A breadth-first closure grew past its configured cap."""


class NonBipartite(ValueError):
    pass


def reflection_matrix(alpha: Vector, gram: GoldenMatrix | None = None) -> GoldenMatrix:
    """Matrix of ``x -> x - 2 (x, a)/(a, a) a`` in the ambient coordinates."""
    aa = dot(alpha, alpha, gram)
    if not aa:
        raise ValueError("reflection in a zero-norm vector")
    g_alpha = gram.apply(alpha) if gram is not None else alpha
    c = 2 / aa
    n = len(alpha)
    rows = [
        [(1 if i == j else 0) - c * alpha[i] * g_alpha[j] for j in range(n)] for i in range(n)
    ]
    return GoldenMatrix.from_rows(rows)


def is_orthogonal(M: GoldenMatrix, gram: GoldenMatrix | None = None) -> bool:
    """Exact check of ``M^T G M == G``."""
    n = M.shape[0]
    G = gram if gram is not None else GoldenMatrix.identity(n)
    return M.T @ G @ M == G


def simple_reflections(sys: RootSystem) -> list[GoldenMatrix]:
    return [reflection_matrix(a, sys.gram) for a in sys.simple_roots]


def _gen_map(generators) -> dict[int, GoldenMatrix]:
    if isinstance(generators, Mapping):
        return dict(generators)
    return {i + 1: g for i, g in enumerate(generators)}


def word_matrix(generators, word: Sequence[int]) -> GoldenMatrix:
    gens = _gen_map(generators)
    if not word:
        n = next(iter(gens.values())).shape[0]
        return GoldenMatrix.identity(n)
    M = gens[word[0]]
    for letter in word[1:]:
        M = M @ gens[letter]
    return M


def element_order(M: GoldenMatrix, cap: int = 1000) -> int | None:
    """Smallest ``m <= cap`` with ``M**m == I``; ``None`` if there is none."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    P = M
    for m in range(1, cap + 1):
        if P.is_identity():
            return m
        P = P @ M
    return None


def two_coloring(diagram) -> tuple[frozenset[int], frozenset[int]]:
    """Proper 2-colouring of a tree diagram, 1-based; class of node 1 first.

    ``diagram`` is a RootSystem (orthogonality is then checked exactly) or a
    Cartan matrix.
    """
    sys = diagram if isinstance(diagram, RootSystem) else None
    cartan = sys.cartan if sys is not None else diagram
    n = len(cartan)
    adj: dict[int, set[int]] = {i: set() for i in range(1, n + 1)}
    for i, j in dynkin_edges(cartan):
        adj[i].add(j)
        adj[j].add(i)
    color: dict[int, int] = {}
    for start in range(1, n + 1):
        if start in color:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in color:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    raise NonBipartite(f"nodes {u} and {w} are adjacent and share a class")
    first = frozenset(i for i, c in color.items() if c == color[1])
    second = frozenset(range(1, n + 1)) - first
    if sys is not None:
        for cls in (first, second):
            for i in cls:
                for j in cls:
                    if i < j and sys.inner(sys.simple_roots[i - 1], sys.simple_roots[j - 1]):
                        raise NonBipartite(f"roots {i} and {j} are not orthogonal")
    return first, second


def class_product(reflections: Sequence[GoldenMatrix], cls) -> GoldenMatrix:
    """Product of the reflections indexed (1-based) by ``cls``, ascending.

    Factors of one class commute; this is checked rather than assumed.
    """
    idx = sorted(cls)
    for a in idx:
        for b in idx:
            if a < b:
                x, y = reflections[a - 1], reflections[b - 1]
                if x @ y != y @ x:
                    raise ValueError(f"reflections {a} and {b} do not commute")
    return word_matrix(reflections, idx)


def dihedral_generators(sys: RootSystem) -> tuple[GoldenMatrix, GoldenMatrix, int]:
    """``(R1, R2, h)`` with ``R1^2 = R2^2 = (R1 R2)^h = I``, h minimal."""
    refl = simple_reflections(sys)
    first, second = two_coloring(sys)
    R1 = class_product(refl, first)
    R2 = class_product(refl, second)
    h = element_order(R1 @ R2, cap=4 * sys.coxeter_number + 4)
    if h != sys.coxeter_number:
        raise AssertionError(f"order of R1 R2 is {h}, expected {sys.coxeter_number}")
    return R1, R2, h


@dataclass(frozen=True)
class Orbit:
    points: tuple[Vector, ...]
    seed: Vector
    generators: str = ""

    def __len__(self):
        return len(self.points)

    def __contains__(self, v):
        return vector_key(tuple(v)) in {vector_key(p) for p in self.points}


def _column(v: Vector) -> GoldenMatrix:
    return GoldenMatrix.from_columns([v])


def _uncolumn(c: GoldenMatrix) -> Vector:
    return tuple(c[i, 0] for i in range(c.shape[0]))


def orbit(generators, seed: Vector, cap: int = 1_000_000, description: str = "") -> Orbit:
    """Breadth-first closure of ``seed``; points sorted canonically."""
    gens = list(_gen_map(generators).values())
    start = _column(tuple(seed))
    seen = {start.key(): start}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g @ x
                k = y.key()
                if k not in seen:
                    seen[k] = y
                    nxt.append(y)
                    if len(seen) > cap:
                        raise CapExceeded(f"orbit exceeded cap {cap}")
        frontier = nxt
    pts = sorted((_uncolumn(c) for c in seen.values()), key=vector_key)
    return Orbit(tuple(pts), tuple(seed), description)


def enumerate_group(generators, cap: int = DEFAULT_GROUP_CAP) -> int:
    """Exact order of the group generated by ``generators`` (BFS)."""
    gens = list(_gen_map(generators).values())
    n = gens[0].shape[0]
    e = GoldenMatrix.identity(n)
    seen = {e.key()}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x @ g
                k = y.key()
                if k not in seen:
                    seen.add(k)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise CapExceeded(f"group exceeded cap {cap}")
        frontier = nxt
    return len(seen)


@dataclass(frozen=True)
class RelationResult:
    word: tuple[int, ...]
    exponent: int
    holds: bool
    minimal: bool
    measured_order: int | None

    @property
    def passed(self) -> bool:
        return self.holds and self.minimal


@dataclass(frozen=True)
class RelationReport:
    results: tuple[RelationResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def as_dict(self) -> list[dict]:
        return [
            {
                "word": list(r.word),
                "exponent": r.exponent,
                "holds": r.holds,
                "minimal": r.minimal,
                "measured_order": r.measured_order,
            }
            for r in self.results
        ]


def _proper_divisors(m: int) -> list[int]:
    return [d for d in range(1, m) if m % d == 0]


def verify_relations(generators, relations: Sequence[tuple[Sequence[int], int]]) -> RelationReport:
    """Check ``matrix(word)**m == I`` with ``m`` minimal for every relation.

    Minimality is tested on the proper divisors of ``m``, which is enough
    once the relation itself holds.
    """
    gens = _gen_map(generators)
    out = []
    for word, m in relations:
        M = word_matrix(gens, word)
        holds = (M**m).is_identity()
        minimal = holds and not any((M**d).is_identity() for d in _proper_divisors(m))
        measured = element_order(M, cap=max(4 * m, 64))
        out.append(RelationResult(tuple(word), m, holds, minimal, measured))
    return RelationReport(tuple(out))
