"""Root and weight lattices, and the distinguished A_n polytopes.

All output is exact.  A_n objects live in the sum-zero hyperplane of
R^(n+1) in ``l``-coordinates (see :mod:`coxfold.rootsys`).
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .exactnum import ZERO, GoldenMatrix, Vector, dot, golden, vadd, vector_key, vscale
from .group import CapExceeded, orbit, reflection_matrix
from .rootsys import RootSystem, build_root_system, k_basis, weights_an

__all__ = [
    "PointSet",
    "LatticeSpec",
    "parse_lattice",
    "lattice_basis",
    "lattice_ball",
    "root_lattice_ball",
    "an_generators",
    "root_polytope_an",
    "voronoi_vertices_an",
    "delone_paired_simplices",
    "permutohedron",
    "diplo_simplex",
    "is_invariant",
    "BALL_CAP",
]

BALL_CAP = 2_000_000  # point-count guard


@dataclass(frozen=True)
class PointSet:
    points: tuple[Vector, ...]
    label: str = ""
    ambient_dim: int = 0

    @classmethod
    def of(cls, points: Iterable[Vector], label: str = "", ambient_dim: int | None = None) -> "PointSet":
        """Deduplicate and sort canonically."""
        uniq = {vector_key(tuple(p)): tuple(p) for p in points}
        pts = tuple(uniq[k] for k in sorted(uniq))
        if ambient_dim is None:
            ambient_dim = len(pts[0]) if pts else 0
        return cls(pts, label, ambient_dim)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, v):
        return vector_key(tuple(v)) in self._keys()

    def _keys(self):
        return {vector_key(p) for p in self.points}

    def negated(self) -> "PointSet":
        return PointSet.of((tuple(-x for x in p) for p in self.points), self.label, self.ambient_dim)


KINDS = ("A_root", "A_weight", "D", "Z")


@dataclass(frozen=True)
class LatticeSpec:
    kind: str
    rank: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"lattice kind must be one of {KINDS}")
        if self.rank < 1:
            raise ValueError("rank must be >= 1")

    def __str__(self):
        return {"A_root": "A{}", "A_weight": "A{}*", "D": "D{}", "Z": "Z{}"}[self.kind].format(self.rank)


_LAT_RE = re.compile(r"^\s*([ADZadz])\s*(\d+)\s*(\*?)\s*$")


def parse_lattice(text: str) -> LatticeSpec:
    """``"A4"``, ``"A4*"``, ``"D4"`` or ``"Z3"``."""
    m = _LAT_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse lattice {text!r}")
    f, n, star = m.group(1).upper(), int(m.group(2)), m.group(3)
    if star and f != "A":
        raise ValueError("only A_n has a separate weight lattice here")
    kind = {"A": "A_weight" if star else "A_root", "D": "D", "Z": "Z"}[f]
    return LatticeSpec(kind, n)


def lattice_basis(spec: LatticeSpec) -> list[Vector]:
    n = spec.rank
    if spec.kind == "A_root":
        return list(build_root_system(f"A{n}").simple_roots) if n >= 1 else []
    if spec.kind == "A_weight":
        return list(weights_an(n).weights)
    if spec.kind == "Z":
        return [tuple(golden(int(i == j)) for j in range(n)) for i in range(n)]
    # D_n: even coordinate sum
    if n == 1:
        return [(golden(2),)]
    basis = [
        tuple(golden((j == i) - (j == i + 1)) for j in range(n)) for i in range(n - 1)
    ]
    basis.append(tuple(golden(int(j >= n - 2)) for j in range(n)))
    return basis


def _rational(v: Vector) -> list[Fraction]:
    out = []
    for x in v:
        if not x.is_rational():
            raise ValueError("lattice bases are rational")
        out.append(x.a)
    return out


def lattice_ball(spec: LatticeSpec, radius2, cap: int = BALL_CAP) -> PointSet:
    """All lattice points of squared norm <= ``radius2``.

    Coefficient vectors are enumerated by a Fincke-Pohst search on the
    Gram matrix of the basis and filtered by the exact quadratic form.
    """
    basis = lattice_basis(spec)
    return _ball(basis, lambda u, v: dot(u, v), radius2, f"{spec}", cap)


def root_lattice_ball(sys: RootSystem, radius2, cap: int = BALL_CAP) -> PointSet:
    """Ball in the integer span of the simple roots of a crystallographic system."""
    if not sys.diagram.crystallographic:
        raise ValueError(f"{sys.diagram} has no root lattice")
    return _ball(list(sys.simple_roots), sys.inner, radius2, f"Q({sys.diagram})", cap)


def _qform(G: list[list[int]], c) -> int:
    return sum(G[i][j] * c[i] * c[j] for i in range(len(c)) for j in range(len(c)) if c[i] and c[j])


def _fincke_pohst(G: np.ndarray, r2: float, cap: int) -> list[tuple[int, ...]]:
    """Integer vectors with ``c^T G c <= r2`` (plus slack), by depth-first search.

    ``G = R^T R``; the last coordinate is fixed first and each partial sum
    bounds the next coordinate.  The slack makes the float search a
    superset; callers filter exactly.
    """
    n = len(G)
    R = np.linalg.cholesky(G).T
    slack = 1e-7 * max(1.0, r2)
    out: list[tuple[int, ...]] = []
    c = [0] * n

    def rec(k: int, rem: float):
        # centre of coordinate k given c[k+1:]
        centre = -sum(R[k, j] * c[j] for j in range(k + 1, n)) / R[k, k]
        span = math.sqrt(max(rem + slack, 0.0)) / abs(R[k, k])
        for v in range(math.ceil(centre - span), math.floor(centre + span) + 1):
            c[k] = v
            t = R[k, k] * (v - centre)
            left = rem - t * t
            if left < -slack:
                continue
            if k == 0:
                out.append(tuple(c))
                if len(out) > cap:
                    raise CapExceeded(f"lattice ball exceeded cap {cap}")
            else:
                rec(k - 1, left)
        c[k] = 0

    if n:
        rec(n - 1, r2)
    return out


def _ball(basis: list[Vector], inner, radius2, label: str, cap: int) -> PointSet:
    r2 = Fraction(radius2)
    if r2 < 0:
        raise ValueError("radius2 must be >= 0")
    rb = [_rational(b) for b in basis]
    G = [[_rational((inner(a, b),))[0] for b in basis] for a in basis]
    den = math.lcm(*(g.denominator for row in G for g in row), r2.denominator)
    Gi = [[int(g * den) for g in row] for row in G]
    limit = int(r2 * den)
    keep = [c for c in _fincke_pohst(np.array(G, dtype=float), float(r2), cap) if _qform(Gi, c) <= limit]
    dim = len(rb[0])
    points = []
    for c in keep:
        v = [Fraction(0)] * dim
        for ci, b in zip(c, rb):
            if ci:
                for k in range(dim):
                    v[k] += int(ci) * b[k]
        points.append(tuple(golden(x) for x in v))
    return PointSet.of(points, f"{label} ball r2<={r2}", dim)


# ---------------------------------------------------------------- A_n cells


def an_generators(n: int):
    sys = build_root_system(f"A{n}")
    return [reflection_matrix(a) for a in sys.simple_roots]


def _orbit_set(n: int, seed: Vector, label: str) -> PointSet:
    o = orbit(an_generators(n), seed)
    return PointSet(o.points, label, n + 1)


def root_polytope_an(n: int) -> PointSet:
    """Vertices ``k_i - k_j``, i != j."""
    k = k_basis(n)
    pts = [
        tuple(x - y for x, y in zip(k[i], k[j]))
        for i in range(n + 1)
        for j in range(n + 1)
        if i != j
    ]
    return PointSet.of(pts, f"A{n} root polytope", n + 1)


def voronoi_vertices_an(n: int) -> PointSet:
    """Union of the W(a_n) orbits of the fundamental weights."""
    pts = []
    for w in weights_an(n).weights:
        pts.extend(_orbit_set(n, w, "").points)
    return PointSet.of(pts, f"A{n} Voronoi vertices", n + 1)


def delone_paired_simplices(n: int) -> list[tuple[PointSet, PointSet]]:
    """Pairs of orbits ``(W w_i, W w_(n+1-i))``; the middle pair is a self-pair."""
    w = weights_an(n).weights
    out = []
    for i in range(1, (n + 1) // 2 + 1):
        a = _orbit_set(n, w[i - 1], f"W(a{n}) w{i}")
        b = _orbit_set(n, w[n - i], f"W(a{n}) w{n + 1 - i}")
        out.append((a, b))
    return out


def permutohedron(n: int) -> PointSet:
    """Orbit of ``(n+1)k_1 + n k_2 + ... + k_(n+1)``.

    W(a_n) acts on l-coordinates by permutations, so the orbit is the set
    of coordinate permutations of the seed.
    """
    if not 1 <= n <= 7:
        raise CapExceeded("permutohedron is limited to 1 <= n <= 7")
    k = k_basis(n)
    seed = tuple(ZERO for _ in k[0])
    for j, kj in enumerate(k):
        seed = vadd(seed, vscale(n + 1 - j, kj))
    pts = set(itertools.permutations(seed))
    return PointSet.of(pts, f"A{n} permutohedron", n + 1)


def diplo_simplex(n: int) -> PointSet:
    """Vertices ``+-k_i``."""
    k = k_basis(n)
    pts = list(k) + [tuple(-x for x in v) for v in k]
    return PointSet.of(pts, f"A{n} diplo-simplex", n + 1)


def is_invariant(ps: PointSet, generators: Sequence) -> bool:
    """Exact setwise invariance under every generator matrix."""
    if not ps.points:
        return True
    keys = ps._keys()
    P = GoldenMatrix.from_columns(ps.points)
    for g in generators:
        Q = g @ P
        rows, cols = Q.shape
        for j in range(cols):
            if vector_key(tuple(Q[i, j] for i in range(rows))) not in keys:
                return False
    return True
