"""Simple roots, Cartan matrices, extended roots and weights.

Ambient conventions
-------------------
* ``A_n`` lives in the sum-zero hyperplane of R^(n+1).  Coordinates are
  taken in the orthonormal basis ``l_i``; for a sum-zero vector they
  coincide with its coefficients on ``k_i = l_i - l_0/(n+1)``, so the
  k-basis Gram never has to be carried around.
* ``B_n``, ``C_n``, ``D_n``, ``F_4`` use the usual orthonormal models,
  ``G_2`` the sum-zero plane of R^3 and ``E_6, E_7, E_8`` the even
  coordinate system of R^8.
* ``H_3`` and ``H_4`` are the unnormalized folded roots inside the
  ``D_6`` and ``E_8`` ambients (no sqrt(2(tau+2)) prefactor).
* ``I_2(m)`` uses a two-dimensional ambient whose basis is the pair of
  simple roots, with a non-identity Gram matrix.

Long roots always have squared norm 2.  Where the coordinate model would
otherwise need a radical (``C_n``, ``G_2``, ``H_3``, ``H_4``) the ambient
carries a uniformly scaled Gram matrix instead; Cartan matrices and
reflection matrices do not see the scale.

Node numbering: ``D_n`` is the chain 1..n-1 with node n on node n-2;
``E_6`` the chain 1..5 with 6 on 3; ``E_7`` the chain 1..6 with 7 on 4;
``E_8`` the chain 1..7 with 8 on 5.  Cartan entries follow
``M[i][j] = 2 (a_i, a_j) / (a_j, a_j)``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactnum import (
    ONE,
    TAU,
    ZERO,
    GoldenMatrix,
    GoldenNumber,
    Vector,
    dot,
    golden,
    inverse,
    solve,
    vadd,
    vector_key,
    vscale,
    vsub,
)

__all__ = [
    "DiagramType",
    "RootSystem",
    "WeightSet",
    "UnsupportedType",
    "parse_type",
    "k_basis",
    "build_root_system",
    "cartan_matrix",
    "canonical_cartan",
    "extend",
    "extended_cartan",
    "weights_an",
    "fundamental_weights",
    "catalog",
    "all_roots",
    "highest_root",
    "root_coordinates",
    "dynkin_edges",
    "h_fold_roots",
    "H3_FOLD",
    "H4_FOLD",
]


class UnsupportedType(ValueError):
    """Raised for diagram types the package cannot realise exactly."""


FAMILIES = ("A", "B", "C", "D", "E", "F", "G", "H", "I2")

# Dihedral labels whose bond 2cos(pi q/p) lies in Q(tau), or that have a
# crystallographic model with unequal root lengths.
_I2_SUPPORTED = {Fraction(3), Fraction(4), Fraction(5), Fraction(6), Fraction(5, 2)}


@dataclass(frozen=True)
class DiagramType:
    family: str
    rank: int
    dihedral_label: Fraction | None = None

    def __post_init__(self):
        f, n = self.family, self.rank
        if f not in FAMILIES:
            raise UnsupportedType(f"unknown family {f!r}")
        if n < 1:
            raise UnsupportedType("rank must be positive")
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 4,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
            "H": n in (2, 3, 4),
            "I2": n == 2,
        }[f]
        if not ok:
            raise UnsupportedType(f"no diagram {f}{n}")
        if f == "I2":
            if self.dihedral_label is None or self.dihedral_label < 2:
                raise UnsupportedType("I2 needs a label p/q >= 2")
        elif self.dihedral_label is not None:
            raise UnsupportedType("only I2 carries a dihedral label")

    @property
    def crystallographic(self) -> bool:
        if self.family == "H":
            return False
        if self.family == "I2":
            return self.dihedral_label in (3, 4, 6)
        return True

    def __str__(self):
        if self.family == "I2":
            lab = self.dihedral_label
            text = str(lab.numerator) if lab.denominator == 1 else f"{lab.numerator}/{lab.denominator}"
            return f"I2({text})"
        return f"{self.family}{self.rank}"


_TYPE_RE = re.compile(r"^\s*([A-Ha-h])\s*(\d+)\s*$")
_I2_RE = re.compile(r"^\s*[Ii]2?\s*\(\s*(\d+)(?:\s*/\s*(\d+))?\s*\)\s*$")


def parse_type(text: str | DiagramType) -> DiagramType:
    """Parse ``"A4"``, ``"e8"``, ``"H3"``, ``"I2(5)"`` or ``"I2(5/2)"``."""
    if isinstance(text, DiagramType):
        return text
    m = _I2_RE.match(text)
    if m:
        label = Fraction(int(m.group(1)), int(m.group(2) or 1))
        return DiagramType("I2", 2, label)
    m = _TYPE_RE.match(text)
    if not m:
        raise UnsupportedType(f"cannot parse diagram type {text!r}")
    return DiagramType(m.group(1).upper(), int(m.group(2)))


@dataclass(frozen=True)
class RootSystem:
    diagram: DiagramType
    ambient_dim: int
    simple_roots: tuple[Vector, ...]
    cartan: tuple[tuple[GoldenNumber, ...], ...]
    coxeter_number: int
    group_order: int
    extended_root: Vector | None = None
    gram: GoldenMatrix | None = field(default=None, compare=False)

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    def inner(self, u: Vector, v: Vector) -> GoldenNumber:
        return dot(u, v, self.gram)


@dataclass(frozen=True)
class WeightSet:
    weights: tuple[Vector, ...]


def _v(coords) -> Vector:
    return tuple(golden(c) for c in coords)


def k_basis(n: int) -> tuple[Vector, ...]:
    """Vectors ``k_i = l_i - l_0/(n+1)``, i = 1..n+1, in R^(n+1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m = n + 1
    shift = Fraction(1, m)
    return tuple(
        tuple(golden((1 if j == i else 0) - shift) for j in range(m)) for i in range(m)
    )


def cartan_matrix(roots: Sequence[Vector], gram: GoldenMatrix | None = None):
    """``M[i][j] = 2 (a_i, a_j) / (a_j, a_j)`` computed exactly."""
    norms = []
    for r in roots:
        nn = dot(r, r, gram)
        if not nn:
            raise ValueError("zero root has no reflection")
        norms.append(nn)
    inv = [nn.inverse() for nn in norms]
    return tuple(
        tuple(2 * dot(a, b, gram) * inv[j] for j, b in enumerate(roots)) for a in roots
    )


def _path(n: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(1, n)]


def _diagram_bonds(t: DiagramType):
    """Edges (i, j) -> (M_ij, M_ji) of the canonical diagram, 1-based."""
    f, n = t.family, t.rank
    m1 = golden(-1)
    bonds: dict[tuple[int, int], tuple[GoldenNumber, GoldenNumber]] = {}
    if f == "A":
        edges = _path(n)
    elif f in ("B", "C"):
        edges = _path(n - 1)
    elif f == "D":
        edges = _path(n - 1) + [(n - 2, n)]
    elif f == "E":
        branch = {6: 3, 7: 4, 8: 5}[n]
        edges = _path(n - 1) + [(branch, n)]
    elif f == "F":
        edges = [(1, 2), (3, 4)]
    elif f == "H":
        edges = _path(n - 1) if n > 2 else []
    else:
        edges = []
    for e in edges:
        bonds[e] = (m1, m1)
    if f == "B":
        bonds[(n - 1, n)] = (golden(-2), m1)
    elif f == "C":
        bonds[(n - 1, n)] = (m1, golden(-2))
    elif f == "F":
        bonds[(2, 3)] = (golden(-2), m1)
    elif f == "G":
        bonds[(1, 2)] = (m1, golden(-3))
    elif f == "H":
        bonds[(n - 1, n)] = (-TAU, -TAU)
    elif f == "I2":
        lab = t.dihedral_label
        bonds[(1, 2)] = {
            Fraction(3): (m1, m1),
            Fraction(4): (golden(-2), m1),
            Fraction(5): (-TAU, -TAU),
            Fraction(6): (m1, golden(-3)),
            Fraction(5, 2): (ONE - TAU, ONE - TAU),
        }[lab]
    return bonds


def canonical_cartan(t: DiagramType | str):
    """Textbook Cartan matrix of type ``t`` built from its diagram alone."""
    t = parse_type(t)
    if t.family == "I2" and t.dihedral_label not in _I2_SUPPORTED:
        raise UnsupportedType(f"I2({t.dihedral_label}) has no bond in Q(tau)")
    n = t.rank
    M = [[golden(2) if i == j else ZERO for j in range(n)] for i in range(n)]
    for (i, j), (mij, mji) in _diagram_bonds(t).items():
        M[i - 1][j - 1] = mij
        M[j - 1][i - 1] = mji
    return tuple(tuple(r) for r in M)


def catalog(t: DiagramType | str) -> tuple[int, int]:
    """``(coxeter_number, group_order)`` of the finite group W(t)."""
    t = parse_type(t)
    f, n = t.family, t.rank
    fact = math.factorial
    if f == "A":
        return n + 1, fact(n + 1)
    if f in ("B", "C"):
        return 2 * n, 2**n * fact(n)
    if f == "D":
        return 2 * n - 2, 2 ** (n - 1) * fact(n)
    if f == "E":
        return {6: (12, 51840), 7: (18, 2903040), 8: (30, 696729600)}[n]
    if f == "F":
        return 12, 1152
    if f == "G":
        return 6, 12
    if f == "H":
        return {2: (5, 10), 3: (10, 120), 4: (30, 14400)}[n]
    p = t.dihedral_label.numerator
    return p, 2 * p


# --- root constructions -------------------------------------------------


def _roots_a(n):
    roots = []
    for i in range(n):
        r = [ZERO] * (n + 1)
        r[i], r[i + 1] = ONE, -ONE
        roots.append(_v(r))
    return roots


def _roots_bcd(f, n):
    roots = []
    for i in range(n - 1):
        r = [ZERO] * n
        r[i], r[i + 1] = ONE, -ONE
        roots.append(_v(r))
    last = [ZERO] * n
    if f == "B":
        last[n - 1] = ONE
    elif f == "C":
        last[n - 1] = golden(2)
    else:
        last[n - 2], last[n - 1] = ONE, ONE
    roots.append(_v(last))
    return roots


def _bourbaki_e8():
    h = Fraction(1, 2)
    b = {1: _v([h, -h, -h, -h, -h, -h, -h, h]), 2: _v([1, 1, 0, 0, 0, 0, 0, 0])}
    for k in range(3, 9):
        r = [ZERO] * 8
        r[k - 2], r[k - 3] = ONE, -ONE
        b[k] = _v(r)
    return b


# module node i -> Bourbaki node
_E_TO_BOURBAKI = {
    6: (1, 3, 4, 5, 6, 2),
    7: (7, 6, 5, 4, 3, 1, 2),
    8: (8, 7, 6, 5, 4, 3, 1, 2),
}


def _roots_e(n):
    b = _bourbaki_e8()
    return [b[k] for k in _E_TO_BOURBAKI[n]]


def _roots_f4():
    h = Fraction(1, 2)
    return [
        _v([0, 1, -1, 0]),
        _v([0, 0, 1, -1]),
        _v([0, 0, 0, 1]),
        _v([h, -h, -h, -h]),
    ]


def _roots_g2():
    return [_v([1, -1, 0]), _v([-2, 1, 1])]


# pairs (i, j, tau_on_first): beta = tau*a_i + a_j if tau_on_first else a_i + tau*a_j
H3_FOLD = ((1, 5, False), (2, 4, False), (3, 6, True))
H4_FOLD = ((1, 7, False), (2, 6, False), (3, 5, False), (4, 8, True))


def h_fold_roots(rank: int) -> list[Vector]:
    """Unnormalized H3 (from D6) or H4 (from E8) simple roots."""
    if rank == 3:
        parent, table = _roots_bcd("D", 6), H3_FOLD
    elif rank == 4:
        parent, table = _roots_e(8), H4_FOLD
    else:
        raise UnsupportedType("folded H roots exist for rank 3 and 4")
    out = []
    for i, j, tau_first in table:
        a, b = parent[i - 1], parent[j - 1]
        out.append(vadd(vscale(TAU, a), b) if tau_first else vadd(a, vscale(TAU, b)))
    return out


def _i2_system(t: DiagramType):
    lab = t.dihedral_label
    if lab not in _I2_SUPPORTED:
        raise UnsupportedType(
            f"I2({lab}) needs 2cos(pi/{lab}) outside Q(tau); supported labels are 3, 4, 5, 6, 5/2"
        )
    M = canonical_cartan(t)
    # basis = simple roots; lengths chosen so the longer root has norm 2
    ratio = M[1][0] / M[0][1]  # (a2, a2) / (a1, a1)
    n1, n2 = (golden(2), 2 * ratio) if ratio <= 1 else (2 / ratio, golden(2))
    g12 = M[0][1] * n2 / 2
    gram = GoldenMatrix.from_rows([[n1, g12], [g12, n2]])
    return [_v([1, 0]), _v([0, 1])], gram


def _scaled_identity(n: int, c) -> GoldenMatrix:
    return GoldenMatrix.identity(n) * golden(c)


def build_root_system(t: DiagramType | str) -> RootSystem:
    t = parse_type(t)
    f, n = t.family, t.rank
    gram = None
    if f == "A":
        roots, dim = _roots_a(n), n + 1
    elif f in ("B", "C", "D"):
        roots, dim = _roots_bcd(f, n), n
        if f == "C":
            gram = _scaled_identity(n, Fraction(1, 2))
    elif f == "E":
        roots, dim = _roots_e(n), 8
    elif f == "F":
        roots, dim = _roots_f4(), 4
    elif f == "G":
        roots, dim = _roots_g2(), 3
        gram = _scaled_identity(3, Fraction(1, 3))
    elif f == "H" and n in (3, 4):
        roots = h_fold_roots(n)
        dim = len(roots[0])
        gram = _scaled_identity(dim, (TAU + 2).inverse())
    else:
        if f == "H":
            t = DiagramType("I2", 2, Fraction(5))
        roots, gram = _i2_system(t)
        dim = 2
    cartan = cartan_matrix(roots, gram)
    h, order = catalog(t)
    return RootSystem(t, dim, tuple(roots), cartan, h, order, None, gram)


# --- roots, heights, extension -----------------------------------------


def _reflect(x: Vector, a: Vector, gram, aa) -> Vector:
    c = 2 * dot(x, a, gram) / aa
    return vsub(x, vscale(c, a))


def all_roots(sys: RootSystem, cap: int = 100000) -> list[Vector]:
    """Closure of the simple roots under the simple reflections."""
    gram = sys.gram
    norms = [dot(a, a, gram) for a in sys.simple_roots]
    seen = {vector_key(a): a for a in sys.simple_roots}
    frontier = list(sys.simple_roots)
    while frontier:
        nxt = []
        for x in frontier:
            for a, aa in zip(sys.simple_roots, norms):
                y = _reflect(x, a, gram, aa)
                k = vector_key(y)
                if k not in seen:
                    seen[k] = y
                    nxt.append(y)
                    if len(seen) > cap:
                        raise RuntimeError("root closure exceeded cap")
        frontier = nxt
    return [seen[k] for k in sorted(seen)]


def root_coordinates(sys: RootSystem, v: Vector) -> Vector:
    """Coefficients of ``v`` on the simple roots (v must lie in their span)."""
    roots = sys.simple_roots
    G = [[sys.inner(a, b) for b in roots] for a in roots]
    rhs = [sys.inner(a, v) for a in roots]
    c = solve(G, rhs)
    recon = tuple(sum((ci * a[k] for ci, a in zip(c, roots)), ZERO) for k in range(len(v)))
    if recon != tuple(v):
        raise ValueError("vector is not in the span of the simple roots")
    return c


def highest_root(sys: RootSystem) -> Vector:
    """Root of maximal height (crystallographic systems)."""
    if not sys.diagram.crystallographic:
        raise UnsupportedType("height order needs integral root coordinates")
    # the highest root is the dominant element of the long-root orbit;
    # reflecting in a simple root with (r, a_i) < 0 raises the height
    gram = sys.gram
    norms = [dot(a, a, gram) for a in sys.simple_roots]
    r = sys.simple_roots[max(range(len(norms)), key=lambda i: norms[i])]
    while True:
        for a, aa in zip(sys.simple_roots, norms):
            if dot(r, a, gram) < 0:
                r = _reflect(r, a, gram, aa)
                break
        else:
            return r


def extend(sys: RootSystem) -> RootSystem:
    """Return a copy with the extended root ``a_0`` set.

    Crystallographic types get ``a_0 = -highest root`` (for A_n this is
    ``k_{n+1} - k_1``).  H3 and H4 use the folded combinations
    ``-tau(b1 + 2 b2 + tau b3)`` and
    ``-2tau b1 - (3tau+1) b2 - 2tau^3 b3 - tau^4 b4``.
    """
    t = sys.diagram
    if t.family == "H" and t.rank in (3, 4):
        b = sys.simple_roots
        if t.rank == 3:
            coeffs = [-TAU, -2 * TAU, -TAU * TAU]
        else:
            coeffs = [-2 * TAU, -(3 * TAU + 1), -2 * TAU**3, -(TAU**4)]
        a0 = tuple(ZERO for _ in b[0])
        for c, r in zip(coeffs, b):
            a0 = vadd(a0, vscale(c, r))
    elif t.crystallographic:
        a0 = tuple(-x for x in highest_root(sys))
    else:
        raise UnsupportedType(f"no extended root for {t}")
    return RootSystem(
        sys.diagram,
        sys.ambient_dim,
        sys.simple_roots,
        sys.cartan,
        sys.coxeter_number,
        sys.group_order,
        a0,
        sys.gram,
    )


def extended_cartan(sys: RootSystem):
    if sys.extended_root is None:
        sys = extend(sys)
    return cartan_matrix((sys.extended_root,) + tuple(sys.simple_roots), sys.gram)


def weights_an(n: int) -> WeightSet:
    """Fundamental weights ``w_i = k_1 + ... + k_i`` of A_n."""
    k = k_basis(n)
    out = []
    acc = tuple(ZERO for _ in k[0])
    for i in range(n):
        acc = vadd(acc, k[i])
        out.append(acc)
    return WeightSet(tuple(out))


def fundamental_weights(sys: RootSystem) -> WeightSet:
    """Weights ``w_i`` in the span of the roots with ``<w_i, a_j^vee> = delta_ij``.

    ``w_i = sum_k (M^-1)_ik a_k`` for the Cartan matrix ``M``.
    """
    Minv = inverse(sys.cartan)
    out = []
    for row in Minv:
        acc = tuple(ZERO for _ in range(sys.ambient_dim))
        for c, a in zip(row, sys.simple_roots):
            if c:
                acc = vadd(acc, vscale(c, a))
        out.append(acc)
    return WeightSet(tuple(out))


def dynkin_edges(cartan) -> list[tuple[int, int]]:
    """1-based edges ``(i, j)``, i < j, where the Cartan entry is nonzero."""
    n = len(cartan)
    return [(i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if cartan[i][j]]
