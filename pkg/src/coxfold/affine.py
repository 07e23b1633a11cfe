"""Affine reflections and fractional dihedral labels.

The affine reflection in the hyperplane ``(x, a) = n`` is

    r_{a,n}(x) = x - 2((x, a) - n) / (a, a) * a.

(This is the standard isometry; the variant without the leading ``x``
term that sometimes circulates is not an isometry and is not used.)

A fractional label ``p/q`` on a bond between generators ``a`` and ``b``
is read as two separate statements: ``ab`` has exact order ``p``, and on
the relevant plane it rotates by ``2 pi q / p``.  Orders are exact;
angles are floating point with tolerance 1e-9.

For the affine dihedral diagrams, the reflection ``r_a0`` in the
extended root does not in general preserve the Coxeter plane, so it is
usually not in the dihedral group ``<R1, R2>`` (D4 is the exception).  Its
trace on the plane, the reflection in the projected ``a0``, is a dihedral
element for every type handled here, and :func:`affine_dihedral_label`
measures the label with that element.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exactnum import GoldenMatrix, GoldenNumber, Vector, det, dot, format_golden, vector_to_float
from .group import dihedral_generators, element_order, reflection_matrix, two_coloring, word_matrix
from .project import ProjectionBasis, ProjectionError, coxeter_plane_basis, restrict, rotation_angle, span_basis
from .rootsys import RootSystem, build_root_system, extend

__all__ = [
    "AffineIsometry",
    "FractionalLabel",
    "FractionalMismatch",
    "FractionalReport",
    "DihedralLabelReport",
    "HRelationReport",
    "affine_reflection",
    "verify_word_identity",
    "dihedral_words",
    "plane_reflection_word",
    "fractional_relation_check",
    "dihedral_affine_labels",
    "affine_dihedral_label",
    "affine_h_relations",
    "word_identity_report",
    "ANGLE_TOL",
]

ANGLE_TOL = 1e-9
Word = tuple[int, ...]


@dataclass(frozen=True)
class AffineIsometry:
    """``x -> linear @ x + translation``."""

    linear: GoldenMatrix
    translation: Vector

    @classmethod
    def identity(cls, n: int) -> "AffineIsometry":
        return cls(GoldenMatrix.identity(n), tuple(GoldenNumber(0) for _ in range(n)))

    def __call__(self, x: Vector) -> Vector:
        return tuple(a + b for a, b in zip(self.linear.apply(x), self.translation))

    def __matmul__(self, other: "AffineIsometry") -> "AffineIsometry":
        t = tuple(a + b for a, b in zip(self.linear.apply(other.translation), self.translation))
        return AffineIsometry(self.linear @ other.linear, t)

    def is_translation(self) -> bool:
        return self.linear.is_identity()

    def is_identity(self) -> bool:
        return self.is_translation() and not any(self.translation)


def affine_reflection(alpha: Vector, n=0, gram: GoldenMatrix | None = None) -> AffineIsometry:
    """Reflection in the hyperplane ``(x, alpha) = n``."""
    aa = dot(alpha, alpha, gram)
    if not aa:
        raise ValueError("reflection in a zero-norm vector")
    c = 2 * GoldenNumber(n) / aa if not isinstance(n, GoldenNumber) else 2 * n / aa
    return AffineIsometry(reflection_matrix(alpha, gram), tuple(c * a for a in alpha))


# ------------------------------------------------------------------ labels


@dataclass(frozen=True, order=True)
class FractionalLabel:
    p: int
    q: int = 1

    def __post_init__(self):
        if self.p < 2 or not 1 <= self.q < self.p or math.gcd(self.p, self.q) != 1:
            raise ValueError(f"invalid label {self.p}/{self.q}")

    @classmethod
    def of(cls, x) -> "FractionalLabel":
        f = Fraction(x)
        return cls(f.numerator, f.denominator)

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __str__(self):
        return str(self.p) if self.q == 1 else f"{self.p}/{self.q}"


def dihedral_affine_labels(h: int) -> dict[str, Fraction]:
    """Candidate labels ``2h/(h-2)``, ``2h/(h+2)``, ``2h/(h-1)``."""
    if h < 3:
        raise ValueError("h must be >= 3")
    return {
        "h'-": Fraction(2 * h, h - 2),
        "h'+": Fraction(2 * h, h + 2),
        "h''": Fraction(2 * h, h - 1),
    }


class FractionalMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class FractionalReport:
    order: int | None
    angle: float | None
    measured: Fraction | None
    expected: FractionalLabel | None
    order_ok: bool
    angle_ok: bool

    @property
    def passed(self) -> bool:
        return self.order_ok and self.angle_ok

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "angle": self.angle,
            "measured": _frac(self.measured),
            "expected": None if self.expected is None else str(self.expected),
            "order_ok": self.order_ok,
            "angle_ok": self.angle_ok,
        }


def _frac(f: Fraction | None):
    if f is None:
        return None
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def fractional_relation_check(
    a: GoldenMatrix,
    b: GoldenMatrix,
    expected: FractionalLabel | None,
    plane: ProjectionBasis,
    tol: float = ANGLE_TOL,
    strict: bool = False,
    cap: int = 1000,
) -> FractionalReport:
    """Exact order of ``ab`` and its rotation angle on ``plane``.

    The measured label is ``p/q`` with ``p`` the exact order and ``q`` read
    from the angle ``2 pi q/p``.  With ``expected`` both must match; with
    ``strict`` a mismatch raises :class:`FractionalMismatch`.
    """
    M = a @ b
    p = element_order(M, cap=cap)
    try:
        theta = rotation_angle(restrict(M, plane))
    except ProjectionError:
        theta = None
    measured = None
    angle_ok = False
    if p is not None and theta is not None:
        q = round(theta * p / (2 * math.pi)) % p
        if abs(theta - 2 * math.pi * q / p) <= tol and q:
            measured = Fraction(p, q)
    if expected is None:
        order_ok = p is not None
        angle_ok = measured is not None
    else:
        order_ok = p == expected.p
        angle_ok = theta is not None and abs(theta - 2 * math.pi * expected.q / expected.p) <= tol
    rep = FractionalReport(p, theta, measured, expected, order_ok, angle_ok)
    if strict and not rep.passed:
        raise FractionalMismatch(f"measured {_frac(measured)} (order {p}), expected {expected}")
    return rep


# ------------------------------------------------------------ dihedral words


def dihedral_words(h: int, max_len: int | None = None) -> list[Word]:
    """Alternating words in labels 1, 2 by increasing length (covers <R1, R2>)."""
    max_len = 2 * h if max_len is None else max_len
    out: list[Word] = [()]
    for n in range(1, max_len + 1):
        for start in (1, 2):
            out.append(tuple(start if k % 2 == 0 else 3 - start for k in range(n)))
    return out


def verify_word_identity(
    target: GoldenMatrix,
    R1: GoldenMatrix,
    R2: GoldenMatrix,
    max_len: int,
    preferred: Sequence[Word] = (),
) -> Word | None:
    """A word in ``R1, R2`` equal to ``target`` exactly, or None.

    ``preferred`` words are tried first; then every alternating word of
    length <= ``max_len``.
    """
    gens = {1: R1, 2: R2}
    for w in preferred:
        if word_matrix(gens, w) == target:
            return tuple(w)
    n = R1.shape[0]
    # walk alternating words incrementally
    for start in (1, 2):
        M = GoldenMatrix.identity(n)
        if start == 1 and M == target:
            return ()
        letter = start
        word: list[int] = []
        for _ in range(max_len):
            M = M @ gens[letter]
            word.append(letter)
            if M == target:
                return tuple(word)
            letter = 3 - letter
    return None


def plane_reflection_word(
    alpha: Vector, R1: GoldenMatrix, R2: GoldenMatrix, h: int, plane: ProjectionBasis, tol: float = 1e-9
) -> Word | None:
    """Shortest dihedral word acting on ``plane`` as the reflection in the projection of ``alpha``."""
    u = plane.matrix @ vector_to_float(alpha)
    nu = np.linalg.norm(u)
    if nu < tol:
        return None
    u = u / nu
    target = np.eye(2) - 2 * np.outer(u, u)
    P = {1: restrict(R1, plane), 2: restrict(R2, plane)}
    for w in dihedral_words(h):
        M = np.eye(2)
        for letter in w:
            M = M @ P[letter]
        if np.abs(M - target).max() <= tol:
            return w
    return None


def _word_str(w: Word) -> str:
    return "".join(f"R{x}" for x in w) if w else "I"


# ------------------------------------------------------- affine dihedral


@dataclass
class DihedralLabelReport:
    type: str
    h: int
    partner: int
    plane_word: Word | None
    plane_word_negates_a0: bool
    check: FractionalReport | None
    candidates: dict[str, Fraction]
    literal_orders: dict[str, int | None]
    translation: tuple[str, ...]
    expected: FractionalLabel | None = None
    stated_partner: int | None = None
    per_partner: dict[int, str | None] = field(default_factory=dict)

    @property
    def measured(self) -> Fraction | None:
        return None if self.check is None else self.check.measured

    @property
    def in_candidates(self) -> bool:
        return self.measured is not None and self.measured in self.candidates.values()

    @property
    def passed(self) -> bool:
        ok = self.check is not None and self.check.passed and self.in_candidates
        return ok

    def as_dict(self) -> dict:
        return {
            "type": self.type,
            "h": self.h,
            "partner": f"R{self.partner}",
            "stated_partner": None if self.stated_partner is None else f"R{self.stated_partner}",
            "plane_word": None if self.plane_word is None else _word_str(self.plane_word),
            "plane_word_negates_a0": self.plane_word_negates_a0,
            "measured": _frac(self.measured),
            "expected": None if self.expected is None else str(self.expected),
            "check": None if self.check is None else self.check.as_dict(),
            "candidates": {k: _frac(v) for k, v in self.candidates.items()},
            "in_candidates": self.in_candidates,
            "per_partner": {f"R{k}": v for k, v in self.per_partner.items()},
            "literal_orders": self.literal_orders,
            "affine_translation": list(self.translation),
            "passed": self.passed,
        }


# Labels and partner generators as stated for the E series.
STATED_E_LABELS = {
    "E6": (FractionalLabel(12, 7), 1),
    "E7": (FractionalLabel(9, 5), 2),
    "E8": (FractionalLabel(15, 7), 1),
}


def affine_dihedral_label(
    sys: RootSystem | str, expected: FractionalLabel | None = None, partner: int | None = None
) -> DihedralLabelReport:
    """Measure the label between the extended node and the dihedral pair.

    ``a`` is the dihedral word acting on the Coxeter plane as the
    reflection in the projected extended root; the partner ``R_i`` is the
    class product containing the nodes bonded to the extended root (the
    other class is orthogonal to it and gives a trivial label).  The
    report also carries the full-space orders of ``r_a0 R_i``, the affine
    translation of ``r_{a0,1}`` and, when ``plane_word`` exists, whether
    that word maps ``a0`` to ``-a0`` exactly.
    """
    if not isinstance(sys, RootSystem):
        sys = build_root_system(sys)
    if sys.extended_root is None:
        sys = extend(sys)
    name = str(sys.diagram)
    stated = STATED_E_LABELS.get(name)
    if expected is None and stated is not None:
        expected = stated[0]
    R1, R2, h = dihedral_generators(sys)
    plane = coxeter_plane_basis(sys, R1, R2)
    a0 = sys.extended_root
    first, second = two_coloring(sys)
    bonded = [
        i for i, cls in ((1, first), (2, second))
        if any(sys.inner(a0, sys.simple_roots[j - 1]) for j in cls)
    ]
    if partner is None:
        partner = bonded[0] if bonded else 1
    gens = {1: R1, 2: R2}
    r0 = reflection_matrix(a0, sys.gram)
    literal = {f"r0R{i}": element_order(r0 @ gens[i], cap=4 * h) for i in (1, 2)}
    w = plane_reflection_word(a0, R1, R2, h, plane)
    check = None
    negates = False
    per_partner: dict[int, str | None] = {}
    if w is not None:
        a = word_matrix(gens, w) if w else GoldenMatrix.identity(R1.shape[0])
        negates = a.apply(a0) == tuple(-x for x in a0)
        for i in (1, 2):
            rep = fractional_relation_check(a, gens[i], None, plane)
            per_partner[i] = _frac(rep.measured)
        check = fractional_relation_check(a, gens[partner], expected, plane)
        if expected is None:
            check = fractional_relation_check(a, gens[partner], None, plane)
    t = affine_reflection(a0, 1, sys.gram).translation
    return DihedralLabelReport(
        name,
        h,
        partner,
        w,
        negates,
        check,
        dihedral_affine_labels(h),
        literal,
        tuple(format_golden(x) for x in t),
        expected,
        None if stated is None else stated[1],
        per_partner,
    )


# ----------------------------------------------------------------- H types


@dataclass
class HRelationReport:
    type: str
    partner: int
    check: FractionalReport
    norm_equal: bool
    candidates: dict[str, Fraction]
    word_partner_order: int | None

    @property
    def in_candidates(self) -> bool:
        return self.check.measured is not None and self.check.measured in self.candidates.values()

    @property
    def passed(self) -> bool:
        return self.check.passed and self.norm_equal

    def as_dict(self) -> dict:
        return {
            "type": self.type,
            "partner": f"b{self.partner}",
            "check": self.check.as_dict(),
            "measured": _frac(self.check.measured),
            "expected": "5/2",
            "norm_equal": self.norm_equal,
            "candidates": {k: _frac(v) for k, v in self.candidates.items()},
            "in_candidates": self.in_candidates,
            "word_partner_order": self.word_partner_order,
            "passed": self.passed,
        }


def affine_h_relations(fold_or_sys) -> HRelationReport:
    """Label 5/2 between ``b0`` and the unique simple root it is bonded to.

    Both factors are reflections in the H roots (``r_b0`` and ``r_bi``).
    The plane is ``span(b0, bi)``, oriented from ``b0`` towards ``bi``.
    ``word_partner_order`` is the order of ``r_b0`` times the folded
    generator word of node i, for comparison.
    """
    fold = fold_or_sys if hasattr(fold_or_sys, "generator_words") else None
    sys = fold.target if fold is not None else fold_or_sys
    if not isinstance(sys, RootSystem):
        sys = build_root_system(sys)
    if sys.extended_root is None:
        sys = extend(sys)
    b0 = sys.extended_root
    bonded = [i for i, b in enumerate(sys.simple_roots, 1) if sys.inner(b0, b)]
    if len(bonded) != 1:
        raise ValueError("extended root should bond to exactly one node")
    i = bonded[0]
    bi = sys.simple_roots[i - 1]
    L = np.linalg.cholesky(sys.gram.to_float()).T if sys.gram is not None else None
    plane = span_basis([b0, bi], L, "h_pair_plane")
    a, b = reflection_matrix(b0, sys.gram), reflection_matrix(bi, sys.gram)
    check = fractional_relation_check(a, b, FractionalLabel(5, 2), plane)
    word_order = None
    if fold is not None:
        word_order = element_order(a @ fold.generator_matrices()[i - 1], cap=200)
    norm_equal = sys.inner(b0, b0) == sys.inner(bi, bi)
    return HRelationReport(
        str(sys.diagram), i, check, norm_equal, dihedral_affine_labels(sys.coxeter_number), word_order
    )


# ------------------------------------------------------------ identities


def word_identity_report(sys: RootSystem | str) -> dict:
    """Search for ``r_a0`` among words in ``R1, R2``.

    The stated forms ``(R1 R2)^(h/2)`` (D series) and ``R2 (R1 R2)^6``
    (E6) are tried first; the search covers every alternating word of
    length <= 2h, i.e. the whole dihedral group.
    """
    if not isinstance(sys, RootSystem):
        sys = build_root_system(sys)
    if sys.extended_root is None:
        sys = extend(sys)
    R1, R2, h = dihedral_generators(sys)
    r0 = reflection_matrix(sys.extended_root, sys.gram)
    stated: Word | None = None
    if sys.diagram.family == "D":
        stated = (1, 2) * (h // 2)
    elif str(sys.diagram) == "E6":
        stated = (2,) + (1, 2) * 6
    gens = {1: R1, 2: R2}
    stated_holds = stated is not None and word_matrix(gens, stated) == r0
    found = verify_word_identity(r0, R1, R2, 2 * h, preferred=[stated] if stated else [])
    plane = coxeter_plane_basis(sys, R1, R2)
    pw = plane_reflection_word(sys.extended_root, R1, R2, h, plane)
    negates = False
    if pw is not None:
        negates = word_matrix(gens, pw).apply(sys.extended_root) == tuple(-x for x in sys.extended_root)
    return {
        "type": str(sys.diagram),
        "h": h,
        "stated_word": None if stated is None else _word_str(stated),
        "stated_holds": stated_holds,
        "exact_word": None if found is None else _word_str(found),
        "det_r0": format_golden(det(r0)),
        "det_stated": None if stated is None else format_golden(det(word_matrix(gens, stated))),
        "plane_word": None if pw is None else _word_str(pw),
        "plane_word_negates_a0": negates,
        "passed": stated_holds,
    }
