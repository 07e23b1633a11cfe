"""Graph foldings: subgroups built from products of commuting reflections.

A fold records, for every folded generator, the word of parent simple
reflections that realizes it and (when there is one) the folded simple
root as a combination of parent simple roots.  :meth:`FoldingMap.verify`
checks everything exactly: target Cartan matrix, extended determinant,
Coxeter relations with minimal exponents, the order of the folded Coxeter
element, and that each generator acts on the folded roots as the
reflection in its own folded root.

The last check is made on the span of the folded roots only.  A product
``r_a r_b`` of two orthogonal reflections is ``-1`` on ``span(a, b)`` and
so differs from ``r_(a+b)`` on the full space; on the subspace fixed by
the diagram symmetry the two agree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum import (
    TAU,
    ZERO,
    GoldenMatrix,
    GoldenNumber,
    Vector,
    det,
    dot,
    format_golden,
    golden,
    inverse,
    vadd,
    vscale,
)
from .group import (
    CapExceeded,
    RelationReport,
    element_order,
    enumerate_group,
    simple_reflections,
    two_coloring,
    verify_relations,
    word_matrix,
)
from .lattice import LatticeSpec, PointSet, lattice_ball
from .rootsys import (
    DiagramType,
    RootSystem,
    build_root_system,
    canonical_cartan,
    cartan_matrix,
    catalog,
    extend,
    highest_root,
    parse_type,
    root_coordinates,
)

__all__ = [
    "FoldingMap",
    "FoldReport",
    "coxeter_exponent",
    "fold_a2n1_to_cn",
    "fold_dn_to_bn1",
    "fold_d4_to_g2",
    "fold_d6_to_h3",
    "fold_e6_to_f4",
    "fold_e6_to_i212",
    "fold_e7_to_i218",
    "fold_e8_to_i230",
    "fold_e8_to_h4",
    "fold_an_to_dihedral",
    "fold_dn_to_dihedral",
    "fold_to_dihedral",
    "f4_roots_from_d4",
    "f4_d4_generators",
    "get_fold",
    "FOLDS",
]

Word = tuple[int, ...]


def coxeter_exponent(p: GoldenNumber) -> int:
    """``m`` with ``4 cos^2(pi q/m) = p`` for a Cartan product ``M_ij M_ji``."""
    table = {
        golden(0): 2,
        golden(1): 3,
        golden(2): 4,
        golden(3): 6,
        TAU + 1: 5,  # tau^2, label 5
        2 - TAU: 5,  # (tau - 1)^2, label 5/2
    }
    try:
        return table[p]
    except KeyError:
        raise ValueError(f"Cartan product {p} is not a supported bond") from None


@dataclass(frozen=True)
class FoldReport:
    name: str
    checks: tuple[tuple[str, bool, object], ...]
    relations: RelationReport | None = None

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[str]:
        return [name for name, ok, _ in self.checks if not ok]

    def as_dict(self) -> dict:
        return {
            "fold": self.name,
            "passed": self.passed,
            "checks": {name: {"passed": ok, "value": _jsonable(v)} for name, ok, v in self.checks},
            "relations": self.relations.as_dict() if self.relations is not None else [],
        }


def _jsonable(v):
    if isinstance(v, GoldenNumber):
        return format_golden(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return v


@dataclass(frozen=True)
class FoldingMap:
    """A fold of ``source`` onto ``target_type``.

    ``coefficients[i]`` expands folded root ``i`` on the parent simple
    roots; it is empty for purely dihedral folds, which have no folded
    roots.  ``generator_words[i]`` lists parent node indices (1-based).
    """

    name: str
    source: RootSystem
    target_type: DiagramType
    generator_words: tuple[Word, ...]
    coefficients: tuple[tuple[GoldenNumber, ...], ...] = ()
    extended_coefficients: tuple[GoldenNumber, ...] | None = None
    target: RootSystem | None = field(default=None, compare=False)

    @property
    def folded_roots(self) -> tuple[Vector, ...]:
        return tuple(self._combine(row) for row in self.coefficients)

    @property
    def extended_root(self) -> Vector | None:
        if self.extended_coefficients is None:
            return None
        return self._combine(self.extended_coefficients)

    def _combine(self, row) -> Vector:
        acc = tuple(ZERO for _ in range(self.source.ambient_dim))
        for c, a in zip(row, self.source.simple_roots):
            if c:
                acc = vadd(acc, vscale(c, a))
        return acc

    @property
    def gram(self) -> GoldenMatrix | None:
        return self.source.gram

    def generator_matrices(self) -> list[GoldenMatrix]:
        refl = simple_reflections(self.source)
        return [word_matrix(refl, w) for w in self.generator_words]

    def folded_coxeter_element(self) -> GoldenMatrix:
        return word_matrix(self.generator_matrices(), range(1, len(self.generator_words) + 1))

    def cartan(self):
        return cartan_matrix(self.folded_roots, self.gram)

    def extended_cartan(self):
        return cartan_matrix((self.extended_root,) + self.folded_roots, self.gram)

    def relations(self) -> list[tuple[Word, int]]:
        """Coxeter relations of the target in folded-generator labels."""
        k = len(self.generator_words)
        if not self.coefficients:
            return [((1,), 2), ((2,), 2), ((1, 2), self.target_type.dihedral_label.numerator)]
        M = canonical_cartan(self.target_type)
        rel = [((i,), 2) for i in range(1, k + 1)]
        for i in range(k):
            for j in range(i + 1, k):
                rel.append(((i + 1, j + 1), coxeter_exponent(M[i][j] * M[j][i])))
        return rel

    def verify(self, group_order: bool = False, cap: int = 2_000_000) -> FoldReport:
        checks: list[tuple[str, bool, object]] = []
        gens = self.generator_matrices()
        h = self.source.coxeter_number
        C = word_matrix(gens, range(1, len(gens) + 1))
        order = element_order(C, cap=4 * h)
        checks.append(("coxeter_order", order == h, {"measured": order, "expected": h}))
        if self.coefficients:
            cart = self.cartan()
            canon = canonical_cartan(self.target_type)
            checks.append(("cartan", cart == canon, [list(r) for r in cart]))
            checks.append(("det", True, det(cart)))
            checks.append(("reflection_agreement", self._reflection_agreement(gens), None))
            if self.extended_coefficients is not None and self.target_type.crystallographic:
                d = det(self.extended_cartan())
                checks.append(("extended_det", d == 0, d))
        rel = verify_relations(gens, self.relations())
        checks.append(("relations", rel.passed, None))
        if group_order:
            expected = catalog(self.target_type)[1]
            try:
                got = enumerate_group(gens, cap=cap)
            except CapExceeded:
                got = None
            checks.append(("group_order", got == expected, {"measured": got, "expected": expected}))
        return FoldReport(self.name, tuple(checks), rel)

    def _reflection_agreement(self, gens) -> bool:
        """Generator i acts on every folded root as the reflection in root i."""
        roots = self.folded_roots
        if self.extended_root is not None:
            roots = roots + (self.extended_root,)
        for g, b in zip(gens, self.folded_roots):
            bb = dot(b, b, self.gram)
            for x in roots:
                expect = tuple(
                    xi - (2 * dot(x, b, self.gram) / bb) * bi for xi, bi in zip(x, b)
                )
                if g.apply(x) != expect:
                    return False
        return True

    def as_dict(self) -> dict:
        return {
            "fold": self.name,
            "source": str(self.source.diagram),
            "target": str(self.target_type),
            "generator_words": [list(w) for w in self.generator_words],
            "coefficients": [[format_golden(c) for c in row] for row in self.coefficients],
            "extended_coefficients": (
                None
                if self.extended_coefficients is None
                else [format_golden(c) for c in self.extended_coefficients]
            ),
        }


# ----------------------------------------------------------------- helpers


def _row(n: int, entries: dict[int, object]) -> tuple[GoldenNumber, ...]:
    return tuple(golden(entries.get(i, 0)) for i in range(1, n + 1))


def _neg_highest(sys: RootSystem) -> tuple[GoldenNumber, ...]:
    return tuple(-c for c in root_coordinates(sys, highest_root(sys)))


def _target_system(name, source, target_type, rows, ext_row) -> RootSystem:
    fm = FoldingMap(name, source, target_type, (), tuple(rows), ext_row)
    roots = fm.folded_roots
    h, order = catalog(target_type)
    return RootSystem(
        target_type,
        source.ambient_dim,
        roots,
        cartan_matrix(roots, source.gram),
        h,
        order,
        fm.extended_root,
        source.gram,
    )


def _make(name, source, target_type, words, rows, ext_row=None) -> FoldingMap:
    rows = tuple(tuple(golden(c) for c in r) for r in rows)
    target = _target_system(name, source, target_type, rows, ext_row) if rows else None
    return FoldingMap(name, source, target_type, tuple(tuple(w) for w in words), rows, ext_row, target)


# ------------------------------------------------------------------- folds


def fold_a2n1_to_cn(n: int) -> FoldingMap:
    """A_(2n-1) -> C_n: ``a'_i = (a_i + a_(2n-i))/2`` for i < n, ``a'_n = a_n``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    m = 2 * n - 1
    src = build_root_system(f"A{m}")
    half = Fraction(1, 2)
    rows = [_row(m, {i: half, m + 1 - i: half}) for i in range(1, n)] + [_row(m, {n: 1})]
    words = [(i, m + 1 - i) for i in range(1, n)] + [(n,)]
    return _make(f"A{m}->C{n}", src, parse_type(f"C{n}"), words, rows, _neg_highest(src))


def fold_dn_to_bn1(n: int) -> FoldingMap:
    """D_n -> B_(n-1): ``a'_i = a_i`` for i <= n-2, ``a'_(n-1) = (a_(n-1) + a_n)/2``."""
    if n < 4:
        raise ValueError("n must be >= 4")
    src = build_root_system(f"D{n}")
    half = Fraction(1, 2)
    rows = [_row(n, {i: 1}) for i in range(1, n - 1)] + [_row(n, {n - 1: half, n: half})]
    words = [(i,) for i in range(1, n - 1)] + [(n - 1, n)]
    return _make(f"D{n}->B{n - 1}", src, parse_type(f"B{n - 1}"), words, rows, _neg_highest(src))


def fold_d4_to_g2() -> FoldingMap:
    """D_4 -> G_2 with roots ``(a_1 + a_3 + a_4)/3`` and ``a_2``.

    The extended root is the affine root of D_4, which attaches to the
    long root ``a_2`` exactly as the affine node of G_2 does.
    """
    src = build_root_system("D4")
    third = Fraction(1, 3)
    rows = [_row(4, {1: third, 3: third, 4: third}), _row(4, {2: 1})]
    return _make("D4->G2", src, parse_type("G2"), [(1, 3, 4), (2,)], rows, _neg_highest(src))


def _h_fold(rank: int) -> FoldingMap:
    from .rootsys import H3_FOLD, H4_FOLD

    src = build_root_system("D6" if rank == 3 else "E8")
    table = H3_FOLD if rank == 3 else H4_FOLD
    n = src.rank
    rows = [_row(n, {i: TAU, j: 1} if tau_first else {i: 1, j: TAU}) for i, j, tau_first in table]
    words = [(i, j) for i, j, _ in table]
    target = extend(build_root_system(f"H{rank}"))
    ext = root_coordinates(src, target.extended_root)
    fm = FoldingMap(
        f"{src.diagram}->H{rank}", src, target.diagram, tuple(words),
        tuple(tuple(golden(c) for c in r) for r in rows), tuple(ext), target,
    )
    if fm.folded_roots != target.simple_roots:
        raise AssertionError("folded roots disagree with the H simple roots")
    return fm


def fold_d6_to_h3() -> FoldingMap:
    """D_6 -> H_3: ``b1 = a1 + tau a5``, ``b2 = a2 + tau a4``, ``b3 = tau a3 + a6``."""
    return _h_fold(3)


def fold_e8_to_h4() -> FoldingMap:
    """E_8 -> H_4: ``b_i = a_i + tau a_(8-i)`` (i = 1..3), ``b4 = tau a4 + a8``."""
    return _h_fold(4)


def fold_e6_to_f4() -> FoldingMap:
    """E_6 -> F_4: ``a'_1 = a6, a'_2 = a3, a'_3 = (a2 + a4)/2, a'_4 = (a1 + a5)/2``."""
    src = build_root_system("E6")
    half = Fraction(1, 2)
    rows = [_row(6, {6: 1}), _row(6, {3: 1}), _row(6, {2: half, 4: half}), _row(6, {1: half, 5: half})]
    words = [(6,), (3,), (2, 4), (1, 5)]
    return _make("E6->F4", src, parse_type("F4"), words, rows, _neg_highest(src))


def fold_to_dihedral(sys: RootSystem | str) -> FoldingMap:
    """Bipartite fold onto ``I_2(h)``: ``R1`` and ``R2`` are the class products."""
    if not isinstance(sys, RootSystem):
        sys = build_root_system(sys)
    first, second = two_coloring(sys)
    h = sys.coxeter_number
    target = DiagramType("I2", 2, Fraction(h))
    return FoldingMap(
        f"{sys.diagram}->I2({h})", sys, target, (tuple(sorted(first)), tuple(sorted(second)))
    )


def fold_an_to_dihedral(n: int) -> FoldingMap:
    if n < 2:
        raise ValueError("n must be >= 2")
    return fold_to_dihedral(f"A{n}")


def fold_dn_to_dihedral(n: int) -> FoldingMap:
    if n < 4:
        raise ValueError("n must be >= 4")
    return fold_to_dihedral(f"D{n}")


def fold_e6_to_i212() -> FoldingMap:
    return fold_to_dihedral("E6")


def fold_e7_to_i218() -> FoldingMap:
    return fold_to_dihedral("E7")


def fold_e8_to_i230() -> FoldingMap:
    return fold_to_dihedral("E8")


# ----------------------------------------------------- F4 inside D4 shells


def _d4_similarity() -> GoldenMatrix:
    """``L`` with ``L^T L = 2 I`` taking the standard F_4 roots onto the D_4 shells."""
    return GoldenMatrix.from_rows(
        [[1, 1, 0, 0], [1, -1, 0, 0], [0, 0, 1, 1], [0, 0, 1, -1]]
    )


def f4_d4_generators(fold: FoldingMap | None = None) -> list[GoldenMatrix]:
    """The folded E_6 -> F_4 generators transported into D_4 coordinates.

    Each generator's action on the folded roots is written in the folded-
    root basis and conjugated by the map sending folded root ``i`` to
    ``L f_i`` (``f_i`` the standard F_4 simple roots).  Both bases have
    the F_4 Cartan matrix, so the result is the folded W(f_4) acting on
    the lattice D_4.
    """
    fold = fold or fold_e6_to_f4()
    tgt = fold.target
    L = _d4_similarity()
    S = GoldenMatrix.from_columns([L.apply(f) for f in build_root_system("F4").simple_roots])
    Sinv = GoldenMatrix.from_rows(inverse(S))
    out = []
    for g in fold.generator_matrices():
        cols = [root_coordinates(tgt, g.apply(b)) for b in tgt.simple_roots]
        out.append(S @ GoldenMatrix.from_columns(cols) @ Sinv)
    return out


def f4_roots_from_d4() -> PointSet:
    """The 24 + 24 vectors of squared norm 2 and 4 in the lattice D_4."""
    ball = lattice_ball(LatticeSpec("D", 4), 4)
    zero = tuple(ZERO for _ in range(4))
    pts = [p for p in ball.points if p != zero]
    return PointSet.of(pts, "D4 shells of norm 2 and 4", 4)


# ---------------------------------------------------------------- registry


FOLDS = {
    ("E6", "F4"): fold_e6_to_f4,
    ("E6", "I2(12)"): fold_e6_to_i212,
    ("E7", "I2(18)"): fold_e7_to_i218,
    ("E8", "I2(30)"): fold_e8_to_i230,
    ("E8", "H4"): fold_e8_to_h4,
    ("D6", "H3"): fold_d6_to_h3,
    ("D4", "G2"): fold_d4_to_g2,
}


def get_fold(source: str, target: str) -> FoldingMap:
    """Look up a fold by type names, e.g. ``("A5", "C3")`` or ``("D6", "I2(10)")``."""
    s, t = parse_type(source), parse_type(target)
    key = (str(s), str(t))
    if key in FOLDS:
        return FOLDS[key]()
    if s.family == "A" and t.family == "C" and s.rank == 2 * t.rank - 1:
        return fold_a2n1_to_cn(t.rank)
    if s.family == "D" and t.family == "B" and t.rank == s.rank - 1:
        return fold_dn_to_bn1(s.rank)
    if t.family == "I2" and s.crystallographic:
        fm = fold_to_dihedral(build_root_system(s))
        if fm.target_type != t:
            raise ValueError(f"{s} folds onto I2({fm.source.coxeter_number}), not {t}")
        return fm
    raise ValueError(f"no fold from {s} to {t}")
