import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxfold.affine import (
    AffineIsometry,
    FractionalLabel,
    FractionalMismatch,
    affine_dihedral_label,
    affine_h_relations,
    affine_reflection,
    dihedral_affine_labels,
    fractional_relation_check,
    verify_word_identity,
    word_identity_report,
)
from coxfold.exactnum import GoldenMatrix, GoldenNumber, dot, vscale
from coxfold.folding import fold_d6_to_h3, fold_e8_to_h4
from coxfold.group import dihedral_generators, reflection_matrix
from coxfold.project import coxeter_plane_basis
from coxfold.rootsys import build_root_system

ints = st.integers(-4, 4)


def _vec(xs):
    return tuple(GoldenNumber(x) for x in xs)


@settings(max_examples=50)
@given(st.lists(ints, min_size=4, max_size=4), st.lists(ints, min_size=4, max_size=4), ints)
def test_affine_reflection_properties(a, lam, n):
    alpha = _vec(a)
    if not any(a):
        with pytest.raises(ValueError):
            affine_reflection(alpha, n)
        return
    r = affine_reflection(alpha, n)
    x = _vec(lam)
    assert r(r(x)) == x
    assert (r @ r).is_identity()
    assert r.linear == reflection_matrix(alpha)
    # a point on the hyperplane is fixed
    aa = dot(alpha, alpha)
    p = vscale(GoldenNumber(n) / aa, alpha)
    assert r(p) == p
    # isometry
    y = r(x)
    d0 = tuple(u - v for u, v in zip(x, p))
    d1 = tuple(u - v for u, v in zip(y, p))
    assert dot(d0, d0) == dot(d1, d1)


def test_n_zero_is_point_reflection():
    a = _vec([1, -1, 0])
    r = affine_reflection(a, 0)
    assert r(a) == tuple(-x for x in a)
    assert not any(r.translation)


def test_translation_composition():
    a = _vec([1, -1, 0])
    t = affine_reflection(a, 1) @ affine_reflection(a, 0)
    assert t.is_translation()
    assert t.translation == a  # 2a/(a,a) with (a,a) = 2


def test_composition_law():
    L1 = GoldenMatrix.from_rows([[0, 1], [1, 0]])
    L2 = GoldenMatrix.from_rows([[1, 0], [0, -1]])
    f, g = AffineIsometry(L1, _vec([1, 2])), AffineIsometry(L2, _vec([3, 0]))
    x = _vec([5, 7])
    assert (f @ g)(x) == f(g(x))
    e = AffineIsometry.identity(2)
    assert (e @ f) == f and (f @ e) == f


def test_candidate_labels():
    assert dihedral_affine_labels(12) == {"h'-": Fraction(12, 5), "h'+": Fraction(12, 7), "h''": Fraction(24, 11)}
    assert dihedral_affine_labels(4)["h'-"] == 4
    assert dihedral_affine_labels(5)["h''"] == Fraction(5, 2)
    with pytest.raises(ValueError):
        dihedral_affine_labels(2)


def test_fractional_label_validation():
    assert str(FractionalLabel(12, 7)) == "12/7"
    assert FractionalLabel.of(Fraction(10, 4)) == FractionalLabel(5, 2)
    for p, q in [(1, 1), (4, 2), (5, 5), (5, 0)]:
        with pytest.raises(ValueError):
            FractionalLabel(p, q)


@pytest.mark.parametrize("t,label", [("E6", "12/7"), ("E7", "9/5"), ("E8", "15/7")])
def test_e_labels(t, label):
    rep = affine_dihedral_label(t)
    assert rep.passed
    assert str(rep.measured.numerator) + "/" + str(rep.measured.denominator) == label
    assert rep.plane_word_negates_a0


@pytest.mark.parametrize("t", ["A3", "A4", "D4", "D5", "D6", "D7", "D8"])
def test_measured_labels_are_candidates(t):
    rep = affine_dihedral_label(t)
    assert rep.check is not None and rep.check.passed
    assert rep.in_candidates


def test_e6_partner_differs_from_stated():
    rep = affine_dihedral_label("E6")
    assert rep.stated_partner == 1 and rep.partner == 2
    assert rep.per_partner[1] == "2"  # the stated partner gives a trivial bond


@pytest.mark.parametrize("make,partner", [(fold_d6_to_h3, 2), (fold_e8_to_h4, 1)])
def test_h_relations(make, partner):
    rep = affine_h_relations(make())
    assert rep.passed and rep.partner == partner
    assert rep.check.order == 5
    assert abs(rep.check.angle - 4 * math.pi / 5) < 1e-9


def test_h_labels_against_candidates():
    assert affine_h_relations(fold_d6_to_h3()).in_candidates
    # 5/2 is not among 15/7, 15/8, 60/29
    assert not affine_h_relations(fold_e8_to_h4()).in_candidates


def test_fractional_strict_mismatch():
    s = build_root_system("E8")
    R1, R2, _ = dihedral_generators(s)
    plane = coxeter_plane_basis(s, R1, R2)
    rep = fractional_relation_check(R1, R2, FractionalLabel(30, 1), plane)
    assert rep.passed and rep.measured == 30
    with pytest.raises(FractionalMismatch):
        fractional_relation_check(R1, R2, FractionalLabel(15, 7), plane, strict=True)


def test_word_identity_trivial():
    R1, R2, h = dihedral_generators(build_root_system("D5"))
    assert verify_word_identity(R1, R1, R2, 4) == (1,)
    assert verify_word_identity(R2 @ R1 @ R2, R1, R2, 4) == (2, 1, 2)
    assert verify_word_identity(GoldenMatrix.identity(5), R1, R2, 1) == ()


@pytest.mark.parametrize("t", ["D5", "D6", "E6"])
def test_stated_word_identities_fail(t):
    rep = word_identity_report(t)
    assert not rep["stated_holds"]
    assert rep["exact_word"] is None  # r_a0 is not in <R1, R2>
    assert rep["plane_word_negates_a0"]


def test_d4_reflection_is_dihedral():
    rep = word_identity_report("D4")
    assert not rep["stated_holds"]
    assert rep["det_stated"] == "1" and rep["det_r0"] == "-1"
    assert rep["exact_word"] == "R1R2R1R2R1R2R1"
