from fractions import Fraction

import pytest

from coxfold.exactnum import TAU, ZERO, det, dot, golden
from coxfold.rootsys import (
    DiagramType,
    UnsupportedType,
    all_roots,
    build_root_system,
    canonical_cartan,
    cartan_matrix,
    catalog,
    dynkin_edges,
    extend,
    extended_cartan,
    fundamental_weights,
    highest_root,
    k_basis,
    parse_type,
    root_coordinates,
    weights_an,
)
from oracles import coxeter_number_from_roots, num_roots

TYPES = ["A1", "A2", "A4", "A7", "B2", "B3", "B5", "C2", "C4", "D4", "D5", "D6", "D8",
         "E6", "E7", "E8", "F4", "G2", "H3", "H4"]
DIHEDRAL = ["I2(3)", "I2(4)", "I2(5)", "I2(6)", "I2(5/2)"]


@pytest.mark.parametrize("t", TYPES + DIHEDRAL)
def test_cartan_matches_diagram(t):
    s = build_root_system(t)
    assert s.cartan == canonical_cartan(t)
    assert all(c == 2 for c in (s.cartan[i][i] for i in range(s.rank)))


@pytest.mark.parametrize("t", TYPES)
def test_root_count_and_coxeter_number(t):
    s = build_root_system(t)
    f, n = s.diagram.family, s.diagram.rank
    assert len(all_roots(s)) == num_roots(f, n)
    assert s.coxeter_number == coxeter_number_from_roots(f, n)


@pytest.mark.parametrize("t", TYPES + DIHEDRAL)
def test_long_roots_have_norm_two(t):
    s = build_root_system(t)
    norms = [s.inner(a, a) for a in s.simple_roots]
    assert max(norms) == 2


@pytest.mark.parametrize("t", [t for t in TYPES if t[0] not in "H"])
def test_extended_determinant_zero(t):
    s = extend(build_root_system(t))
    assert det(extended_cartan(s)) == 0
    assert s.inner(s.extended_root, s.extended_root) == 2


@pytest.mark.parametrize("t", ["H3", "H4"])
def test_h_extended_root(t):
    s = extend(build_root_system(t))
    b0 = s.extended_root
    assert s.inner(b0, b0) == s.inner(s.simple_roots[0], s.simple_roots[0])
    bonded = [i for i, b in enumerate(s.simple_roots, 1) if s.inner(b0, b)]
    assert bonded == ([2] if t == "H3" else [1])
    # b0 lies in the span of the simple roots, so the extended matrix is singular
    assert det(extended_cartan(s)) == 0


def test_h3_roots_from_d6():
    s = build_root_system("H3")
    d6 = build_root_system("D6").simple_roots
    b1 = tuple(x + TAU * y for x, y in zip(d6[0], d6[4]))
    assert s.simple_roots[0] == b1


def test_node_numbering():
    # D_n: node n on node n-2; E6: 6 on 3; E7: 7 on 4; E8: 8 on 5
    assert (4, 6) in dynkin_edges(canonical_cartan("D6"))
    assert (3, 6) in dynkin_edges(canonical_cartan("E6"))
    assert (4, 7) in dynkin_edges(canonical_cartan("E7"))
    assert (5, 8) in dynkin_edges(canonical_cartan("E8"))


@pytest.mark.parametrize("n", range(1, 11))
def test_k_basis_gram(n):
    k = k_basis(n)
    total = tuple(sum((v[i] for v in k), ZERO) for i in range(n + 1))
    assert all(x == 0 for x in total)
    for i in range(n + 1):
        for j in range(n + 1):
            want = Fraction(n, n + 1) if i == j else Fraction(-1, n + 1)
            assert dot(k[i], k[j]) == golden(want)


def test_weights_are_dual():
    for t in ["A4", "D5", "E6", "E8", "F4", "G2", "C3"]:
        s = build_root_system(t)
        w = fundamental_weights(s).weights
        for i in range(s.rank):
            for j, a in enumerate(s.simple_roots):
                val = 2 * s.inner(w[i], a) / s.inner(a, a)
                assert val == (1 if i == j else 0)
    assert fundamental_weights(build_root_system("A3")).weights == weights_an(3).weights


def test_highest_root_height():
    for t, ht in [("A4", 4), ("D6", 9), ("E6", 11), ("E7", 17), ("E8", 29), ("F4", 11), ("G2", 5)]:
        s = build_root_system(t)
        assert sum(root_coordinates(s, highest_root(s)), ZERO) == ht


def test_cartan_scale_invariant():
    s = build_root_system("H4")
    scaled = [tuple(TAU * x for x in r) for r in s.simple_roots]
    assert cartan_matrix(scaled, s.gram) == s.cartan


def test_parse_type():
    assert parse_type("e8") == DiagramType("E", 8)
    assert parse_type("I2(5/2)").dihedral_label == Fraction(5, 2)
    assert str(parse_type("I2(12)")) == "I2(12)"
    for bad in ["Q3", "D3", "E9", "", "I2(1)"]:
        with pytest.raises(UnsupportedType):
            parse_type(bad)


def test_unsupported_dihedral_label():
    with pytest.raises(UnsupportedType):
        build_root_system("I2(7)")


def test_catalog():
    assert catalog("E6") == (12, 51840)
    assert catalog("H4") == (30, 14400)
    assert catalog("I2(18)") == (18, 36)


@pytest.mark.parametrize("t", ["A5", "B4", "C4", "D6", "E6", "E7", "F4", "G2"])
def test_highest_root_is_max_height(t):
    s = build_root_system(t)
    heights = {r: sum(root_coordinates(s, r), ZERO) for r in all_roots(s)}
    top = max(heights.values())
    assert [r for r, h in heights.items() if h == top] == [highest_root(s)]
