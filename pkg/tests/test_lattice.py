import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxfold.exactnum import dot
from coxfold.group import CapExceeded
from coxfold.lattice import (
    LatticeSpec,
    an_generators,
    delone_paired_simplices,
    diplo_simplex,
    is_invariant,
    lattice_ball,
    parse_lattice,
    permutohedron,
    root_lattice_ball,
    root_polytope_an,
    voronoi_vertices_an,
)
from coxfold.rootsys import build_root_system, k_basis, weights_an
from oracles import ball_count_box


def test_ball_examples():
    assert len(lattice_ball(LatticeSpec("A_root", 2), 2)) == 7
    assert len(lattice_ball(LatticeSpec("D", 4), 2)) == 25
    for kind in ("A_root", "A_weight", "D", "Z"):
        assert len(lattice_ball(LatticeSpec(kind, 3), 0)) == 1


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["A_root", "A_weight", "D", "Z"]), st.integers(1, 4), st.integers(0, 6))
def test_ball_matches_brute_force(kind, n, r2):
    ps = lattice_ball(LatticeSpec(kind, n), r2)
    assert len(ps) == ball_count_box(kind, n, r2)
    assert all(dot(p, p) <= r2 for p in ps)
    assert ps.negated().points == ps.points


def test_root_lattice_is_sublattice():
    for n in (2, 3, 4):
        a = set(lattice_ball(LatticeSpec("A_root", n), 4).points)
        w = set(lattice_ball(LatticeSpec("A_weight", n), 4).points)
        assert a <= w and len(w) > len(a)


def test_root_lattice_ball_e8():
    s = build_root_system("E8")
    assert len(root_lattice_ball(s, 2)) == 241
    assert len(root_lattice_ball(s, 4)) == 1 + 240 + 2160


def test_ball_cap():
    with pytest.raises(CapExceeded):
        lattice_ball(LatticeSpec("Z", 6), 9, cap=100)
    with pytest.raises(ValueError):
        lattice_ball(LatticeSpec("Z", 2), -1)


def test_parse_lattice():
    assert parse_lattice("A4*") == LatticeSpec("A_weight", 4)
    assert str(parse_lattice("d5")) == "D5"
    for bad in ("D4*", "E8", "A"):
        with pytest.raises(ValueError):
            parse_lattice(bad)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_root_polytope(n):
    ps = root_polytope_an(n)
    assert len(ps) == n * (n + 1)
    k = k_basis(n)
    assert tuple(x - y for x, y in zip(k[0], k[1])) in ps
    assert is_invariant(ps, an_generators(n))


@pytest.mark.parametrize("n", range(1, 7))
def test_voronoi_count(n):
    ps = voronoi_vertices_an(n)
    assert len(ps) == 2 ** (n + 1) - 2
    assert is_invariant(ps, an_generators(n))


def test_voronoi_first_orbit():
    from coxfold.group import orbit

    o = orbit(an_generators(3), weights_an(3).weights[0])
    assert set(o.points) == set(k_basis(3))


def test_delone_pairs():
    pairs = delone_paired_simplices(3)
    assert [(a.label, b.label) for a, b in pairs] == [("W(a3) w1", "W(a3) w3"), ("W(a3) w2", "W(a3) w2")]
    assert [(len(a), len(b)) for a, b in pairs] == [(4, 4), (6, 6)]
    assert [(a.label[-2:], b.label[-2:]) for a, b in delone_paired_simplices(4)] == [("w1", "w4"), ("w2", "w3")]


@pytest.mark.parametrize("n", range(1, 7))
def test_permutohedron(n):
    ps = permutohedron(n)
    assert len(ps) == math.factorial(n + 1)
    norms = {dot(p, p) for p in ps}
    assert len(norms) == 1
    centroid = [sum((p[i] for p in ps), start=ps.points[0][i] * 0) for i in range(n + 1)]
    assert all(c == 0 for c in centroid)
    if n <= 4:
        assert is_invariant(ps, an_generators(n))


def test_permutohedron_guard():
    with pytest.raises(CapExceeded):
        permutohedron(8)


def test_diplo_simplex():
    ps = diplo_simplex(3)
    assert len(ps) == 8
    w = weights_an(3).weights
    assert w[0] in ps and tuple(-x for x in w[2]) in ps
    assert ps.negated().points == ps.points
