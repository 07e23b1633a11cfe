"""
Projecting root lattices
========================

A3 onto its Coxeter plane gives a square lattice, A4 a five-fold point set,
and the D6 / E8 roots split into two golden-ratio shells in the H3 / H4
parallel spaces.  SVGs are written to the working directory.
"""

from coxfold.folding import fold_d6_to_h3, fold_e8_to_h4
from coxfold.lattice import root_lattice_ball
from coxfold.project import (
    coxeter_plane_basis,
    emit,
    h_parallel_basis,
    project,
    rotation_invariance_check,
    shell_classify,
    square_lattice_fit,
)
from coxfold.rootsys import all_roots, build_root_system

a3 = build_root_system("A3")
ps = project(root_lattice_ball(a3, 6).points, coxeter_plane_basis(a3))
print("A3:", len(ps), "points, square-lattice residual", square_lattice_fit(ps)[0])
emit(ps, "svg", "a3_plane.svg")

a4 = build_root_system("A4")
ps = project(root_lattice_ball(a4, 12).points, coxeter_plane_basis(a4))
print("A4:", len(ps), "points, 5-fold", rotation_invariance_check(ps, 5), "7-fold", rotation_invariance_check(ps, 7))
emit(ps, "svg", "a4_plane.svg")

for fm in (fold_d6_to_h3(), fold_e8_to_h4()):
    shells = shell_classify(project(all_roots(fm.source), h_parallel_basis(fm)))
    (r0, n0), (r1, n1) = shells
    print(f"{fm.source.diagram} roots: {n0} at {r0:.7f}, {n1} at {r1:.7f}, ratio {r1 / r0:.9f}")
