"""
Fractional labels of affine extensions
======================================

Measure the dihedral angle between the extended root's reflection and the
bipartite class reflections, read off on the Coxeter plane.
"""

from coxfold.affine import affine_dihedral_label, affine_h_relations, dihedral_affine_labels, word_identity_report
from coxfold.folding import fold_d6_to_h3, fold_e8_to_h4

for t in ["A4", "D6", "E6", "E7", "E8"]:
    rep = affine_dihedral_label(t)
    cands = ", ".join(f"{k}={v}" for k, v in dihedral_affine_labels(rep.h).items())
    print(f"{t}: h={rep.h:2d} label {rep.measured} with R{rep.partner}  [{cands}]")

# H3 and H4 via the folded roots
for fm in (fold_d6_to_h3(), fold_e8_to_h4()):
    rep = affine_h_relations(fm)
    print(f"{rep.type}: label {rep.check.measured} with b{rep.partner}, candidate={rep.in_candidates}")

# r_a0 is an element of the dihedral group only for D4
for t in ["D4", "D5", "E6"]:
    w = word_identity_report(t)
    print(t, "exact word:", w["exact_word"], "| plane word negates a0:", w["plane_word_negates_a0"])
