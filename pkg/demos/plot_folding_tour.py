"""
Folding Coxeter diagrams
========================

Combine commuting reflections of a simply laced group to obtain a smaller
reflection group with the same Coxeter number.
"""

from coxfold.exactnum import format_golden
from coxfold.folding import FOLDS
from coxfold.group import element_order

# every registered fold: parent h, order of the folded Coxeter element
for key, make in sorted(FOLDS.items(), key=lambda kv: kv[0]):
    fm = make()
    h = fm.source.coxeter_number
    folded = element_order(fm.folded_coxeter_element(), cap=4 * h)
    rep = fm.verify()
    print(f"{fm.name:14s} h={h:2d} folded order={folded:2d} verified={rep.passed}")

# the E8 -> H4 fold lands in Q(tau): look at its Cartan matrix
from coxfold.folding import fold_e8_to_h4

M = fold_e8_to_h4().cartan()
for row in M:
    print("  ".join(f"{format_golden(x):>8s}" for x in row))
