"""
Axioms, order and the independence fixtures
============================================

Build a few two-element algebras by hand, look at the derived meet and
order, and see which axioms each one breaks.
"""

# %%
# A model is two integer tables; row = left argument.
import numpy as np

from narhoop.core import NARHOOP_BASIS, FiniteMagma, check_axioms, classify, derive
from narhoop.suite import builtin_fixtures

g2 = FiniteMagma(2, [[0, 0], [0, 1]], [[1, 0], [1, 1]])  # min with Goedel implication
d = derive(g2)
print("meet table\n", d.sqcap)
print("order (row <= column)\n", d.leq.astype(int))

# %%
# The full default report; failing axioms carry the first counterexample.
print(check_axioms(g2))
print(classify(g2).classes())

# %%
# A1..A4 each satisfy three of N1-N4.
fx = builtin_fixtures()
for i in range(1, 5):
    m = fx[f"A{i}"]
    report = check_axioms(m, NARHOOP_BASIS)
    print(f"A{i}: failing {report.failing()}  ->", report[f"N{i}"].describe())

# %%
# Order on a right quasigroup is plain equality.
z2 = fx["Z2_xor"]
print(np.array_equal(derive(z2).leq, np.eye(2, dtype=bool)))
