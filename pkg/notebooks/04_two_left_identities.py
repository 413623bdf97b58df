"""
A unital model with two left identities
=======================================

Among right-residuated magmas whose order comes from the meet, being
unital does not force a unique left identity.  The smallest example has
three elements; it is not a narhoop.
"""

# %%
from narhoop import structure as st
from narhoop.core import FiniteMagma, check_axioms, classify, derive

m = FiniteMagma(3, [[0, 0, 0], [0, 1, 2], [0, 1, 2]], [[1, 0, 0], [1, 1, 1], [1, 0, 1]])
print(derive(m).leq.astype(int))  # the chain 0 < 2 < 1
print(classify(m).classes(), "unital:", classify(m).is_unital)

# %%
rec = st.unitality(m, strict=False)
print("unit", rec.unit, "left identities", rec.left_identities)
print(rec.violations)

# %%
# N1 is what fails.
print(check_axioms(m, ("N1", "N2", "N3", "N4")))

# %%
# Plain loops, no library: 1 and 2 both act as left identities.
mul = m.mul.tolist()
print([e for e in range(3) if all(mul[e][y] == y for y in range(3))])
