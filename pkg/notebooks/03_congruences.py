"""
Congruences and normal subnarhoops
==================================

On every small narhoop, unital congruences and nonempty normal
subnarhoops match up one to one.
"""

# %%
from narhoop import congruence as cg
from narhoop.core import classify
from narhoop.suite import builtin_fixtures, verification_corpus

g2 = builtin_fixtures()["G2"]
for c in cg.all_congruences(g2):
    print(c.to_dict())

# %%
# Normal subsets of G2 and the congruence each one induces.
for N in cg.normal_subsets(g2):
    print(N, "->", cg.theta_from_N(g2, N).partition.to_list())
print(cg.check_normal(g2, [0]).to_dict())

# %%
# The whole size-3 corpus: count narhoops where the correspondence holds.
narhoops = [m for _, m in verification_corpus(3) if classify(m).is_narhoop]
ok = sum(cg.correspondence(m).is_bijection for m in narhoops)
print(f"{ok} of {len(narhoops)} narhoops")

# %%
# Largest congruence lattice on three points.
best = max(narhoops, key=lambda m: len(cg.all_congruences(m)))
print(best, len(cg.all_congruences(best)))
