"""
Counting small models
=====================

Enumerate each class up to isomorphism with the clause search and compare
against the table-space scan.
"""

# %%
import time

from narhoop.core import CLASSES
from narhoop.enumeration import EnumerationTask, count, enumerate_models

for cls in CLASSES:
    row = [count(EnumerationTask(n, cls, "both")) for n in (1, 2, 3)]
    print(f"{cls:18s}", row)

# %%
# The two right hoops on three points.
for m in enumerate_models(EnumerationTask(3, "right_hoop")):
    print(m.mul.tolist(), m.div.tolist())

# %%
# Size 4 by backtracking only; a few seconds for this class.
t = time.perf_counter()
n4 = count(EnumerationTask(4, "unital_narhoop"))
print("unital narhoops on 4 points:", n4, f"({time.perf_counter() - t:.0f} s)")
