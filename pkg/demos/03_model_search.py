"""
Counting small models
=====================

The search fills tables block by block and propagates every ground instance
of the identities.  Results are one table per isomorphism class.
"""

import time

from magmakit import enumerate_models, get_variety
from magmakit.modelgen import brute_force_models

for name in ("MAGMA", "LZ", "Z", "RB", "U", "L1", "L3"):
    v = get_variety(name)
    counts = []
    t0 = time.perf_counter()
    for n in range(1, 5 if name != "MAGMA" else 4):
        counts.append(len(enumerate_models(v, n)))
    print(f"{name:6} {counts}  ({time.perf_counter() - t0:.2f}s)")

# at size 3 the scan over all 3**9 tables gives the same answer
u = get_variety("U")
print(enumerate_models(u, 3) == brute_force_models(u, 3))
