# %% [markdown]
# # Rounding and the fast block minimum
#
# Weighted MinHash first rounds the unit vector so each squared entry is a
# multiple of 1/L, then treats entry i as k_i identical slots in a block of
# length L. Hashing every slot costs O(L); walking only the running minima of
# a block costs O(log L) and gives the same distribution.

# %%
import math
import time

import numpy as np

from ipsketch.hashing import SeedSpec, block_prefix_min, record_sequence
from ipsketch.sparsevec import SparseVector
from ipsketch.wmh import round_unit, weighted_jaccard, wmh_sketch

z = SparseVector(3, [1, 2], [math.sqrt(0.35), math.sqrt(0.65)])
r = round_unit(z, 10)
print("counts:", r.counts_dict(), "squared values:", r.values ** 2)

# Two sketches collide with probability sum(min) / sum(max) of the counts.
other = round_unit(SparseVector(3, [2, 3], [math.sqrt(0.5), math.sqrt(0.5)]), 10)
print("weighted Jaccard:", weighted_jaccard(r, other))

# %% Records of one block: positions where a new minimum appears
seed = SeedSpec(2024, rep=1)
for pos, val in record_sequence(seed, block_id=5, limit=10 ** 6):
    print(f"position {pos:>8}  value {val:.3e}")
print("prefix 1000 minimum:", block_prefix_min(seed, 5, 1000, 10 ** 6))

# %% Exact versus fast sketching time
rng = np.random.default_rng(0)
v = SparseVector(10_000, rng.choice(10_000, 500, replace=False) + 1, rng.standard_normal(500))
for strategy, L in (("exact", 10 ** 5), ("fast", 10 ** 5), ("fast", 10 ** 7)):
    t0 = time.perf_counter()
    wmh_sketch(v, 200, seed=1, L=L, strategy=strategy)
    print(f"{strategy:>5}  L={L:>9}: {time.perf_counter() - t0:.3f} s")
