# %% [markdown]
# # Post-join statistics without joining
#
# Two small tables share a key column. Encoded as vectors over the key
# domain, the join size is the inner product of the two key indicators and
# the post-join SUM of A's values is the inner product of A's value vector
# with B's key indicator. Any inner-product sketch therefore answers both.

# %%
from ipsketch.sparsevec import inner
from ipsketch.tables import (encode_key_indicator, encode_value_column, estimate_join_stats,
                             exact_join_stats, example_tables, key_jaccard)
from ipsketch.wmh import wmh_estimate, wmh_sketch

table_a, table_b = example_tables()
x_va = encode_value_column(table_a)
x_ka = encode_key_indicator(table_a)
x_kb = encode_key_indicator(table_b)
print("value vector of A:", x_va.to_dense())
print("key indicator of B:", x_kb.to_dense())

# %% Exact answers straight from inner products
print("join size:", inner(x_ka, x_kb))
print("SUM of A values after join:", inner(x_va, x_kb))
print(exact_join_stats(table_a, table_b))
print("key Jaccard:", round(key_jaccard(table_a, table_b), 4))

# %% The same statistics from weighted MinHash sketches
# Every sketch uses the same seed; that shared randomness is what lets two
# independently built sketches be compared.
for m in (500, 5000, 50000):
    sketches = [wmh_sketch(v, m, seed=11, L=10 ** 6) for v in (x_va, x_ka, x_kb)]
    st = estimate_join_stats(*sketches, wmh_estimate)
    print(f"m={m:>6}: join {st.join_size:7.3f}  SUM {st.sum_a:7.3f}  MEAN {st.mean_a:6.3f}")
