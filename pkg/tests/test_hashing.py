import itertools
from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats

from ipsketch import _kernels as K
from ipsketch.hashing import (PRIME, HashFn, SeedSpec, block_min_over_seeds, block_prefix_min,
                              child_seed, evaluate, keyed_hash, make_hash, record_sequence,
                              seed_key)

U32 = st.integers(0, 2 ** 32 - 1)


def philox(c, k):
    return [int(x) for x in K.philox4x32(*(np.uint64(v) for v in (*c, *k)))]


# Random123 known-answer vectors for Philox4x32-10.
@pytest.mark.parametrize("ctr,key,expected", [
    ((0, 0, 0, 0), (0, 0), (0x6627E8D5, 0xE169C58D, 0xBC57AC4C, 0x9B00DBD8)),
    ((0xFFFFFFFF,) * 4, (0xFFFFFFFF,) * 2, (0x408F276D, 0x41C83B0E, 0xA20BC7C6, 0x6D5451FD)),
    ((0x243F6A88, 0x85A308D3, 0x13198A2E, 0x03707344), (0xA4093822, 0x299F31D0),
     (0xD16CFE09, 0x94FDCCEB, 0x5001E420, 0x24126EA1)),
])
def test_philox_known_answers(ctr, key, expected):
    assert tuple(philox(ctr, key)) == expected


@given(st.tuples(U32, U32, U32, U32), st.tuples(U32, U32))
def test_philox_matches_randomgen(ctr, key):
    from randomgen import Philox
    counter = sum(v << (32 * i) for i, v in enumerate(ctr))
    # randomgen advances its counter before each block
    g = Philox(key=key[0] | (key[1] << 32), counter=(counter - 1) % 2 ** 128, number=4, width=32)
    assert [int(x) for x in g.random_raw(4)] == philox(ctr, key)


def test_make_hash_deterministic_and_distinct_across_reps():
    h1, h1b, h2 = make_hash(SeedSpec(7, 1)), make_hash(SeedSpec(7, 1)), make_hash(SeedSpec(7, 2))
    assert (h1.alpha, h1.beta) == (h1b.alpha, h1b.beta)
    assert (h1.alpha, h1.beta) != (h2.alpha, h2.beta)
    assert 1 <= h1.alpha < PRIME and 0 <= h1.beta < PRIME


def test_seedspec_rejects_rep_zero():
    with pytest.raises(ValueError):
        SeedSpec(7, 0)


def test_evaluate_hand_values():
    assert evaluate(HashFn(3, 2, 7), 4) == 1 / 7
    assert evaluate(HashFn(1, 0, 5), 5) == 0.2
    h = HashFn(3, 2, 7)
    assert h(4) == h(4)


def test_hashfn_validates_parameters():
    with pytest.raises(ValueError):
        HashFn(0, 1, 7)
    with pytest.raises(ValueError):
        HashFn(1, 7, 7)
    with pytest.raises(ValueError):
        evaluate(HashFn(1, 0, 7), 0)


def test_pairwise_independence_exhaustive_p5():
    p = 5
    for i, j in itertools.permutations(range(1, p + 1), 2):
        joint = Counter()
        for a in range(1, p):
            for b in range(p):
                h = HashFn(a, b, p)
                joint[(h.int_value(i), h.int_value(j))] += 1
        # p(p-1) parameter pairs map one-to-one onto ordered pairs of distinct values
        assert len(joint) == p * (p - 1)
        assert set(joint.values()) == {1}
        assert all(x != y for x, y in joint)


@given(st.integers(1, PRIME - 1), st.integers(0, PRIME - 1), st.integers(1, 2 ** 40))
def test_evaluate_in_half_open_unit_interval(a, b, i):
    v = evaluate(HashFn(a, b), i)
    assert 0 < v <= 1


def test_kernel_linear_hash_matches_python():
    h = make_hash(SeedSpec(11, 3))
    for i in (1, 2, 17, PRIME - 1, PRIME, PRIME + 5, 2 ** 40):
        assert int(K.linear_hash_int(np.int64(i), np.int64(h.alpha), np.int64(h.beta))) == \
            h.int_value(i % PRIME)


def test_keyed_hash_uniform():
    vals = np.array([keyed_hash(SeedSpec(5, r), 17) for r in range(1, 20001)])
    assert vals.min() > 0 and vals.max() <= 1
    assert stats.kstest(vals, "uniform").statistic < 0.015


def test_child_seeds_distinct_and_stable():
    seeds = [child_seed(42, t) for t in range(1, 200)]
    assert len(set(seeds)) == len(seeds)
    assert child_seed(42, 3) == seeds[2]
    assert seed_key(2 ** 64 + 5) == seed_key(5)


def test_block_prefix_min_empty_and_bounds():
    s = SeedSpec(3, 1)
    assert block_prefix_min(s, 1, 0, 100) is None
    with pytest.raises(ValueError):
        block_prefix_min(s, 1, 101, 100)
    with pytest.raises(ValueError):
        block_prefix_min(s, 1, -1, 100)


def test_record_sequence_shape():
    recs = record_sequence(SeedSpec(9, 2), 4, 10 ** 6)
    pos = [p for p, _ in recs]
    val = [v for _, v in recs]
    assert pos[0] == 1
    assert all(a < b for a, b in zip(pos, pos[1:]))
    assert all(a > b for a, b in zip(val, val[1:]))
    assert pos[-1] <= 10 ** 6
    assert len(recs) < 60  # about ln(10^6) + 0.58 expected


@given(st.integers(0, 2 ** 64 - 1), st.integers(1, 10 ** 6), st.integers(1, 5000),
       st.integers(1, 5000))
def test_prefix_consistency(seed, block, t1, t2):
    t1, t2 = sorted((t1, t2))
    s = SeedSpec(seed, 1)
    z1, p1 = block_prefix_min(s, block, t1, 5000)
    z2, p2 = block_prefix_min(s, block, t2, 5000)
    assert z2 <= z1
    recs = [r for r in record_sequence(s, block, t2) if r[0] <= t1]
    assert recs[-1] == (p1, z1)


def test_block_min_distribution_ks():
    seeds = np.arange(1, 100_001, dtype=np.uint64) * np.uint64(0x9E3779B97F4A7C15)
    z = block_min_over_seeds(seeds, 12, 50)
    res = stats.kstest(z, lambda x: 1 - (1 - np.clip(x, 0, 1)) ** 50)
    assert res.statistic <= 0.01


def test_block_min_position_uniform():
    seeds = np.arange(1, 20_001, dtype=np.uint64)
    pos = [block_prefix_min(SeedSpec(int(s), 1), 3, 8, 8)[1] for s in seeds[:8000]]
    counts = np.bincount(pos, minlength=9)[1:]
    assert stats.chisquare(counts).pvalue > 1e-3
