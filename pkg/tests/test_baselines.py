import numpy as np
import pytest

from ipsketch.baselines import (CountSketchSketch, cs_estimate, cs_row_estimates, cs_sketch,
                                jl_estimate, jl_sketch, kmv_estimate, kmv_sketch)
from ipsketch.sparsevec import SparseVector, inner

from conftest import random_pair


def test_jl_trivial_cases():
    e = SparseVector(100, [1], [1.0])
    s = jl_sketch(e, 400, 3)
    assert jl_estimate(s, s) == pytest.approx(1.0, abs=1e-12)
    assert set(np.round(np.abs(s.projected) * 20, 12)) == {1.0}
    z = jl_sketch(SparseVector(100), 50, 3)
    assert np.all(z.projected == 0) and jl_estimate(z, jl_sketch(e, 50, 3)) == 0.0
    with pytest.raises(ValueError):
        jl_estimate(s, jl_sketch(e, 400, 4))


def test_jl_is_linear():
    a, b = random_pair(np.random.default_rng(1), 200, 20, 20, 5)
    sa, sb = jl_sketch(a, 64, 9), jl_sketch(b, 64, 9)
    combo = SparseVector.from_dense(2 * a.to_dense() - 3 * b.to_dense())
    assert np.allclose(jl_sketch(combo, 64, 9).projected, 2 * sa.projected - 3 * sb.projected)


def test_jl_unbiased():
    a, b = random_pair(np.random.default_rng(2), 50, 30, 30, 15)
    est = np.array([jl_estimate(jl_sketch(a, 400, s), jl_sketch(b, 400, s)) for s in range(3000)])
    assert abs(est.mean() - inner(a, b)) <= 3 * est.std(ddof=1) / np.sqrt(est.size)


def test_cs_trivial_cases():
    a, b = SparseVector(50, [9], [2.0]), SparseVector(50, [9], [-1.5])
    sa, sb = cs_sketch(a, 8, 4), cs_sketch(b, 8, 4)
    assert np.all(cs_row_estimates(sa, sb) == -3.0) and cs_estimate(sa, sb) == -3.0
    assert sa.table.shape == (5, 8)
    assert cs_estimate(cs_sketch(SparseVector(50), 8, 4), sb) == 0.0
    with pytest.raises(ValueError):
        cs_estimate(sa, cs_sketch(b, 9, 4))
    with pytest.raises(ValueError):
        CountSketchSketch(3, 2, np.zeros((3, 2)), 0, 5)


def test_cs_rows_unbiased_on_disjoint_entries():
    a, b = SparseVector(1000, [3], [1.0]), SparseVector(1000, [700], [1.0])
    rows = np.array([cs_row_estimates(cs_sketch(a, 4, s), cs_sketch(b, 4, s))[0]
                     for s in range(3000)])
    assert abs(rows.mean()) <= 3 * rows.std(ddof=1) / np.sqrt(rows.size)


def test_kmv_exact_below_budget():
    A = SparseVector(1000, np.arange(1, 201), np.ones(200))
    B = SparseVector(1000, np.arange(101, 301), np.ones(200))
    assert kmv_estimate(kmv_sketch(A, 1000, 5), kmv_sketch(B, 1000, 5)) == 100.0
    a, b = random_pair(np.random.default_rng(3), 500, 20, 25, 7)
    assert kmv_estimate(kmv_sketch(a, 64, 1), kmv_sketch(b, 64, 1)) == pytest.approx(inner(a, b))
    c, d = random_pair(np.random.default_rng(3), 500, 20, 25, 0)
    assert kmv_estimate(kmv_sketch(c, 10, 1), kmv_sketch(d, 10, 1)) == 0.0


def test_kmv_sketch_invariants():
    a, _ = random_pair(np.random.default_rng(4), 5000, 300, 10, 0)
    s = kmv_sketch(a, 50, 2)
    assert s.hashes.size == 50 and not s.complete
    assert np.all(np.diff(s.hashes) > 0)
    assert len(set(s.indices.tolist())) == 50
    assert np.array_equal(s.values, [a[i] for i in s.indices])
    with pytest.raises(ValueError):
        kmv_sketch(a, 1, 2)


def test_kmv_unbiased_above_budget():
    A = SparseVector(1000, np.arange(1, 201), np.ones(200))
    B = SparseVector(1000, np.arange(101, 301), np.ones(200))
    est = np.array([kmv_estimate(kmv_sketch(A, 100, s), kmv_sketch(B, 100, s))
                    for s in range(2000)])
    assert abs(est.mean() - 100) <= 3 * est.std(ddof=1) / np.sqrt(est.size)
