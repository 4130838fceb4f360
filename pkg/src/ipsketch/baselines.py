"""Competitor sketches: dense sign projection (JL/AMS), CountSketch, and KMV."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .hashing import PRIME, SeedSpec, check_family, make_hash, seed_key
from .minhash import _frozen, check_compatible
from .sparsevec import SparseVector

CS_REPETITIONS = 5


@dataclass(frozen=True, eq=False)
class JlSketch:
    m: int
    projected: np.ndarray
    seed: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "projected", _frozen(self.projected, np.float64))
        if self.projected.shape != (self.m,):
            raise ValueError("projection must have length m")

    def __eq__(self, other):
        return (isinstance(other, JlSketch) and (self.m, self.seed, self.n) == (other.m, other.seed, other.n)
                and np.array_equal(self.projected, other.projected))


def jl_sketch(a: SparseVector, m: int, seed: int) -> JlSketch:
    """``Pi a`` for a +-1/sqrt(m) matrix generated on the fly from (seed, row, column)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    k0, k1 = seed_key(seed)
    raw = K.jl_project(np.ascontiguousarray(a.indices), np.ascontiguousarray(a.values), m,
                       np.uint64(k0), np.uint64(k1))
    return JlSketch(m, raw / math.sqrt(m), int(seed), a.n)


def jl_estimate(sa: JlSketch, sb: JlSketch) -> float:
    check_compatible(sa, sb, ("m", "seed", "n"))
    return float(np.dot(sa.projected, sb.projected))


@dataclass(frozen=True, eq=False)
class CountSketchSketch:
    m: int
    r: int
    table: np.ndarray
    seed: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "table", _frozen(self.table, np.float64))
        if self.table.shape != (self.r, self.m):
            raise ValueError("table must have shape (r, m)")

    def __eq__(self, other):
        return (isinstance(other, CountSketchSketch)
                and (self.m, self.r, self.seed, self.n) == (other.m, other.r, other.seed, other.n)
                and np.array_equal(self.table, other.table))


def _cs_hashes(seed: int, r: int):
    # repetition t uses make_hash(2t - 1) for buckets and make_hash(2t) for signs
    return [(make_hash(SeedSpec(seed, 2 * t - 1)), make_hash(SeedSpec(seed, 2 * t)))
            for t in range(1, r + 1)]


def cs_sketch(a: SparseVector, m: int, seed: int, r: int = CS_REPETITIONS) -> CountSketchSketch:
    if m < 1 or r < 1:
        raise ValueError("m and r must be >= 1")
    table = np.zeros((r, m))
    idx = a.indices % PRIME
    for t, (hb, hs) in enumerate(_cs_hashes(seed, r)):
        buckets = (hb.alpha * idx + hb.beta) % PRIME % m
        signs = np.where(((hs.alpha * idx + hs.beta) % PRIME) & 1, -1.0, 1.0)
        np.add.at(table[t], buckets, signs * a.values)
    return CountSketchSketch(m, r, table, int(seed), a.n)


def cs_row_estimates(sa: CountSketchSketch, sb: CountSketchSketch) -> np.ndarray:
    check_compatible(sa, sb, ("m", "r", "seed", "n"))
    return np.einsum("ij,ij->i", sa.table, sb.table)


def cs_estimate(sa: CountSketchSketch, sb: CountSketchSketch) -> float:
    """Median over repetitions of the per-row inner products."""
    return float(np.median(cs_row_estimates(sa, sb)))


@dataclass(frozen=True, eq=False)
class KmvSketch:
    """The ``k`` smallest-hash support entries, sorted by hash.

    ``support_size`` is the number of nonzeros of the sketched vector, so a
    sketch can tell whether it holds its whole support.
    """

    k: int
    hashes: np.ndarray
    indices: np.ndarray
    values: np.ndarray
    seed: int
    n: int
    support_size: int
    family: str = "philox"

    def __post_init__(self):
        object.__setattr__(self, "hashes", _frozen(self.hashes, np.float64))
        object.__setattr__(self, "indices", _frozen(self.indices, np.int64))
        object.__setattr__(self, "values", _frozen(self.values, np.float64))
        if not (self.hashes.shape == self.indices.shape == self.values.shape):
            raise ValueError("sketch arrays must have equal length")
        if self.hashes.size > self.k:
            raise ValueError("more than k samples")

    @property
    def complete(self) -> bool:
        return self.support_size <= self.k

    def __eq__(self, other):
        return (isinstance(other, KmvSketch)
                and (self.k, self.seed, self.n, self.support_size, self.family)
                == (other.k, other.seed, other.n, other.support_size, other.family)
                and np.array_equal(self.hashes, other.hashes)
                and np.array_equal(self.indices, other.indices)
                and np.array_equal(self.values, other.values))


def kmv_sketch(a: SparseVector, k: int, seed: int, family: str = "philox") -> KmvSketch:
    if k < 2:
        raise ValueError("k must be >= 2")
    check_family(family)
    idx = np.ascontiguousarray(a.indices)
    if family == "linear":
        h = make_hash(SeedSpec(seed, 1))
        ints = (h.alpha * (idx % PRIME) + h.beta) % PRIME + 1
    else:
        k0, k1 = seed_key(seed)
        ints = K.all_index_hashes(idx, np.uint64(1), np.uint64(k0), np.uint64(k1),
                                  np.uint64(K.TAG_INDEX))
    order = np.lexsort((idx, ints))[:k]
    return KmvSketch(k, ints[order] / PRIME, idx[order], a.values[order], int(seed), a.n, a.nnz,
                     family)


def kmv_estimate(sa: KmvSketch, sb: KmvSketch) -> float:
    """Inner product from the union's k smallest hashes.

    When both sketches hold their whole supports the answer is exact.
    Otherwise tau is the k-th smallest hash of the merged sample, the union
    size estimate is (k - 1) / tau, and the matched products over the k - 1
    merged entries hashing strictly below tau are scaled by that estimate over
    k - 1. This reduces to dividing the matched sum by tau.
    """
    check_compatible(sa, sb, ("k", "seed", "n", "family"))
    common, ia, ib = np.intersect1d(sa.indices, sb.indices, assume_unique=True,
                                    return_indices=True)
    if sa.complete and sb.complete:
        return math.fsum((sa.values[ia] * sb.values[ib]).tolist())
    k = sa.k
    tau = np.union1d(sa.hashes, sb.hashes)[k - 1]
    keep = sa.hashes[ia] < tau
    matched = float(np.sum(sa.values[ia][keep] * sb.values[ib][keep]))
    union = (k - 1) / tau
    return union / (k - 1) * matched
