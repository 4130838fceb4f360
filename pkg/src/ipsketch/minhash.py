"""Unweighted MinHash sketches augmented with the sampled vector values."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .hashing import PRIME, check_family, child_seed, linear_params, seed_key
from .sparsevec import SparseVector


def _frozen(x, dtype):
    arr = np.array(x, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class MinHashSketch:
    m: int
    hash_mins: np.ndarray
    sampled_vals: np.ndarray
    seed: int
    n: int
    family: str = "philox"

    def __post_init__(self):
        object.__setattr__(self, "hash_mins", _frozen(self.hash_mins, np.float64))
        object.__setattr__(self, "sampled_vals", _frozen(self.sampled_vals, np.float64))
        if self.hash_mins.shape != (self.m,) or self.sampled_vals.shape != (self.m,):
            raise ValueError("sketch arrays must have length m")

    def __eq__(self, other):
        return (isinstance(other, MinHashSketch) and self.m == other.m and self.seed == other.seed
                and self.n == other.n and self.family == other.family
                and np.array_equal(self.hash_mins, other.hash_mins)
                and np.array_equal(self.sampled_vals, other.sampled_vals))


def check_compatible(sa, sb, fields=("m", "seed", "n", "family")):
    if type(sa) is not type(sb):
        raise TypeError(f"cannot compare {type(sa).__name__} with {type(sb).__name__}")
    for f in fields:
        if getattr(sa, f) != getattr(sb, f):
            raise ValueError(f"sketch parameter mismatch on {f}: "
                             f"{getattr(sa, f)!r} != {getattr(sb, f)!r}")


def min_hashes(indices: np.ndarray, m: int, seed: int, family: str):
    """Per repetition: minimum hash (as an integer on {1..p}) over ``indices``
    and the position in ``indices`` where it is attained."""
    idx = np.ascontiguousarray(indices, dtype=np.int64)
    if family == "linear":
        alphas, betas = linear_params(seed, m)
        return K.min_linear_hash(idx, alphas, betas)
    k0, k1 = seed_key(seed)
    return K.min_index_hash(idx, m, np.uint64(k0), np.uint64(k1), np.uint64(K.TAG_INDEX))


def mh_sketch(a: SparseVector, m: int, seed: int, family: str = "philox") -> MinHashSketch:
    if m < 1:
        raise ValueError("m must be >= 1")
    if a.nnz == 0:
        raise ValueError("cannot sketch an all-zero vector")
    check_family(family)
    mins, arg = min_hashes(a.indices, m, seed, family)
    return MinHashSketch(m, mins / PRIME, a.values[arg], int(seed), a.n, family)


def union_estimate(ha: MinHashSketch, hb: MinHashSketch) -> float:
    """Distinct-count estimate of the union of the two supports."""
    check_compatible(ha, hb)
    return ha.m / float(np.minimum(ha.hash_mins, hb.hash_mins).sum()) - 1.0


def mh_estimate(ha: MinHashSketch, hb: MinHashSketch, union: float | None = None) -> float:
    """Inner-product estimate from two MinHash sketches.

    ``union`` replaces the sketched union-size estimate when given (the
    idealised estimator used in analysis and tests).
    """
    check_compatible(ha, hb)
    u = union_estimate(ha, hb) if union is None else float(union)
    hit = ha.hash_mins == hb.hash_mins
    return u / ha.m * float(np.sum(ha.sampled_vals[hit] * hb.sampled_vals[hit]))


def _median(estimates):
    t = len(estimates)
    if t == 0 or t % 2 == 0:
        raise ValueError(f"median boosting needs an odd number of sketch pairs, got {t}")
    return float(np.median(estimates))


def mh_estimate_median(pairs) -> float:
    pairs = list(pairs)
    if pairs:
        first = pairs[0][0]
        for sa, sb in pairs:
            check_compatible(sa, sb)
            if (sa.m, sa.n) != (first.m, first.n):
                raise ValueError("all sketch pairs must share m and n")
    return _median([mh_estimate(sa, sb) for sa, sb in pairs])


def mh_sketches(a: SparseVector, m: int, seed: int, t: int, family: str = "philox"):
    """``t`` independent sketches of ``a`` with seeds derived from ``seed``."""
    return [mh_sketch(a, m, child_seed(seed, j), family) for j in range(1, t + 1)]
