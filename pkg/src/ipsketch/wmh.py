"""Weighted MinHash inner-product sketches.

A vector is scaled to unit norm and rounded so every squared entry is an
integer multiple of ``1/L``. Entry ``i`` then owns ``k_i`` slots of a length-L
block in an expanded vector, and a plain MinHash over the expanded vector
samples entry ``i`` with probability proportional to its squared value.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels as K
from .hashing import PRIME, check_family, child_seed, linear_params, seed_key
from .minhash import _frozen, _median, check_compatible
from .sparsevec import SparseVector, norm

DEFAULT_L = 10_000_000
STRATEGIES = ("exact", "fast")

# Squared entries within this relative distance below an integer multiple of
# 1/L are treated as that multiple, so float noise never flips a floor.
_SNAP_RTOL = 1e-11


@dataclass(frozen=True, eq=False)
class RoundedUnitVector:
    """Unit vector whose squared entries are ``counts / L``, kept as integers."""

    n: int
    L: int
    indices: np.ndarray
    counts: np.ndarray
    signs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "indices", _frozen(self.indices, np.int64))
        object.__setattr__(self, "counts", _frozen(self.counts, np.int64))
        object.__setattr__(self, "signs", _frozen(self.signs, np.int8))

    def __eq__(self, other):
        return (isinstance(other, RoundedUnitVector) and self.n == other.n and self.L == other.L
                and np.array_equal(self.indices, other.indices)
                and np.array_equal(self.counts, other.counts)
                and np.array_equal(self.signs, other.signs))

    @property
    def values(self) -> np.ndarray:
        return self.signs * np.sqrt(self.counts / self.L)

    def counts_dict(self) -> dict[int, int]:
        return dict(zip(self.indices.tolist(), self.counts.tolist()))

    def to_vector(self) -> SparseVector:
        return SparseVector(self.n, self.indices, self.values)


def round_unit(z: SparseVector, L: int) -> RoundedUnitVector:
    """Round a unit vector so its squared entries are multiples of 1/L.

    Every squared entry is floored to a multiple of 1/L, then the whole
    deficit goes to the largest-magnitude entry (lowest index on ties), which
    restores unit norm exactly. Entries left with zero count are dropped.
    """
    L = int(L)
    if L < 1:
        raise ValueError("L must be >= 1")
    if z.nnz == 0:
        raise ValueError("cannot round an all-zero vector")
    if abs(norm(z) - 1.0) > 1e-9:
        raise ValueError(f"input must have unit norm, got {norm(z)!r}")
    x = z.values * z.values * L
    k = np.floor(x).astype(np.int64)
    k += ((k + 1) - x) <= _SNAP_RTOL * (k + 1)
    top = int(np.argmax(np.abs(z.values)))
    k[top] += L - int(k.sum())
    if k[top] < 0:
        raise ArithmeticError("rounding produced a negative count")
    signs = np.where(z.values < 0, -1, 1).astype(np.int8)
    keep = k > 0
    return RoundedUnitVector(z.n, L, z.indices[keep], k[keep], signs[keep])


def expanded_block_length(r: RoundedUnitVector, index: int) -> int:
    """Number of nonzero slots in block ``index`` of the expanded vector."""
    pos = np.searchsorted(r.indices, index)
    if pos < r.indices.size and r.indices[pos] == index:
        return int(r.counts[pos])
    return 0


def _aligned_counts(ra: RoundedUnitVector, rb: RoundedUnitVector):
    if (ra.n, ra.L) != (rb.n, rb.L):
        raise ValueError("rounded vectors must share n and L")
    idx = np.union1d(ra.indices, rb.indices)
    ca = np.zeros(idx.size, dtype=np.int64)
    cb = np.zeros(idx.size, dtype=np.int64)
    ca[np.searchsorted(idx, ra.indices)] = ra.counts
    cb[np.searchsorted(idx, rb.indices)] = rb.counts
    return idx, ca, cb


def weighted_jaccard(ra: RoundedUnitVector, rb: RoundedUnitVector) -> float:
    """sum min(k_a, k_b) / sum max(k_a, k_b), evaluated exactly."""
    _, ca, cb = _aligned_counts(ra, rb)
    return float(Fraction(int(np.minimum(ca, cb).sum()), int(np.maximum(ca, cb).sum())))


def weighted_union(ra: RoundedUnitVector, rb: RoundedUnitVector) -> float:
    """Exact weighted union size ``sum max(z_a^2, z_b^2)``."""
    _, ca, cb = _aligned_counts(ra, rb)
    return float(Fraction(int(np.maximum(ca, cb).sum()), ra.L))


def reconstruct(r: RoundedUnitVector, scale: float) -> SparseVector:
    """``scale * z~``: the vector whose sketch equals the original's."""
    return SparseVector(r.n, r.indices, scale * r.values)


@dataclass(frozen=True, eq=False)
class WmhSketch:
    m: int
    hash_mins: np.ndarray
    sampled_vals: np.ndarray
    stored_norm: float
    L: int
    seed: int
    n: int
    strategy: str = "fast"
    family: str = "philox"

    def __post_init__(self):
        object.__setattr__(self, "hash_mins", _frozen(self.hash_mins, np.float64))
        object.__setattr__(self, "sampled_vals", _frozen(self.sampled_vals, np.float64))
        if self.hash_mins.shape != (self.m,) or self.sampled_vals.shape != (self.m,):
            raise ValueError("sketch arrays must have length m")
        if not self.stored_norm > 0:
            raise ValueError("stored norm must be positive")

    def __eq__(self, other):
        return (isinstance(other, WmhSketch)
                and (self.m, self.stored_norm, self.L, self.seed, self.n, self.strategy, self.family)
                == (other.m, other.stored_norm, other.L, other.seed, other.n, other.strategy,
                    other.family)
                and np.array_equal(self.hash_mins, other.hash_mins)
                and np.array_equal(self.sampled_vals, other.sampled_vals))


_FIELDS = ("m", "seed", "L", "n", "strategy", "family")


def _check_args(m, L, strategy, family):
    if m < 1:
        raise ValueError("m must be >= 1")
    if int(L) < 1:
        raise ValueError("L must be >= 1")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    check_family(family)
    if strategy == "fast" and family != "philox":
        raise ValueError("the fast strategy draws from Philox record sequences; "
                         "use family='philox'")


def expanded_minima(r: RoundedUnitVector, m: int, seed: int, strategy: str = "fast",
                    family: str = "philox"):
    """Per repetition, the minimum hash over the expanded vector of ``r`` and
    the position (into ``r.indices``) of the block attaining it."""
    blocks = np.ascontiguousarray(r.indices)
    counts = np.ascontiguousarray(r.counts)
    k0, k1 = (np.uint64(w) for w in seed_key(seed))
    if strategy == "fast":
        return K.wmh_fast(blocks, counts, m, k0, k1)
    if family == "linear":
        alphas, betas = linear_params(seed, m)
        mins, arg = K.wmh_exact_linear(blocks, counts, np.int64(r.L), alphas, betas)
    else:
        mins, arg = K.wmh_exact_keyed(blocks, counts, np.int64(r.L), m, k0, k1)
    return mins / PRIME, arg


def wmh_sketch(a: SparseVector, m: int, seed: int, L: int = DEFAULT_L, strategy: str = "fast",
               family: str = "philox") -> WmhSketch:
    """Weighted MinHash sketch of ``a``.

    ``strategy="exact"`` hashes every nonzero slot of the expanded vector
    (O(L) work per repetition); ``"fast"`` walks each block's record sequence
    (expected O(log L) per block). The two agree in distribution only.
    """
    _check_args(m, L, strategy, family)
    if a.nnz == 0:
        raise ValueError("cannot sketch an all-zero vector")
    L = int(L)
    if L < 100 * a.nnz:
        warnings.warn(f"L={L} is below 100x the support size ({a.nnz}); small entries may "
                      "round to zero", stacklevel=2)
    nrm = norm(a)
    r = round_unit(SparseVector(a.n, a.indices, a.values / nrm), L)
    mins, arg = expanded_minima(r, m, seed, strategy, family)
    return WmhSketch(m, mins, r.values[arg], nrm, L, int(seed), a.n, strategy, family)


def weighted_union_estimate(wa: WmhSketch, wb: WmhSketch) -> float:
    check_compatible(wa, wb, _FIELDS)
    return (wa.m / float(np.minimum(wa.hash_mins, wb.hash_mins).sum()) - 1.0) / wa.L


def wmh_estimate(wa: WmhSketch, wb: WmhSketch, union: float | None = None) -> float:
    """Inner-product estimate from two weighted sketches.

    ``union`` substitutes the exact weighted union size for its sketched
    estimate (the idealised estimator).
    """
    check_compatible(wa, wb, _FIELDS)
    mu = weighted_union_estimate(wa, wb) if union is None else float(union)
    hit = wa.hash_mins == wb.hash_mins
    va, vb = wa.sampled_vals[hit], wb.sampled_vals[hit]
    q = np.minimum(va * va, vb * vb)
    unit = mu / wa.m * float(np.sum(va * vb / q))
    return wa.stored_norm * wb.stored_norm * unit


def wmh_estimate_median(pairs) -> float:
    pairs = list(pairs)
    if pairs:
        first = pairs[0][0]
        for sa, sb in pairs:
            check_compatible(sa, sb, _FIELDS)
            if (sa.m, sa.n, sa.L) != (first.m, first.n, first.L):
                raise ValueError("all sketch pairs must share m, n and L")
    return _median([wmh_estimate(sa, sb) for sa, sb in pairs])


def wmh_sketches(a: SparseVector, m: int, seed: int, t: int, L: int = DEFAULT_L,
                 strategy: str = "fast", family: str = "philox"):
    """``t`` independent sketches of ``a`` with seeds derived from ``seed``."""
    return [wmh_sketch(a, m, child_seed(seed, j), L, strategy, family) for j in range(1, t + 1)]
