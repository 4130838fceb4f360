"""Seedable hash primitives shared by the sampling sketches.

Two hash families are available to the sketches:

``"linear"``
    The classic 2-wise independent Carter-Wegman map
    ``h(i) = ((alpha * i + beta) mod p + 1) / p`` with one ``(alpha, beta)``
    pair per repetition.
``"philox"``
    A keyed Philox4x32-10 draw per ``(seed, repetition, index)`` reduced to the
    same grid ``{1/p, 2/p, ..., 1}``. This behaves like an ideal uniform hash,
    which the linear family does not on structured supports (the minimum of
    ``alpha * i + beta`` over consecutive ``i`` is far from min-wise).

Both families and the record sequences below are deterministic functions of a
64-bit master seed, so two parties sketching with the same seed use the same
hash functions.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K

PRIME = K.PRIME
PRNG_NAME = "philox4x32-10"
HASH_FAMILIES = ("philox", "linear")

_U64 = (1 << 64) - 1


def seed_key(seed: int) -> tuple[int, int]:
    """Split a master seed (taken mod 2**64) into the two 32-bit key words."""
    s = int(seed) & _U64
    return s & 0xFFFFFFFF, s >> 32


def child_seed(master: int, t: int) -> int:
    """The t-th independent seed derived from ``master`` (t >= 1)."""
    k0, k1 = seed_key(master)
    return int(K.child_seed(np.uint64(t), np.uint64(k0), np.uint64(k1)))


def check_family(family: str) -> str:
    if family not in HASH_FAMILIES:
        raise ValueError(f"unknown hash family {family!r}; expected one of {HASH_FAMILIES}")
    return family


@dataclass(frozen=True)
class SeedSpec:
    """Master seed plus a 1-based repetition index."""

    master: int
    rep: int = 1

    def __post_init__(self):
        if self.rep < 1:
            raise ValueError("repetition index must be >= 1")

    @property
    def key(self) -> tuple[int, int]:
        return seed_key(self.master)


@dataclass(frozen=True)
class HashFn:
    """Linear hash ``((alpha * i + beta) mod p + 1) / p`` onto (0, 1].

    Constructing one directly (for instance with a tiny prime) is allowed;
    sketches obtain theirs through :func:`make_hash`.
    """

    alpha: int
    beta: int
    p: int = PRIME

    def __post_init__(self):
        if not 1 <= self.alpha < self.p:
            raise ValueError("alpha must lie in [1, p-1]")
        if not 0 <= self.beta < self.p:
            raise ValueError("beta must lie in [0, p-1]")

    def int_value(self, index: int) -> int:
        return (self.alpha * index + self.beta) % self.p + 1

    def __call__(self, index: int) -> float:
        return evaluate(self, index)


def make_hash(seed: SeedSpec) -> HashFn:
    """Draw the linear hash for ``seed``.

    ``(alpha, beta)`` come from one Philox block at counter
    ``(rep, 0, 0, TAG_LINEAR_PARAMS)`` keyed by the master seed:
    ``alpha = 1 + (w01 mod (p - 1))`` and ``beta = w23 mod p`` where ``w01`` and
    ``w23`` are the first and second 64-bit halves of the output.
    """
    k0, k1 = seed.key
    alpha, beta = K.linear_params(np.uint64(seed.rep), np.uint64(k0), np.uint64(k1))
    return HashFn(int(alpha), int(beta), PRIME)


def linear_params(master: int, m: int) -> tuple[np.ndarray, np.ndarray]:
    """``(alphas, betas)`` of ``make_hash`` for repetitions 1..m, as arrays."""
    hs = [make_hash(SeedSpec(master, r)) for r in range(1, m + 1)]
    return (np.array([h.alpha for h in hs], dtype=np.int64),
            np.array([h.beta for h in hs], dtype=np.int64))


def evaluate(h: HashFn, index: int) -> float:
    if index < 1:
        raise ValueError("index must be >= 1")
    return h.int_value(index) / h.p


def keyed_hash(seed: SeedSpec, index: int) -> float:
    """The ``"philox"`` family hash of ``index`` in repetition ``seed.rep``."""
    if index < 1:
        raise ValueError("index must be >= 1")
    k0, k1 = seed.key
    v = K.index_hash_int(np.uint64(index), np.uint64(seed.rep), np.uint64(k0),
                         np.uint64(k1), np.uint64(K.TAG_INDEX))
    return int(v) / PRIME


# --- record sequences (active-index sampling) -----------------------------------


def record_sequence(seed: SeedSpec, block_id: int, limit: int) -> list[tuple[int, float]]:
    """Left-to-right minima of one block's hash values, up to position ``limit``.

    The first record sits at position 1. After a record of value z, the next
    one is a Geometric(z) number of positions later and is uniform on (0, z),
    which is exactly how prefix minima of iid uniforms evolve.
    """
    if limit < 1:
        return []
    k0, k1 = seed.key
    pos, val = K.block_records(np.uint64(block_id), np.uint64(seed.rep), np.int64(limit),
                               np.uint64(k0), np.uint64(k1))
    return list(zip(pos.tolist(), val.tolist()))


def block_prefix_min(seed: SeedSpec, block_id: int, prefix_len: int,
                     L: int) -> tuple[float, int] | None:
    """Minimum hash value, and its position, over positions 1..prefix_len of a
    length-L block. ``None`` for an empty prefix.

    Prefixes are consistent: the answer for a shorter prefix is the last
    record of the longer prefix's sequence that fits in it.
    """
    if prefix_len < 0:
        raise ValueError("prefix_len must be >= 0")
    if prefix_len > L:
        raise ValueError(f"prefix_len {prefix_len} exceeds block length {L}")
    if prefix_len == 0:
        return None
    k0, k1 = seed.key
    z, pos, _ = K.block_min(np.uint64(block_id), np.uint64(seed.rep), np.int64(prefix_len),
                            np.uint64(k0), np.uint64(k1))
    return float(z), int(pos)


def block_min_over_seeds(seeds, block_id: int, prefix_len: int, rep: int = 1) -> np.ndarray:
    """Vectorised :func:`block_prefix_min` values for many master seeds."""
    s = np.asarray(seeds, dtype=np.uint64)
    k0 = s & np.uint64(0xFFFFFFFF)
    k1 = s >> np.uint64(32)
    return K.block_min_over_seeds(k0, k1, np.uint64(rep), np.uint64(block_id), np.int64(prefix_len))
