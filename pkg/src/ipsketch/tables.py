"""Table columns as sparse vectors, and post-join statistics from sketches.

A table with key column K and value column V becomes two vectors over the key
domain: the indicator of K and the vector holding V at each key. Join size
and post-join SUM are inner products of these vectors, so any inner-product
sketch estimates them without materialising the join.
"""
from __future__ import annotations

import csv
import hashlib
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Sequence

from .sparsevec import SparseVector, inner

KEY_DOMAIN = 2 ** 32


@dataclass(frozen=True)
class KeyedColumn:
    keys: Sequence[int]
    values: Optional[Sequence[float]] = None
    n: int = KEY_DOMAIN

    def __post_init__(self):
        keys = tuple(int(k) for k in self.keys)
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate keys")
        if any(k < 1 or k > self.n for k in keys):
            raise ValueError(f"keys must lie in [1, {self.n}]")
        object.__setattr__(self, "keys", keys)
        if self.values is not None:
            values = tuple(float(v) for v in self.values)
            if len(values) != len(keys):
                raise ValueError("values must align 1:1 with keys")
            object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class JoinStats:
    join_size: float
    sum_a: float
    mean_a: Optional[float]  # None when the join size is not positive

    @property
    def mean_defined(self) -> bool:
        return self.mean_a is not None


def encode_key_indicator(col: KeyedColumn) -> SparseVector:
    return SparseVector(col.n, col.keys, [1.0] * len(col.keys))


def encode_value_column(col: KeyedColumn) -> SparseVector:
    """Value vector of ``col``; zero values vanish from the sparse support."""
    if col.values is None:
        raise ValueError("column has no values")
    return SparseVector(col.n, col.keys, col.values)


def join_stats_from(join_size: float, sum_a: float) -> JoinStats:
    mean = sum_a / join_size if join_size > 0 else None
    return JoinStats(float(join_size), float(sum_a), mean)


def estimate_join_stats(sketch_value_a, sketch_key_a, sketch_key_b,
                        estimator: Callable) -> JoinStats:
    """Join size, SUM and MEAN of A's values after joining A with B on keys.

    ``estimator(s1, s2)`` is the matching inner-product estimator, e.g.
    :func:`ipsketch.wmh.wmh_estimate`. Parameter mismatches between the
    sketches raise from the estimator itself.
    """
    return join_stats_from(estimator(sketch_key_a, sketch_key_b),
                           estimator(sketch_value_a, sketch_key_b))


def exact_join_stats(a: KeyedColumn, b: KeyedColumn) -> JoinStats:
    return join_stats_from(inner(encode_key_indicator(a), encode_key_indicator(b)),
                           inner(encode_value_column(a), encode_key_indicator(b)))


def key_jaccard(a: KeyedColumn, b: KeyedColumn) -> float:
    ka, kb = set(a.keys), set(b.keys)
    return len(ka & kb) / len(ka | kb) if ka | kb else 0.0


def hash_key(key: str, n: int = KEY_DOMAIN) -> int:
    """Map an arbitrary string key into [1, n]. Distinct keys may collide."""
    digest = hashlib.blake2b(key.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little") % n + 1


def read_keyed_csv(path, header: bool = False, hash_keys: bool = False,
                   n: int = KEY_DOMAIN) -> KeyedColumn:
    """Read a one-column (keys) or two-column (key,value) CSV file."""
    keys, values = [], []
    width = None
    with Path(path).open(newline="") as fh:
        rows = csv.reader(fh)
        if header:
            next(rows, None)
        for lineno, row in enumerate(rows, 2 if header else 1):
            if not row or all(not c.strip() for c in row):
                continue
            if width is None:
                width = len(row)
                if width not in (1, 2):
                    raise ValueError(f"line {lineno}: expected 1 or 2 columns, got {width}")
            elif len(row) != width:
                raise ValueError(f"line {lineno}: inconsistent column count")
            raw = row[0].strip()
            if hash_keys:
                keys.append(hash_key(raw, n))
            else:
                try:
                    keys.append(int(raw))
                except ValueError:
                    raise ValueError(f"line {lineno}: key {raw!r} is not an integer "
                                     "(use hash_keys)") from None
            if width == 2:
                v = float(row[1])
                if not math.isfinite(v):
                    raise ValueError(f"line {lineno}: non-finite value")
                values.append(v)
    return KeyedColumn(keys, values if width == 2 else None, n)


def example_tables() -> tuple[KeyedColumn, KeyedColumn]:
    """Two small tables over keys 1..16 sharing the keys 4, 5, 8 and 11."""
    a = KeyedColumn([1, 3, 4, 5, 6, 7, 8, 9, 11],
                    [6.0, 2.0, 6.0, 1.0, 4.0, 2.0, 2.0, 8.0, 3.0], n=16)
    b = KeyedColumn([2, 4, 5, 8, 10, 11, 12, 15, 16],
                    [1.0, 5.0, 1.0, 2.0, 4.0, 2.5, 6.0, 6.0, 3.7], n=16)
    return a, b
