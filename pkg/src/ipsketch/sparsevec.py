"""Sparse vectors with 1-based indices, exact inner products and norms."""
from __future__ import annotations

import math
from pathlib import Path

import numpy as np


class SparseVector:
    """Immutable sparse vector of dimension ``n``.

    Indices are 1-based and strictly increasing; stored values are nonzero.
    Zeros passed to the constructor are dropped, duplicate indices raise.
    """

    __slots__ = ("n", "indices", "values")

    def __init__(self, n, indices=(), values=()):
        n = int(n)
        if n < 1:
            raise ValueError("dimension must be >= 1")
        idx = np.asarray(indices, dtype=np.int64).reshape(-1)
        val = np.asarray(values, dtype=np.float64).reshape(-1)
        if idx.shape != val.shape:
            raise ValueError("indices and values must have the same length")
        if idx.size:
            if idx.min() < 1 or idx.max() > n:
                raise ValueError(f"indices must lie in [1, {n}]")
            order = np.argsort(idx, kind="stable")
            idx, val = idx[order], val[order]
            if np.any(idx[1:] == idx[:-1]):
                raise ValueError("duplicate indices")
            if not np.all(np.isfinite(val)):
                raise ValueError("values must be finite")
            keep = val != 0.0
            idx, val = idx[keep], val[keep]
        idx.setflags(write=False)
        val.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "values", val)

    def __setattr__(self, name, value):
        raise AttributeError("SparseVector is immutable")

    @classmethod
    def from_dict(cls, n, entries):
        items = sorted(entries.items())
        return cls(n, [k for k, _ in items], [v for _, v in items])

    @classmethod
    def from_dense(cls, dense):
        """Build from a dense array; position 0 becomes index 1."""
        d = np.asarray(dense, dtype=np.float64)
        nz = np.flatnonzero(d)
        return cls(d.size, nz + 1, d[nz])

    def to_dense(self):
        out = np.zeros(self.n)
        out[self.indices - 1] = self.values
        return out

    def to_dict(self):
        return dict(zip(self.indices.tolist(), self.values.tolist()))

    @property
    def nnz(self):
        return int(self.indices.size)

    def __len__(self):
        return self.nnz

    def __getitem__(self, index):
        pos = np.searchsorted(self.indices, index)
        if pos < self.indices.size and self.indices[pos] == index:
            return float(self.values[pos])
        return 0.0

    def __mul__(self, c):
        return SparseVector(self.n, self.indices, self.values * float(c))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return (self.n == other.n and np.array_equal(self.indices, other.indices)
                and np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash((self.n, self.indices.tobytes(), self.values.tobytes()))

    def __repr__(self):
        head = ", ".join(f"{i}: {v:g}" for i, v in list(self.to_dict().items())[:6])
        more = ", ..." if self.nnz > 6 else ""
        return f"SparseVector(n={self.n}, {{{head}{more}}})"


def _check_dims(a, b):
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} != {b.n}")


def inner(a: SparseVector, b: SparseVector) -> float:
    _check_dims(a, b)
    _, ia, ib = np.intersect1d(a.indices, b.indices, assume_unique=True, return_indices=True)
    return math.fsum((a.values[ia] * b.values[ib]).tolist())


def norm(a: SparseVector) -> float:
    if a.nnz == 0:
        return 0.0
    return math.sqrt(math.fsum((a.values * a.values).tolist()))


def restrict_to_intersection(a: SparseVector, b: SparseVector):
    """``(a_I, b_I)``: both vectors restricted to the shared support."""
    _check_dims(a, b)
    common, ia, ib = np.intersect1d(a.indices, b.indices, assume_unique=True, return_indices=True)
    return (SparseVector(a.n, common, a.values[ia]), SparseVector(b.n, common, b.values[ib]))


def overlap_scale(a: SparseVector, b: SparseVector) -> float:
    """``max(|a_I| |b|, |a| |b_I|)``, the error scale of weighted sampling."""
    a_i, b_i = restrict_to_intersection(a, b)
    return max(norm(a_i) * norm(b), norm(a) * norm(b_i))


# --- text interchange --------------------------------------------------------


def format_text(v: SparseVector) -> str:
    lines = [f"n={v.n}"]
    lines += [f"{i} {x!r}" for i, x in zip(v.indices.tolist(), v.values.tolist())]
    return "\n".join(lines) + "\n"


def parse_text(text: str) -> SparseVector:
    """Parse ``n=<dim>`` followed by one ``index value`` pair per line.

    Blank lines and ``#`` comments are ignored.
    """
    n = None
    idx, val = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            if not line.startswith("n="):
                raise ValueError(f"line {lineno}: expected header 'n=<dimension>'")
            n = int(line[2:])
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'index value'")
        idx.append(int(parts[0]))
        val.append(float(parts[1]))
    if n is None:
        raise ValueError("missing header 'n=<dimension>'")
    return SparseVector(n, idx, val)


def read_vector(path) -> SparseVector:
    return parse_text(Path(path).read_text())


def write_vector(v: SparseVector, path) -> None:
    Path(path).write_text(format_text(v))
