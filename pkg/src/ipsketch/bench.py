"""Synthetic inner-product benchmark at matched storage, with CSV reports."""
from __future__ import annotations

import csv
import io
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .baselines import (CS_REPETITIONS, CountSketchSketch, JlSketch, KmvSketch, cs_estimate,
                        cs_sketch, jl_estimate, jl_sketch, kmv_estimate, kmv_sketch)
from .hashing import child_seed
from .minhash import MinHashSketch, mh_estimate, mh_sketch
from .sparsevec import SparseVector, inner, norm
from .wmh import DEFAULT_L, WmhSketch, wmh_estimate, wmh_sketch

METHODS = ("WMH", "MH", "KMV", "JL", "CS")
BASE_DISTRIBUTIONS = ("truncnorm", "scaled-normal")
CSV_COLUMNS = ("method", "budget", "m", "trial", "truth", "estimate", "scaled_error", "gamma",
               "seed")


@dataclass(frozen=True)
class SyntheticConfig:
    n: int = 10_000
    nnz: int = 2000
    overlap: float = 0.0
    outlier_frac: float = 0.10
    outlier_range: tuple[float, float] = (20.0, 30.0)
    base: str = "truncnorm"
    seed: int = 0
    trials: int = 10

    def __post_init__(self):
        if self.n < 1 or self.nnz < 0 or self.trials < 0:
            raise ValueError("n must be positive; nnz and trials non-negative")
        if not 0.0 <= self.overlap <= 1.0 or not 0.0 <= self.outlier_frac <= 1.0:
            raise ValueError("overlap and outlier fraction must lie in [0, 1]")
        lo, hi = self.outlier_range
        if not lo <= hi:
            raise ValueError("outlier range must be increasing")
        if self.base not in BASE_DISTRIBUTIONS:
            raise ValueError(f"unknown base distribution {self.base!r}")
        if 2 * self.nnz - self.shared > self.n:
            raise ValueError(f"supports of size {self.nnz} with {self.shared} shared entries "
                             f"do not fit in dimension {self.n}")

    @property
    def shared(self) -> int:
        # the epsilon keeps e.g. 0.29 * 100 from flooring to 28
        return int(math.floor(self.overlap * self.nnz + 1e-9))


@dataclass(frozen=True)
class EstimateReport:
    method: str
    budget: float
    m: int
    storage_size: float
    truth: float
    estimate: float
    scaled_error: float
    trial: int
    gamma: float
    seed: int


def _base_values(rng: np.random.Generator, size: int, base: str) -> np.ndarray:
    if base == "scaled-normal":
        return np.clip(rng.standard_normal(size) / 3.0, -1.0, 1.0)
    out = np.empty(0)
    while out.size < size:
        draw = rng.standard_normal(2 * (size - out.size) + 8)
        out = np.concatenate([out, draw[np.abs(draw) <= 1.0]])
    return out[:size]


def _values(rng, cfg: SyntheticConfig) -> np.ndarray:
    v = _base_values(rng, cfg.nnz, cfg.base)
    hit = rng.random(cfg.nnz) < cfg.outlier_frac
    v[hit] = rng.uniform(*cfg.outlier_range, size=int(hit.sum()))
    return v


def gen_synthetic(cfg: SyntheticConfig, trial: int = 0) -> tuple[SparseVector, SparseVector]:
    """One random pair whose supports share exactly ``cfg.shared`` indices.

    The pair depends only on ``(cfg.seed, trial)`` and the shape parameters,
    so every method in a run sees the same vectors.
    """
    rng = np.random.default_rng([cfg.seed, trial])
    s = cfg.shared
    perm = rng.permutation(cfg.n)[: 2 * cfg.nnz - s] + 1
    idx_a = perm[: cfg.nnz]
    idx_b = np.concatenate([perm[:s], perm[cfg.nnz:]])
    return (SparseVector(cfg.n, idx_a, _values(rng, cfg)),
            SparseVector(cfg.n, idx_b, _values(rng, cfg)))


def storage_size(sketch) -> float:
    """Storage in 64-bit words: 64-bit values plus 32-bit hashes per sample."""
    if isinstance(sketch, WmhSketch):
        return 1.5 * sketch.m + 1
    if isinstance(sketch, MinHashSketch):
        return 1.5 * sketch.m
    if isinstance(sketch, KmvSketch):
        return 1.5 * sketch.k
    if isinstance(sketch, JlSketch):
        return float(sketch.m)
    if isinstance(sketch, CountSketchSketch):
        return float(sketch.r * sketch.m)
    raise TypeError(f"not a sketch: {type(sketch).__name__}")


def samples_for_budget(method: str, budget: float) -> int:
    """Largest sample count whose storage does not exceed ``budget``."""
    method = method.upper()
    if method in ("MH", "KMV"):
        return int(math.floor(budget / 1.5))
    if method == "WMH":
        return int(math.floor((budget - 1) / 1.5))
    if method == "JL":
        return int(math.floor(budget))
    if method == "CS":
        return int(budget // CS_REPETITIONS)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def sketch_pair(method: str, a: SparseVector, b: SparseVector, m: int, seed: int,
                L: int = DEFAULT_L, strategy: str = "fast"):
    """Sketch both vectors with shared randomness and return (estimate, sketch of a)."""
    method = method.upper()
    if method == "WMH":
        sa, sb = (wmh_sketch(v, m, seed, L, strategy) for v in (a, b))
        return wmh_estimate(sa, sb), sa
    if method == "MH":
        sa, sb = (mh_sketch(v, m, seed) for v in (a, b))
        return mh_estimate(sa, sb), sa
    if method == "KMV":
        sa, sb = (kmv_sketch(v, m, seed) for v in (a, b))
        return kmv_estimate(sa, sb), sa
    if method == "JL":
        sa, sb = (jl_sketch(v, m, seed) for v in (a, b))
        return jl_estimate(sa, sb), sa
    if method == "CS":
        sa, sb = (cs_sketch(v, m, seed) for v in (a, b))
        return cs_estimate(sa, sb), sa
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def thread_count() -> int:
    """Worker cap from IPSKETCH_THREADS, defaulting to the CPU count."""
    raw = os.environ.get("IPSKETCH_THREADS")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"IPSKETCH_THREADS must be a positive integer, got {raw!r}") from None
        if value < 1:
            raise ValueError(f"IPSKETCH_THREADS must be a positive integer, got {raw!r}")
        return value
    return os.cpu_count() or 1


def run_experiment(cfg: SyntheticConfig, methods=METHODS, storage_budgets=(400,),
                   L: int = DEFAULT_L, strategy: str = "fast", threads: int | None = None):
    """Reports for every (method, budget, trial) cell, sorted by that key."""
    methods = [mth.upper() for mth in methods]
    for mth in methods:
        if mth not in METHODS:
            raise ValueError(f"unknown method {mth!r}; expected one of {METHODS}")
    cells = []
    for mth in methods:
        for budget in storage_budgets:
            m = samples_for_budget(mth, budget)
            if m < 1 or (mth == "KMV" and m < 2):
                warnings.warn(f"budget {budget} leaves {mth} with m={m}; skipped", stacklevel=2)
                continue
            cells += [(mth, budget, m, t) for t in range(cfg.trials)]
    pairs = {}
    for t in range(cfg.trials):
        a, b = gen_synthetic(cfg, t)
        pairs[t] = (a, b, inner(a, b), norm(a) * norm(b))

    def run(cell):
        mth, budget, m, t = cell
        a, b, truth, scale = pairs[t]
        est, sa = sketch_pair(mth, a, b, m, child_seed(cfg.seed, t + 1), L, strategy)
        err = abs(est - truth) / scale if scale > 0 else abs(est - truth)
        return EstimateReport(mth, budget, m, storage_size(sa), truth, est, err, t,
                              cfg.overlap, cfg.seed)

    workers = min(threads or thread_count(), max(len(cells), 1))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(run, cells))
    else:
        reports = [run(c) for c in cells]
    return sorted(reports, key=lambda r: (r.gamma, r.method, r.budget, r.trial))


def _fmt(x):
    return repr(float(x)) if isinstance(x, float) else str(x)


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        d = asdict(r)
        w.writerow([_fmt(d[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def mean_scaled_error(reports, method: str, budget=None, gamma=None) -> float:
    errs = [r.scaled_error for r in reports if r.method == method
            and (budget is None or r.budget == budget) and (gamma is None or r.gamma == gamma)]
    if not errs:
        raise ValueError(f"no reports for {method}")
    return float(np.mean(errs))


_ESTIMATORS = {WmhSketch: wmh_estimate, MinHashSketch: mh_estimate, KmvSketch: kmv_estimate,
               JlSketch: jl_estimate, CountSketchSketch: cs_estimate}


def estimate_any(sa, sb) -> float:
    """Dispatch to the estimator matching the sketch type."""
    try:
        est = _ESTIMATORS[type(sa)]
    except KeyError:
        raise TypeError(f"not a sketch: {type(sa).__name__}") from None
    return est(sa, sb)
