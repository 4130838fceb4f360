"""Sketches for estimating inner products between sparse vectors."""
from .baselines import (CountSketchSketch, JlSketch, KmvSketch, cs_estimate, cs_sketch,
                        jl_estimate, jl_sketch, kmv_estimate, kmv_sketch)
from .bench import (EstimateReport, SyntheticConfig, estimate_any, gen_synthetic,
                    run_experiment, storage_size)
from .hashing import PRIME, HashFn, SeedSpec, evaluate, make_hash
from .minhash import MinHashSketch, mh_estimate, mh_estimate_median, mh_sketch, mh_sketches
from .serialize import load, save
from .sparsevec import SparseVector, inner, norm
from .tables import (JoinStats, KeyedColumn, encode_key_indicator, encode_value_column,
                     estimate_join_stats)
from .wmh import (DEFAULT_L, RoundedUnitVector, WmhSketch, round_unit, weighted_jaccard,
                  wmh_estimate, wmh_estimate_median, wmh_sketch, wmh_sketches)

__version__ = "0.1.0"
