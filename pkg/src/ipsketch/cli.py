"""Command-line entry point: ``ipsketch sketch|estimate|join-stats|synth-bench``."""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import bench, serialize, tables
from .baselines import cs_sketch, jl_sketch, kmv_sketch
from .minhash import mh_sketch
from .sparsevec import SparseVector, read_vector
from .wmh import DEFAULT_L, STRATEGIES, wmh_sketch

EXIT_INVALID = 2


class UsageError(ValueError):
    pass


def _csv_list(kind):
    def parse(text):
        try:
            return [kind(x) for x in text.split(",") if x.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid list {text!r}") from None
    return parse


def _number(text):
    x = float(text)
    return int(x) if x.is_integer() else x


def _load_input(args) -> SparseVector:
    path = Path(args.input)
    if args.column is None:
        return read_vector(path)
    col = tables.read_keyed_csv(path, header=args.header, hash_keys=args.hash_keys,
                                n=args.n or tables.KEY_DOMAIN)
    if args.column == "key":
        return tables.encode_key_indicator(col)
    return tables.encode_value_column(col)


def cmd_sketch(args) -> int:
    vec = _load_input(args)
    method = args.method.upper()
    if method == "WMH":
        sk = wmh_sketch(vec, args.m, args.seed, args.L, args.strategy, args.family)
    elif method == "MH":
        sk = mh_sketch(vec, args.m, args.seed, args.family)
    elif method == "KMV":
        sk = kmv_sketch(vec, args.m, args.seed, args.family)
    elif method == "JL":
        sk = jl_sketch(vec, args.m, args.seed)
    elif method == "CS":
        sk = cs_sketch(vec, args.m, args.seed)
    else:
        raise UsageError(f"unknown method {args.method!r}")
    serialize.save(sk, args.out)
    return 0


def cmd_estimate(args) -> int:
    sa, sb = serialize.load(args.a), serialize.load(args.b)
    print(repr(bench.estimate_any(sa, sb)))
    return 0


def cmd_join_stats(args) -> int:
    sv, ska, skb = (serialize.load(p) for p in (args.value_a, args.key_a, args.key_b))
    st = tables.estimate_join_stats(sv, ska, skb, bench.estimate_any)
    print(json.dumps({"join_size": st.join_size, "sum_a": st.sum_a, "mean_a": st.mean_a}))
    return 0


def cmd_synth_bench(args) -> int:
    reports = []
    for gamma in args.overlap:
        cfg = bench.SyntheticConfig(n=args.n, nnz=args.nnz, overlap=gamma,
                                    outlier_frac=args.outlier_frac, seed=args.seed,
                                    trials=args.trials)
        reports += bench.run_experiment(cfg, args.methods, args.budgets, args.L, args.strategy)
    text = bench.reports_to_csv(reports)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ipsketch", description="Inner-product sketches for "
                                "sparse vectors and join statistics.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sketch", help="sketch a vector or table column file")
    s.add_argument("input", help="vector text file, or CSV when --column is given")
    s.add_argument("--method", default="WMH", type=str.upper, choices=bench.METHODS)
    s.add_argument("--m", type=int, required=True, help="samples, rows, or k for KMV")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--L", type=int, default=DEFAULT_L)
    s.add_argument("--strategy", default="fast", choices=STRATEGIES)
    s.add_argument("--family", default="philox", choices=("philox", "linear"))
    s.add_argument("--column", choices=("key", "value"),
                   help="read a CSV table and sketch its key indicator or value column")
    s.add_argument("--header", action="store_true", help="CSV has a header row")
    s.add_argument("--hash-keys", action="store_true", help="hash non-integer CSV keys")
    s.add_argument("--n", type=int, help="key domain size for CSV input")
    s.add_argument("--out", required=True, help="output path; .json writes the JSON mirror")
    s.set_defaults(func=cmd_sketch)

    e = sub.add_parser("estimate", help="estimate the inner product of two sketches")
    e.add_argument("a")
    e.add_argument("b")
    e.set_defaults(func=cmd_estimate)

    j = sub.add_parser("join-stats", help="join size, SUM and MEAN from three sketches")
    j.add_argument("value_a", help="sketch of table A's value column")
    j.add_argument("key_a", help="sketch of table A's key indicator")
    j.add_argument("key_b", help="sketch of table B's key indicator")
    j.set_defaults(func=cmd_join_stats)

    b = sub.add_parser("synth-bench", help="synthetic benchmark at matched storage")
    b.add_argument("--n", type=int, default=10_000)
    b.add_argument("--nnz", type=int, default=2000)
    b.add_argument("--overlap", type=_csv_list(float), default=[0.01, 0.05, 0.10, 0.50],
                   help="comma-separated overlap fractions")
    b.add_argument("--outlier-frac", type=float, default=0.10)
    b.add_argument("--budgets", type=_csv_list(_number), default=[400])
    b.add_argument("--methods", type=_csv_list(str.upper), default=list(bench.METHODS))
    b.add_argument("--trials", type=int, default=10)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--L", type=int, default=DEFAULT_L)
    b.add_argument("--strategy", default="fast", choices=STRATEGIES)
    b.add_argument("--out", help="CSV path (standard output when omitted)")
    b.set_defaults(func=cmd_synth_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return args.func(args)
    except (ValueError, TypeError, OSError) as exc:
        print(f"ipsketch: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
