"""Portable sketch files: a versioned little-endian binary layout and a JSON mirror.

Binary layout (all little-endian)::

    magic      4s   b"IPSK"
    version    u16
    method     u8   1=MH 2=WMH 3=KMV 4=JL 5=CS
    strategy   u8   0=none 1=exact 2=fast
    family     u8   0=philox 1=linear
    reserved   u8
    n          u64
    m          u64  samples, rows, or k for KMV
    L          u64  0 unless WMH
    seed       u64
    prime      u64  modulus of the hash grid
    prng       u32  1 = philox4x32-10
    aux        u64  CS repetitions, KMV support size, else 0
    payload         float64 arrays (KMV: u64 count, then hashes, int64 indices, values)

Vector indices are 1-based throughout. The JSON mirror uses the same field
names with arrays as lists.
"""
from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from .baselines import CountSketchSketch, JlSketch, KmvSketch
from .hashing import PRIME, PRNG_NAME
from .minhash import MinHashSketch
from .wmh import WmhSketch

MAGIC = b"IPSK"
VERSION = 1
PRNG_ID = 1

_HEADER = struct.Struct("<4sHBBBBQQQQQIQ")
_METHODS = {"MH": 1, "WMH": 2, "KMV": 3, "JL": 4, "CS": 5}
_METHOD_NAMES = {v: k for k, v in _METHODS.items()}
_TYPES = {MinHashSketch: "MH", WmhSketch: "WMH", KmvSketch: "KMV", JlSketch: "JL",
          CountSketchSketch: "CS"}
_STRATEGIES = {None: 0, "exact": 1, "fast": 2}
_STRATEGY_NAMES = {v: k for k, v in _STRATEGIES.items()}
_FAMILIES = {"philox": 0, "linear": 1}
_FAMILY_NAMES = {v: k for k, v in _FAMILIES.items()}


class SketchFormatError(ValueError):
    pass


def method_of(sketch) -> str:
    try:
        return _TYPES[type(sketch)]
    except KeyError:
        raise TypeError(f"not a sketch: {type(sketch).__name__}") from None


def _fields(sketch) -> dict:
    """Header fields and named arrays shared by both encodings."""
    method = method_of(sketch)
    seed = int(sketch.seed)
    if not 0 <= seed < 2 ** 64:
        raise ValueError("only seeds in [0, 2^64) can be serialized")
    d = {"method": method, "n": sketch.n, "m": sketch.k if method == "KMV" else sketch.m,
         "L": 0, "seed": seed, "strategy": None, "family": getattr(sketch, "family", "philox"),
         "aux": 0, "prime": PRIME, "prng": PRNG_NAME}
    if method == "MH":
        arrays = {"hash_mins": sketch.hash_mins, "sampled_vals": sketch.sampled_vals}
    elif method == "WMH":
        d.update(L=sketch.L, strategy=sketch.strategy)
        arrays = {"hash_mins": sketch.hash_mins, "sampled_vals": sketch.sampled_vals,
                  "stored_norm": np.array([sketch.stored_norm])}
    elif method == "KMV":
        d["aux"] = sketch.support_size
        arrays = {"hashes": sketch.hashes, "indices": sketch.indices, "values": sketch.values}
    elif method == "JL":
        arrays = {"projected": sketch.projected}
    else:
        d["aux"] = sketch.r
        arrays = {"table": sketch.table}
    return d, arrays


def _build(d: dict, arrays: dict):
    method = d["method"]
    if d["prime"] != PRIME or d["prng"] != PRNG_NAME:
        raise SketchFormatError("sketch was built with a different prime or generator")
    n, m, seed = int(d["n"]), int(d["m"]), int(d["seed"])
    if method == "MH":
        return MinHashSketch(m, arrays["hash_mins"], arrays["sampled_vals"], seed, n, d["family"])
    if method == "WMH":
        return WmhSketch(m, arrays["hash_mins"], arrays["sampled_vals"],
                         float(arrays["stored_norm"][0]), int(d["L"]), seed, n, d["strategy"],
                         d["family"])
    if method == "KMV":
        return KmvSketch(m, arrays["hashes"], arrays["indices"], arrays["values"], seed, n,
                         int(d["aux"]), d["family"])
    if method == "JL":
        return JlSketch(m, arrays["projected"], seed, n)
    return CountSketchSketch(m, int(d["aux"]), np.reshape(arrays["table"], (int(d["aux"]), m)),
                             seed, n)


def to_bytes(sketch) -> bytes:
    d, arrays = _fields(sketch)
    head = _HEADER.pack(MAGIC, VERSION, _METHODS[d["method"]], _STRATEGIES[d["strategy"]],
                        _FAMILIES[d["family"]], 0, d["n"], d["m"], d["L"], d["seed"], PRIME,
                        PRNG_ID, d["aux"])
    parts = [head]
    if d["method"] == "KMV":
        parts.append(struct.pack("<Q", arrays["hashes"].size))
    for name, arr in arrays.items():
        dtype = "<i8" if name == "indices" else "<f8"
        parts.append(np.ascontiguousarray(arr, dtype=dtype).tobytes())
    return b"".join(parts)


def from_bytes(data: bytes):
    if len(data) < _HEADER.size:
        raise SketchFormatError("truncated sketch header")
    (magic, version, method, strategy, family, _, n, m, L, seed, prime, prng,
     aux) = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise SketchFormatError("not a sketch file (bad magic)")
    if version != VERSION:
        raise SketchFormatError(f"unsupported format version {version}")
    if prng != PRNG_ID:
        raise SketchFormatError(f"unknown generator id {prng}")
    try:
        name = _METHOD_NAMES[method]
        d = {"method": name, "n": n, "m": m, "L": L, "seed": seed,
             "strategy": _STRATEGY_NAMES[strategy], "family": _FAMILY_NAMES[family],
             "aux": aux, "prime": prime, "prng": PRNG_NAME}
    except KeyError:
        raise SketchFormatError("unknown method, strategy or family tag") from None
    off = _HEADER.size
    if name == "KMV":
        (count,) = struct.unpack_from("<Q", data, off)
        off += 8
        layout = [("hashes", "<f8", count), ("indices", "<i8", count), ("values", "<f8", count)]
    elif name == "MH":
        layout = [("hash_mins", "<f8", m), ("sampled_vals", "<f8", m)]
    elif name == "WMH":
        layout = [("hash_mins", "<f8", m), ("sampled_vals", "<f8", m), ("stored_norm", "<f8", 1)]
    elif name == "JL":
        layout = [("projected", "<f8", m)]
    else:
        layout = [("table", "<f8", aux * m)]
    need = off + 8 * sum(c for _, _, c in layout)
    if len(data) != need:
        raise SketchFormatError(f"payload size mismatch: expected {need} bytes, got {len(data)}")
    arrays = {}
    for field, dtype, count in layout:
        arrays[field] = np.frombuffer(data, dtype=dtype, count=count, offset=off)
        off += 8 * count
    try:
        return _build(d, arrays)
    except (TypeError, ValueError) as exc:
        raise SketchFormatError(str(exc)) from exc


def to_json(sketch) -> str:
    d, arrays = _fields(sketch)
    d = {"magic": MAGIC.decode(), "version": VERSION, **d}
    d.update({k: np.asarray(v).tolist() for k, v in arrays.items()})
    return json.dumps(d, indent=1)


def from_json(text: str):
    d = json.loads(text)
    if d.get("magic") != MAGIC.decode() or d.get("version") != VERSION:
        raise SketchFormatError("not a version-1 sketch document")
    arrays = {k: np.asarray(d[k], dtype=np.int64 if k == "indices" else np.float64)
              for k in ("hash_mins", "sampled_vals", "stored_norm", "hashes", "indices",
                        "values", "projected", "table") if k in d}
    try:
        return _build(d, arrays)
    except (KeyError, TypeError, ValueError) as exc:
        raise SketchFormatError(str(exc)) from exc


def save(sketch, path) -> None:
    """Write ``sketch``; a ``.json`` suffix selects the JSON mirror."""
    path = Path(path)
    if path.suffix == ".json":
        path.write_text(to_json(sketch))
    else:
        path.write_bytes(to_bytes(sketch))


def load(path):
    path = Path(path)
    data = path.read_bytes()
    if data[:4] == MAGIC:
        return from_bytes(data)
    try:
        return from_json(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError):
        raise SketchFormatError(f"{path}: not a sketch file") from None
