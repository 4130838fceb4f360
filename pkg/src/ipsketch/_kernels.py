"""Compiled inner loops: the Philox4x32-10 counter-based generator and the
per-repetition minimum searches used by every sampling sketch.

All kernels are pure functions of their arguments. Counter layout is
``(lo32(x), hi32(x), c2, tag | extra << 8)`` where the low byte of the last
word separates the different uses of the generator.
"""
import numpy as np
from numba import njit

PRIME = 2147483647  # 2**31 - 1

TAG_LINEAR_PARAMS = 1
TAG_INDEX = 2
TAG_SLOT = 3
TAG_RECORD = 4
TAG_JL = 5
TAG_CHILD = 6

_M0 = np.uint64(0xD2511F53)
_M1 = np.uint64(0xCD9E8D57)
_W0 = np.uint64(0x9E3779B9)
_W1 = np.uint64(0xBB67AE85)
_MASK32 = np.uint64(0xFFFFFFFF)
_S32 = np.uint64(32)
_S11 = np.uint64(11)
_P_U = np.uint64(PRIME)
_TWO_M53 = 1.0 / 9007199254740992.0


@njit(cache=True, nogil=True)
def philox4x32(c0, c1, c2, c3, k0, k1):
    """Ten rounds of Philox4x32 on a 128-bit counter with a 64-bit key.

    Every argument and result word is a uint64 holding a 32-bit value.
    """
    c0 = np.uint64(c0) & _MASK32
    c1 = np.uint64(c1) & _MASK32
    c2 = np.uint64(c2) & _MASK32
    c3 = np.uint64(c3) & _MASK32
    k0 = np.uint64(k0) & _MASK32
    k1 = np.uint64(k1) & _MASK32
    for r in range(10):
        p0 = _M0 * c0
        p1 = _M1 * c2
        hi0 = p0 >> _S32
        lo0 = p0 & _MASK32
        hi1 = p1 >> _S32
        lo1 = p1 & _MASK32
        c0 = hi1 ^ c1 ^ k0
        c1 = lo1
        c2 = hi0 ^ c3 ^ k1
        c3 = lo0
        if r < 9:
            k0 = (k0 + _W0) & _MASK32
            k1 = (k1 + _W1) & _MASK32
    return c0, c1, c2, c3


@njit(cache=True, nogil=True)
def _grid_int(w_hi, w_lo):
    # Uniform on {1, ..., p}; modulo bias is below 2**-33.
    x = (w_hi << _S32) | w_lo
    return np.int64(x % _P_U) + 1


@njit(cache=True, nogil=True)
def _open_unit(w_hi, w_lo):
    # 53-bit uniform strictly inside (0, 1).
    x = ((w_hi << _S32) | w_lo) >> _S11
    return (np.float64(x) + 0.5) * _TWO_M53


@njit(cache=True, nogil=True)
def _split(x):
    u = np.uint64(x)
    return u & _MASK32, u >> _S32


@njit(cache=True, nogil=True)
def index_hash_int(index, rep, k0, k1, tag):
    """Keyed hash of a (64-bit) index for one repetition, on {1, ..., p}."""
    lo, hi = _split(index)
    w0, w1, _, _ = philox4x32(lo, hi, rep, tag, k0, k1)
    return _grid_int(w0, w1)


@njit(cache=True, nogil=True)
def linear_hash_int(index, alpha, beta):
    """(alpha * index + beta) mod p + 1, with the index reduced mod p first."""
    return (alpha * (index % PRIME) + beta) % PRIME + 1


@njit(cache=True, nogil=True)
def linear_params(rep, k0, k1):
    lo, hi = _split(rep)
    w0, w1, w2, w3 = philox4x32(lo, hi, 0, TAG_LINEAR_PARAMS, k0, k1)
    a = (w0 << _S32) | w1
    b = (w2 << _S32) | w3
    alpha = np.int64(a % np.uint64(PRIME - 1)) + 1
    beta = np.int64(b % _P_U)
    return alpha, beta


@njit(cache=True, nogil=True)
def child_seed(t, k0, k1):
    lo, hi = _split(t)
    w0, w1, _, _ = philox4x32(lo, hi, 0, TAG_CHILD, k0, k1)
    return (w1 << _S32) | w0


# --- unweighted minimum over a support ---------------------------------------


@njit(cache=True, nogil=True)
def min_index_hash(indices, m, k0, k1, tag):
    """Per repetition 1..m: the minimum keyed hash over ``indices`` and the
    position (into ``indices``) attaining it. Ties keep the first position."""
    mins = np.empty(m, dtype=np.int64)
    arg = np.empty(m, dtype=np.int64)
    for r in range(m):
        best = PRIME + 1
        best_pos = -1
        rep = r + 1
        for t in range(indices.shape[0]):
            h = index_hash_int(indices[t], rep, k0, k1, tag)
            if h < best:
                best = h
                best_pos = t
        mins[r] = best
        arg[r] = best_pos
    return mins, arg


@njit(cache=True, nogil=True)
def min_linear_hash(indices, alphas, betas):
    m = alphas.shape[0]
    mins = np.empty(m, dtype=np.int64)
    arg = np.empty(m, dtype=np.int64)
    for r in range(m):
        best = PRIME + 1
        best_pos = -1
        for t in range(indices.shape[0]):
            h = linear_hash_int(indices[t], alphas[r], betas[r])
            if h < best:
                best = h
                best_pos = t
        mins[r] = best
        arg[r] = best_pos
    return mins, arg


@njit(cache=True, nogil=True)
def all_index_hashes(indices, rep, k0, k1, tag):
    out = np.empty(indices.shape[0], dtype=np.int64)
    for t in range(indices.shape[0]):
        out[t] = index_hash_int(indices[t], rep, k0, k1, tag)
    return out


# --- weighted: minimum over the expanded vector ------------------------------


@njit(cache=True, nogil=True)
def wmh_exact_keyed(blocks, counts, L, m, k0, k1):
    """Hash every nonzero slot of the expanded vector. Slot s (1-based) of
    block j has global index (j - 1) * L + s."""
    mins = np.empty(m, dtype=np.int64)
    arg = np.empty(m, dtype=np.int64)
    for r in range(m):
        rep = r + 1
        best = PRIME + 1
        best_pos = -1
        for t in range(blocks.shape[0]):
            base = (blocks[t] - 1) * L
            for s in range(1, counts[t] + 1):
                h = index_hash_int(base + s, rep, k0, k1, TAG_SLOT)
                if h < best:
                    best = h
                    best_pos = t
        mins[r] = best
        arg[r] = best_pos
    return mins, arg


@njit(cache=True, nogil=True)
def wmh_exact_linear(blocks, counts, L, alphas, betas):
    m = alphas.shape[0]
    mins = np.empty(m, dtype=np.int64)
    arg = np.empty(m, dtype=np.int64)
    for r in range(m):
        best = PRIME + 1
        best_pos = -1
        for t in range(blocks.shape[0]):
            base = (blocks[t] - 1) * L
            for s in range(1, counts[t] + 1):
                h = linear_hash_int(base + s, alphas[r], betas[r])
                if h < best:
                    best = h
                    best_pos = t
        mins[r] = best
        arg[r] = best_pos
    return mins, arg


@njit(cache=True, nogil=True)
def _record_draw(block, rep, k, k0, k1):
    lo, hi = _split(block)
    w0, w1, w2, w3 = philox4x32(lo, hi, rep, TAG_RECORD | (k << 8), k0, k1)
    return _open_unit(w0, w1), _open_unit(w2, w3)


@njit(cache=True, nogil=True)
def block_min(block, rep, prefix_len, k0, k1):
    """Minimum over positions 1..prefix_len of one block's record sequence.

    Record 0 sits at position 1. From a record with value z, the next record
    is a Geometric(z) number of positions further on and its value is
    uniform on (0, z). Returns (value, position, records walked)."""
    u_step, u_val = _record_draw(block, rep, 0, k0, k1)
    z = u_val
    pos = np.int64(1)
    k = 1
    while True:
        u_step, u_val = _record_draw(block, rep, k, k0, k1)
        skip = np.floor(np.log(u_step) / np.log1p(-z))
        if skip >= prefix_len - pos:
            break
        pos = pos + 1 + np.int64(skip)
        z = z * u_val
        k += 1
    return z, pos, k


@njit(cache=True, nogil=True)
def block_records(block, rep, limit, k0, k1):
    """All records with position <= limit, as (positions, values)."""
    cap = 64
    pos_out = np.empty(cap, dtype=np.int64)
    val_out = np.empty(cap, dtype=np.float64)
    u_step, u_val = _record_draw(block, rep, 0, k0, k1)
    z = u_val
    pos = np.int64(1)
    n = 0
    k = 1
    while True:
        if n == cap:
            cap *= 2
            p2 = np.empty(cap, dtype=np.int64)
            v2 = np.empty(cap, dtype=np.float64)
            p2[:n] = pos_out[:n]
            v2[:n] = val_out[:n]
            pos_out = p2
            val_out = v2
        pos_out[n] = pos
        val_out[n] = z
        n += 1
        u_step, u_val = _record_draw(block, rep, k, k0, k1)
        skip = np.floor(np.log(u_step) / np.log1p(-z))
        if skip >= limit - pos:
            break
        pos = pos + 1 + np.int64(skip)
        z = z * u_val
        k += 1
    return pos_out[:n], val_out[:n]


@njit(cache=True, nogil=True)
def wmh_fast(blocks, counts, m, k0, k1):
    mins = np.empty(m, dtype=np.float64)
    arg = np.empty(m, dtype=np.int64)
    for r in range(m):
        rep = r + 1
        best = 2.0
        best_pos = -1
        for t in range(blocks.shape[0]):
            z, _, _ = block_min(blocks[t], rep, counts[t], k0, k1)
            if z < best:
                best = z
                best_pos = t
        mins[r] = best
        arg[r] = best_pos
    return mins, arg


@njit(cache=True, nogil=True)
def block_min_over_seeds(k0s, k1s, rep, block, prefix_len):
    out = np.empty(k0s.shape[0], dtype=np.float64)
    for s in range(k0s.shape[0]):
        z, _, _ = block_min(block, rep, prefix_len, k0s[s], k1s[s])
        out[s] = z
    return out


# --- dense sign projection ----------------------------------------------------


@njit(cache=True, nogil=True)
def jl_project(indices, values, m, k0, k1):
    """sum_j sign(i, j) * values[j] for rows i = 0..m-1 (unscaled).

    Row i of column j takes bit (i mod 128) of Philox(j, i // 128)."""
    out = np.zeros(m, dtype=np.float64)
    n_chunks = (m + 127) // 128
    for t in range(indices.shape[0]):
        lo, hi = _split(indices[t])
        v = values[t]
        for c in range(n_chunks):
            w = philox4x32(lo, hi, c, TAG_JL, k0, k1)
            base = c * 128
            for q in range(4):
                word = w[q]
                for b in range(32):
                    i = base + q * 32 + b
                    if i >= m:
                        break
                    if (word >> np.uint64(b)) & np.uint64(1):
                        out[i] += v
                    else:
                        out[i] -= v
    return out
