"""Chase-II soft-input list decoding.

`run_chase` is the single-vector API; `chase_batch` decodes a whole batch of
rows at once and keeps candidates as flip patterns relative to the hard
decision, which is what the turbo decoder consumes.
"""

from dataclasses import dataclass

import numpy as np

from . import channel, codes


@dataclass(frozen=True)
class ChaseConfig:
    p: int

    def __post_init__(self):
        if not 1 <= self.p <= 16:
            raise ValueError(f"p must be in 1..16, got {self.p}")


@dataclass
class ChaseResult:
    lrp: np.ndarray            # p least reliable indices, ascending
    hard: np.ndarray
    candidates: list           # unique codewords (np.uint8 arrays)
    cand_logp: np.ndarray      # ln P(c | y) per candidate
    origin_count: int          # testwords that decoded successfully


def least_reliable_positions(llr, p):
    """Indices of the p smallest |L_i|; ties to the lower index; ascending."""
    llr = np.asarray(llr, dtype=np.float64)
    n = llr.shape[-1]
    if p > n:
        raise ValueError(f"p={p} exceeds code length {n}")
    order = np.argsort(np.abs(llr), kind="stable")
    return np.sort(order[:p])


@dataclass
class ChaseBatch:
    """Batch Chase output; candidates are stored as diff patterns vs `hard`."""

    hard: np.ndarray       # (B, n) uint8
    abs_llr: np.ndarray    # (B, n)
    lrp: np.ndarray        # (B, p) ascending
    diffs: np.ndarray      # (B, C, n) uint8: candidate = hard XOR diff
    valid: np.ndarray      # (B, C) bool: unique successfully decoded candidates
    weight: np.ndarray     # (B, C) sum of |L| over diff positions; +inf if invalid
    origin_count: np.ndarray  # (B,) successful BDD attempts (before dedup)


def chase_batch(code, llr, p):
    """Chase-II over a (B, n) LLR batch: 2^p testwords per row, BDD, dedup."""
    llr = channel.clip_llr(np.asarray(llr, dtype=np.float64))
    if llr.ndim != 2 or llr.shape[1] != code.n:
        raise ValueError(f"llr must have shape (B, {code.n})")
    b, n = llr.shape
    c = 1 << p

    abs_llr = np.abs(llr)
    hard = (llr < 0).astype(np.uint8)
    order = np.argsort(abs_llr, axis=1, kind="stable")
    lrp = np.sort(order[:, :p], axis=1)

    patterns = ((np.arange(c)[:, None] >> np.arange(p)) & 1).astype(np.uint8)
    idx = np.broadcast_to(lrp[:, None, :], (b, c, p))
    testwords = np.broadcast_to(hard[:, None, :], (b, c, n)).copy()
    vals = np.take_along_axis(hard, lrp, axis=1)[:, None, :] ^ patterns[None, :, :]
    np.put_along_axis(testwords, idx, vals, axis=2)

    decoded, ok = codes.bdd_decode_batch(code, testwords.reshape(b * c, n))
    decoded = decoded.reshape(b, c, n)
    ok = ok.reshape(b, c)
    diffs = decoded ^ hard[:, None, :]

    # Deduplicate by exact diff pattern: lexsort on the packed pattern words,
    # keep the first occurrence; failed attempts get an impossible sentinel.
    packed = np.packbits(diffs, axis=2)
    pad = (-packed.shape[2]) % 8
    if pad:
        packed = np.concatenate(
            [packed, np.zeros((b, c, pad), dtype=np.uint8)], axis=2
        )
    words = packed.view(np.uint64).reshape(b, c, -1).copy()
    words[~ok] = np.uint64(0xFFFFFFFFFFFFFFFF)
    keys = [words[:, :, i] for i in range(words.shape[2] - 1, -1, -1)]
    sorter = np.lexsort(keys)
    sorted_words = np.take_along_axis(words, sorter[:, :, None], axis=1)
    first = np.ones((b, c), dtype=bool)
    first[:, 1:] = np.any(sorted_words[:, 1:] != sorted_words[:, :-1], axis=2)
    unique = np.zeros((b, c), dtype=bool)
    np.put_along_axis(unique, sorter, first, axis=1)
    valid = ok & unique

    weight = np.einsum("bcn,bn->bc", diffs.astype(np.float64), abs_llr)
    weight[~valid] = np.inf
    return ChaseBatch(hard, abs_llr, lrp, diffs, valid, weight, ok.sum(axis=1))


def run_chase(code, llr, cfg):
    """Chase-II on one LLR vector; returns the unique candidate list."""
    llr = np.asarray(llr, dtype=np.float64)
    if llr.shape != (code.n,):
        raise ValueError(f"llr must have length {code.n}")
    batch = chase_batch(code, llr[None, :], cfg.p)
    rel = channel.reliability(llr)
    cand_idx = np.nonzero(batch.valid[0])[0]
    candidates = [batch.hard[0] ^ batch.diffs[0, i] for i in cand_idx]
    logp = np.array(
        [channel.log_vector_posterior(cw, rel) for cw in candidates], dtype=np.float64
    )
    return ChaseResult(
        lrp=batch.lrp[0],
        hard=batch.hard[0],
        candidates=candidates,
        cand_logp=logp,
        origin_count=int(batch.origin_count[0]),
    )
