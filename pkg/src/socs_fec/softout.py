"""Soft-output computation for list decoders.

Covers Hamming-ball summands/factors, covered-space probability estimates
(balls around the candidate list, balls around the Chase testwords, testwords
only, or a constant), the covered-space a-posteriori LLR, the Chase-Pyndiah
extrinsic baseline, and a brute-force exact-APP oracle for small codes.

Scalar functions operate on one component vector and are written for clarity;
the *_batch kernels process all rows of a product-code array at once and are
what the turbo decoder uses.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import channel, codes
from .channel import LLR_CLIP

LN2 = np.log(2.0)
_LN_Q_FLOOR = np.log(1e-300)  # keeps the out-of-list term finite when P(V|y) -> 1


@dataclass(frozen=True)
class CoveredSpaceSpec:
    """Which estimate of P(V | y) the soft-output stage uses."""

    variant: str               # constant-beta | balls-list | balls-testwords | testwords-only
    beta: float = 0.0          # constant-beta only
    r: int = 0                 # ball radius for the ball variants

    def __post_init__(self):
        if self.variant not in (
            "constant-beta", "balls-list", "balls-testwords", "testwords-only"
        ):
            raise ValueError(f"unknown covered-space variant {self.variant!r}")
        if self.variant == "constant-beta" and not 0.0 <= self.beta < 1.0:
            raise ValueError("beta must be in [0, 1)")
        if self.variant == "balls-testwords" and self.r not in (0, 1, 2):
            raise ValueError("testword-ball radius must be 0, 1, or 2")
        if self.variant == "balls-list" and self.r < 0:
            raise ValueError("list-ball radius must be >= 0")


@dataclass
class SoftOutput:
    l_app: np.ndarray
    l_ext: np.ndarray               # l_app - l_in before the alpha scaling
    p_covered: Optional[float]      # P(V | y); None for constant-beta
    competitors_found: np.ndarray   # per position: both bit values in the list
    empty_list: bool = False


def ball_summand(v, rel, r, mask=()):
    """s_r(v, y) over coordinates outside `mask` (Prop.-style power sums)."""
    if r not in (1, 2):
        raise ValueError("ball summand defined for r in {1, 2}")
    v = np.asarray(v, dtype=np.uint8)
    sign = np.where((v ^ rel.hard) == 0, 1.0, -1.0)
    terms = np.exp(-r * np.abs(rel.llr) * sign)
    keep = np.ones(len(terms), dtype=bool)
    keep[list(mask)] = False
    return float(terms[keep].sum())


def ball_factor(v, rel, r, mask=()):
    """b_r with P(B_r(v, mask) | y) = b_r * P(v | y) on coordinates outside mask."""
    if r == 0:
        return 1.0
    s1 = ball_summand(v, rel, 1, mask)
    if r == 1:
        return 1.0 + s1
    if r == 2:
        s2 = ball_summand(v, rel, 2, mask)
        return 1.0 + s1 + 0.5 * (s1 * s1 - s2)
    raise ValueError("ball factor defined for r in {0, 1, 2}")


def prob_testword_set(rel, lrp):
    """ln P(T | y): the power-set sum over the flip positions telescopes to 1."""
    keep = np.ones(len(rel.llr), dtype=bool)
    keep[np.asarray(lrp, dtype=np.int64)] = False
    return float(rel.log_gamma[keep].sum())


def prob_covered_testword_balls(rel, lrp, r):
    """ln P(B_r(T) | y) with balls restricted to the coordinates outside lrp."""
    if r not in (0, 1, 2):
        raise ValueError("testword-ball radius must be 0, 1, or 2")
    base = prob_testword_set(rel, lrp)
    if r == 0:
        return base
    return float(np.log(ball_factor(rel.hard, rel, r, mask=lrp))) + base


def prob_covered_list_balls(candidates, cand_logp, rel, r, d_min):
    """ln P(B_r(L) | y) for disjoint balls (requires r <= (d_min-1)//2)."""
    if r > (d_min - 1) // 2:
        raise ValueError(
            f"radius {r} overlaps for d_min={d_min}; need r <= {(d_min - 1) // 2}"
        )
    if len(candidates) == 0:
        return -np.inf
    terms = np.array(
        [np.log(ball_factor(c, rel, r)) + lp for c, lp in zip(candidates, cand_logp)]
    )
    m = terms.max()
    return float(m + np.log(np.exp(terms - m).sum()))


def _lse(values):
    if values.size == 0:
        return -np.inf
    m = values.max()
    if m == -np.inf:
        return -np.inf
    return float(m + np.log(np.exp(values - m).sum()))


def _ln_out_of_list(spec, chase_result, rel, code):
    """ln q: weight of the out-of-list codeword mass in the LLR ratio."""
    if spec.variant == "constant-beta":
        return max(np.log(spec.beta) if spec.beta > 0 else -np.inf, _LN_Q_FLOOR), None
    if spec.variant == "testwords-only":
        ln_pv = prob_testword_set(rel, chase_result.lrp)
    elif spec.variant == "balls-testwords":
        ln_pv = prob_covered_testword_balls(rel, chase_result.lrp, spec.r)
    else:
        ln_pv = prob_covered_list_balls(
            chase_result.candidates, chase_result.cand_logp, rel, spec.r, code.d_min
        )
    ln_pv = min(ln_pv, 0.0)
    with np.errstate(divide="ignore"):
        ln_1m = np.log(-np.expm1(ln_pv)) if ln_pv < 0 else -np.inf
    ln_q = (code.k - code.n) * LN2 + ln_1m
    return max(ln_q, _LN_Q_FLOOR), float(np.exp(ln_pv))


def socs_llr(chase_result, rel, spec, code):
    """Covered-space a-posteriori LLR for one component vector.

    Per position: L_i = ln[P(L_i^0|y) + q P(0|y_i)] - ln[P(L_i^1|y) + q P(1|y_i)]
    with q = 2^(k-n) (1 - P(V|y)) or q = beta for the constant variant.
    """
    n = code.n
    llr_in = rel.llr
    if len(chase_result.candidates) == 0:
        return SoftOutput(
            l_app=llr_in.copy(),
            l_ext=np.zeros(n),
            p_covered=None,
            competitors_found=np.zeros(n, dtype=bool),
            empty_list=True,
        )

    ln_q, p_cov = _ln_out_of_list(spec, chase_result, rel, code)
    bits = np.stack(chase_result.candidates)           # (C, n)
    logp = chase_result.cand_logp
    ln_p0 = -np.logaddexp(0.0, -llr_in)                # ln P(bit 0 | y_i)
    ln_p1 = -np.logaddexp(0.0, llr_in)

    l_app = np.empty(n)
    comp = np.empty(n, dtype=bool)
    for i in range(n):
        m0 = _lse(logp[bits[:, i] == 0])
        m1 = _lse(logp[bits[:, i] == 1])
        comp[i] = np.isfinite(m0) and np.isfinite(m1)
        num = np.logaddexp(m0, ln_q + ln_p0[i])
        den = np.logaddexp(m1, ln_q + ln_p1[i])
        l_app[i] = num - den
    l_app = channel.clip_llr(l_app)
    return SoftOutput(l_app, l_app - llr_in, p_cov, comp)


def exact_app_llr(code, rel):
    """Optimal per-position LLR by full codebook enumeration (k <= 16)."""
    cb = codes.enumerate_codebook(code)
    logp = np.array([channel.log_vector_posterior(c, rel) for c in cb])
    l_app = np.empty(code.n)
    for i in range(code.n):
        m0 = _lse(logp[cb[:, i] == 0])
        m1 = _lse(logp[cb[:, i] == 1])
        l_app[i] = m0 - m1
    return channel.clip_llr(l_app)


def cp_extrinsic(chase_result, llr_in, alpha, beta):
    """Chase-Pyndiah soft output for one component vector.

    Metric: sum of |L_in| over disagreements with the hard decision.  Where a
    competitor exists, the position LLR is the metric difference between the
    decision codeword and the best competitor; otherwise the extrinsic is
    beta * (1 - 2 d_i).  The returned l_ext is already scaled by alpha.
    """
    llr_in = channel.clip_llr(np.asarray(llr_in, dtype=np.float64))
    n = len(llr_in)
    if len(chase_result.candidates) == 0:
        return SoftOutput(
            l_app=llr_in.copy(),
            l_ext=np.zeros(n),
            p_covered=None,
            competitors_found=np.zeros(n, dtype=bool),
            empty_list=True,
        )
    abs_llr = np.abs(llr_in)
    hard = chase_result.hard
    metrics = np.array(
        [abs_llr[(c ^ hard) == 1].sum() for c in chase_result.candidates]
    )
    d_idx = int(metrics.argmin())
    d = chase_result.candidates[d_idx]
    m_d = metrics[d_idx]
    sign_d = 1.0 - 2.0 * d.astype(np.float64)

    l_app = np.empty(n)
    comp = np.zeros(n, dtype=bool)
    for i in range(n):
        rivals = [m for c, m in zip(chase_result.candidates, metrics) if c[i] != d[i]]
        if rivals:
            comp[i] = True
            l_app[i] = sign_d[i] * (min(rivals) - m_d)
        else:
            l_app[i] = llr_in[i] + beta * sign_d[i]
    l_app = channel.clip_llr(l_app)
    raw_ext = l_app - llr_in
    return SoftOutput(l_app, alpha * raw_ext, None, comp)


# ---------------------------------------------------------------------------
# Batch kernels (consume chase.ChaseBatch; all rows of an array at once)
# ---------------------------------------------------------------------------

def _batch_masses(cb, llr_in):
    """Per-position candidate masses relative to the best candidate.

    Returns (mass0, mass1, base, ref, empty): mass_s[b, i] is
    sum over candidates with bit s at i of exp(ref - w), where w is the
    candidate metric; true mass = exp(base - ref) * mass_s.
    """
    abs_llr = np.abs(llr_in)
    base = -np.logaddexp(0.0, -abs_llr).sum(axis=1)
    empty = ~cb.valid.any(axis=1)
    ref = np.where(empty, 0.0, np.min(cb.weight, axis=1))
    with np.errstate(invalid="ignore"):
        p_rel = np.exp(ref[:, None] - cb.weight)
    p_rel[~cb.valid] = 0.0
    diffs_f = cb.diffs.astype(np.float64)
    mass_flip = np.matmul(p_rel[:, None, :], diffs_f)[:, 0, :]
    mass_agree = np.maximum(p_rel.sum(axis=1)[:, None] - mass_flip, 0.0)
    hard0 = cb.hard == 0
    mass0 = np.where(hard0, mass_agree, mass_flip)
    mass1 = np.where(hard0, mass_flip, mass_agree)
    return mass0, mass1, mass_flip, mass_agree, base, ref, empty, p_rel, diffs_f


def _batch_ln_pv(cb, llr_in, spec, base, ref, p_rel, diffs_f):
    """ln P(V | y) per row for the covered-space variants."""
    abs_llr = np.abs(llr_in)
    if spec.variant in ("testwords-only", "balls-testwords"):
        lg = -np.logaddexp(0.0, -abs_llr)
        lg_in_i = np.take_along_axis(lg, cb.lrp, axis=1).sum(axis=1)
        ln_pt = base - lg_in_i
        r = spec.r if spec.variant == "balls-testwords" else 0
        if r == 0:
            return ln_pt
        e1 = np.exp(-abs_llr)
        s1 = e1.sum(axis=1) - np.take_along_axis(e1, cb.lrp, axis=1).sum(axis=1)
        if r == 1:
            return np.log1p(s1) + ln_pt
        e2 = np.exp(-2.0 * abs_llr)
        s2 = e2.sum(axis=1) - np.take_along_axis(e2, cb.lrp, axis=1).sum(axis=1)
        return np.log(1.0 + s1 + 0.5 * (s1 * s1 - s2)) + ln_pt

    # balls-list: logsumexp over candidates of ln b_r(c) + ln P(c|y)
    r = spec.r
    ln_b = np.zeros_like(p_rel)
    if r >= 1:
        e1m = np.exp(-abs_llr)
        d1 = np.exp(abs_llr) - e1m
        s1_all = e1m.sum(axis=1)
        s1 = s1_all[:, None] + np.matmul(diffs_f, d1[:, :, None])[:, :, 0]
        if r == 1:
            ln_b = np.log1p(s1)
        else:
            e2m = np.exp(-2.0 * abs_llr)
            d2 = np.exp(2.0 * abs_llr) - e2m
            s2 = e2m.sum(axis=1)[:, None] + np.matmul(diffs_f, d2[:, :, None])[:, :, 0]
            ln_b = np.log(1.0 + s1 + 0.5 * (s1 * s1 - s2))
    with np.errstate(divide="ignore"):
        terms = np.where(cb.valid, ln_b - cb.weight + ref[:, None], -np.inf)
    m = terms.max(axis=1)
    m_safe = np.where(np.isfinite(m), m, 0.0)
    lse = m_safe + np.log(np.exp(terms - m_safe[:, None]).sum(axis=1))
    return np.where(np.isfinite(m), lse + base - ref, -np.inf)


def socs_llr_batch(code, llr_in, cb, spec):
    """Batch covered-space LLR; returns (l_app, competitors, empty, ln_pv)."""
    llr_in = channel.clip_llr(np.asarray(llr_in, dtype=np.float64))
    mass0, mass1, mass_flip, mass_agree, base, ref, empty, p_rel, diffs_f = (
        _batch_masses(cb, llr_in)
    )
    if spec.variant == "balls-list" and spec.r > (code.d_min - 1) // 2:
        raise ValueError("list-ball radius too large for d_min: balls would overlap")
    if spec.variant == "constant-beta":
        ln_q = np.full(len(base), max(
            np.log(spec.beta) if spec.beta > 0 else -np.inf, _LN_Q_FLOOR))
        ln_pv = None
    else:
        ln_pv = np.minimum(
            _batch_ln_pv(cb, llr_in, spec, base, ref, p_rel, diffs_f), 0.0
        )
        with np.errstate(divide="ignore"):
            ln_1m = np.where(ln_pv < 0, np.log(-np.expm1(ln_pv)), -np.inf)
        ln_q = np.maximum((code.k - code.n) * LN2 + ln_1m, _LN_Q_FLOOR)

    ln_q_rel = (ln_q + ref - base)[:, None]
    ln_p0 = -np.logaddexp(0.0, -llr_in)
    ln_p1 = -np.logaddexp(0.0, llr_in)
    with np.errstate(divide="ignore"):
        l_app = np.logaddexp(np.log(mass0), ln_q_rel + ln_p0) - np.logaddexp(
            np.log(mass1), ln_q_rel + ln_p1
        )
    l_app = channel.clip_llr(l_app)
    l_app[empty] = llr_in[empty]
    competitors = (mass_flip > 0) & (mass_agree > 0)
    competitors[empty] = False
    return l_app, competitors, empty, ln_pv


def cp_llr_batch(llr_in, cb, beta):
    """Batch Chase-Pyndiah soft output (unscaled l_app); see cp_extrinsic."""
    llr_in = channel.clip_llr(np.asarray(llr_in, dtype=np.float64))
    b, n = llr_in.shape
    empty = ~cb.valid.any(axis=1)
    d_idx = np.argmin(cb.weight, axis=1)
    rows = np.arange(b)
    d_diff = cb.diffs[rows, d_idx]                    # (B, n)
    m_d = np.where(empty, 0.0, cb.weight[rows, d_idx])
    d_bits = cb.hard ^ d_diff
    sign_d = 1.0 - 2.0 * d_bits.astype(np.float64)

    rival_mask = (cb.diffs ^ d_diff[:, None, :]).astype(bool) & cb.valid[:, :, None]
    rival_w = np.where(rival_mask, cb.weight[:, :, None], np.inf).min(axis=1)
    has_comp = np.isfinite(rival_w)
    l_app = np.where(
        has_comp,
        sign_d * (np.where(has_comp, rival_w, 0.0) - m_d[:, None]),
        llr_in + beta * sign_d,
    )
    l_app = channel.clip_llr(l_app)
    l_app[empty] = llr_in[empty]
    has_comp[empty] = False
    return l_app, has_comp, empty


def exact_app_llr_batch(code, llr_in):
    """Batch exact-APP oracle via codebook enumeration (small codes only)."""
    llr_in = channel.clip_llr(np.asarray(llr_in, dtype=np.float64))
    cb = codes.enumerate_codebook(code).astype(np.float64)    # (M, n)
    abs_llr = np.abs(llr_in)
    hard = (llr_in < 0).astype(np.float64)
    # w[b, m] = sum_i |L_i| where codeword m differs from the hard decision
    diff_w = abs_llr @ cb.T + (abs_llr * hard).sum(axis=1)[:, None] \
        - 2.0 * (abs_llr * hard) @ cb.T
    ref = diff_w.min(axis=1, keepdims=True)
    p_rel = np.exp(ref - diff_w)
    mass1 = p_rel @ cb                                         # (B, n)
    mass0 = np.maximum(p_rel.sum(axis=1)[:, None] - mass1, 0.0)
    with np.errstate(divide="ignore"):
        l_app = np.log(mass0) - np.log(mass1)
    return channel.clip_llr(l_app)
