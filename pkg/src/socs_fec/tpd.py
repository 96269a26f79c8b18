"""Turbo product decoding: alternating row/column soft half iterations with
extrinsic exchange, followed by one hard-decision half iteration."""

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

import numpy as np

from . import channel, chase, codes, softout

DECODER_KINDS = (
    "cp-classic",
    "cp-optimized",
    "socs-beta",
    "socs-ball-list",
    "socs-ball-testwords",
    "socs-testwords",
    "exact-app",
)

# Decoders whose no-competitor reliability follows the analog-domain
# convention of classic Chase-Pyndiah decoding: the caller should feed
# sigma^2/2 * L_ch (i.e. the raw channel output) instead of channel LLRs.
ANALOG_DOMAIN_KINDS = ("cp-classic",)


@dataclass
class HalfIterationSchedule:
    alpha: list
    beta: Optional[list] = None

    @property
    def count(self):
        return len(self.alpha)

    def __post_init__(self):
        if self.beta is not None and len(self.beta) != len(self.alpha):
            raise ValueError("alpha and beta schedules must have equal length")


@dataclass
class TpdConfig:
    kind: str
    iterations: int = 4
    chase_p: int = 5
    schedule: HalfIterationSchedule = None
    radius: int = 0
    collect_trace: bool = False

    def __post_init__(self):
        if self.kind not in DECODER_KINDS:
            raise ValueError(f"unknown decoder kind {self.kind!r}")
        if self.schedule is None:
            raise ValueError("a half-iteration schedule is required")
        if self.schedule.count != 2 * self.iterations - 1:
            raise ValueError(
                f"{self.iterations} iterations need "
                f"{2 * self.iterations - 1} soft half iterations, "
                f"got schedule of length {self.schedule.count}"
            )
        if self.kind in ("cp-classic", "cp-optimized", "socs-beta"):
            if self.schedule.beta is None:
                raise ValueError(f"{self.kind} requires a beta schedule")


@dataclass
class TpdResult:
    hard: np.ndarray                      # (n, n) uint8
    l_app_trace: Optional[list] = None    # per soft half iteration, (n, n)
    empty_list_fraction: float = 0.0


def _covered_spec(kind, radius, beta_h):
    if kind == "socs-beta":
        return softout.CoveredSpaceSpec("constant-beta", beta=beta_h)
    if kind == "socs-ball-list":
        return softout.CoveredSpaceSpec("balls-list", r=radius)
    if kind == "socs-ball-testwords":
        return softout.CoveredSpaceSpec("balls-testwords", r=radius)
    if kind == "socs-testwords":
        return softout.CoveredSpaceSpec("testwords-only")
    raise ValueError(kind)


def _soft_half(code, l_in, cfg, h):
    """One soft half iteration over the rows of l_in; returns (l_app, empty)."""
    if cfg.kind == "exact-app":
        return softout.exact_app_llr_batch(code, l_in), np.zeros(len(l_in), bool)
    cb = chase.chase_batch(code, l_in, cfg.chase_p)
    if cfg.kind in ("cp-classic", "cp-optimized"):
        l_app, _, empty = softout.cp_llr_batch(l_in, cb, cfg.schedule.beta[h])
        return l_app, empty
    beta_h = cfg.schedule.beta[h] if cfg.schedule.beta is not None else 0.0
    spec = _covered_spec(cfg.kind, cfg.radius, beta_h)
    l_app, _, empty, _ = softout.socs_llr_batch(code, l_in, cb, spec)
    return l_app, empty


def _final_half(code, l_in, cfg):
    """Hard decisions: most likely codeword in each row's Chase list."""
    l_in = channel.clip_llr(l_in)
    if cfg.kind == "exact-app":
        cbk = codes.enumerate_codebook(code).astype(np.float64)
        abs_llr = np.abs(l_in)
        hard = (l_in < 0).astype(np.float64)
        w = abs_llr @ cbk.T + (abs_llr * hard).sum(axis=1)[:, None] \
            - 2.0 * (abs_llr * hard) @ cbk.T
        return cbk[np.argmin(w, axis=1)].astype(np.uint8), np.zeros(len(l_in), bool)
    cb = chase.chase_batch(code, l_in, cfg.chase_p)
    empty = ~cb.valid.any(axis=1)
    d_idx = np.argmin(cb.weight, axis=1)
    rows = np.arange(len(l_in))
    out = cb.hard ^ cb.diffs[rows, d_idx]
    out[empty] = cb.hard[empty]
    return out, empty


def run_soft_half_iterations(params, l_ch, cfg, n_halves, collect_trace=False):
    """Run the first n_halves soft half iterations of the turbo schedule.

    Returns (e_row, e_col, trace, empty_total, last_l_app) with trace entries
    and last_l_app oriented like the codeword array.
    """
    code = params.component
    n = code.n
    l_ch = np.asarray(l_ch, dtype=np.float64)
    if l_ch.shape != (n, n):
        raise ValueError(f"l_ch must have shape ({n}, {n})")
    e_row = np.zeros((n, n))
    e_col = np.zeros((n, n))
    trace = [] if collect_trace else None
    empty_total = 0
    last = None
    for h in range(n_halves):
        row_pass = h % 2 == 0
        raw_in = l_ch + e_col if row_pass else (l_ch + e_row).T
        l_in = channel.clip_llr(raw_in)
        l_app, empty = _soft_half(code, l_in, cfg, h)
        ext = cfg.schedule.alpha[h] * (l_app - l_in)
        if row_pass:
            e_row = ext
        else:
            e_col = ext.T
        empty_total += int(empty.sum())
        last = l_app if row_pass else l_app.T
        if trace is not None:
            trace.append(last)
    return e_row, e_col, trace, empty_total, last


def tpd_decode(params, l_ch, cfg):
    """Decode one n x n LLR array; returns hard decisions and optional trace.

    The input at half iteration h is L_ch plus the opposing dimension's
    extrinsic; the produced extrinsic is alpha_h * (L_app - L_in).  The last
    half iteration picks the most likely codeword of each component list.
    """
    code = params.component
    n = code.n
    halves = cfg.schedule.count
    e_row, e_col, trace, empty_total, _ = run_soft_half_iterations(
        params, l_ch, cfg, halves, collect_trace=cfg.collect_trace
    )
    l_ch = np.asarray(l_ch, dtype=np.float64)
    row_pass = halves % 2 == 0
    raw_in = l_ch + e_col if row_pass else (l_ch + e_row).T
    hard, empty = _final_half(code, channel.clip_llr(raw_in), cfg)
    if not row_pass:
        hard = hard.T
    empty_total += int(empty.sum())
    frac = empty_total / (n * (halves + 1))
    return TpdResult(hard=hard, l_app_trace=trace, empty_list_fraction=frac)


# ---------------------------------------------------------------------------
# Parameter schedules
# ---------------------------------------------------------------------------

def schedule_from_dict(obj):
    return HalfIterationSchedule(alpha=list(obj["alpha"]),
                                 beta=list(obj["beta"]) if obj.get("beta") else None)


def load_schedule_file(path):
    with open(path) as f:
        obj = json.load(f)
    return obj, schedule_from_dict(obj)


def default_schedule(code_label, kind):
    """Shipped per-half-iteration parameters (grid-search optima)."""
    name = f"{code_label}_{kind}.json"
    ref = resources.files("socs_fec") / "params" / name
    if not ref.is_file():
        raise ValueError(f"no shipped schedule for code={code_label} kind={kind}")
    obj = json.loads(ref.read_text())
    return obj, schedule_from_dict(obj)


def default_radius(code_label, kind):
    if kind in ("socs-ball-list", "socs-ball-testwords"):
        return {"eh256": 1, "ebch256": 2, "eh8": 1}.get(code_label, 1)
    return 0
