"""Bitwise-mutual-information estimation and greedy per-half-iteration
grid search for the extrinsic scaling parameters."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import channel, codes, simulate, tpd

LN2 = np.log(2.0)


@dataclass(frozen=True)
class BmiSample:
    x: float     # transmitted antipodal symbol, +1 or -1
    l: float     # a-posteriori LLR at that position


def bmi_from_arrays(x, llr):
    """1 - E[log2(1 + exp(-x l))], evaluated stably."""
    x = np.asarray(x, dtype=np.float64)
    llr = np.asarray(llr, dtype=np.float64)
    if x.size == 0:
        raise ValueError("BMI needs at least one sample")
    return float(1.0 - np.mean(np.logaddexp(0.0, -x * llr)) / LN2)


def estimate_bmi(samples):
    samples = list(samples)
    if not samples:
        raise ValueError("BMI needs at least one sample")
    x = np.array([s.x for s in samples])
    llr = np.array([s.l for s in samples])
    return bmi_from_arrays(x, llr)


@dataclass
class GridSpec:
    alpha_grid: list = field(
        default_factory=lambda: list(np.round(np.arange(0.10, 1.601, 0.02), 3))
    )
    beta_grid: Optional[list] = field(
        default_factory=lambda: list(np.logspace(-10, 1, 45))
    )
    frames_per_point: int = 200
    design_ebn0_db: float = 4.30

    def __post_init__(self):
        if not self.alpha_grid or self.frames_per_point < 1:
            raise ValueError("grids must be non-empty and frames_per_point >= 1")


def _uses_beta(kind):
    return kind in ("cp-classic", "cp-optimized", "socs-beta")


def _point_bmi(cfg, code, params, alphas, betas, h, grid):
    """BMI of the combined LLR leaving half iteration h at one grid point.

    The candidate alpha_h only scales the extrinsic passed downstream, so the
    objective is the BMI of l_ch + alpha_h * (l_app - l_in) -- the a-priori
    input the next half iteration (or the final hard decision) will consume.
    beta_h additionally shapes l_app itself for the constant-reliability
    decoders.
    """
    full = 2 * cfg.iterations - 1
    pad = full - len(alphas)
    sched = tpd.HalfIterationSchedule(
        list(alphas) + [1.0] * pad,
        (list(betas) + [betas[-1]] * pad) if betas is not None else None,
    )
    tcfg = tpd.TpdConfig(
        kind=cfg.decoder, iterations=cfg.iterations, chase_p=cfg.chase_p,
        schedule=sched, radius=tcfg_radius(cfg),
    )
    model = channel.ebn0_to_sigma(grid.design_ebn0_db, params.rate)
    scale = model.sigma2 / 2.0 if cfg.decoder in tpd.ANALOG_DOMAIN_KINDS else 1.0
    total = 0.0
    count = 0
    for frame in range(grid.frames_per_point):
        # common random numbers across the grid points of one half iteration:
        # the BMI comparison between candidates is paired, which makes the
        # argmax far less sensitive to the frame budget
        rng = np.random.default_rng(
            np.random.SeedSequence(entropy=(cfg.seed, 0xB21, h, frame))
        )
        msg = rng.integers(0, 2, size=(code.k, code.k), dtype=np.uint8)
        cw = simulate.product_encode(code, msg)
        y = channel.transmit(cw, model, rng)
        l_ch = channel.channel_llr(y, model) * scale
        e_row, e_col, *_ = tpd.run_soft_half_iterations(params, l_ch, tcfg, h + 1)
        combined = channel.clip_llr(l_ch + (e_row if h % 2 == 0 else e_col))
        x = 1.0 - 2.0 * cw.astype(np.float64)
        total += np.logaddexp(0.0, -x * combined).sum()
        count += combined.size
    return 1.0 - total / count / LN2


def tcfg_radius(cfg):
    return cfg.radius if cfg.radius is not None else tpd.default_radius(
        cfg.code, cfg.decoder
    )


def optimize_schedule(cfg, grid, count=None):
    """Greedy sequential search: freeze earlier half iterations at their
    optima, sweep (alpha[, beta]) for the current one, maximize BMI.

    Returns (HalfIterationSchedule, audit) where audit rows are
    (half_iteration, alpha, beta, bmi).
    """
    code = simulate.build_code(cfg)
    params = codes.ProductCodeParams(code)
    if count is None:
        count = 2 * cfg.iterations - 1
    use_beta = _uses_beta(cfg.decoder)
    beta_grid = grid.beta_grid if use_beta else [None]
    if use_beta and not beta_grid:
        raise ValueError(f"{cfg.decoder} needs a beta grid")

    alphas = []
    betas = [] if use_beta else None
    audit = []
    for h in range(count):
        best = None
        # ascending (alpha, beta) order + strict improvement = ties resolve
        # toward the smaller alpha, then the smaller beta
        for a in sorted(grid.alpha_grid):
            for b in sorted(beta_grid, key=lambda v: (v is None, v)):
                cand_alphas = alphas + [a]
                cand_betas = betas + [b] if use_beta else None
                bmi = _point_bmi(
                    cfg, code, params, cand_alphas, cand_betas, h, grid
                )
                audit.append((h, a, b, bmi))
                if best is None or bmi > best[0]:
                    best = (bmi, a, b)
        alphas.append(best[1])
        if use_beta:
            betas.append(best[2])
    return tpd.HalfIterationSchedule(alphas, betas), audit
