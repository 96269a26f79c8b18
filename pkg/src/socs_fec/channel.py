"""BPSK/AWGN channel model, LLR computation, and log-domain vector posteriors."""

from dataclasses import dataclass

import numpy as np

# Clip limit for all ingested LLRs (natural log); keeps exp()/expm1() finite.
LLR_CLIP = 30.0


@dataclass(frozen=True)
class ChannelModel:
    sigma2: float
    rate: float
    ebn0_db: float


def ebn0_to_sigma(ebn0_db, rate):
    """Noise variance for unit-energy BPSK: sigma^2 = 1 / (2 R 10^(EbN0/10))."""
    if not 0.0 < rate <= 1.0:
        raise ValueError(f"rate must be in (0, 1], got {rate}")
    sigma2 = 1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0))
    return ChannelModel(sigma2=sigma2, rate=rate, ebn0_db=ebn0_db)


def transmit(codeword, model, rng):
    """BPSK modulate (0 -> +1, 1 -> -1) and add N(0, sigma^2) noise."""
    x = 1.0 - 2.0 * np.asarray(codeword, dtype=np.float64)
    return x + rng.normal(0.0, np.sqrt(model.sigma2), size=x.shape)


def clip_llr(llr):
    return np.clip(llr, -LLR_CLIP, LLR_CLIP)


def channel_llr(y, model):
    """Channel LLR (2/sigma^2) y, clipped to +-LLR_CLIP."""
    if model.sigma2 <= 0:
        raise ValueError("sigma2 must be positive")
    return clip_llr((2.0 / model.sigma2) * np.asarray(y, dtype=np.float64))


@dataclass
class ReliabilityVector:
    """Hard decisions and per-position correctness probabilities gamma."""

    llr: np.ndarray
    hard: np.ndarray             # 0 where llr >= 0
    gamma: np.ndarray            # P(hard decision correct) in [0.5, 1)
    log_gamma: np.ndarray
    log_one_minus_gamma: np.ndarray


def reliability(llr):
    llr = clip_llr(np.asarray(llr, dtype=np.float64))
    a = np.abs(llr)
    hard = (llr < 0).astype(np.uint8)
    log_gamma = -np.logaddexp(0.0, -a)
    log_1mg = -np.logaddexp(0.0, a)
    return ReliabilityVector(llr, hard, np.exp(log_gamma), log_gamma, log_1mg)


def log_vector_posterior(v, rel):
    """ln P(v | y) = sum ln(gamma) over agreements + sum ln(1-gamma) elsewhere."""
    v = np.asarray(v, dtype=np.uint8)
    if v.shape[-1] != rel.hard.shape[-1]:
        raise ValueError("vector/reliability length mismatch")
    diff = v ^ rel.hard
    return np.where(diff == 0, rel.log_gamma, rel.log_one_minus_gamma).sum(axis=-1)
