import numpy as np

from socs_fec import channel


def rel_from_gamma(gammas, hard=None):
    """Reliability vector with the given correctness probabilities.

    By default the hard decision is all-zero (positive LLRs); pass `hard`
    to flip signs.
    """
    g = np.asarray(gammas, dtype=np.float64)
    llr = np.log(g / (1.0 - g))
    if hard is not None:
        llr = np.where(np.asarray(hard) == 1, -llr, llr)
    return channel.reliability(llr)


def enumerate_vectors(n):
    return ((np.arange(1 << n)[:, None] >> np.arange(n)) & 1).astype(np.uint8)
