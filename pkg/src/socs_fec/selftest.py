"""Small-code oracle checks, runnable from the CLI.

Each check validates a fast path against brute-force enumeration on codes
small enough to enumerate exhaustively.
"""

import numpy as np

from . import channel, chase, codes, softout


def _random_rel(rng, n, scale=2.0):
    return channel.reliability(rng.normal(0.0, scale, size=n))


def check_bdd_vs_bruteforce(trials=300, seed=1):
    """(8,4,4) BDD agrees with nearest-codeword-within-t search."""
    rng = np.random.default_rng(seed)
    code = codes.build_extended_hamming(3)
    cb = codes.enumerate_codebook(code)
    for _ in range(trials):
        w = rng.integers(0, 2, size=code.n, dtype=np.uint8)
        dist = (cb ^ w).sum(axis=1)
        best = dist.min()
        got = codes.bdd_decode(code, w)
        if best <= code.t:
            ref = cb[int(dist.argmin())]
            if got is None or np.any(got != ref):
                return False
        elif got is not None:
            return False
    return True


def check_chase_list_oracle(trials=200, p=3, seed=2):
    """Chase list equals {c : some testword within distance t} on (8,4,4)."""
    rng = np.random.default_rng(seed)
    code = codes.build_extended_hamming(3)
    cb = codes.enumerate_codebook(code)
    cfg = chase.ChaseConfig(p)
    for _ in range(trials):
        llr = rng.normal(0.0, 2.0, size=code.n)
        res = chase.run_chase(code, llr, cfg)
        testwords = []
        for mask in range(1 << p):
            tw = res.hard.copy()
            for j in range(p):
                if (mask >> j) & 1:
                    tw[res.lrp[j]] ^= 1
            testwords.append(tw)
        testwords = np.stack(testwords)
        ref = {
            bytes(c)
            for c in cb
            if ((testwords ^ c).sum(axis=1) <= code.t).any()
        }
        got = {bytes(c) for c in res.candidates}
        if got != ref:
            return False
    return True


def check_ball_factor_oracle(trials=50, seed=3):
    """b_r * P(v|y) equals the exhaustive ball mass on random small inputs."""
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        n = int(rng.integers(3, 10))
        r = int(rng.integers(1, 3))
        rel = _random_rel(rng, n)
        v = rng.integers(0, 2, size=n, dtype=np.uint8)
        lhs = softout.ball_factor(v, rel, r) * np.exp(
            channel.log_vector_posterior(v, rel)
        )
        allv = ((np.arange(1 << n)[:, None] >> np.arange(n)) & 1).astype(np.uint8)
        in_ball = (allv ^ v).sum(axis=1) <= r
        rhs = np.exp(
            np.array([channel.log_vector_posterior(u, rel) for u in allv[in_ball]])
        ).sum()
        if abs(lhs - rhs) > 1e-10 * rhs:
            return False
    return True


def check_socs_reduces_to_exact_app(trials=100, seed=4):
    """Full-codebook list with a fully covered space reproduces exact APP."""
    rng = np.random.default_rng(seed)
    code = codes.build_extended_hamming(3)
    cb = codes.enumerate_codebook(code)
    spec = softout.CoveredSpaceSpec("constant-beta", beta=0.0)
    for _ in range(trials):
        rel = _random_rel(rng, code.n)
        logp = np.array([channel.log_vector_posterior(c, rel) for c in cb])
        res = chase.ChaseResult(
            lrp=np.arange(0), hard=rel.hard, candidates=list(cb),
            cand_logp=logp, origin_count=len(cb),
        )
        got = softout.socs_llr(res, rel, spec, code).l_app
        ref = softout.exact_app_llr(code, rel)
        if np.max(np.abs(got - ref)) > 1e-9:
            return False
    return True


def check_covered_space_validity(trials=200, p=3, seed=5):
    """B_{d-1}(L), B_t(T), and their union intersect the codebook in L."""
    rng = np.random.default_rng(seed)
    code = codes.build_extended_hamming(3)
    cb = codes.enumerate_codebook(code)
    cfg = chase.ChaseConfig(p)
    for _ in range(trials):
        llr = rng.normal(0.0, 2.0, size=code.n)
        res = chase.run_chase(code, llr, cfg)
        if not res.candidates:
            continue
        lset = {bytes(c) for c in res.candidates}
        cand = np.stack(res.candidates)
        testwords = []
        for mask in range(1 << p):
            tw = res.hard.copy()
            for j in range(p):
                if (mask >> j) & 1:
                    tw[res.lrp[j]] ^= 1
            testwords.append(tw)
        tws = np.stack(testwords)
        in_list_balls = {
            bytes(c) for c in cb
            if ((cand ^ c).sum(axis=1) <= code.d_min - 1).any()
        }
        in_tw_balls = {
            bytes(c) for c in cb if ((tws ^ c).sum(axis=1) <= code.t).any()
        }
        if in_list_balls != lset or in_tw_balls != lset:
            return False
        if (in_list_balls | in_tw_balls) != lset:
            return False
    return True


ALL_CHECKS = [
    ("bdd vs brute force", check_bdd_vs_bruteforce),
    ("chase list oracle", check_chase_list_oracle),
    ("ball factor oracle", check_ball_factor_oracle),
    ("socs reduces to exact app", check_socs_reduces_to_exact_app),
    ("covered space validity", check_covered_space_validity),
]


def run_selftest(verbose=True):
    ok = True
    for name, fn in ALL_CHECKS:
        passed = fn()
        ok &= passed
        if verbose:
            print(f"{'PASS' if passed else 'FAIL'}  {name}")
    return ok
