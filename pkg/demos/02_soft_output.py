"""Covered-space soft output on a small code, compared with exact APP.

The covered space V is a region of F_2^n whose intersection with the codebook
is exactly the Chase candidate list.  Out-of-list codeword mass is then
estimated as 2^(k-n) * (1 - P(V|y)), which turns the list into approximate
a-posteriori LLRs.  On the (8,4,4) code we can enumerate the codebook and
compare against the exact answer.

Run:  python demos/02_soft_output.py
"""

import numpy as np

from socs_fec import (
    ChaseConfig, CoveredSpaceSpec, build_extended_hamming, exact_app_llr,
    reliability, run_chase, socs_llr,
)


def bmi(l_app):
    """Bitwise mutual information against the all-zero transmission."""
    return 1.0 - np.mean(np.logaddexp(0.0, -np.concatenate(l_app))) / np.log(2)


rng = np.random.default_rng(1)
code = build_extended_hamming(3)

specs = [
    ("testwords only", CoveredSpaceSpec("testwords-only")),
    ("balls around testwords, r=1", CoveredSpaceSpec("balls-testwords", r=1)),
    ("balls around the list, r=1", CoveredSpaceSpec("balls-list", r=1)),
    ("constant beta = 0.05", CoveredSpaceSpec("constant-beta", beta=0.05)),
]

outs = {name: [] for name, _ in specs}
p_cov = {name: [] for name, _ in specs}
exact_outs = []
for _ in range(500):
    # the all-zero codeword through a noisy channel
    llr = rng.normal(2.5, 1.6, code.n)
    rel = reliability(llr)
    res = run_chase(code, llr, ChaseConfig(p=3))
    if not res.candidates:
        continue
    exact_outs.append(exact_app_llr(code, rel))
    for name, spec in specs:
        out = socs_llr(res, rel, spec, code)
        outs[name].append(out.l_app)
        if out.p_covered is not None:
            p_cov[name].append(out.p_covered)

print("soft-output quality over 500 noisy all-zero transmissions:")
print(f"  {'variant':32s} {'BMI':>8s}  {'mean P(V|y)':>11s}")
for name, _ in specs:
    pv = f"{np.mean(p_cov[name]):11.3f}" if p_cov[name] else " " * 11
    print(f"  {name:32s} {bmi(outs[name]):8.4f}  {pv}")
print(f"  {'exact APP (codebook enumeration)':32s} {bmi(exact_outs):8.4f}")

print("\nThe ball-augmented testword space explains the most posterior mass "
      "and its soft output carries nearly the exact-APP mutual information.")
