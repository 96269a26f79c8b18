"""Calibrating the extrinsic scaling by bitwise mutual information.

The extrinsic passed between half iterations is alpha * (L_app - L_in).
The grid search picks, per half iteration, the alpha maximizing the BMI of
the combined LLR the next half iteration will consume.  This demo sweeps
alpha for the first half iteration of the full-size Hamming product code and
prints the BMI curve; the shipped schedules were produced the same way.

Run:  python demos/05_calibration.py   (about a minute)
"""

import numpy as np

from socs_fec import GridSpec, SimConfig, optimize_schedule

cfg = SimConfig(code="eh256", decoder="socs-ball-testwords", seed=0)
grid = GridSpec(
    alpha_grid=list(np.round(np.arange(0.6, 1.21, 0.06), 2)),
    frames_per_point=6,
    design_ebn0_db=4.30,
)
sched, audit = optimize_schedule(cfg, grid, count=1)

print("BMI of the combined LLR after the first half iteration (4.30 dB):")
for _, alpha, _, bmi in audit:
    bar = "#" * int((bmi - 0.956) * 4000)
    print(f"  alpha={alpha:.2f}  bmi={bmi:.6f}  {bar}")
print(f"\nselected alpha_1 = {sched.alpha[0]}")
