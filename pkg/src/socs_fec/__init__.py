"""Forward error correction for two-dimensional product codes.

Implements Chase-II list decoding of extended Hamming and extended BCH
component codes, covered-space soft-output LLR estimation, Chase-Pyndiah
baselines, turbo product decoding, BMI-based schedule calibration, and a
reproducible Monte Carlo BER simulation harness over BPSK/AWGN.
"""

from .channel import ChannelModel, channel_llr, ebn0_to_sigma, reliability, transmit
from .chase import ChaseConfig, ChaseResult, least_reliable_positions, run_chase
from .codes import (
    ComponentCode,
    ProductCodeParams,
    bdd_decode,
    build_extended_bch,
    build_extended_hamming,
    build_repetition,
    encode,
    enumerate_codebook,
    syndrome,
)
from .softout import (
    CoveredSpaceSpec,
    SoftOutput,
    ball_factor,
    ball_summand,
    cp_extrinsic,
    exact_app_llr,
    prob_covered_list_balls,
    prob_covered_testword_balls,
    prob_testword_set,
    socs_llr,
)
from .tpd import HalfIterationSchedule, TpdConfig, default_schedule, tpd_decode
from .calibrate import BmiSample, GridSpec, bmi_from_arrays, estimate_bmi, optimize_schedule
from .simulate import BerRecord, SimConfig, product_encode, run_point, run_sweep

__version__ = "0.1.0"
