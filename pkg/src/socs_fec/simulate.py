"""Monte Carlo BER/FER harness: Eb/N0 sweeps, reproducible seeding, CSV output.

Per-frame random streams are derived from (master seed, Eb/N0 point, frame
index) only, so results are independent of worker count and scheduling.
Stopping is evaluated on cumulative counters at fixed-size chunk boundaries in
frame-index order, which keeps the consumed frame count deterministic too.
"""

import csv
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from typing import Optional

import numpy as np

from . import channel, codes, gf2, tpd

CSV_FIELDS = [
    "ebn0_db", "frames", "bit_errors", "frame_errors", "ber", "fer",
    "decoder", "code", "wall_seconds", "seed",
]

_CHUNK = 8  # frames per stopping-rule check; fixed so workers never matter


@dataclass
class SimConfig:
    code: str = "eh256"                    # eh256 | ebch256 | eh8 | custom
    decoder: str = "socs-ball-testwords"
    radius: Optional[int] = None
    iterations: int = 4
    chase_p: int = 5
    ebn0_start: float = 4.0
    ebn0_step: float = 0.1
    ebn0_stop: float = 4.5
    min_frame_errors: int = 100
    max_frames: int = 10_000_000
    seed: int = 0
    workers: int = 1
    schedule: Optional[tpd.HalfIterationSchedule] = None
    out: Optional[str] = None
    custom_m: int = 3
    custom_t: int = 1

    def __post_init__(self):
        if self.ebn0_start > self.ebn0_stop or self.ebn0_step <= 0:
            raise ValueError("require ebn0_start <= ebn0_stop and ebn0_step > 0")
        if self.min_frame_errors < 1 or self.max_frames < 1:
            raise ValueError("stopping thresholds must be >= 1")


@dataclass
class BerRecord:
    ebn0_db: float
    frames: int
    bit_errors: int
    frame_errors: int
    ber: float
    fer: float
    decoder: str
    code: str
    wall_seconds: float
    seed: int


def build_code(cfg):
    if cfg.code == "eh256":
        return codes.build_extended_hamming(8)
    if cfg.code == "ebch256":
        return codes.build_extended_bch(8, 2)
    if cfg.code == "eh8":
        return codes.build_extended_hamming(3)
    if cfg.code == "custom":
        if cfg.custom_t >= 2:
            return codes.build_extended_bch(cfg.custom_m, cfg.custom_t)
        return codes.build_extended_hamming(cfg.custom_m)
    raise ValueError(f"unknown code selector {cfg.code!r}")


def product_encode(code, message):
    """Encode a k x k message array: rows first, then columns."""
    message = gf2.mod2(message)
    if message.shape != (code.k, code.k):
        raise ValueError(f"message must be {code.k} x {code.k}")
    rows = gf2.matmul2(message, code.generator)            # (k, n)
    return gf2.matmul2(rows.T, code.generator).T           # (n, n)


def resolve_tpd_config(cfg, code):
    schedule = cfg.schedule
    if schedule is None:
        if cfg.decoder == "exact-app":
            schedule = tpd.HalfIterationSchedule([1.0] * (2 * cfg.iterations - 1))
        else:
            _, schedule = tpd.default_schedule(cfg.code, cfg.decoder)
    radius = cfg.radius
    if radius is None:
        radius = tpd.default_radius(cfg.code, cfg.decoder)
    return tpd.TpdConfig(
        kind=cfg.decoder,
        iterations=cfg.iterations,
        chase_p=cfg.chase_p,
        schedule=schedule,
        radius=radius,
    )


def _frame_rng(seed, point_key, frame_idx):
    return np.random.default_rng(
        np.random.SeedSequence(entropy=(seed, point_key, frame_idx))
    )


def _run_frames(code, params, tcfg, model, llr_scale, seed, point_key, lo, hi):
    bit_errors = 0
    frame_errors = 0
    k = code.k
    for idx in range(lo, hi):
        rng = _frame_rng(seed, point_key, idx)
        msg = rng.integers(0, 2, size=(k, k), dtype=np.uint8)
        cw = product_encode(code, msg)
        y = channel.transmit(cw, model, rng)
        l_ch = channel.channel_llr(y, model) * llr_scale
        result = tpd.tpd_decode(params, l_ch, tcfg)
        errs = int(np.count_nonzero(result.hard[:k, :k] != msg))
        bit_errors += errs
        frame_errors += errs > 0
    return bit_errors, frame_errors


_POOL_STATE = {}


def _pool_init(cfg_dict):
    cfg = SimConfig(**cfg_dict)
    code = build_code(cfg)
    _POOL_STATE["code"] = code
    _POOL_STATE["params"] = codes.ProductCodeParams(code)
    _POOL_STATE["tcfg"] = resolve_tpd_config(cfg, code)


def _pool_task(args):
    model, llr_scale, seed, point_key, lo, hi = args
    return _run_frames(
        _POOL_STATE["code"], _POOL_STATE["params"], _POOL_STATE["tcfg"],
        model, llr_scale, seed, point_key, lo, hi,
    )


def run_point(cfg, ebn0_db, code=None, pool=None):
    """Simulate one Eb/N0 point until the stopping rule triggers."""
    t0 = time.monotonic()
    if code is None:
        code = build_code(cfg)
    params = codes.ProductCodeParams(code)
    tcfg = resolve_tpd_config(cfg, code)
    model = channel.ebn0_to_sigma(ebn0_db, params.rate)
    llr_scale = model.sigma2 / 2.0 if cfg.decoder in tpd.ANALOG_DOMAIN_KINDS else 1.0
    point_key = int(round(ebn0_db * 1000))

    frames = 0
    bit_errors = 0
    frame_errors = 0
    while frames < cfg.max_frames and frame_errors < cfg.min_frame_errors:
        hi = min(frames + _CHUNK * max(cfg.workers, 1), cfg.max_frames)
        if pool is not None:
            chunks = [
                (model, llr_scale, cfg.seed, point_key, lo, min(lo + _CHUNK, hi))
                for lo in range(frames, hi, _CHUNK)
            ]
            for be, fe in pool.map(_pool_task, chunks):
                bit_errors += be
                frame_errors += fe
        else:
            be, fe = _run_frames(
                code, params, tcfg, model, llr_scale, cfg.seed, point_key, frames, hi
            )
            bit_errors += be
            frame_errors += fe
        frames = hi

    k2 = code.k ** 2
    return BerRecord(
        ebn0_db=ebn0_db,
        frames=frames,
        bit_errors=bit_errors,
        frame_errors=frame_errors,
        ber=bit_errors / (frames * k2),
        fer=frame_errors / frames,
        decoder=cfg.decoder,
        code=cfg.code,
        wall_seconds=time.monotonic() - t0,
        seed=cfg.seed,
    )


def _ebn0_grid(cfg):
    count = int(round((cfg.ebn0_stop - cfg.ebn0_start) / cfg.ebn0_step)) + 1
    return [round(cfg.ebn0_start + i * cfg.ebn0_step, 9) for i in range(count)]


def _completed_points(path, cfg):
    done = set()
    if path and os.path.exists(path):
        with open(path, newline="") as f:
            for row in csv.DictReader(f):
                if row.get("decoder") == cfg.decoder and row.get("code") == cfg.code:
                    done.add(int(round(float(row["ebn0_db"]) * 1000)))
    return done


def run_sweep(cfg, progress=None):
    """One BerRecord per Eb/N0 grid point, appended incrementally to CSV."""
    out = cfg.out
    writer = None
    f = None
    if out:
        new_file = not os.path.exists(out)
        try:
            f = open(out, "a", newline="")
        except OSError as exc:
            raise IOError(f"cannot open output file {out!r}: {exc}") from exc
        writer = csv.writer(f)
        if new_file:
            writer.writerow(CSV_FIELDS)
            f.flush()
    done = _completed_points(out, cfg)

    code = build_code(cfg)
    pool = None
    if cfg.workers > 1:
        cfg_dict = {f.name: getattr(cfg, f.name) for f in fields(cfg)}
        pool = ProcessPoolExecutor(
            max_workers=cfg.workers, initializer=_pool_init, initargs=(cfg_dict,)
        )
    records = []
    try:
        for ebn0 in _ebn0_grid(cfg):
            if int(round(ebn0 * 1000)) in done:
                continue
            rec = run_point(cfg, ebn0, code=code, pool=pool)
            records.append(rec)
            if writer is not None:
                writer.writerow([
                    repr(rec.ebn0_db), rec.frames, rec.bit_errors,
                    rec.frame_errors, repr(rec.ber), repr(rec.fer),
                    rec.decoder, rec.code, repr(rec.wall_seconds), rec.seed,
                ])
                f.flush()
            if progress is not None:
                progress(rec)
    finally:
        if pool is not None:
            pool.shutdown()
        if f is not None:
            f.close()
    return records
