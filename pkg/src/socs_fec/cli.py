"""Command-line interface: BER sweeps, schedule calibration, single-frame
decoding, and the small-code self-test suite."""

import argparse
import sys

import numpy as np

from . import calibrate, codes, selftest, simulate, tpd


def _parse_ebn0(spec):
    try:
        start, step, stop = (float(x) for x in spec.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("expected start:step:stop") from None
    return start, step, stop


def _add_common(p):
    p.add_argument("--code", default="eh256",
                   choices=["eh256", "ebch256", "eh8", "custom"])
    p.add_argument("--decoder", default="socs-ball-testwords",
                   choices=list(tpd.DECODER_KINDS))
    p.add_argument("--radius", type=int, default=None)
    p.add_argument("--iters", type=int, default=4)
    p.add_argument("--p", type=int, default=5, dest="chase_p")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--params", default=None, help="schedule JSON file")
    p.add_argument("--custom-m", type=int, default=3)
    p.add_argument("--custom-t", type=int, default=1)


def _sim_config(args, **extra):
    schedule = None
    if args.params:
        _, schedule = tpd.load_schedule_file(args.params)
    return simulate.SimConfig(
        code=args.code, decoder=args.decoder, radius=args.radius,
        iterations=args.iters, chase_p=args.chase_p, seed=args.seed,
        schedule=schedule, custom_m=args.custom_m, custom_t=args.custom_t,
        **extra,
    )


def _cmd_simulate(args):
    start, step, stop = args.ebn0
    cfg = _sim_config(
        args,
        ebn0_start=start, ebn0_step=step, ebn0_stop=stop,
        min_frame_errors=args.min_frame_errors, max_frames=args.max_frames,
        workers=args.workers, out=args.out,
    )

    def progress(rec):
        print(f"{rec.ebn0_db:.3f} dB  frames={rec.frames}  "
              f"ber={rec.ber:.4e}  fer={rec.fer:.4e}  "
              f"({rec.wall_seconds:.1f}s)", flush=True)

    simulate.run_sweep(cfg, progress=progress)
    return 0


def _cmd_calibrate(args):
    cfg = _sim_config(args)
    grid = calibrate.GridSpec(
        frames_per_point=args.frames_per_point,
        design_ebn0_db=args.design_ebn0,
    )
    if args.alpha_grid:
        grid.alpha_grid = [float(x) for x in args.alpha_grid.split(",")]
    if args.beta_grid:
        grid.beta_grid = [float(x) for x in args.beta_grid.split(",")]
    sched, audit = calibrate.optimize_schedule(cfg, grid, count=args.half_iterations)
    for h, a, b, bmi in audit:
        print(f"h={h + 1}  alpha={a:.3g}  beta={'-' if b is None else f'{b:.3g}'}"
              f"  bmi={bmi:.6f}")
    print("optimized alpha:", sched.alpha)
    if sched.beta is not None:
        print("optimized beta: ", sched.beta)
    if args.out:
        import json
        with open(args.out, "w") as f:
            json.dump({
                "decoder": args.decoder,
                "design_ebn0_db": args.design_ebn0,
                "alpha": sched.alpha,
                "beta": sched.beta,
            }, f, indent=2)
        print(f"schedule written to {args.out}")
    return 0


def _cmd_decode(args):
    cfg = _sim_config(args)
    code = simulate.build_code(cfg)
    params = codes.ProductCodeParams(code)
    l_ch = np.loadtxt(args.llr_file).reshape(code.n, code.n)
    tcfg = simulate.resolve_tpd_config(cfg, code)
    tcfg.collect_trace = True
    result = tpd.tpd_decode(params, l_ch, tcfg)
    for h, l_app in enumerate(result.l_app_trace):
        print(f"# half iteration {h + 1} L_app")
        np.savetxt(sys.stdout, l_app, fmt="%.6g")
    print("# hard decisions")
    np.savetxt(sys.stdout, result.hard, fmt="%d")
    return 0


def _cmd_selftest(args):
    return 0 if selftest.run_selftest() else 1


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="socs-fec",
        description="Product-code decoding with covered-space soft output",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="Monte Carlo BER sweep")
    _add_common(p)
    p.add_argument("--ebn0", type=_parse_ebn0, default=(4.0, 0.1, 4.5),
                   help="start:step:stop in dB")
    p.add_argument("--min-frame-errors", type=int, default=100)
    p.add_argument("--max-frames", type=int, default=10_000_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None, help="CSV output path")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("calibrate", help="grid-search the half-iteration schedule")
    _add_common(p)
    p.add_argument("--design-ebn0", type=float, default=4.30)
    p.add_argument("--frames-per-point", type=int, default=200)
    p.add_argument("--alpha-grid", default=None, help="comma-separated values")
    p.add_argument("--beta-grid", default=None, help="comma-separated values")
    p.add_argument("--half-iterations", type=int, default=None)
    p.add_argument("--out", default=None, help="schedule JSON output path")
    p.set_defaults(func=_cmd_calibrate)

    p = sub.add_parser("decode", help="decode one frame of channel LLRs")
    _add_common(p)
    p.add_argument("llr_file", help="text file with n*n channel LLRs")
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("selftest", help="run the small-code oracle checks")
    p.set_defaults(func=_cmd_selftest)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
