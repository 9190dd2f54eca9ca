"""Command-line front end.

Subcommands: ``gen`` (write an instance file), ``solve`` (one method on a
stored instance, prints a record row), ``sweep`` (config-driven study
with CSV and optional SVG output), ``normcheck`` (empirical constraint
norms against the size bound), ``rsp`` (range-space ratio estimate).

Exit codes: 0 success, 1 usage error, 2 numerical failure.
"""

import argparse
import sys

from .analysis import rsp_rho_estimate
from .baselines import SimplexError
from .harness import (
    CSV_FIELDS,
    METHODS,
    TrialRecord,
    parse_config,
    records_to_csv,
    run_method,
    run_sweep,
    sweep_spec_from_config,
    write_csv,
)
from .numerics import PowerIterationError, RngStream, mix64, spectral_norm
from .pd_solver import PDNumericalError
from .plots import PLOT_KINDS, emit_plot
from .problem import (
    expected_norm_bound,
    generate_instance,
    load_instance,
    save_instance,
    snr_db,
)

_NUMERICAL_ERRORS = (PowerIterationError, PDNumericalError, SimplexError)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="blindcs",
        description="Sign-only sparse recovery toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate and store an instance")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--sparsity", type=int, required=True)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--out", required=True)
    gen.add_argument("--normalize", choices=("auto", "exact", "bound"),
                     default="auto")

    solve = sub.add_parser("solve", help="run one method on a stored instance")
    solve.add_argument("--in", dest="path", required=True)
    solve.add_argument("--method", choices=METHODS, required=True)
    solve.add_argument("--biht-s", type=int, default=None,
                       help="sparsity input for BIHT (default: true sparsity)")
    solve.add_argument("--no-schedules", action="store_true",
                       help="freeze the blind solver's step/smoothing schedules")

    sweep = sub.add_parser("sweep", help="run a configured study")
    sweep.add_argument("--config", required=True)
    sweep.add_argument("--out", required=True)
    sweep.add_argument("--plot", default=None, help="also write an SVG figure")
    sweep.add_argument("--plot-kind", choices=PLOT_KINDS, default="snr_vs_axis")
    sweep.add_argument("--full-scale", action="store_true",
                       help="use the full study sizes (n=m=1000) for fixed dims")
    sweep.add_argument("--jobs", type=int, default=1)
    sweep.add_argument("--timing", action="store_true",
                       help="record wall times (makes the CSV run-dependent)")

    norm = sub.add_parser("normcheck",
                          help="empirical constraint-matrix norms vs the bound")
    norm.add_argument("--m", type=int, required=True)
    norm.add_argument("--n", type=int, required=True)
    norm.add_argument("--trials", type=int, required=True)
    norm.add_argument("--sparsity", type=int, default=10)
    norm.add_argument("--seed", type=int, default=0)

    rsp = sub.add_parser("rsp", help="range-space ratio estimate for an instance")
    rsp.add_argument("--in", dest="path", required=True)
    rsp.add_argument("--order", type=int, required=True)
    rsp.add_argument("--samples", type=int, required=True)
    rsp.add_argument("--seed", type=int, default=0)
    return parser


def _cmd_gen(args):
    instance = generate_instance(
        args.n, args.m, args.sparsity, args.seed, normalize=args.normalize
    )
    save_instance(instance, args.out)
    print(f"wrote instance m={args.m} n={args.n} s={args.sparsity} "
          f"seed={args.seed} to {args.out}")
    return 0


def _cmd_solve(args):
    instance = load_instance(args.path)
    result = run_method(
        args.method,
        instance,
        biht_sparsity=args.biht_s,
        schedules_enabled=not args.no_schedules,
    )
    snr = (
        snr_db(instance.x_true, result.x_est)
        if result.x_est.any()
        else None
    )
    record = TrialRecord(
        trial_id=0,
        method=args.method,
        m=instance.m,
        n=instance.n,
        s_true=instance.s_true,
        seed=instance.seed,
        snr_db=snr,
        violations=result.violations,
        support_size=result.support_size,
        iterations=result.iterations,
        wall_ms=result.wall_time * 1000.0,
    )
    print(records_to_csv([record], include_timing=True), end="")
    return 0


def _cmd_sweep(args):
    with open(args.config, encoding="utf-8") as handle:
        config = parse_config(handle.read())
    spec = sweep_spec_from_config(config, full_scale=args.full_scale)
    records = run_sweep(spec, jobs=args.jobs)
    write_csv(records, args.out, include_timing=args.timing)
    print(f"wrote {len(records)} records to {args.out}")
    if args.plot:
        emit_plot(records, args.plot_kind, path=args.plot)
        print(f"wrote {args.plot_kind} figure to {args.plot}")
    return 0


def _cmd_normcheck(args):
    bound = expected_norm_bound(args.m, args.n)
    norms = []
    for trial in range(args.trials):
        seed = mix64(args.seed, trial)
        instance = generate_instance(args.n, args.m, args.sparsity, seed,
                                     normalize="bound")
        norms.append(spectral_norm(instance.b * instance.b_scale))
    mean = sum(norms) / len(norms)
    exceed = sum(1 for v in norms if v > bound)
    print(f"m={args.m} n={args.n} trials={args.trials}")
    print(f"mean_norm={mean:.2f} min={min(norms):.2f} max={max(norms):.2f}")
    print(f"size_bound={bound:.2f} samples_above_bound={exceed}")
    return 0


def _cmd_rsp(args):
    instance = load_instance(args.path)
    estimate = rsp_rho_estimate(
        instance.b, args.order, args.samples, RngStream(args.seed)
    )
    print(f"order={estimate.order} samples={estimate.samples} "
          f"rho_hat={estimate.rho_hat:.6f} (lower bound)")
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "solve": _cmd_solve,
    "sweep": _cmd_sweep,
    "normcheck": _cmd_normcheck,
    "rsp": _cmd_rsp,
}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return _COMMANDS[args.command](args)
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
