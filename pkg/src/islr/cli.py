"""Command-line front end.

Subcommands: denoise, bench, audio, graph, prox, validate.
Exit codes: 0 success, 2 configuration rejected, 3 I/O error, 4 numeric failure.
"""

import argparse
import logging
import sys

from . import io
from .audio import denoise_speech
from .datagen import add_awgn, run_sweep
from .exceptions import (
    BadParams, ConfigRejected, DecompositionFailure, DegenerateLambda, InvalidPenalty,
    NonFinite, ParseError, UnsupportedFormat,
)
from .graph import denoise_adjacency
from .penalty import PenaltyParams, prox_scalar
from .solver import DEFAULT_EPS, DEFAULT_MAX_ITER, DEFAULT_MU, SolverConfig, solve, validate_config
from .tuning import DEFAULT_BETAS, config_from_betas, config_from_lambdas

log = logging.getLogger("islr")

EXIT_OK, EXIT_CONFIG, EXIT_IO, EXIT_NUMERIC = 0, 2, 3, 4


def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _fmt(v):
    return format(float(v), ".17g")


def _add_solver_flags(p):
    p.add_argument("--penalty", default="atan", choices=["rat", "atan", "log"],
                   type=str.lower)
    p.add_argument("--mu", type=float, default=DEFAULT_MU)
    p.add_argument("--eps", type=float, default=DEFAULT_EPS)
    p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    p.add_argument("--slr", action="store_true", help="convex baseline (a0 = a1 = 0)")


def _solver_kwargs(args):
    return dict(mu=args.mu, eps=args.eps, max_iter=args.max_iter)


def _method(args):
    return "slr" if args.slr else "islr"


def _check(cfg):
    outcome = validate_config(cfg)
    if not outcome:
        raise ConfigRejected(outcome)
    return cfg


def cmd_denoise(args):
    if args.c is not None and (args.a0 is not None or args.a1 is not None):
        raise ValueError("denoise: --c and --a0/--a1 are mutually exclusive")
    Y = io.read_matrix_csv(args.input)
    if args.a0 is not None or args.a1 is not None:
        if args.slr:
            raise ValueError("denoise: --slr cannot be combined with --a0/--a1")
        cfg = SolverConfig.build(args.lambda0, args.lambda1, args.a0 or 0.0, args.a1 or 0.0,
                                 penalty=args.penalty, **_solver_kwargs(args))
    else:
        c = 0.5 if args.c is None else args.c
        cfg = config_from_lambdas(args.lambda0, args.lambda1, c, args.penalty,
                                  _method(args), **_solver_kwargs(args))
    result = solve(Y, _check(cfg))
    io.write_matrix_csv(result.X, args.output)
    if args.history:
        result.write_history(args.history)
    log.info("iterations=%d converged=%s", result.iterations, result.converged)
    return EXIT_OK


def cmd_bench(args):
    if args.values is None:
        if args.sweep == "rank":
            values = [k for k in range(1, 101, 5) if k <= min(args.m, args.n)]
        else:
            values = [round(0.1 * i, 1) for i in range(1, 10)]
    else:
        values = args.values
    report = run_sweep(args.sweep, values, m=args.m, n=args.n, rank=args.rank,
                       sparsity=args.sparsity, sigma=args.sigma, trials=args.trials,
                       seed=args.seed, c=args.c, betas0=args.betas, betas1=args.betas,
                       penalty=args.penalty, jobs=args.jobs, **_solver_kwargs(args))
    report.write_csv(args.out)
    for row in report:
        print(f"{row.sweep_value:g}\t{row.method}\t{row.mean_rse:.6f}\t{row.std_rse:.6f}")
    return EXIT_OK


def cmd_audio(args):
    x, rate = io.read_wav(args.input)
    if args.add_noise:
        x = add_awgn(x, args.sigma, args.seed)
        if args.noisy_output:
            io.write_wav(x, rate, args.noisy_output)
    cfg = _check(config_from_betas(args.beta0, args.beta1, args.sigma, args.c, args.penalty,
                                   _method(args), **_solver_kwargs(args)))
    y = denoise_speech(x, cfg, mode=args.mode)
    io.write_wav(y, rate, args.output)
    return EXIT_OK


def cmd_graph(args):
    edges, A = io.read_edge_list(args.edges)
    betas = None
    if args.beta0 is not None or args.beta1 is not None:
        if args.beta0 is None or args.beta1 is None:
            raise ValueError("graph: give both --beta0 and --beta1, or neither to grid search")
        betas = (args.beta0, args.beta1)
    res = denoise_adjacency(A, args.fraction, args.sigma, args.seed, betas=betas,
                            betas0=args.betas, betas1=args.betas, c=args.c,
                            penalty=args.penalty, method=_method(args),
                            screen_iter=args.screen_iter or None, **_solver_kwargs(args))
    io.write_matrix_csv(res.estimate, args.output)
    if args.noisy_output:
        io.write_matrix_csv(res.noisy, args.noisy_output)
    if args.report and res.grid is not None:
        res.grid.write_csv(args.report)
    print(f"nodes\t{len(edges.index)}")
    print(f"beta0\t{_fmt(res.betas[0])}\nbeta1\t{_fmt(res.betas[1])}")
    print(f"rse_noisy\t{res.rse_noisy:.6f}\nrse_estimate\t{res.rse_estimate:.6f}")
    return EXIT_OK


def cmd_prox(args):
    p = PenaltyParams(args.penalty, args.a)
    for v in args.values:
        print(f"{_fmt(v)},{_fmt(prox_scalar(v, args.lam, p))}")
    return EXIT_OK


def cmd_validate(args):
    cfg = SolverConfig.build(args.lambda0, args.lambda1, args.a0, args.a1, penalty="rat",
                             mu=args.mu)
    outcome = validate_config(cfg)
    print(outcome)
    return EXIT_OK if outcome else EXIT_CONFIG


def build_parser():
    parser = argparse.ArgumentParser(prog="islr", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("denoise", help="denoise a matrix stored as CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--lambda0", type=float, required=True)
    p.add_argument("--lambda1", type=float, required=True)
    p.add_argument("--c", type=float)
    p.add_argument("--a0", type=float)
    p.add_argument("--a1", type=float)
    p.add_argument("--history", help="write iter,objective CSV here")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_denoise)

    p = sub.add_parser("bench", help="synthetic RSE sweep, ISLR vs SLR")
    p.add_argument("--sweep", choices=["rank", "sparsity"], required=True)
    p.add_argument("--m", type=int, default=50)
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--rank", type=int, default=10)
    p.add_argument("--sparsity", type=float, default=0.6,
                   help="fraction of nonzero entries for rank sweeps")
    p.add_argument("--values", type=_floats, help="sweep points (comma-separated)")
    p.add_argument("--sigma", type=float, default=0.2)
    p.add_argument("--trials", type=int, default=15)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--c", type=float, default=0.5)
    p.add_argument("--betas", type=_floats, default=list(DEFAULT_BETAS))
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", required=True)
    _add_solver_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("audio", help="denoise a mono 16-bit WAV file")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--sigma", type=float, default=0.03)
    p.add_argument("--beta0", type=float, default=1.0)
    p.add_argument("--beta1", type=float, default=2.0)
    p.add_argument("--c", type=float, default=0.5)
    p.add_argument("--mode", choices=["complex", "magnitude"], default="complex")
    p.add_argument("--add-noise", action="store_true",
                   help="add white noise of std --sigma before denoising")
    p.add_argument("--noisy-output", help="with --add-noise, also write the noisy input")
    p.add_argument("--seed", type=int, default=0)
    _add_solver_flags(p)
    p.set_defaults(func=cmd_audio)

    p = sub.add_parser("graph", help="corrupt and denoise a weighted adjacency matrix")
    p.add_argument("--edges", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--sigma", type=float, default=0.3)
    p.add_argument("--fraction", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--beta0", type=float)
    p.add_argument("--beta1", type=float)
    p.add_argument("--betas", type=_floats, default=list(DEFAULT_BETAS))
    p.add_argument("--c", type=float, default=0.5)
    p.add_argument("--noisy-output")
    p.add_argument("--report", help="write the grid search table here")
    p.add_argument("--screen-iter", type=int, default=30,
                   help="iterations per cell in the screening pass; 0 solves every cell in full")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("prox", help="print prox values for debugging")
    p.add_argument("--penalty", default="atan", choices=["rat", "atan", "log"], type=str.lower)
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--values", type=_floats, required=True)
    p.set_defaults(func=cmd_prox)

    p = sub.add_parser("validate", help="check convexity and convergence conditions")
    p.add_argument("--lambda0", type=float, required=True)
    p.add_argument("--lambda1", type=float, required=True)
    p.add_argument("--a0", type=float, default=0.0)
    p.add_argument("--a1", type=float, default=0.0)
    p.add_argument("--mu", type=float, default=DEFAULT_MU)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (OSError, ParseError, UnsupportedFormat) as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ConfigRejected as exc:
        print(f"configuration rejected:\n{exc.outcome}", file=sys.stderr)
        return EXIT_CONFIG
    except (InvalidPenalty, DegenerateLambda, BadParams, ValueError) as exc:
        print(f"configuration rejected: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NonFinite, DecompositionFailure, FloatingPointError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
