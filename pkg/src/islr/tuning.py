"""Noise-proportional weights, convexity-preserving penalty parameters and grid search."""

import csv
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DegenerateLambda
from .metrics import rse
from .solver import DEFAULT_EPS, DEFAULT_MAX_ITER, DEFAULT_MU, SolverConfig, solve

DEFAULT_BETAS = (0.25, 0.5, 1.0, 2.0, 4.0)
A1_MARGIN = 1e-6


@dataclass(frozen=True)
class TuningRule:
    beta0: float
    beta1: float
    c: float = 0.5
    sigma: float = 0.0

    def __post_init__(self):
        if self.sigma < 0 or self.beta0 < 0 or self.beta1 < 0:
            raise ValueError("beta0, beta1 and sigma must be nonnegative")


def lambdas_from_sigma(rule):
    """``lambda_i = beta_i * sigma``."""
    return rule.beta0 * rule.sigma, rule.beta1 * rule.sigma


def penalties_from_c(c, lambda0, lambda1):
    """Split the convexity budget: ``a0*lambda0 = c`` and ``a1*lambda1 = 1 - c``.

    ``a1`` is pulled inside the open region by a relative margin of 1e-6 so
    that ``a0*lambda0 + a1*lambda1 < 1`` holds strictly.
    """
    if not 0 < c < 1:
        raise ValueError(f"c must lie in (0, 1), got {c}")
    if lambda0 <= 0 or lambda1 <= 0:
        raise DegenerateLambda(
            f"lambda0={lambda0:g}, lambda1={lambda1:g}: both must be > 0 to derive a0, a1"
        )
    a0 = c / lambda0
    a1 = (1.0 - a0 * lambda0) / lambda1 * (1.0 - A1_MARGIN)
    return a0, a1


def config_from_lambdas(lambda0, lambda1, c=0.5, penalty="atan", method="islr",
                        mu=DEFAULT_MU, eps=DEFAULT_EPS, max_iter=DEFAULT_MAX_ITER):
    """Solver configuration with ``a0, a1`` derived from the budget split ``c``.

    For ``method="slr"`` both penalties are the absolute value. When only one
    weight is nonzero it receives its share of the budget (``c`` for the
    singular values, ``1 - c`` for the entries) and the other ``a`` is 0.
    """
    a0 = a1 = 0.0
    if method == "islr":
        if lambda0 > 0 and lambda1 > 0:
            a0, a1 = penalties_from_c(c, lambda0, lambda1)
        elif lambda0 > 0:
            a0 = c / lambda0
        elif lambda1 > 0:
            a1 = (1.0 - c) / lambda1
    elif method != "slr":
        raise ValueError(f"method must be 'islr' or 'slr', got {method!r}")
    return SolverConfig.build(lambda0, lambda1, a0, a1, penalty=penalty,
                              mu=mu, eps=eps, max_iter=max_iter)


def config_from_betas(beta0, beta1, sigma, c=0.5, penalty="atan", method="islr", **solver_kwargs):
    """Configuration for one grid cell: ``lambda_i = beta_i * sigma``, then :func:`config_from_lambdas`."""
    lam0, lam1 = lambdas_from_sigma(TuningRule(beta0, beta1, c, sigma))
    return config_from_lambdas(lam0, lam1, c, penalty, method, **solver_kwargs)


@dataclass
class GridReport:
    rows: list = field(default_factory=list)
    best: tuple = None
    best_rse: float = np.inf
    best_estimate: np.ndarray = None

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["beta0", "beta1", "lambda0", "lambda1", "rse"])
            for r in self.rows:
                w.writerow([repr(r["beta0"]), repr(r["beta1"]), repr(r["lambda0"]),
                            repr(r["lambda1"]), repr(r["rse"])])


def grid_search(Y, X_ref, beta0_list, beta1_list, c=0.5, sigma=1.0, *,
                method="islr", penalty="atan", screen_iter=None, screen_keep=3,
                **solver_kwargs):
    """Score every ``(beta0, beta1)`` cell by RSE against ``X_ref``.

    Rows follow the order of the input lists; the winner is the lowest RSE,
    ties going to the lexicographically smaller ``(beta0, beta1)``.

    Parameters
    ----------
    screen_iter : int, optional
        Two-stage search. Every cell is first solved with at most
        ``screen_iter`` iterations; only the ``screen_keep`` best cells are
        then solved in full, and the winner is chosen among those. Rows of
        the other cells keep their screening RSE. Cells tuned near the edge
        of the convexity triangle converge slowly while their RSE settles
        early, so this can save most of the work on large matrices.
    """
    beta0_list = list(beta0_list)
    beta1_list = list(beta1_list)
    if not beta0_list or not beta1_list:
        raise ValueError("beta lists must be nonempty")
    if screen_iter is not None and (int(screen_iter) < 1 or int(screen_keep) < 1):
        raise ValueError("screen_iter and screen_keep must be >= 1")
    Y = np.asarray(Y)
    if np.shape(X_ref) != Y.shape:
        raise ValueError("X_ref must have the same shape as Y")

    def run(b0, b1, **override):
        cfg = config_from_betas(b0, b1, sigma, c, penalty, method, **{**solver_kwargs, **override})
        X = solve(Y, cfg).X
        return cfg, X, rse(X, X_ref)

    report = GridReport()
    estimates = {}
    short = {} if screen_iter is None else {"max_iter": int(screen_iter)}
    for b0 in beta0_list:
        for b1 in beta1_list:
            cfg, X, score = run(b0, b1, **short)
            report.rows.append(dict(beta0=float(b0), beta1=float(b1),
                                    lambda0=cfg.lambda0, lambda1=cfg.lambda1, rse=score))
            estimates[len(report.rows) - 1] = X

    finalists = range(len(report.rows))
    if screen_iter is not None:
        order = sorted(finalists, key=lambda i: (report.rows[i]["rse"],
                                                 (report.rows[i]["beta0"], report.rows[i]["beta1"])))
        finalists = sorted(order[:int(screen_keep)])
        for i in finalists:
            row = report.rows[i]
            _, estimates[i], row["rse"] = run(row["beta0"], row["beta1"])

    for i in finalists:
        row = report.rows[i]
        key = (row["rse"], (row["beta0"], row["beta1"]))
        if report.best is None or key < (report.best_rse, report.best):
            report.best, report.best_rse = (row["beta0"], row["beta1"]), row["rse"]
            report.best_estimate = estimates[i]
    return report
