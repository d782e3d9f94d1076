"""Sparse low-rank objective and its single-splitting ADMM solver.

The objective is::

    F(X) = 0.5*||Y - X||_F^2 + lambda0 * sum_i phi(sigma_i(X); a0)
                             + lambda1 * sum_ij phi(X_ij; a1)

which is strictly convex whenever ``a0*lambda0 + a1*lambda1 < 1``. The
ADMM iteration splits ``X = Z`` and alternates an entrywise prox, a
singular value prox and a dual update; it reaches the unique minimizer for
any augmented Lagrangian weight ``mu > 1``.
"""

import csv
from dataclasses import dataclass, field, replace

import numpy as np

from .exceptions import ConfigRejected, NonFinite
from .linalg import check_matrix, singular_values, sv_shrink
from .penalty import PenaltyParams, phi, prox_matrix

DEFAULT_MU = 1.5
DEFAULT_EPS = 1e-5
DEFAULT_MAX_ITER = 500
RESIDUAL_TOL = 1e-3
RATE_WINDOW = 5


@dataclass(frozen=True)
class SolverConfig:
    lambda0: float
    lambda1: float
    penalty0: PenaltyParams = field(default_factory=PenaltyParams)
    penalty1: PenaltyParams = field(default_factory=PenaltyParams)
    mu: float = DEFAULT_MU
    eps: float = DEFAULT_EPS
    max_iter: int = DEFAULT_MAX_ITER

    @classmethod
    def build(cls, lambda0, lambda1, a0=0.0, a1=0.0, penalty="atan", **kwargs):
        """Shorthand using one penalty family for both terms."""
        return cls(
            float(lambda0),
            float(lambda1),
            PenaltyParams(penalty, a0),
            PenaltyParams(penalty, a1),
            **kwargs,
        )

    @property
    def convexity_load(self):
        """``a0*lambda0 + a1*lambda1``; must stay below 1."""
        return self.penalty0.a * self.lambda0 + self.penalty1.a * self.lambda1

    def convex_baseline(self):
        """Same weights with both penalties replaced by the absolute value."""
        return replace(
            self, penalty0=self.penalty0.with_a(0.0), penalty1=self.penalty1.with_a(0.0)
        )


@dataclass
class ValidationOutcome:
    accepted: bool
    violations: list
    convexity_margin: float
    mu_margin: float

    def __bool__(self):
        return self.accepted

    def __str__(self):
        head = "accepted" if self.accepted else "rejected"
        lines = [
            f"{head}",
            f"  a0*lambda0 + a1*lambda1 < 1 : margin {self.convexity_margin:+.6g}",
            f"  mu > 1                      : margin {self.mu_margin:+.6g}",
        ]
        lines += [f"  violated: {v}" for v in self.violations]
        return "\n".join(lines)


def validate_config(cfg):
    """Check the strict convexity and ADMM convergence conditions.

    Never raises for out-of-range values; the outcome lists each violated
    inequality with the amount by which it fails.
    """
    violations = []
    load = cfg.convexity_load
    if cfg.lambda0 < 0 or cfg.lambda1 < 0:
        violations.append(
            f"lambda0, lambda1 must be >= 0 (got {cfg.lambda0:g}, {cfg.lambda1:g})"
        )
    if not load < 1:
        violations.append(
            f"a0*lambda0 + a1*lambda1 = {load:.6g} >= 1 (exceeds by {load - 1:.6g})"
        )
    if not cfg.mu > 1:
        violations.append(f"mu = {cfg.mu:.6g} <= 1 (short by {1 - cfg.mu:.6g})")
    if not cfg.eps > 0:
        violations.append(f"eps = {cfg.eps:g} must be > 0")
    if int(cfg.max_iter) < 1:
        violations.append(f"max_iter = {cfg.max_iter} must be >= 1")
    return ValidationOutcome(not violations, violations, 1.0 - load, cfg.mu - 1.0)


def objective(X, Y, cfg):
    X = check_matrix(X, allow_complex=True, name="X")
    Y = check_matrix(Y, allow_complex=True, name="Y")
    if X.shape != Y.shape:
        raise ValueError(f"shape mismatch: X {X.shape} vs Y {Y.shape}")
    fit = 0.5 * float(np.sum(np.abs(Y - X) ** 2))
    total = fit
    if cfg.lambda0:
        # zero rows and columns only add zero singular values, and phi(0) = 0
        rows, cols = np.any(X != 0, axis=1), np.any(X != 0, axis=0)
        if rows.any():
            sv = singular_values(X[np.ix_(rows, cols)])
            total += cfg.lambda0 * float(np.sum(phi(sv, cfg.penalty0)))
    if cfg.lambda1:
        total += cfg.lambda1 * float(np.sum(phi(np.abs(X), cfg.penalty1)))
    return total


@dataclass
class ADMMState:
    X: np.ndarray
    Z: np.ndarray
    D: np.ndarray


def admm_step(state, Y, cfg):
    """One ADMM sweep: entrywise prox, singular value prox, dual update."""
    mu = cfg.mu
    target = (Y + mu * (state.Z + state.D)) / (1.0 + mu)
    X = prox_matrix(target, cfg.lambda1 / (1.0 + mu), cfg.penalty1)
    Z = sv_shrink(X - state.D, cfg.lambda0 / mu, cfg.penalty0)
    D = state.D - (X - Z)
    return ADMMState(X, Z, D)


@dataclass
class SolveResult:
    X: np.ndarray
    objective_history: list
    iterations: int
    converged: bool
    residual: float = 0.0
    state: ADMMState = None  # final (X, Z, D); None for the closed-form shortcuts

    def write_history(self, path):
        """Write ``iter,objective`` rows (1-based iteration index)."""
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["iter", "objective"])
            for k, f in enumerate(self.objective_history, start=1):
                w.writerow([k, repr(float(f))])


def solve(Y, cfg, init=None, callback=None):
    """Minimize the objective for observation ``Y``.

    Parameters
    ----------
    Y : array of shape (m, n), real or complex
    cfg : SolverConfig
    init : tuple (Z, D), optional
        Starting split variable and scaled dual; zeros by default.
    callback : callable, optional
        Called as ``callback(k, state, F)`` after every iteration.

    Returns
    -------
    SolveResult
        ``converged`` is set once the relative objective change drops below
        ``cfg.eps``, the estimated distance to the fixed point is below
        ``cfg.eps * max(1, ||X_k||_F)`` and the split residual
        ``||X - Z||_F`` is below ``1e-3 * max(1, ||X||_F)``.

    Notes
    -----
    The distance estimate is ``r_k * rho / (1 - rho)`` where ``r_k`` is
    ``||X_k - X_{k-1}||_F`` and ``rho`` its observed contraction over the
    last few iterations; it stays infinite while the steps are not shrinking.
    Near the edge of the convexity triangle ADMM has a long slow tail, so
    such problems may end at ``max_iter`` with ``converged=False``.
    """
    outcome = validate_config(cfg)
    if not outcome:
        raise ConfigRejected(outcome)
    Y = check_matrix(Y, allow_complex=True, name="Y")
    if cfg.lambda0 == 0 and cfg.lambda1 == 0:
        return SolveResult(Y.copy(), [], 0, True)
    if not np.any(Y) and init is None:
        # the origin is the fixed point and the minimizer; F = 0 there, so the
        # relative stopping rule could never fire
        return SolveResult(np.zeros_like(Y), [], 0, True)

    if init is None:
        Z = np.zeros_like(Y)
        D = np.zeros_like(Y)
    else:
        Z = check_matrix(init[0], allow_complex=True, name="Z").astype(Y.dtype)
        D = check_matrix(init[1], allow_complex=True, name="D").astype(Y.dtype)
        if Z.shape != Y.shape or D.shape != Y.shape:
            raise ValueError("init shapes must match Y")
    state = ADMMState(np.zeros_like(Y), Z, D)

    history = []
    steps = []
    converged = False
    residual = np.inf
    for k in range(int(cfg.max_iter)):
        prev = state
        state = admm_step(state, Y, cfg)
        if not (np.all(np.isfinite(state.X)) and np.all(np.isfinite(state.Z))):
            raise NonFinite(f"non-finite iterate at iteration {k + 1}")
        F = objective(state.X, Y, cfg)
        if not np.isfinite(F):
            raise NonFinite(f"non-finite objective at iteration {k + 1}")
        history.append(F)
        if callback is not None:
            callback(k + 1, state, F)
        steps.append(float(np.linalg.norm(state.X - prev.X)))
        if k < RATE_WINDOW:
            continue
        # a small change in F alone only pins X to about sqrt(eps), and a small
        # step alone says little when the contraction is slow
        scale = max(1.0, float(np.linalg.norm(state.X)))
        residual = float(np.linalg.norm(state.X - state.Z))
        small_change = abs(F - history[-2]) < cfg.eps * abs(F)
        r, r_old = steps[-1], steps[-1 - RATE_WINDOW]
        if r == 0:
            distance = 0.0
        elif r < r_old:
            rho = (r / r_old) ** (1.0 / RATE_WINDOW)
            distance = r * rho / (1.0 - rho)
        else:
            distance = np.inf
        if small_change and distance <= cfg.eps * scale and residual <= RESIDUAL_TOL * scale:
            converged = True
            break
    return SolveResult(state.X, history, len(history), converged, residual, state)


def solve_slr(Y, lambda0, lambda1, mu=DEFAULT_MU, eps=DEFAULT_EPS,
              max_iter=DEFAULT_MAX_ITER, init=None):
    """Convex baseline: nuclear norm plus entrywise l1 (both ``a = 0``)."""
    cfg = SolverConfig.build(lambda0, lambda1, 0.0, 0.0, penalty="rat",
                             mu=mu, eps=eps, max_iter=max_iter)
    return solve(Y, cfg, init=init)
