"""Sparse low-rank matrix estimation with convexity-preserving non-convex penalties."""

from .estimator import SparseLowRankDenoiser
from .exceptions import ConfigRejected, InvalidPenalty, NonFinite
from .linalg import norm, sv_shrink, svd
from .metrics import rse, snr_db
from .penalty import PenaltyKind, PenaltyParams, phi, prox_matrix, prox_scalar, s_part
from .solver import SolverConfig, SolveResult, objective, solve, solve_slr, validate_config

__all__ = [
    "ConfigRejected",
    "InvalidPenalty",
    "NonFinite",
    "PenaltyKind",
    "PenaltyParams",
    "SolveResult",
    "SolverConfig",
    "SparseLowRankDenoiser",
    "norm",
    "objective",
    "phi",
    "prox_matrix",
    "prox_scalar",
    "rse",
    "s_part",
    "snr_db",
    "solve",
    "solve_slr",
    "sv_shrink",
    "svd",
    "validate_config",
]

__version__ = "0.1.0"
