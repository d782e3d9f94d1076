"""Weighted adjacency denoising: corrupt a clean graph, then recover it."""

from dataclasses import dataclass

import numpy as np

from .datagen import corrupt_uniform
from .metrics import rse
from .solver import solve
from .tuning import DEFAULT_BETAS, config_from_betas, grid_search


@dataclass
class GraphResult:
    noisy: np.ndarray
    estimate: np.ndarray
    betas: tuple
    rse_noisy: float
    rse_estimate: float
    grid: object = None


def denoise_adjacency(clean, fraction=0.1, sigma=0.3, seed=0, *, betas=None,
                      betas0=DEFAULT_BETAS, betas1=DEFAULT_BETAS, c=0.5,
                      penalty="atan", method="islr", screen_iter=30, screen_keep=3,
                      **solver_kwargs):
    """Corrupt ``clean`` with sparse uniform noise and denoise it.

    With ``betas=(beta0, beta1)`` the weights are fixed; otherwise every
    cell of ``betas0 x betas1`` is tried and the one with the lowest RSE
    against ``clean`` is kept. The search is two-stage by default (see
    ``screen_iter`` in :func:`islr.tuning.grid_search`); pass
    ``screen_iter=None`` to solve every cell in full.
    """
    clean = np.asarray(clean, dtype=float)
    noisy = corrupt_uniform(clean, fraction, sigma, seed)
    grid = None
    if betas is None:
        grid = grid_search(noisy, clean, betas0, betas1, c, sigma, method=method,
                           penalty=penalty, screen_iter=screen_iter,
                           screen_keep=screen_keep, **solver_kwargs)
        betas, estimate = grid.best, grid.best_estimate
    else:
        cfg = config_from_betas(betas[0], betas[1], sigma, c, penalty, method, **solver_kwargs)
        estimate = solve(noisy, cfg).X
    return GraphResult(noisy, estimate, tuple(betas), rse(noisy, clean),
                       rse(estimate, clean), grid)
