"""Seeded synthetic sparse low-rank matrices, noise models and RSE sweeps.

Every generator is a pure function of its arguments and an integer seed.
"""

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .exceptions import BadRank
from .tuning import DEFAULT_BETAS, grid_search

SWEEP_METHODS = ("islr", "slr")


@dataclass(frozen=True)
class SyntheticSpec:
    m: int
    n: int
    rank: int
    zero_fraction: float = 0.4
    sigma: float = 0.2
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.rank <= min(self.m, self.n):
            raise BadRank(f"rank {self.rank} not in [1, {min(self.m, self.n)}]")
        if not 0 <= self.zero_fraction <= 1:
            raise ValueError("zero_fraction must be in [0, 1]")
        if self.sigma < 0:
            raise ValueError("sigma must be >= 0")


def gen_low_rank(m, n, k, seed):
    """``A @ B`` with ``A`` (m, k) and ``B`` (k, n) standard normal."""
    if not 1 <= k <= min(m, n):
        raise BadRank(f"rank {k} not in [1, {min(m, n)}]")
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((m, k))
    B = rng.standard_normal((k, n))
    return A @ B


def _positions(size, fraction, rng):
    count = int(round(fraction * size))
    return rng.choice(size, size=count, replace=False)


def sparsify(M, zero_fraction, seed):
    """Zero exactly ``round(zero_fraction * M.size)`` entries chosen without replacement."""
    if not 0 <= zero_fraction <= 1:
        raise ValueError("zero_fraction must be in [0, 1]")
    out = np.array(M, dtype=float)
    idx = _positions(out.size, zero_fraction, np.random.default_rng(seed))
    out.flat[idx] = 0.0
    return out


def add_awgn(M, sigma, seed):
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    M = np.asarray(M, dtype=float)
    if sigma == 0:
        return M.copy()
    return M + sigma * np.random.default_rng(seed).standard_normal(M.shape)


def corrupt_uniform(M, fraction, sigma, seed):
    """Add Uniform(0, sigma) to ``round(fraction * M.size)`` distinct entries."""
    if not 0 <= fraction <= 1:
        raise ValueError("fraction must be in [0, 1]")
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    out = np.array(M, dtype=float)
    rng = np.random.default_rng(seed)
    idx = _positions(out.size, fraction, rng)
    out.flat[idx] += rng.uniform(0.0, sigma, size=idx.size)
    return out


def make_instance(spec):
    """Clean and noisy matrices: low-rank product, then zeros, then AWGN."""
    seeds = np.random.SeedSequence(int(spec.seed)).generate_state(3)
    clean = sparsify(gen_low_rank(spec.m, spec.n, spec.rank, seeds[0]),
                     spec.zero_fraction, seeds[1])
    return clean, add_awgn(clean, spec.sigma, seeds[2])


def gen_graph_adjacency(n_nodes, n_groups, seed, group_size=(15, 40)):
    """Symmetric block-structured weighted adjacency with weights in [0, 2].

    Each group of nodes contributes a rank-one block ``u u^T`` with node
    affinities ``u`` in [0.5, 1.4]; groups are disjoint, so the matrix is
    sparse with rank ``n_groups``.
    """
    rng = np.random.default_rng(seed)
    sizes = rng.integers(group_size[0], group_size[1] + 1, size=n_groups)
    if sizes.sum() > n_nodes:
        raise ValueError("groups do not fit in the node set")
    order = rng.permutation(n_nodes)
    A = np.zeros((n_nodes, n_nodes))
    start = 0
    for size in sizes:
        members = order[start:start + size]
        start += size
        u = rng.uniform(0.5, 1.4, size=size)
        A[np.ix_(members, members)] = np.outer(u, u)
    return A


@dataclass
class SweepRow:
    sweep_value: float
    method: str
    mean_rse: float
    std_rse: float
    trials: int


class SweepReport(list):
    """List of :class:`SweepRow` with CSV export."""

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["sweep_value", "method", "mean_rse", "std_rse", "trials"])
            for r in self:
                w.writerow([repr(float(r.sweep_value)), r.method, repr(r.mean_rse),
                            repr(r.std_rse), r.trials])

    def series(self, method):
        rows = [r for r in self if r.method == method]
        return (np.array([r.sweep_value for r in rows]),
                np.array([r.mean_rse for r in rows]))


def _trial(args):
    spec, betas0, betas1, c, penalty, solver_kwargs = args
    clean, noisy = make_instance(spec)
    out = {}
    for method in SWEEP_METHODS:
        report = grid_search(noisy, clean, betas0, betas1, c, spec.sigma,
                             method=method, penalty=penalty, **solver_kwargs)
        out[method] = report.best_rse
    return out


def run_sweep(kind, values, *, m=50, n=50, rank=10, sparsity=0.6, sigma=0.2,
              trials=15, seed=0, c=0.5, betas0=DEFAULT_BETAS, betas1=DEFAULT_BETAS,
              penalty="atan", jobs=1, **solver_kwargs):
    """Mean and standard deviation of grid-tuned RSE per sweep point.

    ``kind="rank"`` sweeps the rank at fixed ``sparsity``; ``kind="sparsity"``
    sweeps the sparsity level (fraction of nonzero entries) at fixed ``rank``.
    Trial ``t`` uses seed ``seed ^ t`` at every sweep point, so results do not
    depend on ``jobs``.
    """
    values = list(values)
    if not values or trials < 1:
        raise ValueError("need at least one sweep value and one trial")
    if kind not in ("rank", "sparsity"):
        raise ValueError(f"unknown sweep kind {kind!r}")
    tasks = []
    for v in values:
        k, level = (int(v), sparsity) if kind == "rank" else (rank, float(v))
        for t in range(trials):
            spec = SyntheticSpec(m, n, k, 1.0 - level, sigma, int(seed) ^ t)
            tasks.append((spec, tuple(betas0), tuple(betas1), c, penalty, solver_kwargs))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_trial, tasks))
    else:
        results = [_trial(t) for t in tasks]

    report = SweepReport()
    for i, v in enumerate(values):
        chunk = results[i * trials:(i + 1) * trials]
        for method in SWEEP_METHODS:
            scores = np.array([r[method] for r in chunk])
            report.append(SweepRow(v, method, float(scores.mean()),
                                   float(scores.std()), trials))
    return report

