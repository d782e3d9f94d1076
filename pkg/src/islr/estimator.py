"""scikit-learn style front end for the sparse low-rank denoiser."""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .exceptions import ConfigRejected
from .linalg import check_matrix
from .solver import DEFAULT_EPS, DEFAULT_MAX_ITER, DEFAULT_MU, SolverConfig, solve, validate_config
from .tuning import config_from_lambdas


class SparseLowRankDenoiser(TransformerMixin, BaseEstimator):
    """Estimate a sparse low-rank matrix from a noisy observation.

    The whole matrix passed to :meth:`fit` is one observation; the fitted
    estimate is stored in ``estimate_``. :meth:`transform` denoises a new
    observation with the same (validated) configuration.

    Parameters
    ----------
    lambda0 : float
        Weight of the singular value penalty.
    lambda1 : float
        Weight of the entrywise penalty.
    penalty : {"atan", "rat", "log"}
    a0, a1 : float or None
        Non-convexity parameters. When both are None they are derived from
        ``c`` so that ``a0*lambda0 = c`` and ``a1*lambda1`` just below
        ``1 - c``.
    c : float in (0, 1)
    method : {"islr", "slr"}
        ``"slr"`` forces ``a0 = a1 = 0`` (nuclear norm plus l1).
    mu, eps, max_iter :
        ADMM weight, relative stopping tolerance and iteration cap.
    """

    def __init__(self, lambda0=1.0, lambda1=1.0, penalty="atan", a0=None, a1=None,
                 c=0.5, method="islr", mu=DEFAULT_MU, eps=DEFAULT_EPS,
                 max_iter=DEFAULT_MAX_ITER):
        self.lambda0 = lambda0
        self.lambda1 = lambda1
        self.penalty = penalty
        self.a0 = a0
        self.a1 = a1
        self.c = c
        self.method = method
        self.mu = mu
        self.eps = eps
        self.max_iter = max_iter

    def _make_config(self):
        solver_kwargs = dict(mu=self.mu, eps=self.eps, max_iter=self.max_iter)
        if self.a0 is None and self.a1 is None:
            return config_from_lambdas(self.lambda0, self.lambda1, self.c,
                                       self.penalty, self.method, **solver_kwargs)
        if self.method == "slr":
            raise ValueError("a0/a1 cannot be combined with method='slr'")
        a0 = 0.0 if self.a0 is None else self.a0
        a1 = 0.0 if self.a1 is None else self.a1
        return SolverConfig.build(self.lambda0, self.lambda1, a0, a1,
                                  penalty=self.penalty, **solver_kwargs)

    def _validated_config(self):
        cfg = self._make_config()
        outcome = validate_config(cfg)
        if not outcome:
            raise ConfigRejected(outcome)
        return cfg

    def fit(self, X, y=None):
        X = check_matrix(X, allow_complex=True)
        self.config_ = self._validated_config()
        result = solve(X, self.config_)
        self.estimate_ = result.X
        self.objective_history_ = np.asarray(result.objective_history)
        self.n_iter_ = result.iterations
        self.converged_ = result.converged
        self.n_features_in_ = X.shape[1]
        return self

    def fit_transform(self, X, y=None, **fit_params):
        return self.fit(X, y).estimate_

    def transform(self, X):
        check_is_fitted(self, "config_")
        X = check_matrix(X, allow_complex=True)
        return solve(X, self.config_).X
