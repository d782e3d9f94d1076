"""Matrix validation, norms, a deterministic thin SVD and singular value shrinkage."""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .exceptions import DecompositionFailure
from .penalty import check_threshold, prox_magnitude


def check_matrix(X, *, allow_complex=False, name="X"):
    """Validate a 2-D finite matrix and return it as a float/complex ndarray.

    Mirrors :func:`sklearn.utils.check_array` for the cases used here, but
    also accepts complex input (spectrograms) when ``allow_complex`` is set.
    """
    X = np.asarray(X)
    if X.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {X.shape}")
    if X.shape[0] < 1 or X.shape[1] < 1:
        raise ValueError(f"{name} must have at least one row and one column, got {X.shape}")
    if np.iscomplexobj(X):
        if not allow_complex:
            raise ValueError(f"{name} must be real-valued")
        X = X.astype(complex, copy=False)
    else:
        X = X.astype(float, copy=False)
    if not np.all(np.isfinite(X)):
        raise ValueError(f"{name} contains NaN or infinite entries")
    return X


@dataclass
class SvdFactors:
    """Thin SVD ``X = U @ diag(sigma) @ V^H`` with ``k = min(m, n)``."""

    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray

    def reconstruct(self, sigma=None):
        s = self.sigma if sigma is None else sigma
        return (self.U * s) @ self.V.conj().T


def svd(X):
    """Thin SVD with a fixed sign (phase) convention.

    The first entry of each column of ``U`` whose modulus exceeds round-off
    is made real and nonnegative, and the matching column of ``V`` is
    adjusted so the product is unchanged.
    """
    X = check_matrix(X, allow_complex=True)
    try:
        U, s, Vh = np.linalg.svd(X, full_matrices=False)
    except np.linalg.LinAlgError:
        try:
            U, s, Vh = scipy.linalg.svd(X, full_matrices=False, lapack_driver="gesvd")
        except (np.linalg.LinAlgError, ValueError) as exc:
            raise DecompositionFailure(f"SVD did not converge: {exc}") from exc
    V = Vh.conj().T
    mag = np.abs(U)
    cutoff = 1e-12 * np.maximum(mag.max(axis=0, initial=0.0), np.finfo(float).tiny)
    first = np.argmax(mag > cutoff, axis=0)
    pivot = U[first, np.arange(U.shape[1])]
    if np.iscomplexobj(U):
        pivot_mag = np.abs(pivot)
        phase = np.where(pivot_mag > 0, pivot / np.where(pivot_mag > 0, pivot_mag, 1), 1.0)
        U = U * phase.conj()
        V = V * phase.conj()
    else:
        flip = np.where(pivot < 0, -1.0, 1.0)
        U = U * flip
        V = V * flip
    return SvdFactors(U, s, V)


def norm(X, kind="frobenius"):
    """Frobenius, entrywise l1 or nuclear norm of a matrix."""
    X = check_matrix(X, allow_complex=True)
    if kind == "frobenius":
        return float(np.sqrt(np.sum(np.abs(X) ** 2)))
    if kind == "entrywise_l1":
        return float(np.sum(np.abs(X)))
    if kind == "nuclear":
        return float(np.sum(svd(X).sigma))
    raise ValueError(f"unknown norm kind {kind!r}")


def singular_values(X):
    return np.linalg.svd(np.asarray(X), compute_uv=False)


def sv_shrink(X, lam, p, factors=None):
    """Apply the scalar prox to the singular values of ``X``.

    ``U @ diag(prox(sigma; lam, a)) @ V^H``. With ``a == 0`` this is the
    classical singular value thresholding map.
    """
    lam = check_threshold(lam, p)
    f = svd(X) if factors is None else factors
    return f.reconstruct(prox_magnitude(f.sigma, lam, p))
