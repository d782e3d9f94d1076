"""Reconstruction quality metrics."""

import numpy as np

from .exceptions import ZeroReference


def rse(X_est, X_org):
    """Normalized root square error ``||X_est - X_org||_F / ||X_org||_F``."""
    X_est = np.asarray(X_est)
    X_org = np.asarray(X_org)
    if X_est.shape != X_org.shape:
        raise ValueError(f"shape mismatch: {X_est.shape} vs {X_org.shape}")
    ref = np.linalg.norm(X_org)
    if ref == 0:
        raise ZeroReference("reference matrix has zero Frobenius norm")
    return float(np.linalg.norm(X_est - X_org) / ref)


def snr_db(reference, estimate):
    """``20*log10(||ref|| / ||ref - est||)`` in dB; ``inf`` for an exact match."""
    reference = np.asarray(reference)
    estimate = np.asarray(estimate)
    if reference.shape != estimate.shape:
        raise ValueError(f"shape mismatch: {reference.shape} vs {estimate.shape}")
    ref = np.linalg.norm(reference)
    if ref == 0:
        raise ZeroReference("reference signal has zero energy")
    err = np.linalg.norm(reference - estimate)
    if err == 0:
        return float("inf")
    return float(20 * np.log10(ref / err))
