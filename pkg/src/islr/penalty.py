"""Parameterized non-convex penalties and their proximity operators.

Three penalty families are provided, all reducing to ``|x|`` when the
non-convexity parameter ``a`` is zero:

* rational     ``|x| / (1 + a|x|/2)``
* logarithmic  ``log(1 + a|x|) / a``
* arctangent   ``2/(a*sqrt(3)) * (atan((1 + 2a|x|)/sqrt(3)) - pi/6)``

Each has ``phi'(0+) = 1`` and ``phi''(0+) = -a``, so the scalar problem
``0.5*(y - x)**2 + lam*phi(x)`` stays strictly convex while ``a*lam < 1``.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .exceptions import InvalidPenalty

_SQRT3 = np.sqrt(3.0)

PROX_TOL = 1e-12
_PROX_MAX_ITER = 200


class PenaltyKind(str, Enum):
    RATIONAL = "rational"
    ARCTANGENT = "arctangent"
    LOGARITHMIC = "logarithmic"


_ALIASES = {
    "rat": PenaltyKind.RATIONAL,
    "rational": PenaltyKind.RATIONAL,
    "atan": PenaltyKind.ARCTANGENT,
    "arctan": PenaltyKind.ARCTANGENT,
    "arctangent": PenaltyKind.ARCTANGENT,
    "log": PenaltyKind.LOGARITHMIC,
    "logarithmic": PenaltyKind.LOGARITHMIC,
}


def parse_kind(name):
    """Map a penalty name (``rat``, ``atan``, ``log`` or the long form) to a kind."""
    if isinstance(name, PenaltyKind):
        return name
    try:
        return _ALIASES[str(name).strip().lower()]
    except KeyError:
        raise ValueError(
            f"unknown penalty {name!r}; expected one of rat, atan, log"
        ) from None


@dataclass(frozen=True)
class PenaltyParams:
    """Penalty family plus its non-convexity parameter ``a >= 0``."""

    kind: PenaltyKind = PenaltyKind.RATIONAL
    a: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", parse_kind(self.kind))
        a = float(self.a)
        if not np.isfinite(a) or a < 0:
            raise InvalidPenalty(f"penalty parameter a must be finite and >= 0, got {a}")
        object.__setattr__(self, "a", a)

    def with_a(self, a):
        return PenaltyParams(self.kind, a)


def phi(x, p):
    """Evaluate the penalty elementwise. Accepts scalars or arrays."""
    t = np.abs(np.asarray(x, dtype=float))
    a = p.a
    if a == 0.0:
        out = t
    elif p.kind is PenaltyKind.RATIONAL:
        out = t / (1.0 + 0.5 * a * t)
    elif p.kind is PenaltyKind.LOGARITHMIC:
        out = np.log1p(a * t) / a
    else:
        # atan(u) - atan(1/sqrt3) folded into one atan: exact zero at t = 0
        out = 2.0 / (a * _SQRT3) * np.arctan(_SQRT3 * a * t / (2.0 + a * t))
    return out if out.ndim else float(out)


def phi_prime(t, p):
    """Derivative of the penalty on ``t > 0`` (extended continuously to 0)."""
    t = np.asarray(t, dtype=float)
    a = p.a
    if a == 0.0:
        return np.ones_like(t)
    if p.kind is PenaltyKind.RATIONAL:
        return 1.0 / (1.0 + 0.5 * a * t) ** 2
    if p.kind is PenaltyKind.LOGARITHMIC:
        return 1.0 / (1.0 + a * t)
    return 1.0 / (1.0 + a * t + (a * t) ** 2)


def phi_second(t, p):
    """Second derivative of the penalty on ``t > 0``."""
    t = np.asarray(t, dtype=float)
    a = p.a
    if a == 0.0:
        return np.zeros_like(t)
    if p.kind is PenaltyKind.RATIONAL:
        return -a / (1.0 + 0.5 * a * t) ** 3
    if p.kind is PenaltyKind.LOGARITHMIC:
        return -a / (1.0 + a * t) ** 2
    q = 1.0 + a * t + (a * t) ** 2
    return -(a + 2.0 * a * a * t) / q**2


def s_part(x, p):
    """Smooth concave part ``phi(x) - |x|``; twice differentiable everywhere."""
    out = phi(x, p) - np.abs(np.asarray(x, dtype=float))
    return out if np.ndim(out) else float(out)


def check_threshold(lam, p):
    lam = float(lam)
    if not lam >= 0:
        raise InvalidPenalty(f"threshold must be >= 0, got {lam}")
    if lam > 0 and p.a * lam >= 1.0:
        raise InvalidPenalty(
            f"a*lambda = {p.a * lam:.6g} >= 1: the proximal subproblem is not strictly convex"
        )
    return lam


def prox_magnitude(r, lam, p):
    """Prox on nonnegative magnitudes ``r`` (array), already validated."""
    out = np.zeros_like(r)
    if lam == 0.0:
        return r.copy()
    active = r > lam
    if not np.any(active):
        return out
    y = r[active]
    if p.a == 0.0:
        out[active] = y - lam
        return out
    # Root of g(x) = x - y + lam*phi'(x) on (0, y]. g is increasing (a*lam < 1)
    # and convex, so Newton started at x = y decreases monotonically onto the
    # root; the bracket [lo, hi] guards against round-off escaping it.
    lo = np.zeros_like(y)
    hi = y.copy()
    x = y.copy()
    tol = np.maximum(PROX_TOL, 4 * np.spacing(y))
    for _ in range(_PROX_MAX_ITER):
        g = x - y + lam * phi_prime(x, p)
        pos = g > 0
        hi = np.where(pos, x, hi)
        lo = np.where(pos, lo, x)
        dg = 1.0 + lam * phi_second(x, p)
        x_new = x - g / dg
        bad = ~((x_new >= lo) & (x_new <= hi))
        x_new = np.where(bad, 0.5 * (lo + hi), x_new)
        step = np.abs(x_new - x)
        x = x_new
        if np.all((step <= tol) | (hi - lo <= tol)):
            break
    out[active] = x
    return out


def prox_scalar(y, lam, p):
    """Unique minimizer of ``0.5*(y - x)**2 + lam*phi(x; a)``.

    Zero whenever ``|y| <= lam``; the soft threshold when ``a == 0``.

    Raises
    ------
    InvalidPenalty
        If ``a * lam >= 1``.
    """
    lam = check_threshold(lam, p)
    y = float(y)
    r = prox_magnitude(np.array([abs(y)]), lam, p)[0]
    return float(np.copysign(r, y)) if r > 0 else 0.0


def prox_matrix(Y, lam, p):
    """Entrywise prox of a real or complex array.

    Complex entries are shrunk in modulus with their phase kept.
    """
    lam = check_threshold(lam, p)
    Y = np.asarray(Y)
    if np.iscomplexobj(Y):
        r = np.abs(Y)
        shrunk = prox_magnitude(r.ravel(), lam, p).reshape(Y.shape)
        scale = np.divide(shrunk, r, out=np.zeros_like(r), where=r > 0)
        return Y * scale
    Y = Y.astype(float, copy=False)
    r = prox_magnitude(np.abs(Y).ravel(), lam, p).reshape(Y.shape)
    return np.sign(Y) * r


def prox_complex(y, lam, p):
    """Modulus shrinkage of a complex scalar, phase preserved."""
    lam = check_threshold(lam, p)
    y = complex(y)
    r = abs(y)
    if r == 0:
        return 0j
    return y * (prox_scalar(r, lam, p) / r)


@dataclass
class ConformanceReport:
    """Outcome of the finite-difference conformance checks on a penalty."""

    params: PenaltyParams
    checks: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(self.checks.values())

    def __str__(self):
        lines = [f"{self.params.kind.value} a={self.params.a:g}"]
        for name, ok in self.checks.items():
            lines.append(f"  {'PASS' if ok else 'FAIL'} {name}: {self.details.get(name, '')}")
        return "\n".join(lines)


def check_conformance(p, grid, tol=1e-3):
    """Check the penalty shape conditions by finite differences.

    Verifies symmetry, positive slope and non-positive curvature on ``grid``,
    unit slope at ``0+``, and that the curvature is bounded below by ``-a``
    with the bound attained at ``0+``.
    """
    x = np.asarray(grid, dtype=float)
    if x.size == 0 or np.any(x <= 0):
        raise ValueError("grid must be nonempty and strictly positive")
    report = ConformanceReport(p)
    a = p.a

    def record(name, ok, detail):
        report.checks[name] = bool(ok)
        report.details[name] = detail

    asym = np.max(np.abs(phi(-x, p) - phi(x, p)))
    record("symmetric", asym <= tol, f"max |phi(-x)-phi(x)| = {asym:.3g}")

    h = np.minimum(1e-5, x / 10)
    d1 = (phi(x + h, p) - phi(x - h, p)) / (2 * h)
    record("increasing", np.all(d1 > 0), f"min phi' = {d1.min():.6g}")

    h2 = np.minimum(1e-4, x / 10) * np.maximum(1.0, x) ** 0.5
    h2 = np.minimum(h2, x / 10)
    d2 = (phi(x + h2, p) - 2 * phi(x, p) + phi(x - h2, p)) / h2**2
    record("concave", np.all(d2 <= tol), f"max phi'' = {d2.max():.3g}")
    record("curvature_bound", np.all(d2 >= -a - tol), f"min phi'' = {d2.min():.6g}")

    h0 = 1e-7
    slope0 = phi(h0, p) / h0
    record("unit_slope_at_0", abs(slope0 - 1.0) <= tol, f"phi'(0+) = {slope0:.8g}")

    # s is C2 across 0, so the symmetric second difference at 0 is phi''(0+).
    hs = 1e-5
    curv0 = 2 * s_part(hs, p) / hs**2
    record("curvature_at_0", abs(curv0 + a) <= tol, f"phi''(0+) = {curv0:.6g}, -a = {-a:g}")
    return report
