"""Exception hierarchy shared by all modules."""


class ISLRError(Exception):
    """Base class for errors raised by this package."""


class InvalidPenalty(ISLRError, ValueError):
    """Penalty parameters make the scalar proximal subproblem non-convex."""


class ConfigRejected(ISLRError, ValueError):
    """Solver configuration lies outside the strict convexity region."""

    def __init__(self, outcome):
        self.outcome = outcome
        super().__init__("; ".join(outcome.violations) or "configuration rejected")


class NonFinite(ISLRError, ArithmeticError):
    """Iterates became NaN or infinite."""


class DecompositionFailure(ISLRError, ArithmeticError):
    """The SVD did not converge."""


class DegenerateLambda(ISLRError, ValueError):
    """A regularization weight is zero where a positive one is required."""


class ZeroReference(ISLRError, ValueError):
    """Reference signal has zero norm, so a relative metric is undefined."""


class BadRank(ISLRError, ValueError):
    """Requested rank is not in [1, min(m, n)]."""


class BadParams(ISLRError, ValueError):
    """Inconsistent transform parameters."""


class ParseError(ISLRError, ValueError):
    """Malformed input file; message carries the location."""


class RaggedRows(ParseError):
    """CSV rows do not all have the same number of fields."""


class UnsupportedFormat(ISLRError, ValueError):
    """Audio file is not mono 16-bit PCM."""
