"""Exception types shared across the package.

Each error carries a short machine-readable ``code`` that the command line
front end maps to an exit status.
"""


class NCCRError(Exception):
    code = "error"
    exit_status = 4


class ValidationError(NCCRError, ValueError):
    """Input data failed a structural check (lengths, residues, signs)."""

    code = "validation"
    exit_status = 2

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class TorusRankError(ValidationError):
    code = "torus-rank"


class HypothesisError(ValidationError):
    """A mathematical hypothesis (effective, unimodular, generic) fails."""

    code = "hypothesis"

    def __init__(self, message, failed=()):
        super().__init__(message, condition=",".join(failed) or None)
        self.failed = tuple(failed)


class WindowExhaustedError(NCCRError):
    """A computation needed data beyond the truncation degree."""

    code = "window-exhausted"
    exit_status = 3


class TruncationInstabilityError(NCCRError):
    code = "truncation-instability"
    exit_status = 3


class InconsistencyError(NCCRError):
    """An internal invariant (d^2 = 0, associativity, ...) was violated."""

    code = "internal-inconsistency"
    exit_status = 4
