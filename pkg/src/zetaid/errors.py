"""Exception hierarchy shared by all modules."""


class ZetaIdError(Exception):
    """Base class for every error raised by the package."""


class PoleError(ZetaIdError):
    """A function was evaluated exactly at one of its poles."""


class DomainError(ZetaIdError):
    """An argument lies outside the supported domain."""


class NonConvergence(ZetaIdError):
    """An iterative scheme hit its work limit before reaching tolerance."""


class DecayError(ZetaIdError):
    """A semi-infinite integrand has no exponential decay to truncate on."""


class SingularTermError(ZetaIdError):
    """A series term has a vanishing denominator."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class AtLimitPoint(ZetaIdError):
    """Evaluation requested exactly at the indeterminate limit point."""


class DegenerateError(ZetaIdError):
    """Path coordinates collapse (q=1, alpha=0 gives arg(0))."""


class FitError(ZetaIdError):
    """A least-squares pole fit left too large a residual."""


class CycleError(ZetaIdError):
    """The derivation graph of the identity catalog contains a cycle."""
