"""Numerical verification of integral identities for zeta, eta and beta on the critical line."""

from . import closed_forms, exceptional_limits, identity_catalog, quadrature, special_functions
from .errors import (
    AtLimitPoint,
    CycleError,
    DecayError,
    DegenerateError,
    DomainError,
    FitError,
    NonConvergence,
    PoleError,
    SingularTermError,
    ZetaIdError,
)

__version__ = "0.1.0"
