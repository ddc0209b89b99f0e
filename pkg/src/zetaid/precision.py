"""Working-precision switch.

``double`` is plain binary64.  ``dd`` keeps binary64 storage but turns on
compensated (Neumaier) accumulation inside the long sums of the zeta
evaluators and tightens the default quadrature tolerance.  The environment
variable ``ZID_PRECISION`` selects the starting mode.
"""

import contextlib
import os
import threading

MODES = ("double", "dd")

_state = threading.local()


def _default_mode():
    mode = os.environ.get("ZID_PRECISION", "double").strip().lower()
    if mode in ("double_double", "double-double"):
        mode = "dd"
    return mode if mode in MODES else "double"


def get_mode():
    return getattr(_state, "mode", None) or _default_mode()


def set_mode(mode):
    if mode in ("double_double", "double-double"):
        mode = "dd"
    if mode not in MODES:
        raise ValueError(f"unknown precision mode {mode!r}; expected one of {MODES}")
    _state.mode = mode


@contextlib.contextmanager
def precision(mode):
    """Temporarily switch the precision mode for the current thread."""
    previous = getattr(_state, "mode", None)
    set_mode(mode)
    try:
        yield
    finally:
        _state.mode = previous


def compensated():
    return get_mode() == "dd"
