"""Working precision and comparison tolerance for high-precision reals.

All log quantities are carried as :class:`mpmath.mpf` values. The binary
precision lives in mpmath's global context; the comparison tolerance is
kept in a context variable so it can be overridden per call site.
"""
from __future__ import annotations

import contextlib
import contextvars
import threading
from fractions import Fraction

import mpmath

DEFAULT_PRECISION = 128
MIN_PRECISION = 64

_tolerance_override: contextvars.ContextVar = contextvars.ContextVar("tolerance", default=None)

# mpmath's precision is process-global; concurrent callers must serialize.
compute_lock = threading.RLock()

mpmath.mp.prec = DEFAULT_PRECISION


def precision() -> int:
    return mpmath.mp.prec


def tolerance():
    """Current tolerance: the override if one is set, else ``2**(-prec/2)``."""
    tol = _tolerance_override.get()
    if tol is not None:
        return tol
    return mpmath.ldexp(mpmath.mpf(1), -(mpmath.mp.prec // 2))


def tolerance_override():
    """The explicitly set tolerance, or ``None`` when the default applies."""
    return _tolerance_override.get()


@contextlib.contextmanager
def working_precision(bits: int = DEFAULT_PRECISION, tol=None):
    if bits < MIN_PRECISION:
        raise ValueError(f"precision must be at least {MIN_PRECISION} bits, got {bits}")
    if tol is not None and mpmath.mpf(tol) <= 0:
        raise ValueError("tolerance must be positive")
    with compute_lock:
        old = mpmath.mp.prec
        mpmath.mp.prec = bits
        token = _tolerance_override.set(None if tol is None else mpmath.mpf(tol))
        try:
            yield
        finally:
            _tolerance_override.reset(token)
            mpmath.mp.prec = old


def to_mpf(x):
    """Convert ints, Fractions, decimal strings and floats to mpf."""
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, str):
        return mpmath.mpf(x.strip())
    return mpmath.mpf(x)


def close(a, b, tol=None) -> bool:
    if tol is None:
        tol = tolerance()
    return abs(a - b) <= tol


def fmt(x, digits: int | None = None) -> str:
    """Deterministic decimal rendering, sized to the working precision."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    if digits is None:
        digits = max(15, int(mpmath.mp.prec * 0.30103) - 6)
    return mpmath.nstr(mpmath.mpf(x), digits)
