#!/usr/bin/env python3
"""
Exception hierarchy shared by the delta-expansion toolkit.

DomainError marks a violated precondition (bad parameter, point outside the
convergence region, photon sphere crossed).  ConvergenceError marks a
numerical procedure that ran out of refinements; it keeps the best estimate
so callers can still report it.
"""


class LdeError(Exception):
    """Base class for every error raised by the toolkit"""


class DomainError(LdeError, ValueError):
    """A value lies outside the region where the operation is defined"""


class ConvergenceError(LdeError, RuntimeError):
    """A numerical procedure failed to reach its tolerance"""

    def __init__(self, message, estimate=None, error=None, details=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
        self.details = dict(details or {})

    def __str__(self):
        text = super().__str__()
        if self.error is not None:
            text += f" (estimate={self.estimate!r}, error={self.error:.3g})"
        if self.details:
            extra = ", ".join(f"{k}={v}" for k, v in self.details.items())
            text += f" [{extra}]"
        return text


class BracketError(ConvergenceError):
    """No sign change found while bracketing a root"""

    def __init__(self, message, lower, upper, f_lower, f_upper):
        super().__init__(
            message,
            details={"lower": lower, "upper": upper, "f_lower": f_lower, "f_upper": f_upper},
        )
        self.lower = lower
        self.upper = upper
        self.f_lower = f_lower
        self.f_upper = f_upper
