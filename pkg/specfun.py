#!/usr/bin/env python3
"""
Special functions for the delta-expansion toolkit.

Generalised binomial coefficients, the terminating 2F1(1/2, -n; 1; z),
the Bessel function J1, the complete elliptic integral K (modulus
convention) and complex inverse powers.  Every function is pure.
"""

import logging
import math
from fractions import Fraction

import numpy as np

from errors import DomainError

logger = logging.getLogger(__name__)

# |x| above this goes through the trapezoid rule
J1_SERIES_LIMIT = 4.0
J1_ACCURACY_LIMIT = 20.0


def binomial_coefficient_nu(nu, n):
    """Gamma(nu+1) / (Gamma(nu-n+1) n!) by the product recurrence.

    Never touches a pole of Gamma: for integer nu >= 0 and n > nu one factor
    of the product is exactly zero.
    """
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    c = 1.0
    for k in range(n):
        c *= (nu - k) / (k + 1)
    return c


def binomial_coefficients_nu(nu, order):
    """Coefficients for n = 0..order as an array"""
    out = np.empty(order + 1)
    c = 1.0
    for k in range(order + 1):
        out[k] = c
        c *= (nu - k) / (k + 1)
    return out


def hyp2f1_half(n, z):
    """2F1(1/2, -n; 1; z) as its terminating sum of n+1 terms.

    The sum is carried out in exact rational arithmetic on the binary value
    of z and rounded once, so the result is correctly rounded even where the
    terms cancel (z = 2 loses about n*log10(3) digits in floating point).
    """
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    if not math.isfinite(z):
        raise DomainError(f"z must be finite, got {z}")
    zq = Fraction(z)
    term = Fraction(1)
    total = Fraction(1)
    for k in range(n):
        term = term * (Fraction(2 * k + 1, 2) * (k - n)) / ((k + 1) ** 2) * zq
        total += term
    return float(total)


def _j1_series(x):
    # sum_k (-1)^k (x/2)^(2k+1) / (k! (k+1)!)
    half = 0.5 * x
    q = -half * half
    term = half
    terms = [term]
    k = 0
    while abs(term) > 1e-18 * abs(half) and k < 60:
        k += 1
        term *= q / (k * (k + 1))
        terms.append(term)
    return math.fsum(terms)


def _j1_trapezoid(x):
    # J1(x) = (1/2pi) int_0^{2pi} cos(theta - x sin theta) dtheta, periodic
    points = max(64, int(abs(x)) + 64)
    theta = 2.0 * math.pi * np.arange(points) / points
    values = np.cos(theta - x * np.sin(theta))
    return math.fsum(values.tolist()) / points


def bessel_j1(x):
    """Bessel function of the first kind of order one.

    Ascending series for |x| <= 4, trapezoid rule on the periodic integral
    representation beyond (exponentially convergent).  The documented
    accuracy envelope is |x| <= 20; larger arguments are computed the same
    way and logged.
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"x must be finite, got {x}")
    if x == 0.0:
        return 0.0
    if x < 0.0:
        return -bessel_j1(-x)
    if x <= J1_SERIES_LIMIT:
        return _j1_series(x)
    if x > J1_ACCURACY_LIMIT:
        logger.warning("bessel_j1(%g) is outside the |x| <= %g accuracy envelope", x, J1_ACCURACY_LIMIT)
    return _j1_trapezoid(x)


def elliptic_k(k):
    """Complete elliptic integral of the first kind, modulus convention.

    K(k) = int_0^{pi/2} dtheta / sqrt(1 - k^2 sin^2 theta) = pi / (2 AGM(1, k')).
    """
    k = float(k)
    if not 0.0 <= k < 1.0:
        raise DomainError(f"elliptic_k needs 0 <= k < 1, got {k}")
    a = 1.0
    b = math.sqrt((1.0 - k) * (1.0 + k))
    for _ in range(64):
        if abs(a - b) <= 1e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (a + b)


def complex_inverse_power(base, s):
    """base^(-s) for positive real base and complex s.

    Accepts a scalar or an array of bases.  The modulus comes from a real
    power and the phase from cos/sin of tau*ln(base).
    """
    s = complex(s)
    sigma, tau = s.real, s.imag
    b = np.asarray(base, dtype=float)
    if np.any(b <= 0.0):
        raise DomainError("complex_inverse_power needs a positive base")
    modulus = np.power(b, -sigma)
    if tau == 0.0:
        out = modulus + 0j
    else:
        phase = tau * np.log(b)
        out = modulus * np.cos(phase) - 1j * (modulus * np.sin(phase))
    if out.ndim == 0:
        return complex(out)
    return out
