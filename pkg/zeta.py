#!/usr/bin/env python3
"""
Accelerated series for the Riemann zeta function.

    zeta(s) = 2^{s-1}/(2^{s-1} - 1) sum_k (1+lambda)^{-(k+1)}
              sum_{j<=k} C(k, j) lambda^{k-j} (-1)^j (1+j)^{-s}

The value does not depend on lambda > 0; truncations do, and the first-order
PMS choice on the real axis is lambda = 2^{-s}.  lambda = 1 is Knopp's
series.  The inner sum is a binomial average: with v = 1/(1+lambda),
w = lambda/(1+lambda) each outer term is v sum_j Bin(j; k, v) (-1)^j (1+j)^{-s},
and the binomial weights are built from log-gamma so they never overflow.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import gammaln, xlogy

from config import resolve
from errors import DomainError
from numerics import compensated_cumsum
from specfun import complex_inverse_power

logger = logging.getLogger(__name__)

# B_2 .. B_12
BERNOULLI = (1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0)


@dataclass(frozen=True)
class ZetaSeriesParams:
    s: complex
    lam: float
    terms: int

    def __post_init__(self):
        object.__setattr__(self, "s", complex(self.s))
        if not self.lam > 0.0:
            raise DomainError(f"lambda must be positive, got {self.lam}")
        if self.terms < 0:
            raise DomainError(f"number of terms must be non-negative, got {self.terms}")
        _eta_prefactor(self.s)


def _eta_prefactor(s):
    """2^{s-1} / (2^{s-1} - 1)"""
    if s == 1:
        raise DomainError("the series has a pole at s = 1")
    p = complex_inverse_power(2.0, 1.0 - s)
    if abs(p - 1.0) < 1e-14:
        raise DomainError(f"2^(s-1) = 1 at s = {s}")
    return p / (p - 1.0)


def _fsum_complex(values):
    return complex(math.fsum(values.real.tolist()), math.fsum(values.imag.tolist()))


def _outer_terms(s, lam, terms):
    # lam may be 0 here: the weights collapse onto j = k (alternating eta series)
    s = complex(s)
    v = 1.0 / (1.0 + lam)
    w = lam / (1.0 + lam)
    dirichlet = np.atleast_1d(complex_inverse_power(np.arange(1, terms + 2, dtype=float), s))
    signed = dirichlet * np.where(np.arange(terms + 1) % 2 == 0, 1.0, -1.0)
    out = np.empty(terms + 1, dtype=complex)
    for k in range(terms + 1):
        j = np.arange(k + 1)
        log_weight = gammaln(k + 1.0) - gammaln(j + 1.0) - gammaln(k - j + 1.0) + xlogy(k - j, w) + xlogy(j, v)
        weight = np.exp(log_weight)
        out[k] = v * _fsum_complex(weight * signed[: k + 1])
    return out


def accelerated_terms(p):
    """Outer terms k = 0..K including the eta prefactor"""
    return _eta_prefactor(p.s) * _outer_terms(p.s, p.lam, p.terms)


def zeta_partial_sums(p):
    """Partial sums for K' = 0..K"""
    return compensated_cumsum(accelerated_terms(p))


def _as_value(z, s):
    return z.real if complex(s).imag == 0.0 else z


def zeta_accelerated(p):
    """Truncated accelerated series; real for real s"""
    total = _eta_prefactor(p.s) * _fsum_complex(_outer_terms(p.s, p.lam, p.terms))
    return _as_value(total, p.s)


def zeta_lambda_pms(s):
    """First-order PMS parameter 2^{-s} for real s >= 2"""
    s = float(s)
    if not s >= 2.0:
        raise DomainError(f"the first-order PMS value needs real s >= 2, got {s}")
    return 2.0 ** (-s)


def zeta_critical(tau, lam, terms):
    """Accelerated series on the critical line s = 1/2 + i tau"""
    return complex(zeta_accelerated(ZetaSeriesParams(complex(0.5, tau), lam, terms)))


def knopp_series(s, terms):
    """lambda = 1"""
    return zeta_accelerated(ZetaSeriesParams(s, 1.0, terms))


def direct_sum(s, terms):
    """Plain Dirichlet sum over n = 0..K of (n+1)^{-s}"""
    values = np.atleast_1d(complex_inverse_power(np.arange(1, terms + 2, dtype=float), s))
    return _as_value(_fsum_complex(values), s)


def zeta_reference(s, terms=None, settings=None):
    """Euler-Maclaurin reference value with Bernoulli corrections through B12.

    N = max(50, ceil(1.5 |s|)) direct terms unless given, which keeps the
    remainder below 1e-12 up to |Im s| = 100.
    """
    settings = resolve(settings)
    s = complex(s)
    if s == 1:
        raise DomainError("zeta has a pole at s = 1")
    if not s.real > 0.0:
        raise DomainError(f"the reference needs Re(s) > 0, got {s}")
    if abs(s) > settings.zeta_max_modulus:
        raise DomainError(f"|s| = {abs(s):g} is beyond the reference range {settings.zeta_max_modulus:g}")
    n = terms if terms is not None else max(settings.zeta_reference_terms, math.ceil(1.5 * abs(s)))
    head = np.atleast_1d(complex_inverse_power(np.arange(1, n, dtype=float), s))
    parts = list(head)
    n_pow = complex_inverse_power(float(n), s)  # N^{-s}
    parts.append(n * n_pow / (s - 1.0))
    parts.append(0.5 * n_pow)
    rising = s  # s (s+1) ... (s + 2k - 2)
    factorial = 2.0
    power = n_pow / n  # N^{-s-1}
    for k, b in enumerate(BERNOULLI, start=1):
        parts.append(b / factorial * rising * power)
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        factorial *= (2 * k + 1) * (2 * k + 2)
        power /= n * n
    total = _fsum_complex(np.array(parts, dtype=complex))
    return _as_value(total, s)


def lambda_scan(s, lambdas, terms, reference=None):
    """(lambda, |S_K(lambda) - zeta(s)|) over a grid of lambda"""
    ref = zeta_reference(s) if reference is None else reference
    rows = []
    for lam in lambdas:
        value = zeta_accelerated(ZetaSeriesParams(s, float(lam), terms))
        rows.append((float(lam), abs(value - ref)))
    return rows


def refine_lambda(s, terms, bracket=(1e-3, 1.0)):
    """lambda minimising the last retained term |S_K - S_{K-1}|"""
    if terms < 1:
        raise DomainError("refining lambda needs at least two partial sums")
    lo, hi = bracket
    if not 0.0 < lo < hi:
        raise DomainError(f"invalid bracket {bracket!r}")

    def last_term(lam):
        return abs(_outer_terms(s, lam, terms)[-1])

    result = minimize_scalar(last_term, bounds=(lo, hi), method="bounded", options={"xatol": 1e-8})
    logger.debug("refined lambda for s=%s, K=%d: %.8g", s, terms, result.x)
    return float(result.x)
