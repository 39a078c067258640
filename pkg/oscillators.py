#!/usr/bin/env python3
"""
Periods of the Duffing oscillator and of the nonlinear pendulum.

Both periods are T = int sqrt(2) / sqrt(E - V(x)) dx between the turning
points, interpolated with the harmonic potential c x^2 / 2 (c = 1 + lambda^2).
Closed forms cover the first-order PMS results and the full Duffing series;
the elliptic integral K gives the exact periods.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from errors import DomainError
from lde_core import DeltaExpansion, Interpolant, TurningPointIntegral, constant
from numerics import compensated_cumsum
from specfun import bessel_j1, binomial_coefficient_nu, elliptic_k, hyp2f1_half

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class DuffingParams:
    """Unit mass in V(x) = x^2/2 + mu x^4/4 released from amplitude A"""

    mu: float
    amplitude: float

    def __post_init__(self):
        if not self.mu >= 0.0:
            raise DomainError(f"quartic coupling must be non-negative, got {self.mu}")
        if not self.amplitude > 0.0:
            raise DomainError(f"amplitude must be positive, got {self.amplitude}")

    @property
    def coupling(self):
        """mu A^2, the only combination the period depends on (with the harmonic frequency)"""
        return self.mu * self.amplitude ** 2

    @property
    def energy(self):
        a2 = self.amplitude ** 2
        return 0.5 * a2 + 0.25 * self.mu * a2 * a2

    def potential(self, x):
        x2 = np.square(x)
        return 0.5 * x2 + 0.25 * self.mu * x2 * x2


@dataclass(frozen=True)
class PendulumParams:
    """Pendulum V(theta) = 1 - cos(theta) with amplitude 0 < Theta < pi"""

    theta_max: float

    def __post_init__(self):
        if not 0.0 < self.theta_max < math.pi:
            raise DomainError(f"amplitude must lie in (0, pi), got {self.theta_max}")


# Duffing


def duffing_lambda_pms(p):
    """sqrt(3 mu) A / 2"""
    return 0.5 * math.sqrt(3.0 * p.mu) * p.amplitude


def duffing_lambda_threshold(p):
    """Smallest lambda with a convergent series; 0 when mu A^2 < 1 (every lambda works)"""
    k = p.coupling
    if k < 1.0:
        return 0.0
    return math.sqrt(0.5 * k) * math.sqrt(1.0 - 1.0 / k)


def duffing_period_pms(p):
    return 4.0 * math.pi / math.sqrt(4.0 + 3.0 * p.coupling)


def duffing_first_order(p, lam):
    """Truncation at delta^1 of the series, as a closed form in lambda"""
    c = 1.0 + lam * lam
    return TWO_PI / math.sqrt(c) * (1.0 - (0.375 * p.coupling - 0.5 * lam * lam) / c)


def _duffing_delta_coefficients(p, lam):
    # Delta(theta) = alpha + beta sin^2(theta) after x = A sin(theta)
    c = 1.0 + lam * lam
    alpha = (0.5 * p.coupling - lam * lam) / c
    beta = 0.5 * p.coupling / c
    return c, alpha, beta


def duffing_max_delta(p, lam):
    """sup |Delta| for the harmonic interpolant, exact (Delta is linear in sin^2)"""
    _, alpha, beta = _duffing_delta_coefficients(p, lam)
    return max(abs(alpha), abs(alpha + beta))


def _sin2_moment(alpha, beta, n):
    # <(alpha + beta sin^2)^n> over the arcsine measure, for |alpha| << |beta|
    parts = []
    weight = 1.0  # C(n, k) (1/2)_k / k!
    for k in range(n + 1):
        parts.append(weight * beta ** k * alpha ** (n - k))
        weight *= (n - k) / (k + 1) * (k + 0.5) / (k + 1)
    return math.fsum(parts)


def duffing_series(p, lam, order):
    """Partial sums of the closed-form Duffing series at delta = 1.

    t_n = binom(-1/2, n) (2 pi / sqrt(c)) alpha^n 2F1(1/2, -n; 1; -beta/alpha)
    with alpha = (mu A^2 / 2 - lambda^2) / c and beta = mu A^2 / (2c); for
    alpha = 0 the limit (1/2)_n / n! beta^n is used.
    """
    if order < 0:
        raise DomainError(f"order must be non-negative, got {order}")
    c, alpha, beta = _duffing_delta_coefficients(p, lam)
    sup = max(abs(alpha), abs(alpha + beta))
    if sup >= 1.0:
        raise DomainError(
            f"lambda = {lam} is below the convergence threshold "
            f"{duffing_lambda_threshold(p):.6g} (sup|Delta| = {sup:.4g})"
        )
    lead = TWO_PI / math.sqrt(c)
    terms = []
    rising = 1.0  # (1/2)_n / n!
    for n in range(order + 1):
        if alpha == 0.0:
            moment = rising * beta ** n
        elif abs(beta) > 1e6 * abs(alpha):
            moment = _sin2_moment(alpha, beta, n)
        else:
            moment = alpha ** n * hyp2f1_half(n, -beta / alpha)
        terms.append(binomial_coefficient_nu(-0.5, n) * lead * moment)
        rising *= (n + 0.5) / (n + 1)
    sums = compensated_cumsum(terms)
    logger.debug("duffing series mu=%g A=%g lambda=%g order=%d -> %.17g", p.mu, p.amplitude, lam, order, sums[-1])
    return DeltaExpansion(
        order=order,
        terms=tuple(terms),
        partial_sums=tuple(float(s) for s in sums),
        max_abs_delta=sup,
        lam=lam,
    )


def duffing_exact(p):
    """4 / sqrt(1 + mu A^2) K(k), k^2 = mu A^2 / (2 (1 + mu A^2))"""
    k2 = p.coupling
    modulus = math.sqrt(0.5 * k2 / (1.0 + k2))
    return 4.0 / math.sqrt(1.0 + k2) * elliptic_k(modulus)


def duffing_integral(p):
    """The period integral as a TurningPointIntegral"""
    a = p.amplitude
    return TurningPointIntegral(
        nu=-0.5,
        x_minus=-a,
        x_plus=a,
        big_f=p.energy,
        f=p.potential,
        g=constant(SQRT2),
        name=f"duffing(mu={p.mu:g}, A={a:g})",
    )


def duffing_family(p):
    """lambda -> harmonic interpolant (1 + lambda^2) x^2 / 2"""
    a2 = p.amplitude ** 2

    def family(lam):
        c = 1.0 + lam * lam
        return Interpolant(f0=lambda x: 0.5 * c * np.square(x), f0_level=0.5 * c * a2, lam=lam)

    return family


# Pendulum


def pendulum_stiffness_threshold(p):
    """Interpolant stiffness c above which sup |Delta| < 1: (1 - cos Theta) / Theta^2"""
    t = p.theta_max
    return 2.0 * math.sin(0.5 * t) ** 2 / (t * t)


def pendulum_optimal_stiffness(p):
    """c = 1 + lambda^2 = 2 J1(Theta) / Theta at the first-order PMS point"""
    return 2.0 * bessel_j1(p.theta_max) / p.theta_max


def pendulum_period_first_order(p, lambda_sq):
    """First-order period with c = 1 + lambda_sq (lambda_sq may be negative)"""
    c = 1.0 + lambda_sq
    if not c > 0.0:
        raise DomainError(f"1 + lambda^2 must be positive, got {c}")
    ratio = bessel_j1(p.theta_max) / p.theta_max
    return TWO_PI / math.sqrt(c) * 1.5 - TWO_PI / c ** 1.5 * ratio


def pendulum_period_pms(p):
    """pi sqrt(2 Theta / J1(Theta))"""
    return math.pi * math.sqrt(2.0 * p.theta_max / bessel_j1(p.theta_max))


def pendulum_exact(p):
    """4 K(sin(Theta/2))"""
    return 4.0 * elliptic_k(math.sin(0.5 * p.theta_max))


def pendulum_integral(p):
    t = p.theta_max
    return TurningPointIntegral(
        nu=-0.5,
        x_minus=-t,
        x_plus=t,
        big_f=1.0 - math.cos(t),
        f=lambda x: 1.0 - np.cos(x),
        g=constant(SQRT2),
        name=f"pendulum(Theta={t:g})",
    )


def pendulum_family(p):
    """c -> harmonic interpolant c theta^2 / 2; the parameter is the stiffness c itself"""
    t2 = p.theta_max ** 2

    def family(c):
        if not c > 0.0:
            raise DomainError(f"interpolant stiffness must be positive, got {c}")
        return Interpolant(f0=lambda x: 0.5 * c * np.square(x), f0_level=0.5 * c * t2, lam=c)

    return family
