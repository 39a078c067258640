#!/usr/bin/env python3
"""
Light deflection and perihelion precession in the Schwarzschild metric.

All lengths are in geometrised units: gm = G M / c^2.  Exact values come from
quadrature of the orbit integrals; the PMS values are the first-order
(deflection) and second-order (precession) closed forms of the delta
expansion, written so that they vanish for gm = 0.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

import numerics
from config import G_OVER_C2, SOLAR_MASS, resolve
from errors import DomainError
from lde_core import Interpolant, TurningPointIntegral, constant

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MetricParams:
    gm: float

    def __post_init__(self):
        if not self.gm >= 0.0:
            raise DomainError(f"gm must be non-negative, got {self.gm}")

    def b(self, r):
        """B(r) = 1 - 2GM/r"""
        return 1.0 - 2.0 * self.gm / r


@dataclass(frozen=True)
class DeflectionInput:
    r0: float

    def __post_init__(self):
        if not self.r0 > 0.0:
            raise DomainError(f"closest approach must be positive, got {self.r0}")


@dataclass(frozen=True)
class OrbitInput:
    r_minus: float
    r_plus: float

    def __post_init__(self):
        if not 0.0 < self.r_minus <= self.r_plus:
            raise DomainError(f"need 0 < r- <= r+, got r-={self.r_minus}, r+={self.r_plus}")

    @property
    def semimajor_axis(self):
        return 0.5 * (self.r_minus + self.r_plus)

    @property
    def semilatus_rectum(self):
        return 2.0 / (1.0 / self.r_plus + 1.0 / self.r_minus)

    @property
    def eccentricity(self):
        return (self.r_plus - self.r_minus) / (self.r_plus + self.r_minus)

    @property
    def z_plus(self):
        return 1.0 / self.r_minus

    @property
    def z_minus(self):
        return 1.0 / self.r_plus


def gm_from_mass(mass=SOLAR_MASS, g_over_c2=G_OVER_C2):
    """Geometrised mass G M / c^2 in metres"""
    return g_over_c2 * mass


def photon_sphere(m):
    """(exact, first-order PMS) photon-sphere radii: 3 GM and 8 GM / pi"""
    return 3.0 * m.gm, 8.0 * m.gm / math.pi


# Light deflection


def deflection_exact(m, d, settings=None):
    """Deflection angle from quadrature of the orbit integral.

    With w = r0 z, eps = GM/r0 and 1 - w = v^2 the angle is
    4 int_0^1 [Q(w)^-1/2 - (1+w)^-1/2] dv, Q(w) = (1+w) - 2 eps (1+w+w^2);
    the flat-space part integrates to pi and is subtracted under the integral.
    """
    settings = resolve(settings)
    if m.gm == 0.0:
        return 0.0
    if not d.r0 > 3.0 * m.gm:
        raise DomainError(f"r0 = {d.r0} is inside the photon sphere 3GM = {3.0 * m.gm}")
    eps = m.gm / d.r0
    # Q at v = 0, exact near the photon sphere
    gap = 2.0 * (d.r0 - 3.0 * m.gm) / d.r0

    def integrand(v):
        v2 = v * v
        flat = 2.0 - v2
        pull = 2.0 * eps * (3.0 - 3.0 * v2 + v2 * v2)
        q = gap - v2 * (1.0 - 6.0 * eps) - 2.0 * eps * v2 * v2
        sq, sf = np.sqrt(q), np.sqrt(flat)
        return pull / (sq * sf * (sq + sf))

    value, error = numerics.adaptive_gauss_legendre(integrand, 0.0, 1.0, tol=settings.deflection_tol, settings=settings)
    logger.debug("deflection_exact eps=%g -> %.17g (err %.2g)", eps, 4.0 * value, 4.0 * error)
    return 4.0 * value


def deflection_pms(m, d):
    """pi (1 - 8GM/(pi r0))^-1/2 - pi"""
    x = 8.0 * m.gm / (math.pi * d.r0)
    if not x < 1.0:
        raise DomainError(f"r0 = {d.r0} is inside the first-order photon sphere 8GM/pi = {8.0 * m.gm / math.pi}")
    return math.pi * math.expm1(-0.5 * math.log1p(-x))


def deflection_lambda_pms(m, d):
    """lambda^2 = -8 GM r0^2 / pi (the interpolant coefficient r0^3 + lambda^2 stays positive above 8GM/pi)"""
    return -8.0 * m.gm * d.r0 ** 2 / math.pi


def deflection_weak_field(m, d):
    """Einstein's 4GM/r0"""
    return 4.0 * m.gm / d.r0


def deflection_integral(m, d):
    """2 r0^{3/2} int_0^{1/r0} dz / sqrt(r0 - 2GM - r0^3 z^2 + 2GM r0^3 z^3); the angle is this minus pi"""
    r0, gm = d.r0, m.gm
    r3 = r0 ** 3
    return TurningPointIntegral(
        nu=-0.5,
        x_minus=0.0,
        x_plus=1.0 / r0,
        big_f=r0 - 2.0 * gm,
        f=lambda z: r3 * np.square(z) * (1.0 - 2.0 * gm * z),
        g=constant(2.0 * r0 ** 1.5),
        turning=(False, True),
        name=f"deflection(r0/GM={r0 / gm if gm else math.inf:g})",
    )


def deflection_family(m, d):
    """c -> c z^2 with c = r0^3 + lambda^2; the parameter is the coefficient c"""
    inv_r0_sq = 1.0 / d.r0 ** 2

    def family(c):
        if not c > 0.0:
            raise DomainError(f"interpolant coefficient must be positive, got {c}")
        return Interpolant(f0=lambda z: c * np.square(z), f0_level=c * inv_r0_sq, lam=c)

    return family


# Perihelion precession


def orbit_from_kepler(a, ecc):
    """r+- = a (1 +- eps)"""
    if not a > 0.0:
        raise DomainError(f"semimajor axis must be positive, got {a}")
    if not 0.0 <= ecc < 1.0:
        raise DomainError(f"eccentricity must lie in [0, 1), got {ecc}")
    return OrbitInput(r_minus=a * (1.0 - ecc), r_plus=a * (1.0 + ecc))


def orbit_constants(m, o):
    """(E, J^2) of the bound orbit through r- and r+"""
    if o.r_plus == o.r_minus:
        raise DomainError("orbit constants are undefined for a circular orbit (r+ = r-)")
    rp, rm = o.r_plus, o.r_minus
    bp, bm = m.b(rp), m.b(rm)
    if not (bp > 0.0 and bm > 0.0):
        raise DomainError("orbit crosses the horizon r = 2GM")
    energy = (rp * rp / bp - rm * rm / bm) / (rp * rp - rm * rm)
    j2 = (1.0 / bp - 1.0 / bm) / (1.0 / (rp * rp) - 1.0 / (rm * rm))
    return energy, j2


def _check_bound(m, o):
    L = o.semilatus_rectum
    if not L > 6.0 * m.gm:
        raise DomainError(f"semilatus rectum L = {L} must exceed 6GM = {6.0 * m.gm}")
    if not 2.0 * m.gm * (2.0 * o.z_plus + o.z_minus) < 1.0:
        raise DomainError("orbit plunges: 1 - 2GM(z + z- + z+) vanishes at perihelion")


def precession_exact(m, o, settings=None):
    """Precession per orbit from Chebyshev-Gauss quadrature of the z = 1/r integral.

    dtheta = 2 int dz / sqrt((z+ - z)(z - z-)) [1 - 2GM(z + z- + z+)]^-1/2 - 2 pi,
    summed as (2 pi / n) sum (f_k - 1) so that no 2 pi cancellation occurs.
    """
    settings = resolve(settings)
    if m.gm == 0.0:
        return 0.0
    _check_bound(m, o)
    zp, zm, gm = o.z_plus, o.z_minus, m.gm
    mid, half = 0.5 * (zp + zm), 0.5 * (zp - zm)

    def excess(t):
        z = mid + half * t
        return np.expm1(-0.5 * np.log1p(-2.0 * gm * (z + zm + zp)))

    value, nodes = numerics.chebyshev_gauss_doubling(
        excess, settings.chebyshev_tol, start=settings.chebyshev_start, max_nodes=settings.chebyshev_max_nodes
    )
    logger.debug("precession_exact gm/L=%g -> %.17g with %d nodes", gm / o.semilatus_rectum, 2.0 * value, nodes)
    return 2.0 * value


def precession_pms(m, o):
    """Second-order PMS precession.

    2 pi [ (a (4L^2 - 48 GM L + 147 GM^2) - 3 GM^2 L) / (4 a (L - 6GM)^2 sqrt(1 - 6GM/L)) - 1 ],
    evaluated as one fraction over a common denominator with expm1/log1p.
    """
    L = o.semilatus_rectum
    a = o.semimajor_axis
    if not L > 6.0 * m.gm:
        raise DomainError(f"semilatus rectum L = {L} must exceed 6GM = {6.0 * m.gm}")
    t = m.gm / L
    # 4 (1 - 6t)^{5/2} = 4 + 4 expm1(2.5 log1p(-6t))
    numerator = -48.0 * t + 147.0 * t * t - 3.0 * t * t * L / a - 4.0 * math.expm1(2.5 * math.log1p(-6.0 * t))
    denominator = 4.0 * (1.0 - 6.0 * t) ** 2.5
    return 2.0 * math.pi * numerator / denominator


def precession_lambda_pms(m, o):
    """sqrt(6 GM / L)"""
    return math.sqrt(6.0 * m.gm / o.semilatus_rectum)


def precession_leading(m, o):
    """6 pi GM / L"""
    return 6.0 * math.pi * m.gm / o.semilatus_rectum


def precession_integral(m, o):
    """2 int dz / sqrt((z+ - z)(z - z-)(1 - 2GM(z + z- + z+))); the precession is this minus 2 pi"""
    zp, zm, gm = o.z_plus, o.z_minus, m.gm
    if zp == zm:
        raise DomainError("a circular orbit has no turning-point integral")
    return TurningPointIntegral(
        nu=-0.5,
        x_minus=zm,
        x_plus=zp,
        big_f=0.0,
        f=lambda z: -(zp - z) * (z - zm) * (1.0 - 2.0 * gm * (z + zm + zp)),
        g=constant(2.0),
        name=f"precession(GM/L={gm / o.semilatus_rectum:g})",
    )


def precession_family(m, o):
    """lambda -> -(1 - lambda^2)(z+ - z)(z - z-)"""
    zp, zm = o.z_plus, o.z_minus

    def family(lam):
        kappa = 1.0 - lam * lam
        if not kappa > 0.0:
            raise DomainError(f"1 - lambda^2 must be positive, got {kappa}")
        return Interpolant(f0=lambda z: -kappa * (zp - z) * (z - zm), f0_level=0.0, lam=lam)

    return family
