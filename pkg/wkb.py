#!/usr/bin/env python3
"""
Spectrum of the quartic anharmonic oscillator V(x) = m w^2 x^2 / 2 + mu x^4 / 4.

Three independent routes:

* the higher-order WKB condition
      J1(E) - hbar^2/(48 m) J2'(E) + hbar^4/(11520 m^2) J3'''(E) = pi hbar (n + 1/2) / sqrt(2m)
  with the action integrals computed after x = x_t sin(theta),
* the closed asymptotic formula in powers of (n + 1/2)^(2/3),
* diagonalisation of the Hamiltonian in a harmonic-oscillator basis (oracle).
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import torch
from scipy.optimize import brentq

import numerics
from config import resolve
from errors import BracketError, ConvergenceError, DomainError

logger = logging.getLogger(__name__)

HALF_PI = 0.5 * math.pi
WKB_ORDERS = (0, 2, 4)

# coefficients of the asymptotic formula
E1_COEFF = 0.867146
E2_COEFF = 0.42551
E3_COEFF = -0.0466914
E4_COEFF_A = 0.030669
E4_COEFF_B = 0.00424238


@dataclass(frozen=True)
class AnharmonicParams:
    hbar: float
    mass: float
    omega: float
    mu: float

    def __post_init__(self):
        if not self.hbar > 0.0:
            raise DomainError(f"hbar must be positive, got {self.hbar}")
        if not self.mass > 0.0:
            raise DomainError(f"mass must be positive, got {self.mass}")
        if not self.omega >= 0.0:
            raise DomainError(f"omega must be non-negative, got {self.omega}")
        if not self.mu >= 0.0:
            raise DomainError(f"quartic coupling must be non-negative, got {self.mu}")
        if self.mu == 0.0 and self.omega == 0.0:
            raise DomainError("omega and mu cannot both vanish")

    @property
    def spring(self):
        """m w^2"""
        return self.mass * self.omega ** 2

    @property
    def coupling(self):
        """Dimensionless mu hbar / (m^2 w^3); infinite for the pure quartic"""
        if self.omega == 0.0:
            return math.inf
        return self.mu * self.hbar / (self.mass ** 2 * self.omega ** 3)

    def potential(self, x):
        x2 = np.square(x)
        return 0.5 * self.spring * x2 + 0.25 * self.mu * x2 * x2

    def dv(self, x):
        return self.spring * x + self.mu * x ** 3

    def d2v(self, x):
        return self.spring + 3.0 * self.mu * np.square(x)

    def d3v(self, x):
        return 6.0 * self.mu * x


@dataclass(frozen=True)
class LevelSolve:
    n: int
    energy: float
    residual: float
    bracket: Tuple[float, float]
    order: int = 4


@dataclass(frozen=True)
class AsymptoticCoeffs:
    e1: float
    e2: float
    e3: float
    e4: float


def _turning_point_sq(p, energy):
    # root of mu y^2/4 + m w^2 y/2 = E, written without cancellation
    k = p.spring
    return 4.0 * energy / (k + math.sqrt(k * k + 4.0 * p.mu * energy))


def turning_points(p, energy):
    """(-x_t, x_t) with V(x_t) = E"""
    if not energy > 0.0:
        raise DomainError(f"energy must be positive, got {energy}")
    xt = math.sqrt(_turning_point_sq(p, energy))
    return -xt, xt


def _integrands(p, energy):
    # E - V = x_t^2 cos^2(theta) Q(theta), Q = m w^2/2 + mu x_t^2 (1 + sin^2)/4
    y = _turning_point_sq(p, energy)
    xt = math.sqrt(y)

    def integrand(theta):
        s = np.sin(theta)
        c = np.cos(theta)
        x = xt * s
        q = 0.5 * p.spring + 0.25 * p.mu * y * (1.0 + s * s)
        root_q = np.sqrt(q)
        d2 = p.d2v(x)
        return np.stack([
            y * c * c * root_q,
            d2 / root_q,
            (7.0 * d2 * d2 - 5.0 * p.dv(x) * p.d3v(x)) / root_q,
        ])

    return integrand


def _converged_actions(p, energy, settings):
    return numerics.gauss_legendre_doubling(
        _integrands(p, energy),
        -HALF_PI,
        HALF_PI,
        settings.wkb_quad_tol,
        start=settings.wkb_nodes,
        max_nodes=settings.wkb_max_nodes,
    )


def action_integrals(p, energy, settings=None):
    """(J1, J2, J3) at energy E by Gauss-Legendre with node doubling"""
    settings = resolve(settings)
    if not energy > 0.0:
        raise DomainError(f"energy must be positive, got {energy}")
    values, _ = _converged_actions(p, energy, settings)
    return float(values[0]), float(values[1]), float(values[2])


def _fixed_rule(p, index, nodes):
    # same rule at every stencil point keeps the differences smooth in E
    return lambda e: float(numerics.gauss_legendre_fixed(_integrands(p, e), -HALF_PI, HALF_PI, nodes)[index])


def wkb_lambda(p, energy, order=4, settings=None):
    """Left-hand side of the WKB condition including hbar corrections up to hbar^order.

    J2' uses central differences with step wkb_step*E; J3''' uses the
    five-point stencil with the wider wkb_third_step*E (the cubic division
    amplifies rounding); both are Richardson-extrapolated twice.
    """
    settings = resolve(settings)
    if order not in WKB_ORDERS:
        raise DomainError(f"order must be one of {WKB_ORDERS}, got {order}")
    if not energy > 0.0:
        raise DomainError(f"energy must be positive, got {energy}")
    if energy < 1e-280:
        raise DomainError(f"energy {energy} is too small for finite-difference steps")
    values, nodes = _converged_actions(p, energy, settings)
    value = float(values[0])
    if order >= 2:
        dj2 = numerics.central_derivative(_fixed_rule(p, 1, nodes), energy, settings.wkb_step * energy, levels=2)
        value -= p.hbar ** 2 / (48.0 * p.mass) * dj2
    if order >= 4:
        d3j3 = numerics.central_third_derivative(
            _fixed_rule(p, 2, nodes), energy, settings.wkb_third_step * energy, levels=2
        )
        value += p.hbar ** 4 / (11520.0 * p.mass ** 2) * d3j3
    return value


def quantization_target(p, n):
    """pi hbar (n + 1/2) / sqrt(2m)"""
    return math.pi * p.hbar * (n + 0.5) / math.sqrt(2.0 * p.mass)


def asymptotic_coeffs(p):
    if not p.mu > 0.0:
        raise DomainError("the asymptotic formula needs mu > 0")
    hbar, m, w, mu = p.hbar, p.mass, p.omega, p.mu
    quartic_scale = (mu * hbar ** 4 / m ** 2) ** (1.0 / 3.0)
    e1 = E1_COEFF * quartic_scale
    e2 = E2_COEFF * (hbar * m / math.sqrt(mu)) ** (2.0 / 3.0) * w ** 2
    e3 = E3_COEFF * m ** 2 * w ** 4 / mu
    e4 = E4_COEFF_A * quartic_scale + E4_COEFF_B * (m ** 10 * w ** 6 / (mu ** 5 * hbar ** 2)) ** (1.0 / 3.0)
    return AsymptoticCoeffs(e1, e2, e3, e4)


def asymptotic_energy(p, n):
    """e1 (n+1/2)^{4/3} + e2 (n+1/2)^{2/3} + e3 + e4 (n+1/2)^{-2/3}"""
    if n < 0:
        raise DomainError(f"quantum number must be non-negative, got {n}")
    e = asymptotic_coeffs(p)
    k = (n + 0.5) ** (2.0 / 3.0)
    return e.e1 * k * k + e.e2 * k + e.e3 + e.e4 / k


def _initial_guess(p, n):
    harmonic = p.hbar * p.omega * (n + 0.5)
    if p.coupling < 1.0:
        return harmonic
    guess = asymptotic_energy(p, n)
    return guess if guess > 0.0 else max(harmonic, p.hbar * p.omega)


def solve_level(p, n, order=4, settings=None):
    """Energy of level n from the WKB condition (Brent's method on a geometric bracket)"""
    settings = resolve(settings)
    if n < 0:
        raise DomainError(f"quantum number must be non-negative, got {n}")
    target = quantization_target(p, n)

    def residual(e):
        return wkb_lambda(p, e, order, settings) - target

    guess = _initial_guess(p, n)
    lo, hi = 0.5 * guess, 2.0 * guess
    f_lo, f_hi = residual(lo), residual(hi)
    for _ in range(settings.wkb_bracket_expansions):
        if f_lo < 0.0 < f_hi:
            break
        if f_lo >= 0.0:
            lo *= 0.5
            f_lo = residual(lo)
        if f_hi <= 0.0:
            hi *= 2.0
            f_hi = residual(hi)
        logger.debug("level %d: bracket widened to [%g, %g]", n, lo, hi)
    else:
        if not f_lo < 0.0 < f_hi:
            raise BracketError(f"no sign change for level {n}", lo, hi, f_lo, f_hi)

    energy = brentq(residual, lo, hi, xtol=1e-15 * hi, rtol=4.0 * np.finfo(float).eps, maxiter=200)
    res = abs(residual(energy))
    if res > settings.wkb_solve_tol * target:
        logger.warning("level %d: residual %.3g above tolerance", n, res)
    return LevelSolve(n=n, energy=energy, residual=res, bracket=(lo, hi), order=order)


def solve_spectrum(p, n_max, order=4, settings=None):
    """Levels 0..n_max"""
    if n_max < 0:
        raise DomainError(f"n_max must be non-negative, got {n_max}")
    return [solve_level(p, n, order, settings) for n in range(n_max + 1)]


def _basis_frequency(p):
    return max(p.omega, (3.0 * p.mu * p.hbar / p.mass ** 2) ** (1.0 / 3.0))


def _hamiltonian(p, size, freq):
    # x = sqrt(hbar / (2 m W)) (a + a^dagger); pad by 4 so x^4 is exact in the kept block
    padded = size + 4
    off = np.sqrt(np.arange(1, padded))
    x = math.sqrt(p.hbar / (2.0 * p.mass * freq)) * (np.diag(off, 1) + np.diag(off, -1))
    x2 = x @ x
    x4 = x2 @ x2
    h = 0.5 * p.mass * (p.omega ** 2 - freq ** 2) * x2[:size, :size] + 0.25 * p.mu * x4[:size, :size]
    h[np.diag_indices(size)] += p.hbar * freq * (np.arange(size) + 0.5)
    return h


def _parity_eigenvalues(h):
    values = []
    for parity in (0, 1):
        block = torch.from_numpy(np.ascontiguousarray(h[parity::2, parity::2])).to(torch.float64)
        values.append(torch.linalg.eigvalsh(block).numpy())
    return np.sort(np.concatenate(values))


def exact_spectrum_oracle(p, n_max, settings=None, basis_frequency=None):
    """Lowest n_max + 1 eigenvalues by parity-split diagonalisation, doubling the basis until settled"""
    settings = resolve(settings)
    if n_max < 0:
        raise DomainError(f"n_max must be non-negative, got {n_max}")
    freq = _basis_frequency(p) if basis_frequency is None else basis_frequency
    size = max(settings.oracle_basis, 4 * (n_max + 1))
    previous = _parity_eigenvalues(_hamiltonian(p, size, freq))[: n_max + 1]
    while size < settings.oracle_max_basis:
        size *= 2
        current = _parity_eigenvalues(_hamiltonian(p, size, freq))[: n_max + 1]
        change = float(np.max(np.abs(current - previous) / np.abs(current)))
        logger.debug("oracle basis %d: max relative change %.3g", size, change)
        if change < settings.oracle_tol:
            return current.tolist()
        previous = current
    raise ConvergenceError(
        "spectrum oracle did not settle",
        estimate=previous.tolist(),
        error=change,
        details={"basis": size, "basis_frequency": freq},
    )
