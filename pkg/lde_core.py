#!/usr/bin/env python3
"""
Linear delta expansion of turning-point integrals.

A TurningPointIntegral is I = int_{x-}^{x+} (F - f(x))^nu g(x) dx with
f(x+-) = F.  An Interpolant f0 sharing the turning points turns it into

    I = sum_n binom(nu, n) int (F0 - f0)^nu Delta^n g dx,
    Delta = (F - F0 - f + f0) / (F0 - f0),

which converges when sup |Delta| < 1.  The free parameter of f0 is fixed by
the principle of minimal sensitivity: the truncated sum is made stationary
in that parameter.

Integrals are computed after the substitution x = m + h sin(theta) (or its
one-sided form when only one end is a turning point), which turns the
square-root endpoint behaviour into a smooth integrand.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

import numerics
from config import resolve
from errors import ConvergenceError, DomainError
from specfun import binomial_coefficient_nu, binomial_coefficients_nu

logger = logging.getLogger(__name__)

HALF_PI = 0.5 * math.pi


def constant(value):
    """Vectorised constant function, for weights g(x) = const"""
    return lambda x: np.full(np.shape(x), float(value))


@dataclass(frozen=True)
class TurningPointIntegral:
    """int_{x_minus}^{x_plus} (big_f - f(x))^nu g(x) dx

    `turning` flags which ends are turning points (simple zeros of big_f - f).
    A free end is a regular point of the integrand.
    """

    nu: float
    x_minus: float
    x_plus: float
    big_f: float
    f: Callable
    g: Callable
    turning: Tuple[bool, bool] = (True, True)
    name: str = ""

    def __post_init__(self):
        if not self.nu > -1.0:
            raise DomainError(f"nu must exceed -1 for an integrable singularity, got {self.nu}")
        if not self.x_minus < self.x_plus:
            raise DomainError(f"empty interval [{self.x_minus}, {self.x_plus}]")
        grid = np.linspace(self.x_minus, self.x_plus, 65)
        values = np.asarray(self.f(grid), dtype=float)
        scale = max(abs(self.big_f), float(np.max(np.abs(values))), 1e-300)
        for flag, end, value in zip(self.turning, (self.x_minus, self.x_plus), (values[0], values[-1])):
            if flag and abs(value - self.big_f) > 1e-10 * scale:
                raise DomainError(f"f({end}) = {value} does not reach the level F = {self.big_f}")
        if np.any(values[1:-1] > self.big_f + 1e-10 * scale):
            raise DomainError("f exceeds F inside the interval")

    @property
    def width(self):
        return self.x_plus - self.x_minus


@dataclass(frozen=True)
class Interpolant:
    """Solvable comparison function f0 (bound to its parameter) and its level F0 = f0(x+-)"""

    f0: Callable
    f0_level: float
    lam: float


@dataclass(frozen=True)
class DeltaExpansion:
    order: int
    terms: Tuple[float, ...]
    partial_sums: Tuple[float, ...]
    max_abs_delta: float
    lam: float = math.nan

    @property
    def value(self):
        return self.partial_sums[-1]

    @property
    def converged(self):
        return self.max_abs_delta < 1.0


@dataclass(frozen=True)
class PmsSolution:
    lambda_opt: float
    residual: float
    bracket: Tuple[float, float]
    order: Optional[int] = None
    fallback: bool = False
    scan: Tuple[Tuple[float, float], ...] = field(default=(), repr=False)


def _substitution(spec):
    """(lower, upper, x(theta), dx/dtheta) for the smoothing change of variable"""
    a, b = spec.x_minus, spec.x_plus
    left, right = spec.turning
    if left and right:
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        return -HALF_PI, HALF_PI, (lambda t: mid + half * np.sin(t)), (lambda t: half * np.cos(t))
    w = b - a
    if right:
        return 0.0, HALF_PI, (lambda t: a + w * np.sin(t)), (lambda t: w * np.cos(t))
    if left:
        return 0.0, HALF_PI, (lambda t: b - w * np.sin(t)), (lambda t: w * np.cos(t))
    return a, b, (lambda t: t), (lambda t: np.ones_like(t))


def _raw_delta(spec, interp, x):
    gap0 = interp.f0_level - interp.f0(x)
    gap = spec.big_f - spec.f(x)
    return gap / gap0 - 1.0


def check_interpolant(spec, interp, samples=65):
    """Raise DomainError unless f0 shares the turning points and stays below F0 inside"""
    level = interp.f0_level
    ends = np.array([spec.x_minus, spec.x_plus])
    values = np.asarray(interp.f0(ends), dtype=float)
    scale = max(abs(level), float(np.max(np.abs(values))), 1e-300)
    for flag, end, value in zip(spec.turning, ends, values):
        if flag and abs(value - level) > 1e-10 * scale:
            raise DomainError(f"interpolant f0({end}) = {value} misses the level F0 = {level}")
    inner = np.linspace(spec.x_minus, spec.x_plus, samples + 2)[1:-1]
    if np.any(level - np.asarray(interp.f0(inner), dtype=float) <= 0.0):
        raise DomainError(f"F0 - f0 is not positive inside the interval (lambda={interp.lam})")


def delta_ratio(spec, interp, x, settings=None):
    """Delta(x) = (F - F0 - f(x) + f0(x)) / (F0 - f0(x)).

    At a turning point numerator and denominator both vanish; the limit is
    taken by linear extrapolation from two one-sided points.
    """
    settings = resolve(settings)
    x = float(x)
    a, b = spec.x_minus, spec.x_plus
    if not a <= x <= b:
        raise DomainError(f"x = {x} lies outside [{a}, {b}]")
    eps = settings.endpoint_offset * (b - a)
    if x == a and spec.turning[0]:
        return 2.0 * float(_raw_delta(spec, interp, a + eps)) - float(_raw_delta(spec, interp, a + 2 * eps))
    if x == b and spec.turning[1]:
        return 2.0 * float(_raw_delta(spec, interp, b - eps)) - float(_raw_delta(spec, interp, b - 2 * eps))
    gap0 = interp.f0_level - float(interp.f0(x))
    if gap0 <= 0.0:
        raise DomainError(f"F0 - f0(x) = {gap0} is not positive at x = {x}")
    return (spec.big_f - float(spec.f(x))) / gap0 - 1.0


def certify_convergence(spec, interp, settings=None):
    """sup |Delta| over the interval: grid scan, then a bounded refinement around the grid maximum"""
    settings = resolve(settings)
    a, b = spec.x_minus, spec.x_plus
    n = settings.certify_grid
    grid = a + (b - a) * (np.arange(n) + 0.5) / n
    with np.errstate(divide="ignore", invalid="ignore"):
        values = np.abs(_raw_delta(spec, interp, grid))
    if not np.all(np.isfinite(values)):
        raise DomainError(f"Delta is singular inside the interval (lambda={interp.lam})")
    i = int(np.argmax(values))
    best = max(float(values[i]), abs(delta_ratio(spec, interp, a, settings)), abs(delta_ratio(spec, interp, b, settings)))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, n - 1)]
    if hi > lo:
        result = minimize_scalar(
            lambda x: -abs(float(_raw_delta(spec, interp, x))),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-12 * (b - a)},
        )
        best = max(best, -float(result.fun))
    return best


def _moment_integrand(spec, interp, powers):
    lower, upper, xmap, jac = _substitution(spec)
    powers = np.asarray(powers)[:, None]

    def integrand(t):
        x = xmap(t)
        gap0 = interp.f0_level - interp.f0(x)
        safe = gap0 > 0.0
        gap0 = np.where(safe, gap0, 1.0)
        delta = np.where(safe, (spec.big_f - spec.f(x)) / gap0 - 1.0, 0.0)
        base = np.where(safe, np.power(gap0, spec.nu) * spec.g(x) * jac(t), 0.0)
        return base * np.power(delta, powers)

    return lower, upper, integrand


def series_term(spec, interp, n, settings=None):
    """binom(nu, n) * int (F0 - f0)^nu Delta^n g dx"""
    if n < 0:
        raise DomainError(f"term index must be non-negative, got {n}")
    settings = resolve(settings)
    lower, upper, integrand = _moment_integrand(spec, interp, [n])
    moment, _ = numerics.adaptive_gauss_legendre(integrand, lower, upper, settings=settings)
    return binomial_coefficient_nu(spec.nu, n) * float(moment[0])


def evaluate(spec, interp, order, settings=None, certify=True):
    """Terms 0..order of the delta expansion at delta = 1, with the convergence certificate"""
    if order < 0:
        raise DomainError(f"order must be non-negative, got {order}")
    settings = resolve(settings)
    check_interpolant(spec, interp)
    lower, upper, integrand = _moment_integrand(spec, interp, np.arange(order + 1))
    moments, error = numerics.adaptive_gauss_legendre(integrand, lower, upper, settings=settings)
    terms = binomial_coefficients_nu(spec.nu, order) * np.asarray(moments)
    sums = numerics.compensated_cumsum(terms)
    max_abs_delta = certify_convergence(spec, interp, settings) if certify else math.nan
    logger.debug(
        "evaluate %s: lambda=%g order=%d sum=%.17g |Delta|max=%.4g quad_err=%.2g",
        spec.name or "integral", interp.lam, order, sums[-1], max_abs_delta, error,
    )
    return DeltaExpansion(
        order=order,
        terms=tuple(float(t) for t in terms),
        partial_sums=tuple(float(s) for s in sums),
        max_abs_delta=max_abs_delta,
        lam=interp.lam,
    )


def interpolated_integrand(spec, interp, x, delta=1.0):
    """Integrand of the interpolated problem, (F0 - f0 + delta (F - F0 - f + f0))^nu g"""
    x = np.asarray(x, dtype=float)
    gap0 = interp.f0_level - interp.f0(x)
    gap = gap0 + delta * (spec.big_f - interp.f0_level - spec.f(x) + interp.f0(x))
    return np.power(gap, spec.nu) * spec.g(x)


def _pms_derivative(objective, lam, settings):
    h = max(settings.pms_step, settings.pms_step * abs(lam))
    return numerics.central_derivative(objective, lam, h, levels=1)


def stationary_point(objective, bracket, order=None, settings=None):
    """Smallest stationary point of objective(lambda) inside bracket.

    The derivative is a Richardson-extrapolated central difference.  The
    bracket is scanned for sign changes and the first one is bisected; when
    there is none, the scan point with the smallest |derivative| is returned
    and flagged as a fallback.
    """
    settings = resolve(settings)
    try:
        lo, hi = (float(v) for v in bracket)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"invalid bracket {bracket!r}") from exc
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise DomainError(f"invalid bracket {bracket!r}")

    grid = np.linspace(lo, hi, settings.pms_scan_points)
    slopes = np.array([_pms_derivative(objective, lam, settings) for lam in grid])
    scan = tuple(zip(grid.tolist(), slopes.tolist()))
    signs = np.sign(slopes)

    root = None
    if np.any(signs != 0):
        for i in range(len(grid) - 1):
            if signs[i] == 0:
                root = float(grid[i])
                break
            if signs[i] * signs[i + 1] < 0:
                a, b, sa = float(grid[i]), float(grid[i + 1]), signs[i]
                while b - a > settings.pms_tol * max(1.0, abs(a)):
                    m = 0.5 * (a + b)
                    sm = np.sign(_pms_derivative(objective, m, settings))
                    if sm == 0:
                        a = b = m
                        break
                    if sm == sa:
                        a = m
                    else:
                        b = m
                root = 0.5 * (a + b)
                break

    if root is None:
        j = int(np.argmin(np.abs(slopes)))
        logger.warning("no stationary point in [%g, %g]; using min |dI/dlambda| at %g", lo, hi, grid[j])
        return PmsSolution(float(grid[j]), float(abs(slopes[j])), (lo, hi), order, True, scan)

    residual = abs(_pms_derivative(objective, root, settings))
    logger.debug("stationary point at %.12g (residual %.3g)", root, residual)
    return PmsSolution(root, float(residual), (lo, hi), order, False, scan)


def pms_optimize(spec, family, order, bracket, settings=None):
    """Principle of minimal sensitivity for the order-N partial sum.

    `family` maps the variational parameter to an Interpolant.
    """
    settings = resolve(settings)
    try:
        ends = [float(v) for v in bracket]
    except (TypeError, ValueError) as exc:
        raise DomainError(f"invalid bracket {bracket!r}") from exc
    for end in ends:
        interp = family(end)
        check_interpolant(spec, interp)
        sup = certify_convergence(spec, interp, settings)
        if sup >= 1.0:
            logger.warning("bracket end %g is outside the certified region (sup|Delta| = %.4g)", end, sup)

    def objective(lam):
        return evaluate(spec, family(lam), order, settings=settings, certify=False).value

    return stationary_point(objective, bracket, order=order, settings=settings)


def quadrature_oracle(spec, settings=None, full_output=False):
    """Direct value of the turning-point integral.

    Smoothing substitution plus adaptive Gauss-Legendre; integrands that
    stay rough after the substitution (nu other than +-1/2) fall back to
    tanh-sinh.  With full_output, returns (value, error, method).
    """
    settings = resolve(settings)
    lower, upper, xmap, jac = _substitution(spec)

    def integrand(t):
        x = xmap(t)
        gap = spec.big_f - spec.f(x)
        safe = gap > 0.0
        return np.where(safe, np.power(np.where(safe, gap, 1.0), spec.nu) * spec.g(x) * jac(t), 0.0)

    try:
        value, error = numerics.adaptive_gauss_legendre(integrand, lower, upper, settings=settings)
        method = "gauss-legendre"
    except ConvergenceError as exc:
        logger.info("falling back to tanh-sinh for %s: %s", spec.name or "integral", exc)
        value, error = numerics.tanh_sinh(lambda t: float(integrand(np.array([t]))[0]), lower, upper)
        method = "tanh-sinh"
    value = float(value)
    if full_output:
        return value, float(error), method
    return value
