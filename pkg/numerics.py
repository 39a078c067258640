#!/usr/bin/env python3
"""
Quadrature and differentiation kernels.

* adaptive Gauss-Legendre on panels (vector-valued integrands allowed)
* fixed Gauss-Legendre with node doubling
* Chebyshev-Gauss with node doubling, for the 1/sqrt((b-x)(x-a)) weight
* tanh-sinh through mpmath, for integrands the polynomial rules cannot resolve
* central finite differences with Richardson extrapolation
* compensated running sums

Integrands are numpy-vectorised: they take an array of abscissae and return
an array of the same length (or shape (m, len) for m components).
"""

import functools
import logging
import math

import mpmath
import numpy as np

from config import resolve
from errors import ConvergenceError

logger = logging.getLogger(__name__)

EPS = np.finfo(float).eps


@functools.lru_cache(maxsize=32)
def gauss_legendre_rule(n):
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1]"""
    nodes, weights = np.polynomial.legendre.leggauss(n)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _panel(func, a, b, nodes, weights):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    values = np.asarray(func(mid + half * nodes), dtype=float)
    integral = half * (values @ weights)
    magnitude = abs(half) * (np.abs(values) @ weights)
    return integral, magnitude


def adaptive_gauss_legendre(func, a, b, tol=None, settings=None, max_depth=None):
    """Adaptive Gauss-Legendre quadrature of func over [a, b].

    Each panel is compared against its two halves; a panel is accepted when
    the difference is below its share of the absolute tolerance
    tol * max|I| (largest component for vector integrands), or when it sits
    at the rounding floor of the integrand.  Returns (value, error).
    Raises ConvergenceError when the summed error estimate still exceeds the
    tolerance after max_depth bisections.
    """
    settings = resolve(settings)
    tol = settings.quad_tol if tol is None else tol
    max_depth = settings.quad_max_depth if max_depth is None else max_depth
    nodes, weights = gauss_legendre_rule(settings.quad_nodes)

    whole, magnitude = _panel(func, a, b, nodes, weights)
    scale = float(np.max(np.abs(whole))) if np.size(whole) else 0.0
    if scale == 0.0:
        scale = float(np.max(magnitude)) if np.size(magnitude) else 0.0
    abs_tol = tol * scale
    width = b - a

    accepted = []
    errors = []
    floor_hits = 0
    stack = [(a, b, whole, magnitude, 0)]
    while stack:
        lo, hi, coarse, mag, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left, mag_left = _panel(func, lo, mid, nodes, weights)
        right, mag_right = _panel(func, mid, hi, nodes, weights)
        fine = left + right
        err = float(np.max(np.abs(fine - coarse)))
        share = abs_tol * (hi - lo) / width
        noise = 50.0 * EPS * float(np.max(mag_left + mag_right))
        if err <= max(share, noise):
            accepted.append(fine)
            errors.append(err)
            continue
        if depth >= max_depth:
            floor_hits += 1
            accepted.append(fine)
            errors.append(err)
            continue
        stack.append((lo, mid, left, mag_left, depth + 1))
        stack.append((mid, hi, right, mag_right, depth + 1))

    value = _fsum_stack(accepted)
    error = math.fsum(errors)
    if floor_hits:
        noise_floor = 100.0 * EPS * float(np.max(magnitude))
        if error > max(abs_tol, noise_floor):
            raise ConvergenceError(
                "adaptive Gauss-Legendre did not converge",
                estimate=value,
                error=error,
                details={"interval": (a, b), "max_depth": max_depth, "panels": len(accepted)},
            )
        logger.warning("quadrature on [%g, %g] reached depth %d on %d panels", a, b, max_depth, floor_hits)
    logger.debug("adaptive GL on [%g, %g]: %d panels, error %.3g", a, b, len(accepted), error)
    return value, error


def _fsum_stack(parts):
    stacked = np.asarray(parts, dtype=float)
    if stacked.ndim == 1:
        return math.fsum(stacked.tolist())
    return np.array([math.fsum(col) for col in stacked.T.tolist()])


def gauss_legendre_fixed(func, a, b, n):
    """n-point Gauss-Legendre rule on [a, b]"""
    nodes, weights = gauss_legendre_rule(n)
    value, _ = _panel(func, a, b, nodes, weights)
    return value


def gauss_legendre_doubling(func, a, b, tol, start=32, max_nodes=4096):
    """Fixed Gauss-Legendre, doubling the node count until the relative change is below tol.

    Returns (value, n_nodes).  For vector integrands every component must
    settle to tol relative to itself.
    """
    n = start
    previous = gauss_legendre_fixed(func, a, b, n)
    change = math.inf
    while n < max_nodes:
        n *= 2
        current = gauss_legendre_fixed(func, a, b, n)
        delta = np.abs(current - previous)
        change = float(np.max(delta))
        if np.all(delta <= tol * np.abs(current)):
            return current, n
        previous = current
    raise ConvergenceError(
        "Gauss-Legendre node doubling did not settle",
        estimate=previous,
        error=change,
        details={"nodes": n},
    )


def chebyshev_gauss(func, n):
    """Chebyshev-Gauss rule: int_{-1}^{1} func(t) / sqrt(1 - t^2) dt with n nodes.

    Returns the node values scaled by pi/n so that callers can choose their
    own summation (the precession oracle sums f - 1 to avoid cancellation).
    """
    k = np.arange(1, n + 1)
    t = np.cos((2 * k - 1) * math.pi / (2 * n))
    return (math.pi / n) * np.asarray(func(t), dtype=float)


def chebyshev_gauss_doubling(func, tol, start=16, max_nodes=1 << 20):
    """Sum of chebyshev_gauss, doubling n until the relative change is below tol"""
    n = start
    previous = math.fsum(chebyshev_gauss(func, n).tolist())
    change = math.inf
    while n < max_nodes:
        n *= 2
        current = math.fsum(chebyshev_gauss(func, n).tolist())
        change = abs(current - previous)
        if change <= tol * abs(current):
            logger.debug("Chebyshev-Gauss settled at n=%d", n)
            return current, n
        previous = current
    raise ConvergenceError(
        "Chebyshev-Gauss node doubling did not settle",
        estimate=previous,
        error=change,
        details={"nodes": n},
    )


def tanh_sinh(func, a, b, dps=20):
    """Double-exponential quadrature of a scalar func over [a, b] via mpmath.

    Returns (value, error) as floats.  func receives Python floats.
    """
    with mpmath.workdps(dps):
        value, error = mpmath.quad(lambda x: func(float(x)), [a, b], method="tanh-sinh", error=True)
    return float(value), float(error)


def richardson(estimates, order=2):
    """Richardson table for estimates at steps h, h/2, h/4, ... with error series in h^order"""
    table = [float(e) for e in estimates]
    power = order
    while len(table) > 1:
        factor = 2.0 ** power
        table = [(factor * fine - coarse) / (factor - 1.0) for coarse, fine in zip(table, table[1:])]
        power += order
    return table[0]


def central_derivative(func, x, h, levels=1):
    """First derivative by central differences, Richardson-extrapolated `levels` times"""
    estimates = []
    step = h
    for _ in range(levels + 1):
        estimates.append((func(x + step) - func(x - step)) / (2.0 * step))
        step *= 0.5
    return richardson(estimates)


def central_third_derivative(func, x, h, levels=2):
    """Third derivative from the five-point stencil, Richardson-extrapolated `levels` times"""
    estimates = []
    step = h
    for _ in range(levels + 1):
        f2p, f1p, f1m, f2m = func(x + 2 * step), func(x + step), func(x - step), func(x - 2 * step)
        estimates.append((f2p - 2.0 * f1p + 2.0 * f1m - f2m) / (2.0 * step ** 3))
        step *= 0.5
    return richardson(estimates)


def compensated_cumsum(values):
    """Running sums with Neumaier compensation; complex inputs are summed per component"""
    values = np.asarray(values)
    if np.iscomplexobj(values):
        return compensated_cumsum(values.real) + 1j * compensated_cumsum(values.imag)
    out = np.empty(len(values))
    total = 0.0
    carry = 0.0
    for i, v in enumerate(values.tolist()):
        t = total + v
        if abs(total) >= abs(v):
            carry += (total - t) + v
        else:
            carry += (v - t) + total
        total = t
        out[i] = total + carry
    return out
