#!/usr/bin/env python3
"""
Datasets behind every figure, as (header, rows) pairs ready for CSV output.
"""

import logging
import math

import numpy as np

import gr
import oscillators
import wkb
import zeta
from lde_core import evaluate

logger = logging.getLogger(__name__)


def duffing_rows(p, order, lambdas):
    """(order, lambda, partial_sum, error_vs_exact) for each lambda and each order 0..N"""
    exact = oscillators.duffing_exact(p)
    rows = []
    for lam in lambdas:
        series = oscillators.duffing_series(p, lam, order)
        for n, value in enumerate(series.partial_sums):
            rows.append((n, lam, value, abs(value - exact)))
    return ("order", "lambda", "partial_sum", "error_vs_exact"), rows


def figure1(p, order):
    """Errors at lambda_PMS, 0.9 lambda_PMS and 1.1 lambda_PMS"""
    lam = oscillators.duffing_lambda_pms(p)
    return duffing_rows(p, order, (lam, 0.9 * lam, 1.1 * lam))


def pendulum_rows(thetas, order=1, settings=None):
    """(theta, exact, pms, first_order_lambda0, relative_error)"""
    rows = []
    for theta in thetas:
        p = oscillators.PendulumParams(theta)
        exact = oscillators.pendulum_exact(p)
        if order <= 1:
            pms = oscillators.pendulum_period_pms(p)
        else:
            c = oscillators.pendulum_optimal_stiffness(p)
            family = oscillators.pendulum_family(p)
            pms = evaluate(oscillators.pendulum_integral(p), family(c), order, settings=settings).value
        plain = oscillators.pendulum_period_first_order(p, 0.0)
        rows.append((theta, exact, pms, plain, abs(pms - exact) / exact))
    return ("theta", "exact", "pms", "first_order_lambda0", "relative_error"), rows


def figure2(m, r0_values, settings=None):
    """(r0, exact, pms, asymptotic)"""
    rows = []
    for r0 in r0_values:
        d = gr.DeflectionInput(r0)
        rows.append((r0, gr.deflection_exact(m, d, settings), gr.deflection_pms(m, d), gr.deflection_weak_field(m, d)))
    return ("r0", "exact", "pms", "asymptotic"), rows


def figure2_grid(m, points=60, upper=30.0):
    """r0 from just outside the photon sphere to `upper` GM, geometric spacing"""
    return (m.gm * np.geomspace(3.0 * (1.0 + 1e-3), upper, points)).tolist()


def figure3(m, a0, ecc, ratios, settings=None):
    """(a/a0, exact, pms, leading)"""
    rows = []
    for ratio in ratios:
        o = gr.orbit_from_kepler(a0 * ratio, ecc)
        rows.append((ratio, gr.precession_exact(m, o, settings), gr.precession_pms(m, o), gr.precession_leading(m, o)))
    return ("a_over_a0", "exact", "pms", "leading"), rows


def figure3_grid(m, a0, ecc, points=60, span=1e4):
    """a/a0 from just above L = 8GM (every eccentricity stays bound) over `span` decades of ratio"""
    smallest = 8.0 * m.gm / (a0 * (1.0 - ecc * ecc)) * 1.02
    return np.geomspace(smallest, smallest * span, points).tolist()


def figure5(p, n_max, settings=None):
    """(n, error_eqn6) with the error in percent against the diagonalisation oracle"""
    exact = wkb.exact_spectrum_oracle(p, n_max, settings)
    logger.debug("oracle spectrum for levels 0..%d", n_max)
    rows = []
    for n, e in enumerate(exact):
        approx = wkb.asymptotic_energy(p, n)
        rows.append((n, abs((approx - e) / e) * 100.0))
    return ("n", "error_eqn6"), rows


def wkb_rows(p, n_max, order=4, settings=None):
    """(n, wkb_energy, asymptotic_energy, residual)"""
    rows = []
    for level in wkb.solve_spectrum(p, n_max, order, settings):
        rows.append((level.n, level.energy, wkb.asymptotic_energy(p, level.n) if p.mu > 0 else math.nan, level.residual))
    return ("n", "wkb_energy", "asymptotic_energy", "residual"), rows


def figure6(s, terms, small_lambda=1e-3):
    """(K, |err lambda_PMS|, |err small lambda|, |err direct sum|) on the real axis"""
    exact = zeta.zeta_reference(s)
    pms = zeta.zeta_partial_sums(zeta.ZetaSeriesParams(s, zeta.zeta_lambda_pms(s), terms)).real
    small = zeta.zeta_partial_sums(zeta.ZetaSeriesParams(s, small_lambda, terms)).real
    direct = np.cumsum(np.arange(1, terms + 2, dtype=float) ** (-float(s)))
    rows = [(k, abs(pms[k] - exact), abs(small[k] - exact), abs(direct[k] - exact)) for k in range(terms + 1)]
    return ("K", "err_lambda_pms", "err_lambda_small", "err_direct_sum"), rows


def figure7(tau, terms, lambdas=(0.3, 1.0)):
    """(K, Xi for each lambda) with Xi = 100 Re[(zeta_K - zeta)/zeta]"""
    s = complex(0.5, tau)
    exact = complex(zeta.zeta_reference(s))
    columns = []
    for lam in lambdas:
        sums = zeta.zeta_partial_sums(zeta.ZetaSeriesParams(s, lam, terms))
        columns.append([((value - exact) / exact).real * 100.0 for value in sums])
    header = ("K",) + tuple(f"xi_lambda_{lam:g}" for lam in lambdas)
    rows = [(k,) + tuple(col[k] for col in columns) for k in range(terms + 1)]
    return header, rows


def figure8(taus, lambdas):
    """(lambda, |zeta_K - zeta| at K = round(tau) for each tau)"""
    columns = []
    for tau in taus:
        s = complex(0.5, tau)
        scan = zeta.lambda_scan(s, lambdas, int(round(tau)))
        columns.append([err for _, err in scan])
    header = ("lambda",) + tuple(f"err_tau_{tau:g}" for tau in taus)
    rows = [(lam,) + tuple(col[i] for col in columns) for i, lam in enumerate(lambdas)]
    return header, rows
