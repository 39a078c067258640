#!/usr/bin/env python3
"""
Tests for the accelerated zeta series.
Oracles: scipy.special.zeta on the real axis, mpmath.zeta on the critical line.
"""

import math
import sys
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from scipy import special

import figures
import zeta
from errors import DomainError
from zeta import ZetaSeriesParams

ZETA3 = float(special.zeta(3.0))


def critical_oracle(tau):
    with mpmath.workdps(30):
        return complex(mpmath.zeta(mpmath.mpc(0.5, tau)))


def test_params_validation():
    for kwargs in ({"s": 3, "lam": 0.0, "terms": 5}, {"s": 3, "lam": 0.5, "terms": -1}, {"s": 1, "lam": 0.5, "terms": 5}):
        with pytest.raises(DomainError):
            ZetaSeriesParams(**kwargs)
    assert ZetaSeriesParams(3, 0.5, 5).s == complex(3.0, 0.0)


def test_lambda_pms():
    assert zeta.zeta_lambda_pms(3) == 0.125
    assert zeta.zeta_lambda_pms(2.5) == 2.0 ** -2.5
    for s in (1, 1.5):
        with pytest.raises(DomainError):
            zeta.zeta_lambda_pms(s)


def test_real_axis_machine_precision():
    value = zeta.zeta_accelerated(ZetaSeriesParams(3, zeta.zeta_lambda_pms(3), 100))
    assert isinstance(value, float)
    assert value == pytest.approx(ZETA3, rel=1e-14)
    assert zeta.knopp_series(3, 100) == pytest.approx(ZETA3, rel=1e-14)
    # (7/9)^K / K^3 decay: K = 30 is still far from the rounding floor
    assert abs(zeta.zeta_accelerated(ZetaSeriesParams(3, 0.125, 30)) - ZETA3) < 1e-6


def test_zeta_two():
    exact = math.pi ** 2 / 6.0
    assert abs(zeta.zeta_accelerated(ZetaSeriesParams(2, 0.25, 40)) - exact) <= 5e-12
    assert abs(zeta.zeta_accelerated(ZetaSeriesParams(2, 0.25, 60)) - exact) <= 1e-13


def test_pms_beats_knopp_and_small_lambda_at_low_order():
    _, rows = figures.figure6(3.0, 5)
    for k, err_pms, err_small, _ in rows:
        assert err_pms < err_small, k
    knopp = [abs(zeta.knopp_series(3, k) - ZETA3) for k in range(6)]
    for k, err_pms, _, _ in rows:
        assert err_pms < knopp[k], k


def test_figure6_lambda_at_non_integer_s():
    _, rows = figures.figure6(2.5, 10)
    sums = zeta.zeta_partial_sums(ZetaSeriesParams(2.5, 2.0 ** -2.5, 10)).real
    exact = zeta.zeta_reference(2.5)
    for k, err_pms, _, _ in rows:
        assert err_pms == abs(sums[k] - exact), k


def test_near_pole():
    s = 1.01
    value = zeta.zeta_accelerated(ZetaSeriesParams(s, 2.0 ** -s, 200))
    assert value == pytest.approx(zeta.zeta_reference(s), rel=1e-6)
    assert value == pytest.approx(float(special.zeta(s)), rel=1e-6)


def test_zero_lambda_collapses_to_alternating_series():
    terms = zeta._outer_terms(3.0, 0.0, 12)
    for k, term in enumerate(terms):
        assert term.real == pytest.approx((-1) ** k / (k + 1) ** 3, rel=1e-15), k
        assert term.imag == 0.0


def test_hundred_terms_ordering():
    _, rows = figures.figure6(3.0, 100)
    k, err_pms, err_small, err_direct = rows[-1]
    assert k == 100
    assert err_pms <= 2e-14
    assert abs(zeta.knopp_series(3, 100) - ZETA3) <= 2e-14
    assert err_small > 1e-10
    assert err_direct > 1e-6


def test_geometric_decay():
    _, rows = figures.figure6(3.0, 40)
    errors = np.array([r[1] for r in rows])
    ratio = 7.0 / 9.0 + 0.05
    for k in range(5, 41):
        assert errors[k] <= 2.0 * errors[5] * ratio ** (k - 5), k
    slope = np.polyfit(np.arange(10, 41), np.log(errors[10:41]), 1)[0]
    assert slope < math.log(ratio)


def test_partial_sums_are_cumulative():
    p = ZetaSeriesParams(complex(0.5, 20.0), 0.3, 40)
    sums = zeta.zeta_partial_sums(p)
    terms = zeta.accelerated_terms(p)
    assert len(sums) == 41
    for n in range(1, 41):
        scale = max(abs(sums[n]), abs(sums[n - 1]))
        assert abs((sums[n] - sums[n - 1]) - terms[n]) <= 4 * np.finfo(float).eps * scale
    assert abs(sums[-1] - zeta.zeta_accelerated(p)) <= 1e-13 * abs(sums[-1])


def test_critical_line():
    tau = 50.0
    exact = critical_oracle(tau)
    value = zeta.zeta_critical(tau, 0.3, 200)
    assert abs(value.real - exact.real) <= 1e-8
    assert abs(value.imag - exact.imag) <= 1e-8
    err_tuned = abs(zeta.zeta_critical(tau, 0.3, 50) - exact)
    err_knopp = abs(zeta.zeta_critical(tau, 1.0, 50) - exact)
    assert err_tuned < err_knopp


def test_conjugate_symmetry():
    s = complex(0.5, 30.0)
    upper = complex(zeta.zeta_accelerated(ZetaSeriesParams(s, 0.3, 60)))
    lower = complex(zeta.zeta_accelerated(ZetaSeriesParams(s.conjugate(), 0.3, 60)))
    assert abs(lower - upper.conjugate()) <= 1e-14 * abs(upper)


def test_reference_values():
    assert zeta.zeta_reference(2) == pytest.approx(math.pi ** 2 / 6.0, rel=1e-13)
    assert zeta.zeta_reference(3) == pytest.approx(ZETA3, rel=1e-13)
    for tau in (20.0, 50.0, 100.0):
        assert abs(zeta.zeta_reference(complex(0.5, tau)) - critical_oracle(tau)) <= 1e-12
    # first nontrivial zero
    assert abs(zeta.zeta_reference(complex(0.5, 14.134725141734694))) < 1e-6


def test_reference_domain():
    for s in (1, 0, complex(-0.5, 3.0), complex(0.5, 2000.0)):
        with pytest.raises(DomainError):
            zeta.zeta_reference(s)


def test_direct_sum():
    assert zeta.direct_sum(2, 0) == 1.0
    exact = sum(Fraction(1, n ** 3) for n in range(1, 11))
    assert zeta.direct_sum(3, 9) == pytest.approx(float(exact), rel=1e-15)


def test_knopp_is_lambda_one():
    s = complex(0.5, 20.0)
    assert zeta.knopp_series(s, 30) == zeta.zeta_accelerated(ZetaSeriesParams(s, 1.0, 30))


def test_lambda_scan():
    s = complex(0.5, 50.0)
    rows = zeta.lambda_scan(s, [0.3, 1.0], 50, reference=critical_oracle(50.0))
    assert [lam for lam, _ in rows] == [0.3, 1.0]
    assert rows[0][1] < rows[1][1]


def test_refine_lambda():
    lam = zeta.refine_lambda(3.0, 10)
    assert 1e-3 <= lam <= 1.0
    with pytest.raises(DomainError):
        zeta.refine_lambda(3.0, 0)
    with pytest.raises(DomainError):
        zeta.refine_lambda(3.0, 10, bracket=(0.5, 0.1))


if __name__ == "__main__":
    import selftest

    sys.exit(1 if selftest.run_suite("zeta", sys.modules[__name__]) else 0)
