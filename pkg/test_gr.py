#!/usr/bin/env python3
"""
Tests for light deflection and perihelion precession.
"""

import math
import sys

import numpy as np
import pytest

import gr
from config import MERCURY_ECCENTRICITY, MERCURY_SEMIMAJOR_AXIS
from errors import DomainError
from gr import DeflectionInput, MetricParams, OrbitInput
from lde_core import evaluate, pms_optimize

UNIT = MetricParams(1.0)


def orbit_with_ratio(t, ecc=MERCURY_ECCENTRICITY):
    """Orbit with semilatus rectum 1 around gm = t"""
    return MetricParams(t), gr.orbit_from_kepler(1.0 / (1.0 - ecc * ecc), ecc)


def test_params_validation():
    with pytest.raises(DomainError):
        MetricParams(-1.0)
    with pytest.raises(DomainError):
        DeflectionInput(0.0)
    with pytest.raises(DomainError):
        OrbitInput(2.0, 1.0)
    with pytest.raises(DomainError):
        gr.orbit_from_kepler(1.0, 1.0)


def test_flat_space_vanishes():
    flat = MetricParams(0.0)
    assert gr.deflection_exact(flat, DeflectionInput(10.0)) == 0.0
    assert gr.deflection_pms(flat, DeflectionInput(10.0)) == 0.0
    assert gr.precession_exact(flat, gr.orbit_from_kepler(10.0, 0.3)) == 0.0
    assert gr.precession_pms(flat, gr.orbit_from_kepler(10.0, 0.3)) == 0.0


def test_defaults():
    assert gr.gm_from_mass() == pytest.approx(1462.725, rel=1e-12)
    assert gr.photon_sphere(UNIT) == (3.0, 8.0 / math.pi)


def test_orbit_geometry():
    o = gr.orbit_from_kepler(2.0, 0.5)
    assert (o.r_minus, o.r_plus) == (1.0, 3.0)
    assert o.semimajor_axis == 2.0
    assert o.eccentricity == pytest.approx(0.5)
    assert o.semilatus_rectum == pytest.approx(2.0 * (1.0 - 0.25))


def test_weak_field_limit():
    d = DeflectionInput(1e6)
    weak = gr.deflection_weak_field(UNIT, d)
    assert weak == 4e-6
    assert gr.deflection_pms(UNIT, d) == pytest.approx(weak, rel=1e-3)
    assert gr.deflection_exact(UNIT, d) == pytest.approx(weak, rel=1e-3)


def test_deflection_pms_value():
    # pi ((1 - 0.8/pi)^-1/2 - 1)
    assert gr.deflection_pms(UNIT, DeflectionInput(10.0)) == pytest.approx(0.4973, abs=1e-4)


def test_deflection_divergences():
    assert gr.deflection_pms(UNIT, DeflectionInput(8.0 / math.pi * (1.0 + 1e-7))) > 10.0
    for r0 in (3.0 * (1.0 + 1e-6), 3.000003, 3.0 + 1e-6, 3.0 + 1e-9):
        assert gr.deflection_exact(UNIT, DeflectionInput(r0)) > 10.0, r0
    with pytest.raises(DomainError):
        gr.deflection_pms(UNIT, DeflectionInput(2.5))
    with pytest.raises(DomainError):
        gr.deflection_exact(UNIT, DeflectionInput(3.0))


def test_deflection_grows_logarithmically_at_photon_sphere():
    # alpha ~ -2 ln(r0 - 3GM) + const as r0 -> 3GM
    near = gr.deflection_exact(UNIT, DeflectionInput(3.0 + 1e-6))
    nearer = gr.deflection_exact(UNIT, DeflectionInput(3.0 + 1e-8))
    assert nearer - near == pytest.approx(2.0 * math.log(100.0), rel=1e-3)


def test_deflection_positive_and_decreasing():
    radii = np.geomspace(3.5, 1e3, 30)
    for method in (gr.deflection_exact, gr.deflection_pms):
        values = np.array([method(UNIT, DeflectionInput(r0)) for r0 in radii])
        assert np.all(values > 0.0), method
        assert np.all(np.diff(values) < 0.0), method


def test_rescaling_invariance():
    scale = 1e3
    big = MetricParams(scale)
    for r0 in (3.5, 10.0, 100.0):
        assert gr.deflection_exact(big, DeflectionInput(scale * r0)) == pytest.approx(
            gr.deflection_exact(UNIT, DeflectionInput(r0)), rel=1e-10
        ), r0
        assert gr.deflection_pms(big, DeflectionInput(scale * r0)) == pytest.approx(
            gr.deflection_pms(UNIT, DeflectionInput(r0)), rel=1e-12
        ), r0
    for a, ecc in ((20.0, 0.2), (500.0, 0.9)):
        small_orbit = gr.orbit_from_kepler(a, ecc)
        big_orbit = gr.orbit_from_kepler(scale * a, ecc)
        assert gr.precession_exact(big, big_orbit) == pytest.approx(gr.precession_exact(UNIT, small_orbit), rel=1e-10)
        assert gr.precession_pms(big, big_orbit) == pytest.approx(gr.precession_pms(UNIT, small_orbit), rel=1e-12)


def test_pms_beats_weak_field_near_photon_sphere():
    for r0 in np.geomspace(3.5, 20.0, 20):
        d = DeflectionInput(r0)
        exact = gr.deflection_exact(UNIT, d)
        assert abs(gr.deflection_pms(UNIT, d) - exact) < abs(gr.deflection_weak_field(UNIT, d) - exact), r0


def test_deflection_engine_first_order_is_pms():
    d = DeflectionInput(10.0)
    spec = gr.deflection_integral(UNIT, d)
    family = gr.deflection_family(UNIT, d)
    c = d.r0 ** 3 + gr.deflection_lambda_pms(UNIT, d)
    series = evaluate(spec, family(c), 1)
    assert series.value - math.pi == pytest.approx(gr.deflection_pms(UNIT, d), rel=1e-10)


def test_deflection_engine_pms_search():
    d = DeflectionInput(10.0)
    spec = gr.deflection_integral(UNIT, d)
    family = gr.deflection_family(UNIT, d)
    r3 = d.r0 ** 3
    result = pms_optimize(spec, family, 1, (0.6 * r3, 0.95 * r3))
    assert not result.fallback
    assert result.lambda_opt == pytest.approx(r3 + gr.deflection_lambda_pms(UNIT, d), rel=1e-4)


def test_deflection_engine_converges_to_exact():
    d = DeflectionInput(10.0)
    spec = gr.deflection_integral(UNIT, d)
    family = gr.deflection_family(UNIT, d)
    exact = gr.deflection_exact(UNIT, d)
    for share in (0.75, 0.8):
        series = evaluate(spec, family(share * d.r0 ** 3), 20)
        assert series.converged
        assert series.value - math.pi == pytest.approx(exact, abs=1e-8)


def test_precession_pms_against_quadrature():
    for t in (1e-8, 1e-6, 1e-4):
        m, o = orbit_with_ratio(t)
        exact = gr.precession_exact(m, o)
        assert gr.precession_pms(m, o) == pytest.approx(exact, rel=1e-6), t
    for t in (1e-3, 1e-2, 2e-2):
        m, o = orbit_with_ratio(t)
        exact = gr.precession_exact(m, o)
        assert gr.precession_pms(m, o) == pytest.approx(exact, rel=1e-3), t


def test_precession_circular_limit_is_exact():
    # for a nearly circular orbit the closed form reduces to 2 pi ((1 - 6t)^-1/2 - 1)
    m, o = orbit_with_ratio(0.05, ecc=1e-6)
    assert gr.precession_pms(m, o) == pytest.approx(2.0 * math.pi * ((1.0 - 0.3) ** -0.5 - 1.0), rel=1e-9)
    assert gr.precession_exact(m, o) == pytest.approx(gr.precession_pms(m, o), rel=1e-9)


def test_precession_leading_order():
    m, o = orbit_with_ratio(1e-8)
    assert gr.precession_exact(m, o) / gr.precession_leading(m, o) == pytest.approx(1.0, abs=1e-4)


def test_precession_pms_weak_field_expansion():
    for ecc in (0.0, 0.25, 0.9):
        for t in (1e-8, 1e-6, 1e-4, 1e-3):
            m, o = orbit_with_ratio(t, ecc)
            ratio = gr.precession_pms(m, o) / gr.precession_leading(m, o)
            assert abs(ratio - 1.0) <= 20.0 * t, (ecc, t)


def test_mercury():
    m = MetricParams(gr.gm_from_mass())
    o = gr.orbit_from_kepler(MERCURY_SEMIMAJOR_AXIS, MERCURY_ECCENTRICITY)
    assert gr.precession_leading(m, o) == pytest.approx(4.93e-7, rel=2e-3)
    assert gr.precession_exact(m, o) == pytest.approx(gr.precession_leading(m, o), rel=1e-6)


def test_precession_engine_second_order_is_pms():
    m, o = orbit_with_ratio(1e-4)
    spec = gr.precession_integral(m, o)
    family = gr.precession_family(m, o)
    series = evaluate(spec, family(gr.precession_lambda_pms(m, o)), 2)
    assert series.converged
    assert series.value - 2.0 * math.pi == pytest.approx(gr.precession_pms(m, o), rel=1e-6)


def test_precession_bound_checks():
    m = MetricParams(1.0)
    with pytest.raises(DomainError):
        gr.precession_pms(m, gr.orbit_from_kepler(5.0, 0.1))
    with pytest.raises(DomainError):
        gr.precession_exact(m, gr.orbit_from_kepler(5.0, 0.1))
    with pytest.raises(DomainError):
        gr.precession_family(m, gr.orbit_from_kepler(100.0, 0.1))(1.0)


def test_orbit_constants():
    m = MetricParams(1.0)
    o = OrbitInput(10.0, 20.0)
    energy, j2 = gr.orbit_constants(m, o)
    for r in (o.r_minus, o.r_plus):
        assert j2 / r ** 2 == pytest.approx(1.0 / m.b(r) - energy, rel=1e-12)
    with pytest.raises(DomainError):
        gr.orbit_constants(m, OrbitInput(10.0, 10.0))


if __name__ == "__main__":
    import selftest

    sys.exit(1 if selftest.run_suite("gr", sys.modules[__name__]) else 0)
