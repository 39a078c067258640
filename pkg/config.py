#!/usr/bin/env python3
"""
Numerical configuration for the delta-expansion toolkit.

Every tolerance used by the library lives in one frozen Settings record.
DEFAULT is the accurate profile used by the library and the CLI; FAST trades
accuracy headroom for speed and backs `selftest --fast`.
"""

import dataclasses
from dataclasses import dataclass

# Physical constants (SI).  The figure captions quote G/c^2 = 7.425e-30 m/kg,
# two orders of magnitude below G*M_sun/c^2 ~ 1476 m; the CLI defaults to the
# physical value and keeps the caption value for reference.
G_OVER_C2 = 7.425e-28
CAPTION_G_OVER_C2 = 7.425e-30
SOLAR_MASS = 1.97e30

MERCURY_SEMIMAJOR_AXIS = 5.971e10
MERCURY_ECCENTRICITY = 0.2506


@dataclass(frozen=True)
class Settings:
    """Tolerances and iteration limits"""

    # adaptive Gauss-Legendre
    quad_tol: float = 1e-12
    quad_nodes: int = 20
    quad_max_depth: int = 20

    # convergence certificate
    certify_grid: int = 1024
    endpoint_offset: float = 1e-5

    # PMS search
    pms_step: float = 1e-6
    pms_scan_points: int = 33
    pms_tol: float = 1e-10

    # gr oracles
    deflection_tol: float = 1e-10
    chebyshev_start: int = 16
    chebyshev_tol: float = 1e-10
    chebyshev_max_nodes: int = 1 << 20

    # wkb
    wkb_nodes: int = 32
    wkb_max_nodes: int = 4096
    wkb_quad_tol: float = 1e-13
    wkb_step: float = 1e-3
    wkb_third_step: float = 2e-2
    wkb_solve_tol: float = 1e-10
    wkb_bracket_expansions: int = 20

    # spectrum oracle
    oracle_basis: int = 128
    oracle_max_basis: int = 4096
    oracle_tol: float = 1e-10

    # zeta
    zeta_reference_terms: int = 50
    zeta_max_modulus: float = 1000.0
    zeta_small_lambda: float = 1e-3

    # output
    csv_precision: int = 17

    def replace(self, **changes):
        """Return a copy with the given fields changed"""
        return dataclasses.replace(self, **changes)


DEFAULT = Settings()

FAST = Settings(
    quad_tol=1e-10,
    quad_max_depth=16,
    certify_grid=256,
    pms_scan_points=17,
    deflection_tol=1e-8,
    chebyshev_tol=1e-8,
    wkb_quad_tol=1e-11,
    oracle_tol=1e-8,
)

PRESETS = {"default": DEFAULT, "fast": FAST}


def resolve(settings=None):
    """Settings passed by the caller, or the default profile"""
    return DEFAULT if settings is None else settings
