#!/usr/bin/env python3
"""
Command-line front end for the delta-expansion toolkit.

Every subcommand writes CSV (header row, comma separated, floats at
--precision significant digits) to stdout or to --out.

    python app.py duffing --mu 1 --amplitude 10 --order 20 --figure1
    python app.py gr precess --figure3
    python app.py zeta --s 3 --lambda pms --terms 100
    python app.py selftest --fast

Exit codes: 0 success, 2 usage or domain error, 3 numerical non-convergence.
"""

import argparse
import contextlib
import csv
import logging
import sys

import numpy as np

import figures
import gr
import oscillators
import wkb
import zeta
from config import MERCURY_ECCENTRICITY, MERCURY_SEMIMAJOR_AXIS, G_OVER_C2, PRESETS, SOLAR_MASS
from errors import ConvergenceError, DomainError
from lde_core import evaluate

logger = logging.getLogger("app")

DEFAULT_TAUS = (20.0, 30.0, 40.0, 50.0)


def _format(value, precision):
    if isinstance(value, (bool, np.bool_)):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.{precision}g}"
    if isinstance(value, complex):
        return f"{value.real:.{precision}g}{value.imag:+.{precision}g}j"
    return str(value)


def write_csv(header, rows, out=None, precision=17):
    """Write a header and rows; floats are printed with `precision` significant digits"""
    with contextlib.ExitStack() as stack:
        if out is None or out == "-":
            handle = sys.stdout
        else:
            handle = stack.enter_context(open(out, "w", newline="", encoding="utf-8"))
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_format(v, precision) for v in row])
    if out not in (None, "-"):
        logger.info("wrote %d rows to %s", len(rows), out)


# Subcommands


def run_duffing(args, settings):
    p = oscillators.DuffingParams(args.mu, args.amplitude)
    if args.figure1:
        return figures.figure1(p, args.order)
    lam = oscillators.duffing_lambda_pms(p) if args.lam == "pms" else _parse_number(args.lam, "--lambda")
    if args.engine:
        series = evaluate(oscillators.duffing_integral(p), oscillators.duffing_family(p)(lam), args.order, settings)
        if not series.converged:
            raise DomainError(f"lambda = {lam} is outside the certified region (sup|Delta| = {series.max_abs_delta:.4g})")
        exact = oscillators.duffing_exact(p)
        rows = [(n, lam, s, abs(s - exact)) for n, s in enumerate(series.partial_sums)]
        return ("order", "lambda", "partial_sum", "error_vs_exact"), rows
    return figures.duffing_rows(p, args.order, (lam,))


def run_pendulum(args, settings):
    if args.figure:
        thetas = np.linspace(2.0 / args.points, 2.0, args.points).tolist()
    else:
        thetas = args.theta
    return figures.pendulum_rows(thetas, order=args.order, settings=settings)


def _parse_number(text, name):
    try:
        return float(text)
    except ValueError as exc:
        raise DomainError(f"{name} must be a number, got {text!r}") from exc


def _metric(args):
    return gr.MetricParams(gr.gm_from_mass(args.mass, args.g_over_c2))


def run_deflect(args, settings):
    m = _metric(args)
    if args.figure2:
        return figures.figure2(m, figures.figure2_grid(m, args.points), settings)
    if args.r0 is None:
        raise DomainError("--r0 is required unless --figure2 is given")
    return figures.figure2(m, [args.r0], settings)


def run_precess(args, settings):
    m = _metric(args)
    if args.figure3:
        ratios = figures.figure3_grid(m, args.a, args.ecc, args.points)
        return figures.figure3(m, args.a, args.ecc, ratios, settings)
    o = gr.orbit_from_kepler(args.a, args.ecc)
    row = (args.a, args.ecc, gr.precession_exact(m, o, settings), gr.precession_pms(m, o), gr.precession_leading(m, o))
    return ("a", "ecc", "exact", "pms", "leading"), [row]


def run_wkb(args, settings):
    p = wkb.AnharmonicParams(args.hbar, args.mass, args.omega, args.quartic)
    if args.figure5:
        return figures.figure5(p, args.levels, settings)
    return figures.wkb_rows(p, args.levels, args.order, settings)


def _parse_s(text):
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise DomainError(f"cannot parse s = {text!r}") from exc


def _zeta_lambda(choice, s, settings):
    if choice == "knopp":
        return 1.0
    if choice == "small":
        return settings.zeta_small_lambda
    if choice != "pms":
        return _parse_number(choice, "--lambda")
    if s.imag != 0.0:
        raise DomainError("--lambda pms is defined on the real axis only; give a number for complex s")
    return zeta.zeta_lambda_pms(s.real)


def run_zeta(args, settings):
    if args.figure6:
        s = _parse_s(args.s).real
        return figures.figure6(s, args.terms if args.terms is not None else 100, settings.zeta_small_lambda)
    if args.figure7:
        tau = args.tau if args.tau is not None else 50.0
        return figures.figure7(tau, args.terms if args.terms is not None else 200)
    if args.figure8:
        lambdas = np.linspace(1.0 / args.points, 1.0, args.points).tolist()
        return figures.figure8(args.taus or DEFAULT_TAUS, lambdas)

    s = complex(0.5, args.tau) if args.tau is not None else _parse_s(args.s)
    terms = args.terms if args.terms is not None else 30
    lam = _zeta_lambda(args.lam, s, settings)
    value = complex(zeta.zeta_accelerated(zeta.ZetaSeriesParams(s, lam, terms)))
    reference = complex(zeta.zeta_reference(s, settings=settings))
    row = (s.real, s.imag, lam, terms, value.real, value.imag, abs(value - reference))
    return ("s_real", "s_imag", "lambda", "terms", "value_real", "value_imag", "abs_error"), [row]


def run_selftest(args, settings):
    import selftest

    return selftest.run_all(fast=args.fast)


# Parser


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _non_negative_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output CSV file (default: stdout)")
    common.add_argument("--precision", type=_positive_int, default=17, help="significant digits of printed floats")
    common.add_argument("--preset", choices=sorted(PRESETS), default="default", help="tolerance profile")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")

    parser = argparse.ArgumentParser(
        prog="lde-pms",
        description="Delta expansion and the principle of minimal sensitivity: datasets and oracles",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    duffing = sub.add_parser("duffing", parents=[common], help="Duffing oscillator period")
    duffing.add_argument("--mu", type=float, required=True)
    duffing.add_argument("--amplitude", type=float, required=True)
    duffing.add_argument("--order", type=_non_negative_int, default=20)
    duffing.add_argument("--lambda", dest="lam", default="pms", help="'pms' or a number")
    duffing.add_argument("--figure1", action="store_true", help="errors at lambda_PMS and 0.9/1.1 lambda_PMS")
    duffing.add_argument("--engine", action="store_true", help="use the generic quadrature engine")
    duffing.set_defaults(handler=run_duffing)

    pendulum = sub.add_parser("pendulum", parents=[common], help="nonlinear pendulum period")
    pendulum.add_argument("--theta", type=float, nargs="+", default=[1.0], help="amplitudes in radians")
    pendulum.add_argument("--order", type=_non_negative_int, default=1)
    pendulum.add_argument("--figure", action="store_true", help="grid of amplitudes up to 2 rad")
    pendulum.add_argument("--points", type=_positive_int, default=50)
    pendulum.set_defaults(handler=run_pendulum)

    gr_parser = sub.add_parser("gr", help="Schwarzschild deflection and precession")
    gr_sub = gr_parser.add_subparsers(dest="gr_command", required=True)
    gr_common = argparse.ArgumentParser(add_help=False)
    gr_common.add_argument("--g-over-c2", type=float, default=G_OVER_C2, help="G/c^2 in m/kg")
    gr_common.add_argument("--mass", type=float, default=SOLAR_MASS, help="central mass in kg")
    gr_common.add_argument("--points", type=_positive_int, default=60)

    deflect = gr_sub.add_parser("deflect", parents=[common, gr_common], help="light deflection")
    deflect.add_argument("--r0", type=float, default=None, help="closest approach in metres")
    deflect.add_argument("--figure2", action="store_true")
    deflect.set_defaults(handler=run_deflect)

    precess = gr_sub.add_parser("precess", parents=[common, gr_common], help="perihelion precession")
    precess.add_argument("--a", type=float, default=MERCURY_SEMIMAJOR_AXIS, help="semimajor axis in metres")
    precess.add_argument("--ecc", type=float, default=MERCURY_ECCENTRICITY)
    precess.add_argument("--figure3", action="store_true")
    precess.set_defaults(handler=run_precess)

    wkb_parser = sub.add_parser("wkb", parents=[common], help="anharmonic oscillator spectrum")
    wkb_parser.add_argument("--hbar", type=float, default=1.0)
    wkb_parser.add_argument("--mass", type=float, default=1.0)
    wkb_parser.add_argument("--omega", type=float, default=1.0)
    wkb_parser.add_argument("--quartic", type=float, default=4.0, help="mu in mu x^4 / 4")
    wkb_parser.add_argument("--levels", type=_non_negative_int, default=10, help="highest quantum number")
    wkb_parser.add_argument("--order", type=int, choices=wkb.WKB_ORDERS, default=4)
    wkb_parser.add_argument("--figure5", action="store_true")
    wkb_parser.set_defaults(handler=run_wkb)

    zeta_parser = sub.add_parser("zeta", parents=[common], help="accelerated zeta series")
    zeta_parser.add_argument("--s", default="3", help="real or complex, e.g. 3 or 0.5+50j")
    zeta_parser.add_argument("--tau", type=float, default=None, help="s = 1/2 + i tau")
    zeta_parser.add_argument("--lambda", dest="lam", default="pms", help="'pms', 'knopp', 'small' or a number")
    zeta_parser.add_argument("--terms", type=_non_negative_int, default=None)
    zeta_parser.add_argument("--figure6", action="store_true")
    zeta_parser.add_argument("--figure7", action="store_true")
    zeta_parser.add_argument("--figure8", action="store_true")
    zeta_parser.add_argument("--taus", type=float, nargs="+", default=None)
    zeta_parser.add_argument("--points", type=_positive_int, default=50)
    zeta_parser.set_defaults(handler=run_zeta)

    selftest_parser = sub.add_parser("selftest", parents=[common], help="run the test suites")
    selftest_parser.add_argument("--fast", action="store_true", help="skip the oracle-heavy wkb suite")
    selftest_parser.set_defaults(handler=run_selftest)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    settings = PRESETS[args.preset].replace(csv_precision=args.precision)

    try:
        result = args.handler(args, settings)
    except DomainError as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return 3

    if args.command == "selftest":
        return result
    header, rows = result
    write_csv(header, rows, args.out, settings.csv_precision)
    return 0


if __name__ == "__main__":
    sys.exit(main())
