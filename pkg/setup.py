#!/usr/bin/env python3
"""
Delta-expansion toolkit setup script
====================================

Installs the lde-pms command line: delta-expansion series with the principle
of minimal sensitivity for oscillator periods, Schwarzschild orbits, WKB
spectra and the Riemann zeta function.

Usage:
    pip install .            # install the modules and the lde-pms command
    python test_setup.py     # check the installation
    lde-pms selftest --fast  # run the fast suites
"""

from setuptools import setup


def read_requirements():
    with open("requirements.txt", encoding="utf-8") as handle:
        return [line.strip() for line in handle if line.strip() and not line.startswith("#")]


setup(
    name="lde-pms",
    version="0.1.0",
    description="Delta expansion and the principle of minimal sensitivity: datasets and oracles",
    python_requires=">=3.9",
    py_modules=[
        "app",
        "config",
        "errors",
        "figures",
        "gr",
        "lde_core",
        "numerics",
        "oscillators",
        "selftest",
        "specfun",
        "wkb",
        "zeta",
    ],
    install_requires=read_requirements(),
    entry_points={"console_scripts": ["lde-pms = app:main"]},
)
