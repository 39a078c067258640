#!/usr/bin/env python3
"""
Suite runner for the delta-expansion toolkit.

Each test_<suite>.py module is a list of plain test functions.  They are
collected by pytest as usual; this runner executes them without pytest's
collection machinery, times each suite and prints a pass/fail summary.

    python selftest.py           # every suite
    python selftest.py --fast    # skip the oracle-heavy wkb suite
    python test_zeta.py          # a single suite
"""

import argparse
import importlib
import sys
import time
import traceback

import psutil

SUITES = ("specfun", "lde_core", "oscillators", "gr", "zeta", "wkb", "app")
SLOW_SUITES = ("wkb",)


def get_system_info():
    """Print the hardware the suites run on"""
    print("🖥️ System Information:")
    print(f"CPU Cores: {psutil.cpu_count(logical=False)}")
    print(f"CPU Logical Cores: {psutil.cpu_count(logical=True)}")
    print(f"Available RAM: {psutil.virtual_memory().available / (1024**3):.1f} GB")
    print(f"Total RAM: {psutil.virtual_memory().total / (1024**3):.1f} GB")
    print()


def collect(module):
    """Test functions of a module in definition order"""
    tests = []
    for name, obj in vars(module).items():
        if name.startswith("test_") and callable(obj) and getattr(obj, "__module__", None) == module.__name__:
            tests.append((name, obj))
    return tests


def run_suite(name, module=None):
    """Run one suite; returns the number of failed tests"""
    if module is None:
        module = importlib.import_module(f"test_{name}")
    tests = collect(module)
    print(f"🔍 Suite {name}: {len(tests)} tests")
    failed = 0
    start = time.perf_counter()
    for test_name, func in tests:
        t0 = time.perf_counter()
        try:
            func()
        except Exception as exc:
            failed += 1
            print(f"  ❌ {test_name}: {type(exc).__name__}: {exc}")
            traceback.print_exc(limit=3)
        else:
            print(f"  ✅ {test_name} ({time.perf_counter() - t0:.2f}s)")
    elapsed = time.perf_counter() - start
    print(f"📊 {name}: {len(tests) - failed}/{len(tests)} passed in {elapsed:.2f}s")
    return failed


def run_all(fast=False, suites=None):
    """Run the suites in order; returns the process exit code"""
    print("🧪 Delta-expansion toolkit - Self Test")
    print("=" * 50)
    get_system_info()

    selected = [s for s in (suites or SUITES) if not (fast and s in SLOW_SUITES)]
    results = {}
    for name in selected:
        results[name] = run_suite(name)
        print()

    failed_suites = [name for name, failed in results.items() if failed]
    print(f"📊 Test Results: {len(results) - len(failed_suites)}/{len(results)} suites passed")
    if fast:
        print(f"⏭️  Skipped: {', '.join(SLOW_SUITES)}")
    if failed_suites:
        print(f"⚠️  Failing suites: {', '.join(failed_suites)}")
        return 1
    print("🎉 All tests passed!")
    return 0


def main(argv=None):
    parser = argparse.ArgumentParser(description="Run the toolkit's test suites")
    parser.add_argument("--fast", action="store_true", help="skip the oracle-heavy wkb suite")
    parser.add_argument("suites", nargs="*", help=f"subset of {', '.join(SUITES)}")
    args = parser.parse_args(argv)
    unknown = [s for s in args.suites if s not in SUITES]
    if unknown:
        parser.error(f"unknown suites: {', '.join(unknown)}")
    return run_all(fast=args.fast, suites=args.suites or None)


if __name__ == "__main__":
    sys.exit(main())
