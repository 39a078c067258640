#!/usr/bin/env python3
"""
Installation check for the delta-expansion toolkit.
Verifies that the numerical stack imports and the command line answers.
"""

import importlib
import sys

REQUIRED_PACKAGES = ["numpy", "scipy", "torch", "mpmath", "psutil", "pytest"]
PROJECT_MODULES = ["errors", "config", "specfun", "numerics", "lde_core", "oscillators", "gr", "wkb", "zeta", "figures", "app"]


def _import_all(names):
    failed = []
    for name in names:
        try:
            importlib.import_module(name)
            print(f"✅ {name}")
        except ImportError as e:
            print(f"❌ {name}: {e}")
            failed.append(name)
    return failed


def test_imports():
    """All third-party packages import"""
    print("🔍 Testing package imports...")
    failed = _import_all(REQUIRED_PACKAGES)
    assert not failed, f"failed to import: {', '.join(failed)}"


def test_project_modules():
    """Every toolkit module imports"""
    print("\n🔍 Testing toolkit modules...")
    failed = _import_all(PROJECT_MODULES)
    assert not failed, f"failed to import: {', '.join(failed)}"


def test_torch_float64():
    """The spectrum oracle needs float64 eigvalsh"""
    import torch

    values = torch.linalg.eigvalsh(torch.eye(3, dtype=torch.float64) * 2.0)
    assert values.dtype == torch.float64
    assert values.tolist() == [2.0, 2.0, 2.0]


def test_cli_help():
    """The lde-pms entry point parses --help"""
    import app

    assert app.main(["--help"]) == 0


def main():
    """Run all checks"""
    print("🧮 Delta-expansion toolkit - Setup Test")
    print("=" * 50)

    if sys.version_info < (3, 9):
        print("❌ Python 3.9+ is required")
        sys.exit(1)

    print(f"✅ Python {sys.version_info.major}.{sys.version_info.minor} detected")

    checks = [test_imports, test_project_modules, test_torch_float64, test_cli_help]
    tests_passed = 0
    for check in checks:
        try:
            check()
            tests_passed += 1
        except Exception as e:
            print(f"❌ {check.__name__}: {e}")

    print(f"\n📊 Test Results: {tests_passed}/{len(checks)} tests passed")

    if tests_passed == len(checks):
        print("🎉 All tests passed! You're ready to run the toolkit.")
        print("\nTo reproduce a dataset:")
        print("  lde-pms duffing --mu 1 --amplitude 10 --figure1")
        return 0
    print("⚠️  Some tests failed. Please check the errors above.")
    print("\nTo install dependencies:")
    print("  pip install -r requirements.txt")
    return 1


if __name__ == "__main__":
    sys.exit(main())
