#!/usr/bin/env python3
"""
Setup Verification Script
Checks if the topological recursion toolkit is properly installed
"""

import sys
from pathlib import Path

import yaml

sys.path.insert(0, str(Path(__file__).parent / "src"))


def check_python_version():
    """Check if Python version is 3.9+"""
    if sys.version_info < (3, 9):
        print("❌ Python 3.9 or higher is required")
        print(f"   Current version: {sys.version}")
        return False
    print(f"✅ Python version: {sys.version.split()[0]}")
    return True


def check_dependencies():
    """Check if required packages are installed"""
    required = ['sympy', 'gmpy2', 'yaml', 'pydantic']
    missing = []

    for package in required:
        try:
            __import__(package)
        except ImportError:
            missing.append(package)

    if missing:
        print(f"❌ Missing dependencies: {', '.join(missing)}")
        print("   Run: pip install -r requirements.txt")
        return False

    import sympy
    from sympy.external.gmpy import GROUND_TYPES

    print(f"✅ All required packages installed (sympy {sympy.__version__}, ground types {GROUND_TYPES})")
    if GROUND_TYPES != 'gmpy':
        print("⚠️  sympy is not using gmpy2 rationals; results are identical but slower")
    return True


def check_config_file():
    """Check if config.yaml exists and parses"""
    if not Path('config.yaml').exists():
        print("ℹ️  config.yaml not found - built-in defaults will be used")
        return True

    try:
        with open('config.yaml', 'r') as f:
            config = yaml.safe_load(f) or {}
    except Exception as e:
        print(f"❌ Error reading config.yaml: {e}")
        return False

    from cli import DEFAULTS

    unknown = sorted(set(config) - set(DEFAULTS))
    if unknown:
        print(f"⚠️  Unknown config keys (ignored): {', '.join(unknown)}")
    print("✅ config.yaml found")
    return True


def check_directories():
    """Check if the log directory exists"""
    try:
        with open('config.yaml', 'r') as f:
            log_file = (yaml.safe_load(f) or {}).get('log_file')
    except FileNotFoundError:
        log_file = None

    if log_file and not Path(log_file).parent.exists():
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        print(f"📁 Created directory: {Path(log_file).parent}")
    else:
        print("✅ All directories exist")
    return True


def check_airy():
    """Compute a few Airy correlators as a smoke test"""
    from catalog import make_airy
    from recursion import compute_fg, compute_omega

    curve = make_airy()
    w11 = compute_omega(curve, 1, 1)
    f2 = compute_fg(curve, 2)
    if w11.terms != {((0, 4),): curve.domain.convert(1) / 16} or f2:
        print(f"❌ Unexpected Airy results: omega_1^(1) = {w11.to_json()}, F_2 = {curve.field.to_str(f2)}")
        return False
    print("✅ Airy curve: omega_1^(1) = dz/(16 z^4), F_2 = 0")
    return True


def main():
    """Run all checks"""
    print("\n" + "=" * 60)
    print("Topological Recursion Toolkit - Setup Verification")
    print("=" * 60 + "\n")

    checks = [
        ("Python Version", check_python_version),
        ("Dependencies", check_dependencies),
        ("Config File", check_config_file),
        ("Directories", check_directories),
        ("Airy Smoke Test", check_airy),
    ]

    results = []
    for name, check_func in checks:
        print(f"\n[{name}]")
        try:
            result = check_func()
            results.append(result)
        except Exception as e:
            print(f"❌ Error during check: {e}")
            results.append(False)

    # Summary
    print("\n" + "=" * 60)
    print("Summary")
    print("=" * 60)

    passed = sum(results)
    total = len(results)

    if passed == total:
        print(f"✅ All checks passed! ({passed}/{total})")
        print("\n🎉 You're ready to run the suites:")
        print("   python src/main.py verify --suite kontsevich")
        return 0
    else:
        print(f"⚠️  {passed}/{total} checks passed")
        print("\nPlease fix the issues above before running the toolkit.")
        return 1


if __name__ == "__main__":
    sys.exit(main())
