#!/usr/bin/env python
"""
Pre-commit hook: formatting, typing, linting and the test suites.
"""

import subprocess
import sys
from typing import List, Tuple

CHECKS: List[Tuple[str, List[str]]] = [
    ("black", ["black", "moduli_divisors", "tests", "scripts"]),
    ("isort", ["isort", "moduli_divisors", "tests", "scripts"]),
    ("mypy", ["mypy", "moduli_divisors"]),
    ("pylint", ["pylint", "moduli_divisors", "tests"]),
    ("pytest", ["pytest", "tests/", "-q"]),
]


def run_command(cmd: List[str]) -> bool:
    """Run a command and return True if it succeeds."""
    try:
        subprocess.check_call(cmd)
        return True
    except (subprocess.CalledProcessError, FileNotFoundError):
        return False


def main() -> None:
    print("Running pre-commit checks...")
    for name, cmd in CHECKS:
        print(f"\nRunning {name}...")
        if not run_command(cmd):
            print(f"{name} failed!")
            sys.exit(1)
    print("\nAll checks passed!")
    sys.exit(0)


if __name__ == "__main__":
    main()
