#!/usr/bin/env python3
"""Pre-commit checks: formatting, lint and the fast test suite."""
import os
import subprocess
import sys
from typing import List

CHECKS = [
    ("black", ["black", "--check", "--line-length", "100", "."]),
    ("pylint", ["pylint", "--recursive=y", "models", "writers"] + [
        name for name in sorted(os.listdir(".")) if name.endswith(".py")
    ]),
    ("pytest", ["pytest", "-q", "-x"]),
]


def tool_in_venv(tool: str) -> bool:
    """True if the tool is installed in the active virtual environment."""
    venv_path = os.environ.get("VIRTUAL_ENV")
    if not venv_path or not os.path.isdir(venv_path):
        return False
    return os.path.exists(os.path.join(venv_path, "bin", tool))


def tool_exists(tool: str) -> bool:
    """True if the tool can be run."""
    if tool_in_venv(tool):
        return True
    try:
        subprocess.check_call(
            ["which", tool],
            stdout=subprocess.DEVNULL,
            stderr=subprocess.DEVNULL,
        )
        return True
    except subprocess.CalledProcessError:
        return False


def main() -> int:
    if not os.environ.get("VIRTUAL_ENV"):
        print("Not in a virtual environment; activate one with requirements-dev.txt installed.")
        return 1

    missing: List[str] = [name for name, _ in CHECKS if not tool_exists(name)]
    if missing:
        print("Missing required tools:", ", ".join(missing))
        print("Install them with: pip install -r requirements-dev.txt pylint")
        return 1

    for name, command in CHECKS:
        print(f"Running {name}...")
        try:
            subprocess.check_call(command)
        except subprocess.CalledProcessError as e:
            print(f"{name} failed: {e}")
            return 1

    print("All checks passed!")
    return 0


if __name__ == "__main__":
    sys.exit(main())
