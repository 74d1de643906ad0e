"""Setup script for zeno-simulator package."""

from setuptools import find_packages, setup

# Get version
version = {}
with open('zeno_simulator/version.py', 'r', encoding='utf-8') as f:
    exec(f.read(), version)

setup(
    name="zeno-simulator",
    version=version['__version__'],
    description=(
        "A Python library for simulating repeated Yes/No questions on "
        "finite-dimensional density operators"
    ),
    author="Daniel Sullivan",
    packages=find_packages(exclude=["tests", "tests.*"]),
    py_modules=[
        "attention_model",
        "config_parser",
        "experiment_runner",
        "experiment_runner_factory",
        "operator_core",
        "oscillator_model",
        "output_writer",
        "presets",
        "reduction_dynamics",
        "run_stats",
        "simulator_main",
        "zeno_engine",
    ],
    install_requires=[
        "numpy",
        "scipy",
    ],
    extras_require={
        "dev": [
            "pytest",
            "pytest-cov",
        ],
    },
    python_requires=">=3.8",
    entry_points={
        "console_scripts": [
            "zeno-simulator=simulator_main:main",
        ],
    },
)
