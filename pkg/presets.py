"""Named experiment configs.

Each preset reproduces one acceptance experiment at its default size. Presets
are stored as raw documents and go through parse_config like any user config.
"""

import json
from typing import Any, Dict, List, Tuple

from config_parser import parse_config
from models.errors import ConfigError
from models.experiment_config import ExperimentConfig

THREE_LEVEL_H = [[0.0, 1.0, 0.6], [1.0, 0.5, 0.0], [0.6, 0.0, -0.3]]

PRESETS: Dict[str, Tuple[str, Dict[str, Any]]] = {
    "zeno-qubit": (
        "Rabi qubit questioned n times in [0, 1]; survival and leakage exponent",
        {
            "kind": "zeno-qubit",
            "hamiltonian": {"preset": "rabi"},
            "schedule": {"total_time": 1.0, "n_steps": 100},
            "analysis": {"fit_exponent": True, "step_counts": [10, 100, 1000]},
        },
    ),
    "zeno-qubit-sampled": (
        "Rabi qubit with 10^4 seeded trials next to the deterministic curve",
        {
            "kind": "zeno-qubit",
            "seed": 20240601,
            "trials": 10000,
            "schedule": {"total_time": 1.0, "n_steps": 10},
            "analysis": {"fit_exponent": False},
        },
    ),
    "leakage-random": (
        "Seeded real symmetric 8-level H; quadratic per-step leakage fit",
        {
            "kind": "zeno-generic",
            "hamiltonian": {"preset": "random-real", "dimension": 8, "matrix_seed": 7},
            "projector": {"levels": [0, 1]},
            "schedule": {"total_time": 1.0, "n_steps": 100},
            "analysis": {"fit_exponent": True},
        },
    ),
    "php-three-level": (
        "Three-level system with a rank-2 question; distance to P·H·P evolution",
        {
            "kind": "zeno-generic",
            "hamiltonian": {"preset": "dense", "entries": THREE_LEVEL_H},
            "projector": {"levels": [0, 1]},
            "schedule": {"total_time": 1.0, "n_steps": 100},
            "analysis": {"fit_exponent": True, "php_deviation": True},
        },
    ),
    "decoherence-qubit": (
        "Rabi qubit survival under computational-basis dephasing of several strengths",
        {
            "kind": "decoherence-invariance",
            "schedule": {"total_time": 1.0, "n_steps": 100},
            "invariance": {"strengths": [0.0, 0.25, 0.5, 1.0], "basis": "computational"},
        },
    ),
    "decoherence-oscillator": (
        "Driven oscillator band survival under band/complement dephasing",
        {
            "kind": "decoherence-invariance",
            "hamiltonian": {"preset": "oscillator"},
            "oscillator": {"dim": 32, "omega": 1.0, "drive": 0.2, "band_min": 8, "band_max": 16},
            "schedule": {"total_time": 1.0, "n_steps": 100},
            "invariance": {"strengths": [0.0, 0.25, 0.5, 1.0], "basis": "projector-pair"},
        },
    ),
    "oscillator-band": (
        "Driven oscillator kept in an energy band by repeated questions",
        {
            "kind": "oscillator-band",
            "hamiltonian": {"preset": "oscillator"},
            "oscillator": {"dim": 32, "omega": 1.0, "drive": 0.2, "band_min": 8, "band_max": 16},
            "schedule": {"total_time": 1.0, "n_steps": 100},
            "analysis": {"fit_exponent": False, "step_counts": [10, 100]},
        },
    ),
    "attention-sweep": (
        "Hold duration against effort, following the Yes branch",
        {
            "kind": "attention-sweep",
            "schedule": {"total_time": 5.0, "n_steps": 50},
            "attention": {
                "candidates": [[0]],
                "efforts": [0.0, 1.0, 4.0, 9.0],
                "base_interval": 0.1,
                "threshold": 0.9,
                "branch_keeping": True,
            },
        },
    ),
    "attention-sweep-sampled": (
        "Hold duration against effort over 10^3 seeded episodes",
        {
            "kind": "attention-sweep",
            "seed": 1901,
            "trials": 1000,
            "schedule": {"total_time": 1.0, "n_steps": 10},
            "attention": {
                "candidates": [[0]],
                "efforts": [0.0, 1.0, 4.0, 9.0],
                "base_interval": 0.1,
                "threshold": 0.9,
            },
        },
    ),
}


def preset_names() -> List[str]:
    """Names of all presets, sorted."""
    return sorted(PRESETS)


def describe_preset(name: str) -> str:
    """One-line description of a preset."""
    return _lookup(name)[0]


def preset_document(name: str) -> str:
    """The preset rendered as a JSON config document."""
    return json.dumps(_lookup(name)[1], indent=2)


def get_preset(name: str) -> ExperimentConfig:
    """Parses the named preset.

    Raises:
        ConfigError: If no preset has that name.
    """
    return parse_config(preset_document(name))


def _lookup(name: str) -> Tuple[str, Dict[str, Any]]:
    if name not in PRESETS:
        raise ConfigError([f"preset: unknown preset {name!r}; choose from {', '.join(preset_names())}"])
    return PRESETS[name]
