"""Parsing and serialization of experiment configs.

A config is one JSON document. Parsing is strict: unknown keys are rejected at
every level, and every problem found is reported together in one ConfigError.
"""

import dataclasses
import hashlib
import json
import logging
import math
from typing import Any, Callable, Dict, List, Optional, Type

import numpy as np

from models.component_types import DephasingBases, ExperimentKinds, HamiltonianPresets
from models.errors import ConfigError, ValidationError
from models.experiment_config import (
    AnalysisSpec,
    AttentionSpec,
    CoherentComponent,
    ExperimentConfig,
    HamiltonianSpec,
    InvarianceSpec,
    OscillatorSection,
    OutputSpec,
    ProjectorSpec,
    ScheduleSpec,
    StateSpec,
)
from models.operators import Hamiltonian, Projector
from models.schedules import ChannelPlacement, MeasurementSchedule
from oscillator_model import TRUNCATION_SLACK

logger = logging.getLogger(__name__)

DEFAULT_STEPS = 100
DT_TOLERANCE = 1e-9

Converter = Callable[[Any, str, List[str]], Any]


class _Invalid:
    """Marks a value that failed conversion; the error is already recorded."""


INVALID = _Invalid()


def _number(minimum: Optional[float] = None, maximum: Optional[float] = None,
            positive: bool = False, optional: bool = False) -> Converter:
    def convert(value, path, errors):
        if value is None and optional:
            return None
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            errors.append(f"{path}: expected a number, got {value!r}")
            return INVALID
        value = float(value)
        if not math.isfinite(value):
            errors.append(f"{path}: must be finite")
        elif positive and value <= 0.0:
            errors.append(f"{path}: must be positive, got {value}")
        elif minimum is not None and value < minimum:
            errors.append(f"{path}: must be at least {minimum}, got {value}")
        elif maximum is not None and value > maximum:
            errors.append(f"{path}: must be at most {maximum}, got {value}")
        else:
            return value
        return INVALID
    return convert


def _integer(minimum: Optional[int] = None, maximum: Optional[int] = None,
             optional: bool = False) -> Converter:
    def convert(value, path, errors):
        if value is None and optional:
            return None
        if isinstance(value, bool) or not isinstance(value, int):
            errors.append(f"{path}: expected an integer, got {value!r}")
            return INVALID
        if minimum is not None and value < minimum:
            errors.append(f"{path}: must be at least {minimum}, got {value}")
            return INVALID
        if maximum is not None and value > maximum:
            errors.append(f"{path}: must be below {maximum + 1}, got {value}")
            return INVALID
        return value
    return convert


def _boolean(value, path, errors):
    if not isinstance(value, bool):
        errors.append(f"{path}: expected true or false, got {value!r}")
        return INVALID
    return value


def _choice(enum_type, optional: bool = False) -> Converter:
    choices = [member.value for member in enum_type]

    def convert(value, path, errors):
        if value is None and optional:
            return None
        if value not in choices:
            errors.append(f"{path}: expected one of {', '.join(choices)}, got {value!r}")
            return INVALID
        return value
    return convert


def _text(optional: bool = False) -> Converter:
    def convert(value, path, errors):
        if value is None and optional:
            return None
        if not isinstance(value, str) or not value:
            errors.append(f"{path}: expected a non-empty string, got {value!r}")
            return INVALID
        return value
    return convert


def _sequence(item: Converter, optional: bool = False, non_empty: bool = True) -> Converter:
    def convert(value, path, errors):
        if value is None and optional:
            return None
        if not isinstance(value, (list, tuple)):
            errors.append(f"{path}: expected a list, got {value!r}")
            return INVALID
        if non_empty and not value:
            errors.append(f"{path}: must not be empty")
            return INVALID
        items = [item(entry, f"{path}[{i}]", errors) for i, entry in enumerate(value)]
        if any(entry is INVALID for entry in items):
            return INVALID
        return tuple(items)
    return convert


def _matrix(optional: bool = True) -> Converter:
    rows = _sequence(_sequence(_number()))

    def convert(value, path, errors):
        if value is None and optional:
            return None
        matrix = rows(value, path, errors)
        if matrix is INVALID:
            return INVALID
        if any(len(row) != len(matrix) for row in matrix):
            errors.append(f"{path}: must be a square matrix")
            return INVALID
        return matrix
    return convert


def _mapping(value, path: str, errors: List[str]) -> Optional[Dict[str, Any]]:
    if value is None:
        return {}
    if not isinstance(value, dict):
        errors.append(f"{path}: expected a mapping, got {value!r}")
        return None
    return value


def _section(cls: Type, rules: Dict[str, Converter], value, path: str, errors: List[str]):
    """Builds cls from a mapping, applying one converter per known key.

    Missing keys keep the dataclass defaults; unknown keys are errors.
    """
    data = _mapping(value, path, errors)
    if data is None:
        return cls()
    known = {f.name for f in dataclasses.fields(cls)}
    for key in sorted(set(data) - known, key=str):
        errors.append(f"{path}.{key}: unknown key")
    kwargs = {}
    for key, convert in rules.items():
        if key in data:
            converted = convert(data[key], f"{path}.{key}", errors)
            if converted is not INVALID:
                kwargs[key] = converted
    return cls(**kwargs)


def _component(value, path, errors):
    rules = {
        "alpha_re": _number(),
        "alpha_im": _number(),
        "weight": _number(positive=True),
    }
    data = _mapping(value, path, errors)
    if data is None:
        return INVALID
    if "alpha_re" not in data:
        errors.append(f"{path}.alpha_re: required")
        return INVALID
    if rules["alpha_re"](data["alpha_re"], f"{path}.alpha_re", errors) is INVALID:
        return INVALID
    return _section(CoherentComponent, rules, data, path, errors)


_RULES = {
    HamiltonianSpec: {
        "preset": _choice(HamiltonianPresets),
        "omega": _number(),
        "entries": _matrix(),
        "entries_imag": _matrix(),
        "dimension": _integer(minimum=1, optional=True),
        "matrix_seed": _integer(minimum=0, optional=True),
        "scale": _number(positive=True),
    },
    ProjectorSpec: {
        "levels": _sequence(_integer(minimum=0), optional=True),
        "entries": _matrix(),
    },
    StateSpec: {
        "levels": _sequence(_integer(minimum=0), optional=True),
        "vector": _sequence(_number(), optional=True),
    },
    OscillatorSection: {
        "dim": _integer(minimum=4),
        "omega": _number(positive=True),
        "drive": _number(),
        "band_min": _integer(minimum=0),
        "band_max": _integer(minimum=0),
        "components": _sequence(_component),
    },
    InvarianceSpec: {
        "strengths": _sequence(_number(minimum=0.0, maximum=1.0)),
        "basis": _choice(DephasingBases),
    },
    AttentionSpec: {
        "candidates": _sequence(_sequence(_integer(minimum=0))),
        "labels": _sequence(_text(), non_empty=False),
        "efforts": _sequence(_number(minimum=0.0)),
        "base_interval": _number(positive=True),
        "threshold": _number(minimum=0.0, maximum=1.0),
        "consent": _sequence(_boolean),
        "instants": _sequence(_number(positive=True), optional=True),
        "branch_keeping": _boolean,
    },
    AnalysisSpec: {
        "fit_exponent": _boolean,
        "php_deviation": _boolean,
        "step_counts": _sequence(_integer(minimum=1), non_empty=False),
    },
    OutputSpec: {
        "directory": _text(),
        "prefix": _text(optional=True),
    },
}

_SECTIONS = {
    "hamiltonian": HamiltonianSpec,
    "projector": ProjectorSpec,
    "state": StateSpec,
    "oscillator": OscillatorSection,
    "invariance": InvarianceSpec,
    "attention": AttentionSpec,
    "analysis": AnalysisSpec,
    "output": OutputSpec,
}


def _parse_schedule(value, errors: List[str]) -> ScheduleSpec:
    """Reads the schedule, filling whichever of n_steps and dt is missing."""
    rules = {
        "total_time": _number(positive=True),
        "n_steps": _integer(minimum=1),
        "dt": _number(positive=True),
        "placement": _choice(ChannelPlacement),
        "strength": _number(minimum=0.0, maximum=1.0),
    }
    data = _mapping(value, "schedule", errors)
    if data is None:
        return ScheduleSpec()
    before = len(errors)
    raw = _section(ScheduleSpec, rules, data, "schedule", errors)
    if len(errors) > before:
        return raw
    total_time = raw.total_time
    tolerance = DT_TOLERANCE * max(1.0, total_time)
    n_steps = raw.n_steps if "n_steps" in data else None
    dt = raw.dt if "dt" in data else None
    if n_steps is None and dt is None:
        n_steps = DEFAULT_STEPS
    elif n_steps is None:
        try:
            n_steps = MeasurementSchedule.from_dt(total_time, dt).n_steps
        except ValidationError as e:
            errors.append(f"schedule.dt: {e}")
            return raw
    elif dt is not None and abs(n_steps * dt - total_time) > tolerance:
        errors.append(
            f"schedule.dt: {dt} is inconsistent with total_time/n_steps = {total_time / n_steps}"
        )
    return dataclasses.replace(raw, n_steps=n_steps, dt=total_time / n_steps)


def _semantic_errors(config: ExperimentConfig) -> List[str]:
    """Problems that need more than one field to detect."""
    errors = config.consistency_errors()
    spec = config.hamiltonian
    if spec.preset == HamiltonianPresets.DENSE.value:
        if spec.entries is None:
            errors.append("hamiltonian.entries: required by the dense preset")
        else:
            real = np.array(spec.entries, dtype=float)
            imag = np.zeros_like(real)
            if spec.entries_imag is not None:
                if len(spec.entries_imag) != len(spec.entries):
                    errors.append("hamiltonian.entries_imag: must match entries in shape")
                else:
                    imag = np.array(spec.entries_imag, dtype=float)
            try:
                Hamiltonian(real + 1j * imag)
            except ValueError as e:
                errors.append(f"hamiltonian.entries: {e}")
    if spec.preset == HamiltonianPresets.RANDOM_REAL.value:
        if spec.dimension is None:
            errors.append("hamiltonian.dimension: required by the random-real preset")
        if spec.matrix_seed is None:
            errors.append("hamiltonian.matrix_seed: required by the random-real preset")

    projector = config.projector
    if (projector.levels is None) == (projector.entries is None):
        errors.append("projector: give exactly one of levels or entries")
    elif projector.entries is not None:
        try:
            Projector(np.array(projector.entries, dtype=float))
        except ValueError as e:
            errors.append(f"projector.entries: {e}")
    if config.state.levels is not None and config.state.vector is not None:
        errors.append("state: give at most one of levels or vector")
    if config.state.vector is not None and not any(config.state.vector):
        errors.append("state.vector: must not be zero")

    oscillator = config.oscillator
    if oscillator.band_min > oscillator.band_max:
        errors.append("oscillator.band_min: must not exceed band_max")
    if oscillator.band_max >= oscillator.dim:
        errors.append(f"oscillator.band_max: must be below dim {oscillator.dim}")
    limit = oscillator.dim / 4.0 * (1.0 + TRUNCATION_SLACK)
    for index, component in enumerate(oscillator.components):
        if component.alpha_re ** 2 + component.alpha_im ** 2 > limit:
            errors.append(
                f"oscillator.components[{index}]: |alpha|^2 exceeds dim/4 = {oscillator.dim / 4.0}"
            )

    attention = config.attention
    if attention.labels and len(attention.labels) != len(attention.candidates):
        errors.append("attention.labels: need one label per candidate")
    if attention.instants is not None and any(
        b <= a for a, b in zip(attention.instants, attention.instants[1:])
    ):
        errors.append("attention.instants: must be strictly increasing")
    return errors


def parse_config(text: str) -> ExperimentConfig:
    """Parses and validates a config document.

    Args:
        text: JSON text.

    Returns:
        The validated config, with defaults filled in.

    Raises:
        ConfigError: Listing every problem found.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError([f"config: not a valid document: {e}"]) from e
    if not isinstance(document, dict):
        raise ConfigError([f"config: expected a mapping at the top level, got {type(document).__name__}"])

    errors: List[str] = []
    known = {f.name for f in dataclasses.fields(ExperimentConfig)}
    for key in sorted(set(document) - known, key=str):
        errors.append(f"{key}: unknown key")

    if "kind" not in document:
        errors.append("kind: required")
    kind = _choice(ExperimentKinds)(document.get("kind"), "kind", errors) if "kind" in document else INVALID
    kwargs: Dict[str, Any] = {}
    if "seed" in document:
        seed = _integer(minimum=0, maximum=2**64 - 1, optional=True)(document["seed"], "seed", errors)
        if seed is not INVALID:
            kwargs["seed"] = seed
    if "trials" in document:
        trials = _integer(minimum=0)(document["trials"], "trials", errors)
        if trials is not INVALID:
            kwargs["trials"] = trials
    for name, cls in _SECTIONS.items():
        kwargs[name] = _section(cls, _RULES[cls], document.get(name), name, errors)
    projector = document.get("projector")
    if isinstance(projector, dict) and "entries" in projector and "levels" not in projector:
        kwargs["projector"] = dataclasses.replace(kwargs["projector"], levels=None)
    kwargs["schedule"] = _parse_schedule(document.get("schedule"), errors)

    if kind is INVALID:
        raise ConfigError(errors)
    config = ExperimentConfig(kind=kind, **kwargs)
    errors.extend(_semantic_errors(config))
    if errors:
        logger.debug("Config rejected with %d errors", len(errors))
        raise ConfigError(errors)
    return config


def serialize_config(config: ExperimentConfig) -> str:
    """Canonical JSON rendering: sorted keys, shortest round-trip floats."""
    return json.dumps(dataclasses.asdict(config), sort_keys=True, indent=2)


def config_digest(config: ExperimentConfig) -> str:
    """SHA-256 of the canonical rendering."""
    return hashlib.sha256(serialize_config(config).encode("utf-8")).hexdigest()
