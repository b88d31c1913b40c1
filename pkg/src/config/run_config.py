"""
Run Configuration
Loads the algebra data (Lambda, quadratic forms, twistor D, truncation order) and the
output/logging settings from YAML, TOML or JSON files, with environment overrides.
"""

import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

import yaml
from dotenv import load_dotenv
from loguru import logger

from ..errors import ConfigValidationError
from ..exact import ExactMatrix, SkewMatrix, SymMatrix, standard_symplectic

DEFAULT_CONFIG_PATH = "config/config.yaml"
OUTPUT_MODES = ("text", "json")
ALGEBRA_KEYS = ("nvars", "lambda", "quad_a", "quad_b", "twistor_d", "order")


@dataclass
class RunConfig:
    """Validated run configuration."""

    nvars: int
    lambda_matrix: SkewMatrix
    quad_a: Optional[SymMatrix] = None
    quad_b: Optional[SymMatrix] = None
    twistor_d: Optional[SkewMatrix] = None
    order: int = 4
    output_mode: str = "text"
    logging: Dict[str, Any] = field(default_factory=dict)
    output: Dict[str, Any] = field(default_factory=dict)
    validation: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def default(cls) -> "RunConfig":
        """Two variables with the standard symplectic Lambda and A[Z] = z0*z1."""
        return cls(
            nvars=2,
            lambda_matrix=standard_symplectic(2),
            quad_a=SymMatrix([["0", "1/2"], ["1/2", "0"]]),
            logging={'level': 'INFO'},
        )

    def to_dict(self) -> Dict[str, Any]:
        def strings(matrix: Optional[ExactMatrix]):
            return matrix.to_strings() if matrix is not None else None

        return {
            'nvars': self.nvars,
            'lambda': strings(self.lambda_matrix),
            'quad_a': strings(self.quad_a),
            'quad_b': strings(self.quad_b),
            'twistor_d': strings(self.twistor_d),
            'order': self.order,
            'output': {**self.output, 'mode': self.output_mode},
            'logging': dict(self.logging),
            'validation': dict(self.validation),
        }


def _read_file(path: Path) -> Dict[str, Any]:
    suffix = path.suffix.lower()
    try:
        if suffix in (".yaml", ".yml"):
            with open(path, 'r') as f:
                data = yaml.safe_load(f)
        elif suffix == ".toml":
            with open(path, 'rb') as f:
                data = tomllib.load(f)
        elif suffix == ".json":
            with open(path, 'r') as f:
                data = json.load(f)
        else:
            raise ConfigValidationError(f"Unsupported config format {suffix!r}; use .yaml, .toml or .json")
    except (yaml.YAMLError, tomllib.TOMLDecodeError, json.JSONDecodeError) as e:
        raise ConfigValidationError(f"Cannot parse {path}: {e}") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigValidationError(f"Top level of {path} must be a mapping")
    return data


def _matrix(section: Dict[str, Any], key: str, kind):
    raw = section.get(key)
    if raw is None:
        return None
    if not isinstance(raw, list) or not all(isinstance(row, list) for row in raw):
        raise ConfigValidationError(f"'{key}' must be a list of rows")
    if any(isinstance(v, float) for row in raw for v in row):
        raise ConfigValidationError(f"'{key}' contains floats; write entries as rational strings")
    matrix = ExactMatrix.from_strings(raw)
    if not matrix.is_square():
        raise ConfigValidationError(f"'{key}' must be square, got shape {matrix.shape}")
    try:
        return kind(matrix.rows())
    except ConfigValidationError as e:
        raise ConfigValidationError(f"'{key}': {e}") from e


def _as_int(value: Any, name: str) -> int:
    if isinstance(value, bool):
        raise ConfigValidationError(f"'{name}' must be an integer")
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigValidationError(f"'{name}' must be an integer, got {value!r}") from None


def build_run_config(data: Dict[str, Any]) -> RunConfig:
    """
    Validate a raw configuration mapping.

    Args:
        data: Mapping with the top-level fields 'lambda', 'nvars', 'quad_a', 'quad_b',
            'twistor_d', 'order' and the sections 'output', 'logging', 'validation'.
            An 'algebra' section may also hold the algebra fields; top-level
            values take precedence.

    Returns:
        RunConfig

    Raises:
        ConfigValidationError: On missing, malformed or inconsistent fields
    """
    section = data.get('algebra', {}) or {}
    if not isinstance(section, dict):
        raise ConfigValidationError("'algebra' must be a mapping")
    algebra = {**section, **{key: data[key] for key in ALGEBRA_KEYS if data.get(key) is not None}}

    lam = _matrix(algebra, 'lambda', SkewMatrix)
    nvars = algebra.get('nvars')
    if lam is None:
        if nvars is None:
            raise ConfigValidationError("Config needs 'lambda' or 'nvars'")
        nvars = _as_int(nvars, 'nvars')
        if nvars % 2:
            raise ConfigValidationError("Without 'lambda' the standard symplectic matrix needs an even nvars")
        lam = standard_symplectic(nvars)
    else:
        nvars = lam.size if nvars is None else _as_int(nvars, 'nvars')
        if lam.size != nvars:
            raise ConfigValidationError(f"'lambda' has size {lam.size} but nvars is {nvars}")

    quad_a = _matrix(algebra, 'quad_a', SymMatrix)
    quad_b = _matrix(algebra, 'quad_b', SymMatrix)
    for key, matrix in (('quad_a', quad_a), ('quad_b', quad_b)):
        if matrix is not None and matrix.size != nvars:
            raise ConfigValidationError(f"'{key}' has size {matrix.size} but nvars is {nvars}")

    twistor_d = _matrix(algebra, 'twistor_d', SkewMatrix)
    if twistor_d is not None and twistor_d.size != 4:
        raise ConfigValidationError(f"'twistor_d' must be 4x4, got size {twistor_d.size}")

    order = _as_int(algebra.get('order', 4), 'order')
    if order < 0:
        raise ConfigValidationError(f"'order' must be non-negative, got {order}")

    output = dict(data.get('output', {}) or {})
    output_mode = output.get('mode', 'text')
    if output_mode not in OUTPUT_MODES:
        raise ConfigValidationError(f"'output.mode' must be one of {OUTPUT_MODES}, got {output_mode!r}")

    return RunConfig(
        nvars=nvars,
        lambda_matrix=lam,
        quad_a=quad_a,
        quad_b=quad_b,
        twistor_d=twistor_d,
        order=order,
        output_mode=output_mode,
        logging=dict(data.get('logging', {}) or {}),
        output=output,
        validation=dict(data.get('validation', {}) or {}),
    )


def _apply_env_overrides(config: RunConfig) -> RunConfig:
    order = os.getenv('STAR_ORDER')
    if order:
        config.order = _as_int(order, 'STAR_ORDER')
        if config.order < 0:
            raise ConfigValidationError(f"STAR_ORDER must be non-negative, got {order}")
    level = os.getenv('STAR_LOG_LEVEL')
    if level:
        config.logging['level'] = level.upper()
    return config


def load_run_config(path: Optional[str] = None) -> RunConfig:
    """
    Load and validate a run configuration.

    Args:
        path: YAML, TOML or JSON file; None falls back to config/config.yaml and,
            when that is missing, to the built-in default

    Returns:
        RunConfig with STAR_ORDER / STAR_LOG_LEVEL environment overrides applied

    Raises:
        ConfigValidationError: If an explicit path is missing or the file is invalid
    """
    load_dotenv()
    if path is None:
        default = Path(DEFAULT_CONFIG_PATH)
        if not default.exists():
            logger.warning(f"Config file not found at {DEFAULT_CONFIG_PATH}, using defaults")
            return _apply_env_overrides(RunConfig.default())
        path = str(default)

    config_file = Path(path)
    if not config_file.exists():
        logger.error(f"Configuration file not found: {path}")
        raise ConfigValidationError(f"Configuration file not found: {path}")

    config = build_run_config(_read_file(config_file))
    logger.debug(f"Configuration loaded from {path}")
    return _apply_env_overrides(config)
