"""Configuration module initialization."""

from .run_config import RunConfig, build_run_config, load_run_config, DEFAULT_CONFIG_PATH

__all__ = ['RunConfig', 'build_run_config', 'load_run_config', 'DEFAULT_CONFIG_PATH']
