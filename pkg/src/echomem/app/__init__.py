"""Configuration, figure presets, sweeps and the command-line interface."""

from .config import ConfigError, ExperimentConfig, parse_config
from .sweep import (SweepResult, run_sweep, spectral_ratio_curve,
                    total_probability, write_csv)

__all__ = ["ConfigError", "ExperimentConfig", "parse_config", "SweepResult",
           "run_sweep", "spectral_ratio_curve", "total_probability",
           "write_csv"]
