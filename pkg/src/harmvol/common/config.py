#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Configuration loading and management for harmvol."""

import pathlib
import tomllib
from typing import Any

from attrs import define
from provide.foundation import logger
from provide.foundation.config import RuntimeConfig, field

from harmvol.common.exceptions import HarmVolConfigError
from harmvol.config.defaults import (
    CONFIG_FILENAME,
    DEFAULT_DEGREE,
    DEFAULT_LOG_LEVEL,
    DEFAULT_OUTPUT_FORMAT,
    DEFAULT_THREADS,
    ENV_HVOL_DEGREE,
    ENV_HVOL_LOG_LEVEL,
    ENV_HVOL_OUTPUT_FORMAT,
    ENV_HVOL_THREADS,
    MIN_DEGREE,
    OUTPUT_FORMATS,
    PARITIES,
)


@define
class HarmVolConfig(RuntimeConfig):
    """Runtime configuration for hvol."""

    log_level: str = field(default=DEFAULT_LOG_LEVEL, description="Logging level", env_var=ENV_HVOL_LOG_LEVEL)

    threads: int = field(
        default=DEFAULT_THREADS, description="Upper bound on concurrent verification suites", env_var=ENV_HVOL_THREADS
    )
    degree: int = field(
        default=DEFAULT_DEGREE, description="Truncation degree D of the tensor algebra", env_var=ENV_HVOL_DEGREE
    )
    output_format: str = field(
        default=DEFAULT_OUTPUT_FORMAT, description="Export format", env_var=ENV_HVOL_OUTPUT_FORMAT
    )


def _load_config_from_file(file_path: pathlib.Path) -> dict[str, Any] | None:
    """
    Attempts to load and parse a TOML configuration file.
    """
    if not file_path.is_file():
        return None

    try:
        logger.info(f"Parsing hvol TOML configuration file: {file_path}")
        with file_path.open("rb") as f:
            config = tomllib.load(f)
        logger.info(f"Loaded TOML configuration from {file_path}")
        return config
    except tomllib.TOMLDecodeError as e:
        raise HarmVolConfigError(f"Failed to parse TOML configuration file {file_path}: {e}") from e
    except OSError as e:
        raise HarmVolConfigError(f"Could not read configuration file {file_path}: {e}") from e


def load_hvol_config(project_root: pathlib.Path, explicit_config_file: str | None = None) -> dict[str, Any]:
    """
    Loads the hvol configuration: an explicit file wins, then <project_root>/hvol.toml.
    """
    if explicit_config_file:
        exp_path = pathlib.Path(explicit_config_file).resolve()
        if exp_path.is_file():
            return _load_config_from_file(exp_path) or {}
        raise HarmVolConfigError(f"Explicitly specified configuration file not found: {exp_path}")

    config = _load_config_from_file(project_root / CONFIG_FILENAME)
    if config is not None:
        return config

    logger.info("No hvol configuration file found. Using empty default configuration.")
    return {}


def validate_defaults(defaults: dict[str, Any]) -> dict[str, Any]:
    """Check the [defaults] table of a loaded configuration file."""
    allowed = {"genus", "parity", "degree", "format"}
    unknown = sorted(set(defaults) - allowed)
    if unknown:
        raise HarmVolConfigError(f"Unknown keys in [defaults]: {', '.join(unknown)}")
    genus = defaults.get("genus")
    if genus is not None and (not isinstance(genus, int) or genus < 2):
        raise HarmVolConfigError(f"defaults.genus must be an integer ≥ 2, got {genus!r}")
    parity = defaults.get("parity")
    if parity is not None and parity not in PARITIES:
        raise HarmVolConfigError(f"defaults.parity must be one of {PARITIES}, got {parity!r}")
    degree = defaults.get("degree")
    if degree is not None and (not isinstance(degree, int) or degree < MIN_DEGREE):
        raise HarmVolConfigError(f"defaults.degree must be an integer ≥ {MIN_DEGREE}, got {degree!r}")
    fmt = defaults.get("format")
    if fmt is not None and fmt not in OUTPUT_FORMATS:
        raise HarmVolConfigError(f"defaults.format must be one of {OUTPUT_FORMATS}, got {fmt!r}")
    return defaults


# 🌀🧮🔚
