#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Centralized defaults and constants for harmvol.

All hardcoded defaults should be defined here instead of inline in the code."""

# Curve defaults
DEFAULT_GENUS = 2
DEFAULT_PARITY = "even"
PARITIES = ["even", "odd"]

# Magnus expansion truncation degree D (enough for τ₁ and τ₂)
DEFAULT_DEGREE = 3
MIN_DEGREE = 2

# Parallelism for verification suites
DEFAULT_THREADS = 4

# Logging
LOG_LEVELS = ["NOTSET", "TRACE", "DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
DEFAULT_LOG_LEVEL = "WARNING"

# Output
OUTPUT_FORMATS = ["json", "csv", "msgpack"]
DEFAULT_OUTPUT_FORMAT = "json"

# Verification suites, in report order
SUITES = ["cocycle", "main-theorem", "oracle", "s-sets", "table"]

# Exit codes
EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_VERIFICATION = 2

# Environment variables
ENV_HVOL_LOG_LEVEL = "HVOL_LOG_LEVEL"
ENV_HVOL_THREADS = "HVOL_THREADS"
ENV_HVOL_DEGREE = "HVOL_DEGREE"
ENV_HVOL_OUTPUT_FORMAT = "HVOL_OUTPUT_FORMAT"

# Configuration file
CONFIG_FILENAME = "hvol.toml"

# 🌀🧮🔚
