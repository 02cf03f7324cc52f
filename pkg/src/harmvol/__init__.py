#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Exact pointed harmonic volumes and Johnson maps for the curves w² = zⁿ − 1."""

from provide.foundation.utils.versioning import get_version

__version__ = get_version("harmvol", __file__)

__all__ = [
    "__version__",
]

# 🌀🧮🔚
