#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Common exceptions for harmvol."""

from provide.foundation.errors import FoundationError


class HarmVolError(FoundationError):
    """Base class for exceptions in harmvol."""


class IncompatibleOrderError(HarmVolError):
    """Cyclotomic operands built over different roots of unity."""


class CyclotomicDivisionError(HarmVolError):
    """Inverse of the zero element of Q(ζ_n)."""


class InvalidGenusError(HarmVolError):
    """Genus outside the supported range (g ≥ 2)."""


class DimensionError(HarmVolError):
    """Vector or tensor of the wrong length for its curve."""


class IndexRangeError(HarmVolError):
    """Loop, form or eigenvector index outside its admissible range."""


class PoleError(HarmVolError):
    """1 + ζ^{-i} vanishes, so the Poincaré dual scalar has a pole."""


class SchemeError(HarmVolError):
    """Symplectic basis scheme not available for the curve's parity."""


class KMembershipError(HarmVolError):
    """Tensor does not lie in K⊗H (or in (H⊗³)′ where that is required)."""


class NonUnitError(HarmVolError):
    """Truncated series without constant term 1 cannot be inverted."""


class MissingWordDataError(HarmVolError):
    """An endomorphism needs generator-image words for this computation."""


class TruncationError(HarmVolError):
    """Truncation degree too small for the requested Johnson map."""


class InconsistencyError(HarmVolError):
    """An exact identity that must hold did not; indicates a bug, never user error."""


class ConversionError(HarmVolError):
    """Errors while serializing result rows (JSON, CSV, msgpack)."""


class HarmVolConfigError(HarmVolError):
    """Errors related to harmvol configuration loading or validation."""


# 🌀🧮🔚
