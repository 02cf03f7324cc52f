#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Exact arithmetic in the cyclotomic field Q(ζ_n).

Elements are stored in the power basis 1, ζ, …, ζ^{φ(n)−1} of Q[z]/(Φ_n(z)),
so equality and rationality are plain coefficient comparisons."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
import cmath
from fractions import Fraction
from functools import cache
import math

from attrs import define, field

from harmvol.common.exceptions import (
    CyclotomicDivisionError,
    IncompatibleOrderError,
    InconsistencyError,
    IndexRangeError,
)

Scalar = int | Fraction


def _poly_trim(coeffs: list[Fraction]) -> list[Fraction]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_divmod(num: Sequence[Scalar], den: Sequence[Scalar]) -> tuple[list[Fraction], list[Fraction]]:
    """Long division of coefficient lists (lowest degree first)."""
    rem = _poly_trim([Fraction(c) for c in num])
    den_t = _poly_trim([Fraction(c) for c in den])
    if not den_t:
        raise CyclotomicDivisionError("Polynomial division by zero")
    quot = [Fraction(0)] * max(len(rem) - len(den_t) + 1, 1)
    lead = den_t[-1]
    while len(rem) >= len(den_t):
        shift = len(rem) - len(den_t)
        factor = rem[-1] / lead
        quot[shift] = factor
        for idx, c in enumerate(den_t):
            rem[shift + idx] -= factor * c
        _poly_trim(rem)
    return _poly_trim(quot), rem


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _poly_trim(out)


@cache
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Φ_n as integer coefficients, lowest degree first.

    Computed by dividing zⁿ − 1 by Φ_d for every proper divisor d of n."""
    if n < 1:
        raise IndexRangeError(f"Cyclotomic order must be positive, got {n}")
    num: list[Fraction] = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_poly(d))
            if rem:
                raise InconsistencyError(f"Φ_{d} does not divide z^{n} - 1")
    return tuple(int(c) for c in num)


def _degree(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


def _reduce(n: int, coeffs: Sequence[Scalar]) -> tuple[Fraction, ...]:
    """Canonical coefficient tuple of a polynomial in ζ modulo Φ_n."""
    deg = _degree(n)
    rem = [Fraction(c) for c in coeffs]
    phi = cyclotomic_poly(n)
    # Φ_n is monic, so reduction only subtracts integer multiples of shifted Φ_n.
    for top in range(len(rem) - 1, deg - 1, -1):
        factor = rem[top]
        if factor:
            shift = top - deg
            for idx, c in enumerate(phi):
                rem[shift + idx] -= factor * c
    rem = rem[:deg] + [Fraction(0)] * max(deg - len(rem), 0)
    return tuple(rem)


@define(frozen=True)
class CycNum:
    """An element of Q(ζ_n) in canonical power-basis form."""

    n: int
    coeffs: tuple[Fraction, ...] = field(converter=tuple)

    @classmethod
    def from_poly(cls, n: int, coeffs: Iterable[Scalar]) -> CycNum:
        """Reduce an arbitrary polynomial in ζ modulo Φ_n."""
        return cls(n, _reduce(n, list(coeffs)))

    @classmethod
    def from_rational(cls, n: int, value: Scalar) -> CycNum:
        return cls.from_poly(n, [value])

    @classmethod
    def zero(cls, n: int) -> CycNum:
        return cls.from_poly(n, [])

    @classmethod
    def one(cls, n: int) -> CycNum:
        return cls.from_rational(n, 1)

    @classmethod
    def from_exponents(cls, n: int, counts: Sequence[Scalar]) -> CycNum:
        """Σ_e counts[e]·ζ^e for a group-ring vector indexed by e mod n."""
        if len(counts) != n:
            raise IndexRangeError(f"Group-ring vector must have length {n}, got {len(counts)}")
        return cls.from_poly(n, counts)

    def _check(self, other: CycNum) -> None:
        if other.n != self.n:
            raise IncompatibleOrderError(f"Cannot combine elements of Q(ζ_{self.n}) and Q(ζ_{other.n})")

    def _coerce(self, other: CycNum | Scalar) -> CycNum:
        if isinstance(other, CycNum):
            self._check(other)
            return other
        return CycNum.from_rational(self.n, other)

    def __add__(self, other: CycNum | Scalar) -> CycNum:
        rhs = self._coerce(other)
        return CycNum(self.n, tuple(a + b for a, b in zip(self.coeffs, rhs.coeffs, strict=True)))

    __radd__ = __add__

    def __neg__(self) -> CycNum:
        return CycNum(self.n, tuple(-a for a in self.coeffs))

    def __sub__(self, other: CycNum | Scalar) -> CycNum:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> CycNum:
        return self._coerce(other) - self

    def __mul__(self, other: CycNum | Scalar) -> CycNum:
        if not isinstance(other, CycNum):
            scale = Fraction(other)
            return CycNum(self.n, tuple(a * scale for a in self.coeffs))
        self._check(other)
        return CycNum.from_poly(self.n, _poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> CycNum:
        """Multiplicative inverse via the extended Euclidean algorithm against Φ_n."""
        if self.is_zero():
            raise CyclotomicDivisionError(f"Zero has no inverse in Q(ζ_{self.n})")
        # Invariant: s_i·self ≡ r_i (mod Φ_n).
        r0: list[Fraction] = [Fraction(c) for c in cyclotomic_poly(self.n)]
        r1 = _poly_trim(list(self.coeffs))
        s0: list[Fraction] = []
        s1: list[Fraction] = [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # Φ_n is irreducible, so the last nonzero remainder is a constant.
        const = r1[0]
        return CycNum.from_poly(self.n, [c / const for c in s1])

    def __truediv__(self, other: CycNum | Scalar) -> CycNum:
        rhs = self._coerce(other)
        return self * rhs.inverse()

    def __rtruediv__(self, other: Scalar) -> CycNum:
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> CycNum:
        base = self if exponent >= 0 else self.inverse()
        result = CycNum.one(self.n)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise InconsistencyError(f"Element {self} of Q(ζ_{self.n}) is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def conjugate(self) -> CycNum:
        """Galois conjugation ζ ↦ ζ^{-1} (complex conjugation on the standard embedding)."""
        counts = [Fraction(0)] * self.n
        for e, c in enumerate(self.coeffs):
            counts[(-e) % self.n] += c
        return CycNum.from_exponents(self.n, counts)

    def approx(self) -> complex:
        """Floating-point embedding at ζ = exp(2πi/n); for log output only."""
        z = cmath.exp(2j * math.pi / self.n)
        return complex(sum(float(c) * z**e for e, c in enumerate(self.coeffs)))

    def __str__(self) -> str:
        terms = []
        for e, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if e == 0 else f"{c}·ζ^{e}")
        return " + ".join(terms) if terms else "0"


def zeta_pow(n: int, e: int) -> CycNum:
    """ζ_n^e in canonical form."""
    if n < 2:
        raise IndexRangeError(f"zeta_pow needs n ≥ 2, got {n}")
    counts = [0] * n
    counts[e % n] = 1
    return CycNum.from_exponents(n, counts)


# 🌀🧮🔚
