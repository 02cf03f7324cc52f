#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Homological model of the pointed curve (C_n, P₀), w² = zⁿ − 1.

Loops ℓ₀..ℓ_{n−1} generate H₁. The reduced basis is L₀..L_{2g−1}; L_{n−1} (and
L_{n−2} for even n) are eliminated through the product relations."""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from functools import cache

from attrs import define, field
from provide.foundation import logger

from harmvol.common.exceptions import (
    DimensionError,
    IncompatibleOrderError,
    IndexRangeError,
    InvalidGenusError,
    PoleError,
    SchemeError,
)
from harmvol.config.defaults import PARITIES
from harmvol.cyclotomic import CycNum, zeta_pow

# A word in the loops: (loop index mod n, exponent ±1) in left-to-right order.
LoopWord = tuple[tuple[int, int], ...]


@define(frozen=True)
class CurveModel:
    g: int
    parity: str
    n: int
    relation_matrix: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return 2 * self.g

    def describe(self) -> str:
        return f"C_{self.n} (g={self.g}, {self.parity})"


@cache
def build_curve(g: int, parity: str) -> CurveModel:
    """Curve model for n = 2g+1 (odd) or n = 2g+2 (even)."""
    if g < 2:
        raise InvalidGenusError(f"Genus must be at least 2, got {g}")
    if parity not in PARITIES:
        raise InvalidGenusError(f"Parity must be one of {PARITIES}, got {parity!r}")
    n = 2 * g + 1 if parity == "odd" else 2 * g + 2
    if parity == "odd":
        relations: tuple[tuple[int, ...], ...] = (tuple([1] * n),)
    else:
        relations = (
            tuple(1 if k % 2 == 0 else 0 for k in range(n)),
            tuple(1 if k % 2 == 1 else 0 for k in range(n)),
        )
    logger.debug("Built curve model", g=g, n=n, parity=parity, relations=len(relations))
    return CurveModel(g=g, parity=parity, n=n, relation_matrix=relations)


@define(frozen=True)
class HClass:
    """Integral homology class in the reduced basis L₀..L_{2g−1}."""

    curve: CurveModel
    coords: tuple[int, ...] = field(converter=tuple)

    def __attrs_post_init__(self) -> None:
        if len(self.coords) != self.curve.rank:
            raise DimensionError(f"Expected {self.curve.rank} reduced coordinates, got {len(self.coords)}")

    @classmethod
    def basis(cls, curve: CurveModel, a: int) -> HClass:
        return cls(curve, tuple(1 if b == a else 0 for b in range(curve.rank)))

    @classmethod
    def zero(cls, curve: CurveModel) -> HClass:
        return cls(curve, (0,) * curve.rank)

    def _check(self, other: HClass) -> None:
        if other.curve != self.curve:
            raise IncompatibleOrderError("Homology classes live on different curves")

    def __add__(self, other: HClass) -> HClass:
        self._check(other)
        return HClass(self.curve, tuple(a + b for a, b in zip(self.coords, other.coords, strict=True)))

    def __neg__(self) -> HClass:
        return HClass(self.curve, tuple(-a for a in self.coords))

    def __sub__(self, other: HClass) -> HClass:
        return self + (-other)

    def __rmul__(self, scale: int) -> HClass:
        return HClass(self.curve, tuple(scale * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)


def reduce(curve: CurveModel, raw: Sequence[int]) -> HClass:
    """Express Σ raw[k]·ℓ_k in the reduced basis."""
    if len(raw) != curve.n:
        raise DimensionError(f"Raw loop vector must have length {curve.n}, got {len(raw)}")
    top = curve.rank
    if curve.parity == "odd":
        # L_{2g} = −(L₀ + … + L_{2g−1})
        coords = [raw[a] - raw[top] for a in range(top)]
    else:
        # L_{2g} = −Σ_{a even} L_a, L_{2g+1} = −Σ_{a odd} L_a
        coords = [raw[a] - raw[top + (a % 2)] for a in range(top)]
    return HClass(curve, coords)


def loop(curve: CurveModel, k: int) -> HClass:
    """Homology class of ℓ_k, subscript read modulo n."""
    raw = [0] * curve.n
    raw[k % curve.n] = 1
    return reduce(curve, raw)


def raw_pairing(curve: CurveModel, i: int, j: int) -> int:
    """(ℓ_i, ℓ_j) with indices read cyclically."""
    diff = (j - i) % curve.n
    if diff == 1:
        return 1
    if diff == curve.n - 1:
        return -1
    return 0


@cache
def gram_matrix(curve: CurveModel) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(raw_pairing(curve, a, b) for b in range(curve.rank)) for a in range(curve.rank))


def intersection(x: HClass, y: HClass) -> int:
    x._check(y)
    gram = gram_matrix(x.curve)
    return sum(
        xa * gram[a][b] * yb
        for a, xa in enumerate(x.coords)
        if xa
        for b, yb in enumerate(y.coords)
        if yb
    )


@cache
def phi_matrix(curve: CurveModel, power: int = 1) -> tuple[tuple[int, ...], ...]:
    """Matrix of |φ|^power on the reduced basis; column a is the image of L_a."""
    columns = [loop(curve, a + power).coords for a in range(curve.rank)]
    return tuple(tuple(columns[a][b] for a in range(curve.rank)) for b in range(curve.rank))


def phi_action(x: HClass, power: int = 1) -> HClass:
    """|φ|^power x, induced by the index shift ℓ_k ↦ ℓ_{k+1}."""
    matrix = phi_matrix(x.curve, power % x.curve.n)
    return HClass(
        x.curve,
        tuple(sum(row[a] * x.coords[a] for a in range(x.curve.rank)) for row in matrix),
    )


@define(frozen=True)
class ChiVector:
    """χ_j = Σ_k ζ^{jk} ℓ_k over the raw generators."""

    j: int
    coords: tuple[CycNum, ...] = field(converter=tuple)


def _check_index(curve: CurveModel, i: int) -> None:
    if not 1 <= i <= curve.n - 1:
        raise IndexRangeError(f"Index must lie in 1..{curve.n - 1}, got {i}")


def chi(curve: CurveModel, j: int) -> ChiVector:
    _check_index(curve, j)
    return ChiVector(j, tuple(zeta_pow(curve.n, j * k) for k in range(curve.n)))


def ell_in_chi(curve: CurveModel, i: int) -> tuple[CycNum, ...]:
    """Coefficients of ℓ_i on χ₁..χ_{n−1}: (1/n)·ζ^{−ij}."""
    if not 0 <= i <= curve.n - 1:
        raise IndexRangeError(f"Loop index must lie in 0..{curve.n - 1}, got {i}")
    scale = Fraction(1, curve.n)
    return tuple(zeta_pow(curve.n, -i * j) * scale for j in range(1, curve.n))


def chi_combination(curve: CurveModel, weights: Sequence[CycNum]) -> tuple[CycNum, ...]:
    """Raw coordinates of Σ_j weights[j−1]·χ_j."""
    if len(weights) != curve.n - 1:
        raise DimensionError(f"Expected {curve.n - 1} χ-weights, got {len(weights)}")
    out = [CycNum.zero(curve.n)] * curve.n
    for j, w in enumerate(weights, start=1):
        if w.is_zero():
            continue
        vec = chi(curve, j)
        out = [acc + w * c for acc, c in zip(out, vec.coords, strict=True)]
    return tuple(out)


def shift_raw(coords: Sequence[CycNum]) -> tuple[CycNum, ...]:
    """Apply ℓ_k ↦ ℓ_{k+1} to cyclotomic raw coordinates."""
    return tuple(coords[k - 1] for k in range(len(coords)))


def pair_raw(curve: CurveModel, coords: Sequence[CycNum], k: int) -> CycNum:
    """Cyclotomic extension of the intersection pairing (Σ c_m ℓ_m, ℓ_k)."""
    total = CycNum.zero(curve.n)
    for m in ((k - 1) % curve.n, (k + 1) % curve.n):
        total = total + coords[m] * raw_pairing(curve, m, k)
    return total


@define(frozen=True)
class PoincareDual:
    scalar: CycNum
    vector: ChiVector

    def consistency(self, curve: CurveModel) -> CycNum:
        """scalar·(χ, ℓ₀); equals the period of the dual form along ℓ₀."""
        return self.scalar * pair_raw(curve, self.vector.coords, 0)


def _pole_guard(curve: CurveModel, i: int) -> None:
    if curve.n % 2 == 0 and i % curve.n == curve.n // 2:
        raise PoleError(f"1 + ζ^(-{i}) vanishes for n = {curve.n}")


def poincare_dual(curve: CurveModel, i: int) -> PoincareDual:
    """P.D.(ω_i) = χ_i / (1 + ζ^{−i})."""
    _check_index(curve, i)
    _pole_guard(curve, i)
    scalar = 1 / (1 + zeta_pow(curve.n, -i))
    return PoincareDual(scalar, chi(curve, i))


def poincare_dual_conjugate(curve: CurveModel, i: int) -> PoincareDual:
    """P.D. of the conjugate form: χ_{n−i} / (1 + ζ^{i})."""
    _check_index(curve, i)
    _pole_guard(curve, i)
    scalar = 1 / (1 + zeta_pow(curve.n, i))
    return PoincareDual(scalar, chi(curve, curve.n - i))


@define(frozen=True)
class SymplecticBasis:
    """Classes (a₁, b₁, …, a_g, b_g) with their loop words."""

    scheme: str
    classes: tuple[HClass, ...]
    words: tuple[LoopWord, ...]

    @property
    def a(self) -> tuple[HClass, ...]:
        return self.classes[0::2]

    @property
    def b(self) -> tuple[HClass, ...]:
        return self.classes[1::2]

    def gram(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(intersection(x, y) for y in self.classes) for x in self.classes)


def word_class(curve: CurveModel, word: LoopWord) -> HClass:
    raw = [0] * curve.n
    for k, e in word:
        raw[k % curve.n] += e
    return reduce(curve, raw)


def _inverse(word: LoopWord) -> LoopWord:
    return tuple((k, -e) for k, e in reversed(word))


def _product(indices: Sequence[int]) -> LoopWord:
    return tuple((k, 1) for k in indices)


def symplectic_basis(curve: CurveModel, scheme: str) -> SymplecticBasis:
    """Symplectic basis by the named scheme.

    remark: a_i = ℓ_{2i−1}, b_i = (ℓ₀ℓ₂⋯ℓ_{2i−2})⁻¹ (even n only).
    word:   a_i = ℓ_{2(g−i)+1}⁻¹, b_i = (ℓ₁ℓ₃⋯ℓ_{2(g−i)−1})⁻¹ℓ₀ℓ₁⋯ℓ_{2(g−i)}.
    """
    g = curve.g
    words: list[LoopWord] = []
    if scheme == "remark":
        if curve.parity != "even":
            raise SchemeError("The remark basis is defined for n = 2g+2 only")
        for i in range(1, g + 1):
            words.append(_product([2 * i - 1]))
            words.append(_inverse(_product(range(0, 2 * i - 1, 2))))
    elif scheme == "word":
        for i in range(1, g + 1):
            m = g - i
            words.append(_inverse(_product([2 * m + 1])))
            words.append(_inverse(_product(range(1, 2 * m, 2))) + _product(range(2 * m + 1)))
    else:
        raise SchemeError(f"Unknown symplectic basis scheme {scheme!r}")
    classes = tuple(word_class(curve, w) for w in words)
    return SymplecticBasis(scheme=scheme, classes=classes, words=tuple(words))


# 🌀🧮🔚
