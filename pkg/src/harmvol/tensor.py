#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Sparse exact tensors over a fixed basis of size ``dim``."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping, Sequence
from fractions import Fraction
from itertools import product

from attrs import define, field

from harmvol.common.exceptions import DimensionError

Index = tuple[int, ...]
Matrix = Sequence[Sequence[int]]


def _normalize(terms: Iterable[tuple[Index, int | Fraction]]) -> tuple[tuple[Index, Fraction], ...]:
    acc: dict[Index, Fraction] = {}
    for idx, c in terms:
        acc[idx] = acc.get(idx, Fraction(0)) + Fraction(c)
    return tuple(sorted((idx, c) for idx, c in acc.items() if c))


@define(frozen=True)
class Tensor:
    """Element of H^{⊗degree} ⊗ Q stored as sorted (index, coefficient) pairs."""

    dim: int
    degree: int
    terms: tuple[tuple[Index, Fraction], ...] = field(converter=_normalize)

    def __attrs_post_init__(self) -> None:
        for idx, _ in self.terms:
            if len(idx) != self.degree or any(not 0 <= a < self.dim for a in idx):
                raise DimensionError(f"Index {idx} does not fit a degree-{self.degree} tensor over {self.dim}")

    @classmethod
    def from_dict(cls, dim: int, degree: int, coeffs: Mapping[Index, int | Fraction]) -> Tensor:
        return cls(dim, degree, coeffs.items())

    @classmethod
    def zero(cls, dim: int, degree: int) -> Tensor:
        return cls(dim, degree, ())

    @classmethod
    def unit(cls, dim: int) -> Tensor:
        return cls(dim, 0, (((), 1),))

    @classmethod
    def basis(cls, dim: int, idx: Index) -> Tensor:
        return cls(dim, len(idx), ((tuple(idx), 1),))

    @classmethod
    def from_vectors(cls, dim: int, *vectors: Sequence[int | Fraction]) -> Tensor:
        """v₁ ⊗ v₂ ⊗ … for coordinate vectors of length dim."""
        for v in vectors:
            if len(v) != dim:
                raise DimensionError(f"Vector of length {len(v)} in a tensor over {dim}")
        supports = [[(a, c) for a, c in enumerate(v) if c] for v in vectors]
        terms = []
        for combo in product(*supports):
            coeff = Fraction(1)
            for _, c in combo:
                coeff *= c
            terms.append((tuple(a for a, _ in combo), coeff))
        return cls(dim, len(vectors), terms)

    def as_dict(self) -> dict[Index, Fraction]:
        return dict(self.terms)

    def __getitem__(self, idx: Index) -> Fraction:
        return self.as_dict().get(tuple(idx), Fraction(0))

    def __iter__(self) -> Iterator[tuple[Index, Fraction]]:
        return iter(self.terms)

    def _check(self, other: Tensor) -> None:
        if (other.dim, other.degree) != (self.dim, self.degree):
            raise DimensionError(
                f"Cannot combine degree {self.degree} over {self.dim} with degree {other.degree} over {other.dim}"
            )

    def __add__(self, other: Tensor) -> Tensor:
        self._check(other)
        return Tensor(self.dim, self.degree, self.terms + other.terms)

    def __neg__(self) -> Tensor:
        return Tensor(self.dim, self.degree, tuple((idx, -c) for idx, c in self.terms))

    def __sub__(self, other: Tensor) -> Tensor:
        return self + (-other)

    def __mul__(self, scale: int | Fraction) -> Tensor:
        return Tensor(self.dim, self.degree, tuple((idx, c * scale) for idx, c in self.terms))

    __rmul__ = __mul__

    def otimes(self, other: Tensor) -> Tensor:
        if other.dim != self.dim:
            raise DimensionError(f"Tensor product over {self.dim} and {other.dim}")
        return Tensor(
            self.dim,
            self.degree + other.degree,
            tuple((x + y, c * d) for x, c in self.terms for y, d in other.terms),
        )

    def map_legs(self, matrix: Matrix) -> Tensor:
        """Apply the linear map with columns ``matrix[·][a]`` = image of e_a on every leg."""
        images = [[(b, matrix[b][a]) for b in range(self.dim) if matrix[b][a]] for a in range(self.dim)]
        out = []
        for idx, c in self.terms:
            for combo in product(*(images[a] for a in idx)):
                coeff = c
                for _, m in combo:
                    coeff *= m
                out.append((tuple(b for b, _ in combo), coeff))
        return Tensor(self.dim, self.degree, out)

    def is_zero(self) -> bool:
        return not self.terms

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for _, c in self.terms)

    def support(self) -> list[Index]:
        return [idx for idx, _ in self.terms]


def all_indices(dim: int, degree: int) -> Iterator[Index]:
    """Lexicographic enumeration of the index cube."""
    return product(range(dim), repeat=degree)


# 🌀🧮🔚
