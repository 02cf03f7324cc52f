#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Closed-form integrals on (C_n, P₀) and the pointed harmonic volume.

Periods and quadratic periods are exact elements of Q(ζ_n). Iterated integrals
∫_{ℓ_k} ℓ_i ℓ_j of Poincaré-dual forms are rational; they are computed by the
closed t_u formula and, independently, by a group-ring accumulation oracle."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from fractions import Fraction
from functools import cache
import math

from attrs import define, field
from provide.foundation import logger

from harmvol.common.exceptions import IndexRangeError, InconsistencyError, KMembershipError
from harmvol.cyclotomic import CycNum, zeta_pow
from harmvol.homology import CurveModel, HClass, gram_matrix, loop, phi_matrix
from harmvol.tensor import Tensor

# A raw loop triple with its coefficient: (coefficient, i, j, k) for c·ℓ_i⊗ℓ_j⊗ℓ_k.
RawTerm = tuple[int, int, int, int]


def t(n: int, u: int) -> int:
    """t_u = Σ_{p=1}^{n−1} ζ^{pu}."""
    if n < 2:
        raise IndexRangeError(f"t_u needs n ≥ 2, got {n}")
    return n - 1 if u % n == 0 else -1


def _check_form(curve: CurveModel, i: int) -> None:
    if not 1 <= i <= curve.n - 1:
        raise IndexRangeError(f"Form index must lie in 1..{curve.n - 1}, got {i}")


def _check_loop(curve: CurveModel, k: int) -> None:
    if not 0 <= k <= curve.n - 1:
        raise IndexRangeError(f"Loop index must lie in 0..{curve.n - 1}, got {k}")


def period(curve: CurveModel, i: int, k: int) -> CycNum:
    """∫_{ℓ_k} ω_i = ζ^{ik}(1 − ζ^i)."""
    _check_form(curve, i)
    _check_loop(curve, k)
    return zeta_pow(curve.n, i * k) * (1 - zeta_pow(curve.n, i))


def quadratic_period(curve: CurveModel, i: int, j: int, k: int) -> CycNum:
    """∫_{ℓ_k} ω_i ω_j = ½ζ^{(i+j)k}(1 − 2ζ^j + ζ^{i+j})."""
    _check_form(curve, i)
    _check_form(curve, j)
    _check_loop(curve, k)
    n = curve.n
    bracket = 1 - 2 * zeta_pow(n, j) + zeta_pow(n, i + j)
    return zeta_pow(n, (i + j) * k) * bracket * Fraction(1, 2)


@define(frozen=True)
class PathIntegrals:
    """First and second iterated integrals of a fixed pair (ω_i, ω_j) along a path."""

    first_i: CycNum
    first_j: CycNum
    second_ij: CycNum
    second_ji: CycNum

    def __mul__(self, other: PathIntegrals) -> PathIntegrals:
        """Traverse self, then other."""
        return PathIntegrals(
            first_i=self.first_i + other.first_i,
            first_j=self.first_j + other.first_j,
            second_ij=self.second_ij + other.second_ij + self.first_i * other.first_j,
            second_ji=self.second_ji + other.second_ji + self.first_j * other.first_i,
        )

    def inverse(self) -> PathIntegrals:
        return PathIntegrals(
            first_i=-self.first_i,
            first_j=-self.first_j,
            second_ij=self.second_ji,
            second_ji=self.second_ij,
        )

    def shuffle_defect(self) -> CycNum:
        """∫ω_iω_j + ∫ω_jω_i − ∫ω_i∫ω_j; zero for every genuine path."""
        return self.second_ij + self.second_ji - self.first_i * self.first_j


def arc_integrals(curve: CurveModel, i: int, j: int, k: int) -> PathIntegrals:
    """Formal integrals along the arc γ_k, reversed by the hyperelliptic involution."""
    n = curve.n
    fi = zeta_pow(n, i * k)
    fj = zeta_pow(n, j * k)
    half = fi * fj * Fraction(1, 2)
    return PathIntegrals(first_i=fi, first_j=fj, second_ij=half, second_ji=half)


def loop_integrals(curve: CurveModel, i: int, j: int, k: int) -> PathIntegrals:
    """Compose ℓ_k = γ_k · γ_{k+1}⁻¹ from the formal arc data."""
    _check_form(curve, i)
    _check_form(curve, j)
    _check_loop(curve, k)
    return arc_integrals(curve, i, j, k) * arc_integrals(curve, i, j, k + 1).inverse()


@cache
def _iterated_closed(n: int, i: int, j: int, k: int) -> Fraction:
    def s(a: int, b: int) -> int:
        return t(n, k - i + a) * t(n, k - j + b) + t(n, k - i - b) * t(n, k - j - a)

    return Fraction(s(1, 0) + s(1, 1) - s(0, 1) - s(-1, 1), 2 * n * n)


def iterated_closed(curve: CurveModel, i: int, j: int, k: int) -> Fraction:
    """∫_{ℓ_k} ℓ_i ℓ_j by the closed t_u formula; indices 0..n−1."""
    for idx in (i, j, k):
        _check_loop(curve, idx)
    return _iterated_closed(curve.n, i, j, k)


def iterated_oracle(curve: CurveModel, i: int, j: int, k: int) -> Fraction:
    """∫_{ℓ_k} ℓ_i ℓ_j by expanding the defining double sum in Z[ζ]."""
    for idx in (i, j, k):
        _check_loop(curve, idx)
    n = curve.n
    counts = [0] * n
    for p in range(1, n):
        for q in range(1, n):
            base = -i * p - j * q + (p + q) * k
            # (1 + ζ^{−p})(1 + ζ^{−q})(1 − 2ζ^q + ζ^{p+q})
            for shift_p in (0, -p):
                for shift_q in (0, -q):
                    for shift_c, weight in ((0, 1), (q, -2), (p + q, 1)):
                        counts[(base + shift_p + shift_q + shift_c) % n] += weight
    total = CycNum.from_exponents(n, counts)
    if not total.is_rational():
        raise InconsistencyError(f"Oracle sum at (i={i}, j={j}, k={k}) is not rational: {total}")
    return total.to_rational() / (2 * n * n)


@define(frozen=True)
class HVValue:
    """A harmonic-volume value with its class in R/Z."""

    raw: Fraction
    mod1: Fraction = field(init=False)

    def __attrs_post_init__(self) -> None:
        object.__setattr__(self, "mod1", self.raw - math.floor(self.raw))


def tensor3(curve: CurveModel, *classes: HClass) -> Tensor:
    """x ⊗ y ⊗ … for reduced homology classes."""
    return Tensor.from_vectors(curve.rank, *(c.coords for c in classes))


def raw_tensor(curve: CurveModel, terms: Iterable[RawTerm]) -> Tensor:
    """Σ c·ℓ_i⊗ℓ_j⊗ℓ_k expressed in the reduced basis."""
    out = Tensor.zero(curve.rank, 3)
    for c, i, j, k in terms:
        out = out + c * tensor3(curve, loop(curve, i), loop(curve, j), loop(curve, k))
    return out


def in_K(curve: CurveModel, t2: Tensor) -> bool:
    """Whether the intersection contraction of a degree-2 tensor vanishes."""
    gram = gram_matrix(curve)
    return sum((c * gram[a][b] for (a, b), c in t2), Fraction(0)) == 0


def in_K_tensor_H(curve: CurveModel, t3: Tensor) -> bool:
    """Leg-by-leg K membership of the first two legs."""
    gram = gram_matrix(curve)
    slices: dict[int, Fraction] = {}
    for (a, b, c), coeff in t3:
        slices[c] = slices.get(c, Fraction(0)) + coeff * gram[a][b]
    return not any(slices.values())


def projection_p(curve: CurveModel, t3: Tensor) -> tuple[HClass, HClass, HClass]:
    """a⊗b⊗c ↦ ((a,b)c, (b,c)a, (c,a)b), extended linearly over an integral tensor."""
    gram = gram_matrix(curve)
    parts = [[Fraction(0)] * curve.rank for _ in range(3)]
    for (a, b, c), coeff in t3:
        parts[0][c] += coeff * gram[a][b]
        parts[1][a] += coeff * gram[b][c]
        parts[2][b] += coeff * gram[c][a]
    for part in parts:
        if any(x.denominator != 1 for x in part):
            raise KMembershipError("projection_p is defined on integral tensors only")
    first, second, third = (HClass(curve, tuple(int(x) for x in part)) for part in parts)
    return first, second, third


def in_prime(curve: CurveModel, t3: Tensor) -> bool:
    return all(x.is_zero() for x in projection_p(curve, t3))


def _evaluate(curve: CurveModel, t3: Tensor) -> HVValue:
    raw = sum((coeff * iterated_closed(curve, a, b, c) for (a, b, c), coeff in t3), Fraction(0))
    return HVValue(raw)


def pointed_harmonic_volume(curve: CurveModel, t3: Tensor) -> HVValue:
    """I_{(C_n,P₀)} on K⊗H; the η correction integrates to zero on every ℓ_k."""
    if t3.dim != curve.rank or t3.degree != 3:
        raise KMembershipError(f"Expected a degree-3 tensor over {curve.rank} reduced generators")
    if not in_K_tensor_H(curve, t3):
        raise KMembershipError("First two legs of the tensor do not lie in K")
    value = _evaluate(curve, t3)
    logger.debug("Pointed harmonic volume", n=curve.n, terms=len(t3.terms), raw=str(value.raw))
    return value


def harmonic_volume(curve: CurveModel, t3: Tensor) -> HVValue:
    """Base-point free harmonic volume I_C, defined on (H⊗³)′ = ker p."""
    if not in_prime(curve, t3):
        raise KMembershipError("Tensor is not in the kernel of projection_p")
    return pointed_harmonic_volume(curve, t3)


def projection_matrix(curve: CurveModel) -> list[list[int]]:
    """Matrix of projection_p: rows are the 3·2g output coordinates, columns the index cube."""
    size = curve.rank
    gram = gram_matrix(curve)
    cols = size**3
    rows = [[0] * cols for _ in range(3 * size)]
    for col in range(cols):
        a, rest = divmod(col, size * size)
        b, c = divmod(rest, size)
        rows[c][col] += gram[a][b]
        rows[size + a][col] += gram[b][c]
        rows[2 * size + b][col] += gram[c][a]
    return rows


def _cube_index(curve: CurveModel, col: int) -> tuple[int, int, int]:
    size = curve.rank
    a, rest = divmod(col, size * size)
    b, c = divmod(rest, size)
    return a, b, c


def prime_basis(curve: CurveModel) -> list[Tensor]:
    """Integral basis of (H⊗³)′ from the Smith normal form of projection_p."""
    from harmvol.cohomology import kernel_basis

    vectors = kernel_basis(projection_matrix(curve))
    basis = [
        Tensor(curve.rank, 3, ((_cube_index(curve, col), x) for col, x in enumerate(vec) if x))
        for vec in vectors
    ]
    logger.debug("Computed (H⊗³)′ basis", n=curve.n, rank=len(basis))
    return basis


def phi_tensor(curve: CurveModel, t3: Tensor, power: int = 1) -> Tensor:
    return t3.map_legs(phi_matrix(curve, power % curve.n))


# -- value table ------------------------------------------------------------


@define(frozen=True)
class TableRow:
    block: str
    condition: str
    i: int
    j: int
    k: int
    printed: Fraction
    predicted: Fraction
    value: HVValue

    @property
    def match(self) -> bool:
        return self.value.mod1 == self.predicted

    @property
    def erratum(self) -> bool:
        """The printed entry differs from the value forced by the loop relations."""
        return self.printed != self.predicted

    @property
    def tensor(self) -> str:
        i, j, k = self.i, self.j, self.k
        if self.block == "pair":
            return f"l{i}⊗l{j}⊗l{k}"
        if self.block == "square":
            return f"l{i}⊗l{i}⊗l{k}"
        if self.block == "symmetric":
            return f"(l{i}⊗l{i + 1}+l{i + 1}⊗l{i})⊗l{k}"
        return f"(l{i}⊗l{i + 1}-l{i + 1}⊗l{i + 2})⊗l{k}"


@define(frozen=True)
class TheoremTable:
    n: int
    rows: tuple[TableRow, ...]

    @property
    def all_match(self) -> bool:
        return all(r.match for r in self.rows)

    def mismatches(self) -> list[TableRow]:
        return [r for r in self.rows if not r.match]

    def assert_reproduced(self) -> None:
        bad = self.mismatches()
        if bad:
            first = bad[0]
            raise InconsistencyError(
                f"{len(bad)} table row(s) disagree for n={self.n}; first: {first.tensor} "
                f"[{first.condition}] computed {first.value.mod1}, expected {first.predicted}"
            )


def _pair_prediction(n: int, d: int, e: int) -> tuple[str, Fraction, Fraction]:
    """(condition, printed, predicted) for ℓ_i⊗ℓ_j⊗ℓ_k with j − i = d, k − i ≡ e."""
    q = Fraction(1, n)
    zero = Fraction(0)
    if e == n - 1:
        return "k=i-1", 1 - q, 1 - q
    if e == 0:
        return "k=i", zero, zero
    if e == 1 and d == 2:
        # Summing over the loop relation forces 2/n; the printed entry reads 1/n.
        return "i+1=j-1=k", q, 2 * q
    if e == 1:
        return "j-i>=3 and k=i+1", q, q
    if 2 <= e <= d - 2:
        return "i+2<=k<=j-2", zero, zero
    if e == d - 1:
        return "j-i>=3 and k=j-1", q, q
    if e == d:
        return "k=j", zero, zero
    if e == d + 1:
        return "k=j+1", 1 - q, 1 - q
    return "k<=i-2", zero, zero


def _combination_prediction(n: int, e: int) -> tuple[str, Fraction, Fraction]:
    zero = Fraction(0)
    if e == n - 1:
        return "k=i-1", Fraction(n - 1, n), Fraction(n - 1, n)
    if e == 0:
        return "k=i", Fraction(n + 4, 2 * n), Fraction(n + 4, 2 * n)
    if e == 1:
        return "k=i+1", zero, zero
    if e == 2:
        return "k=i+2", Fraction(n - 4, 2 * n), Fraction(n - 4, 2 * n)
    if e == 3:
        # The printed 1/(2n) is incompatible with the loop relation; the formula gives 1/n.
        return "k=i+3", Fraction(1, 2 * n), Fraction(1, n)
    return "k>=i+4", zero, zero


def theorem_table(curve: CurveModel, i: int = 0) -> TheoremTable:
    """Evaluate every row of the value table at base index i.

    Representatives use j − i = d for 2 ≤ d ≤ n − 3 and every k mod n; rows are
    classified by the cyclic offset k − i."""
    n = curve.n
    rows: list[TableRow] = []

    def add(block: str, cond: tuple[str, Fraction, Fraction], j: int, k: int, terms: Sequence[RawTerm]) -> None:
        condition, printed, predicted = cond
        value = pointed_harmonic_volume(curve, raw_tensor(curve, terms))
        rows.append(TableRow(block, condition, i % n, j % n, k % n, printed, predicted, value))

    for d in range(2, n - 2):
        j = i + d
        for e in range(n):
            k = i + e
            add("pair", _pair_prediction(n, d, e), j, k, [(1, i % n, j % n, k % n)])
    for e in range(n):
        k = i + e
        half = Fraction(1, 2) if e in (1, n - 1) else Fraction(0)
        cond = "k=i±1" if half else "otherwise"
        add("square", (cond, half, half), i, k, [(1, i % n, i % n, k % n)])
    for e in range(n):
        k = i + e
        terms = [(1, i % n, (i + 1) % n, k % n), (1, (i + 1) % n, i % n, k % n)]
        add("symmetric", ("all k", Fraction(0), Fraction(0)), i + 1, k, terms)
    for e in range(n):
        k = i + e
        terms = [(1, i % n, (i + 1) % n, k % n), (-1, (i + 1) % n, (i + 2) % n, k % n)]
        add("combination", _combination_prediction(n, e), i + 1, k, terms)

    table = TheoremTable(n=n, rows=tuple(rows))
    logger.info(f"Value table for n={n}: {len(rows)} rows, {len(table.mismatches())} mismatches")
    return table


# 🌀🧮🔚
