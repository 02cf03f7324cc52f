#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Integer linear algebra and the cyclic-group cohomology of M = Hom(K⊗H, Z).

G = ⟨φ⟩ ≅ Z/n acts on M by (φ·f)(x) = f(φ⁻¹x). A 1-cocycle is determined by
its value c = c(φ), subject to Σ_k φ^k c = 0; coboundaries form (φ − 1)M."""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from functools import cache
import time

from attrs import define, evolve, field
from provide.foundation import logger

from harmvol.common.exceptions import InconsistencyError, KMembershipError
from harmvol.homology import CurveModel, build_curve, gram_matrix, phi_matrix
from harmvol.magnus import Tau1Map, hom_identify, shift_cocycle
from harmvol.periods import iterated_closed
from harmvol.tensor import Tensor

IntMatrix = list[list[int]]


def _identity(size: int) -> IntMatrix:
    return [[1 if r == c else 0 for c in range(size)] for r in range(size)]


@define(frozen=True)
class SNFData:
    """U·A·V = D with U, V unimodular and d₁ | d₂ | … on the diagonal."""

    U: tuple[tuple[int, ...], ...]
    D: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]
    V_inv: tuple[tuple[int, ...], ...]
    rank: int

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def invariant_factors(self) -> list[int]:
        return self.diagonal[: self.rank]


class _Reducer:
    """Elimination state; every operation is mirrored into U, V and V⁻¹."""

    def __init__(self, matrix: Sequence[Sequence[int]]) -> None:
        self.A: IntMatrix = [list(row) for row in matrix]
        self.m = len(self.A)
        self.n = len(self.A[0]) if self.m else 0
        self.U = _identity(self.m)
        self.V = _identity(self.n)
        self.V_inv = _identity(self.n)

    def swap_rows(self, i: int, j: int) -> None:
        if i != j:
            self.A[i], self.A[j] = self.A[j], self.A[i]
            self.U[i], self.U[j] = self.U[j], self.U[i]

    def swap_cols(self, i: int, j: int) -> None:
        if i == j:
            return
        for row in self.A:
            row[i], row[j] = row[j], row[i]
        for row in self.V:
            row[i], row[j] = row[j], row[i]
        self.V_inv[i], self.V_inv[j] = self.V_inv[j], self.V_inv[i]

    def add_row(self, target: int, source: int, q: int) -> None:
        """row_target += q·row_source."""
        for mat in (self.A, self.U):
            src, dst = mat[source], mat[target]
            for c, x in enumerate(src):
                if x:
                    dst[c] += q * x

    def add_col(self, target: int, source: int, q: int) -> None:
        """col_target += q·col_source."""
        for mat in (self.A, self.V):
            for row in mat:
                if row[source]:
                    row[target] += q * row[source]
        src, dst = self.V_inv[target], self.V_inv[source]
        for c, x in enumerate(src):
            if x:
                dst[c] -= q * x

    def negate_row(self, i: int) -> None:
        self.A[i] = [-x for x in self.A[i]]
        self.U[i] = [-x for x in self.U[i]]

    def smallest(self, t: int) -> tuple[int, int] | None:
        best: tuple[int, int] | None = None
        best_abs = 0
        for i in range(t, self.m):
            row = self.A[i]
            for j in range(t, self.n):
                x = row[j]
                if x and (best is None or abs(x) < best_abs):
                    best, best_abs = (i, j), abs(x)
                    if best_abs == 1:
                        return best
        return best

    def reduce_pivot(self, t: int) -> None:
        while True:
            p = self.A[t][t]
            clean = True
            for i in range(t + 1, self.m):
                if self.A[i][t]:
                    self.add_row(i, t, -(self.A[i][t] // p))
                    clean = clean and not self.A[i][t]
            for j in range(t + 1, self.n):
                if self.A[t][j]:
                    self.add_col(j, t, -(self.A[t][j] // p))
                    clean = clean and not self.A[t][j]
            if not clean:
                self._move_smallest_in_cross(t)
                continue
            bad = next(
                (i for i in range(t + 1, self.m) for j in range(t + 1, self.n) if self.A[i][j] % p),
                None,
            )
            if bad is None:
                return
            self.add_row(t, bad, 1)

    def _move_smallest_in_cross(self, t: int) -> None:
        candidates = [(abs(self.A[i][t]), i, t) for i in range(t, self.m) if self.A[i][t]]
        candidates += [(abs(self.A[t][j]), t, j) for j in range(t, self.n) if self.A[t][j]]
        _, i, j = min(candidates)
        self.swap_rows(t, i)
        self.swap_cols(t, j)


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SNFData:
    """Smith normal form over Z with smallest-pivot elimination."""
    red = _Reducer(matrix)
    t = 0
    while t < min(red.m, red.n):
        pos = red.smallest(t)
        if pos is None:
            break
        red.swap_rows(t, pos[0])
        red.swap_cols(t, pos[1])
        red.reduce_pivot(t)
        if red.A[t][t] < 0:
            red.negate_row(t)
        t += 1
    logger.debug("Smith normal form", rows=red.m, cols=red.n, rank=t)

    def freeze(mat: IntMatrix) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(row) for row in mat)

    return SNFData(U=freeze(red.U), D=freeze(red.A), V=freeze(red.V), V_inv=freeze(red.V_inv), rank=t)


def mat_vec(matrix: Sequence[Sequence[int]], vec: Sequence[int]) -> list[int]:
    return [sum(a * x for a, x in zip(row, vec, strict=True) if a) for row in matrix]


def kernel_basis(matrix: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Integral basis of {x : A x = 0}."""
    snf = smith_normal_form(matrix)
    cols = len(snf.V)
    return [tuple(snf.V[r][j] for r in range(cols)) for j in range(snf.rank, cols)]


def solve_with(snf: SNFData, c: Sequence[int]) -> tuple[int, ...] | None:
    y = mat_vec(snf.U, c)
    z = [0] * len(snf.V)
    for i, yi in enumerate(y):
        if i < snf.rank:
            d = snf.D[i][i]
            if yi % d:
                return None
            z[i] = yi // d
        elif yi:
            return None
    return tuple(mat_vec(snf.V, z))


def solve_integral(matrix: Sequence[Sequence[int]], c: Sequence[int]) -> tuple[int, ...] | None:
    """An integer x with A x = c, or None when c is not in the integral image."""
    return solve_with(smith_normal_form(matrix), c)


# -- K ⊗ H and M --------------------------------------------------------------


@define(frozen=True)
class KHModule:
    """K ⊂ H⊗H, the basis e_{α,c} = k_α ⊗ L_c of K⊗H, and φ on M."""

    curve: CurveModel
    k_basis: tuple[tuple[int, ...], ...]
    k_coords: tuple[tuple[int, ...], ...] = field(repr=False)
    k_residual: tuple[tuple[int, ...], ...] = field(repr=False)
    action: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def k_rank(self) -> int:
        return len(self.k_basis)

    @property
    def size(self) -> int:
        return self.k_rank * self.curve.rank

    def element(self, index: int) -> tuple[int, int]:
        """(α, c) for the basis vector e_index."""
        return divmod(index, self.curve.rank)

    def k_tensor(self, alpha: int) -> Tensor:
        size = self.curve.rank
        vec = self.k_basis[alpha]
        return Tensor(size, 2, ((divmod(pos, size), x) for pos, x in enumerate(vec) if x))

    def tensor(self, index: int) -> Tensor:
        alpha, c = self.element(index)
        return self.k_tensor(alpha).otimes(Tensor.basis(self.curve.rank, (c,)))

    def k_coordinates(self, vec: Sequence[int]) -> list[int]:
        if any(mat_vec(self.k_residual, vec)):
            raise KMembershipError("Vector does not lie in K")
        return mat_vec(self.k_coords, vec)

    def apply(self, f: Sequence[int], power: int = 1) -> list[int]:
        """φ^power · f on coordinate vectors of M."""
        out = list(f)
        for _ in range(power % self.curve.n):
            out = mat_vec(self.action, out)
        return out


def _flatten(curve: CurveModel, t2: Tensor) -> list[int]:
    size = curve.rank
    vec = [0] * (size * size)
    for (a, b), c in t2:
        vec[a * size + b] = int(c)
    return vec


@cache
def kernel_K(curve: CurveModel) -> KHModule:
    """K as the kernel of the intersection contraction, with φ acting on M."""
    size = curve.rank
    gram = gram_matrix(curve)
    contraction = [[gram[a][b] for a in range(size) for b in range(size)]]
    snf = smith_normal_form(contraction)
    cols = size * size
    k_basis = tuple(tuple(snf.V[r][j] for r in range(cols)) for j in range(snf.rank, cols))
    module = KHModule(
        curve=curve,
        k_basis=k_basis,
        k_coords=snf.V_inv[snf.rank :],
        k_residual=snf.V_inv[: snf.rank],
        action=(),
    )
    inv = phi_matrix(curve, curve.n - 1)
    # A[β][α]: K coordinates of φ⁻¹ k_α
    pulled = [module.k_coordinates(_flatten(curve, module.k_tensor(a).map_legs(inv))) for a in range(len(k_basis))]
    rows = []
    for alpha in range(len(k_basis)):
        for c in range(size):
            # row (α, c) holds the K⊗H coordinates of φ⁻¹(k_α ⊗ L_c)
            rows.append(
                tuple(pulled[alpha][beta] * inv[d][c] for beta in range(len(k_basis)) for d in range(size))
            )
    logger.debug("Built K⊗H", n=curve.n, k_rank=len(k_basis), size=len(rows))
    return evolve(module, action=tuple(rows))


@define(frozen=True)
class Cocycle:
    values: tuple[int, ...] = field(converter=tuple)
    n: int

    def __add__(self, other: Cocycle) -> Cocycle:
        return Cocycle(tuple(a + b for a, b in zip(self.values, other.values, strict=True)), self.n)

    def __neg__(self) -> Cocycle:
        return Cocycle(tuple(-a for a in self.values), self.n)

    def __sub__(self, other: Cocycle) -> Cocycle:
        return self + (-other)

    def is_zero(self) -> bool:
        return not any(self.values)


def norm(kh: KHModule, values: Sequence[int]) -> list[int]:
    """Σ_{k=0}^{n−1} φ^k · values."""
    total = [0] * len(values)
    current = list(values)
    for _ in range(kh.curve.n):
        total = [a + b for a, b in zip(total, current, strict=True)]
        current = kh.apply(current)
    return total


def lift_I(curve: CurveModel, kh: KHModule) -> tuple[Fraction, ...]:
    """Real lift Ĩ(e_{α,c}) = Σ k_α[a,b]·∫_{ℓ_c} ℓ_a ℓ_b."""
    size = curve.rank
    values = []
    for index in range(kh.size):
        alpha, c = kh.element(index)
        vec = kh.k_basis[alpha]
        values.append(
            sum(
                (x * iterated_closed(curve, pos // size, pos % size, c) for pos, x in enumerate(vec) if x),
                Fraction(0),
            )
        )
    return tuple(values)


def delta_I(curve: CurveModel, kh: KHModule, lift: Sequence[Fraction]) -> Cocycle:
    """c(φ) = φ·Ĩ − Ĩ, integral because I is G-invariant modulo Z."""
    n = curve.n
    # φ acts on real-valued functionals by the same integer matrix.
    moved = [sum((a * x for a, x in zip(row, lift, strict=True) if a), Fraction(0)) for row in kh.action]
    diff = [m - x for m, x in zip(moved, lift, strict=True)]
    bad = [i for i, x in enumerate(diff) if x.denominator != 1]
    if bad:
        raise InconsistencyError(f"φĨ − Ĩ is not integral at {len(bad)} basis vectors (first: {bad[0]})")
    return Cocycle(tuple(int(x) for x in diff), n)


def tau1_in_M(curve: CurveModel, kh: KHModule, tau: Tau1Map | None = None) -> Cocycle:
    """τ₁^std(φ) read through Hom(H, H⊗²) ≅ Hom(H⊗³, Z) and restricted to K⊗H."""
    tau = tau if tau is not None else shift_cocycle(curve)
    table = hom_identify(curve, tau)
    size = curve.rank
    values = []
    for index in range(kh.size):
        alpha, c = kh.element(index)
        vec = kh.k_basis[alpha]
        values.append(sum(x * table.get((pos // size, pos % size, c), 0) for pos, x in enumerate(vec) if x))
    return Cocycle(tuple(values), curve.n)


@define(frozen=True)
class Vanishing:
    vanishes: bool
    witness: tuple[int, ...] | None = None


def _minus_identity(action: Sequence[Sequence[int]]) -> IntMatrix:
    return [[a - (1 if r == c else 0) for c, a in enumerate(row)] for r, row in enumerate(action)]


def coboundary_snf(action: Sequence[Sequence[int]]) -> SNFData:
    """SNF of φ − 1."""
    return smith_normal_form(_minus_identity(action))


def coboundary_solve(action: Sequence[Sequence[int]], values: Sequence[int]) -> Vanishing:
    """Decide c ∈ (φ − 1)M and return u with (φ − 1)u = c."""
    witness = solve_with(coboundary_snf(action), values)
    return Vanishing(witness is not None, witness)


@cache
def _cached_coboundary(action: tuple[tuple[int, ...], ...]) -> SNFData:
    return coboundary_snf(action)


def class_vanishes(c: Cocycle, kh: KHModule) -> Vanishing:
    """Whether the class of c in H¹(G; M) is zero, with a witness."""
    snf = _cached_coboundary(kh.action)
    witness = solve_with(snf, c.values)
    return Vanishing(witness is not None, witness)


def cokernel_witness(action: Sequence[Sequence[int]]) -> tuple[int, ...] | None:
    """A norm-zero vector outside (φ − 1)M, when the invariant factors allow one."""
    snf = coboundary_snf(action)
    for i, d in enumerate(snf.invariant_factors):
        if d > 1:
            column = [snf.V[r][i] for r in range(len(snf.V))]
            image = mat_vec(_minus_identity(action), column)
            return tuple(x // d for x in image)
    return None


@define(frozen=True)
class MainTheoremReport:
    g: int
    parity: str
    n: int
    k_rank: int
    size: int
    delta_integral: bool
    delta_norm_zero: bool
    tau_norm_zero: bool
    vanishes: bool
    opposite_vanishes: bool
    witness: tuple[int, ...] | None
    invariant_factors: tuple[int, ...]
    timings: dict[str, float] = field(factory=dict, eq=False)

    @property
    def identity(self) -> str:
        if self.vanishes:
            return "tau1 - (phi*I - I)"
        if self.opposite_vanishes:
            return "tau1 + (phi*I - I)"
        return "none"

    @property
    def holds(self) -> bool:
        # opposite_vanishes is informational; only τ₁ − (φĨ − Ĩ) counts
        return self.delta_integral and self.delta_norm_zero and self.tau_norm_zero and self.vanishes


def verify_main_theorem(g: int, parity: str) -> MainTheoremReport:
    """δI + [τ₁] = 0 in H¹(G; M), read with du(φ) = u − φu."""
    curve = build_curve(g, parity)
    timings: dict[str, float] = {}

    def timed(label: str, start: float) -> None:
        timings[label] = round(time.perf_counter() - start, 6)

    start = time.perf_counter()
    kh = kernel_K(curve)
    timed("kernel_K", start)

    start = time.perf_counter()
    lift = lift_I(curve, kh)
    try:
        delta = delta_I(curve, kh, lift)
        integral = True
    except InconsistencyError as e:
        logger.error(f"δI is not integral for {curve.describe()}: {e}")
        delta, integral = Cocycle((0,) * kh.size, curve.n), False
    timed("delta_I", start)

    start = time.perf_counter()
    tau = tau1_in_M(curve, kh)
    timed("tau1_in_M", start)

    start = time.perf_counter()
    primary = class_vanishes(tau - delta, kh)
    opposite = class_vanishes(tau + delta, kh)
    timed("class_vanishes", start)

    report = MainTheoremReport(
        g=g,
        parity=parity,
        n=curve.n,
        k_rank=kh.k_rank,
        size=kh.size,
        delta_integral=integral,
        delta_norm_zero=not any(norm(kh, delta.values)),
        tau_norm_zero=not any(norm(kh, tau.values)),
        vanishes=primary.vanishes,
        opposite_vanishes=opposite.vanishes,
        witness=primary.witness,
        invariant_factors=tuple(d for d in _cached_coboundary(kh.action).invariant_factors if d != 1),
        timings=timings,
    )
    logger.info(f"Main theorem for {curve.describe()}: holds={report.holds} via {report.identity}")
    return report


# 🌀🧮🔚
