#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#


from collections.abc import Sequence
from fractions import Fraction

from attrs import evolve
from hypothesis import given, settings, strategies as st
import pytest
import sympy

from harmvol.cohomology import (
    Cocycle,
    KHModule,
    class_vanishes,
    coboundary_solve,
    cokernel_witness,
    delta_I,
    kernel_K,
    kernel_basis,
    lift_I,
    mat_vec,
    norm,
    smith_normal_form,
    solve_integral,
    tau1_in_M,
    verify_main_theorem,
)
from harmvol.common.exceptions import KMembershipError
from harmvol.homology import CurveModel, build_curve
from harmvol.periods import in_K


def _matmul(a: object, b: object) -> sympy.Matrix:
    return sympy.Matrix(a) * sympy.Matrix(b)


def _coboundary(kh: KHModule, u: Sequence[int]) -> list[int]:
    """(φ − 1)u on coordinate vectors of M."""
    return [a - b for a, b in zip(kh.apply(list(u)), u, strict=True)]


class TestSmithNormalForm:
    """Integer elimination with tracked transforms."""

    def test_textbook_example(self) -> None:
        a = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
        snf = smith_normal_form(a)
        assert snf.diagonal == [2, 6, 12]
        assert snf.rank == 3
        assert _matmul(_matmul(snf.U, a), snf.V) == sympy.Matrix(snf.D)
        assert abs(sympy.Matrix(snf.U).det()) == 1
        assert abs(sympy.Matrix(snf.V).det()) == 1
        assert _matmul(snf.V, snf.V_inv) == sympy.eye(3)

    @pytest.mark.property
    @settings(max_examples=200, deadline=None)
    @given(
        st.integers(1, 4).flatmap(
            lambda rows: st.integers(1, 4).flatmap(
                lambda cols: st.lists(
                    st.lists(st.integers(-6, 6), min_size=cols, max_size=cols), min_size=rows, max_size=rows
                )
            )
        )
    )
    def test_decomposition_property(self, a: list[list[int]]) -> None:
        """U·A·V = D, U and V unimodular, d₁ | d₂ | … and D zero off the diagonal."""
        snf = smith_normal_form(a)
        assert _matmul(_matmul(snf.U, a), snf.V) == sympy.Matrix(snf.D)
        assert abs(sympy.Matrix(snf.U).det()) == 1
        assert abs(sympy.Matrix(snf.V).det()) == 1
        assert _matmul(snf.V, snf.V_inv) == sympy.eye(len(a[0]))
        for r, row in enumerate(snf.D):
            for c, x in enumerate(row):
                if r != c:
                    assert x == 0
        factors = snf.invariant_factors
        assert all(d > 0 for d in factors)
        assert all(b % a_ == 0 for a_, b in zip(factors, factors[1:]))
        assert all(d == 0 for d in snf.diagonal[snf.rank :])

    def test_rank_deficient(self) -> None:
        snf = smith_normal_form([[1, 2], [2, 4]])
        assert snf.rank == 1
        assert snf.invariant_factors == [1]

    def test_kernel_basis(self) -> None:
        a = [[1, 1, 0], [0, 2, 2]]
        basis = kernel_basis(a)
        assert len(basis) == 1
        assert mat_vec(a, basis[0]) == [0, 0]
        assert any(basis[0])

    def test_solve_integral(self) -> None:
        a = [[2, 0], [0, 3]]
        assert solve_integral(a, [4, 9]) == (2, 3)
        assert solve_integral(a, [1, 0]) is None


class TestCyclicCohomology:
    """H¹(Z/n; M) decisions on a small module."""

    def test_z2_sign_module(self) -> None:
        """M = Z with φ = −1: H¹ = Z/2, generated by the class of 1."""
        action = [[-1]]
        assert not coboundary_solve(action, [1]).vanishes
        result = coboundary_solve(action, [2])
        assert result.vanishes
        assert result.witness == (-1,)
        assert cokernel_witness(action) == (-1,)

    def test_trivial_cokernel(self) -> None:
        assert cokernel_witness([[0, 1], [1, 0]]) is None


class TestKernelK:
    """K ⊂ H⊗H and the module M = Hom(K⊗H, Z)."""

    def test_genus2_sizes(self, genus2_curve: CurveModel) -> None:
        kh = kernel_K(genus2_curve)
        assert isinstance(kh, KHModule)
        assert kh.k_rank == 15
        assert kh.size == 60

    def test_basis_lies_in_k(self, c6: CurveModel) -> None:
        kh = kernel_K(c6)
        for alpha in range(kh.k_rank):
            assert in_K(c6, kh.k_tensor(alpha))

    def test_non_k_vector_rejected(self, c6: CurveModel) -> None:
        kh = kernel_K(c6)
        vec = [0] * 16
        vec[1] = 1  # L0⊗L1
        with pytest.raises(KMembershipError):
            kh.k_coordinates(vec)

    def test_action_has_order_n(self, c5: CurveModel) -> None:
        kh = kernel_K(c5)
        for index in (0, 7, kh.size - 1):
            start = [int(i == index) for i in range(kh.size)]
            vec = start
            for _ in range(c5.n):
                vec = kh.apply(vec)
            assert vec == start
            assert kh.apply(start, c5.n) == start


class TestMainTheorem:
    """δI and [τ₁] in H¹(G; M)."""

    def test_cocycles_have_zero_norm(self, genus2_curve: CurveModel) -> None:
        kh = kernel_K(genus2_curve)
        tau = tau1_in_M(genus2_curve, kh)
        delta = delta_I(genus2_curve, kh, lift_I(genus2_curve, kh))
        assert not any(norm(kh, tau.values))
        assert not any(norm(kh, delta.values))

    def test_cocycle_arithmetic(self) -> None:
        a = Cocycle((1, 2), 5)
        assert (a - a).is_zero()
        assert (a + a).values == (2, 4)

    def test_verify_genus2(self, genus2_curve: CurveModel) -> None:
        report = verify_main_theorem(genus2_curve.g, genus2_curve.parity)
        assert report.holds
        assert report.delta_integral
        assert report.identity != "none"
        assert report.witness is not None
        assert report.k_rank == 15

    @pytest.mark.parametrize("parity", ["even", "odd"])
    def test_witness_solves_the_coboundary_equation(self, parity: str) -> None:
        curve = build_curve(2, parity)
        kh = kernel_K(curve)
        candidate = tau1_in_M(curve, kh) - delta_I(curve, kh, lift_I(curve, kh))
        result = class_vanishes(candidate, kh)
        assert result.vanishes
        assert result.witness is not None
        assert _coboundary(kh, result.witness) == list(candidate.values)

    def test_even_n_fixes_the_sign(self, c6: CurveModel) -> None:
        """For n = 6 only τ₁ − (φĨ − Ĩ) is a coboundary; the opposite sign is not."""
        report = verify_main_theorem(c6.g, c6.parity)
        assert report.vanishes
        assert not report.opposite_vanishes
        assert report.identity == "tau1 - (phi*I - I)"
        assert report.holds

    def test_opposite_sign_alone_does_not_hold(self, c6: CurveModel) -> None:
        report = evolve(verify_main_theorem(c6.g, c6.parity), vanishes=False, opposite_vanishes=True)
        assert not report.holds

    @pytest.mark.slow
    def test_even_n8_fixes_the_sign(self) -> None:
        report = verify_main_theorem(3, "even")
        assert report.n == 8
        assert report.vanishes
        assert not report.opposite_vanishes
        assert report.holds

    @pytest.mark.slow
    @pytest.mark.parametrize("parity", ["even", "odd"])
    def test_verify_genus3(self, parity: str) -> None:
        assert verify_main_theorem(3, parity).holds


# Both genus-2 modules have rank 15 · 4 = 60.
GENUS2_M_SIZE = 60
m_vectors = st.lists(st.integers(-3, 3), min_size=GENUS2_M_SIZE, max_size=GENUS2_M_SIZE)


class TestLiftIndependence:
    """Changing the lift of I by an integral u moves δI by (φ − 1)u and leaves the class alone."""

    @pytest.mark.property
    @settings(max_examples=25, deadline=None)
    @given(parity=st.sampled_from(["even", "odd"]), u=m_vectors)
    def test_perturbed_lift(self, parity: str, u: list[int]) -> None:
        curve = build_curve(2, parity)
        kh = kernel_K(curve)
        lift = lift_I(curve, kh)
        perturbed = tuple(x + Fraction(d) for x, d in zip(lift, u, strict=True))

        before = delta_I(curve, kh, lift)
        after = delta_I(curve, kh, perturbed)
        assert [a - b for a, b in zip(after.values, before.values, strict=True)] == _coboundary(kh, u)

        candidate = tau1_in_M(curve, kh) - after
        result = class_vanishes(candidate, kh)
        assert result.vanishes
        assert result.witness is not None
        assert _coboundary(kh, result.witness) == list(candidate.values)

    @pytest.mark.property
    @settings(max_examples=200, deadline=None)
    @given(parity=st.sampled_from(["even", "odd"]), u=m_vectors)
    def test_coboundaries_vanish(self, parity: str, u: list[int]) -> None:
        kh = kernel_K(build_curve(2, parity))
        c = Cocycle(tuple(_coboundary(kh, u)), kh.curve.n)
        result = class_vanishes(c, kh)
        assert result.vanishes
        assert result.witness is not None
        assert _coboundary(kh, result.witness) == list(c.values)


# 🌀🧮🔚
