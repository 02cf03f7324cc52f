#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#


import cmath
from fractions import Fraction
import math

from hypothesis import given, settings, strategies as st
import pytest
import sympy

from harmvol.common.exceptions import (
    CyclotomicDivisionError,
    IncompatibleOrderError,
    InconsistencyError,
    IndexRangeError,
)
from harmvol.cyclotomic import CycNum, cyclotomic_poly, zeta_pow


class TestCyclotomicPolynomial:
    """Φ_n by repeated division."""

    @pytest.mark.parametrize("n", range(1, 31))
    def test_matches_sympy(self, n: int) -> None:
        """Coefficients agree with sympy's cyclotomic_poly."""
        x = sympy.symbols("x")
        expected = [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs())]
        assert list(cyclotomic_poly(n)) == expected

    def test_rejects_nonpositive_order(self) -> None:
        with pytest.raises(IndexRangeError):
            cyclotomic_poly(0)


class TestCycNum:
    """Exact arithmetic in Q(ζ_n)."""

    @pytest.mark.parametrize("n", [5, 6, 7, 8, 12])
    def test_zeta_has_order_n(self, n: int) -> None:
        assert zeta_pow(n, n) == CycNum.one(n)
        assert zeta_pow(n, 1) ** n == CycNum.one(n)
        assert zeta_pow(n, 3) * zeta_pow(n, n - 3) == CycNum.one(n)

    @pytest.mark.parametrize("n", [5, 6, 9, 10])
    def test_sum_of_roots_vanishes(self, n: int) -> None:
        """Σ_e ζ^e = 0 for n ≥ 2."""
        assert CycNum.from_exponents(n, [1] * n).is_zero()

    def test_t_values_are_rational(self) -> None:
        """Σ_{p=1}^{n−1} ζ^{pu} is n−1 or −1."""
        n = 7
        for u in range(n):
            total = sum((zeta_pow(n, p * u) for p in range(1, n)), CycNum.zero(n))
            assert total.is_rational()
            assert total.to_rational() == (n - 1 if u == 0 else -1)

    def test_conjugate_is_inverse_on_roots(self) -> None:
        n = 8
        for e in range(n):
            assert zeta_pow(n, e).conjugate() == zeta_pow(n, -e)

    def test_approx_matches_complex_embedding(self) -> None:
        n = 6
        value = (1 - 2 * zeta_pow(n, 2) + zeta_pow(n, 3)) * Fraction(1, 2)
        z = cmath.exp(2j * math.pi / n)
        assert abs(value.approx() - (1 - 2 * z**2 + z**3) / 2) < 1e-12

    def test_division(self) -> None:
        n = 5
        one_plus = 1 + zeta_pow(n, 1)
        assert (one_plus / one_plus) == CycNum.one(n)
        assert (1 / one_plus) * one_plus == CycNum.one(n)

    def test_zero_has_no_inverse(self) -> None:
        with pytest.raises(CyclotomicDivisionError):
            CycNum.zero(6).inverse()

    def test_orders_do_not_mix(self) -> None:
        with pytest.raises(IncompatibleOrderError):
            _ = zeta_pow(5, 1) + zeta_pow(6, 1)

    def test_irrational_to_rational_raises(self) -> None:
        with pytest.raises(InconsistencyError):
            zeta_pow(5, 1).to_rational()

    def test_group_ring_vector_length(self) -> None:
        with pytest.raises(IndexRangeError):
            CycNum.from_exponents(5, [1, 2])

    def test_str(self) -> None:
        assert str(CycNum.zero(5)) == "0"
        assert "ζ^1" in str(zeta_pow(5, 1))


@pytest.mark.property
class TestCycNumProperties:
    """Field axioms on random elements."""

    @settings(max_examples=200, deadline=None)
    @given(
        st.sampled_from([5, 6, 7, 8]).flatmap(
            lambda n: st.tuples(
                st.just(n),
                st.lists(st.integers(-5, 5), min_size=n, max_size=n),
                st.lists(st.integers(-5, 5), min_size=n, max_size=n),
            )
        )
    )
    def test_inverse_and_distributivity(self, data: tuple[int, list[int], list[int]]) -> None:
        n, xs, ys = data
        x = CycNum.from_exponents(n, xs)
        y = CycNum.from_exponents(n, ys)
        assert x * (y + 1) == x * y + x
        assert (x * y).conjugate() == x.conjugate() * y.conjugate()
        if not x.is_zero():
            assert x * x.inverse() == CycNum.one(n)


# 🌀🧮🔚
