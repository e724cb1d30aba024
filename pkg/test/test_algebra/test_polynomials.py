# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

import pytest

from chevwidth.algebra import polynomials as P
from chevwidth.algebra.polynomials import FiniteField, field_of_order, finite_field


class TestFiniteField:
    def test_prime_field(self):
        f7 = finite_field(7)
        assert f7.q == 7
        assert f7.degree == 1
        assert f7.mul(3, 5) == 1
        assert f7.inv(3) == 5
        assert f7.neg(2) == 5
        assert f7.pow(3, -1) == 5

    def test_not_prime(self):
        with pytest.raises(ValueError, match="6 is not prime"):
            FiniteField(6)

    def test_reducible_modulus(self):
        # x^2 + 1 = (x + 1)^2 over F2
        with pytest.raises(ValueError, match="not irreducible"):
            FiniteField(2, (1, 0, 1))

    def test_shared_instance(self):
        assert finite_field(5) is finite_field(5)

    @pytest.mark.parametrize(
        "q,modulus", [(4, (1, 1, 1)), (8, (1, 1, 0, 1)), (9, (1, 0, 1))]
    )
    def test_field_of_order_modulus(self, q, modulus):
        field = field_of_order(q)
        assert field.q == q
        assert field.modulus == modulus

    def test_field_of_order_not_prime_power(self):
        with pytest.raises(ValueError, match="not a prime power"):
            field_of_order(6)

    def test_extension_arithmetic(self):
        f9 = field_of_order(9)
        # x has code 3 and x^2 = -1 = 2
        assert f9.mul(3, 3) == 2
        # (1 + x) + (2 + x) = 2x
        assert f9.add(4, 5) == 6
        for a in f9.units():
            assert f9.mul(a, f9.inv(a)) == 1

    def test_inverse_of_zero(self):
        with pytest.raises(ZeroDivisionError):
            finite_field(5).inv(0)

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
    def test_primitive_element(self, q):
        field = field_of_order(q)
        g = field.primitive_element()
        powers = {field.pow(g, k) for k in range(q - 1)}
        assert powers == set(field.units())

    def test_format(self):
        f9 = field_of_order(9)
        assert f9.format(0) == "0"
        assert f9.format(4) == "x+1"
        assert finite_field(5).format(3) == "3"


class TestPolynomials:
    f3 = finite_field(3)

    def test_trim_and_degree(self):
        assert P.trim((1, 2, 0, 0)) == (1, 2)
        assert P.degree(()) == -1
        assert P.degree((0, 0, 1)) == 2

    def test_mul_divmod(self):
        f = (1, 1)  # t + 1
        g = (2, 0, 1)  # t^2 + 2
        product = P.poly_mul(self.f3, f, g)
        assert P.poly_divmod(self.f3, product, g) == (f, ())
        quotient, remainder = P.poly_divmod(self.f3, (1, 0, 0, 1), g)
        assert P.poly_add(self.f3, P.poly_mul(self.f3, quotient, g), remainder) == (1, 0, 0, 1)
        assert P.degree(remainder) < 2

    def test_divide_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            P.poly_divmod(self.f3, (1,), ())

    def test_gcd_xgcd(self):
        f = P.poly_mul(self.f3, (1, 1), (2, 1))
        g = P.poly_mul(self.f3, (1, 1), (0, 1))
        assert P.poly_gcd(self.f3, f, g) == (1, 1)
        d, a, b = P.poly_xgcd(self.f3, f, g)
        combination = P.poly_add(
            self.f3, P.poly_mul(self.f3, a, f), P.poly_mul(self.f3, b, g)
        )
        assert d == (1, 1)
        assert combination == d

    def test_is_irreducible(self):
        assert P.is_irreducible(self.f3, (1, 0, 1))
        assert not P.is_irreducible(self.f3, (2, 0, 1))  # t^2 - 1
        assert not P.is_irreducible(self.f3, (1,))

    @pytest.mark.parametrize("q,n,count", [(2, 1, 2), (2, 2, 1), (2, 3, 2), (2, 4, 3), (3, 2, 3)])
    def test_irreducible_counts(self, q, n, count):
        assert len(P.irreducibles(field_of_order(q), n)) == count

    def test_factor_monic(self):
        # 2 (t + 1)^2 t (t^2 + 1) over F3
        f = P.poly_scale(
            self.f3,
            2,
            P.poly_mul(
                self.f3,
                P.poly_mul(self.f3, (1, 1), (1, 1)),
                P.poly_mul(self.f3, (0, 1), (1, 0, 1)),
            ),
        )
        assert P.factor_monic(self.f3, f) == {(0, 1): 1, (1, 1): 2, (1, 0, 1): 1}

    def test_multiplicity(self):
        assert P.multiplicity(self.f3, (0, 0, 1), (0, 1)) == 2
        assert P.multiplicity(self.f3, (1, 1), (0, 1)) == 0

    def test_eval_and_powmod(self):
        assert P.poly_eval(self.f3, (1, 0, 1), 1) == 2
        # t^3 = t mod t^2 + 1 up to sign: t^3 = -t
        assert P.poly_powmod(self.f3, (0, 1), 3, (1, 0, 1)) == (0, 2)

    def test_format_poly(self):
        assert P.format_poly((3, 0, 1), "t", str) == "t^2+3"
        assert P.format_poly((2, 1), "t", str, low=-1) == "1+2*t^-1"
        assert P.format_poly((), "t", str) == ""
