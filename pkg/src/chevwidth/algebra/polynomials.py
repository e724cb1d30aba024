# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

"""
Dense arithmetic for finite fields and for polynomials over them.

Finite field elements are plain integer codes: a residue ``0 <= a < p``
for prime fields, and for ``F_{p^k}`` the code ``sum(d_i * p**i)`` of the
polynomial ``sum(d_i * x**i)`` reduced modulo a fixed monic irreducible
modulus. Polynomials over a finite field are tuples of codes, lowest
degree first, with no trailing zeros; the zero polynomial is ``()``.

These kernels are shared by :mod:`chevwidth.algebra.rings` and by the
residue fields used in :mod:`chevwidth.ktheory`.
"""

import functools
import itertools
from typing import Iterator

from sympy import factorint, isprime

#: polynomial over a finite field, lowest degree first
Poly = tuple[int, ...]


class FiniteField:
    """
    Arithmetic in ``F_q`` on integer codes. Use :func:`finite_field` to
    get the shared instance for a given prime and modulus.
    """

    def __init__(self, p: int, modulus: Poly | None = None):
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        # prime field: no modulus, or a degree-one modulus
        if modulus is None or len(modulus) <= 2:
            self.modulus: Poly = (0, 1)
            self.degree = 1
        else:
            if modulus[-1] != 1:
                raise ValueError("Field modulus must be monic")
            self.modulus = tuple(c % p for c in modulus)
            self.degree = len(modulus) - 1
            if not is_irreducible(finite_field(p), self.modulus):
                raise ValueError(f"Modulus {self.modulus} is not irreducible over F{p}")
        self.q = p**self.degree
        if self.degree > 1:
            self._build_tables()

    def __repr__(self) -> str:
        return f"<FiniteField q={self.q}>"

    # extension fields use discrete log tables for multiplication
    def _build_tables(self):
        self._exp: list[int] = []
        self._log: dict[int, int] = {}
        for candidate in range(2, self.q):
            if self._order_is_maximal(candidate):
                break
        else:  # pragma: no cover
            raise ValueError("No primitive element found")
        value = 1
        for power in range(self.q - 1):
            self._exp.append(value)
            self._log[value] = power
            value = self._mulmod_digits(value, candidate)

    def _order_is_maximal(self, code: int) -> bool:
        for prime in factorint(self.q - 1):
            if self._powmod_digits(code, (self.q - 1) // prime) == 1:
                return False
        return True

    def _mulmod_digits(self, a: int, b: int) -> int:
        prime_field = finite_field(self.p)
        product = poly_mul(prime_field, self.to_digits(a), self.to_digits(b))
        return self.from_digits(poly_mod(prime_field, product, self.modulus))

    def _powmod_digits(self, a: int, exponent: int) -> int:
        result = 1
        while exponent:
            if exponent & 1:
                result = self._mulmod_digits(result, a)
            a = self._mulmod_digits(a, a)
            exponent >>= 1
        return result

    def to_digits(self, code: int) -> Poly:
        """Coefficients over F_p (lowest first, trimmed) of a field code."""
        digits = []
        while code:
            code, digit = divmod(code, self.p)
            digits.append(digit)
        return tuple(digits)

    def from_digits(self, digits) -> int:
        code = 0
        for digit in reversed(tuple(digits)):
            code = code * self.p + digit % self.p
        return code

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a + b) % self.p
        code, place = 0, 1
        while a or b:
            a, da = divmod(a, self.p)
            b, db = divmod(b, self.p)
            code += ((da + db) % self.p) * place
            place *= self.p
        return code

    def neg(self, a: int) -> int:
        if self.degree == 1:
            return -a % self.p
        return self.from_digits(-d for d in self.to_digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.degree == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse in a field")
        if self.degree == 1:
            return pow(a, -1, self.p)
        return self._exp[-self._log[a] % (self.q - 1)]

    def pow(self, a: int, exponent: int) -> int:
        if exponent < 0:
            a, exponent = self.inv(a), -exponent
        if self.degree == 1:
            return pow(a, exponent, self.p)
        if a == 0:
            return 0 if exponent else 1
        return self._exp[(self._log[a] * exponent) % (self.q - 1)]

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def primitive_element(self) -> int:
        """Least code generating the multiplicative group."""
        if self.q == 2:
            return 1
        for candidate in self.units():
            if all(
                self.pow(candidate, (self.q - 1) // prime) != 1
                for prime in factorint(self.q - 1)
            ):
                return candidate
        raise ValueError("No primitive element found")  # pragma: no cover

    def format(self, code: int) -> str:
        """Text form of a field code: an integer for prime fields, a
        polynomial in ``x`` for extension fields."""
        if self.degree == 1:
            return str(code)
        return format_poly(self.to_digits(code), "x", str) or "0"


@functools.cache
def finite_field(p: int, modulus: Poly | None = None) -> FiniteField:
    """Shared :class:`FiniteField` instance for a prime and optional modulus."""
    return FiniteField(p, modulus)


def field_of_order(q: int) -> FiniteField:
    """Finite field of order ``q``; for ``q = p^k`` with ``k >= 2`` the
    modulus is the lexicographically least monic irreducible of degree k."""
    factors = factorint(q)
    if len(factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    ((p, k),) = factors.items()
    if k == 1:
        return finite_field(p)
    return finite_field(p, least_irreducible(finite_field(p), k))


# polynomial kernels; every function takes the coefficient field first


def trim(coeffs) -> Poly:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def degree(f: Poly) -> int:
    """Degree of ``f``; -1 for the zero polynomial."""
    return len(f) - 1


def lead(f: Poly) -> int:
    return f[-1] if f else 0


def poly_add(field: FiniteField, f: Poly, g: Poly) -> Poly:
    if field.degree == 1:
        return trim(
            (a + b) % field.p for a, b in itertools.zip_longest(f, g, fillvalue=0)
        )
    return trim(
        field.add(a, b) for a, b in itertools.zip_longest(f, g, fillvalue=0)
    )


def poly_neg(field: FiniteField, f: Poly) -> Poly:
    return tuple(field.neg(a) for a in f)


def poly_sub(field: FiniteField, f: Poly, g: Poly) -> Poly:
    return poly_add(field, f, poly_neg(field, g))


def poly_scale(field: FiniteField, c: int, f: Poly) -> Poly:
    return trim(field.mul(c, a) for a in f)


def poly_shift(f: Poly, n: int) -> Poly:
    """Multiply by ``x**n`` (n >= 0)."""
    return (0,) * n + f if f else ()


def poly_mul(field: FiniteField, f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ()
    product = [0] * (len(f) + len(g) - 1)
    if field.degree == 1:
        for i, a in enumerate(f):
            for j, b in enumerate(g):
                product[i + j] += a * b
        return trim(c % field.p for c in product)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            product[i + j] = field.add(product[i + j], field.mul(a, b))
    return trim(product)


def poly_divmod(field: FiniteField, f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    remainder = list(f)
    quotient = [0] * max(len(f) - len(g) + 1, 0)
    inverse_lead = field.inv(lead(g))
    for shift in range(len(f) - len(g), -1, -1):
        c = field.mul(remainder[shift + len(g) - 1], inverse_lead)
        if c == 0:
            continue
        quotient[shift] = c
        for i, b in enumerate(g):
            remainder[shift + i] = field.sub(remainder[shift + i], field.mul(c, b))
    return trim(quotient), trim(remainder)


def poly_mod(field: FiniteField, f: Poly, g: Poly) -> Poly:
    return poly_divmod(field, f, g)[1]


def monic(field: FiniteField, f: Poly) -> Poly:
    if not f:
        return f
    return poly_scale(field, field.inv(lead(f)), f)


def poly_gcd(field: FiniteField, f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor (zero only if both inputs are zero)."""
    while g:
        f, g = g, poly_mod(field, f, g)
    return monic(field, f)


def poly_xgcd(field: FiniteField, f: Poly, g: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(d, a, b)`` with ``a*f + b*g = d`` and ``d`` monic."""
    r0, r1 = f, g
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        quotient, remainder = poly_divmod(field, r0, r1)
        r0, r1 = r1, remainder
        s0, s1 = s1, poly_sub(field, s0, poly_mul(field, quotient, s1))
        t0, t1 = t1, poly_sub(field, t0, poly_mul(field, quotient, t1))
    if not r0:
        return (), s0, t0
    scale = field.inv(lead(r0))
    return (
        poly_scale(field, scale, r0),
        poly_scale(field, scale, s0),
        poly_scale(field, scale, t0),
    )


def poly_powmod(field: FiniteField, f: Poly, exponent: int, modulus: Poly) -> Poly:
    result: Poly = poly_mod(field, (1,), modulus)
    f = poly_mod(field, f, modulus)
    while exponent:
        if exponent & 1:
            result = poly_mod(field, poly_mul(field, result, f), modulus)
        f = poly_mod(field, poly_mul(field, f, f), modulus)
        exponent >>= 1
    return result


def poly_eval(field: FiniteField, f: Poly, x: int) -> int:
    value = 0
    for c in reversed(f):
        value = field.add(field.mul(value, x), c)
    return value


def is_irreducible(field: FiniteField, f: Poly) -> bool:
    """Rabin's irreducibility test."""
    n = degree(f)
    if n < 1:
        return False
    if n == 1:
        return True
    f = monic(field, f)
    x: Poly = (0, 1)
    # x^(q^n) must reduce to x
    power = x
    frobenius_powers = [power]
    for _ in range(n):
        power = poly_powmod(field, power, field.q, f)
        frobenius_powers.append(power)
    if frobenius_powers[n] != poly_mod(field, x, f):
        return False
    for prime in factorint(n):
        h = poly_sub(field, frobenius_powers[n // prime], x)
        if degree(poly_gcd(field, h, f)) > 0:
            return False
    return True


def monic_polys(field: FiniteField, n: int) -> Iterator[Poly]:
    """All monic polynomials of degree ``n``, in lexicographic order
    (coefficients compared from the top degree down)."""
    for code in range(field.q**n):
        coeffs = []
        for _ in range(n):
            code, c = divmod(code, field.q)
            coeffs.append(c)
        yield tuple(coeffs) + (1,)


@functools.cache
def irreducibles(field: FiniteField, n: int) -> tuple[Poly, ...]:
    """All monic irreducible polynomials of degree ``n``, in lexicographic order."""
    return tuple(f for f in monic_polys(field, n) if is_irreducible(field, f))


def least_irreducible(field: FiniteField, n: int) -> Poly:
    for f in monic_polys(field, n):
        if is_irreducible(field, f):
            return f
    raise ValueError(f"No irreducible of degree {n}")  # pragma: no cover


def multiplicity(field: FiniteField, f: Poly, pi: Poly) -> int:
    """Largest ``k`` with ``pi**k`` dividing the nonzero polynomial ``f``."""
    if not f:
        raise ZeroDivisionError("multiplicity of the zero polynomial")
    count = 0
    while True:
        quotient, remainder = poly_divmod(field, f, pi)
        if remainder:
            return count
        f, count = quotient, count + 1


def factor_monic(field: FiniteField, f: Poly) -> dict[Poly, int]:
    """Factor a nonzero polynomial into monic irreducibles with
    multiplicities (the leading constant is dropped), by trial division
    with irreducibles of increasing degree."""
    f = monic(field, f)
    factors: dict[Poly, int] = {}
    n = 1
    while 2 * n <= degree(f):
        for pi in irreducibles(field, n):
            if degree(f) < 2 * n:
                break
            k = multiplicity(field, f, pi)
            if k:
                factors[pi] = k
                for _ in range(k):
                    f = poly_divmod(field, f, pi)[0]
        n += 1
    if degree(f) > 0:
        factors[f] = factors.get(f, 0) + 1
    return factors


def format_poly(f, variable: str, coefficient_text, low: int = 0) -> str:
    """Human readable polynomial text, highest degree first. Coefficients
    are rendered with ``coefficient_text``; terms equal to zero are skipped."""
    terms = []
    for index in range(len(f) - 1, -1, -1):
        c = f[index]
        if c == 0:
            continue
        exponent = index + low
        coefficient = coefficient_text(c)
        if " " in coefficient or "+" in coefficient or "-" in coefficient[1:]:
            coefficient = f"({coefficient})"
        if exponent == 0:
            terms.append(coefficient)
            continue
        power = variable if exponent == 1 else f"{variable}^{exponent}"
        terms.append(power if coefficient == "1" else f"{coefficient}*{power}")
    return "+".join(terms)
