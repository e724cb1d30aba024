# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

"""
Exact coefficient rings: the integers, finite fields ``F_q``, and the
function rings ``F_q[t]``, ``F_q[t,t^-1]`` and ``F_q(t)``.

Rings are described by immutable :class:`RingDescriptor` values and
elements by :class:`RingElement` values that carry their descriptor and
a canonical payload, so that payload equality is element equality.
Descriptors serialize to and from a short text grammar::

    Z    F5    F9[x^2+1]    F5[t]    F5[t,t^-1]    F5(t)

Elements serialize as coefficient lists, e.g.
``{"ring": "F5[t]", "coeffs": [1, 0, 2]}`` for ``1 + 2t^2``; Laurent
elements add ``"low"`` (the exponent of the first coefficient) and rational
functions use ``"num"`` and ``"den"``.

The module also provides places of ``F_q(t)`` with their valuations and
residue fields, which :mod:`chevwidth.ktheory` builds on.

Example usage: ::

    >>> ring = parse_ring("F3(t)")
    >>> f = parse_element(ring, "(t+1)/t")
    >>> str(f + parse_element(ring, "1/t"))
    '(t+2)/(t)'
"""

import functools
import re
from dataclasses import dataclass
from enum import StrEnum
from typing import Any, Optional

from sympy import divisors

from chevwidth.algebra import polynomials as P
from chevwidth.algebra.polynomials import FiniteField, Poly, finite_field
from chevwidth.errors import (
    DescriptorMismatch,
    DivisionByZero,
    NonzeroValuation,
    NotAUnit,
    NotEuclidean,
    ParseError,
    UnsupportedRing,
    ZeroElement,
)


class RingKind(StrEnum):
    INTEGERS = "integers"
    PRIME_FIELD = "prime_field"
    EXT_FIELD = "ext_field"
    POLY = "poly"
    LAURENT = "laurent"
    RATIONAL = "rational"


#: kinds whose elements are finite field codes
FINITE_FIELD_KINDS = {RingKind.PRIME_FIELD, RingKind.EXT_FIELD}
#: kinds built over a finite base field
FUNCTION_KINDS = {RingKind.POLY, RingKind.LAURENT, RingKind.RATIONAL}
#: kinds with a Euclidean division
EUCLIDEAN_KINDS = {RingKind.INTEGERS, RingKind.POLY, RingKind.LAURENT} | (
    FINITE_FIELD_KINDS
)


@dataclass(frozen=True)
class RingDescriptor:
    """
    Description of a supported coefficient ring. Use the classmethod
    constructors (or :func:`parse_ring`) rather than the fields directly.
    """

    kind: RingKind
    #: characteristic of a finite field
    p: int = 0
    #: monic irreducible modulus over F_p for extension fields (lowest first)
    modulus: Poly = ()
    #: finite base field of a function ring
    base: Optional["RingDescriptor"] = None

    def __post_init__(self):
        match self.kind:
            case RingKind.INTEGERS:
                if self.p or self.modulus or self.base:
                    raise ValueError("Integers take no parameters")
            case RingKind.PRIME_FIELD:
                # validates primality
                finite_field(self.p)
            case RingKind.EXT_FIELD:
                if len(self.modulus) < 3:
                    raise ValueError("Extension field modulus must have degree >= 2")
                # validates primality and irreducibility
                finite_field(self.p, self.modulus)
            case _:
                if self.base is None or not self.base.is_finite_field:
                    raise ValueError(f"{self.kind} ring requires a finite base field")

    # constructors

    @classmethod
    def integers(cls) -> "RingDescriptor":
        return cls(RingKind.INTEGERS)

    @classmethod
    def prime_field(cls, p: int) -> "RingDescriptor":
        return cls(RingKind.PRIME_FIELD, p=p)

    @classmethod
    def ext_field(cls, p: int, modulus: Poly) -> "RingDescriptor":
        return cls(RingKind.EXT_FIELD, p=p, modulus=tuple(modulus))

    @classmethod
    def finite(cls, q: int) -> "RingDescriptor":
        """Finite field of order ``q`` with the default modulus."""
        field = P.field_of_order(q)
        if field.degree == 1:
            return cls.prime_field(field.p)
        return cls.ext_field(field.p, field.modulus)

    @classmethod
    def poly(cls, base: "RingDescriptor") -> "RingDescriptor":
        return cls(RingKind.POLY, base=base)

    @classmethod
    def laurent(cls, base: "RingDescriptor") -> "RingDescriptor":
        return cls(RingKind.LAURENT, base=base)

    @classmethod
    def rational(cls, base: "RingDescriptor") -> "RingDescriptor":
        return cls(RingKind.RATIONAL, base=base)

    # properties

    @property
    def is_finite_field(self) -> bool:
        return self.kind in FINITE_FIELD_KINDS

    @property
    def is_field(self) -> bool:
        return self.is_finite_field or self.kind == RingKind.RATIONAL

    @property
    def is_euclidean(self) -> bool:
        return self.kind in EUCLIDEAN_KINDS

    @property
    def field_descriptor(self) -> "RingDescriptor":
        """The finite field itself, or the base field of a function ring."""
        if self.is_finite_field:
            return self
        if self.base is None:
            raise UnsupportedRing(f"{self} has no finite coefficient field")
        return self.base

    @property
    def coefficient_field(self) -> FiniteField:
        field = self.field_descriptor
        if field.kind == RingKind.PRIME_FIELD:
            return finite_field(field.p)
        return finite_field(field.p, field.modulus)

    @property
    def q(self) -> int:
        return self.coefficient_field.q

    def fraction_field(self) -> "RingDescriptor":
        if self.kind in FUNCTION_KINDS:
            return RingDescriptor.rational(self.field_descriptor)
        raise UnsupportedRing(f"No function field for {self}")

    @functools.cached_property
    def arithmetic(self) -> "_Arithmetic":
        match self.kind:
            case RingKind.INTEGERS:
                return _IntegerArithmetic()
            case RingKind.PRIME_FIELD | RingKind.EXT_FIELD:
                return _FieldArithmetic(self.coefficient_field)
            case RingKind.POLY:
                return _PolyArithmetic(self.coefficient_field)
            case RingKind.LAURENT:
                return _LaurentArithmetic(self.coefficient_field)
            case _:
                return _RationalArithmetic(self.coefficient_field)

    # element helpers

    def element(self, payload: Any) -> "RingElement":
        """Element with a (possibly non-canonical) payload."""
        return RingElement(self, self.arithmetic.normalize(payload))

    @property
    def zero(self) -> "RingElement":
        return RingElement(self, self.arithmetic.zero)

    @property
    def one(self) -> "RingElement":
        return RingElement(self, self.arithmetic.from_int(1))

    def from_int(self, n: int) -> "RingElement":
        return RingElement(self, self.arithmetic.from_int(n))

    def constant(self, code: int) -> "RingElement":
        """Element from a coefficient-field code (or an integer for Z)."""
        return RingElement(self, self.arithmetic.constant(code))

    def monomial(self, code: int, exponent: int) -> "RingElement":
        """``c * t^exponent`` in a function ring."""
        if self.kind not in FUNCTION_KINDS:
            raise UnsupportedRing(f"{self} has no variable t")
        return RingElement(self, self.arithmetic.monomial(code, exponent))

    @property
    def t(self) -> "RingElement":
        return self.monomial(1, 1)

    def from_poly(self, coeffs: Poly) -> "RingElement":
        """Element of a function ring from polynomial coefficients."""
        if self.kind not in FUNCTION_KINDS:
            raise UnsupportedRing(f"{self} has no variable t")
        return RingElement(self, self.arithmetic.from_poly(tuple(coeffs)))

    def elements(self) -> list["RingElement"]:
        """All elements of a finite field, in code order."""
        if not self.is_finite_field:
            raise UnsupportedRing(f"{self} is not finite")
        return [RingElement(self, code) for code in self.coefficient_field.elements()]

    def units(self) -> list["RingElement"]:
        if not self.is_finite_field:
            raise UnsupportedRing(f"{self} is not finite")
        return [RingElement(self, code) for code in self.coefficient_field.units()]

    def __str__(self) -> str:
        match self.kind:
            case RingKind.INTEGERS:
                return "Z"
            case RingKind.PRIME_FIELD:
                return f"F{self.p}"
            case RingKind.EXT_FIELD:
                modulus = P.format_poly(self.modulus, "x", str)
                return f"F{self.q}[{modulus}]"
            case RingKind.POLY:
                return f"{self.base}[t]"
            case RingKind.LAURENT:
                return f"{self.base}[t,t^-1]"
            case _:
                return f"{self.base}(t)"


@dataclass(frozen=True)
class RingElement:
    """
    An exact element of a ring. Elements are immutable and support the
    usual arithmetic operators; integers are coerced into the ring.
    """

    ring: RingDescriptor
    payload: Any

    def _other(self, other) -> Any:
        if isinstance(other, int):
            return self.ring.arithmetic.from_int(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        if other.ring != self.ring:
            raise DescriptorMismatch(f"Cannot combine {self.ring} and {other.ring}")
        return other.payload

    def _wrap(self, payload) -> "RingElement":
        return RingElement(self.ring, payload)

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.ring.arithmetic.add(self.payload, other))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(self.ring.arithmetic.neg(self.payload))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        arith = self.ring.arithmetic
        return self._wrap(arith.add(self.payload, arith.neg(other)))

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.ring.arithmetic.mul(self.payload, other))

    __rmul__ = __mul__

    def inverse(self) -> "RingElement":
        """Multiplicative inverse.

        :raises: NotAUnit
        """
        if not self.ring.arithmetic.is_unit(self.payload):
            raise NotAUnit(f"{self} is not a unit in {self.ring}")
        return self._wrap(self.ring.arithmetic.inv(self.payload))

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * self._wrap(other).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** -exponent
        result, base = self.ring.one, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    @property
    def is_zero(self) -> bool:
        return self.payload == self.ring.arithmetic.zero

    @property
    def is_one(self) -> bool:
        return self.payload == self.ring.arithmetic.from_int(1)

    def is_unit(self) -> bool:
        return self.ring.arithmetic.is_unit(self.payload)

    def __bool__(self) -> bool:
        return not self.is_zero

    @property
    def size(self) -> int:
        """Euclidean size: absolute value, degree, or Newton span."""
        return self.ring.arithmetic.size(self.payload)

    def __str__(self) -> str:
        return self.ring.arithmetic.format(self.payload)

    def __repr__(self) -> str:
        return f"<{self.ring}: {self}>"


# arithmetic implementations, one per ring kind


class _Arithmetic:
    zero: Any = None

    def normalize(self, payload):
        return payload

    def constant(self, code: int):
        return self.from_int(code)

    def size(self, payload) -> int:
        raise NotEuclidean("Ring has no Euclidean size")

    def divmod(self, a, b):
        raise NotEuclidean("Ring is not Euclidean")


class _IntegerArithmetic(_Arithmetic):
    zero = 0

    def normalize(self, payload):
        return int(payload)

    def from_int(self, n):
        return n

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_unit(self, a):
        return a in (1, -1)

    def inv(self, a):
        return a

    def size(self, a):
        return abs(a)

    def divmod(self, a, b):
        # python's remainder takes the sign of b, so |r| < |b|
        return divmod(a, b)

    def format(self, a):
        return str(a)


class _FieldArithmetic(_Arithmetic):
    zero = 0

    def __init__(self, field: FiniteField):
        self.field = field

    def normalize(self, payload):
        if isinstance(payload, tuple):
            return self.field.from_digits(payload)
        if not 0 <= payload < self.field.q:
            raise ValueError(f"{payload} is not a code of F{self.field.q}")
        return payload

    def from_int(self, n):
        return self.field.from_int(n)

    def constant(self, code):
        return self.normalize(code)

    def add(self, a, b):
        return self.field.add(a, b)

    def neg(self, a):
        return self.field.neg(a)

    def mul(self, a, b):
        return self.field.mul(a, b)

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        return self.field.inv(a)

    def size(self, a):
        return 0 if a else -1

    def divmod(self, a, b):
        return self.field.mul(a, self.field.inv(b)), 0

    def format(self, a):
        return self.field.format(a)


class _PolyArithmetic(_Arithmetic):
    zero: Poly = ()

    def __init__(self, field: FiniteField):
        self.field = field

    def normalize(self, payload):
        return P.trim(payload)

    def from_int(self, n):
        return P.trim((self.field.from_int(n),))

    def constant(self, code):
        return P.trim((code,))

    def monomial(self, code, exponent):
        if exponent < 0:
            raise UnsupportedRing("Negative powers of t are not polynomials")
        return P.poly_shift(P.trim((code,)), exponent)

    def from_poly(self, coeffs):
        return P.trim(coeffs)

    def add(self, a, b):
        return P.poly_add(self.field, a, b)

    def neg(self, a):
        return P.poly_neg(self.field, a)

    def mul(self, a, b):
        return P.poly_mul(self.field, a, b)

    def is_unit(self, a):
        return len(a) == 1

    def inv(self, a):
        return (self.field.inv(a[0]),)

    def size(self, a):
        return P.degree(a)

    def divmod(self, a, b):
        return P.poly_divmod(self.field, a, b)

    def format(self, a):
        return P.format_poly(a, "t", self.field.format) or "0"


class _LaurentArithmetic(_Arithmetic):
    """Payload ``(low, coeffs)``: ``t^low * sum(coeffs[i] t^i)`` with nonzero
    boundary coefficients; zero is ``(0, ())``."""

    zero = (0, ())

    def __init__(self, field: FiniteField):
        self.field = field

    def normalize(self, payload):
        low, coeffs = payload
        coeffs = P.trim(coeffs)
        if not coeffs:
            return self.zero
        leading_zeros = next(i for i, c in enumerate(coeffs) if c)
        return (low + leading_zeros, coeffs[leading_zeros:])

    def from_int(self, n):
        return self.normalize((0, (self.field.from_int(n),)))

    def constant(self, code):
        return self.normalize((0, (code,)))

    def monomial(self, code, exponent):
        return self.normalize((exponent, (code,)))

    def from_poly(self, coeffs):
        return self.normalize((0, coeffs))

    def add(self, a, b):
        if not a[1]:
            return b
        if not b[1]:
            return a
        low = min(a[0], b[0])
        sum_coeffs = P.poly_add(
            self.field,
            P.poly_shift(a[1], a[0] - low),
            P.poly_shift(b[1], b[0] - low),
        )
        return self.normalize((low, sum_coeffs))

    def neg(self, a):
        return (a[0], P.poly_neg(self.field, a[1]))

    def mul(self, a, b):
        if not a[1] or not b[1]:
            return self.zero
        return self.normalize((a[0] + b[0], P.poly_mul(self.field, a[1], b[1])))

    def is_unit(self, a):
        # units are exactly the monomials c * t^k
        return len(a[1]) == 1

    def inv(self, a):
        return (-a[0], (self.field.inv(a[1][0]),))

    def size(self, a):
        # Newton span: top degree minus bottom degree
        return len(a[1]) - 1

    def divmod(self, a, b):
        # divide the polynomial parts, then restore the powers of t
        quotient, remainder = P.poly_divmod(self.field, a[1], b[1])
        return (
            self.normalize((a[0] - b[0], quotient)),
            self.normalize((a[0], remainder)),
        )

    def format(self, a):
        return P.format_poly(a[1], "t", self.field.format, low=a[0]) or "0"


class _RationalArithmetic(_Arithmetic):
    """Payload ``(num, den)`` in lowest terms with ``den`` monic."""

    zero: tuple[Poly, Poly] = ((), (1,))

    def __init__(self, field: FiniteField):
        self.field = field

    def normalize(self, payload):
        num, den = (P.trim(part) for part in payload)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            return self.zero
        common = P.poly_gcd(self.field, num, den)
        num = P.poly_divmod(self.field, num, common)[0]
        den = P.poly_divmod(self.field, den, common)[0]
        scale = self.field.inv(P.lead(den))
        return P.poly_scale(self.field, scale, num), P.poly_scale(self.field, scale, den)

    def from_int(self, n):
        return self.normalize(((self.field.from_int(n),), (1,)))

    def constant(self, code):
        return self.normalize(((code,), (1,)))

    def monomial(self, code, exponent):
        if exponent >= 0:
            return self.normalize((P.poly_shift((code,), exponent), (1,)))
        return self.normalize(((code,), P.poly_shift((1,), -exponent)))

    def from_poly(self, coeffs):
        return self.normalize((coeffs, (1,)))

    def add(self, a, b):
        field = self.field
        num = P.poly_add(
            field, P.poly_mul(field, a[0], b[1]), P.poly_mul(field, b[0], a[1])
        )
        return self.normalize((num, P.poly_mul(field, a[1], b[1])))

    def neg(self, a):
        return (P.poly_neg(self.field, a[0]), a[1])

    def mul(self, a, b):
        field = self.field
        return self.normalize(
            (P.poly_mul(field, a[0], b[0]), P.poly_mul(field, a[1], b[1]))
        )

    def is_unit(self, a):
        return bool(a[0])

    def inv(self, a):
        return self.normalize((a[1], a[0]))

    def format(self, a):
        num = P.format_poly(a[0], "t", self.field.format) or "0"
        if a[1] == (1,):
            return num
        den = P.format_poly(a[1], "t", self.field.format)
        return f"({num})/({den})"


# operations


def ring_arith(op: str, a: RingElement, b: RingElement | None = None) -> RingElement:
    """Apply ``add``, ``mul``, ``neg`` or ``inv``.

    :raises: DescriptorMismatch, NotAUnit
    """
    match op:
        case "add" | "mul":
            if b is None:
                raise ValueError(f"{op} requires two operands")
            return a + b if op == "add" else a * b
        case "neg":
            return -a
        case "inv":
            return a.inverse()
        case _:
            raise ValueError(f"Unknown ring operation '{op}'")


def euclid_divmod(a: RingElement, b: RingElement) -> tuple[RingElement, RingElement]:
    """Euclidean division ``a = q*b + r`` with ``size(r) < size(b)``.

    :raises: DescriptorMismatch, DivisionByZero, NotEuclidean
    """
    if a.ring != b.ring:
        raise DescriptorMismatch(f"Cannot divide {a.ring} by {b.ring}")
    if not a.ring.is_euclidean:
        raise NotEuclidean(f"{a.ring} is not a Euclidean ring")
    if b.is_zero:
        raise DivisionByZero("Euclidean division by zero")
    quotient, remainder = a.ring.arithmetic.divmod(a.payload, b.payload)
    return RingElement(a.ring, quotient), RingElement(a.ring, remainder)


@dataclass(frozen=True)
class UnitGroupDescription:
    """Unit group of a ring: an explicit list when finite, otherwise
    generators of the torsion and free parts."""

    ring: RingDescriptor
    infinite: bool
    #: all units, for finite unit groups
    elements: tuple[RingElement, ...] | None
    #: generator of the torsion subgroup (constants)
    torsion_generator: RingElement | None
    torsion_order: int
    #: generators of the free part (empty for finite unit groups)
    free_generators: tuple[RingElement, ...]
    description: str


def units_of(ring: RingDescriptor) -> UnitGroupDescription:
    """Describe the unit group of a supported ring."""
    if ring.kind == RingKind.INTEGERS:
        return UnitGroupDescription(
            ring=ring,
            infinite=False,
            elements=(ring.one, -ring.one),
            torsion_generator=-ring.one,
            torsion_order=2,
            free_generators=(),
            description="{1, -1}",
        )
    field = ring.coefficient_field
    constants = tuple(ring.constant(code) for code in field.units())
    generator = ring.constant(field.primitive_element())
    match ring.kind:
        case RingKind.PRIME_FIELD | RingKind.EXT_FIELD | RingKind.POLY:
            return UnitGroupDescription(
                ring=ring,
                infinite=False,
                elements=constants,
                torsion_generator=generator,
                torsion_order=field.q - 1,
                free_generators=(),
                description=f"F{field.q}^* (constants)",
            )
        case RingKind.LAURENT:
            return UnitGroupDescription(
                ring=ring,
                infinite=True,
                elements=None,
                torsion_generator=generator,
                torsion_order=field.q - 1,
                free_generators=(ring.t,),
                description=f"{{c*t^k : c in F{field.q}^*, k in Z}}",
            )
        case _:
            return UnitGroupDescription(
                ring=ring,
                infinite=True,
                elements=None,
                torsion_generator=generator,
                torsion_order=field.q - 1,
                free_generators=(),
                description=f"F{field.q}^* times the free group on monic irreducibles",
            )


# places of F_q(t)


@dataclass(frozen=True)
class Place:
    """A place of ``F_q(t)``: a monic irreducible ``pi`` or infinity (``pi=None``)."""

    field: RingDescriptor
    pi: Poly | None = None

    def __post_init__(self):
        if self.field.kind != RingKind.RATIONAL:
            raise UnsupportedRing("Places are defined for rational function fields")
        if self.pi is not None:
            pi = P.trim(self.pi)
            object.__setattr__(self, "pi", pi)
            if P.lead(pi) != 1 or not P.is_irreducible(self.coefficient_field, pi):
                raise ValueError(f"{pi} is not a monic irreducible polynomial")

    @classmethod
    def infinity(cls, field: RingDescriptor) -> "Place":
        return cls(field)

    @property
    def is_infinite(self) -> bool:
        return self.pi is None

    @property
    def coefficient_field(self) -> FiniteField:
        return self.field.coefficient_field

    @property
    def degree(self) -> int:
        return 1 if self.pi is None else P.degree(self.pi)

    @property
    def modulus(self) -> Poly:
        """Modulus of the residue field (``t`` for infinity)."""
        return (0, 1) if self.pi is None else self.pi

    def sort_key(self) -> tuple:
        # finite places by degree then coefficients; infinity last
        if self.pi is None:
            return (1, 0, ())
        return (0, self.degree, tuple(reversed(self.pi)))

    def __str__(self) -> str:
        if self.pi is None:
            return "inf"
        return P.format_poly(self.pi, "t", self.coefficient_field.format)


def places_up_to(field: RingDescriptor, max_degree: int) -> list[Place]:
    """All finite places of ``F_q(t)`` of degree at most ``max_degree``."""
    coefficient_field = field.coefficient_field
    return [
        Place(field, pi)
        for n in range(1, max_degree + 1)
        for pi in P.irreducibles(coefficient_field, n)
    ]


@dataclass(frozen=True)
class ResidueFieldElement:
    """An element of the residue field ``F_q[t]/(pi)`` of a place, stored as
    the canonical representative of degree below ``deg pi``."""

    place: Place
    value: Poly

    def __post_init__(self):
        field = self.place.coefficient_field
        object.__setattr__(
            self, "value", P.poly_mod(field, tuple(self.value), self.place.modulus)
        )

    @property
    def _field(self) -> FiniteField:
        return self.place.coefficient_field

    def _check(self, other: "ResidueFieldElement"):
        if other.place != self.place:
            raise DescriptorMismatch("Residues at different places")

    def __mul__(self, other: "ResidueFieldElement") -> "ResidueFieldElement":
        self._check(other)
        product = P.poly_mul(self._field, self.value, other.value)
        return ResidueFieldElement(self.place, product)

    def inverse(self) -> "ResidueFieldElement":
        if not self.value:
            raise NotAUnit("zero has no inverse in a residue field")
        _, a, _ = P.poly_xgcd(self._field, self.value, self.place.modulus)
        return ResidueFieldElement(self.place, a)

    def __truediv__(self, other: "ResidueFieldElement") -> "ResidueFieldElement":
        return self * other.inverse()

    def __pow__(self, exponent: int) -> "ResidueFieldElement":
        if exponent < 0:
            return self.inverse() ** -exponent
        value = P.poly_powmod(self._field, self.value, exponent, self.place.modulus)
        return ResidueFieldElement(self.place, value)

    @property
    def is_one(self) -> bool:
        return self.value == (1,)

    def norm(self) -> int:
        """Norm down to ``F_q``, as a coefficient code."""
        q = self._field.q
        exponent = (q**self.place.degree - 1) // (q - 1)
        value = (self**exponent).value
        if len(value) > 1:  # pragma: no cover
            raise ArithmeticError("norm did not land in the base field")
        return value[0] if value else 0

    def order(self) -> int:
        """Multiplicative order of a nonzero residue."""
        group_order = self._field.q**self.place.degree - 1
        for d in divisors(group_order):
            if (self**d).is_one:
                return d
        raise NotAUnit("zero has no multiplicative order")  # pragma: no cover

    def __str__(self) -> str:
        return P.format_poly(self.value, "t", self._field.format) or "0"


def as_rational(f: RingElement) -> RingElement:
    """View an element of a function ring (or its base field) in ``F_q(t)``."""
    ring = f.ring
    match ring.kind:
        case RingKind.RATIONAL:
            return f
        case RingKind.POLY:
            return ring.fraction_field().from_poly(f.payload)
        case RingKind.LAURENT:
            field_ring = ring.fraction_field()
            low, coeffs = f.payload
            return field_ring.from_poly(coeffs) * field_ring.monomial(1, low)
        case RingKind.PRIME_FIELD | RingKind.EXT_FIELD:
            return RingDescriptor.rational(ring).constant(f.payload)
        case _:
            raise UnsupportedRing(f"{ring} does not embed in a rational function field")


def _check_place(place: Place, f: RingElement) -> RingElement:
    f = as_rational(f)
    if f.ring != place.field:
        raise DescriptorMismatch(f"{f.ring} does not match place field {place.field}")
    if f.is_zero:
        raise ZeroElement("valuation of zero is undefined")
    return f


def valuation(place: Place, f: RingElement) -> int:
    """Order of vanishing of ``f`` at the place.

    :raises: ZeroElement
    """
    f = _check_place(place, f)
    num, den = f.payload
    if place.is_infinite:
        return P.degree(den) - P.degree(num)
    field = place.coefficient_field
    return P.multiplicity(field, num, place.pi) - P.multiplicity(field, den, place.pi)


def divisor(f: RingElement) -> dict[Place, int]:
    """Nonzero valuations of ``f`` at every place of ``F_q(t)``, infinity
    included; the degree-weighted sum of the values is zero.

    :raises: ZeroElement
    """
    f = as_rational(f)
    if f.is_zero:
        raise ZeroElement("zero has no divisor")
    coefficient_field = f.ring.coefficient_field
    places = set()
    for poly in f.payload:
        if P.degree(poly) > 0:
            places.update(P.factor_monic(coefficient_field, poly))
    support = sorted((Place(f.ring, pi) for pi in places), key=Place.sort_key)
    values = {place: valuation(place, f) for place in support + [Place.infinity(f.ring)]}
    return {place: value for place, value in values.items() if value}


def residue(place: Place, f: RingElement) -> ResidueFieldElement:
    """Image of a unit at the place in its residue field.

    :raises: NonzeroValuation, ZeroElement
    """
    f = _check_place(place, f)
    if valuation(place, f) != 0:
        raise NonzeroValuation(f"{f} is not a unit at {place}")
    num, den = f.payload
    field = place.coefficient_field
    if place.is_infinite:
        ratio = field.mul(P.lead(num), field.inv(P.lead(den)))
        return ResidueFieldElement(place, (ratio,))
    numerator = ResidueFieldElement(place, num)
    return numerator / ResidueFieldElement(place, den)


# text and JSON forms

_RING_PATTERN = re.compile(
    r"^(?:(?P<z>Z)|F(?P<q>\d+)(?:\[(?P<modulus>[^\]t]+)\])?)"
    r"(?P<suffix>\[t\]|\[t,t\^-1\]|\(t\))?$"
)

_TERM_PATTERN = re.compile(
    r"(?P<sign>[+-])?(?P<coeff>\d+)?(?:\*?(?P<var>[a-z])(?:\^\(?(?P<exp>-?\d+)\)?)?)?"
)


def parse_ring(text: str) -> RingDescriptor:
    """Parse the ring grammar (``Z``, ``F5``, ``F9[x^2+1]``, ``F5[t]``,
    ``F5[t,t^-1]``, ``F5(t)``).

    :raises: ParseError
    """
    match = _RING_PATTERN.match(re.sub(r"\s+", "", text))
    if match is None:
        raise ParseError(f"Unrecognized ring '{text}'")
    if match["z"]:
        if match["suffix"]:
            raise ParseError("Function rings over Z are not supported")
        return RingDescriptor.integers()
    try:
        base = RingDescriptor.finite(int(match["q"]))
        if match["modulus"]:
            digits = _terms_to_poly(_parse_terms(match["modulus"], "x"), base.p)
            if len(digits) - 1 != base.coefficient_field.degree:
                raise ParseError(f"Modulus degree does not match F{match['q']}")
            if len(digits) > 2:
                base = RingDescriptor.ext_field(base.p, digits)
    except ValueError as err:
        raise ParseError(f"Invalid ring '{text}': {err}") from err
    match match["suffix"]:
        case "[t]":
            return RingDescriptor.poly(base)
        case "[t,t^-1]":
            return RingDescriptor.laurent(base)
        case "(t)":
            return RingDescriptor.rational(base)
        case _:
            return base


def _parse_terms(text: str, variable: str) -> dict[int, int]:
    """Parse a polynomial with integer coefficients into exponent -> coefficient."""
    text = re.sub(r"\s+", "", text)
    if not text:
        raise ParseError("Empty polynomial")
    terms: dict[int, int] = {}
    position = 0
    while position < len(text):
        match = _TERM_PATTERN.match(text, position)
        if match is None or match.end() == position or not (
            match["coeff"] or match["var"]
        ):
            raise ParseError(f"Cannot parse '{text}' at position {position}")
        if match["var"] and match["var"] != variable:
            raise ParseError(f"Unexpected variable '{match['var']}' (expected {variable})")
        coefficient = int(match["coeff"] or 1)
        if match["sign"] == "-":
            coefficient = -coefficient
        exponent = 0
        if match["var"]:
            exponent = int(match["exp"] or 1)
        terms[exponent] = terms.get(exponent, 0) + coefficient
        position = match.end()
    return terms


def _terms_to_poly(terms: dict[int, int], p: int) -> Poly:
    if any(exponent < 0 for exponent in terms):
        raise ParseError("Negative exponents are not allowed here")
    top = max(terms)
    return P.trim(terms.get(i, 0) % p for i in range(top + 1))


def _split_fraction(text: str) -> tuple[str, str | None]:
    depth = 0
    for index, char in enumerate(text):
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        elif char == "/" and depth == 0:
            return text[:index], text[index + 1 :]
    return text, None


def _strip_parens(text: str) -> str:
    text = text.strip()
    while text.startswith("(") and text.endswith(")"):
        text = text[1:-1].strip()
    return text


def parse_element(ring: RingDescriptor, text: str) -> RingElement:
    """Parse element text such as ``3``, ``x+1``, ``t^2+1``, ``2*t^-1+t``
    or ``(t+1)/t``. Integer coefficients are mapped into the prime field.

    :raises: ParseError
    """
    numerator_text, denominator_text = _split_fraction(re.sub(r"\s+", "", text))
    if denominator_text is not None:
        if not ring.is_field:
            raise ParseError(f"Fractions are not elements of {ring}")
        return parse_element(ring, _strip_parens(numerator_text)) / parse_element(
            ring, _strip_parens(denominator_text)
        )
    text = _strip_parens(numerator_text)
    match ring.kind:
        case RingKind.INTEGERS:
            terms = _parse_terms(text, "t")
            if set(terms) - {0}:
                raise ParseError("Integers have no variable")
            return ring.from_int(terms.get(0, 0))
        case RingKind.PRIME_FIELD:
            terms = _parse_terms(text, "x")
            if set(terms) - {0}:
                raise ParseError("Prime field elements have no variable")
            return ring.from_int(terms.get(0, 0))
        case RingKind.EXT_FIELD:
            digits = _terms_to_poly(_parse_terms(text, "x"), ring.p)
            return ring.element(digits)
        case _:
            terms = _parse_terms(text, "t")
            element = ring.zero
            for exponent, coefficient in terms.items():
                element = element + ring.monomial(
                    ring.coefficient_field.from_int(coefficient), 0
                ) * _t_power(ring, exponent)
            return element


def _t_power(ring: RingDescriptor, exponent: int) -> RingElement:
    if exponent < 0 and ring.kind == RingKind.POLY:
        raise ParseError("Negative powers of t are not polynomials")
    return ring.monomial(1, exponent)


def element_to_dict(element: RingElement) -> dict:
    """JSON form of an element."""
    ring = element.ring
    data: dict[str, Any] = {"ring": str(ring)}
    match ring.kind:
        case RingKind.INTEGERS | RingKind.PRIME_FIELD:
            data["coeffs"] = [element.payload]
        case RingKind.EXT_FIELD:
            data["coeffs"] = list(ring.coefficient_field.to_digits(element.payload))
        case RingKind.POLY:
            data["coeffs"] = list(element.payload)
        case RingKind.LAURENT:
            data["low"], coeffs = element.payload
            data["coeffs"] = list(coeffs)
        case _:
            data["num"], data["den"] = (list(part) for part in element.payload)
    return data


def _codes(ring: RingDescriptor, values) -> Poly:
    """Coefficient codes of a function-ring element, each in ``[0, q)``.

    :raises: ParseError
    """
    q = ring.q
    codes = tuple(values)
    for code in codes:
        if isinstance(code, bool) or not isinstance(code, int) or not 0 <= code < q:
            raise ParseError(f"{code!r} is not a coefficient code of F{q}")
    return codes


def element_from_dict(data: dict, ring: RingDescriptor | None = None) -> RingElement:
    """Element from its JSON form; ``ring`` (if given) must match the
    declared ring.

    :raises: ParseError, DescriptorMismatch
    """
    declared = parse_ring(data["ring"]) if "ring" in data else ring
    if declared is None:
        raise ParseError("Element has no ring")
    if ring is not None and declared != ring:
        raise DescriptorMismatch(f"Element ring {declared} does not match {ring}")
    try:
        match declared.kind:
            case RingKind.INTEGERS | RingKind.PRIME_FIELD:
                coeffs = data.get("coeffs") or [0]
                return declared.from_int(coeffs[0])
            case RingKind.EXT_FIELD:
                return declared.element(
                    tuple(c % declared.p for c in data.get("coeffs", []))
                )
            case RingKind.POLY:
                return declared.from_poly(_codes(declared, data.get("coeffs", [])))
            case RingKind.LAURENT:
                return declared.element(
                    (int(data.get("low", 0)), _codes(declared, data.get("coeffs", [])))
                )
            case _:
                return declared.element(
                    (
                        _codes(declared, data.get("num", [])),
                        _codes(declared, data.get("den", [1])),
                    )
                )
    except (KeyError, TypeError, ZeroDivisionError) as err:
        raise ParseError(f"Invalid element data {data}: {err}") from err
