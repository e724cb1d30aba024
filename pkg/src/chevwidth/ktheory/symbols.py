# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

"""
Tame symbols and the residue model of ``K2(F_q(t))``.

A class in ``K2(F_q(t))`` is stored as its vector of tame symbols at the
finite places, keeping only the places where the residue is not 1. Since
``K2(F_q)`` vanishes, this vector determines the class, and adding
classes multiplies residues place by place.

Example usage: ::

    >>> field = RingDescriptor.rational(RingDescriptor.prime_field(3))
    >>> t = field.t
    >>> k2_class(SymbolPair(t, t)).to_dict()
    {'t': '2'}
"""

import functools
from dataclasses import dataclass

from chevwidth.algebra import polynomials as P
from chevwidth.algebra.rings import (
    Place,
    RingDescriptor,
    RingElement,
    RingKind,
    ResidueFieldElement,
    as_rational,
    residue,
    valuation,
)
from chevwidth.errors import DescriptorMismatch, UnsupportedRing, ZeroElement


def _nonzero(f: RingElement) -> RingElement:
    f = as_rational(f)
    if f.is_zero:
        raise ZeroElement("Symbols are defined for nonzero elements")
    return f


def tame_symbol(place: Place, f: RingElement, g: RingElement) -> ResidueFieldElement:
    """``(-1)^(v(f) v(g)) (g^v(f) / f^v(g))`` reduced into the residue field
    of ``place`` (infinity included).

    :raises: ZeroElement
    """
    f, g = _nonzero(f), _nonzero(g)
    a, b = valuation(place, f), valuation(place, g)
    unit = residue(place, g**a / f**b)
    if (a * b) % 2:
        minus_one = place.coefficient_field.from_int(-1)
        unit = unit * ResidueFieldElement(place, (minus_one,))
    return unit


@dataclass(frozen=True)
class SymbolPair:
    """Entries ``f, g`` of a symbol ``{f, g}`` in ``K2(F_q(t))``."""

    f: RingElement
    g: RingElement

    def __post_init__(self):
        f, g = _nonzero(self.f), _nonzero(self.g)
        if f.ring != g.ring:
            raise DescriptorMismatch(f"Symbol entries lie in {f.ring} and {g.ring}")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", g)

    @property
    def field(self) -> RingDescriptor:
        return self.f.ring

    def __str__(self) -> str:
        return f"{{{self.f}, {self.g}}}"

    def support(self) -> list[Place]:
        """Finite places where ``f`` or ``g`` has a zero or pole."""
        coefficient_field = self.field.coefficient_field
        places = set()
        for element in (self.f, self.g):
            for poly in element.payload:
                if P.degree(poly) > 0:
                    places.update(P.factor_monic(coefficient_field, poly))
        return sorted((Place(self.field, pi) for pi in places), key=Place.sort_key)


@dataclass(frozen=True)
class K2Class:
    """A class of ``K2(F_q(t))`` as residues at finite places; places with
    residue 1 are omitted."""

    field: RingDescriptor
    residues: dict[Place, ResidueFieldElement]

    def __post_init__(self):
        if self.field.kind != RingKind.RATIONAL:
            raise UnsupportedRing(f"K2 classes live over a rational function field, not {self.field}")
        trimmed = {
            place: value
            for place, value in sorted(self.residues.items(), key=lambda item: item[0].sort_key())
            if not value.is_one
        }
        object.__setattr__(self, "residues", trimmed)

    def __hash__(self) -> int:
        return hash((self.field, tuple(self.residues.items())))

    def _check(self, other: "K2Class"):
        if other.field != self.field:
            raise DescriptorMismatch("Classes over different fields")

    def __add__(self, other: "K2Class") -> "K2Class":
        self._check(other)
        residues = dict(self.residues)
        for place, value in other.residues.items():
            residues[place] = residues[place] * value if place in residues else value
        return K2Class(self.field, residues)

    def __neg__(self) -> "K2Class":
        return K2Class(
            self.field, {place: value.inverse() for place, value in self.residues.items()}
        )

    def __sub__(self, other: "K2Class") -> "K2Class":
        return self + (-other)

    @property
    def is_zero(self) -> bool:
        return not self.residues

    def residue_at(self, place: Place) -> ResidueFieldElement:
        """The residue at a finite place (1 off the support)."""
        return self.residues.get(place, ResidueFieldElement(place, (1,)))

    @property
    def support(self) -> list[Place]:
        return list(self.residues)

    def to_dict(self) -> dict[str, str]:
        return {str(place): str(value) for place, value in self.residues.items()}


def zero_class(field: RingDescriptor) -> K2Class:
    return K2Class(field, {})


def k2_class(pair: SymbolPair) -> K2Class:
    """Residue vector of ``{f, g}``; every finite place off the support of
    ``div f`` and ``div g`` has residue 1."""
    residues = {place: tame_symbol(place, pair.f, pair.g) for place in pair.support()}
    return K2Class(pair.field, residues)


def symbol_class(f: RingElement, g: RingElement) -> K2Class:
    return k2_class(SymbolPair(f, g))


def reciprocity_product(f: RingElement, g: RingElement) -> int:
    """Product over all places, infinity included, of the norms of the
    tame symbols of ``{f, g}`` down to ``F_q``, as a field code; Weil
    reciprocity makes this 1."""
    pair = SymbolPair(f, g)
    coefficient_field = pair.field.coefficient_field
    product = 1
    for place in pair.support() + [Place.infinity(pair.field)]:
        norm = tame_symbol(place, pair.f, pair.g).norm()
        product = coefficient_field.mul(product, norm)
    return product


@functools.cache
def residue_generator(place: Place) -> ResidueFieldElement:
    """Least generator of the unit group of the residue field at ``place``,
    scanning representatives in code order."""
    coefficient_field = place.coefficient_field
    q = coefficient_field.q
    order = q**place.degree - 1
    for n in range(1, order + 1):
        digits = []
        while n:
            n, digit = divmod(n, q)
            digits.append(digit)
        candidate = ResidueFieldElement(place, tuple(digits))
        if candidate.order() == order:
            return candidate
    raise ValueError(f"No generator of the residue field at {place}")  # pragma: no cover
