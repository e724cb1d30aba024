# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

"""
Seeded random ring elements, units and letters for sampling-based checks.
Every function takes the run's :class:`random.Random` so that all
randomness flows from one seeded generator.
"""

import random
from typing import Sequence

from chevwidth.algebra.rings import RingDescriptor, RingElement, RingKind
from chevwidth.algebra.roots import Root


def random_element(
    ring: RingDescriptor, rng: random.Random, degree: int = 2, bound: int = 3
) -> RingElement:
    """Random element: integers in ``[-bound, bound]``, field elements
    uniformly, polynomials of degree at most ``degree``, Laurent
    polynomials with exponents in ``[-degree, degree]``."""
    match ring.kind:
        case RingKind.INTEGERS:
            return ring.from_int(rng.randint(-bound, bound))
        case RingKind.PRIME_FIELD | RingKind.EXT_FIELD:
            return ring.constant(rng.randrange(ring.q))
        case RingKind.POLY:
            return ring.from_poly(tuple(rng.randrange(ring.q) for _ in range(degree + 1)))
        case RingKind.LAURENT:
            coeffs = tuple(rng.randrange(ring.q) for _ in range(2 * degree + 1))
            return ring.element((-degree, coeffs))
        case _:
            numerator = random_polynomial(ring, rng, degree)
            denominator = random_nonzero_polynomial(ring, rng, degree)
            return numerator / denominator


def random_polynomial(ring: RingDescriptor, rng: random.Random, degree: int) -> RingElement:
    """Polynomial of degree at most ``degree`` in a function ring."""
    return ring.from_poly(tuple(rng.randrange(ring.q) for _ in range(degree + 1)))


def random_nonzero_polynomial(
    ring: RingDescriptor, rng: random.Random, degree: int
) -> RingElement:
    while True:
        f = random_polynomial(ring, rng, degree)
        if not f.is_zero:
            return f


def random_unit(ring: RingDescriptor, rng: random.Random, degree: int = 2) -> RingElement:
    """Random unit: ``+-1`` in Z, nonzero constants in fields and
    polynomial rings, ``c t^k`` with ``|k| <= degree`` in Laurent rings."""
    match ring.kind:
        case RingKind.INTEGERS:
            return ring.from_int(rng.choice((1, -1)))
        case RingKind.LAURENT:
            return ring.monomial(rng.randrange(1, ring.q), rng.randint(-degree, degree))
        case RingKind.RATIONAL:
            return random_nonzero_polynomial(ring, rng, degree)
        case _:
            return ring.constant(rng.randrange(1, ring.q))


def random_letters(
    roots: Sequence[Root],
    ring: RingDescriptor,
    rng: random.Random,
    length: int = 20,
    degree: int = 2,
) -> list[tuple[Root, RingElement]]:
    """``length`` random ``(root, parameter)`` pairs."""
    return [
        (rng.choice(list(roots)), random_element(ring, rng, degree=degree))
        for _ in range(length)
    ]
