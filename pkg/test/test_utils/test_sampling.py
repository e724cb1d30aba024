# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

import random

import pytest

from chevwidth.algebra.rings import parse_ring
from chevwidth.algebra.roots import parse_system
from chevwidth.utils.sampling import (
    random_element,
    random_letters,
    random_nonzero_polynomial,
    random_unit,
)


@pytest.mark.parametrize("ring", ["Z", "F5", "F9", "F3[t]", "F3[t,t^-1]", "F3(t)"])
def test_random_element_in_ring(ring):
    ring = parse_ring(ring)
    rng = random.Random(0)
    assert all(random_element(ring, rng).ring == ring for _ in range(10))


def test_random_element_bounds():
    rng = random.Random(1)
    integers = parse_ring("Z")
    assert all(abs(random_element(integers, rng, bound=2).payload) <= 2 for _ in range(20))
    polys = parse_ring("F5[t]")
    assert all(len(random_element(polys, rng, degree=1).payload) <= 2 for _ in range(20))


@pytest.mark.parametrize("ring", ["Z", "F4", "F5[t]", "F5[t,t^-1]", "F5(t)"])
def test_random_unit(ring):
    ring = parse_ring(ring)
    rng = random.Random(2)
    for _ in range(10):
        assert random_unit(ring, rng).is_unit()


def test_random_nonzero_polynomial():
    ring = parse_ring("F2[t]")
    rng = random.Random(3)
    assert not any(random_nonzero_polynomial(ring, rng, 0).is_zero for _ in range(10))


def test_random_letters_reproducible():
    system = parse_system("A2")
    ring = parse_ring("F7")
    first = random_letters(system.positive_roots, ring, random.Random(4), length=5)
    second = random_letters(system.positive_roots, ring, random.Random(4), length=5)
    assert first == second
    assert len(first) == 5
    assert all(root.is_positive for root, _ in first)
