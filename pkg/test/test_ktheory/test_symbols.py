# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

import random

import pytest

from chevwidth.algebra.rings import Place, RingDescriptor, ResidueFieldElement, parse_ring
from chevwidth.errors import DescriptorMismatch, UnsupportedRing, ZeroElement
from chevwidth.ktheory.symbols import (
    K2Class,
    SymbolPair,
    k2_class,
    reciprocity_product,
    residue_generator,
    symbol_class,
    tame_symbol,
    zero_class,
)
from chevwidth.utils.sampling import random_nonzero_polynomial

F3T = parse_ring("F3(t)")
F5T = parse_ring("F5(t)")


def random_function(field, rng):
    return random_nonzero_polynomial(field, rng, 3) / random_nonzero_polynomial(field, rng, 2)


class TestTameSymbol:
    def test_t_with_itself(self):
        t = F3T.t
        assert k2_class(SymbolPair(t, t)).to_dict() == {"t": "2"}

    def test_constant_at_t(self):
        place = Place(F5T, (0, 1))
        assert tame_symbol(place, F5T.t, F5T.from_int(3)).value == (3,)
        assert tame_symbol(place, F5T.from_int(3), F5T.t).value == (2,)

    def test_unit_at_place(self):
        # both entries units at t+1: the symbol is trivial there
        place = Place(F5T, (1, 1))
        assert tame_symbol(place, F5T.t, F5T.t + 2).is_one

    def test_infinity(self):
        place = Place.infinity(F5T)
        # v(t) = -1 at infinity, so {t, 2} has residue 2^-1
        assert tame_symbol(place, F5T.t, F5T.from_int(2)).value == (3,)

    def test_zero_entry(self):
        with pytest.raises(ZeroElement):
            tame_symbol(Place(F5T, (0, 1)), F5T.zero, F5T.t)


class TestSymbolPair:
    def test_coerces_into_field(self):
        ring = parse_ring("F5[t]")
        pair = SymbolPair(ring.t, ring.t + 1)
        assert pair.field == F5T
        assert str(pair) == "{t, t+1}"

    def test_support(self):
        f = F3T.t * (F3T.t**2 + 1)
        pair = SymbolPair(f, F3T.t + 1)
        assert [str(place) for place in pair.support()] == ["t", "t+1", "t^2+1"]

    def test_mismatch(self):
        with pytest.raises(DescriptorMismatch):
            SymbolPair(F3T.t, F5T.t)

    def test_zero(self):
        with pytest.raises(ZeroElement):
            SymbolPair(F3T.zero, F3T.t)


class TestK2Class:
    def test_requires_rational_field(self):
        with pytest.raises(UnsupportedRing):
            K2Class(parse_ring("F3[t]"), {})

    def test_trims_trivial_residues(self):
        place = Place(F3T, (0, 1))
        k2 = K2Class(F3T, {place: ResidueFieldElement(place, (1,))})
        assert k2.is_zero
        assert k2 == zero_class(F3T)
        assert k2.residue_at(place).is_one

    def test_group_law(self):
        t = F5T.t
        first = symbol_class(t, F5T.from_int(2))
        second = symbol_class(t, F5T.from_int(3))
        # 2 * 3 = 1 in F5
        assert (first + second).is_zero
        assert first - second == first + first
        assert (-first).to_dict() == {"t": "3"}

    def test_mismatch(self):
        with pytest.raises(DescriptorMismatch):
            zero_class(F3T) + zero_class(F5T)

    def test_hashable(self):
        t = F5T.t
        assert len({symbol_class(t, F5T.from_int(2)), symbol_class(t, F5T.from_int(2))}) == 1


class TestSymbolRelations:
    @pytest.fixture
    def samples(self):
        rng = random.Random(17)
        return [(random_function(F3T, rng), random_function(F3T, rng)) for _ in range(8)]

    def test_steinberg_relation(self, samples):
        for f, _ in samples:
            if not f.is_one:
                assert symbol_class(f, 1 - f).is_zero

    def test_antisymmetry(self, samples):
        for f, g in samples:
            assert symbol_class(f, g) == -symbol_class(g, f)
            assert symbol_class(f, -f).is_zero

    def test_bilinearity(self, samples):
        for (f, g), (h, _) in zip(samples, samples[1:]):
            assert symbol_class(f, g * h) == symbol_class(f, g) + symbol_class(f, h)

    def test_constant_symbols_vanish(self):
        field = parse_ring("F9(t)")
        for c in range(1, 9):
            for d in range(1, 9):
                assert symbol_class(field.constant(c), field.constant(d)).is_zero

    @pytest.mark.parametrize("field", ["F2(t)", "F3(t)", "F4(t)", "F7(t)"])
    def test_reciprocity(self, field):
        field = parse_ring(field)
        rng = random.Random(5)
        for _ in range(5):
            assert reciprocity_product(random_function(field, rng), random_function(field, rng)) == 1


class TestResidueGenerator:
    def test_degree_one(self):
        assert str(residue_generator(Place(F5T, (0, 1)))) == "2"
        # F2 has only the trivial unit
        assert residue_generator(Place(parse_ring("F2(t)"), (0, 1))).is_one

    def test_generates(self):
        place = Place(F3T, (1, 0, 1))
        generator = residue_generator(place)
        assert generator.order() == 8
        assert str(generator) == "t+1"

    def test_ring_descriptor_cache(self):
        place = Place(RingDescriptor.rational(RingDescriptor.prime_field(3)), (0, 1))
        assert residue_generator(place) is residue_generator(Place(F3T, (0, 1)))
