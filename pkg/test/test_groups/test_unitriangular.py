# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

import random

import pytest

from chevwidth.algebra.rings import RingDescriptor, parse_ring
from chevwidth.algebra.roots import parse_system
from chevwidth.errors import (
    CoverageGap,
    NoSuchEmbedding,
    RepMismatch,
    TooLargeForExhaustive,
    UnsupportedRing,
    VerificationFailure,
)
from chevwidth.groups.chevalley import representation
from chevwidth.groups.steinberg import SteinbergWord, random_word, word_eval
from chevwidth.groups.unitriangular import (
    ProductSetTable,
    TavgenLift,
    UnitriangularForm,
    block_signs,
    default_subsystems,
    product_set_table,
    random_element_of,
    tavgen_lift,
    unipotent_subgroup,
    unitriangular_membership,
)

F2 = RingDescriptor.prime_field(2)
F3 = RingDescriptor.prime_field(3)
F5 = RingDescriptor.prime_field(5)


@pytest.fixture
def sl2():
    return representation(parse_system("A1"), "sl")


def test_block_signs():
    assert block_signs(3) == (1, -1, 1)
    assert block_signs(2, first_sign=-1) == (-1, 1)
    with pytest.raises(ValueError, match="first_sign"):
        block_signs(2, first_sign=0)


def test_unipotent_subgroup():
    system = parse_system("A2")
    rep = representation(system, "sl")
    elements = unipotent_subgroup(rep, F2, system.positive_roots)
    assert len(elements) == 8
    assert len(elements[0][0]) == 0
    assert elements[0][1].is_identity()
    assert len({g.key() for _, g in elements}) == 8


def test_unipotent_subgroup_too_large():
    system = parse_system("A3")
    rep = representation(system, "sl")
    with pytest.raises(TooLargeForExhaustive):
        unipotent_subgroup(rep, F5, system.positive_roots)


class TestProductSetTable:
    @pytest.mark.parametrize("first_sign", [1, -1])
    def test_sl2_sizes(self, sl2, first_sign):
        # q^3 - q^2 + q matrices need three blocks; all of SL_2(F_3) needs four
        table = ProductSetTable(sl2, F3, 4, first_sign)
        assert table.sizes == [1, 3, 9, 21, 24]

    def test_generic_kernel_sizes(self, sl2):
        table = ProductSetTable(sl2, RingDescriptor.finite(4), 3)
        assert table.sizes == [1, 4, 16, 52]

    def test_finite_only(self, sl2):
        with pytest.raises(UnsupportedRing):
            ProductSetTable(sl2, RingDescriptor.integers(), 2)

    def test_lookup(self, sl2):
        table = product_set_table(sl2, F5, 3)
        w = sl2.w_element(sl2.system.simple_roots[0], F5.one)
        form = table.lookup(w)
        assert form.signs == (1, -1, 1)
        assert form.evaluate() == w
        assert form.width == 3

    def test_lookup_missing(self, sl2):
        table = product_set_table(sl2, F5, 2)
        w = sl2.w_element(sl2.system.simple_roots[0], F5.one)
        # lower-right entry of U+U- is always 1
        assert table.lookup(w) is None
        assert table.lookup_elements(w) is None

    def test_lookup_rep_mismatch(self, sl2):
        table = product_set_table(sl2, F5, 2)
        with pytest.raises(RepMismatch):
            table.lookup(sl2.identity(F3))

    def test_restricted_roots(self):
        system = parse_system("A2")
        rep = representation(system, "sl")
        alpha = system.simple_roots[0]
        table = ProductSetTable(rep, F3, 4, roots=[alpha, -alpha])
        assert table.sizes[-1] == 24


class TestMembership:
    def test_every_sl3_element_has_four_blocks(self):
        system = parse_system("A2")
        rep = representation(system, "sl")
        rng = random.Random(6)
        for _ in range(5):
            g = word_eval(random_word(system, F2, rng, 12), rep)
            form = unitriangular_membership(g, 4)
            assert form is not None
            assert form.target == g

    def test_first_sign(self, sl2):
        w = sl2.w_element(sl2.system.simple_roots[0], F3.one)
        form = unitriangular_membership(w, 3, first_sign=-1)
        assert form.signs == (-1, 1, -1)

    def test_limits(self, sl2):
        with pytest.raises(UnsupportedRing):
            unitriangular_membership(sl2.identity(RingDescriptor.integers()), 3)
        with pytest.raises(TooLargeForExhaustive, match="blocks"):
            unitriangular_membership(sl2.identity(F3), 6)
        with pytest.raises(TooLargeForExhaustive, match="rank"):
            rep = representation(parse_system("A4"), "sl")
            unitriangular_membership(rep.identity(F2), 4)
        with pytest.raises(TooLargeForExhaustive, match="too large"):
            rep = representation(parse_system("A3"), "sl")
            unitriangular_membership(rep.identity(F5), 4)


class TestUnitriangularForm:
    def test_verify_rejects_wrong_signs(self, sl2):
        alpha = sl2.system.simple_roots[0]
        block = SteinbergWord(sl2.system, F3, ((-alpha, F3.one),))
        form = UnitriangularForm(rep=sl2, target=word_eval(block, sl2), blocks=(block,))
        with pytest.raises(VerificationFailure, match="not in U\\+"):
            form.verify()

    def test_verify_rejects_wrong_product(self, sl2):
        alpha = sl2.system.simple_roots[0]
        block = SteinbergWord(sl2.system, F3, ((alpha, F3.one),))
        form = UnitriangularForm(rep=sl2, target=sl2.identity(F3), blocks=(block,))
        with pytest.raises(VerificationFailure, match="does not evaluate"):
            form.verify()

    def test_to_dict(self, sl2):
        w = sl2.w_element(sl2.system.simple_roots[0], F3.one)
        data = unitriangular_membership(w, 3).to_dict()
        assert data["system"] == "A1"
        assert data["ring"] == "F3"
        assert data["length"] == 3
        assert data["signs"] == [1, -1, 1]
        assert data["width"] == 3
        assert len(data["blocks"]) == 3


class TestDefaultSubsystems:
    def test_rank_two(self):
        system = parse_system("G2")
        [sub] = default_subsystems(system)
        assert sub.levi_indices() == (0, 1)

    def test_a3(self):
        subsystems = default_subsystems(parse_system("A3"))
        assert [sub.source.label for sub in subsystems] == ["A2", "A2"]
        assert [sub.levi_indices() for sub in subsystems] == [(0, 1), (1, 2)]

    def test_d4_branch_node(self):
        subsystems = default_subsystems(parse_system("D4"))
        assert [sub.source.label for sub in subsystems] == ["A2", "A2", "A2"]
        assert [sub.levi_indices() for sub in subsystems] == [(0, 1), (1, 2), (1, 3)]

    def test_labels(self):
        system = parse_system("A4")
        assert len(default_subsystems(system)) == 3
        # labels stop the search once every requested type is used
        subsystems = default_subsystems(system, ["A2", "A2"])
        assert [sub.levi_indices() for sub in subsystems] == [(0, 1), (1, 2)]

    def test_unknown_label(self):
        with pytest.raises(NoSuchEmbedding, match="G2"):
            default_subsystems(parse_system("A3"), ["G2"])


class TestTavgenLift:
    def test_coverage_gap(self):
        system = parse_system("A3")
        first, _ = default_subsystems(system)
        with pytest.raises(CoverageGap, match="a3"):
            TavgenLift(representation(system, "sl"), F2, [first])

    def test_finite_only(self):
        with pytest.raises(UnsupportedRing):
            tavgen_lift(parse_system("A3"), parse_ring("F2[t]"))

    def test_lift_words(self):
        system = parse_system("A3")
        lift = tavgen_lift(system, F2)
        rng = random.Random(12)
        for _ in range(3):
            word = random_word(system, F2, rng, 10)
            form = lift(word)
            assert form.length == 4
            assert form.evaluate() == word_eval(word, lift.rep)

    def test_lift_d4_through_branch_node(self):
        system = parse_system("D4")
        lift = tavgen_lift(system, F2, length=4)
        assert len(lift.subsystems) == 3
        assert all(1 in indices for indices in lift.indices)
        rng = random.Random(21)
        for _ in range(3):
            word = random_element_of(lift, rng, 12)
            form = lift(word)
            assert form.length == 4
            assert form.signs == (1, -1, 1, -1)
            assert form.evaluate() == word_eval(word, lift.rep)

    @pytest.mark.slow
    def test_lift_d4_all_roots(self):
        system = parse_system("D4")
        lift = tavgen_lift(system, F2)
        rng = random.Random(22)
        for _ in range(3):
            word = random_word(system, F2, rng, 6)
            assert lift(word).evaluate() == word_eval(word, lift.rep)

    def test_lift_matrix(self):
        system = parse_system("A3")
        lift = tavgen_lift(system, F2)
        g = word_eval(random_element_of(lift, random.Random(1), 15), lift.rep)
        assert lift(g).target == g

    def test_lift_rep_mismatch(self):
        lift = tavgen_lift(parse_system("A3"), F2)
        other = representation(parse_system("A2"), "sl")
        with pytest.raises(RepMismatch):
            lift(other.identity(F2))
        with pytest.raises(RepMismatch):
            lift(random_word(parse_system("A2"), F2, random.Random(0), 3))

    def test_random_element_of(self):
        lift = tavgen_lift(parse_system("A2"), F2)
        word = random_element_of(lift, random.Random(3), 7)
        assert len(word) == 7
        assert all(abs(sum(root.coords)) == 1 for root, _ in word.letters)

    def test_exhaustive_sl3(self):
        report = tavgen_lift(parse_system("A2"), F2).exhaustive()
        assert report.elements == 168
        assert report.passed
        assert report.to_dict()["subsystems"] == ["A2"]

    @pytest.mark.slow
    def test_exhaustive_sl4(self):
        report = tavgen_lift(parse_system("A3"), F2).exhaustive()
        assert report.elements == 20160
        assert report.passed
