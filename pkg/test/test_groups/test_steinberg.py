# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

import random

import orjson
import pytest

from chevwidth.algebra.rings import RingDescriptor, element_to_dict, parse_element, parse_ring
from chevwidth.algebra.roots import parse_system
from chevwidth.errors import (
    DescriptorMismatch,
    MixedSigns,
    NotAUnit,
    ParseError,
    RepMismatch,
)
from chevwidth.groups.chevalley import default_representation, representation
from chevwidth.groups.steinberg import (
    K2Witness,
    SteinbergWord,
    SymbolExpr,
    adjoint_image,
    collect_unipotent,
    k2_witness,
    load_word,
    random_word,
    symbol_word,
    unipotent_word,
    word_eval,
)

F5 = RingDescriptor.prime_field(5)


@pytest.fixture
def a2():
    return parse_system("A2")


def is_normal_form(word: SteinbergWord) -> bool:
    keys = [word.system.order_key(root) for root, _ in word.letters]
    return keys == sorted(set(keys)) and all(not param.is_zero for _, param in word.letters)


class TestSteinbergWord:
    def test_validation(self, a2):
        with pytest.raises(DescriptorMismatch):
            SteinbergWord(a2, F5, ((a2.simple_roots[0], RingDescriptor.prime_field(7).one),))
        with pytest.raises(RepMismatch):
            SteinbergWord(a2, F5, ((parse_system("A3").root_of((1, 1, 1)), F5.one),))

    def test_str(self, a2):
        assert str(SteinbergWord(a2, F5)) == "1"
        word = SteinbergWord(a2, F5, ((a2.simple_roots[0], F5.from_int(2)),))
        assert str(word) == "x[a1](2)"

    def test_concatenation_is_homomorphism(self, a2):
        rep = representation(a2, "sl")
        rng = random.Random(4)
        first, second = random_word(a2, F5, rng, 8), random_word(a2, F5, rng, 8)
        assert len(first * second) == 16
        assert word_eval(first * second, rep) == word_eval(first, rep) * word_eval(second, rep)
        assert word_eval(first * first.inverse(), rep).is_identity()

    def test_reduced(self, a2):
        a1 = a2.simple_roots[0]
        word = SteinbergWord(a2, F5, ((a1, F5.from_int(2)), (a1, F5.from_int(3)), (-a1, F5.one)))
        assert word.reduced().letters == ((-a1, F5.one),)

    def test_sign(self, a2):
        a1, a2_root = a2.simple_roots
        assert SteinbergWord(a2, F5).sign == 0
        assert SteinbergWord(a2, F5, ((a1, F5.one), (a2_root, F5.one))).sign == 1
        assert SteinbergWord(a2, F5, ((-a1, F5.one),)).sign == -1
        assert SteinbergWord(a2, F5, ((a1, F5.one), (-a1, F5.one))).sign is None

    def test_eval_rep_mismatch(self, a2):
        word = SteinbergWord(a2, F5, ((a2.simple_roots[0], F5.one),))
        with pytest.raises(RepMismatch):
            word_eval(word, representation(parse_system("A1"), "sl"))

    def test_records(self, a2):
        word = random_word(a2, parse_ring("F3[t]"), random.Random(2), 5)
        restored = SteinbergWord.from_records(a2, word.ring, word.to_records())
        assert restored == word


class TestWordFiles:
    def test_load_word(self, tmp_path, a2):
        ring = parse_ring("F5[t]")
        path = tmp_path / "word.json"
        path.write_bytes(
            orjson.dumps(
                [
                    {"root": 0, "param": "t+1"},
                    {"root": 4, "param": element_to_dict(ring.t)},
                ]
            )
        )
        word = load_word(path, a2, ring)
        assert str(word) == "x[a2](t+1) x[-a1](t)"

    def test_invalid_json(self, tmp_path, a2):
        path = tmp_path / "word.json"
        path.write_text("[{")
        with pytest.raises(ParseError, match="Cannot parse word file"):
            load_word(path, a2, F5)

    def test_not_a_list(self, tmp_path, a2):
        path = tmp_path / "word.json"
        path.write_text('{"root": 0}')
        with pytest.raises(ParseError, match="JSON array"):
            load_word(path, a2, F5)

    def test_root_out_of_range(self, tmp_path, a2):
        path = tmp_path / "word.json"
        path.write_text('[{"root": 6, "param": "1"}]')
        with pytest.raises(ParseError, match="out of range"):
            load_word(path, a2, F5)

    def test_missing_field(self, tmp_path, a2):
        path = tmp_path / "word.json"
        path.write_text('[{"param": "1"}]')
        with pytest.raises(ParseError, match="Invalid word record"):
            load_word(path, a2, F5)


class TestSymbols:
    def test_twelve_letters(self, a2):
        symbol = SymbolExpr(a2, a2.simple_roots[0], F5.from_int(2), F5.from_int(3))
        assert len(symbol_word(symbol)) == 12
        assert str(symbol) == "{2, 3}[a1]"

    def test_needs_units(self, a2):
        with pytest.raises(NotAUnit):
            SymbolExpr(a2, a2.simple_roots[0], F5.zero, F5.one)
        with pytest.raises(DescriptorMismatch):
            SymbolExpr(a2, a2.simple_roots[0], F5.one, RingDescriptor.prime_field(7).one)

    @pytest.mark.parametrize("label,q", [("A1", 5), ("A2", 4), ("C2", 3), ("G2", 2)])
    def test_symbols_evaluate_to_identity(self, label, q):
        system = parse_system(label)
        ring = RingDescriptor.finite(q)
        rep = default_representation(system)
        for root in system.simple_roots:
            for u in ring.units():
                for v in ring.units():
                    image = word_eval(symbol_word(SymbolExpr(system, root, u, v)), rep)
                    assert image.is_identity()

    def test_laurent_symbol_is_identity_in_sl2(self):
        # {t, 2} is nontrivial in K2 but maps to 1 in SL2
        system = parse_system("A1")
        ring = parse_ring("F5[t,t^-1]")
        symbol = SymbolExpr(system, system.simple_roots[0], ring.t, ring.from_int(2))
        assert k2_witness(symbol_word(symbol)) == K2Witness.IN_K2


class TestCollection:
    def test_a2_swap(self, a2):
        a1, a2_root = a2.simple_roots
        word = SteinbergWord(a2, F5, ((a1, F5.one), (a2_root, F5.one)))
        collected = collect_unipotent(word)
        assert [str(root) for root, _ in collected.letters] == ["a2", "a1", "a1+a2"]
        assert collected.letters[2][1] == F5.from_int(4)
        rep = representation(a2, "sl")
        assert word_eval(collected, rep) == word_eval(word, rep)

    def test_merges_and_drops(self, a2):
        a1 = a2.simple_roots[0]
        word = SteinbergWord(a2, F5, ((a1, F5.from_int(2)), (a1, F5.from_int(3))))
        assert collect_unipotent(word).letters == ()

    def test_mixed_signs(self, a2):
        a1 = a2.simple_roots[0]
        with pytest.raises(MixedSigns):
            collect_unipotent(SteinbergWord(a2, F5, ((a1, F5.one), (-a1, F5.one))))

    @pytest.mark.parametrize("label,ring", [("A3", "F3[t]"), ("C2", "Z"), ("G2", "Z"), ("B3", "F7")])
    def test_random_positive_words(self, label, ring):
        system = parse_system(label)
        ring = parse_ring(ring)
        rep = default_representation(system)
        rng = random.Random(9)
        for roots in (system.positive_roots, system.negative_roots):
            word = random_word(system, ring, rng, 12, roots=roots, degree=1)
            collected = collect_unipotent(word)
            assert is_normal_form(collected)
            assert word_eval(collected, rep) == word_eval(word, rep)


class TestUnipotentWord:
    def test_read_back(self):
        system = parse_system("C3")
        rep = representation(system, "sp")
        ring = parse_ring("F3[t]")
        rng = random.Random(5)
        for sign, roots in ((1, system.positive_roots), (-1, system.negative_roots)):
            g = word_eval(random_word(system, ring, rng, 10, roots=roots), rep)
            word = unipotent_word(g, sign)
            assert is_normal_form(word)
            assert word_eval(word, rep) == g

    def test_not_unipotent(self, a2):
        rep = representation(a2, "sl")
        g = rep.w_element(a2.simple_roots[0], F5.one)
        with pytest.raises(ValueError, match="not in U"):
            unipotent_word(g)


class TestK2Witness:
    def test_not_in_k2(self, a2):
        word = SteinbergWord(a2, F5, ((a2.simple_roots[0], F5.one),))
        assert k2_witness(word) == K2Witness.NOT_IN_K2

    def test_centerless_adjoint(self):
        system = parse_system("G2")
        ring = RingDescriptor.prime_field(3)
        symbol = SymbolExpr(system, system.simple_roots[1], ring.from_int(2), ring.from_int(2))
        assert k2_witness(symbol_word(symbol)) == K2Witness.IN_K2

    def test_unknown_modulo_center(self):
        system = parse_system("B2")
        ring = RingDescriptor.prime_field(3)
        symbol = SymbolExpr(system, system.simple_roots[0], ring.from_int(2), ring.from_int(2))
        assert k2_witness(symbol_word(symbol)) == K2Witness.UNKNOWN_MODULO_CENTER

    def test_unknown_modulo_center_d4(self):
        system = parse_system("D4")
        ring = RingDescriptor.prime_field(3)
        two = ring.from_int(2)
        symbol = SymbolExpr(system, system.simple_roots[1], two, two)
        assert k2_witness(symbol_word(symbol)) == K2Witness.UNKNOWN_MODULO_CENTER
        # h_1(-1) h_3(-1) is a nontrivial central element of Spin8
        minus_one, one = -ring.one, ring.one
        letters = []
        for index in (0, 2):
            root = system.simple_roots[index]
            for _ in range(2):
                letters += [(root, minus_one), (-root, one), (root, minus_one)]
        word = SteinbergWord(system, ring, tuple(letters))
        assert adjoint_image(word).is_identity()
        assert k2_witness(word) == K2Witness.UNKNOWN_MODULO_CENTER

    @pytest.mark.parametrize(
        "label,ring,u,v",
        [("A2", "F3[t,t^-1]", "t", "t"), ("C2", "F5[t,t^-1]", "t", "2"), ("A1", "F7", "3", "5")],
    )
    def test_symbols_central(self, label, ring, u, v):
        system = parse_system(label)
        ring = parse_ring(ring)
        rep = default_representation(system)
        rng = random.Random(9)
        for root in system.simple_roots:
            symbol = symbol_word(SymbolExpr(system, root, parse_element(ring, u), parse_element(ring, v)))
            for _ in range(5):
                w = random_word(system, ring, rng, 8)
                assert word_eval(w * symbol, rep) == word_eval(symbol * w, rep)
                assert word_eval(w * symbol, rep) == word_eval(w, rep)

    def test_adjoint_image(self, a2):
        word = SteinbergWord(a2, F5, ((a2.simple_roots[0], F5.one),))
        assert adjoint_image(word).dimension == 8
