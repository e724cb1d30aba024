# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

import random
from unittest.mock import Mock, patch

import pytest

from chevwidth.algebra.rings import RingDescriptor, parse_element, parse_ring
from chevwidth.algebra.roots import parse_system
from chevwidth.errors import NotUnimodular, RepMismatch, VerificationFailure
from chevwidth.groups import factor as factor_module
from chevwidth.groups.chevalley import representation
from chevwidth.groups.factor import (
    L2_ESTIMATE,
    Factorization,
    factor,
    factor_sl2,
    factor_sln,
    reference_lines,
    sample_factorizations,
    width_histogram,
)
from chevwidth.groups.steinberg import random_word, word_eval

ZZ = RingDescriptor.integers()


def matrix(rep, ring, rows):
    return rep.from_rows([[parse_element(ring, str(x)) for x in row] for row in rows], ring)


@pytest.fixture
def sl2():
    return representation(parse_system("A1"), "sl")


@pytest.fixture
def sl3():
    return representation(parse_system("A2"), "sl")


class TestFactorSL2:
    def test_identity(self, sl2):
        assert factor_sl2(sl2.identity(ZZ)).width == 0

    def test_single_letter(self, sl2):
        g = matrix(sl2, ZZ, [[1, 7], [0, 1]])
        result = factor_sl2(g)
        assert result.width == 1
        assert result.evaluate() == g

    def test_weyl_element(self, sl2):
        g = sl2.w_element(sl2.system.simple_roots[0], ZZ.one)
        assert factor_sl2(g).width == 3

    def test_integer_matrix(self, sl2):
        # Euclidean steps on the first column (13, 8)
        g = matrix(sl2, ZZ, [[13, 5], [8, 3]])
        result = factor_sl2(g)
        assert result.evaluate() == g
        assert result.width > 3

    @pytest.mark.parametrize("ring", ["F5", "F9", "F7(t)"])
    def test_field_width_at_most_four(self, sl2, ring):
        ring = parse_ring(ring)
        rng = random.Random(1)
        for _ in range(10):
            g = word_eval(random_word(sl2.system, ring, rng, 6, degree=1), sl2)
            assert factor_sl2(g).width <= 4

    @pytest.mark.parametrize("ring", ["Z", "F3[t]", "F5[t,t^-1]"])
    def test_euclidean_rings(self, sl2, ring):
        ring = parse_ring(ring)
        rng = random.Random(2)
        for _ in range(5):
            g = word_eval(random_word(sl2.system, ring, rng, 8), sl2)
            assert factor_sl2(g).evaluate() == g

    def test_not_unimodular(self, sl2):
        with pytest.raises(NotUnimodular):
            factor_sl2(matrix(sl2, ZZ, [[2, 0], [0, 1]]))

    def test_wrong_rank(self, sl3):
        with pytest.raises(RepMismatch, match="SL_2"):
            factor_sl2(sl3.identity(ZZ))


class TestFactorSLn:
    def test_diagonal(self, sl3):
        ring = RingDescriptor.prime_field(7)
        g = matrix(sl3, ring, [[2, 0, 0], [0, 3, 0], [0, 0, 6]])
        result = factor_sln(g)
        assert result.evaluate() == g
        assert {root.is_positive for root, _ in result.factors} == {True, False}

    def test_zero_pivot(self, sl3):
        g = matrix(sl3, ZZ, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])
        assert factor_sln(g).evaluate() == g

    @pytest.mark.parametrize("label,ring", [("A2", "F3[t]"), ("A2", "Z"), ("A3", "F2[t]")])
    def test_random_products(self, label, ring):
        rep = representation(parse_system(label), "sl")
        ring = parse_ring(ring)
        rng = random.Random(3)
        for _ in range(4):
            g = word_eval(random_word(rep.system, ring, rng, 10), rep)
            assert factor(g).evaluate() == g

    def test_symplectic_rejected(self):
        rep = representation(parse_system("C2"), "sp")
        with pytest.raises(RepMismatch, match="standard SL"):
            factor(rep.identity(ZZ))


class TestFactorization:
    def test_verify_failure(self, sl2):
        root = sl2.system.simple_roots[0]
        bad = Factorization(rep=sl2, target=sl2.identity(ZZ), factors=((root, ZZ.one),))
        with pytest.raises(VerificationFailure):
            bad.verify()

    def test_to_dict(self, sl2):
        g = matrix(sl2, ZZ, [[1, 2], [0, 1]])
        data = factor(g).to_dict()
        assert data["system"] == "A1"
        assert data["ring"] == "Z"
        assert data["width"] == 1
        assert data["target"] == [["1", "2"], ["0", "1"]]
        assert data["factors"][0]["root"] == 0


def test_reference_lines():
    system = parse_system("A2")
    lines = reference_lines(system, parse_ring("F3[t]"))
    assert lines == {
        "l2_estimate": L2_ESTIMATE,
        "l2_times_positive_roots": L2_ESTIMATE * 3,
        "l2_plus_4_positive_roots": L2_ESTIMATE + 12,
    }
    laurent = reference_lines(system, parse_ring("F3[t,t^-1]"))
    assert laurent["infinite_units_8_positive_roots"] == 24


def test_width_histogram(sl2):
    results = [Mock(width=w) for w in (3, 1, 3, 0)]
    histogram = width_histogram(results)
    assert histogram["width"].to_list() == [0, 1, 3]
    assert histogram["count"].to_list() == [1, 1, 2]
    assert width_histogram([]).height == 0


def test_sample_factorizations(sl3):
    ring = parse_ring("F2[t]")
    seen = []
    results = sample_factorizations(sl3, ring, 3, random.Random(8), length=6, on_result=seen.append)
    assert len(results) == 3
    assert seen == results
    assert all(result.target.ring == ring for result in results)


@patch.object(factor_module, "tqdm")
def test_sample_factorizations_progress(mock_tqdm, sl2):
    mock_tqdm.side_effect = lambda iterable, **kwargs: iterable
    sample_factorizations(sl2, ZZ, 2, random.Random(0), disable_progress=False)
    assert mock_tqdm.call_args.kwargs["disable"] is False
    assert mock_tqdm.call_args.kwargs["desc"] == "Factor A1 Z"
