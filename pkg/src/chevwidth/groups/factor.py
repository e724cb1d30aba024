# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

"""
Factor elements of ``SL_2`` and ``SL_n`` over Euclidean rings into root
elements, and report widths against reference lines.

Factorizations come from row reduction: ``SL_2`` runs the Euclidean
algorithm on the first column until an entry is a unit and finishes with
three letters, ``SL_n`` clears each column by pairwise Euclidean steps,
back-substitutes and writes the remaining diagonal as a product of torus
elements. Every factorization is re-evaluated before it is returned.

Example usage: ::

    >>> rep = representation(build_root_system("A", 1), "sl")
    >>> ring = RingDescriptor.integers()
    >>> g = rep.w_element(rep.system.simple_roots[0], ring.one)
    >>> factor_sl2(g).width
    3
"""

import logging
import random
from dataclasses import dataclass
from typing import Callable

import polars as pl
from tqdm import tqdm

from chevwidth.algebra.rings import RingDescriptor, RingElement, RingKind, euclid_divmod
from chevwidth.algebra.roots import Root, RootSystem
from chevwidth.errors import NotEuclidean, NotUnimodular, RepMismatch, VerificationFailure
from chevwidth.groups.chevalley import GroupElement, Representation, RepKind
from chevwidth.groups.steinberg import Letter, SteinbergWord, random_word, word_eval

logger = logging.getLogger(__name__)

#: estimate of the width of SL_3 over polynomial rings of finite fields
L2_ESTIMATE = 65


@dataclass(frozen=True, eq=False)
class Factorization:
    """Root elements whose product, left to right, is ``target``."""

    rep: Representation
    target: GroupElement
    factors: tuple[Letter, ...]

    @property
    def system(self) -> RootSystem:
        return self.rep.system

    @property
    def width(self) -> int:
        return len(self.factors)

    @property
    def word(self) -> SteinbergWord:
        return SteinbergWord(self.system, self.target.ring, self.factors)

    def evaluate(self) -> GroupElement:
        return word_eval(self.word, self.rep)

    def verify(self) -> "Factorization":
        """
        :raises: VerificationFailure if the factors do not multiply to the target
        """
        if self.evaluate() != self.target:
            raise VerificationFailure("Factorization does not evaluate to its target")
        return self

    def to_dict(self) -> dict:
        return {
            "system": self.system.label,
            "ring": str(self.target.ring),
            "width": self.width,
            "target": self.target.text_rows(),
            "factors": self.word.to_records(),
        }


def _check_ring(ring: RingDescriptor):
    if not (ring.is_field or ring.is_euclidean):
        raise NotEuclidean(f"{ring} has no Euclidean algorithm")


def _check_sl(g: GroupElement):
    if g.rep.kind != RepKind.STANDARD_SL:
        raise RepMismatch(f"Expected an element of the standard SL representation, not {g.rep}")
    _check_ring(g.ring)
    if not g.determinant().is_one:
        raise NotUnimodular("Matrix does not have determinant 1")


def _divide(a: RingElement, b: RingElement) -> RingElement:
    """Euclidean quotient, or exact quotient in a field."""
    if a.ring.kind == RingKind.RATIONAL:
        return a / b
    return euclid_divmod(a, b)[0]


class _RowReducer:
    """Row operations ``row_a += q row_b`` on a matrix, recorded as the
    root elements that undo them."""

    def __init__(self, g: GroupElement):
        self.rep = g.rep
        self.ring = g.ring
        self.rows = g.rows()
        self.letters: list[Letter] = []
        self._roots: dict[tuple[int, int], tuple[Root, int]] = {}
        for root in self.rep.system.roots:
            i, j, sign = self.rep.unit_entry(root)
            self._roots[(i, j)] = (root, sign)

    def letter(self, a: int, b: int, q: RingElement) -> Letter:
        """Root element equal to ``I + q E_ab``."""
        root, sign = self._roots[(a, b)]
        return root, q * sign

    def add_row(self, a: int, b: int, q: RingElement):
        if q.is_zero:
            return
        self.rows[a] = [x + q * y for x, y in zip(self.rows[a], self.rows[b])]
        self.letters.append(self.letter(a, b, -q))


def _sl2_tail(reducer: _RowReducer) -> list[Letter]:
    """Three letters for a matrix whose lower-left entry is a unit:
    ``x((a-1)/c) x_-(c) x((d-1)/c)``."""
    (a, _), (c, d) = reducer.rows
    inverse = c.inverse()
    letters = [
        reducer.letter(0, 1, (a - 1) * inverse),
        reducer.letter(1, 0, c),
        reducer.letter(0, 1, (d - 1) * inverse),
    ]
    return [(root, param) for root, param in letters if not param.is_zero]


def factor_sl2(g: GroupElement) -> Factorization:
    """Factor an element of ``SL_2`` over a Euclidean ring. Over a field
    the width is at most 4.

    :raises: NotUnimodular, NotEuclidean
    """
    if g.rep.system.rank != 1:
        raise RepMismatch("factor_sl2 expects an element of SL_2")
    _check_sl(g)
    reducer = _RowReducer(g)
    if g.is_identity():
        return Factorization(rep=g.rep, target=g, factors=())
    (a, b), (c, _) = reducer.rows
    if c.is_zero and a.is_one:
        return Factorization(rep=g.rep, target=g, factors=(reducer.letter(0, 1, b),)).verify()
    while True:
        a, c = reducer.rows[0][0], reducer.rows[1][0]
        if c.is_unit():
            break
        if a.is_unit():
            # make the lower-left entry 1
            reducer.add_row(1, 0, (1 - c) * a.inverse())
            break
        if a.size >= c.size:
            reducer.add_row(0, 1, -_divide(a, c))
        else:
            reducer.add_row(1, 0, -_divide(c, a))
    factors = reducer.letters + _sl2_tail(reducer)
    return Factorization(rep=g.rep, target=g, factors=tuple(factors)).verify()


def factor_sln(g: GroupElement) -> Factorization:
    """Factor an element of ``SL_n`` over a Euclidean ring by Gaussian
    elimination with Euclidean pivots.

    :raises: NotUnimodular, NotEuclidean
    """
    _check_sl(g)
    if g.is_identity():
        return Factorization(rep=g.rep, target=g, factors=())
    reducer = _RowReducer(g)
    rows = reducer.rows
    n = len(rows)
    for j in range(n - 1):
        for i in range(j + 1, n):
            while not rows[i][j].is_zero:
                if rows[j][j].is_zero:
                    reducer.add_row(j, i, reducer.ring.one)
                    continue
                if rows[j][j].is_unit():
                    reducer.add_row(i, j, -rows[i][j] * rows[j][j].inverse())
                    break
                reducer.add_row(i, j, -_divide(rows[i][j], rows[j][j]))
                if not rows[i][j].is_zero:
                    reducer.add_row(j, i, -_divide(rows[j][j], rows[i][j]))
    # back substitution; the diagonal entries are units
    for j in range(n - 1, 0, -1):
        inverse = rows[j][j].inverse()
        for i in range(j):
            reducer.add_row(i, j, -rows[i][j] * inverse)
    factors = reducer.letters + _diagonal_letters(reducer, [rows[k][k] for k in range(n)])
    return Factorization(rep=g.rep, target=g, factors=tuple(factors)).verify()


def _diagonal_letters(reducer: _RowReducer, diagonal: list[RingElement]) -> list[Letter]:
    """``diag(d_0, ..., d_(n-1))`` as a product of ``h_(alpha_i)(d_0...d_i)``,
    each written with four letters."""
    letters: list[Letter] = []
    partial = reducer.ring.one
    for i, d in enumerate(diagonal[:-1]):
        partial = partial * d
        if partial.is_one:
            continue
        u, inverse = partial, partial.inverse()
        block = [
            reducer.letter(i + 1, i, -reducer.ring.one),
            reducer.letter(i, i + 1, (u - 1) * inverse),
            reducer.letter(i + 1, i, u),
            reducer.letter(i, i + 1, (inverse - 1) * inverse),
        ]
        letters.extend((root, param) for root, param in block if not param.is_zero)
    return letters


def factor(g: GroupElement) -> Factorization:
    """Factor an element of a standard SL representation."""
    if g.rep.system.rank == 1:
        return factor_sl2(g)
    return factor_sln(g)


def reference_lines(system: RootSystem, ring: RingDescriptor) -> dict[str, int]:
    """Width reference lines reported next to histograms."""
    positive = len(system.positive_roots)
    lines = {
        "l2_estimate": L2_ESTIMATE,
        "l2_times_positive_roots": L2_ESTIMATE * positive,
        "l2_plus_4_positive_roots": L2_ESTIMATE + 4 * positive,
    }
    if ring.kind == RingKind.LAURENT:
        lines["infinite_units_8_positive_roots"] = 8 * positive
    return lines


def width_histogram(factorizations: list[Factorization]) -> pl.DataFrame:
    """Counts of factorizations by width."""
    widths = pl.DataFrame({"width": [f.width for f in factorizations]}, schema={"width": pl.Int64})
    return widths.group_by("width").len(name="count").sort("width")


def sample_factorizations(
    rep: Representation,
    ring: RingDescriptor,
    count: int,
    rng: random.Random,
    length: int = 20,
    degree: int = 2,
    disable_progress: bool = True,
    on_result: Callable[[Factorization], None] | None = None,
) -> list[Factorization]:
    """Factor ``count`` random products of ``length`` root elements with
    parameters of degree at most ``degree``."""
    results = []
    for _ in tqdm(range(count), disable=disable_progress, desc=f"Factor {rep.system.label} {ring}"):
        word = random_word(rep.system, ring, rng, length=length, degree=degree)
        result = factor(word_eval(word, rep))
        results.append(result)
        if on_result is not None:
            on_result(result)
    if results:
        logger.info(
            f"Factored {count} elements of {rep.system.label} over {ring}; "
            f"max width {max(f.width for f in results)}"
        )
    return results
