# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

"""
Chevalley basis of the simple Lie algebra of a root system over the
integers, and the structure constants of the group commutator formula.

Signs are fixed by extraspecial pairs: for each positive non-simple root
``xi`` the pair ``(alpha, beta)`` with ``alpha + beta = xi`` and ``alpha``
minimal in the root order gets ``N_{alpha,beta} = p + 1 > 0``; every other
constant follows from the Lie algebra axioms. The group constants
``N_{alpha beta i j}`` are then read off the adjoint representation, with
the commutator ``[x, y] = x y x^-1 y^-1`` written as a product of root
elements ordered by increasing ``i + j`` and then ``i``.

Example usage: ::

    >>> basis = build_chevalley_basis(build_root_system("A", 2))
    >>> alpha, beta = basis.system.simple_roots
    >>> commutator_coefficients(basis, alpha, beta)
    [(1, 1, -1)]
"""

import functools
import hashlib
import itertools
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable

import numpy as np
import orjson
import polars as pl
from tqdm import tqdm

from chevwidth.algebra.roots import Root, RootSystem
from chevwidth.errors import OppositeRoots, VerificationFailure

if TYPE_CHECKING:
    from chevwidth.algebra.rings import RingElement
    from chevwidth.groups.chevalley import GroupElement

logger = logging.getLogger(__name__)

#: sparse Lie algebra vector: basis index -> integer coefficient
Vector = dict[int, int]


def divided_powers(matrix: np.ndarray) -> list[np.ndarray]:
    """Nonzero divided powers ``M^k / k!`` for ``k >= 1`` of a nilpotent
    integer matrix.

    :raises: VerificationFailure if a power is not divisible by ``k!``
    """
    powers = []
    current = matrix
    k = 1
    while current.any():
        powers.append(current)
        k += 1
        product = current @ matrix
        if (product % k).any():
            raise VerificationFailure(f"M^{k}/{k}! is not integral")
        current = product // k
    return powers


class ChevalleyBasis:
    """
    Chevalley basis ``{e_alpha} U {h_i}`` of the simple Lie algebra of
    ``system``. Basis vectors are indexed with the roots first (in the
    order of :attr:`RootSystem.roots`), then ``h_1..h_l``.
    """

    def __init__(self, system: RootSystem):
        self.system = system
        self.num_roots = len(system.roots)
        self.dimension = self.num_roots + system.rank
        self._constants: dict[tuple[int, int], int] = {}
        self.extraspecial = self._extraspecial_pairs()
        self._ad_cache: dict[int, np.ndarray] = {}
        logger.debug(f"Chevalley basis of {system.label}: dimension {self.dimension}")

    def __repr__(self) -> str:
        return f"<ChevalleyBasis {self.system.label}>"

    def h_index(self, i: int) -> int:
        return self.num_roots + i

    def basis_label(self, index: int) -> str:
        if index < self.num_roots:
            return f"e[{self.system.roots[index]}]"
        return f"h{index - self.num_roots + 1}"

    # structure constants of the Lie algebra

    def _extraspecial_pairs(self) -> dict[Root, tuple[Root, Root]]:
        system = self.system
        pairs = {}
        for xi in system.positive_roots:
            for alpha in system.positive_roots:
                beta = system.root_of(
                    x - a for x, a in zip(xi.coords, alpha.coords)
                )
                if beta is not None and beta.is_positive:
                    pairs[xi] = (alpha, beta)
                    break
        return pairs

    def lie_constant(self, alpha: Root, beta: Root) -> int:
        """``N_{alpha,beta}`` with ``[e_alpha, e_beta] = N e_{alpha+beta}``
        (zero when ``alpha + beta`` is not a root)."""
        system = self.system
        key = (system.index(alpha), system.index(beta))
        if key not in self._constants:
            self._constants[key] = self._compute_constant(alpha, beta)
        return self._constants[key]

    def _compute_constant(self, alpha: Root, beta: Root) -> int:
        system = self.system
        total = system.add(alpha, beta)
        if total is None:
            return 0
        if alpha.is_positive and beta.is_positive:
            if system.order_key(alpha) > system.order_key(beta):
                return -self.lie_constant(beta, alpha)
            first, second = self.extraspecial[total]
            p, _ = system.root_string(first, second)
            if (alpha, beta) == (first, second):
                return p + 1
            return self._special_pair_constant(alpha, beta, first, second, total)
        if not alpha.is_positive and not beta.is_positive:
            return -self.lie_constant(-alpha, -beta)
        # mixed signs: N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b), a+b+c = 0
        gamma = -total
        if beta.is_positive == gamma.is_positive:
            value = Fraction(
                self.lie_constant(beta, gamma) * system.inner(gamma, gamma),
                system.inner(alpha, alpha),
            )
        else:
            value = Fraction(
                self.lie_constant(gamma, alpha) * system.inner(gamma, gamma),
                system.inner(beta, beta),
            )
        return self._as_integer(value, alpha, beta)

    def _special_pair_constant(
        self, alpha: Root, beta: Root, first: Root, second: Root, total: Root
    ) -> int:
        system = self.system
        value = Fraction(0)
        left = system.add(beta, -first)
        if left is not None:
            value += Fraction(
                self.lie_constant(beta, -first) * self.lie_constant(alpha, -second),
                system.inner(left, left),
            )
        right = system.add(alpha, -first)
        if right is not None:
            value += Fraction(
                self.lie_constant(-first, alpha) * self.lie_constant(beta, -second),
                system.inner(right, right),
            )
        value *= Fraction(system.inner(total, total), self.lie_constant(first, second))
        return self._as_integer(value, alpha, beta)

    @staticmethod
    def _as_integer(value: Fraction, alpha: Root, beta: Root) -> int:
        if value.denominator != 1:
            raise VerificationFailure(f"N[{alpha}, {beta}] = {value} is not an integer")
        return int(value)

    # brackets

    def coroot_vector(self, alpha: Root) -> Vector:
        """``h_alpha = [e_alpha, e_-alpha]`` in terms of ``h_1..h_l``."""
        coords = self.system.coroot_coords(alpha)
        return {self.h_index(i): c for i, c in enumerate(coords) if c}

    def bracket(self, x: int, y: int) -> Vector:
        """Bracket of two basis vectors, as a sparse vector."""
        system = self.system
        if x >= self.num_roots and y >= self.num_roots:
            return {}
        if x >= self.num_roots:
            alpha = system.roots[y]
            value = system.pairing(alpha, system.simple_roots[x - self.num_roots])
            return {y: value} if value else {}
        if y >= self.num_roots:
            return {key: -value for key, value in self.bracket(y, x).items()}
        alpha, beta = system.roots[x], system.roots[y]
        if alpha.coords == (-beta).coords:
            return self.coroot_vector(alpha)
        total = system.add(alpha, beta)
        if total is None:
            return {}
        return {system.index(total): self.lie_constant(alpha, beta)}

    def bracket_vectors(self, u: Vector, v: Vector) -> Vector:
        result: dict[int, int] = {}
        for x, a in u.items():
            for y, b in v.items():
                for z, c in self.bracket(x, y).items():
                    result[z] = result.get(z, 0) + a * b * c
        return {key: value for key, value in result.items() if value}

    def ad_matrix(self, root: Root) -> np.ndarray:
        """Integer matrix of ``ad e_root``; column ``j`` is ``[e_root, basis_j]``."""
        index = self.system.index(root)
        if index not in self._ad_cache:
            matrix = np.zeros((self.dimension, self.dimension), dtype=np.int64)
            for j in range(self.dimension):
                for i, value in self.bracket(index, j).items():
                    matrix[i, j] = value
            self._ad_cache[index] = matrix
        return self._ad_cache[index]

    def ad_h_diagonal(self, i: int) -> np.ndarray:
        """Eigenvalues of ``ad h_i`` on the basis."""
        simple = self.system.simple_roots[i]
        values = [self.system.pairing(root, simple) for root in self.system.roots]
        return np.array(values + [0] * self.system.rank, dtype=np.int64)


@functools.cache
def build_chevalley_basis(system: RootSystem) -> ChevalleyBasis:
    """Build (or fetch the cached) Chevalley basis of ``system``."""
    return ChevalleyBasis(system)


def jacobi_violations(
    basis: ChevalleyBasis,
    triples: Iterable[tuple[int, int, int]] | None = None,
    disable_progress: bool = True,
) -> list[tuple[int, int, int]]:
    """Basis triples on which the Jacobi identity fails. Checks all
    triples of distinct basis vectors when none are given."""
    if triples is None:
        triples = itertools.combinations(range(basis.dimension), 3)
        total = None
    else:
        triples = list(triples)
        total = len(triples)
    failures = []
    for x, y, z in tqdm(triples, total=total, disable=disable_progress, desc="Jacobi"):
        result: dict[int, int] = {}
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            for key, value in basis.bracket_vectors({a: 1}, basis.bracket(b, c)).items():
                result[key] = result.get(key, 0) + value
        if any(result.values()):
            failures.append((x, y, z))
    return failures


def sample_triples(
    basis: ChevalleyBasis, count: int, rng: random.Random
) -> list[tuple[int, int, int]]:
    return [
        tuple(rng.sample(range(basis.dimension), 3))  # type: ignore[misc]
        for _ in range(count)
    ]


def higher_combinations(
    system: RootSystem, alpha: Root, beta: Root
) -> list[tuple[int, int, Root]]:
    """All ``(i, j, i*alpha + j*beta)`` with ``i, j >= 1`` that are roots,
    in the fixed product order (increasing ``i + j``, then ``i``)."""
    if alpha.coords == (-beta).coords:
        raise OppositeRoots(f"{alpha} and {beta} are opposite")
    combos = []
    for i in range(1, 4):
        for j in range(1, 4):
            gamma = system.combination(i, alpha, j, beta)
            if gamma is not None:
                combos.append((i, j, gamma))
    return sorted(combos, key=lambda combo: (combo[0] + combo[1], combo[0]))


def _adjoint_unipotent_int(basis: ChevalleyBasis, root: Root, r: int) -> np.ndarray:
    powers = divided_powers(basis.ad_matrix(root))
    result = np.eye(basis.dimension, dtype=np.int64)
    for k, power in enumerate(powers, start=1):
        result = result + (r**k) * power
    return result


def commutator_coefficients(
    basis: ChevalleyBasis, alpha: Root, beta: Root
) -> list[tuple[int, int, int]]:
    """The coefficients ``(i, j, N_{alpha beta i j})`` of the commutator
    formula, in the fixed product order.

    :raises: OppositeRoots
    """
    system = basis.system
    combos = higher_combinations(system, alpha, beta)
    if not combos:
        return []
    if [(i, j) for i, j, _ in combos] == [(1, 1)]:
        return [(1, 1, basis.lie_constant(alpha, beta))]

    # peel the factors off [x_alpha(1), x_beta(1)] in the adjoint representation
    x_alpha = _adjoint_unipotent_int(basis, alpha, 1)
    x_beta = _adjoint_unipotent_int(basis, beta, 1)
    commutator = (
        x_alpha
        @ x_beta
        @ _adjoint_unipotent_int(basis, alpha, -1)
        @ _adjoint_unipotent_int(basis, beta, -1)
    )
    coefficients = []
    for i, j, gamma in combos:
        k = next(
            k
            for k, simple in enumerate(system.simple_roots)
            if system.pairing(gamma, simple)
        )
        pairing = system.pairing(gamma, system.simple_roots[k])
        entry = int(commutator[system.index(gamma), basis.h_index(k)])
        if entry % pairing:
            raise VerificationFailure(
                f"Coefficient of {gamma} in [x({alpha}), x({beta})] is not integral"
            )
        value = -entry // pairing
        coefficients.append((i, j, value))
        commutator = _adjoint_unipotent_int(basis, gamma, -value) @ commutator
    if not np.array_equal(commutator, np.eye(basis.dimension, dtype=np.int64)):
        raise VerificationFailure(
            f"Commutator of {alpha} and {beta} is not a product of higher root elements"
        )
    return coefficients


def adjoint_unipotent(
    basis: ChevalleyBasis, alpha: Root, r: "RingElement"
) -> "GroupElement":
    """``exp(r ad e_alpha)`` over the ring of ``r``."""
    from chevwidth.groups.chevalley import RepKind, representation

    return representation(basis.system, RepKind.ADJOINT).elementary(alpha, r)


@dataclass(frozen=True, eq=False)
class StructureConstants:
    """Table ``(alpha, beta, i, j) -> N_{alpha beta i j}`` keyed by root
    indices, for every non-opposite pair with a nonempty expansion."""

    system: RootSystem
    table: dict[tuple[int, int, int, int], int]

    def coefficients(self, alpha: Root, beta: Root) -> list[tuple[int, int, int]]:
        """Coefficient list in the fixed product order."""
        system = self.system
        a, b = system.index(alpha), system.index(beta)
        return [
            (i, j, self.table[(a, b, i, j)])
            for i, j, _ in higher_combinations(system, alpha, beta)
            if (a, b, i, j) in self.table
        ]

    def rows(self) -> list[dict]:
        return [
            {"alpha": a, "beta": b, "i": i, "j": j, "N": value}
            for (a, b, i, j), value in sorted(self.table.items())
        ]

    def to_dataframe(self) -> pl.DataFrame:
        return pl.DataFrame(
            self.rows(),
            schema={
                "alpha": pl.Int64,
                "beta": pl.Int64,
                "i": pl.Int64,
                "j": pl.Int64,
                "N": pl.Int64,
            },
        )

    def content_hash(self) -> str:
        """SHA-256 of the canonical JSON serialization of the rows."""
        payload = orjson.dumps(
            {"system": self.system.label, "rows": self.rows()},
            option=orjson.OPT_SORT_KEYS,
        )
        return hashlib.sha256(payload).hexdigest()

    @classmethod
    def from_rows(cls, system: RootSystem, rows: list[dict]) -> "StructureConstants":
        table = {
            (row["alpha"], row["beta"], row["i"], row["j"]): row["N"] for row in rows
        }
        return cls(system=system, table=table)


def build_structure_constants(
    basis: ChevalleyBasis, disable_progress: bool = True
) -> StructureConstants:
    """Derive the full table of commutator constants."""
    system = basis.system
    table = {}
    pairs = [
        (alpha, beta)
        for alpha in system.roots
        for beta in system.roots
        if alpha.coords != (-beta).coords and alpha != beta
    ]
    for alpha, beta in tqdm(
        pairs, disable=disable_progress, desc=f"Constants {system.label}"
    ):
        a, b = system.index(alpha), system.index(beta)
        for i, j, value in commutator_coefficients(basis, alpha, beta):
            table[(a, b, i, j)] = value
    logger.info(f"Derived {len(table)} structure constants for {system.label}")
    return StructureConstants(system=system, table=table)


def constants_table(basis: ChevalleyBasis) -> pl.DataFrame:
    """Structure constants as a polars table with root indices."""
    return build_structure_constants(basis).to_dataframe()


def constant_violations(constants: StructureConstants) -> list[str]:
    """Check the magnitude rules: ``|N_{ab11}| = p + 1``, antisymmetry of
    ``N_{ab11}``, and ``+-1`` values in simply laced systems."""
    system = constants.system
    problems = []
    for (a, b, i, j), value in sorted(constants.table.items()):
        alpha, beta = system.roots[a], system.roots[b]
        if (i, j) == (1, 1):
            p, _ = system.root_string(alpha, beta)
            if abs(value) != p + 1:
                problems.append(f"|N[{alpha},{beta},1,1]| = {abs(value)} != {p + 1}")
            if constants.table.get((b, a, 1, 1)) != -value:
                problems.append(f"N[{alpha},{beta},1,1] is not antisymmetric")
        if system.is_simply_laced and abs(value) != 1:
            problems.append(f"N[{alpha},{beta},{i},{j}] = {value} in simply laced system")
    return problems
