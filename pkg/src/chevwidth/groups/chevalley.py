# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

"""
Chevalley group elements as exact matrices in a fixed representation:
the standard representation of ``SL_(l+1)`` for type A, of ``Sp_(2l)``
for type C, and the adjoint representation for every type.

Root elements ``x_alpha(r)`` are ``sum r^k rho(e_alpha)^k / k!``, where the
matrices ``rho(e_alpha)`` are built from the simple generators using the
structure constants of :mod:`chevwidth.algebra.liealg`, so the group
commutator formula holds with the same constants in every representation.

The symplectic form is antidiagonal: ``J[a, 2l-1-a] = 1`` for ``a < l``
and ``-1`` for ``a >= l``.

Example usage: ::

    >>> rep = representation(build_root_system("A", 1), "sl")
    >>> one = RingDescriptor.prime_field(5).one
    >>> w_element(rep, rep.system.simple_roots[0], one).text_rows()
    [['0', '1'], ['4', '0']]
"""

import functools
import logging
import random
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np
import sympy
from tqdm import tqdm

from chevwidth.algebra.liealg import (
    StructureConstants,
    build_chevalley_basis,
    commutator_coefficients,
    divided_powers,
)
from chevwidth.algebra.rings import (
    RingDescriptor,
    RingElement,
    RingKind,
    euclid_divmod,
)
from chevwidth.algebra.roots import Root, RootSystem, build_root_system
from chevwidth.errors import (
    DescriptorMismatch,
    NotAUnit,
    OppositeRoots,
    RepMismatch,
    UnsupportedRepForType,
    UnsupportedRing,
    VerificationFailure,
)
from chevwidth.utils.sampling import random_element

logger = logging.getLogger(__name__)

#: largest prime handled with machine-integer matrix products
MODULAR_LIMIT = 46337


class MatrixKernel:
    """
    Dense exact matrix arithmetic over one ring. Prime fields use int64
    arrays reduced mod p, the integers use int64 arrays that widen to
    Python integers when entries grow, and every other ring uses object
    arrays of :class:`RingElement`.
    """

    def __init__(self, ring: RingDescriptor):
        self.ring = ring
        if ring.kind == RingKind.PRIME_FIELD and ring.p < MODULAR_LIMIT:
            self.mode = "modular"
        elif ring.kind == RingKind.INTEGERS:
            self.mode = "integer"
        else:
            self.mode = "generic"

    def __repr__(self) -> str:
        return f"<MatrixKernel {self.ring} ({self.mode})>"

    @staticmethod
    def _compact(matrix: np.ndarray) -> np.ndarray:
        if matrix.dtype == object and (
            matrix.size == 0 or max(abs(int(x)) for x in matrix.flat) < 2**31
        ):
            return matrix.astype(np.int64)
        return matrix

    def lift(self, matrix: np.ndarray) -> np.ndarray:
        """An integer matrix, mapped into the ring."""
        match self.mode:
            case "modular":
                return np.mod(matrix, self.ring.p).astype(np.int64)
            case "integer":
                return self._compact(np.asarray(matrix).astype(object))
            case _:
                lifted = np.empty(matrix.shape, dtype=object)
                for index, value in np.ndenumerate(matrix):
                    lifted[index] = self.ring.from_int(int(value))
                return lifted

    def identity(self, n: int) -> np.ndarray:
        return self.lift(np.eye(n, dtype=np.int64))

    def from_rows(self, rows: list[list[RingElement]]) -> np.ndarray:
        for row in rows:
            for entry in row:
                if entry.ring != self.ring:
                    raise DescriptorMismatch(f"Entry {entry!r} is not in {self.ring}")
        if self.mode == "generic":
            matrix = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
            for i, row in enumerate(rows):
                for j, entry in enumerate(row):
                    matrix[i, j] = entry
            return matrix
        values = np.array([[int(entry.payload) for entry in row] for row in rows], dtype=object)
        if self.mode == "modular":
            return values.astype(np.int64)
        return self._compact(values)

    def axpy(self, matrix: np.ndarray, c: RingElement, integer_matrix: np.ndarray) -> np.ndarray:
        """``matrix + c * integer_matrix``."""
        match self.mode:
            case "modular":
                return (matrix + c.payload * integer_matrix) % self.ring.p
            case "integer":
                return self._compact(
                    matrix.astype(object) + c.payload * integer_matrix.astype(object)
                )
            case _:
                scaled = np.frompyfunc(lambda value: c * int(value), 1, 1)(integer_matrix)
                return matrix + scaled

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        match self.mode:
            case "modular":
                return (a @ b) % self.ring.p
            case "integer":
                if a.dtype != object and b.dtype != object:
                    bound = int(np.abs(a).max(initial=0)) * int(np.abs(b).max(initial=0))
                    if bound * a.shape[1] < 2**62:
                        return a @ b
                return self._compact(a.astype(object) @ b.astype(object))
            case _:
                return a @ b

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        match self.mode:
            case "modular":
                return (a + b) % self.ring.p
            case "integer":
                return self._compact(a.astype(object) + b.astype(object))
            case _:
                return a + b

    def neg(self, a: np.ndarray) -> np.ndarray:
        match self.mode:
            case "modular":
                return (-a) % self.ring.p
            case "integer":
                return self._compact(-(a.astype(object)))
            case _:
                return -a

    def entry(self, matrix: np.ndarray, i: int, j: int) -> RingElement:
        if self.mode == "generic":
            return matrix[i, j]
        return self.ring.from_int(int(matrix[i, j]))

    def mask(self, matrix: np.ndarray, keep: np.ndarray) -> np.ndarray:
        """Zero out the entries where ``keep`` is false."""
        if self.mode == "generic":
            masked = matrix.copy()
            masked[~keep] = self.ring.zero
            return masked
        return np.where(keep, matrix, 0)

    def key(self, matrix: np.ndarray) -> tuple:
        """Hashable canonical form of a matrix."""
        match self.mode:
            case "modular":
                return (matrix.shape, matrix.astype(np.int64).tobytes())
            case "integer":
                return (matrix.shape, tuple(int(x) for x in matrix.flat))
            case _:
                return (matrix.shape, tuple(x.payload for x in matrix.flat))

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        if self.mode == "modular":
            return a.shape == b.shape and np.array_equal(a, b)
        return self.key(a) == self.key(b)


@functools.cache
def matrix_kernel(ring: RingDescriptor) -> MatrixKernel:
    return MatrixKernel(ring)


def exact_quotient(a: RingElement, b: RingElement) -> RingElement:
    """``a / b`` when ``b`` divides ``a``.

    :raises: VerificationFailure when the division is not exact
    """
    if a.ring.is_field:
        return a / b
    quotient, remainder = euclid_divmod(a, b)
    if not remainder.is_zero:
        raise VerificationFailure(f"{b} does not divide {a}")
    return quotient


def determinant(rows: list[list[RingElement]]) -> RingElement:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(rows)
    ring = rows[0][0].ring
    m = [list(row) for row in rows]
    sign = 1
    previous = ring.one
    for k in range(n - 1):
        if m[k][k].is_zero:
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero), None)
            if swap is None:
                return ring.zero
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_quotient(m[i][j] * m[k][k] - m[i][k] * m[k][j], previous)
        previous = m[k][k]
    return m[n - 1][n - 1] if sign == 1 else -m[n - 1][n - 1]


class RepKind(StrEnum):
    STANDARD_SL = "sl"
    STANDARD_SP = "sp"
    ADJOINT = "adjoint"


#: systems whose adjoint representation is faithful (trivial center)
CENTERLESS = {"G2", "F4", "E8"}


@dataclass(frozen=True, eq=False)
class GroupElement:
    """An element of a Chevalley group, as an exact matrix in ``rep``."""

    rep: "Representation"
    ring: RingDescriptor
    matrix: np.ndarray = field(repr=False)

    @property
    def kernel(self) -> MatrixKernel:
        return matrix_kernel(self.ring)

    def _check(self, other: "GroupElement"):
        if other.rep != self.rep or other.ring != self.ring:
            raise RepMismatch(
                f"Cannot combine {self.rep} over {self.ring} with {other.rep} over {other.ring}"
            )

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(
            self.rep, self.ring, self.kernel.matmul(self.matrix, other.matrix)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return (
            self.rep == other.rep
            and self.ring == other.ring
            and self.kernel.equal(self.matrix, other.matrix)
        )

    def __hash__(self) -> int:
        return hash((self.rep, self.ring, self.key()))

    def key(self) -> tuple:
        return self.kernel.key(self.matrix)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def entry(self, i: int, j: int) -> RingElement:
        return self.kernel.entry(self.matrix, i, j)

    def rows(self) -> list[list[RingElement]]:
        n = self.dimension
        return [[self.entry(i, j) for j in range(n)] for i in range(n)]

    def text_rows(self) -> list[list[str]]:
        return [[str(entry) for entry in row] for row in self.rows()]

    def is_identity(self) -> bool:
        return self.kernel.equal(self.matrix, self.kernel.identity(self.dimension))

    def commutes_with(self, other: "GroupElement") -> bool:
        return self * other == other * self

    def is_central(self) -> bool:
        """Commutes with ``x_alpha(1)`` for every simple and negative simple root."""
        one = self.ring.one
        return all(
            self.commutes_with(self.rep.elementary(root, one))
            for simple in self.rep.system.simple_roots
            for root in (simple, -simple)
        )

    def is_unipotent(self) -> bool:
        identity = self.kernel.identity(self.dimension)
        nilpotent = self.kernel.add(self.matrix, self.kernel.neg(identity))
        power = nilpotent
        for _ in range(self.dimension):
            power = self.kernel.matmul(power, nilpotent)
        zero = self.kernel.mask(identity, np.zeros(identity.shape, dtype=bool))
        return self.kernel.equal(power, zero)

    def inverse(self) -> "GroupElement":
        """Inverse by a finite geometric series for unipotent elements, or
        Gauss-Jordan elimination over a field.

        :raises: UnsupportedRing for non-unipotent elements over other rings
        """
        kernel = self.kernel
        identity = kernel.identity(self.dimension)
        if self.is_unipotent():
            # (I + N)^-1 = sum (-N)^k
            minus_nilpotent = kernel.add(identity, kernel.neg(self.matrix))
            result, power = identity, identity
            for _ in range(self.dimension):
                power = kernel.matmul(power, minus_nilpotent)
                result = kernel.add(result, power)
            return GroupElement(self.rep, self.ring, result)
        if not self.ring.is_field:
            raise UnsupportedRing(f"Cannot invert a general matrix over {self.ring}")
        return GroupElement(
            self.rep, self.ring, kernel.from_rows(_gauss_jordan_inverse(self.rows()))
        )

    def determinant(self) -> RingElement:
        return determinant(self.rows())

    def preserves_form(self) -> bool:
        """``g^T J g = J`` for the fixed symplectic form.

        :raises: UnsupportedRepForType outside the standard symplectic representation
        """
        if self.rep.kind != RepKind.STANDARD_SP:
            raise UnsupportedRepForType("Only standard symplectic elements preserve J")
        kernel = self.kernel
        form = kernel.lift(symplectic_form(self.rep.system.rank))
        transpose = self.matrix.T.copy()
        image = kernel.matmul(kernel.matmul(transpose, form), self.matrix)
        return kernel.equal(image, form)

    def to_dict(self) -> dict:
        return {
            "system": self.rep.system.label,
            "rep": str(self.rep.kind),
            "ring": str(self.ring),
            "matrix": self.text_rows(),
        }


def _gauss_jordan_inverse(rows: list[list[RingElement]]) -> list[list[RingElement]]:
    n = len(rows)
    ring = rows[0][0].ring
    augmented = [
        list(row) + [ring.one if i == j else ring.zero for j in range(n)]
        for i, row in enumerate(rows)
    ]
    for column in range(n):
        pivot = next(
            (i for i in range(column, n) if not augmented[i][column].is_zero), None
        )
        if pivot is None:
            raise NotAUnit("Matrix is singular")
        augmented[column], augmented[pivot] = augmented[pivot], augmented[column]
        scale = augmented[column][column].inverse()
        augmented[column] = [entry * scale for entry in augmented[column]]
        for i in range(n):
            if i != column and not augmented[i][column].is_zero:
                factor = augmented[i][column]
                augmented[i] = [
                    a - factor * b for a, b in zip(augmented[i], augmented[column])
                ]
    return [row[n:] for row in augmented]


def symplectic_form(rank: int) -> np.ndarray:
    """The fixed form ``J`` of the standard representation of ``Sp_(2l)``."""
    size = 2 * rank
    form = np.zeros((size, size), dtype=np.int64)
    for a in range(size):
        form[a, size - 1 - a] = 1 if a < rank else -1
    return form


def _unit(size: int, a: int, b: int) -> np.ndarray:
    matrix = np.zeros((size, size), dtype=np.int64)
    matrix[a, b] = 1
    return matrix


def _sl_generators(rank: int) -> list[tuple[np.ndarray, np.ndarray]]:
    size = rank + 1
    return [(_unit(size, i, i + 1), _unit(size, i + 1, i)) for i in range(rank)]


def _sp_generators(rank: int) -> list[tuple[np.ndarray, np.ndarray]]:
    size = 2 * rank

    def sign(a: int) -> int:
        return 1 if a < rank else -1

    def dual(a: int) -> int:
        return size - 1 - a

    def element(a: int, b: int) -> np.ndarray:
        if b == dual(a):
            return _unit(size, a, b)
        return _unit(size, a, b) - sign(a) * sign(b) * _unit(size, dual(b), dual(a))

    generators = [(element(i, i + 1), element(i + 1, i)) for i in range(rank - 1)]
    generators.append((element(rank - 1, rank), element(rank, rank - 1)))
    return generators


class Representation:
    """
    A representation of the Chevalley group of ``system``. Use
    :func:`representation`, which caches instances.
    """

    def __init__(self, system: RootSystem, kind: RepKind | str):
        kind = RepKind(kind)
        if kind == RepKind.STANDARD_SL and system.type_label != "A":
            raise UnsupportedRepForType(f"No standard SL representation for {system.label}")
        if kind == RepKind.STANDARD_SP and system.type_label != "C":
            raise UnsupportedRepForType(f"No standard Sp representation for {system.label}")
        self.system = system
        self.kind = kind
        self.basis = build_chevalley_basis(system)
        self._root_matrices: dict[Root, np.ndarray] = {}
        self._powers: dict[Root, list[np.ndarray]] = {}
        self._levi_labels: dict[tuple[int, ...], np.ndarray] = {}
        match kind:
            case RepKind.STANDARD_SL:
                self.dimension = system.rank + 1
                self._build_from_generators(_sl_generators(system.rank))
            case RepKind.STANDARD_SP:
                self.dimension = 2 * system.rank
                self._build_from_generators(_sp_generators(system.rank))
            case _:
                self.dimension = self.basis.dimension
        self.weights = self._weights()
        logger.debug(f"Built {self}")

    def __repr__(self) -> str:
        return f"<Representation {self.system.label} {self.kind}>"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return (self.system.label, self.kind) == (other.system.label, other.kind)

    def __hash__(self) -> int:
        return hash((self.system.label, self.kind))

    @property
    def is_faithful(self) -> bool:
        """Faithful on the simply connected group; the kernel of the adjoint
        representation is the center."""
        return self.kind != RepKind.ADJOINT or self.system.label in CENTERLESS

    def _build_from_generators(self, generators: list[tuple[np.ndarray, np.ndarray]]):
        basis = self.basis
        for simple, (e, f) in zip(self.system.simple_roots, generators):
            self._root_matrices[simple] = e
            self._root_matrices[-simple] = f
        for xi in self.system.positive_roots:
            if xi in self._root_matrices:
                continue
            first, second = basis.extraspecial[xi]
            for a, b in ((first, second), (-first, -second)):
                bracket = self._root_matrices[a] @ self._root_matrices[b] - (
                    self._root_matrices[b] @ self._root_matrices[a]
                )
                constant = basis.lie_constant(a, b)
                if (bracket % constant).any():
                    raise VerificationFailure(f"Bracket of {a} and {b} is not divisible")
                self._root_matrices[basis.system.add(a, b)] = bracket // constant

    def root_matrix(self, root: Root) -> np.ndarray:
        """Integer matrix of ``rho(e_root)``."""
        if self.kind == RepKind.ADJOINT:
            return self.basis.ad_matrix(root)
        return self._root_matrices[root]

    def h_diagonal(self, i: int) -> np.ndarray:
        """Eigenvalues of ``rho(h_i)`` on the basis vectors."""
        if self.kind == RepKind.ADJOINT:
            return self.basis.ad_h_diagonal(i)
        simple = self.system.simple_roots[i]
        e, f = self.root_matrix(simple), self.root_matrix(-simple)
        return np.diag(e @ f - f @ e)

    def _weights(self) -> list[tuple[int, ...]]:
        diagonals = [self.h_diagonal(i) for i in range(self.system.rank)]
        return [
            tuple(int(diagonal[b]) for diagonal in diagonals)
            for b in range(self.dimension)
        ]

    def divided_powers(self, root: Root) -> list[np.ndarray]:
        if root not in self._powers:
            self._powers[root] = divided_powers(self.root_matrix(root))
        return self._powers[root]

    def unit_entry(self, root: Root) -> tuple[int, int, int]:
        """A position ``(i, j)`` where ``rho(e_root)`` has entry ``+-1``, with
        that sign."""
        matrix = self.root_matrix(root)
        positions = np.argwhere(np.abs(matrix) == 1)
        if not len(positions):
            raise VerificationFailure(f"rho(e[{root}]) has no unit entry")
        i, j = (int(x) for x in positions[0])
        return i, j, int(matrix[i, j])

    # group elements

    def identity(self, ring: RingDescriptor) -> GroupElement:
        return GroupElement(self, ring, matrix_kernel(ring).identity(self.dimension))

    def from_rows(self, rows: list[list[RingElement]], ring: RingDescriptor) -> GroupElement:
        if len(rows) != self.dimension or any(len(row) != self.dimension for row in rows):
            raise RepMismatch(f"{self} expects {self.dimension}x{self.dimension} matrices")
        return GroupElement(self, ring, matrix_kernel(ring).from_rows(rows))

    def elementary(self, root: Root, r: RingElement) -> GroupElement:
        """The root element ``x_root(r)``."""
        if root not in self.system:
            raise RepMismatch(f"{root} is not a root of {self.system.label}")
        kernel = matrix_kernel(r.ring)
        matrix = kernel.identity(self.dimension)
        if not r.is_zero:
            for k, power in enumerate(self.divided_powers(root), start=1):
                matrix = kernel.axpy(matrix, r**k, power)
        return GroupElement(self, r.ring, matrix)

    def w_element(self, root: Root, u: RingElement) -> GroupElement:
        """``w_root(u) = x_root(u) x_-root(-u^-1) x_root(u)``.

        :raises: NotAUnit
        """
        inverse = u.inverse()
        return (
            self.elementary(root, u)
            * self.elementary(-root, -inverse)
            * self.elementary(root, u)
        )

    def h_element(self, root: Root, u: RingElement) -> GroupElement:
        """``h_root(u) = w_root(u) w_root(-1)``.

        :raises: NotAUnit
        """
        return self.w_element(root, u) * self.w_element(root, -u.ring.one)

    # Levi decomposition

    def levi_labels(self, indices: tuple[int, ...]) -> np.ndarray:
        """Grading of the basis by the sum of the weight's simple-root
        coordinates outside ``indices``; a standard Levi subgroup preserves
        every graded piece."""
        indices = tuple(sorted(indices))
        if indices not in self._levi_labels:
            inverse_cartan = sympy.Matrix(self.system.cartan.tolist()).inv()
            weights = sympy.Matrix(self.weights)
            coords = weights * inverse_cartan
            outside = [j for j in range(self.system.rank) if j not in indices]
            labels = [sum((coords[b, j] for j in outside), sympy.Integer(0)) for b in range(self.dimension)]
            self._levi_labels[indices] = np.array(labels, dtype=object)
        return self._levi_labels[indices]

    def levi_part(self, g: GroupElement, indices: tuple[int, ...]) -> GroupElement:
        """Block-diagonal part of ``g`` for the grading of :meth:`levi_labels`.
        For ``g`` in ``U+`` (or ``U-``) this is its factor in the Levi
        unipotent subgroup."""
        labels = self.levi_labels(indices)
        keep = labels[:, np.newaxis] == labels[np.newaxis, :]
        return GroupElement(self, g.ring, g.kernel.mask(g.matrix, keep.astype(bool)))


@functools.cache
def representation(system: RootSystem, kind: RepKind | str) -> Representation:
    """Build (or fetch the cached) representation of ``system``.

    :raises: UnsupportedRepForType
    """
    return Representation(system, RepKind(kind))


def default_representation(system: RootSystem) -> Representation:
    """Standard SL for type A, standard Sp for type C, otherwise adjoint."""
    match system.type_label:
        case "A":
            return representation(system, RepKind.STANDARD_SL)
        case "C":
            return representation(system, RepKind.STANDARD_SP)
        case _:
            return representation(system, RepKind.ADJOINT)


# functional interface


def elementary(rep: Representation, root: Root, r: RingElement) -> GroupElement:
    return rep.elementary(root, r)


def w_element(rep: Representation, root: Root, u: RingElement) -> GroupElement:
    return rep.w_element(root, u)


def h_element(rep: Representation, root: Root, u: RingElement) -> GroupElement:
    return rep.h_element(root, u)


def is_identity(g: GroupElement) -> bool:
    return g.is_identity()


def is_central(g: GroupElement) -> bool:
    return g.is_central()


def preserves_form(g: GroupElement) -> bool:
    return g.preserves_form()


def commutator_product(
    rep: Representation,
    alpha: Root,
    beta: Root,
    r: RingElement,
    s: RingElement,
    coefficients: list[tuple[int, int, int]],
) -> GroupElement:
    """Right side of the commutator formula: the product of
    ``x_(i alpha + j beta)(N r^i s^j)`` in the fixed order."""
    system = rep.system
    product = rep.identity(r.ring)
    for i, j, constant in coefficients:
        gamma = system.combination(i, alpha, j, beta)
        product = product * rep.elementary(gamma, constant * r**i * s**j)
    return product


def verify_commutator(
    rep: Representation,
    alpha: Root,
    beta: Root,
    r: RingElement,
    s: RingElement,
    constants: StructureConstants | None = None,
) -> bool:
    """Whether ``[x_alpha(r), x_beta(s)]`` equals the product given by the
    commutator formula. Uses the supplied constants table, or derives the
    coefficients from the Chevalley basis.

    :raises: OppositeRoots
    """
    if alpha.coords == (-beta).coords:
        raise OppositeRoots(f"{alpha} and {beta} are opposite")
    if constants is not None:
        coefficients = constants.coefficients(alpha, beta)
    else:
        coefficients = commutator_coefficients(rep.basis, alpha, beta)
    lhs = (
        rep.elementary(alpha, r)
        * rep.elementary(beta, s)
        * rep.elementary(alpha, -r)
        * rep.elementary(beta, -s)
    )
    return lhs == commutator_product(rep, alpha, beta, r, s, coefficients)


@dataclass(kw_only=True)
class CommutatorReport:
    """Result of checking the commutator formula over all root pairs."""

    system: str
    rep: str
    ring: str
    pairs: int
    trials: int
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "system": self.system,
            "rep": self.rep,
            "ring": self.ring,
            "pairs": self.pairs,
            "trials": self.trials,
            "failures": self.failures,
        }


def commutator_sweep(
    rep: Representation,
    ring: RingDescriptor,
    trials: int,
    rng: random.Random,
    constants: StructureConstants | None = None,
    bound: int = 3,
    disable_progress: bool = True,
) -> CommutatorReport:
    """Check the commutator formula for every ordered non-opposite pair of
    distinct roots, with ``trials`` random parameter pairs each."""
    system = rep.system
    pairs = [
        (alpha, beta)
        for alpha in system.roots
        for beta in system.roots
        if alpha != beta and alpha.coords != (-beta).coords
    ]
    report = CommutatorReport(
        system=system.label, rep=str(rep.kind), ring=str(ring), pairs=len(pairs), trials=trials
    )
    for alpha, beta in tqdm(
        pairs, disable=disable_progress, desc=f"Commutators {system.label} {ring}"
    ):
        for _ in range(trials):
            r = random_element(ring, rng, bound=bound)
            s = random_element(ring, rng, bound=bound)
            if not verify_commutator(rep, alpha, beta, r, s, constants):
                report.failures.append(
                    {
                        "alpha": system.index(alpha),
                        "beta": system.index(beta),
                        "alpha_root": str(alpha),
                        "beta_root": str(beta),
                        "r": str(r),
                        "s": str(s),
                    }
                )
                break
    logger.info(
        f"Commutator sweep {system.label}/{rep.kind} over {ring}: "
        f"{len(report.failures)} failing pairs of {len(pairs)}"
    )
    return report


def a1_relation_holds(ring: RingDescriptor, u: RingElement, r: RingElement) -> bool:
    """``w(u) x(r) w(u)^-1 = x_-(-u^-2 r)`` in ``SL_2`` over ``ring``."""
    rep = representation(build_root_system("A", 1), RepKind.STANDARD_SL)
    alpha = rep.system.simple_roots[0]
    # w(u)^-1 = w(-u)
    lhs = rep.w_element(alpha, u) * rep.elementary(alpha, r) * rep.w_element(alpha, -u)
    return lhs == rep.elementary(-alpha, -(u ** -2) * r)
