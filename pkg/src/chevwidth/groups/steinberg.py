# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

"""
Words in the Steinberg group: sequences of symbolic root elements
``x_alpha(r)``, evaluated in a representation of the Chevalley group.

Words are never compared as elements of the Steinberg group itself; every
decision here is made on images under evaluation. Collection rewrites a
word in positive (or negative) roots into its normal form, one letter per
root in the fixed root order, using additivity and the commutator formula.

Word files are JSON arrays of ``{"root": index, "param": element}``
records, with root indices from :attr:`RootSystem.roots` and elements in
the JSON form of :func:`chevwidth.algebra.rings.element_to_dict`.

Example usage: ::

    >>> system = build_root_system("A", 2)
    >>> ring = RingDescriptor.prime_field(5)
    >>> alpha, beta = system.simple_roots
    >>> word = SteinbergWord(system, ring, ((alpha, ring.one), (beta, ring.one)))
    >>> [str(root) for root, _ in collect_unipotent(word).letters]
    ['a2', 'a1', 'a1+a2']
"""

import functools
import logging
import pathlib
import random
from dataclasses import dataclass
from enum import StrEnum

import orjson

from chevwidth.algebra.liealg import build_chevalley_basis, commutator_coefficients
from chevwidth.algebra.rings import (
    RingDescriptor,
    RingElement,
    element_from_dict,
    element_to_dict,
    parse_element,
)
from chevwidth.algebra.roots import Root, RootSystem
from chevwidth.errors import (
    DescriptorMismatch,
    MixedSigns,
    NotAUnit,
    ParseError,
    RepMismatch,
)
from chevwidth.groups.chevalley import (
    GroupElement,
    Representation,
    RepKind,
    default_representation,
    representation,
)
from chevwidth.utils.sampling import random_letters

logger = logging.getLogger(__name__)

Letter = tuple[Root, RingElement]


@dataclass(frozen=True)
class SteinbergWord:
    """A word ``x_(root_1)(r_1) ... x_(root_k)(r_k)``; empty is the identity."""

    system: RootSystem
    ring: RingDescriptor
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for root, param in self.letters:
            if root not in self.system:
                raise RepMismatch(f"{root} is not a root of {self.system.label}")
            if param.ring != self.ring:
                raise DescriptorMismatch(f"Parameter {param!r} is not in {self.ring}")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "SteinbergWord") -> "SteinbergWord":
        if other.system is not self.system or other.ring != self.ring:
            raise RepMismatch("Cannot concatenate words over different systems or rings")
        return SteinbergWord(self.system, self.ring, self.letters + other.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"x[{root}]({param})" for root, param in self.letters)

    def inverse(self) -> "SteinbergWord":
        return SteinbergWord(
            self.system,
            self.ring,
            tuple((root, -param) for root, param in reversed(self.letters)),
        )

    def reduced(self) -> "SteinbergWord":
        """Merge adjacent letters on the same root and drop zero parameters."""
        letters: list[Letter] = []
        for root, param in self.letters:
            if letters and letters[-1][0] == root:
                param = letters.pop()[1] + param
            if not param.is_zero:
                letters.append((root, param))
        return SteinbergWord(self.system, self.ring, tuple(letters))

    @property
    def sign(self) -> int | None:
        """``1`` if every root is positive, ``-1`` if every root is negative,
        ``0`` for the empty word and None when signs are mixed."""
        signs = {root.is_positive for root, _ in self.letters}
        if not signs:
            return 0
        if len(signs) > 1:
            return None
        return 1 if signs.pop() else -1

    def to_records(self) -> list[dict]:
        return [
            {"root": self.system.index(root), "param": element_to_dict(param)}
            for root, param in self.letters
        ]

    @classmethod
    def from_records(
        cls, system: RootSystem, ring: RingDescriptor, records: list[dict]
    ) -> "SteinbergWord":
        """Word from JSON records.

        :raises: ParseError for malformed records
        """
        letters = []
        for record in records:
            try:
                index = int(record["root"])
                param = record["param"]
            except (KeyError, TypeError, ValueError) as err:
                raise ParseError(f"Invalid word record {record}") from err
            if not 0 <= index < len(system.roots):
                raise ParseError(f"Root index {index} out of range for {system.label}")
            if isinstance(param, dict):
                element = element_from_dict(param, ring)
            else:
                element = parse_element(ring, str(param))
            letters.append((system.roots[index], element))
        return cls(system, ring, tuple(letters))


def load_word(path: pathlib.Path, system: RootSystem, ring: RingDescriptor) -> SteinbergWord:
    """Read a word file.

    :raises: ParseError
    """
    try:
        records = orjson.loads(path.read_bytes())
    except orjson.JSONDecodeError as err:
        raise ParseError(f"Cannot parse word file {path}: {err}") from err
    if not isinstance(records, list):
        raise ParseError(f"Word file {path} must contain a JSON array")
    return SteinbergWord.from_records(system, ring, records)


def word_eval(word: SteinbergWord, rep: Representation) -> GroupElement:
    """Product of the root elements of ``word`` in ``rep``.

    :raises: RepMismatch
    """
    if rep.system is not word.system:
        raise RepMismatch(f"Word over {word.system.label} cannot be evaluated in {rep}")
    result = rep.identity(word.ring)
    for root, param in word.letters:
        result = result * rep.elementary(root, param)
    return result


@dataclass(frozen=True)
class SymbolExpr:
    """The Steinberg symbol ``{u, v}_root = h(uv) h(u)^-1 h(v)^-1``."""

    system: RootSystem
    root: Root
    u: RingElement
    v: RingElement

    def __post_init__(self):
        if self.u.ring != self.v.ring:
            raise DescriptorMismatch("Symbol entries must lie in the same ring")
        for value in (self.u, self.v):
            if not value.is_unit():
                raise NotAUnit(f"{value} is not a unit in {value.ring}")

    def __str__(self) -> str:
        return f"{{{self.u}, {self.v}}}[{self.root}]"


def _w_letters(root: Root, u: RingElement) -> list[Letter]:
    return [(root, u), (-root, -u.inverse()), (root, u)]


def symbol_word(symbol: SymbolExpr) -> SteinbergWord:
    """Expand a symbol into root elements. With ``h(u)^-1 = w(1) w(-u)`` the
    symbol is ``w(uv) w(-u) w(1) w(-v)``, twelve letters."""
    u, v, root = symbol.u, symbol.v, symbol.root
    one = u.ring.one
    letters = (
        _w_letters(root, u * v)
        + _w_letters(root, -u)
        + _w_letters(root, one)
        + _w_letters(root, -v)
    )
    return SteinbergWord(symbol.system, u.ring, tuple(letters))


@functools.cache
def _coefficients(system: RootSystem, first: int, second: int) -> list[tuple[int, int, int]]:
    basis = build_chevalley_basis(system)
    return commutator_coefficients(basis, system.roots[first], system.roots[second])


def collect_unipotent(word: SteinbergWord) -> SteinbergWord:
    """Normal form of a word in positive (or negative) roots: one letter
    per root in the fixed root order, zero parameters dropped. Out-of-order
    neighbours are swapped with
    ``x_b(s) x_a(r) = x_a(r) x_b(s) [x_b(-s), x_a(-r)]``.

    :raises: MixedSigns
    """
    if word.sign is None:
        raise MixedSigns("Collection requires all roots of one sign")
    system = word.system
    letters = list(word.letters)
    while True:
        position = None
        for k, (root, param) in enumerate(letters):
            if param.is_zero:
                position = k
                break
            if k + 1 < len(letters):
                following = letters[k + 1][0]
                if system.order_key(root) >= system.order_key(following):
                    position = k
                    break
        if position is None:
            break
        root, param = letters[position]
        if param.is_zero:
            del letters[position]
            continue
        next_root, next_param = letters[position + 1]
        if root == next_root:
            letters[position : position + 2] = [(root, param + next_param)]
            continue
        # x_b(s) x_a(r) with a before b in the root order
        beta, s, alpha, r = root, param, next_root, next_param
        commutator = [
            (system.combination(i, beta, j, alpha), constant * (-s) ** i * (-r) ** j)
            for i, j, constant in _coefficients(
                system, system.index(beta), system.index(alpha)
            )
        ]
        letters[position : position + 2] = [(alpha, r), (beta, s)] + commutator
    return SteinbergWord(system, word.ring, tuple(letters))


def unipotent_word(g: GroupElement, sign: int = 1) -> SteinbergWord:
    """Read the normal-form word of an element of ``U+`` (``sign=1``) or
    ``U-`` (``sign=-1``) off its matrix.

    :raises: ValueError when ``g`` is not in the requested subgroup
    """
    rep = g.rep
    system = rep.system
    roots = system.positive_roots if sign > 0 else system.negative_roots
    remaining = g
    letters = []
    for root in roots:
        i, j, unit = rep.unit_entry(root)
        coefficient = remaining.entry(i, j) * unit
        if coefficient.is_zero:
            continue
        letters.append((root, coefficient))
        remaining = rep.elementary(root, -coefficient) * remaining
    if not remaining.is_identity():
        raise ValueError(f"Element is not in U{'+' if sign > 0 else '-'}")
    return SteinbergWord(system, g.ring, tuple(letters))


class K2Witness(StrEnum):
    IN_K2 = "InK2"
    NOT_IN_K2 = "NotInK2"
    UNKNOWN_MODULO_CENTER = "UnknownModuloCenter"


def k2_witness(word: SteinbergWord) -> K2Witness:
    """Decide whether ``word`` maps to the identity of the simply connected
    group. Types A and C evaluate in their faithful standard
    representations, G2, F4 and E8 in the adjoint one; for the remaining
    types an adjoint identity only shows the image is central."""
    system = word.system
    rep = default_representation(system)
    image = word_eval(word, rep)
    if not image.is_identity():
        return K2Witness.NOT_IN_K2
    if rep.is_faithful:
        return K2Witness.IN_K2
    return K2Witness.UNKNOWN_MODULO_CENTER


def adjoint_image(word: SteinbergWord) -> GroupElement:
    return word_eval(word, representation(word.system, RepKind.ADJOINT))


def random_word(
    system: RootSystem,
    ring: RingDescriptor,
    rng: random.Random,
    length: int = 20,
    roots: list[Root] | None = None,
    degree: int = 2,
) -> SteinbergWord:
    """Random word of ``length`` letters over ``roots`` (default all roots)."""
    letters = random_letters(roots or system.roots, ring, rng, length, degree)
    return SteinbergWord(system, ring, tuple(letters))
