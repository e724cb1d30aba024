# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

"""
Reduced irreducible root systems of types A-G, with Bourbaki numbering of
the simple roots.

Roots are stored in simple-root coordinates. Positive roots are ordered by
height and then lexicographically on their coordinates; this fixed order
drives the sign conventions of :mod:`chevwidth.algebra.liealg` and the
collection order of :mod:`chevwidth.groups.steinberg`. The Cartan matrix
uses ``cartan[i][j] = <alpha_i, alpha_j> = 2(alpha_i, alpha_j)/(alpha_j, alpha_j)``.

Example usage: ::

    >>> system = build_root_system("G", 2)
    >>> len(system.positive_roots)
    6
    >>> alpha, beta = system.simple_roots
    >>> system.root_string(alpha, beta)
    (0, 3)
"""

import functools
import logging
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np

from chevwidth.errors import InvalidType, NoSuchEmbedding, OppositeRoots

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Root:
    """A root in simple-root coordinates, with its length class."""

    coords: tuple[int, ...]
    long: bool = True

    @property
    def height(self) -> int:
        return sum(self.coords)

    @property
    def is_positive(self) -> bool:
        return self.height > 0

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coords), self.long)

    def __str__(self) -> str:
        terms = []
        for index, c in enumerate(self.coords, start=1):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            size = "" if abs(c) == 1 else str(abs(c))
            terms.append(f"{sign}{size}a{index}")
        text = "".join(terms)
        return text[1:] if text.startswith("+") else text


def _gram_matrix(label: str, rank: int) -> np.ndarray:
    """Integer Gram matrix of the simple roots (Bourbaki numbering)."""
    gram = np.zeros((rank, rank), dtype=np.int64)

    def bond(i: int, j: int, value: int):
        gram[i - 1, j - 1] = gram[j - 1, i - 1] = value

    match label:
        case "A" | "D" | "E":
            np.fill_diagonal(gram, 2)
            if label == "A":
                for i in range(1, rank):
                    bond(i, i + 1, -1)
            elif label == "D":
                for i in range(1, rank - 1):
                    bond(i, i + 1, -1)
                bond(rank - 2, rank, -1)
            else:
                bond(1, 3, -1)
                bond(2, 4, -1)
                for i in range(3, rank):
                    bond(i, i + 1, -1)
        case "B":
            # long roots squared length 4, the last (short) one 2
            np.fill_diagonal(gram, 4)
            gram[rank - 1, rank - 1] = 2
            for i in range(1, rank):
                bond(i, i + 1, -2)
        case "C":
            # short roots squared length 2, the last (long) one 4
            np.fill_diagonal(gram, 2)
            gram[rank - 1, rank - 1] = 4
            for i in range(1, rank - 1):
                bond(i, i + 1, -1)
            bond(rank - 1, rank, -2)
        case "F":
            np.fill_diagonal(gram, [4, 4, 2, 2])
            bond(1, 2, -2)
            bond(2, 3, -2)
            bond(3, 4, -1)
        case "G":
            # alpha_1 short, alpha_2 long
            np.fill_diagonal(gram, [2, 6])
            bond(1, 2, -3)
    return gram


#: smallest rank per type label (and the only ranks for E, F, G)
VALID_RANKS = {
    "A": range(1, 100),
    "B": range(2, 100),
    "C": range(2, 100),
    "D": range(4, 100),
    "E": range(6, 9),
    "F": range(4, 5),
    "G": range(2, 3),
}


class RootSystem:
    """
    A reduced irreducible root system. Build instances with
    :func:`build_root_system`, which caches them, so systems can be
    compared by identity.
    """

    def __init__(self, type_label: str, rank: int):
        self.type_label = type_label
        self.rank = rank
        #: symmetric integer form on the simple roots
        self.gram = _gram_matrix(type_label, rank)
        diagonal = np.diag(self.gram)
        #: cartan[i][j] = <alpha_i, alpha_j>
        self.cartan = (2 * self.gram) // diagonal[np.newaxis, :]
        self._long_length = int(diagonal.max())

        self.simple_roots = [
            self._make_root(tuple(int(i == j) for j in range(rank)))
            for i in range(rank)
        ]
        self.positive_roots = self._enumerate_positive_roots()
        self.negative_roots = [-root for root in self.positive_roots]
        #: all roots: positive roots in order, then their negatives
        self.roots = self.positive_roots + self.negative_roots
        self._index = {root.coords: index for index, root in enumerate(self.roots)}
        logger.debug(f"Built {self.label} with {len(self.roots)} roots")

    def __repr__(self) -> str:
        return f"<RootSystem {self.label}>"

    @property
    def label(self) -> str:
        return f"{self.type_label}{self.rank}"

    @property
    def is_simply_laced(self) -> bool:
        return self.type_label in ("A", "D", "E")

    def _make_root(self, coords: tuple[int, ...]) -> Root:
        vector = np.array(coords, dtype=np.int64)
        length = int(vector @ self.gram @ vector)
        return Root(coords, long=length == self._long_length)

    def _enumerate_positive_roots(self) -> list[Root]:
        known = {root.coords for root in self.simple_roots}
        layer = [root.coords for root in self.simple_roots]
        while layer:
            next_layer = []
            for coords in layer:
                for i in range(self.rank):
                    # p: how far the alpha_i string extends below coords
                    p = 0
                    while True:
                        lower = list(coords)
                        lower[i] -= p + 1
                        if tuple(lower) not in known:
                            break
                        p += 1
                    q = p - self._pairing_coords(coords, i)
                    if q > 0:
                        higher = list(coords)
                        higher[i] += 1
                        higher = tuple(higher)
                        if higher not in known:
                            known.add(higher)
                            next_layer.append(higher)
            layer = next_layer
        ordered = sorted(known, key=lambda coords: (sum(coords), coords))
        return [self._make_root(coords) for coords in ordered]

    def _pairing_coords(self, coords: tuple[int, ...], i: int) -> int:
        # <beta, alpha_i> for beta given by coordinates
        return int(np.dot(coords, self.cartan[:, i]))

    # root lookups

    def __contains__(self, root: Root) -> bool:
        return root.coords in self._index

    def index(self, root: Root) -> int:
        """Position of a root in :attr:`roots`."""
        return self._index[root.coords]

    def root_of(self, coords) -> Root | None:
        """The root with the given coordinates, if there is one."""
        index = self._index.get(tuple(int(c) for c in coords))
        return None if index is None else self.roots[index]

    def add(self, alpha: Root, beta: Root) -> Root | None:
        """``alpha + beta`` if it is a root."""
        return self.root_of(a + b for a, b in zip(alpha.coords, beta.coords))

    def combination(self, i: int, alpha: Root, j: int, beta: Root) -> Root | None:
        """``i*alpha + j*beta`` if it is a root."""
        return self.root_of(
            i * a + j * b for a, b in zip(alpha.coords, beta.coords)
        )

    def order_key(self, root: Root) -> int:
        """Position in the fixed total order (positive roots first)."""
        return self.index(root)

    # forms

    def inner(self, alpha: Root, beta: Root) -> int:
        """Symmetric form ``(alpha, beta)``."""
        return int(np.array(alpha.coords) @ self.gram @ np.array(beta.coords))

    def pairing(self, beta: Root, alpha: Root) -> int:
        """``<beta, alpha> = 2(beta, alpha)/(alpha, alpha)``."""
        return 2 * self.inner(beta, alpha) // self.inner(alpha, alpha)

    def coroot_coords(self, alpha: Root) -> tuple[int, ...]:
        """Coordinates of the coroot of ``alpha`` in the simple coroots."""
        length = self.inner(alpha, alpha)
        return tuple(
            c * int(self.gram[i, i]) // length for i, c in enumerate(alpha.coords)
        )

    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    # Weyl action

    def reflect(self, alpha: Root, beta: Root) -> Root:
        """Reflection ``sigma_alpha(beta) = beta - <beta, alpha> alpha``."""
        k = self.pairing(beta, alpha)
        image = self.root_of(b - k * a for a, b in zip(alpha.coords, beta.coords))
        if image is None:  # pragma: no cover
            raise ValueError(f"Reflection of {beta} in {alpha} is not a root")
        return image

    def root_string(self, alpha: Root, beta: Root) -> tuple[int, int]:
        """The alpha-string through beta: maximal ``(p, q)`` with
        ``beta - p*alpha, ..., beta + q*alpha`` all roots.

        :raises: OppositeRoots
        """
        if alpha.coords == beta.coords or alpha.coords == (-beta).coords:
            raise OppositeRoots(f"{beta} is a multiple of {alpha}")
        p = 0
        while self.combination(1, beta, -(p + 1), alpha) is not None:
            p += 1
        q = 0
        while self.combination(1, beta, q + 1, alpha) is not None:
            q += 1
        return p, q

    def weyl_group_order(self) -> int:
        """Order of the Weyl group by orbit-stabilizer: the orbit of the last
        fundamental weight times the order of its stabilizer, the Weyl group
        of the remaining nodes."""
        return _weyl_order(
            tuple(map(tuple, self.cartan.tolist())), tuple(range(self.rank))
        )

    def to_dict(self) -> dict:
        """JSON summary: roots, Cartan matrix, counts and Weyl group order."""
        return {
            "system": self.label,
            "rank": self.rank,
            "cartan_matrix": self.cartan.tolist(),
            "roots": [
                {
                    "index": index,
                    "coords": list(root.coords),
                    "height": root.height,
                    "long": root.long,
                }
                for index, root in enumerate(self.roots)
            ],
            "num_roots": len(self.roots),
            "num_positive_roots": len(self.positive_roots),
            "weyl_group_order": self.weyl_group_order(),
        }


@functools.cache
def _weyl_order(cartan: tuple[tuple[int, ...], ...], nodes: tuple[int, ...]) -> int:
    if not nodes:
        return 1
    last = len(nodes) - 1
    # fundamental weight coordinates restricted to these nodes
    start = tuple(int(k == last) for k in range(len(nodes)))
    orbit = {start}
    frontier = [start]
    while frontier:
        new_frontier = []
        for weight in frontier:
            for j, node in enumerate(nodes):
                if weight[j] == 0:
                    continue
                image = tuple(
                    w - weight[j] * cartan[node][other]
                    for w, other in zip(weight, nodes)
                )
                if image not in orbit:
                    orbit.add(image)
                    new_frontier.append(image)
        frontier = new_frontier
    return len(orbit) * _weyl_order(cartan, nodes[:-1])


@functools.cache
def build_root_system(type_label: str, rank: int) -> RootSystem:
    """Build (or fetch the cached) root system of the given type.

    :raises: InvalidType
    """
    type_label = type_label.upper()
    if type_label not in VALID_RANKS or rank not in VALID_RANKS[type_label]:
        raise InvalidType(f"No reduced irreducible root system {type_label}{rank}")
    return RootSystem(type_label, rank)


def parse_system(text: str) -> RootSystem:
    """Root system from a label such as ``G2`` or ``A3``.

    :raises: InvalidType
    """
    text = text.strip()
    if len(text) < 2 or not text[1:].isdigit():
        raise InvalidType(f"Cannot parse root system '{text}'")
    return build_root_system(text[0], int(text[1:]))


class EmbeddingKind(StrEnum):
    A2_LONG_ROOTS = "A2LongRoots"
    A3_STANDARD = "A3Standard"
    D5_IN_E6 = "D5inE6"
    DL_IN_DL1 = "DlinDl1"
    EL_IN_EL1 = "ElinEl1"
    LEVI_SUBSYSTEM = "LeviSubsystem"


@dataclass(frozen=True, eq=False)
class SystemEmbedding:
    """An injective, sum-preserving map of the roots of ``source`` onto a
    closed subsystem of ``target``."""

    source: RootSystem
    target: RootSystem
    root_map: dict[Root, Root]
    kind: str
    #: images of the source's simple roots, in order
    simple_images: tuple[Root, ...] = field(default=())

    def __call__(self, root: Root) -> Root:
        return self.root_map[root]

    def image(self) -> list[Root]:
        return [self.root_map[root] for root in self.source.roots]

    def levi_indices(self) -> tuple[int, ...] | None:
        """Indices of the target simple roots generating the image, when the
        image is a standard Levi subsystem; otherwise None."""
        simple = {root.coords: i for i, root in enumerate(self.target.simple_roots)}
        indices = [simple.get(root.coords) for root in self.simple_images]
        if any(index is None for index in indices):
            return None
        return tuple(sorted(indices))


def _build_embedding(
    source: RootSystem,
    target: RootSystem,
    simple_images: list[Root],
    kind: str,
) -> SystemEmbedding:
    """Extend a map on simple roots linearly and validate it."""
    root_map = {}
    for root in source.roots:
        coords = np.zeros(target.rank, dtype=np.int64)
        for c, image in zip(root.coords, simple_images):
            coords += c * np.array(image.coords)
        target_root = target.root_of(coords)
        if target_root is None:
            raise NoSuchEmbedding(
                f"{kind}: image of {root} is not a root of {target.label}"
            )
        root_map[root] = target_root
    if len(set(root_map.values())) != len(root_map):
        raise NoSuchEmbedding(f"{kind}: map is not injective")
    for alpha in source.roots:
        for beta in source.roots:
            if target.pairing(root_map[beta], root_map[alpha]) != source.pairing(
                beta, alpha
            ):
                raise NoSuchEmbedding(f"{kind}: pairings are not preserved")
    # the image must be closed in the target
    image = set(root_map.values())
    for alpha in image:
        for beta in image:
            total = target.add(alpha, beta)
            if total is not None and total not in image:
                raise NoSuchEmbedding(f"{kind}: image does not close in {target.label}")
    return SystemEmbedding(
        source=source,
        target=target,
        root_map=root_map,
        kind=kind,
        simple_images=tuple(simple_images),
    )


def _long_chain(target: RootSystem, length: int) -> list[Root] | None:
    """First chain of long positive roots (in the fixed order) with
    consecutive pairings -1 and other pairings 0."""
    candidates = [root for root in target.positive_roots if root.long]

    def extend(chain: list[Root]) -> list[Root] | None:
        if len(chain) == length:
            return chain
        for root in candidates:
            if root in chain:
                continue
            if target.pairing(root, chain[-1]) != -1:
                continue
            if any(target.pairing(root, earlier) != 0 for earlier in chain[:-1]):
                continue
            found = extend(chain + [root])
            if found:
                return found
        return None

    for start in candidates:
        chain = extend([start])
        if chain:
            return chain
    return None


def embedding(
    kind: EmbeddingKind | str,
    target: RootSystem | None = None,
    indices: tuple[int, ...] | None = None,
    source: RootSystem | None = None,
) -> SystemEmbedding:
    """Construct one of the canonical subsystem embeddings.

    - ``A2LongRoots``: A2 onto long roots of ``target``
    - ``A3Standard``: A3 onto a chain of long roots of ``target``
    - ``D5inE6``: D5 onto the subsystem of E6 generated by alpha_1..alpha_5
    - ``DlinDl1``: D_l into ``target`` = D_(l+1) (dropping the first node)
    - ``ElinEl1``: E_l into ``target`` = E_(l+1)
    - ``LeviSubsystem``: ``source`` onto the subsystem generated by the
      target simple roots at ``indices`` (0-based, in source order)

    :raises: NoSuchEmbedding
    """
    kind = EmbeddingKind(kind)
    match kind:
        case EmbeddingKind.A2_LONG_ROOTS | EmbeddingKind.A3_STANDARD:
            if target is None:
                raise NoSuchEmbedding(f"{kind} requires a target system")
            length = 2 if kind == EmbeddingKind.A2_LONG_ROOTS else 3
            chain = _long_chain(target, length)
            if chain is None:
                raise NoSuchEmbedding(
                    f"{kind}: long roots of {target.label} do not close into A{length}"
                )
            return _build_embedding(build_root_system("A", length), target, chain, kind)
        case EmbeddingKind.D5_IN_E6:
            target = target or build_root_system("E", 6)
            if target.label != "E6":
                raise NoSuchEmbedding("D5inE6 requires target E6")
            simple = target.simple_roots
            # D5 chain b1-b2-b3 with b3 branching to b4, b5
            images = [simple[0], simple[2], simple[3], simple[1], simple[4]]
            return _build_embedding(build_root_system("D", 5), target, images, kind)
        case EmbeddingKind.DL_IN_DL1:
            if target is None or target.type_label != "D" or target.rank < 5:
                raise NoSuchEmbedding("DlinDl1 requires a target D_(l+1) with l >= 4")
            source = build_root_system("D", target.rank - 1)
            images = target.simple_roots[1:]
            return _build_embedding(source, target, images, kind)
        case EmbeddingKind.EL_IN_EL1:
            if target is None or target.label not in ("E7", "E8"):
                raise NoSuchEmbedding("ElinEl1 requires target E7 or E8")
            source = build_root_system("E", target.rank - 1)
            images = target.simple_roots[: source.rank]
            return _build_embedding(source, target, images, kind)
        case _:
            if target is None or source is None or indices is None:
                raise NoSuchEmbedding("LeviSubsystem requires target, source and indices")
            if len(indices) != source.rank:
                raise NoSuchEmbedding("LeviSubsystem needs one index per source simple root")
            images = [target.simple_roots[i] for i in indices]
            return _build_embedding(source, target, images, kind)
