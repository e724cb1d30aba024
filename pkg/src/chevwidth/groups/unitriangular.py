# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

"""
Unitriangular factorizations ``g = y_1 y_2 ... y_N`` with the ``y_k``
alternating between the unipotent subgroups ``U+`` and ``U-``.

Over a finite field, membership is decided exactly by enumerating the
product sets ``U+``, ``U+U-``, ``U+U-U+``, ... with hashing. Each level
stores, for every new matrix, the element of the previous level and the
unipotent factor that first produced it, so a form can be read back for
any member.

:class:`TavgenLift` builds forms in a large system from forms in standard
Levi subsystems whose union contains every simple root. Each block of a
form splits into its Levi part and a part in the unipotent radical; the
Levi parts are refactored by the subsystem's product-set oracle and the
radical parts, which the Levi subgroup normalizes, are conjugated back
into place. Every form produced here is re-evaluated before it is
returned.

Example usage: ::

    >>> system = build_root_system("A", 2)
    >>> rep = representation(system, "sl")
    >>> ring = RingDescriptor.prime_field(3)
    >>> table = product_set_table(rep, ring, 4)
    >>> table.sizes[-1]
    5616
"""

import functools
import itertools
import logging
from dataclasses import dataclass

import numpy as np
from tqdm import tqdm

from chevwidth.algebra.liealg import build_chevalley_basis, commutator_coefficients
from chevwidth.algebra.rings import RingDescriptor, RingElement
from chevwidth.algebra.roots import (
    EmbeddingKind,
    Root,
    RootSystem,
    SystemEmbedding,
    build_root_system,
    embedding,
)
from chevwidth.errors import (
    CoverageGap,
    NoSuchEmbedding,
    RepMismatch,
    TooLargeForExhaustive,
    UnsupportedRing,
    VerificationFailure,
)
from chevwidth.groups.chevalley import (
    GroupElement,
    Representation,
    RepKind,
    default_representation,
    matrix_kernel,
)
from chevwidth.groups.factor import factor_sln
from chevwidth.groups.steinberg import (
    Letter,
    SteinbergWord,
    collect_unipotent,
    unipotent_word,
    word_eval,
)

logger = logging.getLogger(__name__)

#: largest rank accepted by exhaustive membership
MAX_EXHAUSTIVE_RANK = 3
#: longest alternation accepted by exhaustive membership
MAX_EXHAUSTIVE_LENGTH = 5
#: largest unipotent subgroup enumerated
MAX_UNIPOTENT_ORDER = 4096
#: parent matrices multiplied per numpy batch
BATCH_SIZE = 512


def block_signs(length: int, first_sign: int = 1) -> tuple[int, ...]:
    """Signs of the blocks of an alternating form, ``+1`` for ``U+``."""
    if first_sign not in (1, -1):
        raise ValueError("first_sign must be 1 or -1")
    return tuple(first_sign * (-1) ** k for k in range(length))


@dataclass(frozen=True, eq=False)
class UnitriangularForm:
    """Alternating unipotent blocks whose product is ``target``. Blocks are
    collected words; an empty block stands for the identity."""

    rep: Representation
    target: GroupElement
    blocks: tuple[SteinbergWord, ...]
    first_sign: int = 1

    @property
    def length(self) -> int:
        return len(self.blocks)

    @property
    def signs(self) -> tuple[int, ...]:
        return block_signs(self.length, self.first_sign)

    @property
    def width(self) -> int:
        """Number of root elements over all blocks."""
        return sum(len(block) for block in self.blocks)

    @property
    def word(self) -> SteinbergWord:
        word = SteinbergWord(self.rep.system, self.target.ring)
        for block in self.blocks:
            word = word * block
        return word

    def evaluate(self) -> GroupElement:
        return word_eval(self.word, self.rep)

    def verify(self) -> "UnitriangularForm":
        """
        :raises: VerificationFailure if alternation, normal form or the
            product check fails
        """
        for k, (block, sign) in enumerate(zip(self.blocks, self.signs), start=1):
            if block.sign not in (0, sign):
                raise VerificationFailure(f"Block {k} is not in U{'+' if sign > 0 else '-'}")
            if collect_unipotent(block).letters != block.letters:
                raise VerificationFailure(f"Block {k} is not in normal form")
        if self.evaluate() != self.target:
            raise VerificationFailure("Unitriangular form does not evaluate to its target")
        return self

    def to_dict(self) -> dict:
        return {
            "system": self.rep.system.label,
            "ring": str(self.target.ring),
            "length": self.length,
            "signs": list(self.signs),
            "width": self.width,
            "target": self.target.text_rows(),
            "blocks": [block.to_records() for block in self.blocks],
        }


def _check_finite(ring: RingDescriptor):
    if not ring.is_finite_field:
        raise UnsupportedRing(f"Product sets need a finite field, not {ring}")


def unipotent_subgroup(
    rep: Representation, ring: RingDescriptor, roots: list[Root]
) -> list[tuple[SteinbergWord, GroupElement]]:
    """All elements of the subgroup generated by root elements for
    ``roots`` (a closed set of roots of one sign), as collected words with
    their matrices; the identity comes first."""
    _check_finite(ring)
    system = rep.system
    roots = sorted(roots, key=system.order_key)
    order = ring.q ** len(roots)
    if order > MAX_UNIPOTENT_ORDER:
        raise TooLargeForExhaustive(f"Unipotent subgroup of order {order} is too large")
    elements = []
    for params in itertools.product(ring.elements(), repeat=len(roots)):
        letters = tuple((root, param) for root, param in zip(roots, params) if not param.is_zero)
        word = SteinbergWord(system, ring, letters)
        elements.append((word, word_eval(word, rep)))
    return elements


class ProductSetTable:
    """
    Product sets ``U^(s_1)``, ``U^(s_1) U^(s_2)``, ... up to ``length``
    alternating factors, each level stored as a map from matrix key to the
    key it extends in the previous level and the index of the unipotent
    factor used.

    :param roots: roots whose root elements generate the unipotent
        factors (default all roots); the positive ones generate ``U+`` and
        the negative ones ``U-``
    """

    def __init__(
        self,
        rep: Representation,
        ring: RingDescriptor,
        length: int,
        first_sign: int = 1,
        roots: list[Root] | None = None,
        disable_progress: bool = True,
    ):
        _check_finite(ring)
        self.rep = rep
        self.ring = ring
        self.length = length
        self.first_sign = first_sign
        self.signs = block_signs(length, first_sign)
        roots = list(roots) if roots is not None else list(rep.system.roots)
        self.roots = roots
        self.units = {
            1: unipotent_subgroup(rep, ring, [r for r in roots if r.is_positive]),
            -1: unipotent_subgroup(rep, ring, [r for r in roots if not r.is_positive]),
        }
        self._kernel = matrix_kernel(ring)
        identity = rep.identity(ring)
        self.levels: list[dict] = [{self._key(identity): None}]
        if self._kernel.mode == "modular":
            self._enumerate_modular(identity, disable_progress)
        else:
            self._enumerate_generic(identity, disable_progress)
        logger.info(f"Product sets for {rep.system.label} over {ring}: sizes {self.sizes}")

    def __repr__(self) -> str:
        return (
            f"<ProductSetTable {self.rep.system.label} {self.ring} "
            f"length={self.length} sizes={self.sizes}>"
        )

    @property
    def sizes(self) -> list[int]:
        """Size of each level, starting with the trivial product."""
        return [len(level) for level in self.levels]

    def _key(self, g: GroupElement):
        if self._kernel.mode == "modular":
            return g.matrix.astype(np.int64).tobytes()
        return g.key()

    def _enumerate_modular(self, identity: GroupElement, disable_progress: bool):
        n, p = self.rep.dimension, self.ring.p
        previous = identity.matrix.astype(np.int64)[np.newaxis]
        previous_keys = [previous[0].tobytes()]
        for sign in tqdm(self.signs, disable=disable_progress, desc="Product sets"):
            units = np.stack([g.matrix.astype(np.int64) for _, g in self.units[sign]])
            count = len(units)
            level: dict = {}
            matrices = []
            for start in range(0, len(previous), BATCH_SIZE):
                chunk = previous[start : start + BATCH_SIZE]
                products = np.einsum("pij,mjk->pmik", chunk, units) % p
                flat = np.ascontiguousarray(products.reshape(-1, n * n))
                view = flat.view(np.dtype((np.void, flat.dtype.itemsize * n * n))).ravel()
                _, first = np.unique(view, return_index=True)
                for index in first:
                    key = flat[index].tobytes()
                    if key in level:
                        continue
                    level[key] = (previous_keys[start + index // count], int(index % count))
                    matrices.append(flat[index])
            self.levels.append(level)
            previous = np.stack(matrices).reshape(-1, n, n)
            previous_keys = list(level)

    def _enumerate_generic(self, identity: GroupElement, disable_progress: bool):
        previous = [identity]
        for sign in tqdm(self.signs, disable=disable_progress, desc="Product sets"):
            level: dict = {}
            current = []
            for g in previous:
                parent = self._key(g)
                for index, (_, u) in enumerate(self.units[sign]):
                    product = g * u
                    key = self._key(product)
                    if key not in level:
                        level[key] = (parent, index)
                        current.append(product)
            self.levels.append(level)
            previous = current

    def _factor_indices(self, g: GroupElement) -> list[int] | None:
        if g.rep != self.rep or g.ring != self.ring:
            raise RepMismatch("Element is not in the table's representation")
        key = self._key(g)
        if key not in self.levels[-1]:
            return None
        indices = []
        for level in reversed(self.levels[1:]):
            key, index = level[key]
            indices.append(index)
        return indices[::-1]

    def lookup_elements(self, g: GroupElement) -> tuple[GroupElement, ...] | None:
        """Matrices of the alternating factors of ``g``, or None when ``g``
        is not in the last product set."""
        indices = self._factor_indices(g)
        if indices is None:
            return None
        return tuple(self.units[sign][i][1] for sign, i in zip(self.signs, indices))

    def lookup(self, g: GroupElement) -> UnitriangularForm | None:
        indices = self._factor_indices(g)
        if indices is None:
            return None
        blocks = tuple(self.units[sign][i][0] for sign, i in zip(self.signs, indices))
        return UnitriangularForm(
            rep=self.rep, target=g, blocks=blocks, first_sign=self.first_sign
        ).verify()


@functools.cache
def product_set_table(
    rep: Representation,
    ring: RingDescriptor,
    length: int,
    first_sign: int = 1,
    roots: tuple[Root, ...] | None = None,
) -> ProductSetTable:
    """Build (or fetch the cached) product-set table."""
    return ProductSetTable(rep, ring, length, first_sign, list(roots) if roots else None)


def unitriangular_membership(
    g: GroupElement, length: int, first_sign: int = 1
) -> UnitriangularForm | None:
    """A form of ``g`` with ``length`` alternating blocks starting in
    ``U+`` (``first_sign=1``) or ``U-``, or None when there is none.

    :raises: UnsupportedRing, TooLargeForExhaustive
    """
    _check_finite(g.ring)
    system = g.rep.system
    if system.rank > MAX_EXHAUSTIVE_RANK:
        raise TooLargeForExhaustive(f"Exhaustive membership supports rank <= {MAX_EXHAUSTIVE_RANK}")
    if not 1 <= length <= MAX_EXHAUSTIVE_LENGTH:
        raise TooLargeForExhaustive(
            f"Exhaustive membership supports 1 to {MAX_EXHAUSTIVE_LENGTH} blocks"
        )
    if g.ring.q ** len(system.positive_roots) > MAX_UNIPOTENT_ORDER:
        raise TooLargeForExhaustive(f"U+ of {system.label} over {g.ring} is too large")
    return product_set_table(g.rep, g.ring, length, first_sign).lookup(g)


# rank reduction


def _rank_two_source(system: RootSystem, i: int, j: int) -> list[tuple[RootSystem, tuple]]:
    """Candidate sources for the Levi subsystem on simple roots ``i, j``."""
    bond = int(system.cartan[i, j]) * int(system.cartan[j, i])
    match bond:
        case 1:
            return [(build_root_system("A", 2), (i, j))]
        case 2:
            return [
                (build_root_system(label, 2), order)
                for label in ("C", "B")
                for order in ((i, j), (j, i))
            ]
        case _:
            return [(build_root_system("G", 2), order) for order in ((i, j), (j, i))]


def _levi_embedding(source: RootSystem, target: RootSystem, indices: tuple) -> SystemEmbedding:
    return embedding(EmbeddingKind.LEVI_SUBSYSTEM, target=target, indices=indices, source=source)


def default_subsystems(
    system: RootSystem, labels: list[str] | None = None
) -> list[SystemEmbedding]:
    """Rank-two Levi subsystems on adjacent simple roots, taken in order
    while they cover a new simple root. With ``labels`` (such as
    ``["A2", "A2"]``) the subsystems are the first covering candidates of
    those types. Systems of rank at most two are their own subsystem.

    :raises: CoverageGap, NoSuchEmbedding
    """
    if system.rank <= 2:
        return [_levi_embedding(system, system, tuple(range(system.rank)))]
    candidates = []
    for i, j in itertools.combinations(range(system.rank), 2):
        if system.cartan[i, j] == 0:
            continue
        for source, indices in _rank_two_source(system, i, j):
            try:
                candidates.append(_levi_embedding(source, system, indices))
                break
            except NoSuchEmbedding:
                continue
    wanted = list(labels) if labels else None
    chosen: list[SystemEmbedding] = []
    covered: set[int] = set()
    for candidate in candidates:
        if wanted is not None and (not wanted or candidate.source.label != wanted[0]):
            continue
        nodes = set(candidate.levi_indices())
        if nodes <= covered:
            continue
        chosen.append(candidate)
        covered |= nodes
        if wanted is not None:
            wanted.pop(0)
    if wanted:
        raise NoSuchEmbedding(f"No further Levi subsystems of type {', '.join(wanted)}")
    return chosen


@dataclass(frozen=True, kw_only=True)
class LiftReport:
    """Outcome of an exhaustive lift."""

    system: str
    ring: str
    length: int
    subsystems: list[str]
    elements: int
    verified: int

    @property
    def passed(self) -> bool:
        return self.elements == self.verified

    def to_dict(self) -> dict:
        return {
            "system": self.system,
            "ring": self.ring,
            "length": self.length,
            "subsystems": self.subsystems,
            "elements": self.elements,
            "verified": self.verified,
            "passed": self.passed,
        }


class TavgenLift:
    """
    Unitriangular forms of length ``length`` in ``rep`` from product-set
    oracles for standard Levi subsystems.

    :param subsystems: Levi subsystem embeddings into ``rep.system`` whose
        union contains every simple root (default :func:`default_subsystems`)
    :raises: CoverageGap, NoSuchEmbedding, UnsupportedRing
    """

    def __init__(
        self,
        rep: Representation,
        ring: RingDescriptor,
        subsystems: list[SystemEmbedding] | None = None,
        length: int = 4,
        first_sign: int = 1,
        disable_progress: bool = True,
    ):
        _check_finite(ring)
        system = rep.system
        self.rep = rep
        self.ring = ring
        self.length = length
        self.first_sign = first_sign
        self.signs = block_signs(length, first_sign)
        self.subsystems = subsystems if subsystems is not None else default_subsystems(system)
        self.indices: list[tuple[int, ...]] = []
        for sub in self.subsystems:
            if sub.target is not system:
                raise NoSuchEmbedding(f"{sub.kind} does not embed into {system.label}")
            indices = sub.levi_indices()
            if indices is None:
                raise NoSuchEmbedding(f"Image of {sub.source.label} is not a standard Levi subsystem")
            self.indices.append(indices)
        covered = set(itertools.chain.from_iterable(self.indices))
        missing = [i for i in range(system.rank) if i not in covered]
        if missing:
            raise CoverageGap(
                f"Simple roots {', '.join(str(system.simple_roots[i]) for i in missing)} "
                "are not covered by any subsystem"
            )
        self._image_roots = [set(sub.image()) for sub in self.subsystems]
        self.oracles = [
            ProductSetTable(
                rep, ring, length, first_sign, sorted(roots, key=system.order_key), disable_progress
            )
            for roots in self._image_roots
        ]

    def __repr__(self) -> str:
        labels = ",".join(sub.source.label for sub in self.subsystems)
        return f"<TavgenLift {self.rep.system.label} over {self.ring} from {labels}>"

    def identity_blocks(self) -> tuple[GroupElement, ...]:
        return (self.rep.identity(self.ring),) * self.length

    def _subsystem_for(self, root: Root) -> int:
        for index, roots in enumerate(self._image_roots):
            if root in roots:
                return index
        raise CoverageGap(f"{root} lies in no subsystem")

    def extend(
        self, blocks: tuple[GroupElement, ...], letter: Letter
    ) -> tuple[GroupElement, ...]:
        """Blocks of ``x_root(r) g`` from blocks of ``g``, for a root in one
        of the subsystems.

        :raises: CoverageGap, VerificationFailure
        """
        root, param = letter
        index = self._subsystem_for(root)
        indices = self.indices[index]
        identity = self.rep.identity(self.ring)
        size = self.length

        levi = [self.rep.levi_part(y, indices) for y in blocks]
        levi_inverse = [a.inverse() for a in levi]
        radical = [a_inv * y for a_inv, y in zip(levi_inverse, blocks)]
        # suffix[k] = a_k ... a_(N-1)
        suffix = [identity] * (size + 1)
        suffix_inverse = [identity] * (size + 1)
        for k in range(size - 1, -1, -1):
            suffix[k] = levi[k] * suffix[k + 1]
            suffix_inverse[k] = suffix_inverse[k + 1] * levi_inverse[k]
        moved = [
            suffix_inverse[k + 1] * radical[k] * suffix[k + 1] for k in range(size)
        ]

        head = self.rep.elementary(root, param) * suffix[0]
        new_levi = self.oracles[index].lookup_elements(head)
        if new_levi is None:
            raise VerificationFailure(
                f"{self.subsystems[index].source.label} oracle has no form of length {size}"
            )
        new_suffix = identity
        new_blocks = [identity] * size
        for k in range(size - 1, -1, -1):
            # new_suffix is a'_(k+1) ... a'_(N-1)
            twisted = new_suffix * moved[k] * new_suffix.inverse()
            new_blocks[k] = new_levi[k] * twisted
            new_suffix = new_levi[k] * new_suffix
        return tuple(new_blocks)

    def _product(self, blocks: tuple[GroupElement, ...]) -> GroupElement:
        product = self.rep.identity(self.ring)
        for y in blocks:
            product = product * y
        return product

    def lift_word(self, word: SteinbergWord) -> tuple[GroupElement, ...]:
        """Blocks of the evaluation of ``word``, letter by letter from the
        right. Letters outside every subsystem are first rewritten as
        commutators of covered letters."""
        if word.system is not self.rep.system:
            raise RepMismatch(f"Word over {word.system.label} cannot be lifted in {self.rep}")
        blocks = self.identity_blocks()
        for letter in reversed(self.covered_letters(word)):
            blocks = self.extend(blocks, letter)
        return blocks

    def covered_letters(self, word: SteinbergWord) -> list[Letter]:
        letters: list[Letter] = []
        for letter in word.letters:
            letters.extend(self._rewrite(letter))
        return letters

    def _rewrite(self, letter: Letter) -> list[Letter]:
        root, param = letter
        if any(root in roots for roots in self._image_roots):
            return [letter]
        system = self.rep.system
        if not system.is_simply_laced:
            raise CoverageGap(f"{root} lies in no subsystem of {system.label}")
        # x_g(c) = [x_a(N c), x_b(1)] with g = a + b and a simple
        sign = 1 if root.is_positive else -1
        for simple in system.simple_roots:
            alpha = simple if sign > 0 else -simple
            beta = system.combination(1, root, -1, alpha)
            if beta is None:
                continue
            [(_, _, constant)] = commutator_coefficients(build_chevalley_basis(system), alpha, beta)
            one = param.ring.one
            a = param * constant
            return (
                self._rewrite((alpha, a))
                + self._rewrite((beta, one))
                + self._rewrite((alpha, -a))
                + self._rewrite((beta, -one))
            )
        raise CoverageGap(f"{root} lies in no subsystem of {system.label}")  # pragma: no cover

    def __call__(self, target: GroupElement | SteinbergWord) -> UnitriangularForm:
        """Lift a word, or a matrix of a standard SL representation, to a
        verified form.

        :raises: CoverageGap, RepMismatch, VerificationFailure
        """
        if isinstance(target, GroupElement):
            if target.rep != self.rep:
                raise RepMismatch(f"Element of {target.rep} cannot be lifted in {self.rep}")
            if self.rep.kind != RepKind.STANDARD_SL:
                raise RepMismatch("Matrices can only be lifted in a standard SL representation")
            word = factor_sln(target).word
            element = target
        else:
            word = target
            element = word_eval(word, self.rep)
        blocks = self.lift_word(word)
        if self._product(blocks) != element:
            raise VerificationFailure("Lifted blocks do not multiply to the target")
        words = tuple(unipotent_word(y, sign) for y, sign in zip(blocks, self.signs))
        return UnitriangularForm(
            rep=self.rep, target=element, blocks=words, first_sign=self.first_sign
        ).verify()

    def exhaustive(self, disable_progress: bool = True) -> LiftReport:
        """Lift every element of the elementary group by breadth-first
        search over the simple root elements and their negatives, checking
        each new form by multiplication.

        :raises: VerificationFailure
        """
        system = self.rep.system
        generators = [
            (root, c)
            for simple in system.simple_roots
            for root in (simple, -simple)
            for c in self.ring.units()
        ]
        identity = self.rep.identity(self.ring)
        seen = {identity.key()}
        frontier = [(identity, self.identity_blocks())]
        verified = 1
        progress = tqdm(desc=f"Lift {system.label} over {self.ring}", disable=disable_progress)
        while frontier:
            following = []
            for g, blocks in frontier:
                for root, c in generators:
                    h = self.rep.elementary(root, c) * g
                    key = h.key()
                    if key in seen:
                        continue
                    seen.add(key)
                    new_blocks = self.extend(blocks, (root, c))
                    if self._product(new_blocks) != h:
                        raise VerificationFailure(f"Lifted form of a {system.label} element failed")
                    verified += 1
                    following.append((h, new_blocks))
                    progress.update()
            frontier = following
        progress.close()
        logger.info(f"Lifted {len(seen)} elements of {system.label} over {self.ring}")
        return LiftReport(
            system=system.label,
            ring=str(self.ring),
            length=self.length,
            subsystems=[sub.source.label for sub in self.subsystems],
            elements=len(seen),
            verified=verified,
        )


def tavgen_lift(
    system: RootSystem,
    ring: RingDescriptor,
    subsystems: list[SystemEmbedding] | None = None,
    length: int = 4,
    first_sign: int = 1,
    disable_progress: bool = True,
) -> TavgenLift:
    """Lift procedure for ``system`` in its default representation."""
    return TavgenLift(
        default_representation(system), ring, subsystems, length, first_sign, disable_progress
    )


def random_element_of(lift: TavgenLift, rng, length: int = 20) -> SteinbergWord:
    """Random word in the simple root elements and their negatives."""
    system = lift.rep.system
    roots = [r for simple in system.simple_roots for r in (simple, -simple)]
    units: list[RingElement] = lift.ring.units()
    letters = tuple((rng.choice(roots), rng.choice(units)) for _ in range(length))
    return SteinbergWord(system, lift.ring, letters)
