"""Permutation groups: stabilizer chains, subgroup constructions, invariants.

Permutations act on the points ``0..degree-1`` and compose left to right, so
``(p * q)(x) == q(p(x))``; this matches the right action of words on cosets.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np
from sympy import factorint, multiplicity

from .errors import ElementLimitError, GroupStructureError, MembershipError
from .presentation import Presentation
from .words import Word

logger = logging.getLogger(__name__)

DEFAULT_ELEMENT_LIMIT = 20_000
# Transversal elements cached per level, counted in stored image entries.
TRANSVERSAL_CACHE_BUDGET = 1 << 24


class Permutation:
    """Immutable permutation of ``0..degree-1`` backed by a numpy array."""

    __slots__ = ("_hash", "_images")

    def __init__(self, images: Iterable[int] | np.ndarray) -> None:
        source = images if isinstance(images, np.ndarray) else list(images)
        array = np.array(source, dtype=np.intp)
        if array.ndim != 1:
            raise ValueError("permutation images must be one-dimensional")
        if not np.array_equal(np.sort(array), np.arange(array.size)):
            raise ValueError(
                f"not a permutation of 0..{array.size - 1}: {array.tolist()}"
            )
        array.setflags(write=False)
        self._images = array
        self._hash: int | None = None

    @classmethod
    def _trusted(cls, array: np.ndarray) -> Permutation:
        perm = cls.__new__(cls)
        array.setflags(write=False)
        perm._images = array
        perm._hash = None
        return perm

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls._trusted(np.arange(degree, dtype=np.intp))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        """Build a permutation from disjoint cycles, e.g. ``[(0, 1, 2)]``."""

        images = list(range(degree))
        seen: set[int] = set()
        for cycle in cycles:
            for point in cycle:
                if point in seen or not 0 <= point < degree:
                    raise ValueError(
                        f"invalid cycle {tuple(cycle)} for degree {degree}"
                    )
                seen.add(point)
            for a, b in zip(cycle, [*cycle[1:], *cycle[:1]]):
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return int(self._images.size)

    @property
    def images(self) -> np.ndarray:
        return self._images

    def __call__(self, point: int) -> int:
        return int(self._images[point])

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise ValueError("cannot compose permutations of different degrees")
        return Permutation._trusted(other._images[self._images])

    def __invert__(self) -> Permutation:
        inverse = np.empty_like(self._images)
        inverse[self._images] = np.arange(self._images.size, dtype=np.intp)
        return Permutation._trusted(inverse)

    def __pow__(self, exponent: int) -> Permutation:
        base = self if exponent >= 0 else ~self
        exponent = abs(exponent)
        result = Permutation.identity(self.degree)
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.degree == other.degree and bool(
            np.array_equal(self._images, other._images)
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._images.tobytes())
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_notation()}, degree={self.degree})"

    def key(self) -> bytes:
        return self._images.tobytes()

    def is_identity(self) -> bool:
        return bool(np.array_equal(self._images, np.arange(self._images.size)))

    def smallest_moved_point(self) -> int | None:
        moved = np.flatnonzero(self._images != np.arange(self._images.size))
        return int(moved[0]) if moved.size else None

    def order(self) -> int:
        """Least ``k >= 1`` with ``self ** k`` the identity."""

        images = self._images
        points = np.arange(images.size)
        lengths = np.ones(images.size, dtype=np.int64)
        unresolved = images != points
        current = images
        step = 1
        while unresolved.any():
            current = images[current]
            step += 1
            hit = unresolved & (current == points)
            lengths[hit] = step
            unresolved &= ~hit
        return math.lcm(*np.unique(lengths).tolist())

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""

        images = self._images.tolist()
        seen = [False] * len(images)
        result: list[tuple[int, ...]] = []
        for start, image in enumerate(images):
            if seen[start] or image == start:
                continue
            cycle = [start]
            seen[start] = True
            point = image
            while point != start:
                seen[point] = True
                cycle.append(point)
                point = images[point]
            result.append(tuple(cycle))
        return result

    def cycle_notation(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, cycle)) + ")" for cycle in cycles)


def commutator(x: Permutation, y: Permutation) -> Permutation:
    """Return ``[x, y] = x^-1 y^-1 x y``."""

    return ~x * ~y * x * y


def conjugate(x: Permutation, t: Permutation) -> Permutation:
    """Return ``x^t = t^-1 x t``."""

    return ~t * x * t


# ---------------------------------------------------------------------------
# Stabilizer chains
# ---------------------------------------------------------------------------


@dataclass(slots=True)
class _Level:
    base: int
    generators: list[Permutation] = field(default_factory=lambda: [])
    # orbit point -> (parent point, generator index); the base maps to (-1, -1)
    tree: dict[int, tuple[int, int]] = field(default_factory=lambda: {})
    cache: dict[int, Permutation] = field(default_factory=lambda: {})
    checked: set[tuple[int, int]] = field(default_factory=lambda: set())


class StabilizerChain:
    """Base and strong generating set built by deterministic Schreier-Sims.

    Base points are the smallest points moved by the generator that forces a
    new level. A chain for a group known to act semiregularly (every subgroup
    of a regular representation does) has a single level: point stabilizers
    are trivial, so no Schreier generators need sifting.
    """

    def __init__(
        self,
        degree: int,
        generators: Iterable[Permutation] = (),
        *,
        semiregular: bool = False,
    ) -> None:
        self.degree = degree
        self.semiregular = semiregular
        self.levels: list[_Level] = []
        self._identity = Permutation.identity(degree)
        for generator in generators:
            self.extend(generator)

    # -- orbits and transversals -------------------------------------------

    def _extend_orbit(self, level: _Level) -> None:
        """Grow the Schreier tree; points already in it keep their parents."""

        if not level.tree:
            level.tree = {level.base: (-1, -1)}
            level.cache = {level.base: self._identity}
        image_lists = [g.images.tolist() for g in level.generators]
        tree = level.tree
        frontier = list(tree)
        while frontier:
            next_frontier: list[int] = []
            for point in frontier:
                for index, images in enumerate(image_lists):
                    image = images[point]
                    if image not in tree:
                        tree[image] = (point, index)
                        next_frontier.append(image)
            frontier = next_frontier

    def representative(self, level: _Level, point: int) -> Permutation:
        """Transversal element mapping the level's base point to ``point``."""

        path: list[int] = []
        cursor = point
        while cursor not in level.cache:
            parent, index = level.tree[cursor]
            path.append(index)
            cursor = parent
        rep = level.cache[cursor]
        budget = TRANSVERSAL_CACHE_BUDGET // max(self.degree, 1)
        walk = cursor
        for index in reversed(path):
            generator = level.generators[index]
            rep = rep * generator
            walk = generator(walk)
            if len(level.cache) < budget:
                level.cache[walk] = rep
        return rep

    def _transversal(self, level: _Level) -> Iterator[Permutation]:
        children: dict[int, list[tuple[int, int]]] = {}
        for point, (parent, index) in level.tree.items():
            if parent >= 0:
                children.setdefault(parent, []).append((point, index))
        stack: list[tuple[int, Permutation]] = [(level.base, self._identity)]
        while stack:
            point, rep = stack.pop()
            yield rep
            for child, index in reversed(children.get(point, [])):
                stack.append((child, rep * level.generators[index]))

    # -- sifting -------------------------------------------------------------

    def strip(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        """Sift ``g`` through the levels from ``start``.

        Returns the residue and the index of the level where sifting stopped,
        ``len(levels)`` when every level was passed.
        """

        residue = g
        for index in range(start, len(self.levels)):
            level = self.levels[index]
            image = residue(level.base)
            if image not in level.tree:
                return residue, index
            residue = residue * ~self.representative(level, image)
        return residue, len(self.levels)

    def contains(self, g: Permutation) -> bool:
        residue, stopped = self.strip(g)
        return stopped == len(self.levels) and residue.is_identity()

    # -- construction --------------------------------------------------------

    def _add(self, g: Permutation, lo: int, hi: int) -> None:
        if hi == len(self.levels):
            base = g.smallest_moved_point()
            if base is None:
                raise GroupStructureError(
                    reason="cannot add the identity as a strong generator"
                )
            self.levels.append(_Level(base=base))
        for index in range(lo, hi + 1):
            level = self.levels[index]
            level.generators.append(g)
            self._extend_orbit(level)

    def extend(self, g: Permutation) -> bool:
        """Add ``g`` to the group; return whether the group grew."""

        if g.degree != self.degree:
            raise MembershipError(
                reason=(
                    f"permutation of degree {g.degree} "
                    f"in a group of degree {self.degree}"
                )
            )
        residue, stopped = self.strip(g)
        if stopped == len(self.levels) and residue.is_identity():
            return False
        if self.semiregular:
            self._add(g, 0, 0)
            return True
        self._add(residue, 0, stopped)
        self._complete(stopped)
        return True

    def _schreier_violation(self, index: int) -> tuple[Permutation, int] | None:
        level = self.levels[index]
        for point in list(level.tree):
            for gen_index, generator in enumerate(level.generators):
                if (point, gen_index) in level.checked:
                    continue
                level.checked.add((point, gen_index))
                image = generator(point)
                if level.tree.get(image) == (point, gen_index):
                    continue
                schreier = (
                    self.representative(level, point)
                    * generator
                    * ~self.representative(level, image)
                )
                residue, stopped = self.strip(schreier, index + 1)
                if stopped < len(self.levels) or not residue.is_identity():
                    return residue, stopped
        return None

    def _complete(self, start: int) -> None:
        index = start
        while index >= 0:
            violation = self._schreier_violation(index)
            if violation is None:
                index -= 1
                continue
            residue, stopped = violation
            self._add(residue, index + 1, stopped)
            index = stopped

    # -- queries -------------------------------------------------------------

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(level.base for level in self.levels)

    def orbit_sizes(self) -> tuple[int, ...]:
        return tuple(len(level.tree) for level in self.levels)

    def order(self) -> int:
        return math.prod(self.orbit_sizes())

    def strong_generators(self) -> list[Permutation]:
        return list(self.levels[0].generators) if self.levels else []

    def iter_elements(self, start: int = 0) -> Iterator[Permutation]:
        if start == len(self.levels):
            yield self._identity
            return
        for rep in self._transversal(self.levels[start]):
            for lower in self.iter_elements(start + 1):
                yield lower * rep


# ---------------------------------------------------------------------------
# Groups
# ---------------------------------------------------------------------------


def _distinct_nontrivial(generators: Iterable[Permutation]) -> tuple[Permutation, ...]:
    seen: set[Permutation] = set()
    kept: list[Permutation] = []
    for generator in generators:
        if generator.is_identity() or generator in seen:
            continue
        seen.add(generator)
        kept.append(generator)
    return tuple(kept)


class PermGroup:
    """Permutation group given by generators, with a lazily built chain."""

    def __init__(
        self,
        degree: int,
        generators: Iterable[Permutation] = (),
        *,
        semiregular: bool = False,
    ) -> None:
        gens = tuple(generators)
        for generator in gens:
            if generator.degree != degree:
                raise MembershipError(
                    reason=(
                        f"generator of degree {generator.degree} "
                        f"in a group of degree {degree}"
                    ),
                    details={"degree": degree},
                )
        self.degree = degree
        self.generators = _distinct_nontrivial(gens)
        self.semiregular = semiregular
        self._chain: StabilizerChain | None = None

    @classmethod
    def _from_chain(
        cls, chain: StabilizerChain, generators: Sequence[Permutation]
    ) -> PermGroup:
        group = cls(chain.degree, generators, semiregular=chain.semiregular)
        group._chain = chain
        return group

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(
                self.degree, self.generators, semiregular=self.semiregular
            )
            logger.debug(
                "stabilizer chain: degree %d, base %s, orbits %s",
                self.degree,
                self._chain.base,
                self._chain.orbit_sizes(),
            )
        return self._chain

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def order(self) -> int:
        return self.chain.order()

    def is_trivial(self) -> bool:
        return not self.generators

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise MembershipError(
                reason=(
                    f"permutation of degree {p.degree} tested against "
                    f"a group of degree {self.degree}"
                ),
                details={"degree": self.degree, "element_degree": p.degree},
            )
        return self.chain.contains(p)

    def __contains__(self, p: object) -> bool:
        return isinstance(p, Permutation) and self.contains(p)

    def _check_limit(self, limit: int) -> None:
        order = self.order()
        if order > limit:
            raise ElementLimitError(limit=limit, order=order)

    def iter_elements(self) -> Iterator[Permutation]:
        return self.chain.iter_elements()

    def elements(self, limit: int = DEFAULT_ELEMENT_LIMIT) -> list[Permutation]:
        self._check_limit(limit)
        return list(self.iter_elements())

    def exponent(self, limit: int = DEFAULT_ELEMENT_LIMIT) -> int:
        self._check_limit(limit)
        result = 1
        for element in self.iter_elements():
            result = math.lcm(result, element.order())
        return result

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(
            (gens[i] * gens[j]) == (gens[j] * gens[i])
            for i in range(len(gens))
            for j in range(i + 1, len(gens))
        )

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return self.degree == other.degree and all(
            other.contains(g) for g in self.generators
        )

    def equals(self, other: PermGroup) -> bool:
        return self.order() == other.order() and self.is_subgroup_of(other)

    def is_normal_in(self, ambient: PermGroup) -> bool:
        """Whether conjugating by ambient generators keeps every generator inside."""

        return all(
            self.contains(conjugate(g, t))
            for g in self.generators
            for t in ambient.generators
        )

    def element_order(self, p: Permutation) -> int:
        if not self.contains(p):
            raise MembershipError(reason="element is not in the group")
        return p.order()


# ---------------------------------------------------------------------------
# Module-level operations
# ---------------------------------------------------------------------------


def order(group: PermGroup) -> int:
    return group.order()


def contains(group: PermGroup, p: Permutation) -> bool:
    return group.contains(p)


def elements(group: PermGroup, limit: int = DEFAULT_ELEMENT_LIMIT) -> list[Permutation]:
    return group.elements(limit)


def exponent(group: PermGroup, limit: int = DEFAULT_ELEMENT_LIMIT) -> int:
    return group.exponent(limit)


def element_order(group: PermGroup, p: Permutation) -> int:
    return group.element_order(p)


def subgroup_closure(
    degree: int, gens: Iterable[Permutation], *, semiregular: bool = False
) -> PermGroup:
    """The group generated by ``gens``."""

    return PermGroup(degree, gens, semiregular=semiregular)


def _closure_under_conjugation(
    degree: int,
    seeds: Iterable[Permutation],
    conjugators: Sequence[Permutation],
    *,
    semiregular: bool,
) -> PermGroup:
    chain = StabilizerChain(degree, semiregular=semiregular)
    generators: list[Permutation] = []
    queue: list[Permutation] = []
    for seed in seeds:
        if chain.extend(seed):
            generators.append(seed)
            queue.append(seed)
    while queue:
        current = queue.pop()
        for t in conjugators:
            image = conjugate(current, t)
            if chain.extend(image):
                generators.append(image)
                queue.append(image)
    return PermGroup._from_chain(chain, generators)


def normal_closure(ambient: PermGroup, seeds: Iterable[Permutation]) -> PermGroup:
    """Smallest normal subgroup of ``ambient`` containing ``seeds``."""

    seeds = list(seeds)
    for seed in seeds:
        if not ambient.contains(seed):
            raise MembershipError(
                reason="normal closure seed is not in the ambient group"
            )
    return _closure_under_conjugation(
        ambient.degree, seeds, ambient.generators, semiregular=ambient.semiregular
    )


def join(a: PermGroup, b: PermGroup) -> PermGroup:
    return PermGroup(
        a.degree,
        (*a.generators, *b.generators),
        semiregular=a.semiregular or b.semiregular,
    )


def commutator_subgroup(a: PermGroup, b: PermGroup, ambient: PermGroup) -> PermGroup:
    """``[a, b]``: the normal closure in ``<a, b>`` of the generator commutators."""

    for part in (a, b):
        if not part.is_subgroup_of(ambient):
            raise MembershipError(
                reason="commutator subgroup factor is not in the ambient group"
            )
    seeds = [commutator(x, y) for x in a.generators for y in b.generators]
    joined = join(a, b)
    return _closure_under_conjugation(
        ambient.degree,
        seeds,
        joined.generators,
        semiregular=ambient.semiregular or joined.semiregular,
    )


def intersection(
    a: PermGroup, b: PermGroup, limit: int = DEFAULT_ELEMENT_LIMIT
) -> PermGroup:
    """``a ∩ b`` by filtering the elements of the smaller group."""

    if a.degree != b.degree:
        raise MembershipError(reason="cannot intersect groups of different degrees")
    small, large = (a, b) if a.order() <= b.order() else (b, a)
    small._check_limit(limit)
    chain = StabilizerChain(a.degree, semiregular=a.semiregular or b.semiregular)
    generators = [
        element
        for element in small.iter_elements()
        if large.contains(element) and chain.extend(element)
    ]
    return PermGroup._from_chain(chain, generators)


def _primary_from_counts(
    order: int, counts: Callable[[int, int], int]
) -> tuple[int, ...]:
    """Invariants of a finite abelian group from its p-power torsion counts.

    ``counts(p, k)`` is the number of elements whose order divides ``p**k``.
    """

    invariants: list[int] = []
    for p, top in sorted(factorint(order).items()):
        p, top = int(p), int(top)
        ranks = [0]
        k = 0
        while ranks[-1] < top:
            k += 1
            ranks.append(int(multiplicity(p, counts(p, k))))
        # factors of order at least p**k number ranks[k] - ranks[k-1]
        at_least = [ranks[i] - ranks[i - 1] for i in range(1, len(ranks))] + [0]
        for i in range(len(at_least) - 1):
            invariants.extend([p ** (i + 1)] * (at_least[i] - at_least[i + 1]))
    return tuple(sorted(invariants))


def abelian_invariants(
    group: PermGroup, limit: int = DEFAULT_ELEMENT_LIMIT
) -> tuple[int, ...]:
    """Prime-power invariants of an abelian group, ascending."""

    if not group.is_abelian():
        raise GroupStructureError(reason="abelian invariants need an abelian group")
    elems = group.elements(limit)

    def counts(p: int, k: int) -> int:
        return sum(1 for x in elems if (x ** (p**k)).is_identity())

    return _primary_from_counts(len(elems), counts)


def _counted_quotient(
    group: PermGroup, normal: PermGroup, limit: int
) -> tuple[int, ...]:
    elems = group.elements(limit)
    normal_order = normal.order()

    def counts(p: int, k: int) -> int:
        return sum(1 for x in elems if normal.contains(x ** (p**k))) // normal_order

    return _primary_from_counts(len(elems) // normal_order, counts)


def quotient_abelian_invariants(
    w: PermGroup, r: PermGroup, limit: int = DEFAULT_ELEMENT_LIMIT
) -> tuple[int, ...]:
    """Invariants of ``w / r`` for abelian ``w`` containing ``r``."""

    if not r.is_subgroup_of(w):
        raise MembershipError(reason="quotient subgroup is not contained in the group")
    if not w.is_abelian():
        raise GroupStructureError(reason="quotient invariants need an abelian group")
    return _counted_quotient(w, r, limit)


def factor_group_invariants(
    group: PermGroup, normal: PermGroup, limit: int = DEFAULT_ELEMENT_LIMIT
) -> tuple[int, ...]:
    """Invariants of ``group / normal`` when that factor group is abelian."""

    if not normal.is_subgroup_of(group):
        raise MembershipError(reason="quotient subgroup is not contained in the group")
    gens = group.generators
    if not all(
        normal.contains(commutator(x, y)) for x in gens for y in gens
    ) or not normal.is_normal_in(group):
        raise GroupStructureError(reason="factor group is not abelian")
    return _counted_quotient(group, normal, limit)


def evaluate_word(
    word: Word, images: Sequence[Permutation], degree: int | None = None
) -> Permutation:
    """Evaluate ``word`` with generator ``i`` sent to ``images[i - 1]``."""

    if degree is None:
        if not images:
            raise GroupStructureError(reason="cannot infer a degree from no images")
        degree = images[0].degree
    result = Permutation.identity(degree)
    inverses: dict[int, Permutation] = {}
    for letter in word:
        index = abs(letter) - 1
        if letter > 0:
            result = result * images[index]
        else:
            if index not in inverses:
                inverses[index] = ~images[index]
            result = result * inverses[index]
    return result


@dataclass(frozen=True, slots=True)
class HomomorphismImage:
    """Image of a presentation under a generator assignment."""

    image: PermGroup
    verified: bool
    failed_relators: tuple[int, ...] = ()

    def __iter__(self) -> Iterator[object]:
        yield self.image
        yield self.verified


def verified_hom(
    src: Presentation, images: Sequence[Permutation], target_degree: int
) -> HomomorphismImage:
    """Check that ``images`` satisfy every relator of ``src``."""

    if len(images) != src.rank:
        raise GroupStructureError(
            reason=(
                f"{src.name} has {src.rank} generators "
                f"but {len(images)} images were given"
            )
        )
    for image in images:
        if image.degree != target_degree:
            raise GroupStructureError(
                reason=f"image of degree {image.degree}, expected {target_degree}"
            )
    failed = tuple(
        index
        for index, relator in enumerate(src.relators)
        if not evaluate_word(relator, images, target_degree).is_identity()
    )
    return HomomorphismImage(
        image=PermGroup(target_degree, images),
        verified=not failed,
        failed_relators=failed,
    )


def direct_product_permutation(parts: Sequence[Permutation]) -> Permutation:
    """``(p1, ..., pk)`` acting on the disjoint union of the factors' points."""

    offset = 0
    blocks: list[np.ndarray] = []
    for part in parts:
        blocks.append(part.images + offset)
        offset += part.degree
    if not blocks:
        return Permutation.identity(0)
    return Permutation._trusted(np.concatenate(blocks))
