"""Presentations of the weak commutativity group chi(G) and of nu(G).

Both constructions double the alphabet of a presentation of ``G``: letters
``1..r`` spell elements of ``G`` and letters ``r+1..2r`` those of the copy
``G^phi``. Relations quantified over every element of ``G`` are spelled with
one representative word per element, taken from the breadth-first Schreier
words of ``G``'s own regular enumeration.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

from .cosets import (
    DEFAULT_MAX_COSETS,
    CosetTable,
    Strategy,
    enumerate_cosets,
    schreier_words,
    trace_word,
)
from .errors import ElementMapError, GroupStructureError
from .presentation import Presentation
from .words import Word, commutator, concat, conjugate, cyclic_key, invert, shift

logger = logging.getLogger(__name__)

PHI_SUFFIX = "_f"


class Kind(str, Enum):
    CHI = "chi"
    NU = "nu"


class RelatorScope(str, Enum):
    """Which elements the defining relations are quantified over."""

    ELEMENTS = "elements"
    GENERATORS = "generators"


@dataclass(frozen=True, slots=True)
class ElementWords:
    """One representative word per element of a finite group.

    ``words[c]`` spells the element sending the subgroup coset to coset ``c``
    of ``table``; ``words[0]`` is the empty word.
    """

    words: tuple[Word, ...]
    order: int
    table: CosetTable | None = None

    def validate(self, base: Presentation) -> None:
        if len(self.words) != self.order:
            raise ElementMapError(
                reason=(
                    f"element map for {base.name} has {len(self.words)} words, "
                    f"expected {self.order}"
                ),
                details={"words": len(self.words), "order": self.order},
            )
        if self.table is None:
            return
        reached = {trace_word(self.table, 0, word) for word in self.words}
        if len(reached) != self.order:
            raise ElementMapError(
                reason=f"element words for {base.name} do not reach every element",
                details={"distinct": len(reached), "order": self.order},
            )

    @property
    def nonempty(self) -> tuple[Word, ...]:
        return tuple(word for word in self.words if word)


def element_words(
    base: Presentation,
    max_cosets: int = DEFAULT_MAX_COSETS,
    strategy: Strategy | str = Strategy.HLT,
) -> ElementWords:
    """Enumerate ``base`` over the trivial subgroup and name every element."""

    table = enumerate_cosets(base, max_cosets=max_cosets, strategy=strategy)
    words = schreier_words(table)
    return ElementWords(
        words=tuple(words[coset] for coset in range(table.live_count)),
        order=table.live_count,
        table=table,
    )


@dataclass(frozen=True, slots=True)
class DoubledPresentation:
    """A presentation over ``G`` and ``G^phi`` together with its provenance."""

    base: Presentation
    doubled: Presentation
    element_words: ElementWords
    kind: Kind
    scope: RelatorScope = RelatorScope.ELEMENTS

    @property
    def rank(self) -> int:
        return self.base.rank

    def phi(self, word: Word) -> Word:
        return phi(word, self.base.rank)


def phi(word: Word, rank: int) -> Word:
    """Image of a ``G``-word in the copy ``G^phi``."""

    return shift(word, rank)


def swap_blocks(word: Word, rank: int) -> Word:
    """Exchange the ``G`` and ``G^phi`` letters of a doubled word."""

    return Word(
        tuple(
            (abs(letter) + rank if abs(letter) <= rank else abs(letter) - rank)
            * (1 if letter > 0 else -1)
            for letter in word
        )
    )


def _doubled_names(base: Presentation) -> tuple[str, ...]:
    return base.gen_names + tuple(name + PHI_SUFFIX for name in base.gen_names)


def _copy_relators(base: Presentation) -> list[Word]:
    return [*base.relators, *(phi(r, base.rank) for r in base.relators)]


def _scope_words(
    base: Presentation, words: ElementWords, scope: RelatorScope
) -> tuple[Word, ...]:
    if scope is RelatorScope.ELEMENTS:
        return words.nonempty
    return tuple(Word.generator(i) for i in range(1, base.rank + 1))


def build_chi(
    base: Presentation,
    element_words: ElementWords,
    scope: RelatorScope | str = RelatorScope.ELEMENTS,
) -> DoubledPresentation:
    """Presentation of the weak commutativity group of ``base``.

    With the default element scope the relator list is the relators of
    ``G``, their phi-copies and ``[w, w^phi]`` for every nonempty element
    word, in that order. The generator scope keeps only ``[x, x^phi]`` for the
    generators ``x`` and in general presents a larger group.
    """

    scope = RelatorScope(scope)
    element_words.validate(base)
    relators = _copy_relators(base)
    relators.extend(
        commutator(word, phi(word, base.rank))
        for word in _scope_words(base, element_words, scope)
    )
    doubled = Presentation(
        name=f"chi({base.name})",
        gen_names=_doubled_names(base),
        relators=tuple(relators),
    )
    logger.debug("built %s with %d relators", doubled.name, len(relators))
    return DoubledPresentation(base, doubled, element_words, Kind.CHI, scope)


def _nu_scope_words(
    base: Presentation, words: ElementWords, scope: RelatorScope
) -> tuple[Word, ...]:
    if scope is RelatorScope.ELEMENTS:
        return words.words
    gens = [Word.generator(i) for i in range(1, base.rank + 1)]
    return (Word(), *gens, *(invert(g) for g in gens))


def build_nu(
    base: Presentation,
    element_words: ElementWords,
    scope: RelatorScope | str = RelatorScope.ELEMENTS,
) -> DoubledPresentation:
    """Presentation of the tensor-square group ``nu(G)``.

    For every ordered triple ``(g1, g2, g3)`` in scope two relators say that
    conjugating ``[g1, g2^phi]`` by ``g3`` and by ``g3^phi`` both give
    ``[g1^g3, (g2^g3)^phi]``. The generator scope ranges over the generators,
    their inverses and the identity. Trivial and repeated relators are
    dropped, and so is any relator that is a cyclic rotation of an earlier
    one or of its inverse.
    """

    scope = RelatorScope(scope)
    element_words.validate(base)
    rank = base.rank
    words = _nu_scope_words(base, element_words, scope)

    relators: list[Word] = []
    seen: set[tuple[int, ...]] = set()

    def add(relator: Word) -> None:
        key = cyclic_key(relator)
        if key and key not in seen:
            seen.add(key)
            relators.append(relator)

    for relator in _copy_relators(base):
        add(relator)
    for g1 in words:
        for g2 in words:
            bracket = commutator(g1, phi(g2, rank))
            for g3 in words:
                target = invert(
                    commutator(conjugate(g1, g3), phi(conjugate(g2, g3), rank))
                )
                add(concat(conjugate(bracket, g3), target))
                add(concat(conjugate(bracket, phi(g3, rank)), target))

    doubled = Presentation(
        name=f"nu({base.name})",
        gen_names=_doubled_names(base),
        relators=tuple(relators),
    )
    logger.debug("built %s with %d relators", doubled.name, len(relators))
    return DoubledPresentation(base, doubled, element_words, Kind.NU, scope)


def delta_generators(d: DoubledPresentation) -> list[Word]:
    """The diagonal words ``[w, w^phi]`` generating ``Delta(G)`` inside nu."""

    if d.kind is not Kind.NU:
        raise GroupStructureError(
            reason=f"diagonal generators need a nu presentation, got {d.kind.value}"
        )
    return [commutator(word, d.phi(word)) for word in d.element_words.nonempty]

