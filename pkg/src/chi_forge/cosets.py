"""Todd-Coxeter coset enumeration.

The enumerator works on a table whose columns are indexed by letter: column
``2(i-1)`` holds the action of generator ``i`` and column ``2(i-1)+1`` that of
its inverse, so the inverse of column ``x`` is ``x ^ 1``. Coincidences are
resolved through a union-find over coset labels in which the smaller label
always survives; coset 0 (the subgroup coset) is therefore never lost.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import CosetOverflowError, IncompleteTableError
from .permutations import Permutation
from .presentation import Presentation
from .words import Word, check_rank, cyclic_key, cyclic_reduce, free_reduce

logger = logging.getLogger(__name__)

DEFAULT_MAX_COSETS = 1_000_000
UNDEFINED = -1


class Strategy(str, Enum):
    """Coset definition strategy."""

    HLT = "hlt"
    FELSCH = "felsch"


def letter_column(letter: int) -> int:
    return 2 * (abs(letter) - 1) + (0 if letter > 0 else 1)


def column_letter(column: int) -> int:
    generator = column // 2 + 1
    return generator if column % 2 == 0 else -generator


def _columns(word: Word) -> tuple[int, ...]:
    return tuple(letter_column(letter) for letter in word)


def _scan_words(relators: Iterable[Word]) -> list[tuple[int, ...]]:
    """Cyclically reduced relators, one per class of rotations and inverses."""

    seen: set[tuple[int, ...]] = set()
    words: list[tuple[int, ...]] = []
    for relator in relators:
        key = cyclic_key(relator)
        if key and key not in seen:
            seen.add(key)
            words.append(_columns(cyclic_reduce(relator)))
    return words


class CosetPartition:
    """Union-find over coset labels; the smallest label of a class is its root."""

    def __init__(self) -> None:
        self.parent: list[int] = []

    def add(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, coset: int) -> int:
        parent = self.parent
        root = coset
        while parent[root] != root:
            root = parent[root]
        while parent[coset] != root:
            parent[coset], coset = root, parent[coset]
        return root

    def union(self, a: int, b: int) -> int | None:
        """Merge the classes of ``a`` and ``b``; return the label that died."""

        a, b = self.find(a), self.find(b)
        if a == b:
            return None
        keep, lose = (a, b) if a < b else (b, a)
        self.parent[lose] = keep
        return lose

    def is_live(self, coset: int) -> bool:
        return self.parent[coset] == coset


@dataclass(frozen=True, slots=True)
class CosetTable:
    """Action of the generators and their inverses on a set of cosets."""

    n_alphabet: int
    rows: tuple[tuple[int | None, ...], ...]
    live_count: int
    complete: bool
    relators: tuple[Word, ...] = ()
    subgroup_gens: tuple[Word, ...] = ()
    strategy: Strategy = Strategy.HLT
    defined: int = 0
    closing_pass_changes: int = 0

    def entry(self, coset: int, letter: int) -> int | None:
        return self.rows[coset][letter_column(letter)]

    @property
    def over_trivial_subgroup(self) -> bool:
        return not any(free_reduce(w) for w in self.subgroup_gens)

    def is_compatible(self) -> bool:
        """Every defined entry ``c.x = d`` has the matching ``d.x^-1 = c``."""

        for coset, row in enumerate(self.rows):
            for column, image in enumerate(row):
                if image is not None and self.rows[image][column ^ 1] != coset:
                    return False
        return True

    def satisfies_relators(self) -> bool:
        """Every relator traces from every coset back to itself."""

        return all(
            trace_word(self, coset, relator) == coset
            for coset in range(self.live_count)
            for relator in self.relators
        )


class _Enumerator:
    """Mutable enumeration state; one instance per enumeration."""

    def __init__(
        self,
        n_alphabet: int,
        relators: Sequence[tuple[int, ...]],
        max_cosets: int,
        *,
        felsch: bool,
    ) -> None:
        self.width = 2 * n_alphabet
        self.relators = list(relators)
        self.max_cosets = max_cosets
        self.table: list[list[int]] = []
        self.partition = CosetPartition()
        self.deductions: list[tuple[int, int]] | None = [] if felsch else None
        # Table entries written plus cosets merged away.
        self.changes = 0
        self.closing_pass_changes = 0
        self._new_row()
        self.by_column: list[list[tuple[int, ...]]] = [[] for _ in range(self.width)]
        if felsch:
            self._index_cyclic_conjugates()

    def _index_cyclic_conjugates(self) -> None:
        seen: set[tuple[int, ...]] = set()
        for relator in self.relators:
            inverse = tuple(column ^ 1 for column in reversed(relator))
            for word in (relator, inverse):
                for k in range(len(word)):
                    rotated = word[k:] + word[:k]
                    if rotated not in seen:
                        seen.add(rotated)
                        self.by_column[rotated[0]].append(rotated)

    def _new_row(self) -> int:
        if len(self.table) >= self.max_cosets:
            raise CosetOverflowError(limit=self.max_cosets, defined=len(self.table))
        self.table.append([UNDEFINED] * self.width)
        return self.partition.add()

    def _push(self, coset: int, column: int) -> None:
        self.changes += 1
        if self.deductions is not None:
            self.deductions.append((coset, column))

    def define(self, coset: int, column: int) -> None:
        new = self._new_row()
        self.table[coset][column] = new
        self.table[new][column ^ 1] = coset
        self._push(coset, column)

    def live(self, coset: int) -> bool:
        return self.partition.is_live(coset)

    # -- coincidences -------------------------------------------------------

    def _merge(self, a: int, b: int, queue: deque[int]) -> None:
        lost = self.partition.union(a, b)
        if lost is not None:
            self.changes += 1
            queue.append(lost)

    def coincidence(self, a: int, b: int) -> None:
        table = self.table
        find = self.partition.find
        queue: deque[int] = deque()
        self._merge(a, b, queue)
        while queue:
            gamma = queue.popleft()
            row = table[gamma]
            for column in range(self.width):
                delta = row[column]
                if delta == UNDEFINED:
                    continue
                inverse = column ^ 1
                table[delta][inverse] = UNDEFINED
                mu, nu = find(gamma), find(delta)
                if table[mu][column] != UNDEFINED:
                    self._merge(nu, table[mu][column], queue)
                elif table[nu][inverse] != UNDEFINED:
                    self._merge(mu, table[nu][inverse], queue)
                else:
                    table[mu][column] = nu
                    table[nu][inverse] = mu
                    self._push(mu, column)

    # -- scanning -----------------------------------------------------------

    def scan_and_fill(self, coset: int, word: tuple[int, ...]) -> None:
        table = self.table
        f = b = coset
        i, j = 0, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] != UNDEFINED:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][word[j] ^ 1] != UNDEFINED:
                b = table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                self._push(f, word[i])
                return
            self.define(f, word[i])

    def scan(self, coset: int, word: tuple[int, ...]) -> None:
        table = self.table
        f = b = coset
        i, j = 0, len(word) - 1
        while i <= j and table[f][word[i]] != UNDEFINED:
            f = table[f][word[i]]
            i += 1
        if i > j:
            if f != b:
                self.coincidence(f, b)
            return
        while j >= i and table[b][word[j] ^ 1] != UNDEFINED:
            b = table[b][word[j] ^ 1]
            j -= 1
        if j < i:
            self.coincidence(f, b)
        elif i == j:
            table[f][word[i]] = b
            table[b][word[i] ^ 1] = f
            self._push(f, word[i])

    def process_deductions(self) -> None:
        deductions = self.deductions
        if deductions is None:
            return
        while deductions:
            coset, column = deductions.pop()
            if self.live(coset):
                for word in self.by_column[column]:
                    self.scan(coset, word)
                    if not self.live(coset):
                        break
            if self.live(coset):
                image = self.table[coset][column]
                if image != UNDEFINED and self.live(image):
                    for word in self.by_column[column ^ 1]:
                        self.scan(image, word)
                        if not self.live(image):
                            break

    # -- strategies ---------------------------------------------------------

    def run_hlt(self) -> None:
        alpha = 0
        while alpha < len(self.table):
            for relator in self.relators:
                if not self.live(alpha):
                    break
                self.scan_and_fill(alpha, relator)
            if self.live(alpha):
                row = self.table[alpha]
                for column in range(self.width):
                    if row[column] == UNDEFINED:
                        self.define(alpha, column)
            alpha += 1

    def run_felsch(self) -> None:
        self.process_deductions()
        alpha = 0
        while alpha < len(self.table):
            for column in range(self.width):
                if not self.live(alpha):
                    break
                if self.table[alpha][column] == UNDEFINED:
                    self.define(alpha, column)
                    self.process_deductions()
            alpha += 1
        # Closing pass: every relator is traced from every live coset. On a
        # consistent Felsch table it writes nothing, which closing_pass_changes
        # records.
        before = self.changes
        self.deductions = None
        self.run_hlt()
        self.closing_pass_changes = self.changes - before

    def freeze(
        self,
        n_alphabet: int,
        relators: tuple[Word, ...],
        subgroup: tuple[Word, ...],
        strategy: Strategy,
    ) -> CosetTable:
        find = self.partition.find
        live = [c for c in range(len(self.table)) if self.live(c)]
        renumber = {old: new for new, old in enumerate(live)}
        rows = tuple(
            tuple(
                None if image == UNDEFINED else renumber[find(image)]
                for image in self.table[old]
            )
            for old in live
        )
        complete = all(image is not None for row in rows for image in row)
        return CosetTable(
            n_alphabet=n_alphabet,
            rows=rows,
            live_count=len(rows),
            complete=complete,
            relators=relators,
            subgroup_gens=subgroup,
            strategy=strategy,
            defined=len(self.table),
            closing_pass_changes=self.closing_pass_changes,
        )


def enumerate_cosets(
    presentation: Presentation,
    subgroup_gens: Iterable[Word] = (),
    max_cosets: int = DEFAULT_MAX_COSETS,
    strategy: Strategy | str = Strategy.HLT,
) -> CosetTable:
    """Enumerate the cosets of ``<subgroup_gens>`` in the presented group.

    Raises :class:`~chi_forge.errors.CosetOverflowError` once more than
    ``max_cosets`` rows would be needed; a table is only ever returned
    complete.
    """

    strategy = Strategy(strategy)
    subgroup = tuple(free_reduce(w) for w in subgroup_gens)
    for word in subgroup:
        check_rank(word, presentation.rank)

    enumerator = _Enumerator(
        presentation.rank,
        _scan_words(presentation.relators),
        max_cosets,
        felsch=strategy is Strategy.FELSCH,
    )
    for word in subgroup:
        if word:
            enumerator.scan_and_fill(0, _columns(word))
    if strategy is Strategy.FELSCH:
        enumerator.run_felsch()
    else:
        enumerator.run_hlt()

    table = enumerator.freeze(
        presentation.rank, presentation.relators, subgroup, strategy
    )
    logger.debug(
        "enumerated %s: index %d, %d cosets defined (%s)",
        presentation.name,
        table.live_count,
        table.defined,
        strategy.value,
    )
    return table


def trace_word(table: CosetTable, start: int, word: Word) -> int:
    """Apply the letters of ``word`` left to right starting at ``start``."""

    coset = start
    for letter in word:
        image = table.rows[coset][letter_column(letter)]
        if image is None:
            raise IncompleteTableError(
                reason=f"coset {coset} has no image under letter {letter}",
                details={"coset": coset, "letter": letter},
            )
        coset = image
    return coset


def schreier_words(table: CosetTable) -> dict[int, Word]:
    """Breadth-first spanning-tree word for every coset; coset 0 gets ``1``."""

    if not table.complete:
        raise IncompleteTableError(reason="Schreier words need a complete table")
    words: dict[int, Word] = {0: Word()}
    queue: deque[int] = deque([0])
    while queue:
        coset = queue.popleft()
        for column, image in enumerate(table.rows[coset]):
            if image is not None and image not in words:
                words[image] = Word(words[coset].letters + (column_letter(column),))
                queue.append(image)
    return words


def permutation_action(table: CosetTable) -> list[Permutation]:
    """The permutation of the cosets induced by each generator."""

    if not table.complete:
        raise IncompleteTableError(reason="permutation action needs a complete table")
    columns = np.array(table.rows, dtype=np.int64)
    return [
        Permutation(columns[:, 2 * g]) for g in range(table.n_alphabet)
    ]


def regular_representation(table: CosetTable) -> list[Permutation]:
    """Generator images in the regular representation of the presented group."""

    if not table.over_trivial_subgroup:
        raise IncompleteTableError(
            reason=(
                "regular representation needs an enumeration "
                "over the trivial subgroup"
            )
        )
    return permutation_action(table)
