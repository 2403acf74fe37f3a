"""Free-group words over an indexed alphabet.

A word is a tuple of nonzero signed integers: letter ``+i`` is generator ``i``
and ``-i`` its inverse, with generators numbered from 1. The weak
commutativity constructions double the alphabet, so that letters ``1..r``
belong to ``G`` and ``r+1..2r`` to its copy ``G^phi``; ``phi`` is then the
shift :func:`shift`.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Mapping
from dataclasses import dataclass

from .errors import WordError


@dataclass(frozen=True, slots=True)
class Word:
    """Immutable sequence of signed generator letters."""

    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for letter in self.letters:
            if not isinstance(letter, int) or letter == 0:
                raise WordError(
                    reason=f"invalid letter {letter!r}",
                    details={"letters": self.letters},
                )

    @classmethod
    def of(cls, *letters: int) -> Word:
        """Return the reduced word spelled by ``letters``."""

        return free_reduce(cls(tuple(letters)))

    @classmethod
    def generator(cls, index: int) -> Word:
        return cls((index,))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: Word) -> Word:
        return free_reduce(Word(self.letters + other.letters))

    def __invert__(self) -> Word:
        return invert(self)

    def __pow__(self, exponent: int) -> Word:
        return power(self, exponent)

    @property
    def max_generator(self) -> int:
        """Largest generator index mentioned by the word (0 when empty)."""

        return max((abs(letter) for letter in self.letters), default=0)

    def is_reduced(self) -> bool:
        return all(a != -b for a, b in zip(self.letters, self.letters[1:]))


IDENTITY = Word()


def free_reduce(word: Word | Iterable[int]) -> Word:
    """Cancel adjacent inverse pairs until none remain."""

    letters = word.letters if isinstance(word, Word) else tuple(word)
    stack: list[int] = []
    for letter in letters:
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    if len(stack) == len(letters) and isinstance(word, Word):
        return word
    return Word(tuple(stack))


def invert(word: Word) -> Word:
    return Word(tuple(-letter for letter in reversed(word.letters)))


def power(word: Word, exponent: int) -> Word:
    """Return ``word**exponent`` for any integer exponent."""

    if exponent < 0:
        return power(invert(word), -exponent)
    return free_reduce(Word(word.letters * exponent))


def cyclic_reduce(word: Word) -> Word:
    """Strip inverse letter pairs from the two ends of a reduced word."""

    letters = free_reduce(word).letters
    start, stop = 0, len(letters)
    while stop - start > 1 and letters[start] == -letters[stop - 1]:
        start += 1
        stop -= 1
    return Word(letters[start:stop])


def cyclic_key(word: Word) -> tuple[int, ...]:
    """Least rotation of the cyclic reduction of ``word`` or of its inverse.

    Two relators with the same key have the same normal closure.
    """

    letters = cyclic_reduce(word).letters
    if not letters:
        return ()
    inverse = tuple(-letter for letter in reversed(letters))
    return min(
        w[k:] + w[:k] for w in (letters, inverse) for k in range(len(letters))
    )


def concat(*words: Word) -> Word:
    letters: list[int] = []
    for word in words:
        letters.extend(word.letters)
    return free_reduce(letters)


def commutator(u: Word, v: Word) -> Word:
    """Return ``[u, v] = u^-1 v^-1 u v``."""

    return concat(invert(u), invert(v), u, v)


def conjugate(u: Word, t: Word) -> Word:
    """Return ``u^t = t^-1 u t``."""

    return concat(invert(t), u, t)


def engel_word(x: Word, g: Word, n: int) -> Word:
    """Return the left-normed commutator ``[x, g, ..., g]`` with ``n`` copies of g."""

    if n < 1:
        raise WordError(reason=f"Engel length must be positive, got {n}")
    result = commutator(x, g)
    for _ in range(n - 1):
        result = commutator(result, g)
    return result


LetterMap = Mapping[int, Word] | Callable[[int], Word]


def remap(word: Word, images: LetterMap) -> Word:
    """Substitute a word for each generator of ``word`` and reduce.

    ``images`` is keyed by positive generator index; a negative letter takes
    the inverse of its generator's image.
    """

    letters: list[int] = []
    for letter in word.letters:
        index = abs(letter)
        try:
            image = images(index) if callable(images) else images[index]
        except (KeyError, IndexError) as exc:
            raise WordError(
                reason=f"letter {letter} has no image",
                details={"letter": letter},
            ) from exc
        letters.extend(image.letters if letter > 0 else invert(image).letters)
    return free_reduce(letters)


def compose_maps(first: Mapping[int, Word], second: LetterMap) -> dict[int, Word]:
    """Return the letter map ``w -> remap(remap(w, first), second)``."""

    return {index: remap(image, second) for index, image in first.items()}


def shift(word: Word, offset: int) -> Word:
    """Move every letter ``offset`` places along the alphabet, keeping signs."""

    return Word(
        tuple(letter + offset if letter > 0 else letter - offset for letter in word)
    )


def check_rank(word: Word, rank: int) -> None:
    """Raise unless every letter of ``word`` lies in an alphabet of ``rank``."""

    if word.max_generator > rank:
        raise WordError(
            reason=f"letter out of range for alphabet of rank {rank}",
            details={"letters": word.letters, "rank": rank},
        )
