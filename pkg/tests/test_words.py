from __future__ import annotations

import pytest

from chi_forge.errors import WordError
from chi_forge.words import (
    IDENTITY,
    Word,
    check_rank,
    commutator,
    compose_maps,
    concat,
    conjugate,
    cyclic_key,
    cyclic_reduce,
    engel_word,
    free_reduce,
    invert,
    power,
    remap,
    shift,
)


def test_free_reduce_cancels_nested_pairs():
    assert free_reduce([1, 2, -2, -1, 3]) == Word((3,))
    assert free_reduce([1, -1]) == IDENTITY


def test_word_rejects_letter_zero():
    with pytest.raises(WordError):
        Word((1, 0))


def test_of_reduces():
    assert Word.of(1, 2, -2) == Word((1,))


def test_invert_reverses_and_negates():
    assert invert(Word((1, 2, -3))) == Word((3, -2, -1))
    assert ~Word((1, 2)) == Word((-2, -1))


def test_power_handles_negative_and_zero():
    a = Word.generator(1)
    assert power(a, 3) == Word((1, 1, 1))
    assert power(a, -2) == Word((-1, -1))
    assert power(a, 0) == IDENTITY
    assert (Word((1, 2)) ** 2).letters == (1, 2, 1, 2)


def test_concat_reduces_at_the_seams():
    assert concat(Word((1, 2)), Word((-2, 3))) == Word((1, 3))
    assert Word((1,)) * Word((-1,)) == IDENTITY


def test_commutator_of_generators():
    a, b = Word.generator(1), Word.generator(2)

    assert commutator(a, b) == Word((-1, -2, 1, 2))
    assert commutator(a, a) == IDENTITY


def test_conjugate_is_t_inverse_u_t():
    u, t = Word.generator(1), Word.generator(2)

    assert conjugate(u, t) == Word((-2, 1, 2))


def test_engel_word_is_left_normed():
    x, g = Word.generator(1), Word.generator(2)

    assert engel_word(x, g, 1) == commutator(x, g)
    assert engel_word(x, g, 3) == commutator(commutator(commutator(x, g), g), g)


def test_engel_word_needs_positive_length():
    with pytest.raises(WordError):
        engel_word(Word.generator(1), Word.generator(2), 0)


def test_remap_substitutes_and_inverts():
    images = {1: Word((2, 2)), 2: Word((1,))}

    assert remap(Word((1, -2)), images) == Word((2, 2, -1))


def test_remap_missing_letter_raises():
    with pytest.raises(WordError):
        remap(Word((3,)), {1: IDENTITY})


def test_compose_maps_applies_first_then_second():
    first = {1: Word((2,)), 2: Word((1, 2))}
    second = {1: Word((1, 1)), 2: Word((-1,))}

    composed = compose_maps(first, second)

    assert composed == {1: Word((-1,)), 2: Word((1,))}


def test_shift_keeps_signs():
    assert shift(Word((1, -2)), 2) == Word((3, -4))


def test_check_rank():
    check_rank(Word((2, -1)), 2)
    with pytest.raises(WordError):
        check_rank(Word((3,)), 2)


def test_word_properties():
    word = Word((1, -3, 2))

    assert word.max_generator == 3
    assert word.is_reduced()
    assert not Word((1, -1)).is_reduced()
    assert len(word) == 3
    assert not IDENTITY


def test_cyclic_reduce_strips_matching_ends():
    assert cyclic_reduce(Word((-1, 2, 3, 1))) == Word((2, 3))
    assert cyclic_reduce(Word((-1, 1))) == IDENTITY
    assert cyclic_reduce(Word((1,))) == Word((1,))
    assert cyclic_reduce(Word((1, 2, 1))) == Word((1, 2, 1))


def test_cyclic_key_identifies_conjugates_and_inverses():
    relator = Word((1, 2, -1, 3))

    assert cyclic_key(conjugate(relator, Word((2, 4)))) == cyclic_key(relator)
    assert cyclic_key(invert(relator)) == cyclic_key(relator)
    assert cyclic_key(Word((3, 1, 2, -1))) == cyclic_key(relator)
    assert cyclic_key(Word((1, 2, 3))) != cyclic_key(relator)
    assert cyclic_key(Word((1, -1))) == ()
