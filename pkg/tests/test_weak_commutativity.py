from __future__ import annotations

import pytest

from chi_forge.catalog import catalog_lookup
from chi_forge.cosets import enumerate_cosets, regular_representation
from chi_forge.errors import CosetOverflowError, ElementMapError, GroupStructureError
from chi_forge.permutations import PermGroup, evaluate_word, verified_hom
from chi_forge.presentation import parse_presentation, render_presentation
from chi_forge.weak_commutativity import (
    ElementWords,
    Kind,
    RelatorScope,
    build_chi,
    build_nu,
    delta_generators,
    element_words,
    phi,
    swap_blocks,
)
from chi_forge.words import Word, commutator, cyclic_key, invert


def chi_order(name: str, scope: RelatorScope = RelatorScope.ELEMENTS, **kw) -> int:
    base = catalog_lookup(name)
    doubled = build_chi(base, element_words(base), scope).doubled
    return enumerate_cosets(doubled, **kw).live_count


def test_element_words_cover_the_group(s3):
    words = element_words(s3)

    assert words.order == 6
    assert words.words[0] == Word()
    assert len(words.nonempty) == 5
    words.validate(s3)


def test_incomplete_element_map_is_rejected(c2):
    with pytest.raises(ElementMapError):
        build_chi(c2, ElementWords(words=(Word(),), order=2))


def test_element_words_must_reach_distinct_elements(c2):
    table = enumerate_cosets(c2)
    duplicated = ElementWords(words=(Word(), Word((1, 1))), order=2, table=table)

    with pytest.raises(ElementMapError):
        duplicated.validate(c2)


def test_chi_of_c2(c2):
    chi = build_chi(c2, element_words(c2))

    assert chi.kind is Kind.CHI
    assert chi.doubled.gen_names == ("a", "a_f")
    assert chi.doubled.relators == (
        Word((1, 1)),
        Word((2, 2)),
        commutator(Word((1,)), Word((2,))),
    )
    assert enumerate_cosets(chi.doubled).live_count == 4


@pytest.mark.parametrize("name", ["C2xC2", "S3", "Q8", "D5"])
def test_chi_relator_count(name):
    base = catalog_lookup(name)
    words = element_words(base)

    chi = build_chi(base, words)

    assert len(chi.doubled.relators) == 2 * len(base.relators) + words.order - 1


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 8])
def test_chi_of_cyclic_group_is_square(n):
    assert chi_order(f"C{n}") == n * n


def test_chi_includes_product_relator(c2xc2):
    words = element_words(c2xc2)
    ab = next(w for w in words.words if sorted(map(abs, w)) == [1, 2])

    chi = build_chi(c2xc2, words)

    assert commutator(ab, phi(ab, 2)) in chi.doubled.relators


def test_generator_scope_changes_the_group():
    assert chi_order("C2xC2") == 32
    with pytest.raises(CosetOverflowError):
        chi_order("C2xC2", RelatorScope.GENERATORS, max_cosets=2_000)


def test_swap_blocks_preserves_chi_relators(s3):
    chi = build_chi(s3, element_words(s3)).doubled
    relators = set(chi.relators) | {invert(r) for r in chi.relators}

    assert {swap_blocks(r, 2) for r in chi.relators} <= relators


@pytest.mark.parametrize("name", ["C2", "S3", "C2xC2"])
def test_quotient_maps_verify(name):
    base = catalog_lookup(name)
    table = enumerate_cosets(base)
    gens = regular_representation(table)
    chi = build_chi(base, element_words(base)).doubled

    _, kills_phi = verified_hom(chi, [*gens, *gens], table.live_count)

    assert kills_phi


def test_rendered_chi_round_trips(c2xc2):
    chi = build_chi(c2xc2, element_words(c2xc2)).doubled

    again = parse_presentation(render_presentation(chi), name=chi.name)

    assert again == chi
    assert chi.name == "chi(C2xC2)"


def test_nu_of_c2(c2):
    nu = build_nu(c2, element_words(c2))
    table = enumerate_cosets(nu.doubled)
    gens = regular_representation(table)

    bracket = evaluate_word(commutator(Word((1,)), Word((2,))), gens)

    assert nu.kind is Kind.NU
    assert len(nu.doubled.relators) <= 2 + 2 * 2**3
    assert table.live_count == 8
    assert bracket.order() == 2


def test_nu_of_c3_bracket_has_order_three():
    c3 = catalog_lookup("C3")
    nu = build_nu(c3, element_words(c3))
    table = enumerate_cosets(nu.doubled)
    gens = regular_representation(table)

    bracket = evaluate_word(commutator(Word((1,)), Word((2,))), gens)

    assert table.live_count == 27
    assert bracket.order() == 3


def test_nu_generator_scope_relators(c2):
    nu = build_nu(c2, element_words(c2), RelatorScope.GENERATORS)

    assert nu.scope is RelatorScope.GENERATORS
    assert enumerate_cosets(nu.doubled).live_count == 8


def test_nu_relators_are_distinct_up_to_rotation_and_inversion(s3):
    nu = build_nu(s3, element_words(s3))

    keys = [cyclic_key(relator) for relator in nu.doubled.relators]

    assert all(keys)
    assert len(set(keys)) == len(keys)
    assert all(relator.is_reduced() for relator in nu.doubled.relators)


def test_delta_generators():
    c4 = catalog_lookup("C4")
    trivial = parse_presentation("gens: a\nrels: a\n")

    assert len(delta_generators(build_nu(c4, element_words(c4)))) == 3
    assert delta_generators(build_nu(trivial, element_words(trivial))) == []


def test_delta_generators_need_nu(c2):
    with pytest.raises(GroupStructureError):
        delta_generators(build_chi(c2, element_words(c2)))


def test_g_block_of_chi_is_g(s3):
    chi = build_chi(s3, element_words(s3)).doubled
    table = enumerate_cosets(chi)
    gens = regular_representation(table)

    g_block = PermGroup(table.live_count, gens[:2], semiregular=True)

    assert g_block.order() == 6
