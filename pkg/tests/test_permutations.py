from __future__ import annotations

import pytest
from conftest import brute_force_closure, cycle
from sympy.combinatorics import Permutation as SymPermutation
from sympy.combinatorics import PermutationGroup as SymPermutationGroup

from chi_forge.catalog import catalog_lookup
from chi_forge.cosets import enumerate_cosets, regular_representation
from chi_forge.errors import (
    ElementLimitError,
    GroupStructureError,
    MembershipError,
)
from chi_forge.permutations import (
    PermGroup,
    Permutation,
    StabilizerChain,
    abelian_invariants,
    commutator,
    commutator_subgroup,
    conjugate,
    contains,
    direct_product_permutation,
    element_order,
    elements,
    evaluate_word,
    exponent,
    factor_group_invariants,
    intersection,
    normal_closure,
    quotient_abelian_invariants,
    subgroup_closure,
    verified_hom,
)
from chi_forge.permutations import order as perm_order
from chi_forge.words import Word


def regular(name: str) -> tuple[int, list[Permutation]]:
    table = enumerate_cosets(catalog_lookup(name))
    return table.live_count, regular_representation(table)


def test_composition_is_left_to_right():
    p = cycle(3, 0, 1)
    q = cycle(3, 1, 2)

    assert (p * q)(0) == q(p(0)) == 2
    assert (p * q).images.tolist() == [2, 0, 1]


def test_permutation_rejects_non_bijections():
    with pytest.raises(ValueError, match="not a permutation"):
        Permutation([0, 0, 1])


def test_inverse_power_and_order():
    p = Permutation.from_cycles(6, [(0, 1, 2), (3, 4)])

    assert p * ~p == Permutation.identity(6)
    assert p**6 == Permutation.identity(6)
    assert p**-1 == ~p
    assert p.order() == 6
    assert Permutation.identity(4).order() == 1


def test_cycles_and_notation():
    p = Permutation.from_cycles(5, [(3, 1), (0, 4)])

    assert p.cycles() == [(0, 4), (1, 3)]
    assert p.cycle_notation() == "(0 4)(1 3)"
    assert Permutation.identity(2).cycle_notation() == "()"


def test_commutator_and_conjugate():
    x, y = cycle(3, 0, 1), cycle(3, 1, 2)

    assert commutator(x, y) == ~x * ~y * x * y
    assert conjugate(x, y) == ~y * x * y
    assert conjugate(x, y) == cycle(3, 0, 2)


def test_equality_and_hashing():
    assert cycle(4, 0, 1) == Permutation([1, 0, 2, 3])
    assert len({cycle(4, 0, 1), Permutation([1, 0, 2, 3])}) == 1


@pytest.mark.parametrize(
    "generators",
    [
        [cycle(4, 0, 1), cycle(4, 0, 1, 2, 3)],
        [cycle(5, 0, 1, 2), cycle(5, 2, 3, 4)],
        [cycle(6, 0, 1, 2, 3, 4, 5), Permutation([0, 5, 4, 3, 2, 1])],
        [Permutation.from_cycles(8, [(0, 1), (2, 3)]), cycle(8, 4, 5, 6, 7)],
    ],
)
def test_schreier_sims_matches_brute_force(generators):
    group = PermGroup(generators[0].degree, generators)
    elements = brute_force_closure(generators)
    oracle = SymPermutationGroup(
        [SymPermutation(g.images.tolist()) for g in generators]
    )

    assert group.order() == len(elements) == oracle.order()
    assert {g.key() for g in group.iter_elements()} == elements


def test_membership():
    s4 = PermGroup(4, [cycle(4, 0, 1), cycle(4, 0, 1, 2, 3)])
    a4 = PermGroup(4, [cycle(4, 0, 1, 2), cycle(4, 1, 2, 3)])

    assert a4.order() == 12
    assert a4.is_subgroup_of(s4)
    assert not a4.contains(cycle(4, 0, 1))
    assert cycle(4, 0, 2, 1) in a4
    assert a4.is_normal_in(s4)
    with pytest.raises(MembershipError):
        a4.contains(cycle(5, 0, 1))


def test_chain_base_and_strong_generators():
    chain = StabilizerChain(4, [cycle(4, 0, 1), cycle(4, 0, 1, 2, 3)])

    assert chain.order() == 24
    assert chain.base[0] == 0
    assert chain.orbit_sizes()[0] == 4
    assert chain.strong_generators()


def test_semiregular_chain_of_a_regular_representation():
    degree, gens = regular("Q8")

    group = PermGroup(degree, gens, semiregular=True)

    assert group.order() == 8
    assert len(group.chain.levels) == 1
    assert group.exponent() == 4
    assert not group.is_abelian()


def test_elements_respects_the_limit():
    s4 = PermGroup(4, [cycle(4, 0, 1), cycle(4, 0, 1, 2, 3)])

    with pytest.raises(ElementLimitError) as excinfo:
        s4.elements(limit=10)

    assert excinfo.value.order == 24


def test_derived_subgroup_and_normal_closure():
    s4 = PermGroup(4, [cycle(4, 0, 1), cycle(4, 0, 1, 2, 3)])

    derived = commutator_subgroup(s4, s4, s4)
    klein = normal_closure(s4, [Permutation.from_cycles(4, [(0, 1), (2, 3)])])

    assert derived.order() == 12
    assert klein.order() == 4
    assert klein.is_normal_in(s4)


def test_normal_closure_rejects_foreign_seeds():
    a4 = PermGroup(4, [cycle(4, 0, 1, 2), cycle(4, 1, 2, 3)])

    with pytest.raises(MembershipError):
        normal_closure(a4, [cycle(4, 0, 1)])


def test_intersection_and_subgroup_closure():
    s4 = PermGroup(4, [cycle(4, 0, 1), cycle(4, 0, 1, 2, 3)])
    a4 = commutator_subgroup(s4, s4, s4)
    d4 = subgroup_closure(4, [cycle(4, 0, 1, 2, 3), Permutation([0, 3, 2, 1])])

    meet = intersection(a4, d4)

    assert d4.order() == 8
    assert meet.order() == 4
    assert meet.is_subgroup_of(a4) and meet.is_subgroup_of(d4)


def test_abelian_invariants():
    degree, gens = regular("C2xC4")
    group = PermGroup(degree, gens, semiregular=True)

    assert abelian_invariants(group) == (2, 4)


def test_abelian_invariants_need_abelian_group():
    degree, gens = regular("S3")

    with pytest.raises(GroupStructureError):
        abelian_invariants(PermGroup(degree, gens))


def test_quotient_invariants():
    degree, gens = regular("C2xC4")
    group = PermGroup(degree, gens, semiregular=True)
    a, b = gens

    assert quotient_abelian_invariants(group, PermGroup(degree, [b**2])) == (2, 2)
    assert quotient_abelian_invariants(group, PermGroup(degree, [a])) == (4,)


def test_factor_group_invariants_of_nonabelian_group():
    degree, gens = regular("S3")
    group = PermGroup(degree, gens, semiregular=True)
    derived = commutator_subgroup(group, group, group)

    assert derived.order() == 3
    assert factor_group_invariants(group, derived) == (2,)
    with pytest.raises(GroupStructureError):
        factor_group_invariants(group, PermGroup(degree, []))


def test_evaluate_word_and_verified_hom():
    s3 = catalog_lookup("S3")
    images = [cycle(3, 0, 1), cycle(3, 0, 1, 2)]

    assert evaluate_word(Word((1, 2, 1, 2)), images).is_identity()
    image, verified = verified_hom(s3, images, 3)
    assert verified
    assert image.order() == 6

    bad = verified_hom(s3, [cycle(3, 0, 1), cycle(3, 0, 1)], 3)
    assert not bad.verified
    assert bad.failed_relators == (1,)


def test_verified_hom_checks_arity():
    with pytest.raises(GroupStructureError):
        verified_hom(catalog_lookup("S3"), [cycle(3, 0, 1)], 3)


def test_direct_product_permutation():
    product = direct_product_permutation([cycle(2, 0, 1), cycle(3, 0, 1, 2)])

    assert product.degree == 5
    assert product.order() == 6
    assert product.images.tolist() == [1, 0, 3, 4, 2]


def test_module_level_queries():
    a4 = PermGroup(4, [cycle(4, 0, 1, 2), cycle(4, 1, 2, 3)])
    klein = Permutation.from_cycles(4, [(0, 1), (2, 3)])

    assert perm_order(a4) == 12
    assert contains(a4, klein)
    assert len(elements(a4)) == 12
    assert exponent(a4) == 6
    assert element_order(a4, klein) == 2
    with pytest.raises(MembershipError):
        element_order(a4, cycle(4, 0, 1))
