"""Subgroup lattice of the weak commutativity group and its structural checks.

``analyze_group`` enumerates ``G`` and ``chi(G)``, realizes ``chi(G)`` in its
regular representation and computes the kernels ``L``, ``D``, ``W`` and
``R`` there. Every identity relating them is evaluated as a named
:class:`CheckResult`; a failing identity is a verdict, never an exception.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

from sympy import primefactors

from .cosets import (
    DEFAULT_MAX_COSETS,
    Strategy,
    enumerate_cosets,
    regular_representation,
)
from .errors import ElementLimitError, GroupStructureError, ResourceLimitError
from .permutations import (
    DEFAULT_ELEMENT_LIMIT,
    PermGroup,
    Permutation,
    abelian_invariants,
    commutator,
    commutator_subgroup,
    direct_product_permutation,
    evaluate_word,
    factor_group_invariants,
    intersection,
    normal_closure,
    quotient_abelian_invariants,
    subgroup_closure,
    verified_hom,
)
from .presentation import Presentation, abelian_presentation, abelianization_invariants
from .weak_commutativity import (
    DoubledPresentation,
    ElementWords,
    RelatorScope,
    build_chi,
    build_nu,
    delta_generators,
    element_words,
)
from .words import Word

logger = logging.getLogger(__name__)

DEFAULT_ENGEL_MAX = 10
# Coset budget of the generator-scope nu enumeration, relative to |nu|.
GENERATOR_SCOPE_FACTOR = 64


@dataclass(frozen=True, slots=True)
class CheckResult:
    passed: bool
    witness: str | None = None

    def as_dict(self) -> dict[str, object]:
        payload: dict[str, object] = {"pass": self.passed}
        if self.witness is not None:
            payload["witness"] = self.witness
        return payload


def _verdict(passed: bool, witness: str) -> CheckResult:
    return CheckResult(True) if passed else CheckResult(False, witness)


def _not_applicable(why: str) -> CheckResult:
    return CheckResult(True, f"n/a: {why}")


# ---------------------------------------------------------------------------
# Regular representations
# ---------------------------------------------------------------------------


@dataclass(slots=True)
class Representation:
    """A doubled presentation realized by its regular permutation action."""

    presentation: DoubledPresentation
    generators: list[Permutation]
    group: PermGroup
    g_block: PermGroup
    phi_block: PermGroup
    element_pairs: list[tuple[Permutation, Permutation]] = field(
        default_factory=lambda: []
    )

    @property
    def order(self) -> int:
        return self.group.degree

    def evaluate(self, word: Word) -> Permutation:
        return evaluate_word(word, self.generators, self.order)


def represent(
    d: DoubledPresentation,
    max_cosets: int = DEFAULT_MAX_COSETS,
    strategy: Strategy | str = Strategy.HLT,
) -> Representation:
    """Enumerate a doubled presentation over the trivial subgroup."""

    table = enumerate_cosets(d.doubled, max_cosets=max_cosets, strategy=strategy)
    perms = regular_representation(table)
    degree = table.live_count
    rank = d.rank
    group = PermGroup(degree, perms, semiregular=True)
    rep = Representation(
        presentation=d,
        generators=perms,
        group=group,
        g_block=PermGroup(degree, perms[:rank], semiregular=True),
        phi_block=PermGroup(degree, perms[rank:], semiregular=True),
    )
    rep.element_pairs = [
        (
            evaluate_word(word, perms, degree),
            evaluate_word(d.phi(word), perms, degree),
        )
        for word in d.element_words.words
    ]
    logger.debug("%s has order %d", d.doubled.name, degree)
    return rep


# ---------------------------------------------------------------------------
# Lattice and tensor set
# ---------------------------------------------------------------------------


@dataclass(slots=True)
class Lattice:
    """The kernels ``L``, ``D``, ``W = L ∩ D`` and ``R = [G, L, G^phi]``."""

    L: PermGroup
    D: PermGroup
    W: PermGroup
    R: PermGroup


def compute_lattice(
    chi: Representation, element_limit: int = DEFAULT_ELEMENT_LIMIT
) -> Lattice:
    degree = chi.order
    lower = subgroup_closure(
        degree, (~x * x_phi for x, x_phi in chi.element_pairs), semiregular=True
    )
    derived = commutator_subgroup(chi.g_block, chi.phi_block, chi.group)
    meet = intersection(lower, derived, element_limit)
    inner = commutator_subgroup(chi.g_block, lower, chi.group)
    triple = commutator_subgroup(inner, chi.phi_block, chi.group)
    logger.debug(
        "lattice of %s: |L|=%d |D|=%d |W|=%d |R|=%d",
        chi.presentation.doubled.name,
        lower.order(),
        derived.order(),
        meet.order(),
        triple.order(),
    )
    return Lattice(L=lower, D=derived, W=meet, R=triple)


def tensor_set(
    chi: Representation, element_limit: int = DEFAULT_ELEMENT_LIMIT
) -> list[Permutation]:
    """Distinct commutators ``[g, h^phi]`` over all ordered element pairs."""

    pairs = len(chi.element_pairs) ** 2
    if pairs > element_limit:
        raise ElementLimitError(limit=element_limit, order=pairs)
    inverses = [(~x, ~x_phi) for x, x_phi in chi.element_pairs]
    seen: dict[bytes, Permutation] = {}
    for (g, _), (g_inv, _) in zip(chi.element_pairs, inverses):
        for (_, h_phi), (_, h_phi_inv) in zip(chi.element_pairs, inverses):
            value = g_inv * h_phi_inv * g * h_phi
            seen.setdefault(value.key(), value)
    return list(seen.values())


@dataclass(frozen=True, slots=True)
class TensorOrderProfile:
    orders: tuple[int, ...]
    p_power_orders: dict[int, bool]
    divides_exp_D: bool

    @property
    def stats(self) -> dict[int, int]:
        return dict(sorted(Counter(self.orders).items()))


def _is_power_of(value: int, prime: int) -> bool:
    while value % prime == 0:
        value //= prime
    return value == 1


def tensor_order_profile(
    tensors: Sequence[Permutation], primes: Iterable[int], exp_D: int
) -> TensorOrderProfile:
    """Element orders of the tensor set and per-prime p-power verdicts."""

    orders = tuple(sorted(t.order() for t in tensors))
    return TensorOrderProfile(
        orders=orders,
        p_power_orders={p: all(_is_power_of(o, p) for o in orders) for p in primes},
        divides_exp_D=all(exp_D % o == 0 for o in orders),
    )


def engel_degree(
    chi: PermGroup, t: Permutation, x: Permutation, max_n: int
) -> int | None:
    """Least ``n <= max_n`` with ``[x, t, ..., t]`` (n copies) trivial, else None."""

    identity = chi.identity()
    value = commutator(x, t)
    for n in range(1, max_n + 1):
        if value == identity:
            return n
        value = commutator(value, t)
    return None


@dataclass(frozen=True, slots=True)
class EngelSample:
    tensor: int
    generator: str
    degree: int | None

    def as_dict(self) -> dict[str, object]:
        return {
            "tensor": self.tensor,
            "generator": self.generator,
            "degree": self.degree,
        }


# ---------------------------------------------------------------------------
# nu comparison
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class NuComparison:
    """Order-level comparison of ``nu(G)/Delta(G)`` with ``chi(G)/R(G)``."""

    group_name: str
    scope: str
    order_nu: int
    order_delta: int
    order_delta_generated: int
    closure_enlarged: bool
    order_chi: int
    order_R: int
    tensor_square_order: int
    order_nu_generator_scope: int | None
    passed: bool

    def as_dict(self) -> dict[str, object]:
        return {
            "group_name": self.group_name,
            "scope": self.scope,
            "order_nu": self.order_nu,
            "order_delta": self.order_delta,
            "order_delta_generated": self.order_delta_generated,
            "closure_enlarged": self.closure_enlarged,
            "order_chi": self.order_chi,
            "order_R": self.order_R,
            "tensor_square_order": self.tensor_square_order,
            "order_nu_generator_scope": self.order_nu_generator_scope,
            "pass": self.passed,
        }


def verify_nu_chi(
    base: Presentation,
    words: ElementWords,
    order_chi: int,
    order_R: int,
    *,
    scope: RelatorScope | str = RelatorScope.ELEMENTS,
    max_cosets: int = DEFAULT_MAX_COSETS,
    strategy: Strategy | str = Strategy.HLT,
) -> NuComparison:
    """Check ``|nu|/|Delta| = |chi|/|R|`` by independent enumerations."""

    scope = RelatorScope(scope)
    nu = represent(build_nu(base, words, scope), max_cosets, strategy)
    diagonal = [nu.evaluate(w) for w in delta_generators(nu.presentation)]
    generated = subgroup_closure(nu.order, diagonal, semiregular=True)
    delta = normal_closure(nu.group, diagonal)
    tensor_square = commutator_subgroup(nu.g_block, nu.phi_block, nu.group)

    other_scope: int | None = None
    if scope is RelatorScope.ELEMENTS:
        try:
            table = enumerate_cosets(
                build_nu(base, words, RelatorScope.GENERATORS).doubled,
                max_cosets=min(max_cosets, GENERATOR_SCOPE_FACTOR * nu.order),
                strategy=strategy,
            )
            other_scope = table.live_count
        except ResourceLimitError as exc:
            logger.debug("generator-scope nu(%s) not enumerated: %s", base.name, exc)

    order_nu, order_delta = nu.order, delta.order()
    return NuComparison(
        group_name=base.name,
        scope=scope.value,
        order_nu=order_nu,
        order_delta=order_delta,
        order_delta_generated=generated.order(),
        closure_enlarged=delta.order() != generated.order(),
        order_chi=order_chi,
        order_R=order_R,
        tensor_square_order=tensor_square.order(),
        order_nu_generator_scope=other_scope,
        passed=order_nu * order_R == order_chi * order_delta,
    )


def compare_nu(
    base: Presentation,
    *,
    words: ElementWords | None = None,
    scope: RelatorScope | str = RelatorScope.ELEMENTS,
    max_cosets: int = DEFAULT_MAX_COSETS,
    strategy: Strategy | str = Strategy.HLT,
    element_limit: int = DEFAULT_ELEMENT_LIMIT,
) -> NuComparison:
    """Enumerate ``chi(G)`` and ``R(G)`` for ``base`` and run :func:`verify_nu_chi`."""

    if words is None:
        words = element_words(base, max_cosets, strategy)
    chi = represent(build_chi(base, words), max_cosets, strategy)
    lattice = compute_lattice(chi, element_limit)
    return verify_nu_chi(
        base,
        words,
        chi.order,
        lattice.R.order(),
        scope=scope,
        max_cosets=max_cosets,
        strategy=strategy,
    )


# ---------------------------------------------------------------------------
# Full analysis
# ---------------------------------------------------------------------------


@dataclass(slots=True)
class ChiAnalysis:
    group_name: str
    order_G: int
    exp_G: int
    order_chi: int
    exp_chi: int
    order_L: int
    exp_L: int
    order_D: int
    exp_D: int
    order_W: int
    order_R: int
    order_T3: int
    t_chi_size: int
    w_mod_r_invariants: tuple[int, ...]
    g_ab_invariants: tuple[int, ...]
    derived_order_G: int
    checks: dict[str, CheckResult]
    tensor_order_stats: dict[int, int]
    engel_degrees: list[EngelSample] | None = None
    exp_W: int = 1
    exp_L_derived: int = 1
    declared_multiplier: tuple[int, ...] | None = None
    p_power_orders: dict[int, bool] = field(default_factory=lambda: {})
    chi_scope: str = RelatorScope.ELEMENTS.value
    chi_relator_count: int = 0
    nu: NuComparison | None = None

    @property
    def all_checks_pass(self) -> bool:
        nu_ok = self.nu is None or self.nu.passed
        return nu_ok and all(check.passed for check in self.checks.values())

    def failed_checks(self) -> list[str]:
        failed = [name for name, check in self.checks.items() if not check.passed]
        if self.nu is not None and not self.nu.passed:
            failed.append("nu_quotient")
        return failed

    def as_dict(self) -> dict[str, object]:
        return {
            "group_name": self.group_name,
            "order_G": self.order_G,
            "exp_G": self.exp_G,
            "order_chi": self.order_chi,
            "exp_chi": self.exp_chi,
            "order_L": self.order_L,
            "exp_L": self.exp_L,
            "order_D": self.order_D,
            "exp_D": self.exp_D,
            "order_W": self.order_W,
            "order_R": self.order_R,
            "order_T3": self.order_T3,
            "t_chi_size": self.t_chi_size,
            "w_mod_r_invariants": list(self.w_mod_r_invariants),
            "g_ab_invariants": list(self.g_ab_invariants),
            "derived_order_G": self.derived_order_G,
            "exp_W": self.exp_W,
            "exp_L_derived": self.exp_L_derived,
            "declared_multiplier": (
                None
                if self.declared_multiplier is None
                else list(self.declared_multiplier)
            ),
            "chi_scope": self.chi_scope,
            "chi_relator_count": self.chi_relator_count,
            "checks": {name: check.as_dict() for name, check in self.checks.items()},
            "tensor_order_stats": {
                str(k): v for k, v in self.tensor_order_stats.items()
            },
            "p_power_orders": {str(p): ok for p, ok in self.p_power_orders.items()},
            "engel_degrees": (
                None
                if self.engel_degrees is None
                else [sample.as_dict() for sample in self.engel_degrees]
            ),
            "nu": None if self.nu is None else self.nu.as_dict(),
            "all_checks_pass": self.all_checks_pass,
        }


@dataclass(slots=True)
class StructureData:
    """Everything the structural checks read."""

    base: Presentation
    words: ElementWords
    g_regular: PermGroup
    g_generators: list[Permutation]
    g_derived: PermGroup
    chi: Representation
    lattice: Lattice
    tensors: list[Permutation]
    maps: dict[str, tuple[PermGroup, bool]]
    declared_multiplier: tuple[int, ...] | None
    w_mod_r: tuple[int, ...]
    g_ab: tuple[int, ...]
    exponents: dict[str, int]
    element_limit: int
    max_cosets: int
    strategy: Strategy


def _commute_all(
    left: Sequence[Permutation], right: Sequence[Permutation]
) -> tuple[int, int] | None:
    for i, x in enumerate(left):
        for j, y in enumerate(right):
            if x * y != y * x:
                return i, j
    return None


def _g_images(data: StructureData) -> list[Permutation]:
    degree = data.g_regular.degree
    return [evaluate_word(w, data.g_generators, degree) for w in data.words.words]


def _check_commute_LD(data: StructureData) -> CheckResult:
    clash = _commute_all(data.lattice.L.generators, data.lattice.D.generators)
    if clash is None:
        return CheckResult(True)
    return CheckResult(False, f"L generator {clash[0]} and D generator {clash[1]}")


def _check_W_abelian(data: StructureData) -> CheckResult:
    w = data.lattice.W
    return _verdict(
        w.is_abelian(), f"W with {len(w.generators)} generators is not abelian"
    )


def _check_kernel(
    data: StructureData, key: str, subgroup: PermGroup, target_order: int
) -> CheckResult:
    image, verified = data.maps[key]
    order_chi = data.chi.order
    if not verified:
        return CheckResult(False, f"{key} map violates a relator")
    if image.order() != target_order:
        return CheckResult(False, f"image order {image.order()} != {target_order}")
    return _verdict(
        order_chi == image.order() * subgroup.order(),
        f"|chi|={order_chi} but |image|*|kernel|={image.order() * subgroup.order()}",
    )


def _check_D_mod_W(data: StructureData) -> CheckResult:
    D, W = data.lattice.D, data.lattice.W
    derived = data.g_derived.order()
    if D.order() != W.order() * derived:
        return CheckResult(
            False, f"|D|/|W| = {D.order()}/{W.order()} but |G'| = {derived}"
        )
    if not data.g_derived.is_abelian():
        return CheckResult(True, "orders only: G' is not abelian")
    expected = abelian_invariants(data.g_derived, data.element_limit)
    try:
        found = factor_group_invariants(D, W, data.element_limit)
    except GroupStructureError as exc:
        return CheckResult(False, exc.reason)
    return _verdict(
        found == expected, f"D/W invariants {list(found)} vs G' {list(expected)}"
    )


def _check_schur(data: StructureData) -> CheckResult:
    if data.declared_multiplier is None:
        return _not_applicable("no declared multiplier")
    declared = tuple(sorted(data.declared_multiplier))
    return _verdict(
        data.w_mod_r == declared,
        f"W/R invariants {list(data.w_mod_r)} vs declared {list(declared)}",
    )


def _check_order_divides(data: StructureData) -> CheckResult:
    chi, L = data.chi, data.lattice.L
    L_derived = commutator_subgroup(L, L, chi.group)
    for index, ((x, x_phi), g) in enumerate(zip(chi.element_pairs, _g_images(data))):
        element = ~x * x_phi
        power, k = element, 1
        while not L_derived.contains(power):
            power = power * element
            k += 1
        if g.order() % k:
            return CheckResult(
                False, f"element {index}: coset order {k} does not divide {g.order()}"
            )
    return CheckResult(True)


def _check_set_sizes(data: StructureData) -> CheckResult:
    size, order_D = len(data.tensors), data.lattice.D.order()
    return _verdict(size <= order_D, f"|T_chi| = {size} exceeds |D| = {order_D}")


def _check_square_identity(data: StructureData) -> CheckResult:
    if not data.g_regular.is_abelian():
        return _not_applicable("G is not abelian")
    pairs = data.chi.element_pairs
    for i, (a, _) in enumerate(pairs):
        for j, (_, b_phi) in enumerate(pairs):
            if commutator(a * a, b_phi) != commutator(a, b_phi) ** 2:
                return CheckResult(False, f"elements {i}, {j}")
    return CheckResult(True)


def _derived_images(data: StructureData) -> tuple[PermGroup, PermGroup]:
    chi = data.chi
    return (
        commutator_subgroup(chi.g_block, chi.g_block, chi.group),
        commutator_subgroup(chi.phi_block, chi.phi_block, chi.group),
    )


def _check_exact_sequence(data: StructureData) -> CheckResult:
    chi = data.chi
    g_prime, _ = _derived_images(data)
    left = commutator_subgroup(g_prime, chi.phi_block, chi.group).order()
    order_D = data.lattice.D.order()
    if math.prod(data.g_ab) == data.g_regular.degree:
        # G is abelian, so D(G^ab) is D itself.
        return _verdict(left == 1, f"G is abelian but |[G',G^phi]| = {left}")
    abelian = abelian_presentation(data.g_ab, name=f"{data.base.name}_ab")
    ab_words = element_words(abelian, data.max_cosets, data.strategy)
    ab_chi = represent(build_chi(abelian, ab_words), data.max_cosets, data.strategy)
    right = commutator_subgroup(ab_chi.g_block, ab_chi.phi_block, ab_chi.group).order()
    return _verdict(
        order_D == left * right,
        f"|D| = {order_D} but |[G',G^phi]| * |D(G^ab)| = {left} * {right}",
    )


def _check_intersection_formula(data: StructureData) -> CheckResult:
    chi = data.chi
    g_prime, g_prime_phi = _derived_images(data)
    bracket = commutator_subgroup(g_prime, chi.phi_block, chi.group)
    derived = normal_closure(chi.group, [*g_prime.generators, *g_prime_phi.generators])
    meet = intersection(data.lattice.D, derived, data.element_limit)
    if bracket.order() != meet.order():
        return CheckResult(False, f"orders {bracket.order()} vs {meet.order()}")
    return _verdict(
        bracket.is_subgroup_of(meet) and meet.is_subgroup_of(bracket),
        "subgroups of equal order differ",
    )


def _check_exp_surjection(data: StructureData) -> CheckResult:
    exp_G, exp_chi = data.exponents["G"], data.exponents["chi"]
    return _verdict(
        exp_chi % exp_G == 0, f"exp(G)={exp_G} does not divide exp(chi)={exp_chi}"
    )


def _check_factorizations(data: StructureData) -> CheckResult:
    n, g = data.chi.order, data.g_regular.degree
    lat = data.lattice
    t3 = data.maps["T3"][0].order()
    products = (g * lat.L.order(), g * g * lat.D.order(), t3 * lat.W.order())
    return _verdict(
        all(p == n for p in products),
        f"|chi|={n}; |G||L|, |G|^2|D|, |T||W| = {products}",
    )


def _check_lagrange(data: StructureData) -> CheckResult:
    n, g = data.chi.order, data.g_regular.degree
    lat = data.lattice
    pairs = {
        "L": (lat.L.order(), n),
        "D": (lat.D.order(), n),
        "W": (lat.W.order(), n),
        "R": (lat.R.order(), n),
        "G": (data.maps["G"][0].order(), g),
        "GxG": (data.maps["GxG"][0].order(), g * g),
        "T3": (data.maps["T3"][0].order(), g**3),
    }
    bad = [name for name, (part, whole) in pairs.items() if whole % part]
    return _verdict(not bad, f"orders not dividing their ambient: {bad}")


def _check_normality(data: StructureData) -> CheckResult:
    lat, ambient = data.lattice, data.chi.group
    bad = [
        name
        for name, group in (("L", lat.L), ("D", lat.D), ("R", lat.R))
        if not group.is_normal_in(ambient)
    ]
    return _verdict(not bad, f"not normal in chi: {bad}")


def _check_W_central(data: StructureData) -> CheckResult:
    lat = data.lattice
    w = lat.W.generators
    clash = _commute_all(w, (*lat.L.generators, *lat.D.generators))
    if clash is None:
        return CheckResult(True)
    return CheckResult(False, f"W generator {clash[0]} is not central")


def _check_tensors_in_D(data: StructureData) -> CheckResult:
    D = data.lattice.D
    outside = [i for i, t in enumerate(data.tensors) if not D.contains(t)]
    if outside:
        return CheckResult(False, f"tensors outside D: {outside[:5]}")
    closure = normal_closure(data.chi.group, data.tensors)
    return _verdict(
        closure.order() == D.order(),
        f"normal closure of T_chi has order {closure.order()}, |D| = {D.order()}",
    )


def _check_T3_exponent(data: StructureData) -> CheckResult:
    exp_T3, exp_G = data.exponents["T3"], data.exponents["G"]
    return _verdict(
        exp_G % exp_T3 == 0, f"exp(T)={exp_T3} does not divide exp(G)={exp_G}"
    )


def _check_abelianization(data: StructureData) -> CheckResult:
    order_ab = math.prod(data.g_ab)
    expected = data.g_regular.degree // data.g_derived.order()
    return _verdict(
        order_ab == expected, f"|G^ab| = {order_ab} but |G/G'| = {expected}"
    )


CHECKS: dict[str, Callable[[StructureData], CheckResult]] = {
    "commute_LD": _check_commute_LD,
    "W_abelian": _check_W_abelian,
    "kernel_L": lambda d: _check_kernel(d, "G", d.lattice.L, d.g_regular.degree),
    "kernel_D": lambda d: _check_kernel(d, "GxG", d.lattice.D, d.g_regular.degree**2),
    "kernel_W": lambda d: _check_kernel(d, "T3", d.lattice.W, d.maps["T3"][0].order()),
    "D_mod_W_is_Gprime": _check_D_mod_W,
    "schur": _check_schur,
    "thmA_order_divides": _check_order_divides,
    "thmB_sets": _check_set_sizes,
    "abelian_square_identity": _check_square_identity,
    "exact_sequence_orders": _check_exact_sequence,
    "intersection_formula": _check_intersection_formula,
    "exp_surjection": _check_exp_surjection,
    "order_factorizations": _check_factorizations,
    "lagrange": _check_lagrange,
    "normality": _check_normality,
    "W_central": _check_W_central,
    "tensors_in_D": _check_tensors_in_D,
    "chi_mod_W_exponent": _check_T3_exponent,
    "abelianization": _check_abelianization,
}


def verify_structure(data: StructureData) -> dict[str, CheckResult]:
    """Evaluate every named check independently."""

    results: dict[str, CheckResult] = {}
    for name, check in CHECKS.items():
        results[name] = check(data)
        if not results[name].passed:
            logger.debug("check %s failed: %s", name, results[name].witness)
    return results


def _quotient_maps(
    d: DoubledPresentation, g_generators: Sequence[Permutation], degree: int
) -> dict[str, tuple[PermGroup, bool]]:
    """The three quotient maps of chi(G) onto G, G x G and T(G) <= G^3."""

    identity = Permutation.identity(degree)
    maps: dict[str, tuple[PermGroup, bool]] = {}
    targets: dict[str, tuple[list[Permutation], int]] = {
        "G": ([*g_generators, *g_generators], degree),
        "GxG": (
            [direct_product_permutation([g, identity]) for g in g_generators]
            + [direct_product_permutation([identity, g]) for g in g_generators],
            2 * degree,
        ),
        "T3": (
            [direct_product_permutation([g, g, identity]) for g in g_generators]
            + [direct_product_permutation([identity, g, g]) for g in g_generators],
            3 * degree,
        ),
    }
    for key, (images, target_degree) in targets.items():
        result = verified_hom(d.doubled, images, target_degree)
        maps[key] = (result.image, result.verified)
    return maps


def analyze_group(
    base: Presentation,
    *,
    declared_multiplier: Sequence[int] | None = None,
    max_cosets: int = DEFAULT_MAX_COSETS,
    strategy: Strategy | str = Strategy.HLT,
    chi_scope: RelatorScope | str = RelatorScope.ELEMENTS,
    engel_max: int | None = DEFAULT_ENGEL_MAX,
    element_limit: int = DEFAULT_ELEMENT_LIMIT,
    nu_scope: RelatorScope | str | None = None,
    words: ElementWords | None = None,
) -> ChiAnalysis:
    """Build and analyze ``chi(G)``; with ``nu_scope`` also compare against nu.

    ``words`` reuses an enumeration of ``base`` the caller already holds.
    """

    strategy = Strategy(strategy)
    chi_scope = RelatorScope(chi_scope)
    if words is None:
        words = element_words(base, max_cosets, strategy)
    if words.table is None:
        raise GroupStructureError(reason=f"{base.name} has no coset table")
    g_generators = regular_representation(words.table)
    order_G = words.order
    g_regular = PermGroup(order_G, g_generators, semiregular=True)
    g_derived = commutator_subgroup(g_regular, g_regular, g_regular)
    g_ab = abelianization_invariants(base)
    if not g_ab.is_finite:
        raise GroupStructureError(reason=f"{base.name} has infinite abelianization")

    doubled = build_chi(base, words, chi_scope)
    chi = represent(doubled, max_cosets, strategy)
    lattice = compute_lattice(chi, element_limit)
    tensors = tensor_set(chi, element_limit)
    maps = _quotient_maps(doubled, g_generators, order_G)
    L_derived = commutator_subgroup(lattice.L, lattice.L, chi.group)
    exponents = {
        "G": g_regular.exponent(element_limit),
        "chi": chi.group.exponent(element_limit),
        "L": lattice.L.exponent(element_limit),
        "D": lattice.D.exponent(element_limit),
        "W": lattice.W.exponent(element_limit),
        "L'": L_derived.exponent(element_limit),
        "T3": maps["T3"][0].exponent(element_limit),
    }
    w_mod_r = quotient_abelian_invariants(lattice.W, lattice.R, element_limit)

    data = StructureData(
        base=base,
        words=words,
        g_regular=g_regular,
        g_generators=g_generators,
        g_derived=g_derived,
        chi=chi,
        lattice=lattice,
        tensors=tensors,
        maps=maps,
        declared_multiplier=(
            None if declared_multiplier is None else tuple(declared_multiplier)
        ),
        w_mod_r=w_mod_r,
        g_ab=g_ab.torsion,
        exponents=exponents,
        element_limit=element_limit,
        max_cosets=max_cosets,
        strategy=strategy,
    )
    checks = verify_structure(data)
    primes = [int(p) for p in primefactors(order_G)]
    profile = tensor_order_profile(tensors, primes, exponents["D"])
    checks["tensor_orders_divide_exp_D"] = _verdict(
        profile.divides_exp_D,
        f"tensor orders {sorted(profile.stats)} vs exp(D) = {exponents['D']}",
    )

    engel: list[EngelSample] | None = None
    if engel_max is not None and engel_max > 0:
        names = doubled.doubled.gen_names
        engel = [
            EngelSample(i, names[j], engel_degree(chi.group, t, x, engel_max))
            for i, t in enumerate(tensors)
            for j, x in enumerate(chi.generators)
        ]

    nu: NuComparison | None = None
    if nu_scope is not None:
        nu = verify_nu_chi(
            base,
            words,
            chi.order,
            lattice.R.order(),
            scope=nu_scope,
            max_cosets=max_cosets,
            strategy=strategy,
        )

    return ChiAnalysis(
        group_name=base.name,
        order_G=order_G,
        exp_G=exponents["G"],
        order_chi=chi.order,
        exp_chi=exponents["chi"],
        order_L=lattice.L.order(),
        exp_L=exponents["L"],
        order_D=lattice.D.order(),
        exp_D=exponents["D"],
        order_W=lattice.W.order(),
        order_R=lattice.R.order(),
        order_T3=maps["T3"][0].order(),
        t_chi_size=len(tensors),
        w_mod_r_invariants=w_mod_r,
        g_ab_invariants=g_ab.torsion,
        derived_order_G=g_derived.order(),
        checks=checks,
        tensor_order_stats=profile.stats,
        engel_degrees=engel,
        exp_W=exponents["W"],
        exp_L_derived=exponents["L'"],
        declared_multiplier=data.declared_multiplier,
        p_power_orders=profile.p_power_orders,
        chi_scope=chi_scope.value,
        chi_relator_count=len(doubled.doubled.relators),
        nu=nu,
    )
