"""Shared pytest fixtures and test helpers for chi-forge."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable

import pytest
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

from chi_forge.catalog import catalog_lookup
from chi_forge.config import RunConfig
from chi_forge.permutations import Permutation
from chi_forge.presentation import Presentation


def pytest_configure(config: pytest.Config) -> None:
    """Register custom markers."""
    config.addinivalue_line(
        "markers", "slow: marks tests as slow (deselected by default)"
    )
    config.addinivalue_line(
        "markers",
        "integration: marks tests that run the full CLI in a subprocess",
    )


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------


def fp_group_order(presentation: Presentation) -> int:
    """Order of ``presentation`` computed by sympy's own coset enumeration."""

    free, *gens = free_group(" ".join(presentation.gen_names))
    relators = []
    for relator in presentation.relators:
        element = free.identity
        for letter in relator:
            generator = gens[abs(letter) - 1]
            element = element * (generator if letter > 0 else generator**-1)
        relators.append(element)
    return int(FpGroup(free, relators).order())


def brute_force_closure(generators: Iterable[Permutation]) -> set[bytes]:
    """Every product of ``generators``, found by breadth-first multiplication."""

    gens = list(generators)
    if not gens:
        return set()
    identity = Permutation.identity(gens[0].degree)
    seen = {identity.key(): identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for g in gens:
            product = current * g
            if product.key() not in seen:
                seen[product.key()] = product
                queue.append(product)
    return set(seen)


def cycle(degree: int, *points: int) -> Permutation:
    return Permutation.from_cycles(degree, [points])


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture
def c2() -> Presentation:
    return catalog_lookup("C2")


@pytest.fixture
def c2xc2() -> Presentation:
    return catalog_lookup("C2xC2")


@pytest.fixture
def s3() -> Presentation:
    return catalog_lookup("S3")


@pytest.fixture
def s3_file(tmp_path):
    """S3 written in the text format, with a comment and a wrapped rels line."""

    path = tmp_path / "s3.pres"
    path.write_text(
        "# symmetric group on three letters\n"
        "gens: a b\n"
        "rels: a^2 b^3\n"
        "      (a b)^2\n",
        encoding="utf-8",
    )
    return path


@pytest.fixture
def run_config():
    """Return a callable building a :class:`RunConfig` with overrides.

    Usage::

        cfg = run_config(command="analyze", group="C2", engel_max=0)
    """

    def _make(**overrides: object) -> RunConfig:
        fields: dict[str, object] = {"command": "analyze"}
        fields.update(overrides)
        return RunConfig(**fields)  # type: ignore[arg-type]

    return _make
