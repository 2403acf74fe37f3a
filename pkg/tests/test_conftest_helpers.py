"""Tests for shared test helpers defined in conftest.py."""

from __future__ import annotations

from conftest import brute_force_closure, cycle, fp_group_order

from chi_forge.catalog import catalog_lookup


class TestFpGroupOrder:
    """The sympy oracle agrees with hand-known orders."""

    def test_cyclic(self):
        assert fp_group_order(catalog_lookup("C5")) == 5

    def test_quaternion(self):
        assert fp_group_order(catalog_lookup("Q8")) == 8


class TestBruteForceClosure:
    def test_symmetric_group_on_four_points(self):
        elements = brute_force_closure([cycle(4, 0, 1), cycle(4, 0, 1, 2, 3)])

        assert len(elements) == 24

    def test_no_generators(self):
        assert brute_force_closure([]) == set()
