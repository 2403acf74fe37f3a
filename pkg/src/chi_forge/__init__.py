"""Weak commutativity groups chi(G) of finite presentations.

The package enumerates cosets of finitely presented groups, realizes
``chi(G)`` and ``nu(G)`` as permutation groups and verifies the structural
identities relating their subgroups ``L``, ``D``, ``W`` and ``R``.
"""

from __future__ import annotations

from importlib.metadata import PackageNotFoundError, version

from .analysis import ChiAnalysis, NuComparison, analyze_group, compare_nu
from .catalog import catalog_lookup
from .cosets import enumerate_cosets
from .presentation import Presentation, parse_presentation
from .weak_commutativity import build_chi, build_nu, element_words

__all__ = [
    "ChiAnalysis",
    "NuComparison",
    "Presentation",
    "analyze_group",
    "build_chi",
    "build_nu",
    "catalog_lookup",
    "compare_nu",
    "element_words",
    "enumerate_cosets",
    "parse_presentation",
]

try:
    __version__ = version("chi-forge")
except PackageNotFoundError:
    __version__ = "0.0.0"
