"""Flags shared by several subcommands.

Every flag defaults to ``None`` so that :func:`~chi_forge.config.resolve_run_config`
can tell an explicit flag from an environment or built-in default.
"""

from __future__ import annotations

from argparse import ArgumentParser
from enum import Enum

from ...config import MAX_COSETS_ENV, OutputFormat
from ...cosets import Strategy
from ...weak_commutativity import RelatorScope


def _values(enum: type[Enum]) -> list[str]:
    return [str(member.value) for member in enum]


def add_source_options(parser: ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--group", metavar="NAME", help="Catalog group name")
    source.add_argument(
        "--file", metavar="PATH", help="Read the presentation from a text file"
    )


def add_enumeration_options(parser: ArgumentParser) -> None:
    parser.add_argument(
        "--max-cosets",
        type=int,
        metavar="N",
        help=f"Coset table limit (default 1000000, env {MAX_COSETS_ENV})",
    )
    parser.add_argument(
        "--strategy",
        choices=_values(Strategy),
        help="Coset enumeration strategy (default hlt)",
    )


def add_analysis_options(parser: ArgumentParser) -> None:
    parser.add_argument(
        "--chi-scope",
        choices=_values(RelatorScope),
        help="Quantify [w, w^phi] over all elements or generators only",
    )
    parser.add_argument(
        "--engel-max",
        type=int,
        metavar="N",
        help="Largest Engel degree tried per sample; 0 disables (default 10)",
    )
    parser.add_argument(
        "--element-limit",
        type=int,
        metavar="N",
        help="Largest group whose elements are listed (default 20000)",
    )


def add_nu_options(parser: ArgumentParser) -> None:
    parser.add_argument(
        "--nu-scope",
        choices=_values(RelatorScope),
        help="Quantify the nu relations over elements or generators",
    )
    parser.add_argument(
        "--allow-large-nu",
        action="store_true",
        default=None,
        help="Build nu(G) for groups of order 12 and above",
    )


def add_output_options(parser: ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=_values(OutputFormat), help="Output format (default text)"
    )
    parser.add_argument("--out", metavar="PATH", help="Write the report to PATH")
    parser.add_argument(
        "--verbose",
        "-v",
        action="store_true",
        default=None,
        help="Log debug diagnostics to stderr",
    )
