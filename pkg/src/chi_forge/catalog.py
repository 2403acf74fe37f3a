"""Built-in catalog of small finite groups.

Each entry carries the order and exponent its presentation must enumerate
to, and the invariants of its Schur multiplier. The multipliers are
independent data: ``M(A) = A ^ A`` for the abelian entries and the standard
values for the others (trivial for cyclic groups, ``S3``, ``Q8``, ``D5``;
``C2`` for ``D4``, ``D6``, ``A4``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnknownGroupError
from .presentation import Presentation, parse_presentation


@dataclass(frozen=True, slots=True)
class CatalogEntry:
    """A named presentation with its declared invariants."""

    name: str
    text: str
    order: int
    exponent: int
    multiplier: tuple[int, ...]

    @property
    def presentation(self) -> Presentation:
        return parse_presentation(self.text, name=self.name)


def _cyclic(n: int) -> CatalogEntry:
    return CatalogEntry(f"C{n}", f"gens: a\nrels: a^{n}\n", n, n, ())


_ENTRIES: tuple[CatalogEntry, ...] = (
    _cyclic(2),
    _cyclic(3),
    _cyclic(4),
    _cyclic(5),
    _cyclic(6),
    _cyclic(8),
    CatalogEntry(
        "C2xC2",
        "gens: a b\nrels: a^2 b^2 (a^-1 b^-1 a b)\n",
        4,
        2,
        (2,),
    ),
    CatalogEntry(
        "C2xC4",
        "gens: a b\nrels: a^2 b^4 (a^-1 b^-1 a b)\n",
        8,
        4,
        (2,),
    ),
    CatalogEntry(
        "C2xC2xC2",
        "gens: a b c\n"
        "rels: a^2 b^2 c^2\n"
        "      (a^-1 b^-1 a b) (a^-1 c^-1 a c) (b^-1 c^-1 b c)\n",
        8,
        2,
        (2, 2, 2),
    ),
    CatalogEntry(
        "C3xC3",
        "gens: a b\nrels: a^3 b^3 (a^-1 b^-1 a b)\n",
        9,
        3,
        (3,),
    ),
    CatalogEntry("S3", "gens: a b\nrels: a^2 b^3 (a b)^2\n", 6, 6, ()),
    CatalogEntry("D4", "gens: a b\nrels: a^2 b^4 (a b)^2\n", 8, 4, (2,)),
    CatalogEntry(
        "Q8",
        "gens: a b\nrels: a^4 (a^2 b^-2) (b^-1 a b a)\n",
        8,
        4,
        (),
    ),
    CatalogEntry("D5", "gens: a b\nrels: a^2 b^5 (a b)^2\n", 10, 10, ()),
    CatalogEntry("D6", "gens: a b\nrels: a^2 b^6 (a b)^2\n", 12, 6, (2,)),
    CatalogEntry("A4", "gens: a b\nrels: a^2 b^3 (a b)^3\n", 12, 6, (2,)),
)

CATALOG: dict[str, CatalogEntry] = {entry.name: entry for entry in _ENTRIES}
_FOLDED: dict[str, CatalogEntry] = {
    name.lower(): entry for name, entry in CATALOG.items()
}


def catalog_entry(name: str) -> CatalogEntry:
    """Return the catalog entry for ``name`` (case-insensitive)."""

    entry = CATALOG.get(name) or _FOLDED.get(name.strip().lower())
    if entry is None:
        raise UnknownGroupError(
            reason=f"unknown group {name!r}; known groups: {', '.join(CATALOG)}",
            details={"name": name},
        )
    return entry


def catalog_lookup(name: str) -> Presentation:
    return catalog_entry(name).presentation


def survey_entries() -> list[CatalogEntry]:
    """Catalog entries in survey order: by order, then name."""

    return sorted(_ENTRIES, key=lambda entry: (entry.order, entry.name))
