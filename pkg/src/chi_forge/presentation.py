"""Finite presentations: text format, validation and abelianization."""

from __future__ import annotations

import re
import string
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np
from sympy import factorint

from .errors import PresentationError, PresentationSyntaxError
from .words import Word, commutator, power

IDENTIFIER_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")

_TOKEN_RE = re.compile(
    r"(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<int>-?\d+)|(?P<symbol>[()^])|(?P<space>\s+)"
)
_SECTION_RE = re.compile(r"\s*(?P<keyword>[A-Za-z]+)\s*:")


@dataclass(frozen=True, slots=True)
class Presentation:
    """A finitely presented group ``< gen_names | relators >``."""

    name: str
    gen_names: tuple[str, ...]
    relators: tuple[Word, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if not self.gen_names:
            raise PresentationError(
                reason=f"{self.name}: at least one generator needed"
            )
        for gen in self.gen_names:
            if not IDENTIFIER_RE.fullmatch(gen):
                raise PresentationError(
                    reason=f"{self.name}: invalid generator {gen!r}"
                )
        if len(set(self.gen_names)) != len(self.gen_names):
            raise PresentationError(
                reason=f"{self.name}: duplicate generator names",
                details={"gen_names": self.gen_names},
            )
        for relator in self.relators:
            if not relator:
                raise PresentationError(reason=f"{self.name}: empty relator")
            if not relator.is_reduced():
                raise PresentationError(
                    reason=f"{self.name}: relator {relator.letters} is not reduced"
                )
            if relator.max_generator > self.rank:
                raise PresentationError(
                    reason=(
                        f"{self.name}: relator {relator.letters} "
                        "leaves the alphabet"
                    ),
                    details={"rank": self.rank},
                )

    @property
    def rank(self) -> int:
        return len(self.gen_names)

    def format_word(self, word: Word) -> str:
        return format_word(word, self.gen_names)

    def render(self) -> str:
        return render_presentation(self)


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _strip_comment(line: str) -> str:
    index = line.find("#")
    return line if index < 0 else line[:index]


def _tokenize(text: str, line: int, column: int) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise PresentationSyntaxError(
                reason=f"unexpected character {text[pos]!r}",
                line=line,
                column=column + pos,
            )
        kind = match.lastgroup or ""
        if kind != "space":
            tokens.append(_Token(kind, match.group(), line, column + pos))
        pos = match.end()
    return tokens


class _RelatorParser:
    """Recursive-descent parser for the relator section."""

    def __init__(
        self, tokens: list[_Token], names: dict[str, int], end: tuple[int, int]
    ) -> None:
        self.tokens = tokens
        self.names = names
        self.pos = 0
        self.end = end

    def _peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _error(self, reason: str, token: _Token | None) -> PresentationSyntaxError:
        line, column = (token.line, token.column) if token else self.end
        return PresentationSyntaxError(reason=reason, line=line, column=column)

    def parse(self) -> list[Word]:
        relators: list[Word] = []
        while (token := self._peek()) is not None:
            word = self._term()
            if not word:
                raise self._error("relator reduces to the empty word", token)
            relators.append(word)
        return relators

    def _exponent(self) -> int:
        token = self._peek()
        if token is None or token.text != "^":
            return 1
        self.pos += 1
        value = self._peek()
        if value is None or value.kind != "int":
            raise self._error("expected an integer exponent after '^'", value)
        self.pos += 1
        return int(value.text)

    def _term(self) -> Word:
        token = self._peek()
        if token is None:
            raise self._error("expected a relator term", None)
        if token.kind == "ident":
            self.pos += 1
            index = self.names.get(token.text)
            if index is None:
                raise self._error(f"unknown generator {token.text!r}", token)
            return power(Word.generator(index), self._exponent())
        if token.text == "(":
            self.pos += 1
            letters: list[int] = []
            while (inner := self._peek()) is not None and inner.text != ")":
                letters.extend(self._term().letters)
            if inner is None:
                raise self._error("unclosed '('", token)
            if not letters:
                raise self._error("empty parentheses", token)
            self.pos += 1
            return power(Word.of(*letters), self._exponent())
        raise self._error(f"unexpected {token.text!r}", token)


def parse_presentation(text: str, name: str = "G") -> Presentation:
    """Parse the ``gens:`` / ``rels:`` text format into a presentation."""

    gen_tokens: list[_Token] | None = None
    rel_tokens: list[_Token] | None = None
    last_position = (1, 1)
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        last_position = (line_number, len(line.rstrip()) + 1)
        section = _SECTION_RE.match(line)
        keyword = section.group("keyword") if section else None
        if keyword == "gens":
            if gen_tokens is not None:
                raise PresentationSyntaxError(
                    reason="duplicate 'gens:' line", line=line_number, column=1
                )
            assert section is not None
            gen_tokens = _tokenize(
                line[section.end() :], line_number, section.end() + 1
            )
        elif gen_tokens is None:
            column = len(line) - len(line.lstrip()) + 1
            raise PresentationSyntaxError(
                reason="expected 'gens:' line", line=line_number, column=column
            )
        elif keyword == "rels":
            if rel_tokens is not None:
                raise PresentationSyntaxError(
                    reason="duplicate 'rels:' line", line=line_number, column=1
                )
            assert section is not None
            rel_tokens = _tokenize(
                line[section.end() :], line_number, section.end() + 1
            )
        elif rel_tokens is not None:
            rel_tokens.extend(_tokenize(line, line_number, 1))
        else:
            raise PresentationSyntaxError(
                reason="expected 'rels:' line", line=line_number, column=1
            )

    if gen_tokens is None:
        raise PresentationSyntaxError(
            reason="missing 'gens:' line", line=last_position[0], column=1
        )
    if rel_tokens is None:
        raise PresentationSyntaxError(
            reason="missing 'rels:' line", line=last_position[0], column=1
        )

    names: dict[str, int] = {}
    for token in gen_tokens:
        if token.kind != "ident":
            raise PresentationSyntaxError(
                reason=f"invalid generator name {token.text!r}",
                line=token.line,
                column=token.column,
            )
        if token.text in names:
            raise PresentationSyntaxError(
                reason=f"duplicate generator {token.text!r}",
                line=token.line,
                column=token.column,
            )
        names[token.text] = len(names) + 1
    if not names:
        raise PresentationSyntaxError(
            reason="no generators declared", line=1, column=1
        )

    relators = _RelatorParser(rel_tokens, names, last_position).parse()
    return Presentation(name=name, gen_names=tuple(names), relators=tuple(relators))


def _runs(word: Word) -> list[tuple[int, int]]:
    runs: list[tuple[int, int]] = []
    for letter in word:
        generator, sign = abs(letter), (1 if letter > 0 else -1)
        if runs and runs[-1][0] == generator:
            runs[-1] = (generator, runs[-1][1] + sign)
        else:
            runs.append((generator, sign))
    return runs


def _format_power(name: str, exponent: int) -> str:
    return name if exponent == 1 else f"{name}^{exponent}"


def format_word(word: Word, gen_names: Sequence[str]) -> str:
    """Human-readable word such as ``a b^-1 a^2``; the empty word is ``1``."""

    if not word:
        return "1"
    return " ".join(_format_power(gen_names[g - 1], e) for g, e in _runs(word))


def _render_relator(word: Word, gen_names: Sequence[str]) -> str:
    runs = _runs(word)
    if len(runs) == 1:
        generator, exponent = runs[0]
        return _format_power(gen_names[generator - 1], exponent)
    return "(" + format_word(word, gen_names) + ")"


def render_presentation(presentation: Presentation) -> str:
    """Render in the text format accepted by :func:`parse_presentation`."""

    rels = " ".join(
        _render_relator(relator, presentation.gen_names)
        for relator in presentation.relators
    )
    lines = [
        f"# {presentation.name}",
        "gens: " + " ".join(presentation.gen_names),
        f"rels: {rels}".rstrip(),
    ]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Abelianization
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class IntegerMatrix:
    """Dense integer matrix; entries are exact Python integers."""

    entries: np.ndarray

    @classmethod
    def from_rows(
        cls, rows: Iterable[Iterable[int]], cols: int | None = None
    ) -> IntegerMatrix:
        data = [[int(x) for x in row] for row in rows]
        width = cols if cols is not None else (len(data[0]) if data else 0)
        if any(len(row) != width for row in data):
            raise ValueError("ragged integer matrix")
        array = np.zeros((len(data), width), dtype=object)
        for i, row in enumerate(data):
            for j, value in enumerate(row):
                array[i, j] = value
        return cls(array)

    @property
    def rows(self) -> int:
        return int(self.entries.shape[0])

    @property
    def cols(self) -> int:
        return int(self.entries.shape[1])


def exponent_sum_matrix(presentation: Presentation) -> IntegerMatrix:
    """Relator-by-generator matrix of exponent sums."""

    rows: list[list[int]] = []
    for relator in presentation.relators:
        row = [0] * presentation.rank
        for letter in relator:
            row[abs(letter) - 1] += 1 if letter > 0 else -1
        rows.append(row)
    return IntegerMatrix.from_rows(rows, cols=presentation.rank)


def _min_abs_entry(a: np.ndarray, s: int) -> tuple[int, int] | None:
    best: tuple[int, int] | None = None
    best_value = 0
    rows, cols = a.shape
    for i in range(s, rows):
        for j in range(s, cols):
            value = abs(a[i, j])
            if value and (best is None or value < best_value):
                best, best_value = (i, j), value
    return best


def smith_normal_form(matrix: IntegerMatrix) -> tuple[int, ...]:
    """Return the nonzero invariant factors ``d1 | d2 | ... | dk``.

    Plain integer elimination; the pivot is always an entry of minimal
    nonzero absolute value in the remaining block.
    """

    a = matrix.entries.copy()
    rows, cols = a.shape
    diagonal: list[int] = []
    s = 0
    while s < min(rows, cols):
        pivot = _min_abs_entry(a, s)
        if pivot is None:
            break
        i, j = pivot
        a[[s, i]] = a[[i, s]]
        a[:, [s, j]] = a[:, [j, s]]
        p = a[s, s]

        cleared = True
        for r in range(s + 1, rows):
            if a[r, s]:
                a[r] = a[r] - (a[r, s] // p) * a[s]
                cleared = cleared and not a[r, s]
        for c in range(s + 1, cols):
            if a[s, c]:
                a[:, c] = a[:, c] - (a[s, c] // p) * a[:, s]
                cleared = cleared and not a[s, c]
        if not cleared:
            # a nonzero remainder is now smaller than the pivot
            continue

        offender = next(
            (
                r
                for r in range(s + 1, rows)
                for c in range(s + 1, cols)
                if a[r, c] % p
            ),
            None,
        )
        if offender is not None:
            a[s] = a[s] + a[offender]
            continue

        diagonal.append(abs(int(p)))
        s += 1
    return tuple(diagonal)


def prime_power_factors(n: int) -> list[int]:
    """Split ``n`` into its prime-power factors, ascending."""

    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    return sorted(int(p) ** int(e) for p, e in factorint(n).items())


def primary_invariants(factors: Iterable[int]) -> tuple[int, ...]:
    """Prime-power decomposition of a product of cyclic groups of the given orders."""

    invariants: list[int] = []
    for factor in factors:
        if factor > 1:
            invariants.extend(prime_power_factors(factor))
    return tuple(sorted(invariants))


@dataclass(frozen=True, slots=True)
class AbelianInvariants:
    """Torsion invariants (prime powers) and free rank of an abelian group."""

    torsion: tuple[int, ...]
    free_rank: int = 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        if not self.is_finite:
            return None
        result = 1
        for q in self.torsion:
            result *= q
        return result


def abelianization_invariants(presentation: Presentation) -> AbelianInvariants:
    """Invariants of ``G/G'`` from the Smith normal form of the relator matrix."""

    diagonal = smith_normal_form(exponent_sum_matrix(presentation))
    return AbelianInvariants(
        torsion=primary_invariants(diagonal),
        free_rank=presentation.rank - len(diagonal),
    )


def generator_names(count: int) -> tuple[str, ...]:
    """Default generator names ``a, b, c, ...`` (``x27, x28, ...`` past ``z``)."""

    letters = string.ascii_lowercase
    return tuple(letters[i] if i < len(letters) else f"x{i + 1}" for i in range(count))


def abelian_presentation(invariants: Sequence[int], name: str = "A") -> Presentation:
    """Presentation of the direct product of cyclic groups of the given orders."""

    orders = [q for q in invariants if q > 1]
    if not orders:
        return Presentation(name=name, gen_names=("a",), relators=(Word.of(1),))
    relators = [power(Word.generator(i + 1), q) for i, q in enumerate(orders)]
    for i in range(len(orders)):
        for j in range(i + 1, len(orders)):
            relators.append(commutator(Word.generator(i + 1), Word.generator(j + 1)))
    return Presentation(
        name=name, gen_names=generator_names(len(orders)), relators=tuple(relators)
    )
