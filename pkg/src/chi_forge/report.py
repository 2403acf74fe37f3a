"""Text, JSON and CSV renderings of command results."""

from __future__ import annotations

import contextlib
import csv
import io
import json
import os
import tempfile
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path

from .analysis import ChiAnalysis, NuComparison
from .config import OutputFormat
from .status import StatusError

CSV_HEADER = (
    "name",
    "|G|",
    "exp(G)",
    "|chi|",
    "exp(chi)",
    "|L|",
    "|D|",
    "|W|",
    "|R|",
    "|T3|",
    "|T_chi|",
    "M(G)",
    "all_checks_pass",
)


@dataclass(frozen=True, slots=True)
class EnumerationReport:
    group_name: str
    order: int
    defined: int
    strategy: str
    permutations: tuple[tuple[str, str], ...] = ()

    def as_dict(self) -> dict[str, object]:
        payload: dict[str, object] = {
            "group_name": self.group_name,
            "order": self.order,
            "cosets_defined": self.defined,
            "strategy": self.strategy,
        }
        if self.permutations:
            payload["permutations"] = dict(self.permutations)
        return payload


@dataclass(frozen=True, slots=True)
class SurveyRow:
    name: str
    analysis: ChiAnalysis | None = None
    error: StatusError | None = None

    @property
    def ok(self) -> bool:
        return self.error is None and self.analysis is not None


@dataclass(slots=True)
class SurveyReport:
    rows: list[SurveyRow] = field(default_factory=lambda: [])

    @property
    def errored(self) -> bool:
        return any(row.error is not None for row in self.rows)

    @property
    def all_checks_pass(self) -> bool:
        return all(
            row.analysis is None or row.analysis.all_checks_pass for row in self.rows
        )


def dumps_json(payload: object) -> str:
    """Single JSON document, two-space indent, newline terminated."""

    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def format_invariants(invariants: Sequence[int]) -> str:
    """``2x2x2`` style rendering; the trivial group is ``1``."""

    return "x".join(str(q) for q in invariants) if invariants else "1"


def _csv(rows: Iterable[Sequence[object]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(rows)
    return buffer.getvalue()


def analysis_csv_row(a: ChiAnalysis) -> list[object]:
    return [
        a.group_name,
        a.order_G,
        a.exp_G,
        a.order_chi,
        a.exp_chi,
        a.order_L,
        a.order_D,
        a.order_W,
        a.order_R,
        a.order_T3,
        a.t_chi_size,
        format_invariants(a.w_mod_r_invariants),
        str(a.all_checks_pass).lower(),
    ]


def _error_csv_row(row: SurveyRow) -> list[object]:
    return [row.name, *([""] * (len(CSV_HEADER) - 2)), "error"]


# ---------------------------------------------------------------------------
# enumerate
# ---------------------------------------------------------------------------


def render_enumeration(report: EnumerationReport, fmt: OutputFormat) -> str:
    if fmt is OutputFormat.JSON:
        return dumps_json(report.as_dict())
    if fmt is OutputFormat.CSV:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(("name", "order", "cosets_defined", "strategy"))
        writer.writerow(
            (report.group_name, report.order, report.defined, report.strategy)
        )
        return buffer.getvalue()
    lines = [
        f"group: {report.group_name}",
        f"order: {report.order}",
        f"cosets defined: {report.defined} ({report.strategy})",
    ]
    lines.extend(f"  {name} -> {cycles}" for name, cycles in report.permutations)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------


def _text_analysis(a: ChiAnalysis) -> list[str]:
    lines = [
        f"group: {a.group_name}",
        f"|G| = {a.order_G}, exp(G) = {a.exp_G}, |G'| = {a.derived_order_G}, "
        f"G^ab = {format_invariants(a.g_ab_invariants)}",
        f"|chi| = {a.order_chi}, exp(chi) = {a.exp_chi} ({a.chi_scope} relators: "
        f"{a.chi_relator_count})",
        f"|L| = {a.order_L} (exp {a.exp_L}, exp L' {a.exp_L_derived})",
        f"|D| = {a.order_D} (exp {a.exp_D})",
        f"|W| = {a.order_W} (exp {a.exp_W}), |R| = {a.order_R}",
        f"|T(G)| = {a.order_T3}, |T_chi| = {a.t_chi_size}",
        f"W/R = {format_invariants(a.w_mod_r_invariants)}"
        + (
            ""
            if a.declared_multiplier is None
            else f" (declared M(G) = {format_invariants(a.declared_multiplier)})"
        ),
        "tensor orders: "
        + ", ".join(
            f"{order}x{count}" for order, count in a.tensor_order_stats.items()
        ),
    ]
    if a.p_power_orders:
        lines.append(
            "p-power tensor orders: "
            + ", ".join(
                f"{p}: {'yes' if ok else 'no'}" for p, ok in a.p_power_orders.items()
            )
        )
    if a.engel_degrees is not None:
        found = [s.degree for s in a.engel_degrees if s.degree is not None]
        missing = len(a.engel_degrees) - len(found)
        lines.append(
            f"engel degrees: {len(a.engel_degrees)} samples, "
            f"max {max(found, default=0)}"
            + (f", {missing} not found" if missing else "")
        )
    lines.append("checks:")
    for name, check in a.checks.items():
        mark = "PASS" if check.passed else "FAIL"
        suffix = f" ({check.witness})" if check.witness else ""
        lines.append(f"  [{mark}] {name}{suffix}")
    if a.nu is not None:
        lines.extend(_text_nu(a.nu))
    lines.append(f"all checks pass: {'yes' if a.all_checks_pass else 'no'}")
    return lines


def render_analysis(a: ChiAnalysis, fmt: OutputFormat) -> str:
    if fmt is OutputFormat.JSON:
        return dumps_json(a.as_dict())
    if fmt is OutputFormat.CSV:
        return _csv([analysis_csv_row(a)])
    return "\n".join(_text_analysis(a)) + "\n"


# ---------------------------------------------------------------------------
# nu-compare
# ---------------------------------------------------------------------------


def _text_nu(nu: NuComparison) -> list[str]:
    generator_scope = (
        "not enumerated"
        if nu.order_nu_generator_scope is None
        else str(nu.order_nu_generator_scope)
    )
    return [
        f"|nu| = {nu.order_nu} ({nu.scope} relators), generator-scope |nu| = "
        f"{generator_scope}",
        f"|Delta| = {nu.order_delta} (generated {nu.order_delta_generated}, "
        f"closure {'enlarged' if nu.closure_enlarged else 'not needed'})",
        f"|G (x) G| = {nu.tensor_square_order}",
        f"|chi| = {nu.order_chi}, |R| = {nu.order_R}",
        f"|nu|/|Delta| = |chi|/|R|: {'pass' if nu.passed else 'FAIL'}",
    ]


def render_nu(nu: NuComparison, fmt: OutputFormat) -> str:
    if fmt is OutputFormat.JSON:
        return dumps_json(nu.as_dict())
    if fmt is OutputFormat.CSV:
        payload = nu.as_dict()
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(payload.keys())
        writer.writerow(
            ""
            if value is None
            else str(value).lower()
            if isinstance(value, bool)
            else value
            for value in payload.values()
        )
        return buffer.getvalue()
    return "\n".join([f"group: {nu.group_name}", *_text_nu(nu)]) + "\n"


# ---------------------------------------------------------------------------
# survey
# ---------------------------------------------------------------------------


def render_survey(report: SurveyReport, fmt: OutputFormat) -> str:
    if fmt is OutputFormat.CSV:
        return _csv(
            analysis_csv_row(row.analysis)
            if row.analysis is not None
            else _error_csv_row(row)
            for row in report.rows
        )
    if fmt is OutputFormat.JSON:
        return dumps_json(
            [
                row.analysis.as_dict()
                if row.analysis is not None
                else {
                    "group_name": row.name,
                    "error": row.error and row.error.as_dict(),
                }
                for row in report.rows
            ]
        )
    lines: list[str] = []
    for row in report.rows:
        if row.analysis is None:
            reason = row.error.reason if row.error is not None else "no result"
            lines.append(f"{row.name}: ERROR {reason}")
            continue
        a = row.analysis
        failed = a.failed_checks()
        lines.append(
            f"{a.group_name}: |G|={a.order_G} |chi|={a.order_chi} |L|={a.order_L} "
            f"|D|={a.order_D} |W|={a.order_W} |R|={a.order_R} "
            f"M(G)={format_invariants(a.w_mod_r_invariants)} "
            + ("all checks pass" if not failed else "FAILED: " + ", ".join(failed))
        )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def write_atomic(path: Path, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and ``os.replace``."""

    directory = path.parent
    directory.mkdir(parents=True, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=str(directory), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp_path, str(path))
    except BaseException:
        with contextlib.suppress(OSError):
            os.unlink(tmp_path)
        raise


def write_output(
    text: str, out: Path | None, printer: Callable[[str], None] = print
) -> None:
    """Send a rendered document to ``out`` or, without one, to the printer."""

    if out is not None:
        write_atomic(out, text)
    else:
        printer(text.rstrip("\n"))
