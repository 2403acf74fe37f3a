from __future__ import annotations

import csv
import io
import json

import pytest

from chi_forge.analysis import analyze_group, compare_nu
from chi_forge.catalog import catalog_entry, catalog_lookup
from chi_forge.config import OutputFormat
from chi_forge.report import (
    CSV_HEADER,
    EnumerationReport,
    SurveyReport,
    SurveyRow,
    dumps_json,
    format_invariants,
    render_analysis,
    render_enumeration,
    render_nu,
    render_survey,
    write_atomic,
    write_output,
)
from chi_forge.status import StatusError


@pytest.fixture(scope="module")
def c2xc2_analysis():
    entry = catalog_entry("C2xC2")
    return analyze_group(
        entry.presentation, declared_multiplier=entry.multiplier, engel_max=2
    )


def test_format_invariants():
    assert format_invariants((2, 2, 2)) == "2x2x2"
    assert format_invariants(()) == "1"


def test_dumps_json_is_newline_terminated():
    text = dumps_json({"b": [1, 2]})

    assert text.endswith("}\n")
    assert json.loads(text) == {"b": [1, 2]}


def test_enumeration_renderings():
    report = EnumerationReport("S3", 6, 8, "hlt", (("a", "(0 1)"),))

    assert "order: 6" in render_enumeration(report, OutputFormat.TEXT)
    assert "  a -> (0 1)" in render_enumeration(report, OutputFormat.TEXT)
    payload = json.loads(render_enumeration(report, OutputFormat.JSON))
    assert payload["permutations"] == {"a": "(0 1)"}
    text = render_enumeration(report, OutputFormat.CSV)
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["name", "order", "cosets_defined", "strategy"]
    assert rows[1] == ["S3", "6", "8", "hlt"]


def test_analysis_text(c2xc2_analysis):
    text = render_analysis(c2xc2_analysis, OutputFormat.TEXT)

    assert text.startswith("group: C2xC2\n")
    assert "|chi| = 32" in text
    assert "W/R = 2 (declared M(G) = 2)" in text
    assert "  [PASS] schur" in text
    assert "engel degrees:" in text
    assert text.endswith("all checks pass: yes\n")


def test_analysis_json_round_trips(c2xc2_analysis):
    payload = json.loads(render_analysis(c2xc2_analysis, OutputFormat.JSON))

    assert payload["order_chi"] == 32
    assert payload["all_checks_pass"] is True
    assert payload["checks"]["thmA_order_divides"] == {"pass": True}
    assert payload["checks"]["thmB_sets"] == {"pass": True}


def test_analysis_csv_row(c2xc2_analysis):
    text = render_analysis(c2xc2_analysis, OutputFormat.CSV)
    rows = list(csv.reader(io.StringIO(text)))

    assert tuple(rows[0]) == CSV_HEADER
    record = dict(zip(rows[0], rows[1]))
    assert record["|chi|"] == "32"
    assert record["M(G)"] == "2"
    assert record["all_checks_pass"] == "true"


def test_nu_renderings():
    nu = compare_nu(catalog_lookup("C2"))

    assert "|nu|/|Delta| = |chi|/|R|: pass" in render_nu(nu, OutputFormat.TEXT)
    rows = list(csv.reader(io.StringIO(render_nu(nu, OutputFormat.CSV))))
    record = dict(zip(rows[0], rows[1]))
    assert record["order_nu"] == "8"
    assert record["closure_enlarged"] == "false"


def test_survey_renderings_include_errors(c2xc2_analysis):
    error = StatusError("Analyze", "S3", "coset table overflow")
    report = SurveyReport(
        [SurveyRow("C2xC2", analysis=c2xc2_analysis), SurveyRow("S3", error=error)]
    )

    assert report.errored
    assert report.all_checks_pass
    text = render_survey(report, OutputFormat.TEXT)
    assert "C2xC2: |G|=4 |chi|=32" in text
    assert "S3: ERROR coset table overflow" in text
    rows = list(csv.reader(io.StringIO(render_survey(report, OutputFormat.CSV))))
    assert len(rows) == 3
    assert rows[2][0] == "S3"
    assert rows[2][-1] == "error"
    assert len(rows[2]) == len(CSV_HEADER)
    payload = json.loads(render_survey(report, OutputFormat.JSON))
    assert payload[1]["error"]["reason"] == "coset table overflow"


def test_write_atomic_replaces_the_file(tmp_path):
    target = tmp_path / "reports" / "survey.csv"

    write_atomic(target, "first\n")
    write_atomic(target, "second\n")

    assert target.read_text(encoding="utf-8") == "second\n"
    assert [p.name for p in target.parent.iterdir()] == ["survey.csv"]


def test_write_output_prints_without_a_path():
    printed: list[str] = []

    write_output("order: 2\n", None, printed.append)

    assert printed == ["order: 2"]
