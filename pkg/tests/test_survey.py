from __future__ import annotations

import io

import pytest

from chi_forge import survey
from chi_forge.catalog import CATALOG
from chi_forge.status import StatusReporter
from chi_forge.survey import (
    EntryFailure,
    SurveySettings,
    _analyze_safely,
    analyze_entry,
    run_survey,
)


def quiet_reporter() -> StatusReporter:
    return StatusReporter(stream=io.StringIO(), disable=True, quiet=True)


def test_settings_are_plain_values(run_config):
    settings = SurveySettings.from_config(run_config(command="survey", engel_max=0))

    assert settings.strategy == "hlt"
    assert settings.nu_scope == "elements"
    assert settings.engel_max == 0


def test_nu_is_skipped_at_the_guard(monkeypatch, run_config):
    monkeypatch.setattr(survey, "NU_ORDER_GUARD", 3)
    settings = SurveySettings.from_config(run_config(command="survey", engel_max=0))

    assert analyze_entry(CATALOG["C2"], settings).nu is not None
    assert analyze_entry(CATALOG["C3"], settings).nu is None


def test_failures_become_values(run_config):
    settings = SurveySettings.from_config(run_config(command="survey", max_cosets=2))

    outcome = _analyze_safely(CATALOG["S3"], settings)

    assert isinstance(outcome, EntryFailure)
    assert outcome.kind == "CosetOverflowError"
    assert outcome.context["limit"] == 2


def test_rows_follow_the_entry_order(run_config):
    entries = [CATALOG["C3"], CATALOG["C2"], CATALOG["C2xC2"]]

    report = run_survey(
        run_config(command="survey", engel_max=0),
        entries=entries,
        reporter=quiet_reporter(),
    )

    assert [row.name for row in report.rows] == ["C3", "C2", "C2xC2"]
    assert all(row.ok for row in report.rows)
    assert report.all_checks_pass
    assert not report.errored


def test_errors_are_recorded_per_row(run_config):
    reporter = quiet_reporter()

    report = run_survey(
        run_config(command="survey", max_cosets=2, engel_max=0),
        entries=[CATALOG["S3"]],
        reporter=reporter,
    )

    error = report.rows[0].error
    assert error is not None
    assert error.context["error"] == "CosetOverflowError"
    assert reporter.errors == [error]
    assert report.errored
    assert reporter.finished == 1
    assert reporter.summary() == "0 of 1 groups analyzed, 1 failed"


@pytest.mark.slow
def test_worker_pool_matches_serial_run(run_config):
    entries = [CATALOG[name] for name in ("C2", "C3", "C4", "C2xC2", "S3")]

    serial = run_survey(
        run_config(command="survey", engel_max=0),
        entries=entries,
        reporter=quiet_reporter(),
    )
    parallel = run_survey(
        run_config(command="survey", engel_max=0, workers=2),
        entries=entries,
        reporter=quiet_reporter(),
    )

    assert [row.analysis for row in serial.rows] == [
        row.analysis for row in parallel.rows
    ]
