"""Run the full analysis over every catalog entry."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .analysis import ChiAnalysis, analyze_group
from .catalog import CatalogEntry, survey_entries
from .config import NU_ORDER_GUARD, RunConfig
from .errors import ChiForgeError
from .report import SurveyReport, SurveyRow
from .status import StatusReporter

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class SurveySettings:
    """The picklable part of a run configuration a worker needs."""

    max_cosets: int
    strategy: str
    chi_scope: str
    nu_scope: str
    engel_max: int
    element_limit: int
    allow_large_nu: bool

    @classmethod
    def from_config(cls, cfg: RunConfig) -> SurveySettings:
        return cls(
            max_cosets=cfg.max_cosets,
            strategy=cfg.strategy.value,
            chi_scope=cfg.chi_scope.value,
            nu_scope=cfg.nu_scope.value,
            engel_max=cfg.engel_max,
            element_limit=cfg.element_limit,
            allow_large_nu=cfg.allow_large_nu,
        )


@dataclass(frozen=True, slots=True)
class EntryFailure:
    """A failed analysis, in a form that crosses process boundaries."""

    reason: str
    context: dict[str, object]
    kind: str


def analyze_entry(entry: CatalogEntry, settings: SurveySettings) -> ChiAnalysis:
    with_nu = settings.allow_large_nu or entry.order < NU_ORDER_GUARD
    return analyze_group(
        entry.presentation,
        declared_multiplier=entry.multiplier,
        max_cosets=settings.max_cosets,
        strategy=settings.strategy,
        chi_scope=settings.chi_scope,
        engel_max=settings.engel_max,
        element_limit=settings.element_limit,
        nu_scope=settings.nu_scope if with_nu else None,
    )


def _analyze_safely(
    entry: CatalogEntry, settings: SurveySettings
) -> ChiAnalysis | EntryFailure:
    try:
        return analyze_entry(entry, settings)
    except ChiForgeError as exc:
        return EntryFailure(exc.reason, exc.context, type(exc).__name__)


def _record(
    rows: dict[str, SurveyRow],
    reporter: StatusReporter,
    name: str,
    outcome: ChiAnalysis | EntryFailure,
) -> None:
    if isinstance(outcome, EntryFailure):
        reporter.report_error(
            "Analyze",
            name,
            reason=outcome.reason,
            context={**outcome.context, "error": outcome.kind},
        )
        rows[name] = SurveyRow(name=name, error=reporter.errors[-1])
    else:
        verdict = "all checks pass" if outcome.all_checks_pass else "checks failed"
        reporter.log_status(
            "Analyzed", f"{name}: |chi| = {outcome.order_chi}, {verdict}"
        )
        rows[name] = SurveyRow(name=name, analysis=outcome)
    reporter.advance()


def run_survey(
    cfg: RunConfig,
    *,
    entries: Sequence[CatalogEntry] | None = None,
    reporter: StatusReporter | None = None,
) -> SurveyReport:
    """Analyze each entry; rows come back in catalog survey order."""

    entries = list(survey_entries() if entries is None else entries)
    settings = SurveySettings.from_config(cfg)
    reporter = reporter or StatusReporter(
        total=len(entries), description="Survey", quiet=not cfg.verbose
    )
    rows: dict[str, SurveyRow] = {}
    with reporter:
        if cfg.workers > 1 and len(entries) > 1:
            logger.debug("survey fan-out over %d workers", cfg.workers)
            with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
                futures = [
                    pool.submit(_analyze_safely, entry, settings) for entry in entries
                ]
                for entry, future in zip(entries, futures):
                    _record(rows, reporter, entry.name, future.result())
        else:
            for entry in entries:
                _record(rows, reporter, entry.name, _analyze_safely(entry, settings))
        reporter.log_status("Survey", reporter.summary())
    return SurveyReport(rows=[rows[entry.name] for entry in entries])
