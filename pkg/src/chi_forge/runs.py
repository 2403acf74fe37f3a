"""Single-group runs behind the ``enumerate``, ``analyze`` and ``nu-compare``
commands."""

from __future__ import annotations

import logging

from .analysis import ChiAnalysis, NuComparison, analyze_group, compare_nu
from .catalog import catalog_entry
from .config import NU_ORDER_GUARD, RunConfig
from .cosets import enumerate_cosets, regular_representation
from .errors import ConfigError, PolicyRefusalError
from .presentation import Presentation, parse_presentation
from .report import EnumerationReport
from .weak_commutativity import element_words

logger = logging.getLogger(__name__)


def load_presentation(cfg: RunConfig) -> tuple[Presentation, tuple[int, ...] | None]:
    """The presentation named by ``cfg`` and its declared multiplier, if any."""

    if cfg.group is not None:
        entry = catalog_entry(cfg.group)
        return entry.presentation, entry.multiplier
    if cfg.file is None:
        raise ConfigError(reason="no group source given")
    try:
        text = cfg.file.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(
            reason=f"cannot read {cfg.file}: {exc.strerror or exc}",
            details={"path": str(cfg.file)},
        ) from exc
    return parse_presentation(text, name=cfg.file.stem), None


def run_enumerate(presentation: Presentation, cfg: RunConfig) -> EnumerationReport:
    table = enumerate_cosets(
        presentation, max_cosets=cfg.max_cosets, strategy=cfg.strategy
    )
    permutations: tuple[tuple[str, str], ...] = ()
    if cfg.show_permutations:
        images = regular_representation(table)
        permutations = tuple(
            (name, image.cycle_notation())
            for name, image in zip(presentation.gen_names, images)
        )
    return EnumerationReport(
        group_name=presentation.name,
        order=table.live_count,
        defined=table.defined,
        strategy=cfg.strategy.value,
        permutations=permutations,
    )


def run_analyze(
    presentation: Presentation,
    cfg: RunConfig,
    declared_multiplier: tuple[int, ...] | None = None,
) -> ChiAnalysis:
    """Full analysis; nu is compared only for groups the size guard admits."""

    words = element_words(presentation, cfg.max_cosets, cfg.strategy)
    with_nu = cfg.nu_allowed(words.order)
    if not with_nu:
        logger.debug("skipping nu for %s of order %d", presentation.name, words.order)
    return analyze_group(
        presentation,
        declared_multiplier=declared_multiplier,
        max_cosets=cfg.max_cosets,
        strategy=cfg.strategy,
        chi_scope=cfg.chi_scope,
        engel_max=cfg.engel_max,
        element_limit=cfg.element_limit,
        nu_scope=cfg.nu_scope if with_nu else None,
        words=words,
    )


def run_nu_compare(presentation: Presentation, cfg: RunConfig) -> NuComparison:
    words = element_words(presentation, cfg.max_cosets, cfg.strategy)
    if not cfg.nu_allowed(words.order):
        raise PolicyRefusalError(
            reason=(
                f"nu({presentation.name}) is only built for groups of order below "
                f"{NU_ORDER_GUARD}; |G| = {words.order}. Pass --allow-large-nu "
                "to override"
            ),
            details={"order": words.order, "guard": NU_ORDER_GUARD},
        )
    return compare_nu(
        presentation,
        words=words,
        scope=cfg.nu_scope,
        max_cosets=cfg.max_cosets,
        strategy=cfg.strategy,
        element_limit=cfg.element_limit,
    )
