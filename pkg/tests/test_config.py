from __future__ import annotations

from pathlib import Path

import pytest

from chi_forge.config import (
    MAX_COSETS_ENV,
    NU_ORDER_GUARD,
    OutputFormat,
    resolve_run_config,
)
from chi_forge.cosets import DEFAULT_MAX_COSETS, Strategy
from chi_forge.errors import ConfigError
from chi_forge.weak_commutativity import RelatorScope


def test_defaults():
    cfg = resolve_run_config({"command": "analyze", "group": "C2"}, environ={})

    assert cfg.max_cosets == DEFAULT_MAX_COSETS
    assert cfg.strategy is Strategy.HLT
    assert cfg.nu_scope is RelatorScope.ELEMENTS
    assert cfg.output_format is OutputFormat.TEXT
    assert cfg.workers == 1
    assert not cfg.allow_large_nu
    assert cfg.has_source


def test_unset_flags_do_not_override():
    cfg = resolve_run_config(
        {"command": "analyze", "group": "C2", "max_cosets": None, "format": None},
        environ={MAX_COSETS_ENV: "5000"},
    )

    assert cfg.max_cosets == 5000
    assert cfg.output_format is OutputFormat.TEXT


def test_flag_wins_over_environment():
    cfg = resolve_run_config(
        {"command": "enumerate", "group": "C2", "max_cosets": 40},
        environ={MAX_COSETS_ENV: "5000"},
    )

    assert cfg.max_cosets == 40


def test_enum_values_are_parsed():
    cfg = resolve_run_config(
        {
            "command": "analyze",
            "file": "g.pres",
            "strategy": "felsch",
            "nu_scope": "generators",
            "format": "json",
            "out": "out/report.json",
        },
        environ={},
    )

    assert cfg.strategy is Strategy.FELSCH
    assert cfg.nu_scope is RelatorScope.GENERATORS
    assert cfg.output_format is OutputFormat.JSON
    assert cfg.file == Path("g.pres")
    assert cfg.out == Path("out/report.json")


def test_nu_guard(run_config):
    assert run_config().nu_allowed(NU_ORDER_GUARD - 1)
    assert not run_config().nu_allowed(NU_ORDER_GUARD)
    assert run_config(allow_large_nu=True).nu_allowed(1000)


@pytest.mark.parametrize(
    ("args", "environ", "message"),
    [
        ({"command": "analyze"}, {}, "needs --group"),
        ({"command": "analyze", "group": "C2", "file": "x"}, {}, "mutually"),
        ({"command": "survey", "group": "C2"}, {}, "takes no group"),
        ({"command": "survey", "max_cosets": 0}, {}, "must be positive"),
        ({"command": "survey"}, {MAX_COSETS_ENV: "lots"}, "must be an integer"),
        ({"command": "survey", "strategy": "guess"}, {}, "one of hlt, felsch"),
        ({"command": "survey", "engel_max": -1}, {}, "must not be negative"),
        ({"command": "survey", "workers": 0}, {}, "workers"),
    ],
)
def test_invalid_configuration(args, environ, message):
    with pytest.raises(ConfigError) as excinfo:
        resolve_run_config(args, environ=environ)

    assert message in excinfo.value.reason


def test_blank_environment_value_is_ignored():
    cfg = resolve_run_config({"command": "survey"}, environ={MAX_COSETS_ENV: "  "})

    assert cfg.max_cosets == DEFAULT_MAX_COSETS
