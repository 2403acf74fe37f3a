from __future__ import annotations

import pytest

from chi_forge import analysis, config, runs
from chi_forge.catalog import catalog_lookup
from chi_forge.errors import (
    ConfigError,
    CosetOverflowError,
    PolicyRefusalError,
    PresentationSyntaxError,
    UnknownGroupError,
)
from chi_forge.runs import load_presentation, run_analyze, run_enumerate, run_nu_compare


def test_load_catalog_group(run_config):
    presentation, multiplier = load_presentation(run_config(group="c2xc2"))

    assert presentation.name == "C2xC2"
    assert multiplier == (2,)


def test_load_file(run_config, s3_file):
    presentation, multiplier = load_presentation(run_config(file=s3_file))

    assert presentation.name == "s3"
    assert presentation.gen_names == ("a", "b")
    assert len(presentation.relators) == 3
    assert multiplier is None


def test_load_errors(run_config, tmp_path):
    bad = tmp_path / "bad.pres"
    bad.write_text("gens: a\nrels: a^\n", encoding="utf-8")

    with pytest.raises(UnknownGroupError):
        load_presentation(run_config(group="M11"))
    with pytest.raises(ConfigError, match="cannot read"):
        load_presentation(run_config(file=tmp_path / "missing.pres"))
    with pytest.raises(PresentationSyntaxError):
        load_presentation(run_config(file=bad))
    with pytest.raises(ConfigError):
        load_presentation(run_config())


def test_run_enumerate(run_config, s3):
    report = run_enumerate(s3, run_config(command="enumerate", show_permutations=True))

    assert report.order == 6
    assert report.defined >= 6
    assert [name for name, _ in report.permutations] == ["a", "b"]


def test_run_enumerate_overflow(run_config, s3):
    with pytest.raises(CosetOverflowError):
        run_enumerate(s3, run_config(command="enumerate", max_cosets=2))


def test_run_analyze_applies_the_nu_guard(monkeypatch, run_config, c2):
    monkeypatch.setattr(config, "NU_ORDER_GUARD", 2)

    guarded = run_analyze(c2, run_config(engel_max=0))
    with_nu = run_analyze(c2, run_config(engel_max=0, allow_large_nu=True))

    assert guarded.nu is None
    assert with_nu.nu is not None
    assert with_nu.all_checks_pass


def test_run_nu_compare_refuses_large_groups(run_config):
    with pytest.raises(PolicyRefusalError) as excinfo:
        run_nu_compare(catalog_lookup("A4"), run_config(command="nu-compare"))

    assert excinfo.value.context["order"] == 12
    assert "--allow-large-nu" in excinfo.value.reason


def test_run_nu_compare(run_config, c2):
    comparison = run_nu_compare(c2, run_config(command="nu-compare"))

    assert comparison.passed
    assert comparison.order_nu == 8


def test_run_analyze_enumerates_the_group_once(monkeypatch, run_config, s3):
    calls: list[str] = []
    original = runs.element_words

    def counting(presentation, *args, **kwargs):
        calls.append(presentation.name)
        return original(presentation, *args, **kwargs)

    monkeypatch.setattr(runs, "element_words", counting)
    monkeypatch.setattr(analysis, "element_words", counting)

    result = run_analyze(s3, run_config(engel_max=0))

    assert result.order_G == 6
    assert calls.count(s3.name) == 1
