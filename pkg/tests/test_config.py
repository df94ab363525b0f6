import os

import pytest

from khoma.config import get_settings, load_settings
from khoma.decorators import checker, crossing_guard
from khoma.exceptions import CrossingLimitError
from khoma.khovanov import build_cube


def test_defaults(monkeypatch):
    for name in ("KHOMA_MAX_CROSSINGS", "KHOMA_WARN_CROSSINGS", "KHOMA_MAX_COLORING_ARCS", "DEBUG_MODE"):
        monkeypatch.delenv(name, raising=False)
    settings = get_settings()
    assert (settings.max_crossings, settings.warn_crossings, settings.max_coloring_arcs) == (16, 20, 24)
    assert settings.debug_mode is False


DOTENV_NAMES = ("KHOMA_MAX_CROSSINGS", "DEBUG_MODE")


def _clear_dotenv_names(monkeypatch):
    # setenv first so teardown also removes what load_dotenv writes
    for name in DOTENV_NAMES:
        monkeypatch.setenv(name, "")
        monkeypatch.delenv(name)


def _write_env(tmp_path):
    env = tmp_path / ".env"
    env.write_text("KHOMA_MAX_CROSSINGS=5\nDEBUG_MODE=true\n")
    return env


def test_dotenv_file(tmp_path, monkeypatch):
    _clear_dotenv_names(monkeypatch)
    env = _write_env(tmp_path)
    settings = load_settings(str(env))
    assert settings.max_crossings == 5
    assert settings.debug_mode is True


def test_dotenv_values_are_undone(tmp_path):
    before = {name: os.environ.get(name) for name in DOTENV_NAMES}
    with pytest.MonkeyPatch.context() as patch:
        _clear_dotenv_names(patch)
        assert load_settings(str(_write_env(tmp_path))).max_crossings == 5
    assert {name: os.environ.get(name) for name in DOTENV_NAMES} == before


def test_crossing_limit(trefoil_left, monkeypatch):
    monkeypatch.setenv("KHOMA_MAX_CROSSINGS", "2")
    with pytest.raises(CrossingLimitError) as info:
        build_cube(trefoil_left)
    assert info.value.crossings == 3
    assert info.value.limit == 2


def test_decorators_attach_metadata():
    @checker("demo", "A demo checker")
    def demo(diagram):
        return diagram

    @crossing_guard()
    def guarded(diagram):
        return diagram

    assert demo._is_checker and demo._checker_name == "demo"
    assert demo._checker_description == "A demo checker"
    assert guarded._guarded_operation == "guarded"
