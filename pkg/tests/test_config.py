from __future__ import annotations

import pytest

from sl3webs.config import Settings, get_settings, load_settings, set_settings


def test_defaults_without_environment():
  s = load_settings()
  assert s == Settings()
  assert s.log_level == "WARNING"


def test_environment_overrides(monkeypatch):
  monkeypatch.setenv("SL3WEBS_MAX_EDGES", " 12 ")
  monkeypatch.setenv("SL3WEBS_LOG_LEVEL", "debug")
  s = load_settings()
  assert s.max_edges == 12
  assert s.log_level == "DEBUG"


def test_bad_integer_is_reported(monkeypatch):
  monkeypatch.setenv("SL3WEBS_TYPE_CUTOFF", "lots")
  with pytest.raises(ValueError, match="SL3WEBS_TYPE_CUTOFF"):
    load_settings()


def test_with_overrides_ignores_none():
  s = Settings().with_overrides(rng_seed=None, max_terms=7)
  assert s.max_terms == 7
  assert s.rng_seed == Settings().rng_seed


def test_installed_settings_are_shared():
  set_settings(Settings(max_edges=5))
  assert get_settings().max_edges == 5
