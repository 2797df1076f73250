from __future__ import annotations

import pytest

from sl3webs.acceptance import (
  AcceptanceCheck,
  AcceptanceRegistry,
  CheckFailed,
  check_closed_webs,
  check_determinant_times_pairing,
  get_default_acceptance_registry,
)
from sl3webs.errors import Inconsistent


def _failing() -> str:
  raise CheckFailed("expected 3, got 4")


def _broken() -> str:
  raise Inconsistent("relations disagree")


@pytest.fixture
def registry():
  r = AcceptanceRegistry()
  r.register(AcceptanceCheck("ok", "always passes", lambda: "fine"))
  r.register(AcceptanceCheck("fails", "always fails", _failing))
  r.register(AcceptanceCheck("broken", "raises a library error", _broken))
  return r


def test_register_and_get(registry):
  assert registry.list_check_names() == ["broken", "fails", "ok"]
  assert registry.get("ok").description == "always passes"
  with pytest.raises(ValueError, match="already registered"):
    registry.register(AcceptanceCheck("ok", "again", lambda: ""))
  with pytest.raises(KeyError, match="Unknown acceptance check"):
    registry.get("missing")


def test_rows_record_failures(registry):
  report = registry.run()
  rows = {r.name: r for r in report.rows}
  assert rows["ok"].passed and rows["ok"].detail == "fine"
  assert not rows["fails"].passed and rows["fails"].detail == "expected 3, got 4"
  assert rows["broken"].detail == "Inconsistent: relations disagree"
  assert not report.passed
  assert "FAIL" in report.table()


def test_run_selected(registry):
  report = registry.run(["ok"], suite="smoke")
  assert report.suite == "smoke"
  assert report.passed
  assert [r.name for r in report.rows] == ["ok"]


def test_default_registry_names():
  names = get_default_acceptance_registry().list_check_names()
  assert len(names) == 15
  assert {"closed-webs", "pentagon", "octagon-seed", "grassmannian", "compatibility"} <= set(names)
  assert get_default_acceptance_registry() is get_default_acceptance_registry()


def test_fast_checks():
  assert check_determinant_times_pairing().endswith("terms")
  assert check_closed_webs() == "loop=3, cube=24, theta=-6"


FAST_CHECKS = {"determinant-pairing", "closed-webs"}


@pytest.mark.parametrize(
  "name",
  [
    name if name in FAST_CHECKS else pytest.param(name, marks=pytest.mark.slow)
    for name in get_default_acceptance_registry().list_check_names()
  ],
)
def test_default_checks_pass(name):
  row = get_default_acceptance_registry().run_check(name)
  assert row.passed, row.detail
