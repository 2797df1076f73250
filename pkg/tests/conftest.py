from __future__ import annotations

import pytest

from sl3webs.config import Settings, set_settings


@pytest.fixture(autouse=True)
def _default_settings(monkeypatch):
  for name in ("MAX_EDGES", "MAX_CATALOG_EDGES", "MAX_REDUCTION_STEPS", "MAX_TERMS", "TYPE_CUTOFF", "RNG_SEED", "LOG_LEVEL"):
    monkeypatch.delenv(f"SL3WEBS_{name}", raising=False)
  set_settings(Settings())
  yield
  set_settings(None)


@pytest.fixture
def crossed():
  """Edges 1-3 and 2-4 of ``[●●○○]`` meeting at one crossing."""
  from sl3webs.diagram import DiagramBuilder, Signature

  b = DiagramBuilder(Signature.parse("bbww"))
  c = b.crossing("c")
  e1, e2 = b.edge(1, c), b.edge(2, c)
  e3, e4 = b.edge(c, 3), b.edge(c, 4)
  b.rotate(c, [e1, e2, e3, e4])
  return b.build()
