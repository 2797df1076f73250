from __future__ import annotations

import os
from dataclasses import dataclass, replace


ENV_PREFIX = "SL3WEBS_"


def _env_int(name: str, default: int) -> int:
  raw = os.getenv(ENV_PREFIX + name) or ""
  raw = raw.strip()
  if not raw:
    return default
  try:
    return int(raw)
  except ValueError as e:
    raise ValueError(f"{ENV_PREFIX}{name} must be an integer, got {raw!r}") from e


@dataclass(frozen=True)
class Settings:
  max_edges: int = 40
  max_catalog_edges: int = 200
  max_reduction_steps: int = 100_000
  max_terms: int = 20_000
  type_cutoff: int = 100_000
  rng_seed: int = 20240601
  log_level: str = "WARNING"

  def with_overrides(self, **changes: object) -> "Settings":
    clean = {k: v for k, v in changes.items() if v is not None}
    return replace(self, **clean)


def load_settings() -> Settings:
  return Settings(
    max_edges=_env_int("MAX_EDGES", 40),
    max_catalog_edges=_env_int("MAX_CATALOG_EDGES", 200),
    max_reduction_steps=_env_int("MAX_REDUCTION_STEPS", 100_000),
    max_terms=_env_int("MAX_TERMS", 20_000),
    type_cutoff=_env_int("TYPE_CUTOFF", 100_000),
    rng_seed=_env_int("RNG_SEED", 20240601),
    log_level=(os.getenv(ENV_PREFIX + "LOG_LEVEL") or "WARNING").upper(),
  )


_SETTINGS: Settings | None = None


def get_settings() -> Settings:
  global _SETTINGS
  if _SETTINGS is not None:
    return _SETTINGS
  _SETTINGS = load_settings()
  return _SETTINGS


def set_settings(settings: Settings | None) -> None:
  """Install process-wide settings (``None`` re-reads the environment on next use)."""
  global _SETTINGS
  _SETTINGS = settings
