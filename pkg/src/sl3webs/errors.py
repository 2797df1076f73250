from __future__ import annotations


class Sl3WebsError(RuntimeError):
  pass


class ResourceLimit(Sl3WebsError):
  pass


class ZeroDivisor(ZeroDivisionError):
  pass


class DegreeNonZero(ValueError):
  pass


class AlternatingSignature(ValueError):
  pass


class ZeroInvariant(ValueError):
  pass


class PreconditionViolated(ValueError):
  pass


class IncompleteRelations(Sl3WebsError):
  def __init__(self, message: str, missing: list[str] | None = None) -> None:
    super().__init__(message)
    self.missing = list(missing or [])


class FrozenVertex(ValueError):
  pass


class NotADiagonal(ValueError):
  pass


class StaleStep(ValueError):
  pass


class UnsupportedPattern(Sl3WebsError):
  pass


class Inconsistent(Sl3WebsError):
  pass


class NonIntegral(Sl3WebsError):
  pass


class InvalidDiagram(ValueError):
  def __init__(self, violations: list[str]) -> None:
    super().__init__("; ".join(violations) if violations else "invalid diagram")
    self.violations = list(violations)
