from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator


class InternalVertexDoc(BaseModel):
  model_config = ConfigDict(extra="forbid")

  id: str
  color: Literal["b", "w"]


class CrossingDoc(BaseModel):
  model_config = ConfigDict(extra="forbid")

  id: str
  pairs: list[list[str]] = Field(min_length=2, max_length=2)

  @field_validator("pairs")
  @classmethod
  def _pairs_have_two_ends(cls, v: list[list[str]]) -> list[list[str]]:
    for pair in v:
      if len(pair) != 2:
        raise ValueError("each crossing pair names exactly two edges")
    return v


class EdgeDoc(BaseModel):
  model_config = ConfigDict(extra="forbid")

  id: str
  ends: list[str] = Field(min_length=2, max_length=2)


class DiagramDoc(BaseModel):
  model_config = ConfigDict(extra="forbid")

  signature: str = Field(pattern=r"^[bw]*$")
  internal: list[InternalVertexDoc] = Field(default_factory=list)
  crossings: list[CrossingDoc] = Field(default_factory=list)
  edges: list[EdgeDoc] = Field(default_factory=list)
  rotation: dict[str, list[str]] = Field(default_factory=dict)
  boundary_rotation: dict[str, list[str]] = Field(default_factory=dict)
  loops: int = Field(default=0, ge=0)


class CombinationTermDoc(BaseModel):
  model_config = ConfigDict(extra="forbid")

  coef: str = "1"
  diagram: DiagramDoc


class CombinationDoc(BaseModel):
  model_config = ConfigDict(extra="forbid")

  terms: list[CombinationTermDoc]


class WebTermDoc(BaseModel):
  model_config = ConfigDict(extra="forbid")

  coef: str
  web: DiagramDoc


class WebExpansionDoc(BaseModel):
  model_config = ConfigDict(extra="forbid")

  signature: str
  terms: list[WebTermDoc] = Field(default_factory=list)


class ArrowDoc(BaseModel):
  model_config = ConfigDict(extra="forbid")

  source: str
  target: str
  multiplicity: int = Field(default=1, ge=1)


class QuiverDoc(BaseModel):
  model_config = ConfigDict(extra="forbid")

  vertices: list[str]
  frozen: list[str] = Field(default_factory=list)
  arrows: list[ArrowDoc] = Field(default_factory=list)


class SeedVariableDoc(BaseModel):
  model_config = ConfigDict(extra="forbid")

  vertex: str
  name: str | None = None
  frozen: bool = False
  numerator: str
  denominator: str = "1"
  web: DiagramDoc | None = None


class SeedDoc(BaseModel):
  model_config = ConfigDict(extra="forbid")

  signature: str
  triangulation: str | None = None
  quiver: QuiverDoc
  variables: list[SeedVariableDoc]
  relations: list[str] = Field(default_factory=list)


class SuiteRow(BaseModel):
  model_config = ConfigDict(extra="forbid")

  name: str
  passed: bool
  seconds: float = Field(ge=0.0)
  detail: str = ""


class SuiteReport(BaseModel):
  model_config = ConfigDict(extra="forbid")

  suite: str
  rows: list[SuiteRow]

  @property
  def passed(self) -> bool:
    return all(r.passed for r in self.rows)

  def table(self) -> str:
    width = max([len(r.name) for r in self.rows] + [5])
    lines = [f"{'check'.ljust(width)}  result  seconds  detail"]
    for r in self.rows:
      status = "PASS" if r.passed else "FAIL"
      lines.append(f"{r.name.ljust(width)}  {status:<6}  {r.seconds:7.2f}  {r.detail}")
    return "\n".join(lines)
