from __future__ import annotations

import json

import pytest

from sl3webs.algebra import to_text
from sl3webs.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, run
from sl3webs.diagram import diagram_to_doc
from sl3webs.evaluate import evaluate
from sl3webs.thicken import tripod_web


@pytest.fixture
def tripod_file(tmp_path):
  path = tmp_path / "tripod.json"
  path.write_text(diagram_to_doc(tripod_web().diagram).model_dump_json(), encoding="utf-8")
  return path


def _json(capsys) -> dict:
  return json.loads(capsys.readouterr().out)


def test_eval(tripod_file, capsys):
  assert run(["eval", "-i", str(tripod_file)]) == EXIT_OK
  out = _json(capsys)
  assert out == {"signature": "bbb", "polynomial": to_text(evaluate(tripod_web().diagram))}


def test_missing_file_is_a_usage_error(tmp_path):
  assert run(["eval", "-i", str(tmp_path / "missing.json")]) == EXIT_USAGE


def test_missing_argument_is_a_usage_error(capsys):
  assert run(["eval"]) == EXIT_USAGE
  assert "--input" in capsys.readouterr().err


def test_enumerate(capsys):
  assert run(["enumerate", "--signature", "bbww", "--multidegree", "1,1,1,1"]) == EXIT_OK
  out = _json(capsys)
  assert out["component"] == "bbww[1,1,1,1]"
  assert out["count"] == 2


def test_thicken_with_check(tripod_file, capsys):
  assert run(["thicken", "-k", "2", "-i", str(tripod_file), "--check"]) == EXIT_OK
  out = _json(capsys)
  assert out["power_check"] is True
  assert len(out["web"]["edges"]) == 9


def test_arborize(tripod_file, capsys):
  assert run(["arborize", "-i", str(tripod_file)]) == EXIT_OK
  out = _json(capsys)
  assert out["classification"] == "conjectured-cluster-variable"
  assert out["components"] == 1


def test_special(capsys):
  assert run(["special", "--signature", "bbbww", "--name", "J_2^5"]) == EXIT_OK
  out = _json(capsys)
  assert out["name"] == "J_2^5"
  assert out["zero"] is False
  assert out["polynomial"]


def test_type(capsys):
  assert run(["type", "--signature", "bbbww"]) == EXIT_OK
  out = _json(capsys)
  assert (out["type"], out["expected"], out["finite"]) == ("A2", "A2", True)


def test_seed_then_mutate(tmp_path, capsys):
  assert run(["seed", "--signature", "bbbww", "--triangulation", "2-4,2-5"]) == EXIT_OK
  raw = capsys.readouterr().out
  doc = json.loads(raw)
  assert doc["triangulation"] == "2-4,2-5"
  mutable = [v["vertex"] for v in doc["variables"] if not v["frozen"]]
  assert len(mutable) == 2
  path = tmp_path / "seed.json"
  path.write_text(raw, encoding="utf-8")

  assert run(["mutate", "-i", str(path), "--at", mutable[0]]) == EXIT_OK
  out = _json(capsys)
  changed = {v["vertex"]: v for v in out["variables"]}[mutable[0]]
  assert changed["name"] == doc_name(doc, mutable[0]) + "'"

  assert run(["mutate", "-i", str(path), "--at", mutable[0], "--at", mutable[0]]) == EXIT_OK
  twice = _json(capsys)
  before = {v["vertex"]: v["numerator"] for v in doc["variables"]}
  assert {v["vertex"]: v["numerator"] for v in twice["variables"]} == before


def doc_name(doc: dict, vertex: str) -> str:
  return next(v["name"] for v in doc["variables"] if v["vertex"] == vertex)


def test_seed_dot(capsys):
  assert run(["seed", "--signature", "bbbww", "--triangulation", "2-4,2-5", "--dot"]) == EXIT_OK
  assert capsys.readouterr().out.startswith("digraph Q {")


def test_mutating_a_frozen_vertex_fails(tmp_path, capsys):
  run(["seed", "--signature", "bbbww", "--triangulation", "2-4,2-5"])
  raw = capsys.readouterr().out
  frozen = next(v["vertex"] for v in json.loads(raw)["variables"] if v["frozen"])
  path = tmp_path / "seed.json"
  path.write_text(raw, encoding="utf-8")
  assert run(["mutate", "-i", str(path), "--at", frozen]) == EXIT_FAILED


def test_verify_list_and_unknown_check(capsys):
  assert run(["verify", "--list"]) == EXIT_OK
  names = capsys.readouterr().out.split()
  assert "closed-webs" in names
  assert run(["verify", "--check", "no-such-check"]) == EXIT_USAGE


def test_verify_json(capsys):
  assert run(["verify", "--check", "closed-webs", "--json"]) == EXIT_OK
  out = _json(capsys)
  assert out["suite"] == "acceptance"
  assert [r["name"] for r in out["rows"]] == ["closed-webs"]
  assert out["rows"][0]["passed"] is True
