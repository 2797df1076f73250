from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from pathlib import Path
from typing import Any

from dotenv import load_dotenv
from pydantic import BaseModel, ValidationError

from sl3webs.config import get_settings, set_settings


log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _read(path: str) -> str:
  return sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")


def _emit(payload: BaseModel | dict[str, Any] | str) -> None:
  if isinstance(payload, BaseModel):
    print(payload.model_dump_json(indent=2))
  elif isinstance(payload, dict):
    print(json.dumps(payload, indent=2, sort_keys=True))
  else:
    print(payload)


def _web(path: str):
  from sl3webs.contracts import DiagramDoc
  from sl3webs.diagram import as_web, diagram_from_doc

  return as_web(diagram_from_doc(DiagramDoc.model_validate_json(_read(path))))


def _order(args: argparse.Namespace) -> random.Random | None:
  return random.Random(args.rng_seed) if args.rng_seed is not None else None


def _build_parser() -> argparse.ArgumentParser:
  parser = argparse.ArgumentParser(prog="sl3webs")
  parser.add_argument("--log-level", type=str, default=None, help="Logging level for stderr (default from env)")
  parser.add_argument("--rng-seed", type=int, default=None, help="Seed for randomized choices")
  sub = parser.add_subparsers(dest="cmd", required=True)

  ev = sub.add_parser("eval", help="Evaluate a tensor diagram to its invariant polynomial.")
  ev.add_argument("-i", "--input", required=True, help="Diagram JSON ('-' for stdin)")

  red = sub.add_parser("reduce", help="Expand a diagram or combination in the web basis.")
  red.add_argument("-i", "--input", required=True, help="Diagram or combination JSON")

  en = sub.add_parser("enumerate", help="List the non-elliptic webs of a graded component.")
  en.add_argument("--signature", required=True)
  en.add_argument("--multidegree", required=True, help="Comma-separated degrees")

  mul = sub.add_parser("multiply", help="Expand a product of webs in the web basis.")
  mul.add_argument("-i", "--input", action="append", required=True, help="Web JSON (repeat for each factor)")

  sp = sub.add_parser("special", help="Build and factor a special invariant.")
  sp.add_argument("--signature", required=True)
  sp.add_argument("--name", required=True, help="For example J_2^5, J_123, J^123 or J_12^45")
  sp.add_argument("--web", action="store_true", help="Include the planarized web")

  sd = sub.add_parser("seed", help="Seed of a triangulation of the signature polygon.")
  sd.add_argument("--signature", required=True)
  sd.add_argument("--triangulation", default=None, help="Chords like '1-3,1-4' (default: a fan)")
  sd.add_argument("--webs", action="store_true", help="Include the web of each variable")
  sd.add_argument("--dot", action="store_true", help="Print the quiver in DOT instead of JSON")

  mu = sub.add_parser("mutate", help="Mutate a seed document.")
  mu.add_argument("-i", "--input", required=True, help="Seed JSON")
  mu.add_argument("--at", action="append", required=True, help="Vertex to mutate at (repeatable, in order)")

  ty = sub.add_parser("type", help="Cluster type of a signature.")
  ty.add_argument("--signature", required=True)
  ty.add_argument("--cutoff", type=int, default=None, help="Mutation-class search cutoff")
  ty.add_argument("--dot", action="store_true", help="Print the quiver used in DOT instead of JSON")

  ar = sub.add_parser("arborize", help="Arborize a web and classify it.")
  ar.add_argument("-i", "--input", required=True, help="Web JSON")

  th = sub.add_parser("thicken", help="k-thickening of a web.")
  th.add_argument("-k", type=int, required=True)
  th.add_argument("-i", "--input", required=True, help="Web JSON")
  th.add_argument("--check", action="store_true", help="Also compare with the k-th power")

  ve = sub.add_parser("verify", help="Run acceptance checks.")
  ve.add_argument("--suite", choices=["acceptance"], default="acceptance")
  ve.add_argument("--check", action="append", default=None, help="Run only this check (repeatable)")
  ve.add_argument("--list", action="store_true", help="List check names")
  ve.add_argument("--json", action="store_true", help="Print the report as JSON instead of a table")
  return parser


def _dispatch(args: argparse.Namespace) -> int:
  from sl3webs.algebra import to_text
  from sl3webs.diagram import Multidegree, Signature, diagram_from_doc, diagram_to_doc

  if args.cmd == "eval":
    from sl3webs.contracts import DiagramDoc
    from sl3webs.evaluate import evaluate

    d = diagram_from_doc(DiagramDoc.model_validate_json(_read(args.input)))
    _emit({"signature": str(d.signature), "polynomial": to_text(evaluate(d))})
    return EXIT_OK

  if args.cmd == "reduce":
    from sl3webs.contracts import CombinationDoc, DiagramDoc
    from sl3webs.skein import DiagramCombination, combination_from_doc, expansion_to_doc, reduce

    raw = _read(args.input)
    try:
      combo = combination_from_doc(CombinationDoc.model_validate_json(raw))
    except ValidationError:
      combo = DiagramCombination.single(diagram_from_doc(DiagramDoc.model_validate_json(raw)))
    _emit(expansion_to_doc(reduce(combo, _order(args))))
    return EXIT_OK

  if args.cmd == "enumerate":
    from sl3webs.basis import GradedComponent, enumerate_webs

    g = GradedComponent(Signature.parse(args.signature), Multidegree.parse(args.multidegree))
    webs = enumerate_webs(g)
    _emit(
      {
        "component": str(g),
        "count": len(webs),
        "webs": [diagram_to_doc(w.diagram).model_dump(mode="json") for w in webs],
      }
    )
    return EXIT_OK

  if args.cmd == "multiply":
    from sl3webs.basis import multiply
    from sl3webs.skein import WebExpansion, expansion_to_doc

    webs = [_web(p) for p in args.input]
    product = WebExpansion.of_web(webs[0])
    for w in webs[1:]:
      total = WebExpansion.zero(w.signature)
      for left, coef in product.items():
        total = total + multiply(left, w).scaled(coef)
      product = total
    _emit(expansion_to_doc(product))
    return EXIT_OK

  if args.cmd == "special":
    from sl3webs.special import catalog_for, parse_special_name

    sigma = Signature.parse(args.signature)
    cat = catalog_for(sigma)
    name = parse_special_name(args.name).check(sigma.n)
    out: dict[str, Any] = {
      "name": str(name),
      "signature": str(sigma),
      "multidegree": str(cat.multidegree(name)),
      "zero": cat.is_zero(name),
      "diagram": diagram_to_doc(cat.diagram(name)).model_dump(mode="json"),
    }
    if not out["zero"]:
      out["representative"] = str(cat.representative(name))
      out["polynomial"] = to_text(cat.polynomial(name))
      out["factorization"] = str(cat.factorization(name))
      if args.web:
        out["web"] = diagram_to_doc(cat.web(name).diagram).model_dump(mode="json")
    _emit(out)
    return EXIT_OK

  if args.cmd == "seed":
    from sl3webs.seed import build_seed, fan_apex, fan_triangulation, parse_triangulation, seed_to_doc

    sigma = Signature.parse(args.signature)
    if args.triangulation:
      t = parse_triangulation(args.triangulation, sigma.n)
    else:
      t = fan_triangulation(sigma.n, fan_apex(sigma))
    ts = build_seed(sigma, t)
    _emit(ts.quiver.to_dot() if args.dot else seed_to_doc(ts, with_webs=args.webs))
    return EXIT_OK

  if args.cmd == "mutate":
    from sl3webs.cluster.seeds import mutate_sequence
    from sl3webs.contracts import SeedDoc
    from sl3webs.seed import cluster_seed_to_doc, seed_from_doc

    doc = SeedDoc.model_validate_json(_read(args.input))
    seed = mutate_sequence(seed_from_doc(doc), args.at)
    _emit(cluster_seed_to_doc(seed, Signature.parse(doc.signature), doc.triangulation))
    return EXIT_OK

  if args.cmd == "type":
    from sl3webs.cluster.types import detect_type, expected_type
    from sl3webs.seed import seed_for_type

    sigma = Signature.parse(args.signature)
    ts = seed_for_type(sigma)
    if args.dot:
      _emit(ts.quiver.to_dot())
      return EXIT_OK
    label = detect_type(ts.quiver, args.cutoff)
    _emit(
      {
        "signature": str(sigma),
        "type": label.name,
        "finite": label.finite,
        "determined": label.determined,
        "expected": expected_type(sigma),
        "triangulation": str(ts.triangulation),
      }
    )
    return EXIT_OK

  if args.cmd == "arborize":
    from sl3webs.arborize import classify, normal_form_key

    result = classify(_web(args.input))
    _emit(
      {
        "classification": result.label.value,
        "components": result.components,
        "normal_form_key": normal_form_key(result.normal_form),
        "normal_form": diagram_to_doc(result.normal_form).model_dump(mode="json"),
      }
    )
    return EXIT_OK

  if args.cmd == "thicken":
    from sl3webs.thicken import power_check, thicken

    w = _web(args.input)
    out = {"web": diagram_to_doc(thicken(w, args.k).diagram).model_dump(mode="json")}
    if args.check:
      out["power_check"] = power_check(w, args.k)
    _emit(out)
    return EXIT_OK

  if args.cmd == "verify":
    from sl3webs.acceptance import get_default_acceptance_registry

    registry = get_default_acceptance_registry()
    if args.list:
      _emit("\n".join(registry.list_check_names()))
      return EXIT_OK
    report = registry.run(args.check, suite=args.suite)
    _emit(report if args.json else report.table())
    return EXIT_OK if report.passed else EXIT_FAILED

  raise ValueError(f"unknown command {args.cmd!r}")


def run(argv: list[str] | None = None) -> int:
  from sl3webs.errors import ResourceLimit, Sl3WebsError

  parser = _build_parser()
  try:
    args = parser.parse_args(argv)
  except SystemExit as e:
    return int(e.code or 0)

  settings = get_settings().with_overrides(rng_seed=args.rng_seed, log_level=args.log_level)
  set_settings(settings)
  logging.basicConfig(level=settings.log_level.upper(), stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

  try:
    return _dispatch(args)
  except ResourceLimit as e:
    log.error("resource limit: %s", e)
    return EXIT_RESOURCE
  except KeyError as e:
    log.error("%s", e.args[0] if e.args else e)
    return EXIT_USAGE
  except (ValidationError, OSError) as e:
    log.error("bad input: %s", e)
    return EXIT_USAGE
  except (Sl3WebsError, ValueError, ArithmeticError) as e:
    log.error("%s: %s", type(e).__name__, e)
    return EXIT_FAILED


def main() -> None:
  load_dotenv()
  raise SystemExit(run())
