"""End-to-end acceptance checks: worked examples reproduced exactly, plus randomized oracles."""

from __future__ import annotations

import logging
import random
import time
from collections import Counter
from dataclasses import dataclass
from typing import Callable

from sl3webs.algebra import coordinate_vector, determinant3
from sl3webs.arborize import arborize, confluence_trial, forest_components
from sl3webs.basis import (
  GradedComponent,
  dimension_oracle,
  draw_monomial,
  enumerate_webs,
  evaluation_rank,
  generators,
  multiply_drawn,
)
from sl3webs.cluster.flips import MONOCHROMATIC_FLIP_MUTATIONS, flip_graph_check, flip_shape, verify_flip_mutations
from sl3webs.cluster.quiver import Quiver, equivalent_up_to_reversal
from sl3webs.cluster.seeds import laurent_check, mutation_closure, random_sequence
from sl3webs.cluster.types import TYPE_TABLE, cluster_type, detect_type
from sl3webs.config import get_settings
from sl3webs.contracts import SuiteReport, SuiteRow
from sl3webs.diagram import BLACK, WHITE, DiagramBuilder, Signature, TensorDiagram, is_forest_diagram
from sl3webs.errors import Sl3WebsError, UnsupportedPattern
from sl3webs.evaluate import count_proper_colorings, evaluate, evaluate_closed
from sl3webs.seed import (
  ExchangeRelation,
  Triangulation,
  TriangulationSeed,
  all_triangulations,
  build_seed,
  check_pairwise_compatible,
  fan_triangulation,
  grassmannian_labeling,
  grassmannian_labels,
  parse_triangulation,
  quiver_from_relations,
  triangles,
  zigzag_triangulation,
)
from sl3webs.skein import check_expansion, planarize
from sl3webs.special import SpecialCatalog, SpecialMonomial, catalog_for, parse_special_name, special_builder
from sl3webs.thicken import power_check, power_is_thickening, quadripod_web, single_cycle_web, tripod_web


log = logging.getLogger(__name__)

OCTAGON = Signature.parse("wwwbwwwb")
OCTAGON_T = "1-7,2-5,2-7,3-5,5-7"
OCTAGON_VANISHING = ("J_1^2", "J_2^3", "J_3^4", "J_5^6", "J_6^7", "J_7^8", "J_5^4", "J_1^8")
OCTAGON_COEFFICIENTS = ("J_2^1", "J_3^2", "J_4^3", "J_4^5", "J_6^5", "J_7^6", "J_8^7", "J_8^1")
OCTAGON_CLUSTER = ("J_8^2", "J_2^7", "J_1^7", "J_2^5", "J_5^2", "J_7^5", "J_5^3", "J_257")
OCTAGON_FACTORIZATIONS = {"J_3^5": ("J_4^5", "J_5^3"), "J_127": ("J_8^2", "J_2^1", "J_1^7")}
# (variable, partner, m1, m2): variable * partner = m1 + m2
OCTAGON_RELATIONS = (
  ("J_257", "J^257", ("J_8^2", "J_1^7", "J_6^5", "J_2^5"), ("J_7^5", "J_2^7", "J_5^2")),
  ("J_2^7", "J_5^8", ("J_6^5", "J_8^2", "J_2^1"), ("J_257",)),
  ("J_2^5", "J_7^4", ("J_257", "J_4^5"), ("J_3^2", "J_7^5")),
  ("J_5^2", "J_7^3", ("J_8^2", "J_1^7", "J_5^3"), ("J_257",)),
  ("J_7^5", "J_2^6", ("J_2^5", "J_7^6"), ("J_257",)),
  ("J_8^2", "J_25^71", ("J_8^1", "J_2^7", "J_5^2"), ("J_257",)),
  ("J_5^3", "J_4^2", ("J_4^3", "J_5^2"), ("J_3^2",)),
  ("J_1^7", "J_258", ("J_8^7", "J_5^2", "J_2^1"), ("J_257",)),
)

PENTAGON = Signature.parse("bbbww")
PENTAGON_T = "2-4,2-5"
PENTAGON_ARROWS = (
  ("J_2^5", "J_1^5"),
  ("J_3^4", "J_2^4"),
  ("J_2^5", "J_2^4"),
  ("J_12^45", "J_2^5"),
  ("J_2^4", "J_23^45"),
)
PENTAGON_RELATIONS = (
  ("J_1^4", "J_3^5", ("J_1^5", "J_3^4"), ("J_13^45",)),
  ("J_2^4", "J_13^45", ("J_12^45", "J_3^4"), ("J_23^45", "J_1^4")),
  ("J_2^5", "J_1^4", ("J_12^45",), ("J_1^5", "J_2^4")),
  ("J_3^5", "J_2^4", ("J_23^45",), ("J_3^4", "J_2^5")),
  ("J_13^45", "J_2^5", ("J_23^45", "J_1^5"), ("J_12^45", "J_3^5")),
)
PENTAGON_ISOLATED = "J_123"

MONOCHROMATIC_OCTAGON = Signature.parse("bbbbbbbb")
# one triangulation per flip shape, besides the fan and the zigzag
FLIP_SHAPE_TRIANGULATIONS = ("1-3,3-5,5-7,1-7,1-5", "2-4,4-6,2-6,1-6,6-8")

GRASSMANNIAN_CASES = (("bbbbbb", "1-3,3-5,1-5"), ("bbbbbbb", "1-3,3-5,1-5,5-7"), ("bbbbbbbb", "1-3,3-5,5-7,1-7,1-5"))


class CheckFailed(Sl3WebsError):
  pass


def _require(ok: bool, message: str) -> None:
  if not ok:
    raise CheckFailed(message)


# -- sample diagrams --------------------------------------------------------------------------------


def loop_diagram() -> TensorDiagram:
  b = DiagramBuilder(Signature(()))
  b.loops = 1
  return b.build()


def theta_diagram() -> TensorDiagram:
  """Two vertices joined by three edges, drawn in the plane."""
  b = DiagramBuilder(Signature(()))
  t, s = b.vertex(BLACK, "t"), b.vertex(WHITE, "s")
  es = [b.edge(t, s) for _ in range(3)]
  b.rotate(t, es)
  b.rotate(s, es[::-1])
  return b.build()


def cube_diagram() -> TensorDiagram:
  """The 1-skeleton of a cube: an outer and an inner square joined by spokes."""
  b = DiagramBuilder(Signature(()))
  a = [b.vertex(BLACK if i % 2 == 0 else WHITE, f"a{i}") for i in range(4)]
  c = [b.vertex(WHITE if i % 2 == 0 else BLACK, f"b{i}") for i in range(4)]
  outer = [b.edge(a[i], a[(i + 1) % 4]) for i in range(4)]
  spoke = [b.edge(a[i], c[i]) for i in range(4)]
  inner = [b.edge(c[i], c[(i + 1) % 4]) for i in range(4)]
  for i in range(4):
    b.rotate(a[i], [outer[i], spoke[i], outer[i - 1]])
    b.rotate(c[i], [spoke[i], inner[i], inner[i - 1]])
  return b.build()


def determinant_times_pairing_diagram() -> TensorDiagram:
  """``σ = [●●●○]``: white vertices on (1, 2) and (2, 3) joined through a black vertex to 4."""
  b = DiagramBuilder(Signature.parse("bbbw"))
  u, c, v = b.vertex(WHITE, "u"), b.vertex(WHITE, "c"), b.vertex(BLACK, "v")
  u1, u2, uv = b.edge(u, 1), b.edge(u, 2), b.edge(u, v)
  c2, c3, cv = b.edge(c, 2), b.edge(c, 3), b.edge(c, v)
  v4 = b.edge(v, 4)
  b.rotate(u, [u1, u2, uv])
  b.rotate(c, [c2, c3, cv])
  b.rotate(v, [v4, uv, cv])
  b.rotate(2, [c2, u2])
  return b.build()


def random_drawn_diagram(rng: random.Random, max_edges: int = 14, max_crossings: int = 2) -> TensorDiagram:
  """A superposition of a few random generators on a random small signature."""
  for _ in range(200):
    sigma = Signature(tuple(rng.choice((BLACK, WHITE)) for _ in range(rng.randint(3, 6))))
    gens = generators(sigma)
    if not gens:
      continue
    mono = tuple(rng.choice(gens) for _ in range(rng.randint(1, 3)))
    try:
      d = draw_monomial(sigma, mono, rng.randrange(2**31))
    except UnsupportedPattern:
      continue
    if len(d.edges) <= max_edges and len(d.crossings) <= max_crossings:
      return d
  raise UnsupportedPattern("no small random diagram found in 200 tries")


# -- checks -----------------------------------------------------------------------------------------


def check_determinant_times_pairing() -> str:
  d = determinant_times_pairing_diagram()
  x = [coordinate_vector("x", j, 4) for j in (1, 2, 3)]
  y4 = coordinate_vector("y", 4, 4)
  expected = determinant3(x) * (x[1][0] * y4[0] + x[1][1] * y4[1] + x[1][2] * y4[2])
  got = evaluate(d)
  _require(got == expected, f"got {got}")
  return f"{expected.term_count()} terms"


def check_closed_webs() -> str:
  values = {"loop": evaluate_closed(loop_diagram()), "cube": evaluate_closed(cube_diagram())}
  theta = theta_diagram()
  values["theta"] = evaluate_closed(theta)
  _require(values["loop"] == 3, f"loop evaluates to {values['loop']}")
  _require(values["cube"] == 24, f"cube evaluates to {values['cube']}")
  colorings = count_proper_colorings(theta)
  _require(values["theta"] == -colorings == -6, f"theta evaluates to {values['theta']}, {colorings} colorings")
  return ", ".join(f"{k}={v}" for k, v in values.items())


def check_web_counts() -> str:
  out = []
  for sig, md in (("bwbwww", "1,1,1,1,2,1"), ("bbwwww", "1,1,1,1,1,2")):
    webs = enumerate_webs(GradedComponent.parse(sig, md))
    _require(len(webs) == 5, f"{sig}[{md}] has {len(webs)} webs")
    out.append(f"{sig}[{md}]: {len(webs)}")
  return "; ".join(out)


def check_basis_rank() -> str:
  webs = enumerate_webs(GradedComponent.parse("bbbbbb", "1,1,1,1,1,1"))
  rank = evaluation_rank(webs)
  _require(len(webs) == dimension_oracle(6) == 5, f"{len(webs)} webs")
  _require(rank == 5, f"rank {rank}")
  return f"{len(webs)} webs, rank {rank}"


def _reps(cat: SpecialCatalog, names) -> set:
  return {cat.representative(parse_special_name(n)) for n in names}


def check_octagon_specials() -> str:
  cat = catalog_for(OCTAGON)
  vanishing = [n for n in OCTAGON_VANISHING if not cat.is_zero(parse_special_name(n))]
  _require(not vanishing, f"nonzero: {vanishing}")
  coefficients = {cat.representative(c) for c in cat.coefficients}
  _require(coefficients == _reps(cat, OCTAGON_COEFFICIENTS), f"coefficients {sorted(map(str, coefficients))}")
  for name, factors in OCTAGON_FACTORIZATIONS.items():
    nm = parse_special_name(name)
    f = cat.factorization(nm)
    _require(set(f.names()) == _reps(cat, factors) and len(f.names()) == len(factors), f"{name} = {f}")
    _require(cat.polynomial(nm) == cat.polynomial_of(f.monomial) * f.unit, f"{name} is not {f}")
  return f"{len(OCTAGON_VANISHING)} vanishing, {len(coefficients)} coefficients"


def _relations_hold(ts: TriangulationSeed) -> bool:
  cat = catalog_for(ts.signature)
  return all(r.holds(cat) for r in ts.relations)


def _monomial(cat: SpecialCatalog, names) -> SpecialMonomial:
  return SpecialMonomial.of([cat.representative(parse_special_name(n)) for n in names])


def _literal_relation(cat: SpecialCatalog, row) -> ExchangeRelation:
  """A ``(variable, partner, m1, m2)`` row, checked as a polynomial identity."""
  variable, partner, m1, m2 = row
  rel = ExchangeRelation(
    cat.representative(parse_special_name(variable)),
    cat.representative(parse_special_name(partner)),
    _monomial(cat, m1),
    _monomial(cat, m2),
    "literal",
  )
  _require(rel.holds(cat), f"{rel} is not an identity")
  return rel


def _relation_key(cat: SpecialCatalog, r: ExchangeRelation) -> tuple[frozenset, frozenset]:
  """The relation by values, forgetting which side is the variable and which monomial is first."""
  sides = frozenset({cat.polynomial(r.variable), r.partner_value(cat)})
  return sides, frozenset({cat.polynomial_of(r.m1), cat.polynomial_of(r.m2)})


def octagon_seed() -> TriangulationSeed:
  return build_seed(OCTAGON, parse_triangulation(OCTAGON_T, OCTAGON.n))


def check_octagon_seed() -> str:
  ts = octagon_seed()
  cat = catalog_for(OCTAGON)
  _require(len(ts.z) == 16, f"|z(T)| = {len(ts.z)}")
  _require(set(ts.z.cluster) == _reps(cat, OCTAGON_CLUSTER), f"x(T) = {[str(n) for n in ts.z.cluster]}")
  _require(len(ts.relations) == 8 and _relations_hold(ts), "exchange relations")
  literal = [_literal_relation(cat, row) for row in OCTAGON_RELATIONS]
  by_var = {r.variable: r for r in ts.relations}
  for want in literal:
    got = by_var.get(want.variable)
    _require(got is not None, f"no exchange relation for {want.variable}")
    _require(_relation_key(cat, got) == _relation_key(cat, want), f"got {got}, expected {want}")
  expected = quiver_from_relations(ts.z, literal)
  _require(equivalent_up_to_reversal(ts.quiver, expected, {v: v for v in ts.quiver.vertices}), f"quiver {ts.quiver!r}")
  label = detect_type(ts.quiver)
  _require(label.name == "E8", f"type {label}")
  return f"16 variables, {len(literal)} relations as listed, type {label}"


def check_pentagon() -> str:
  ts = build_seed(PENTAGON, parse_triangulation(PENTAGON_T, PENTAGON.n))
  cat = catalog_for(PENTAGON)
  _require(len(ts.z.coefficients) == 5 and len(ts.z.cluster) == 2, f"z(T) = {[str(n) for n in ts.z.members]}")
  _require(_relations_hold(ts), "exchange relations")

  def vertex(name: str) -> str:
    return str(cat.representative(parse_special_name(name)))

  expected = Quiver.from_arrows(
    ts.quiver.vertices, [(vertex(a), vertex(b)) for a, b in PENTAGON_ARROWS], ts.quiver.frozen
  )
  _require(equivalent_up_to_reversal(ts.quiver, expected, {v: v for v in ts.quiver.vertices}), f"quiver {ts.quiver!r}")
  isolated = vertex(PENTAGON_ISOLATED)
  _require(not any(isolated in arrow for arrow in ts.quiver.arrows), f"{isolated} is not isolated")
  label = detect_type(ts.quiver)
  _require(label.name == "A2", f"type {label}")

  literal = {_relation_key(cat, _literal_relation(cat, row)) for row in PENTAGON_RELATIONS}
  found = set()
  for t in all_triangulations(PENTAGON.n):
    other = build_seed(PENTAGON, t, cat)
    found |= {_relation_key(cat, r) for r in other.relations}
  _require(found == literal, f"{len(found)} distinct exchange relations, {len(found & literal)} as listed")

  closure = mutation_closure(ts.seed)
  variables = set().union(*closure.clusters)
  _require(closure.complete and len(closure.clusters) == 5, f"{len(closure.clusters)} clusters")
  _require(len(variables) == 5, f"{len(variables)} cluster variables")
  return f"5 coefficients, {len(variables)} cluster variables, {len(closure.clusters)} clusters, {len(literal)} relations"


def _center_split(tri: tuple[int, int, int], n: int) -> frozenset[frozenset[tuple[int, ...]]]:
  """The two monomials in the neighbors of the center of a triangle with no exposed sides."""
  p, q, r = tri
  w = lambda x: (x - 1) % n + 1  # noqa: E731
  m1 = frozenset(tuple(sorted(t)) for t in ((r, p, w(p + 1)), (q, r, w(r + 1)), (p, q, w(q + 1))))
  m2 = frozenset(tuple(sorted(t)) for t in ((q, w(q + 1), r), (p, r, w(r + 1)), (p, w(p + 1), q)))
  return frozenset({m1, m2})


def check_grassmannian() -> str:
  centers = 0
  for sig, text in GRASSMANNIAN_CASES:
    sigma = Signature.parse(sig)
    n = sigma.n
    t = parse_triangulation(text, n)
    ts = build_seed(sigma, t)
    labels = grassmannian_labeling(ts)
    _require(sorted(labels.values()) == grassmannian_labels(t), f"{sig}: labels {sorted(labels.values())}")
    consecutive = {tuple(sorted((p, (p % n) + 1, (p + 1) % n + 1))) for p in range(1, n + 1)}
    frozen = {labels[v] for v in ts.quiver.frozen}
    _require(frozen == consecutive, f"{sig}: frozen {sorted(frozen)}")
    vertex_of = {trip: v for v, trip in labels.items()}
    for tri in triangles(t):
      p, q, r = tri
      if q - p == 1 or r - q == 1 or (p, r) == (1, n):
        continue
      center = vertex_of[tri]
      ins = {(labels[u], m) for (u, v), m in ts.quiver.arrows.items() if v == center}
      outs = {(labels[v], m) for (u, v), m in ts.quiver.arrows.items() if u == center}
      _require(all(m == 1 for _, m in ins | outs), f"{sig}: multiple arrows at {tri}")
      split = frozenset({frozenset(x for x, _ in ins), frozenset(x for x, _ in outs)})
      _require(split == _center_split(tri, n), f"{sig}: arrows at {tri} are {sorted(ins)} -> {sorted(outs)}")
      centers += 1
  return f"{len(GRASSMANNIAN_CASES)} triangulations, {centers} inner triangles"


def check_type_table() -> str:
  mismatches = []
  for row, expected in TYPE_TABLE.items():
    got = cluster_type(Signature.parse(row))
    if got.name != expected:
      mismatches.append(f"{row}: {got} (expected {expected})")
  for row in ("bbbww", "bbwbww", "bbbwbbw"):
    sigma = Signature.parse(row)
    for variant in (sigma.swapped(), sigma.reflected(), sigma.rotated(2)):
      got = cluster_type(variant)
      if got.name != TYPE_TABLE[row]:
        mismatches.append(f"{variant}: {got} (expected {TYPE_TABLE[row]})")
  _require(not mismatches, "; ".join(mismatches))
  return f"{len(TYPE_TABLE)} rows and 9 variants"


def check_flips() -> str:
  t = parse_triangulation(OCTAGON_T, OCTAGON.n)
  same = verify_flip_mutations(OCTAGON, t, (1, 7))
  _require(same.ok and not same.sequence, f"octagon flip: {same}")
  counts: Counter[int] = Counter()
  for sig in ("bbbbbb", "bbbwbw", "bbbbbbb"):
    sigma = Signature.parse(sig)
    for check in flip_graph_check(sigma, [fan_triangulation(sigma.n), zigzag_triangulation(sigma.n)]):
      _require(check.ok, str(check))
      counts[len(check.sequence)] += 1
  n = MONOCHROMATIC_OCTAGON.n
  ts: list[Triangulation] = [parse_triangulation(text, n) for text in FLIP_SHAPE_TRIANGULATIONS]
  ts += [fan_triangulation(n), zigzag_triangulation(n)]
  shapes: Counter[str] = Counter()
  for tri in ts:
    for d in sorted(tri.diagonals):
      shape = flip_shape(tri, d)
      check = verify_flip_mutations(MONOCHROMATIC_OCTAGON, tri, d)
      _require(check.ok, str(check))
      want = MONOCHROMATIC_FLIP_MUTATIONS[shape]
      _require(len(check.sequence) == want, f"{shape} flip {check}: {len(check.sequence)} mutations, expected {want}")
      shapes[shape] += 1
  missing = [s for s in MONOCHROMATIC_FLIP_MUTATIONS if s != "all" and not shapes[s]]
  _require(not missing, f"no flip of shape {missing}")
  return (
    "mutations per flip: "
    + ", ".join(f"{k}x{v}" for k, v in sorted(counts.items()))
    + "; monochromatic shapes: "
    + ", ".join(f"{s}x{v}" for s, v in sorted(shapes.items()))
  )


def check_laurent() -> str:
  ts = octagon_seed()
  rng = random.Random(get_settings().rng_seed)
  for _ in range(25):
    seq = random_sequence(ts.quiver, rng.randint(1, 6), rng)
    _require(laurent_check(ts.seed, seq), f"not Laurent after {seq}")
  return "25 sequences"


def check_skein() -> str:
  rng = random.Random(get_settings().rng_seed)
  webs = 0
  for i in range(100):
    d = random_drawn_diagram(rng)
    base = planarize(d)
    _require(check_expansion(d, base), f"diagram {i} expands to a different invariant: {d!r}")
    for _ in range(20):
      _require(planarize(d, random.Random(rng.randrange(2**31))) == base, f"diagram {i} depends on the order")
    webs += len(base)
  return f"100 diagrams, {webs} basis webs"


def check_arborization() -> str:
  cat = catalog_for(OCTAGON)
  names = [m for m in cat.names if not cat.is_zero(m) and cat.representative(m) == m]
  for nm in names:
    d = arborize(cat.web(nm).diagram)
    _require(is_forest_diagram(d), f"{nm} does not arborize to a forest")
    parts = forest_components(d)
    factors = sorted(cat.multidegree(f).degrees for f in cat.factorization(nm).names())
    _require(parts == factors, f"{nm}: components {parts}, factors {factors}")
  rng = random.Random(get_settings().rng_seed)
  for nm in rng.sample(names, min(5, len(names))):
    report = confluence_trial(cat.web(nm).diagram, 20, rng)
    _require(report.agree, f"{nm}: {report.distinct} normal forms")
  return f"{len(names)} special invariants"


def check_thickening() -> str:
  cases = [("tripod", tripod_web(), 2), ("tripod", tripod_web(), 3), ("quadripod", quadripod_web(), 3)]
  cases.append(("cycle", single_cycle_web(6), 2))
  for name, w, k in cases:
    _require(power_check(w, k), f"{name} k={k}")
  for name, w, k in cases[:3]:
    _require(power_is_thickening(w, k), f"{name} k={k}: the power is not the thickened web")
  return f"{len(cases)} cases, 3 compared by canonical code"


def check_compatibility() -> str:
  """Conjectural: members of z(T) multiply to single webs, exchange partners do not."""
  notes = []
  failed = False
  for ts in (build_seed(PENTAGON, parse_triangulation(PENTAGON_T, PENTAGON.n)), octagon_seed()):
    bad = check_pairwise_compatible(ts)
    partners = [
      r for r in ts.relations
      if r.partner is not None
      and multiply_drawn([special_builder(r.variable, ts.signature), special_builder(r.partner, ts.signature)])
      .is_single_web()
    ]
    failed = failed or bool(bad or partners)
    notes.append(f"{ts.signature}: {len(bad)} incompatible pairs, {len(partners)} compatible partners")
  if failed:
    log.warning("compatibility conjecture violated: %s", "; ".join(notes))
  _require(not failed, "; ".join(notes))
  return "; ".join(notes)


# -- registry ---------------------------------------------------------------------------------------


@dataclass(frozen=True)
class AcceptanceCheck:
  name: str
  description: str
  run: Callable[[], str]


class AcceptanceRegistry:
  def __init__(self) -> None:
    self._checks: dict[str, AcceptanceCheck] = {}

  def register(self, check: AcceptanceCheck) -> None:
    if check.name in self._checks:
      raise ValueError(f"Check already registered: {check.name}")
    self._checks[check.name] = check

  def get(self, name: str) -> AcceptanceCheck:
    try:
      return self._checks[name]
    except KeyError as e:
      raise KeyError(f"Unknown acceptance check: {name}") from e

  def list_check_names(self) -> list[str]:
    return sorted(self._checks.keys())

  def run_check(self, name: str) -> SuiteRow:
    check = self.get(name)
    start = time.perf_counter()
    try:
      detail = check.run()
      passed = True
    except CheckFailed as e:
      detail, passed = str(e), False
    except Sl3WebsError as e:
      detail, passed = f"{type(e).__name__}: {e}", False
    seconds = time.perf_counter() - start
    log.info("check %s %s in %.2fs", name, "passed" if passed else "failed", seconds)
    return SuiteRow(name=name, passed=passed, seconds=seconds, detail=detail)

  def run(self, names: list[str] | None = None, suite: str = "acceptance") -> SuiteReport:
    return SuiteReport(suite=suite, rows=[self.run_check(n) for n in names or self.list_check_names()])


_DEFAULT_REGISTRY: AcceptanceRegistry | None = None


def get_default_acceptance_registry() -> AcceptanceRegistry:
  global _DEFAULT_REGISTRY
  if _DEFAULT_REGISTRY is not None:
    return _DEFAULT_REGISTRY

  registry = AcceptanceRegistry()
  for check in (
    AcceptanceCheck(
      "determinant-pairing", "evaluation of a four-leg web as det times a pairing", check_determinant_times_pairing
    ),
    AcceptanceCheck("closed-webs", "loop, theta and cube values", check_closed_webs),
    AcceptanceCheck("web-counts", "five webs in two hexagon components", check_web_counts),
    AcceptanceCheck("basis-rank", "multilinear all-black hexagon basis", check_basis_rank),
    AcceptanceCheck("octagon-specials", "vanishing, coefficients and factorizations", check_octagon_specials),
    AcceptanceCheck("octagon-seed", "extended cluster, relations and type of an octagon seed", check_octagon_seed),
    AcceptanceCheck("pentagon", "pentagon seed, quiver and mutation closure", check_pentagon),
    AcceptanceCheck("grassmannian", "Plücker labels and arrows of monochromatic seeds", check_grassmannian),
    AcceptanceCheck("type-table", "cluster types of non-alternating signatures", check_type_table),
    AcceptanceCheck("flips", "flips realized by mutation sequences", check_flips),
    AcceptanceCheck("laurent", "random mutation sequences stay Laurent", check_laurent),
    AcceptanceCheck("skein", "random drawn diagrams reduce consistently", check_skein),
    AcceptanceCheck("arborization", "octagon special invariants arborize to their factors", check_arborization),
    AcceptanceCheck("thickening", "thickenings evaluate to powers", check_thickening),
    AcceptanceCheck("compatibility", "compatibility of cluster members (conjectural)", check_compatibility),
  ):
    registry.register(check)
  _DEFAULT_REGISTRY = registry
  return _DEFAULT_REGISTRY
