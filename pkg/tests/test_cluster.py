from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from sl3webs.cluster import (
  Quiver,
  detect_type,
  exchange_relation_at,
  formal_seed,
  laurent_check,
  mutate_quiver,
  mutate_seed,
  mutation_closure,
)
from sl3webs.cluster.quiver import equivalent_up_to_reversal, is_isomorphic, isomorphism
from sl3webs.cluster.seeds import mutate_sequence, random_sequence
from sl3webs.cluster.types import TYPE_TABLE, _with_legs, cluster_type, expected_type, same_mutation_class, tree_label
from sl3webs.diagram import Signature
from sl3webs.errors import FrozenVertex


A2 = Quiver.from_arrows(["a", "b"], [("a", "b")])


def test_quiver_validation():
  with pytest.raises(ValueError, match="2-cycle"):
    Quiver(("a", "b"), frozenset(), {("a", "b"): 1, ("b", "a"): 1})
  with pytest.raises(ValueError, match="loop"):
    Quiver(("a",), frozenset(), {("a", "a"): 1})
  with pytest.raises(ValueError):
    Quiver(("a",), frozenset({"z"}))


def test_from_arrows_cancels_two_cycles():
  q = Quiver.from_arrows(["a", "b"], [("a", "b"), ("a", "b"), ("b", "a")])
  assert dict(q.arrows) == {("a", "b"): 1}


def test_mutation_with_a_frozen_vertex():
  q = Quiver.from_arrows(["f", "a", "b"], [("f", "a"), ("a", "b")], frozen=["f"])
  m = mutate_quiver(q, "a")
  assert dict(m.arrows) == {("f", "b"): 1, ("b", "a"): 1, ("a", "f"): 1}
  with pytest.raises(FrozenVertex):
    mutate_quiver(q, "f")


def test_no_arrows_between_frozen_vertices():
  q = Quiver.from_arrows(["f", "a", "g"], [("f", "a"), ("a", "g")], frozen=["f", "g"])
  m = mutate_quiver(q, "a")
  assert m.b("f", "g") == 0


def test_exchange_relation_exponents():
  q = Quiver.from_arrows(["a", "b", "c"], [("a", "b"), ("c", "b", 2)])
  assert exchange_relation_at(q, "b") == ({"a": 1, "c": 2}, {})


@st.composite
def quivers(draw):
  names = [f"v{i}" for i in range(draw(st.integers(2, 5)))]
  pairs = [(u, v) for u in names for v in names if u != v]
  arrows = draw(st.lists(st.sampled_from(pairs), max_size=8))
  frozen = draw(st.lists(st.sampled_from(names), max_size=1))
  return Quiver.from_arrows(names, arrows, frozen)


@settings(max_examples=60, deadline=None)
@given(quivers(), st.data())
def test_mutation_is_an_involution(q, data):
  if not q.mutable:
    return
  k = data.draw(st.sampled_from(q.mutable))
  assert mutate_quiver(mutate_quiver(q, k), k) == q


def test_doc_and_dot():
  q = Quiver.from_arrows(["f", "a", "b"], [("f", "a"), ("a", "b", 2)], frozen=["f"])
  assert Quiver.from_doc(q.to_doc()) == q
  dot = q.to_dot({"a": "J_1^2"})
  assert dot.startswith("digraph Q {")
  assert '"f" [label="f", shape=box];' in dot
  assert '"a" -> "b" [label="2"];' in dot


def test_isomorphism_and_reversal():
  p = Quiver.from_arrows(["x", "y"], [("y", "x")])
  assert is_isomorphic(A2, p)
  assert isomorphism(A2, p) == {"a": "y", "b": "x"}
  assert equivalent_up_to_reversal(A2, p, {"a": "x", "b": "y"})
  assert not equivalent_up_to_reversal(A2, Quiver(("x", "y")), {"a": "x", "b": "y"})


def test_seed_mutation_is_an_involution():
  s = formal_seed(A2)
  back = mutate_seed(mutate_seed(s, "a"), "a")
  assert back.values == s.values
  assert back.label("a") == "a''"


def test_a2_period_five():
  s = formal_seed(A2)
  end = mutate_sequence(s, ["a", "b", "a", "b", "a"])
  assert end.cluster() == s.cluster()
  assert end.values["a"] == s.values["b"]


def test_a2_closure():
  closure = mutation_closure(formal_seed(A2))
  assert closure.complete
  assert len(closure.clusters) == 5
  assert len({v for c in closure.clusters for v in c}) == 5


def test_closure_limit():
  closure = mutation_closure(formal_seed(A2), limit=3)
  assert not closure.complete
  assert len(closure.clusters) == 3


def test_laurent_phenomenon_on_random_sequences():
  q = Quiver.from_arrows(["f", "a", "b", "c"], [("f", "a"), ("a", "b"), ("b", "c"), ("c", "a")], frozen=["f"])
  rng = random.Random(5)
  for _ in range(6):
    seq = random_sequence(q, 6, rng)
    assert all(x != y for x, y in zip(seq, seq[1:]))
    assert laurent_check(formal_seed(q), seq)


@pytest.mark.parametrize(
  "graph, name, finite",
  [
    (nx.path_graph(4), "A4", True),
    (_with_legs(nx.path_graph(4), [(1, 1)]), "D5", True),
    (_with_legs(nx.path_graph(5), [(2, 1)]), "E6", True),
    (_with_legs(nx.path_graph(7), [(2, 1)]), "E8", True),
    (_with_legs(nx.path_graph(6), [(3, 2)]), "T433", False),
    (nx.star_graph(4), "D4^(1)", False),
  ],
)
def test_tree_label(graph, name, finite):
  label = tree_label(graph)
  assert (label.name, label.finite) == (name, finite)


def test_detect_type_searches_the_mutation_class():
  cycle = Quiver.from_arrows(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])
  assert detect_type(cycle).name == "A3"
  assert same_mutation_class(cycle, Quiver.from_arrows(["x", "y", "z"], [("x", "y"), ("z", "y")]))


def test_detect_type_of_disconnected_and_unknown_quivers():
  assert detect_type(Quiver(("a", "b"))).name == "A1+A1"
  kronecker = detect_type(Quiver.from_arrows(["a", "b"], [("a", "b", 2)]))
  assert not kronecker.determined
  assert not kronecker.finite


def test_expected_type_uses_symmetries():
  assert expected_type(Signature.parse("bbbww")) == "A2"
  assert expected_type(Signature.parse("wwbbb")) == "A2"
  assert expected_type(Signature.parse("bwbwbw")) is None


def test_cluster_type_of_the_pentagon():
  label = cluster_type(Signature.parse("bbbww"))
  assert (label.name, label.finite) == ("A2", True)


def test_cluster_type_of_a_single_exchange():
  label = cluster_type(Signature.parse("bbwbw"))
  assert (label.name, label.finite) == ("A1", True)


@pytest.mark.parametrize(
  "row, expected",
  [(row, want) if len(row) == 5 else pytest.param(row, want, marks=pytest.mark.slow) for row, want in TYPE_TABLE.items()],
)
def test_cluster_type_table(row, expected):
  assert cluster_type(Signature.parse(row)).name == expected
