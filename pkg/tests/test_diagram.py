from __future__ import annotations

import pytest

from sl3webs.acceptance import cube_diagram, determinant_times_pairing_diagram, theta_diagram
from sl3webs.diagram import (
  BLACK,
  WHITE,
  DiagramBuilder,
  Multidegree,
  Signature,
  add_fork,
  as_web,
  canonical_code,
  color_swap,
  diagram_from_doc,
  diagram_to_doc,
  drop_diagram,
  faces,
  internal_four_cycles,
  is_forest_diagram,
  is_non_elliptic,
  is_planar,
  is_tree_diagram,
  lift,
  multidegree,
  normalize_ids,
  rotate_diagram,
  unclasp,
  validate,
)
from sl3webs.errors import DegreeNonZero, InvalidDiagram
from sl3webs.thicken import quadripod_web, single_cycle_web, tripod_web


def test_signature_transforms():
  s = Signature.parse("bbw")
  assert str(s) == "bbw"
  assert s.type_ab == (1, 2)
  assert str(s.swapped()) == "wwb"
  assert str(s.rotated(1)) == "wbb"
  assert str(s.reflected()) == "wbb"
  assert s.wrap(4) == 1
  assert s.is_non_alternating()
  assert not Signature.parse("bwbw").is_non_alternating()
  assert str(Signature.parse("●○")) == "bw"
  with pytest.raises(ValueError):
    Signature.parse("bx")


def test_multidegree_parse_and_order():
  m = Multidegree.parse("1,0,2")
  assert m[3] == 2
  assert m.total() == 3
  assert Multidegree.parse("1,0,1").dominated_by(m)
  assert str(m + m) == "2,0,4"


def test_tripod_is_a_tree_web():
  w = tripod_web()
  d = w.diagram
  assert validate(d) == []
  assert is_planar(d)
  assert is_non_elliptic(d)
  assert is_tree_diagram(d)
  assert multidegree(d) == Multidegree((1, 1, 1))
  assert unclasp(d).number_of_nodes() == 4


def test_wrong_color_edge_is_rejected():
  b = DiagramBuilder(Signature.parse("bbb"))
  c = b.vertex(BLACK, "c")
  b.rotate(c, [b.edge(c, p) for p in (1, 2, 3)])
  problems = validate(b.build())
  assert any("same color" in p for p in problems)
  with pytest.raises(InvalidDiagram):
    as_web(b.build())


def test_missing_port_is_reported():
  b = DiagramBuilder(Signature.parse("bbb"))
  c = b.vertex(WHITE, "c")
  e = [b.edge(c, p) for p in (1, 2, 3)]
  b.rotate(c, e[:2])
  problems = validate(b.build())
  assert any("missing from the rotation" in p for p in problems)


def test_closed_webs_are_elliptic():
  assert not is_non_elliptic(theta_diagram())
  assert not is_non_elliptic(cube_diagram())
  assert len(internal_four_cycles(cube_diagram())) == 6


def test_cube_has_six_faces():
  assert is_planar(cube_diagram())
  assert len(faces(cube_diagram())) == 6


def test_canonical_code_ignores_ids_but_not_rotation():
  w = tripod_web()
  renamed = normalize_ids(w.diagram)
  assert canonical_code(renamed) == w.code
  b = DiagramBuilder(Signature.parse("bbb"))
  c = b.vertex(WHITE, "z")
  e = [b.edge(c, p) for p in (1, 2, 3)]
  b.rotate(c, [e[0], e[2], e[1]])
  assert canonical_code(b.build()) != w.code


def test_document_round_trip():
  d = determinant_times_pairing_diagram()
  doc = diagram_to_doc(d)
  back = diagram_from_doc(doc)
  assert canonical_code(back) == canonical_code(d)
  assert doc.boundary_rotation["2"] == [e for e, _ in d.ports("2")]


def test_rotate_and_color_swap():
  w = quadripod_web()
  r = rotate_diagram(w.diagram, 1)
  assert str(r.signature) == "wbbw"
  assert validate(r) == []
  s = color_swap(w.diagram)
  assert str(s.signature) == "wwbb"
  assert validate(s) == []


def test_drop_and_lift_isolated_vertex():
  w = tripod_web()
  sigma = Signature.parse("bbbw")
  lifted = lift(w.diagram, sigma, 4)
  assert validate(lifted) == []
  assert canonical_code(drop_diagram(lifted, 4)) == w.code
  with pytest.raises(DegreeNonZero):
    drop_diagram(w.diagram, 1)


def test_fork_doubles_a_boundary_vertex():
  d = add_fork(tripod_web().diagram, 1)
  assert str(d.signature) == "wwbb"
  assert validate(d) == []
  assert as_web(d).is_non_elliptic()


def test_cycle_web_is_not_a_forest():
  d = single_cycle_web(6).diagram
  assert is_non_elliptic(d)
  assert not is_forest_diagram(d)
  with pytest.raises(ValueError):
    single_cycle_web(4)
