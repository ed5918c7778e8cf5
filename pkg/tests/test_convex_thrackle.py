import itertools
from fractions import Fraction as F

import pytest

from ttl import convex_thrackle as ct
from ttl.cliques import TransversalError, abstract_transversal_bound, min_clique_cover_bruteforce
from ttl.projective import IncidenceError, IncidenceStructure, UnsupportedOrder, projective_plane


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_projective_planes_are_valid(q):
    plane = projective_plane(q)
    n = q * q + q + 1
    assert plane.n_points == n and len(plane.lines) == n
    assert all(len(l) == q + 1 for l in plane.lines)
    plane.validate()


@pytest.mark.parametrize("q,word", [(4, "prime power"), (6, "not a prime power"), (1, None)])
def test_unsupported_orders(q, word):
    with pytest.raises(UnsupportedOrder, match=word):
        projective_plane(q)


def test_incidence_validation_catches_bad_structures():
    with pytest.raises(IncidenceError):
        IncidenceStructure(3, (frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 2}))).validate()
    fano = projective_plane(2)
    broken = IncidenceStructure(7, fano.lines[:-1] + (frozenset({0, 1, 2}),))
    with pytest.raises(IncidenceError):
        broken.validate()


@pytest.mark.parametrize("q", [2, 3])
def test_plane_thrackles_are_tight(q):
    inst = ct.plane_thrackle_from_incidence(projective_plane(q))
    rep = ct.check_transversal(inst)
    assert rep.ok
    assert {w for w, _ in inst.W} == set(inst.V)
    assert inst.m == inst.n == q * q + q + 1
    bound = abstract_transversal_bound(inst.bodies, inst.V)
    assert bound.holds and not bound.degenerate


def test_abstract_bound_examples():
    b = abstract_transversal_bound([{1, 2}, {2, 3}, {1, 3}], {1, 2, 3})
    assert b.holds and len(b.cover) == 3 and b.m == 3
    with pytest.raises(TransversalError) as exc:
        abstract_transversal_bound([{1, 2}, {1, 2}], {1, 2})
    assert exc.value.count == 2
    # one common point: the cover degenerates to K_m and the bound need not hold
    d = abstract_transversal_bound([{0, 1}, {0, 2}, {0, 3}, {0, 4}], {0})
    assert d.degenerate and not d.holds


def test_abstract_cover_is_an_edge_decomposition():
    fano = projective_plane(2)
    b = abstract_transversal_bound(fano.lines, range(7))
    pairs = [p for _, c in b.cover for p in itertools.combinations(c, 2)]
    assert sorted(pairs) == list(itertools.combinations(range(7), 2))


@pytest.mark.parametrize("m", [3, 4, 5])
def test_clique_cover_small(m):
    assert min_clique_cover_bruteforce(m) == m


@pytest.mark.slow
def test_clique_cover_six():
    assert min_clique_cover_bruteforce(6) == 6


def test_clique_cover_range():
    for m in (2, 7):
        with pytest.raises(ValueError):
            min_clique_cover_bruteforce(m)


def test_heptagram_structure():
    inst = ct.heptagram_thrackle()
    assert inst.m == 7 and inst.n == 7 and len(inst.W) == 21
    assert ct.check_transversal(inst)
    sel = ct.vertex_selection(inst)
    assert sel.is_surjective(7)


def test_quad_apex_selection():
    inst = ct.quad_apex_thrackle()
    assert ct.check_transversal(inst)
    sel = ct.vertex_selection(inst)
    assert sel.is_surjective(inst.m)
    assert set(sel.case.values()) >= {"1"}
    assert sel.choice["q3"] == 0  # the quadrilateral is kept by exactly one corner


def _selection_is_consistent(inst, sel):
    for v, b in sel.choice.items():
        assert v in inst.extreme_vertices(b)


@pytest.mark.parametrize("seed", range(40))
def test_random_segment_thrackles(seed):
    inst = ct.random_segment_thrackle(seed)
    assert all(inst.body_dim(i) == 1 for i in range(inst.m))
    assert ct.check_transversal(inst)
    sel = ct.vertex_selection(inst)
    _selection_is_consistent(inst, sel)
    assert sel.is_surjective(inst.m) and inst.m <= inst.n


def test_random_thrackle_is_seeded():
    assert ct.random_segment_thrackle(11) == ct.random_segment_thrackle(11)


def test_seven_gon_counterexample():
    inst = ct.seven_gon_example()
    assert inst.m == 21 and inst.n == 7
    pts = [inst.body_points(i) for i in range(inst.m)]
    from ttl.geometry import hulls_intersect
    assert all(hulls_intersect([pts[i], pts[j]]) for i, j in itertools.combinations(range(21), 2))
    rep = ct.check_transversal(inst)
    assert not rep.ok and rep.violation[2] != 1
    with pytest.raises(ct.HypothesisViolation):
        ct.vertex_selection(inst)


def test_octahedron_counterexample():
    inst = ct.octahedron_counterexample()
    assert inst.dim == 3 and inst.m == 7 and inst.n == 6
    rep = ct.check_transversal(inst)
    assert rep.ok and all(c == 1 for c in rep.counts.values())
    with pytest.raises(ct.HypothesisViolation):
        ct.vertex_selection(inst)


def test_instance_validation():
    W = (("a", (F(0), F(0))), ("b", (F(1), F(0))), ("c", (F(0), F(1))))
    with pytest.raises(ct.InvalidInstance):
        ct.ThrackleInstance(2, W, ("a", "b", "c"), (("a",),))
    with pytest.raises(ct.InvalidInstance):
        ct.ThrackleInstance(2, W, ("a", "b", "c"), (("a", "b"), ("b", "a")))
    with pytest.raises(ct.InvalidInstance):
        ct.ThrackleInstance(2, W, ("a", "b", "z"), (("a", "b"),))


def test_json_round_trip():
    for inst in (ct.heptagram_thrackle(), ct.octahedron_counterexample(), ct.quad_apex_thrackle()):
        assert ct.ThrackleInstance.from_json(inst.to_json()) == inst


def test_shared_vertex_wedges_violate_hypotheses():
    verts = {"a": (0, 0), "b": (2, 0), "c": (0, 2), "d": (-2, -1)}
    inst = ct.derive_transversal(verts, [("a", "b", "c"), ("a", "c", "d")])
    with pytest.raises(ct.HypothesisViolation):
        ct.vertex_selection(inst)
