import pytest

import homfib as hf
from homfib.fibration import (
    KnownFiberSpec,
    PreimageCalculator,
    dp,
    dp_along,
    fiber_homology_over_contractible,
    pullback_fibration,
    strong_check_via_known_fiber,
    vertex_components,
    weak_fibration_check,
)
from homfib.sset import SimplexRef, SimplicialMap, constant_map, standard_map

from corpus import collapse_circle_to_interval, projection_over_simplex, two_points


# ---------------------------------------------------------------------------
# dp
# ---------------------------------------------------------------------------

def test_dp_of_identity_is_simplex():
    B = hf.standard_simplex(2)
    rec = dp(hf.identity_map(B), B.ref((0, 1, 2)))
    assert hf.is_acyclic(rec.space, 1)
    assert hf.validate(rec.space).ok
    # base projection is an isomorphism onto Delta[2]
    assert hf.is_homology_iso(rec.base_map, 1)[0]


def test_dp_of_projection_is_simplex_times_fiber():
    p = projection_over_simplex(1, two_points())
    B = p.target
    rec = dp(p, B.ref((0, 1)))
    assert [hf.homology(rec.space, k).summary() for k in (0, 1)] == [(2, ()), (0, ())]
    prod = hf.product(hf.standard_simplex(1), two_points())
    assert rec.space.counts()[:2] == prod.space.counts()[:2]


def test_dp_collapse_circle():
    # the edge preimage is the whole circle, the vertex preimages are not
    p = collapse_circle_to_interval()
    B = p.target
    edge = dp(p, B.ref((0, 1)))
    assert hf.homology(edge.space, 1).summary() == (1, ())
    v0 = dp(p, B.ref((0,)))
    assert hf.homology(v0.space, 1).summary() == (0, ())
    assert hf.homology(v0.space, 0).summary() == (1, ())
    v1 = dp(p, B.ref((1,)))
    assert v1.space.counts()[0] == 1


def test_dp_of_degenerate_simplex():
    p = hf.cyclic_cover_map(6, 3)
    B = p.target
    s_edge = hf.degenerate(B.ref(("e", 0)), 0)
    rec = dp(p, s_edge)
    assert hf.validate(rec.space).ok
    assert hf.homology(rec.space, 0).summary() == (2, ())


def test_dp_rejects_foreign_simplex():
    p = hf.cyclic_cover_map(6, 3)
    with pytest.raises(ValueError):
        dp(p, SimplexRef("nope", (), 0))


def test_dp_along_identity_recovers_total_space():
    p = hf.cyclic_cover_map(6, 3)
    pb = dp_along(p, hf.identity_map(p.target))
    assert pb.space.counts()[:2] == p.source.counts()
    assert all(c == 0 for c in pb.space.counts()[2:])
    ok, _ = hf.is_homology_iso(pb.to_right, 1)
    assert ok


def test_dp_along_vertex_inclusion_is_fiber():
    p = hf.cyclic_cover_map(6, 3)
    B = p.target
    v = SimplicialMap(hf.point(), B, {(0,): B.ref(("v", 0))})
    pb = dp_along(p, v)
    assert pb.space.counts()[0] == 2


def test_dp_along_preserves_coproducts():
    p = hf.cyclic_cover_map(6, 3)
    B = p.target
    two, injs = hf.disjoint_union([hf.point(), hf.point()])
    f = SimplicialMap(two, B, {(0, (0,)): B.ref(("v", 0)), (1, (0,)): B.ref(("v", 1))})
    pb = dp_along(p, f)
    assert pb.space.counts()[0] == 4
    assert hf.homology(pb.space, 0).summary() == (4, ())


# ---------------------------------------------------------------------------
# weak fibration checker
# ---------------------------------------------------------------------------

def test_projection_is_weak_fibration():
    p = projection_over_simplex(1, two_points())
    report = weak_fibration_check(p, 1)
    assert report.verdict
    assert not report.failures()


def test_projection_with_circle_fiber():
    p = projection_over_simplex(1, hf.boundary(2))
    assert weak_fibration_check(p, 1).verdict


def test_covering_is_weak_fibration():
    assert weak_fibration_check(hf.cyclic_cover_map(6, 3), 1).verdict


def test_collapse_fails_with_witness_at_degree_one():
    report = weak_fibration_check(collapse_circle_to_interval(), 1)
    assert not report.verdict
    edge_failures = [c for c in report.failures()
                     if c.sigma.gen == (0, 1) and c.op == ("d", 1)]
    assert edge_failures
    bad_degrees = [cert.degree for cert in edge_failures[0].certificates if not cert.ok]
    assert bad_degrees == [1]


def test_deep_ops_audit_agrees_on_small_cases():
    p = projection_over_simplex(1, two_points())
    assert weak_fibration_check(p, 1, deep_ops=True).verdict
    assert not weak_fibration_check(collapse_circle_to_interval(), 1, deep_ops=True).verdict


def test_weak_check_invariant_under_isomorphism():
    # precompose the covering with a rotation isomorphism of the 6-gon
    p = hf.cyclic_cover_map(6, 3)
    c6 = p.source
    rot = SimplicialMap(c6, c6, {
        **{("v", t): c6.ref(("v", (t + 2) % 6)) for t in range(6)},
        **{("e", t): c6.ref(("e", (t + 2) % 6)) for t in range(6)},
    })
    assert hf.validate_map(rot).ok
    assert weak_fibration_check(p.compose(rot), 1).verdict


# ---------------------------------------------------------------------------
# pullback stability
# ---------------------------------------------------------------------------

def test_pullback_along_identity_is_same_map():
    p = hf.cyclic_cover_map(6, 3)
    pulled = pullback_fibration(p, hf.identity_map(p.target))
    assert pulled.map.source.counts()[:2] == p.source.counts()
    assert weak_fibration_check(pulled.map, 1).verdict


def test_pullback_cover_along_cover():
    p = hf.cyclic_cover_map(6, 3)
    f = hf.cyclic_cover_map(12, 3)
    pulled = pullback_fibration(p, f)
    assert pulled.map.source.counts()[0] == 24
    assert weak_fibration_check(pulled.map, 1).verdict


def test_pullback_along_vertex_inclusion():
    p = hf.cyclic_cover_map(6, 3)
    B = p.target
    v = SimplicialMap(hf.point(), B, {(0,): B.ref(("v", 0))})
    pulled = pullback_fibration(p, v)
    assert weak_fibration_check(pulled.map, 1).verdict


# ---------------------------------------------------------------------------
# contractible bases
# ---------------------------------------------------------------------------

def test_product_over_simplex_table():
    p = projection_over_simplex(2, two_points())
    report = fiber_homology_over_contractible(p, 1)
    assert report.verdict
    assert report.table == [(2, ()), (0, ())]
    assert not report.warnings


def test_identity_of_simplex_table():
    p = hf.identity_map(hf.standard_simplex(3))
    report = fiber_homology_over_contractible(p, 2)
    assert report.verdict
    assert report.table == [(1, ()), (0, ()), (0, ())]


def test_suspension_of_acyclic_over_interval():
    A = hf.presentation_complex(["a"], [["a"]])
    SA, f = hf.suspension(A)
    report = fiber_homology_over_contractible(f, 2)
    assert report.verdict
    assert report.table == [(1, ()), (0, ()), (0, ())]


def test_warns_on_bad_base():
    p = hf.identity_map(hf.boundary(2))
    report = fiber_homology_over_contractible(p, 0)
    assert report.warnings


# ---------------------------------------------------------------------------
# known fibers
# ---------------------------------------------------------------------------

def test_strong_check_covering():
    p = hf.cyclic_cover_map(6, 3)
    spec = KnownFiberSpec(("v", 0), two_points(), "covering fiber")
    report = strong_check_via_known_fiber(p, spec, 1)
    assert report.verdict and report.fiber_table_ok


def test_strong_check_product():
    p = projection_over_simplex(2, two_points())
    spec = KnownFiberSpec((0,), two_points(), "product fiber")
    assert strong_check_via_known_fiber(p, spec, 1).verdict


def test_strong_check_detects_wrong_fiber():
    p = hf.cyclic_cover_map(6, 3)
    spec = KnownFiberSpec(("v", 0), hf.point(), "wrong fiber")
    report = strong_check_via_known_fiber(p, spec, 1)
    assert not report.verdict and not report.fiber_table_ok


def test_strong_check_requires_weak():
    p = hf.cyclic_cover_map(6, 3)
    with pytest.raises(ValueError):
        strong_check_via_known_fiber(p, KnownFiberSpec(("v", 0), two_points()), 1,
                                     weak_verified=False)


def test_vertex_components():
    du, _ = hf.disjoint_union([hf.cyclic_graph(3), hf.standard_simplex(1)])
    comps = vertex_components(du)
    assert len(set(comps.values())) == 2


# ---------------------------------------------------------------------------
# functoriality of the comparisons
# ---------------------------------------------------------------------------

def test_comparison_composition_matches_composite_word():
    # dp is functorial: the comparison for a composite equals the composite
    # of comparisons, generator-wise
    p = hf.cyclic_cover_map(6, 3)
    B = p.target
    sigma = B.ref(("e", 0))
    calc = PreimageCalculator(p, 2)
    d0 = standard_map(0, 1, [1], calc.simplex(0), calc.simplex(1))
    via_word = calc.comparison(sigma, d0)
    # the same vertex inclusion reached in two steps: s_0 then d_0 d_0
    assert hf.validate_map(via_word).ok
    src = via_word.source
    dst = via_word.target
    assert dst.counts()[0] >= src.counts()[0]


def test_dp_comparison_functorial_on_composite_words():
    # the comparison for a composite operator equals the composite of the
    # comparisons, generator for generator
    p = projection_over_simplex(2, two_points())
    B = p.target
    sigma = B.ref((0, 1, 2))
    calc = PreimageCalculator(p, 2)
    d2 = standard_map(1, 2, [0, 1], calc.simplex(1), calc.simplex(2))
    d1_of_edge = standard_map(0, 1, [0], calc.simplex(0), calc.simplex(1))
    composite = standard_map(0, 2, [0], calc.simplex(0), calc.simplex(2))
    outer = calc.comparison(sigma, d2)
    edge = B.face(sigma, 2)
    inner = calc.comparison(edge, d1_of_edge)
    direct = calc.comparison(sigma, composite)
    assert direct.assignment == outer.compose(inner).assignment


def test_thread_pool_matches_sequential():
    p = hf.cyclic_cover_map(6, 3)
    seq = weak_fibration_check(p, 1, jobs=1)
    par = weak_fibration_check(p, 1, jobs=3)
    assert seq.verdict == par.verdict
    assert [(c.sigma, c.op, c.ok) for c in seq.checks] \
        == [(c.sigma, c.op, c.ok) for c in par.checks]


def test_suspension_of_point_over_interval_has_point_fibers():
    s, f = hf.suspension(hf.point())
    report = fiber_homology_over_contractible(f, 1)
    assert report.verdict
    assert report.table == [(1, ()), (0, ())]


def test_dp_collapse_edge_is_whole_circle():
    p = collapse_circle_to_interval()
    rec = dp(p, p.target.ref((0, 1)), max_dim=1)
    assert rec.space.counts() == (3, 3)


def test_dp_record_carries_neighbor_comparisons():
    p = hf.cyclic_cover_map(6, 3)
    B = p.target
    rec = dp(p, B.ref(("e", 0)), max_dim=2, with_comparisons=True)
    assert set(rec.comparisons) == {("d", 0), ("d", 1), ("s", 0), ("s", 1)}
    # face comparisons land in dp(sigma), sections leave from it
    assert rec.comparisons[("d", 0)].target is rec.space
    assert rec.comparisons[("s", 0)].source is rec.space
    for m in rec.comparisons.values():
        assert hf.validate_map(m).ok
