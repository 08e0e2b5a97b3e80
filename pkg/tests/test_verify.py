from fractions import Fraction

import pytest

from rectbeacon.attraction import attraction_path
from rectbeacon.errors import BudgetExceeded
from rectbeacon.generators import coverage_spiral, greedy_cover_spiral, random_rectilinear, routing_spiral
from rectbeacon.geometry import Point
from rectbeacon.placement import route_beacons
from rectbeacon.polygon import validate
from rectbeacon.verify import (
    SamplePlan,
    build_samples,
    default_pairs,
    exhaust_necessity,
    necessity_candidates,
    verify_coverage,
    verify_routing,
)

from shapes import square, u_shape


def test_samples_deterministic_and_inside():
    p = u_shape()
    plan = SamplePlan(grid=12, seed=3, jitter=9)
    s1 = build_samples(p, plan)
    s2 = build_samples(p, plan)
    assert s1 == s2
    assert all(p.contains(q) != "out" for q in s1)
    assert set(p.vertices) <= set(s1)


def test_verify_coverage_square_any_beacon():
    p = square()
    rep = verify_coverage(p, [Point(1, 1)], SamplePlan(grid=8))
    assert rep.passed
    assert rep.stats["uncovered"] == 0


def test_verify_coverage_finds_witness():
    p = u_shape()
    # A beacon deep in the right tower cannot attract the left tower.
    rep = verify_coverage(p, [Point(5, 4)], SamplePlan(grid=8))
    assert not rep.passed
    assert rep.witnesses
    w = rep.witnesses[0]
    assert w["outcomes"][0]["outcome"] == "dead"


def test_witnesses_replay_exactly():
    p = u_shape()
    rep = verify_coverage(p, [Point(5, 4)], SamplePlan(grid=8))
    w = rep.witnesses[0]
    s = Point(Fraction(w["point"][0]), Fraction(w["point"][1]))
    b = Point(Fraction(w["outcomes"][0]["beacon"][0]), Fraction(w["outcomes"][0]["beacon"][1]))
    path = attraction_path(p, s, b)
    assert not path.reached
    assert [str(path.terminal.x), str(path.terminal.y)] == w["outcomes"][0]["terminal"]


def test_greedy_prefix_fails_near_v4_on_p7():
    p, d = coverage_spiral(7)
    bs = greedy_cover_spiral(p, d)
    prefix = bs.beacons[:2]
    rep = verify_coverage(p, prefix, SamplePlan(grid=24), witness_limit=100)
    assert not rep.passed
    v4 = d.spine[4]
    hits = []
    for w in rep.witnesses:
        q = Point(Fraction(w["point"][0]), Fraction(w["point"][1]))
        if max(abs(q.x - v4.x), abs(q.y - v4.y)) < 1:
            hits.append(q)
    assert hits, [w["point"] for w in rep.witnesses]


def test_verify_routing_monotone_no_beacons():
    p = validate([(0, 0), (4, 0), (4, 2), (2, 2), (2, 4), (0, 4)])
    rep = verify_routing(p, [], pair_count=40, seed=5)
    assert rep.passed
    assert rep.stats["max_chain"] == 0


def test_verify_routing_u_shape_fail_then_pass():
    p = u_shape()
    pair = [(Point(5, 3), Point(1, 3))]
    assert not verify_routing(p, [], pairs=pair).passed
    bs = route_beacons(p)
    assert verify_routing(p, bs.beacons, pairs=pair).passed


def test_default_pairs_cover_vertices():
    p = square()
    pairs = default_pairs(p, count=10, seed=1)
    vp = [(u, v) for u in p.vertices for v in p.vertices if u != v]
    assert set(vp) <= set(pairs)


def test_exhaust_necessity_square_counterexample():
    res, payload = exhaust_necessity(square(), 1, "cover", plan=SamplePlan(grid=6))
    assert res == "counterexample"
    assert len(payload) == 1


def test_exhaust_necessity_routing_spiral():
    p = routing_spiral(3)
    src, dst = p.vertices[0], p.vertices[4]
    res, tried = exhaust_necessity(p, 1, "route",
                                   candidates=necessity_candidates(p, grid=5),
                                   pairs=[(src, dst), (dst, src)])
    assert res == "pass"
    assert tried > 0


def test_exhaust_monotone_in_k():
    p, d = coverage_spiral(5)
    cands = [p.vertices[i] for i in p.reflex_indices]
    for _, _, rect in d.rects:
        cands.extend(c for c in rect.corners() if p.contains(c) != "out")
    cands = sorted(set(cands), key=lambda q: q.key())
    res1, _ = exhaust_necessity(p, 1, "cover", candidates=cands, plan=SamplePlan(grid=10))
    assert res1 == "pass"  # one beacon cannot guard the r=5 spiral


def test_budget_guard():
    p = random_rectilinear(24, 3)
    with pytest.raises(BudgetExceeded):
        exhaust_necessity(p, 4, "cover", budget=1000)
