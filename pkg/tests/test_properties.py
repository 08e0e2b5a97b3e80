"""Property loops for the contract invariants not covered elsewhere."""

import random
from fractions import Fraction

from rectbeacon.attraction import attracts
from rectbeacon.generators import coverage_spiral, random_rectilinear, random_x_monotone
from rectbeacon.geometry import Point
from rectbeacon.polygon import chords_on_line, pocket


def sweep_is_monotone(poly, axis):
    """Sweep-definition oracle: every axis line meets P in <= 1 component."""
    if axis == "x":
        coords = sorted({v.x for v in poly.vertices})
        line_axis = "V"
    else:
        coords = sorted({v.y for v in poly.vertices})
        line_axis = "H"
    for i in range(len(coords) - 1):
        t = (coords[i] + coords[i + 1]) / 2
        if len(chords_on_line(poly, line_axis, t)) > 1:
            return False
    return True


def test_monotonicity_edge_scan_matches_sweep_on_1000_polygons():
    count = 0
    seed = 0
    while count < 1000:
        seed += 1
        if count % 3 == 2:
            p = random_x_monotone(4 + 2 * (seed % 18), seed)
        else:
            p = random_rectilinear(4 + 2 * (seed % 18), seed)  # n up to 40
        m = p.monotonicity()
        assert m["x_monotone"] == sweep_is_monotone(p, "x"), seed
        assert m["y_monotone"] == sweep_is_monotone(p, "y"), seed
        count += 1


def test_pocket_always_smaller():
    checked = 0
    for seed in range(200):
        p = random_rectilinear(4 + 2 * (seed % 12), seed + 60000)
        for e in p.reflex_edges():
            for v in (e.a, e.b):
                pk = pocket(p, e.index, p.vertex_index(v))
                assert pk.n < p.n
                checked += 1
        if checked > 60:
            break
    assert checked > 0


def test_spiral_pocket_smaller():
    p, d = coverage_spiral(4)
    for e in p.reflex_edges():
        for v in (e.a, e.b):
            assert pocket(p, e.index, p.vertex_index(v)).n < p.n


def test_xy_monotone_pairs_attract_both_ways():
    # No reflex edge means the kernel is everything: all pairs attract.
    rng = random.Random(17)
    checked = 0
    for seed in range(60):
        p = random_rectilinear(4 + 2 * (seed % 8), seed + 200)
        if not p.is_xy_monotone():
            continue
        xmin, ymin, xmax, ymax = p.bbox()
        pts = list(p.vertices[:4])
        guard = 0
        while len(pts) < 8 and guard < 400:
            guard += 1
            q = Point(Fraction(rng.randrange(int(xmin), int(xmax) + 1)),
                      Fraction(rng.randrange(int(ymin), int(ymax) + 1)))
            if p.contains(q) != "out":
                pts.append(q)
        for a in pts:
            for b in pts:
                assert attracts(p, a, b) and attracts(p, b, a)
        checked += 1
        if checked >= 5:
            break
    assert checked >= 1
