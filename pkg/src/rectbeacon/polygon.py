"""Simple rectilinear polygons: validation, structure queries, cuts and splits.

Everything here is exact: coordinates are rationals and no predicate ever
rounds.  A polygon is stored counterclockwise; the interior always lies to
the left of the direction of travel.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .errors import (
    GeneralPositionViolated,
    NotAChord,
    NotRectilinear,
    NotSimple,
)
from .geometry import Point, cross3, on_axis_segment, scalar

CONVEX = "convex"
REFLEX = "reflex"

# Travel direction of an edge, from the CCW vertex order.
EAST, NORTH, WEST, SOUTH = "E", "N", "W", "S"

_DIR_VEC = {
    EAST: Point(1, 0),
    NORTH: Point(0, 1),
    WEST: Point(-1, 0),
    SOUTH: Point(0, -1),
}

# Interior lies to the left of travel.
_INWARD = {EAST: Point(0, 1), WEST: Point(0, -1), NORTH: Point(-1, 0), SOUTH: Point(1, 0)}

# Facing of a convex/reflex edge (the direction the feature points at).
_FACING_CONVEX = {EAST: "bottom", WEST: "top", NORTH: "right", SOUTH: "left"}
_FACING_REFLEX = {EAST: "top", WEST: "bottom", NORTH: "left", SOUTH: "right"}


class HalfPlane:
    """Axis-parallel closed half-plane  {axis_coord <sense> c}."""

    __slots__ = ("axis", "c", "sense")

    def __init__(self, axis: str, c: Fraction, sense: int):
        self.axis = axis  # 'x' or 'y': which coordinate is constrained
        self.c = c
        self.sense = sense  # +1: coord >= c ; -1: coord <= c

    def contains(self, p: Point) -> bool:
        v = p.x if self.axis == "x" else p.y
        return v >= self.c if self.sense > 0 else v <= self.c

    def __repr__(self):
        op = ">=" if self.sense > 0 else "<="
        return f"HalfPlane({self.axis} {op} {self.c})"


class EdgeRef:
    """One polygon edge with its derived structure."""

    __slots__ = ("index", "a", "b", "direction", "orientation", "kind", "facing", "halfplane")

    def __init__(self, index: int, a: Point, b: Point, class_a: str, class_b: str):
        self.index = index
        self.a = a
        self.b = b
        if a.y == b.y:
            self.orientation = "H"
            self.direction = EAST if b.x > a.x else WEST
            level = a.y
            axis = "y"
        else:
            self.orientation = "V"
            self.direction = NORTH if b.y > a.y else SOUTH
            level = a.x
            axis = "x"
        if class_a == CONVEX and class_b == CONVEX:
            self.kind = "convex"
            self.facing = _FACING_CONVEX[self.direction]
        elif class_a == REFLEX and class_b == REFLEX:
            self.kind = "reflex"
            self.facing = _FACING_REFLEX[self.direction]
        else:
            self.kind = "mixed"
            self.facing = None
        inward = _INWARD[self.direction]
        sense = 1 if (inward.x + inward.y) > 0 else -1
        self.halfplane = HalfPlane(axis, level, sense)

    @property
    def level(self) -> Fraction:
        return self.a.y if self.orientation == "H" else self.a.x

    def span(self) -> Tuple[Fraction, Fraction]:
        """Closed range of the varying coordinate."""
        if self.orientation == "H":
            lo, hi = self.a.x, self.b.x
        else:
            lo, hi = self.a.y, self.b.y
        return (lo, hi) if lo <= hi else (hi, lo)

    def __repr__(self):
        return f"EdgeRef({self.index}: {self.a}->{self.b} {self.kind} {self.facing or ''})"


class Cut:
    """A horizontal/vertical chord, possibly symbolic ('just below v').

    anchor is a vertex index (int) or a boundary Point.  side is None for a
    cut exactly through the anchor, or 'before'/'after' for the symbolic
    infinitesimal displacement toward smaller/larger level coordinate.
    """

    __slots__ = ("anchor", "orientation", "side", "_chord")

    def __init__(self, anchor: Union[int, Point], orientation: str, side: Optional[str] = None,
                 _chord: Optional["Chord"] = None):
        if orientation not in ("H", "V"):
            raise ValueError("orientation must be 'H' or 'V'")
        if side not in (None, "before", "after"):
            raise ValueError("side must be None, 'before' or 'after'")
        self.anchor = anchor
        self.orientation = orientation
        self.side = side
        self._chord = _chord

    def __repr__(self):
        s = "" if self.side is None else f" {self.side}"
        return f"Cut({self.anchor} {self.orientation}{s})"


class Chord:
    """A materialized cut: the maximal interior segment on an axis line."""

    __slots__ = ("axis", "level", "lo", "hi")

    def __init__(self, axis: str, level: Fraction, lo: Fraction, hi: Fraction):
        self.axis = axis  # 'H': horizontal line y=level ; 'V': vertical x=level
        self.level = level
        self.lo = lo
        self.hi = hi
        if lo >= hi:
            raise NotAChord(f"degenerate chord on {axis}={level}")

    @property
    def a(self) -> Point:
        """Endpoint with the smaller varying coordinate (west / south)."""
        return Point(self.lo, self.level) if self.axis == "H" else Point(self.level, self.lo)

    @property
    def b(self) -> Point:
        return Point(self.hi, self.level) if self.axis == "H" else Point(self.level, self.hi)

    def __repr__(self):
        return f"Chord({self.axis}={self.level}, [{self.lo},{self.hi}])"


def _merge_ring(points: Sequence[Point]) -> List[Point]:
    """Drop repeated and 180-degree (collinear) vertices from a closed ring."""
    pts = list(points)
    # Drop consecutive duplicates.
    out: List[Point] = []
    for p in pts:
        if not out or p != out[-1]:
            out.append(p)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
    # Drop collinear triples until stable.
    changed = True
    while changed and len(out) >= 3:
        changed = False
        for i in range(len(out)):
            a = out[i - 1]
            b = out[i]
            c = out[(i + 1) % len(out)]
            if cross3(a, b, c) == 0:
                out.pop(i)
                changed = True
                break
    return out


class RectPolygon:
    """Immutable simple rectilinear polygon with cached classifications.

    Build through validate() (full checks) or through internal trusted
    constructors for pieces derived from an already-validated polygon.
    """

    __slots__ = ("vertices", "n", "classes", "r", "reflex_indices", "edges",
                 "was_reversed", "_vertex_pos", "area2")

    def __init__(self, vertices: Sequence[Point], was_reversed: bool = False, _trusted: bool = False):
        verts = tuple(vertices)
        if not _trusted:
            raise TypeError("use rectbeacon.polygon.validate() to build a RectPolygon")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "n", len(verts))
        object.__setattr__(self, "was_reversed", was_reversed)
        self._finish()

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("RectPolygon is immutable")

    def _finish(self):
        verts = self.vertices
        n = self.n
        classes = []
        for i in range(n):
            a, b, c = verts[i - 1], verts[i], verts[(i + 1) % n]
            turn = cross3(a, b, c)
            if turn == 0:
                raise NotRectilinear(f"collinear vertex at index {i}: {b}")
            classes.append(CONVEX if turn > 0 else REFLEX)
        classes = tuple(classes)
        object.__setattr__(self, "classes", classes)
        reflex = tuple(i for i in range(n) if classes[i] == REFLEX)
        object.__setattr__(self, "reflex_indices", reflex)
        object.__setattr__(self, "r", len(reflex))
        if n != 2 * self.r + 4:
            raise NotRectilinear(f"n = {n} but 2r+4 = {2 * self.r + 4}; polygon is not CCW-simple")
        edges = tuple(
            EdgeRef(i, verts[i], verts[(i + 1) % n], classes[i], classes[(i + 1) % n])
            for i in range(n)
        )
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_vertex_pos", {p: i for i, p in enumerate(verts)})
        a2 = Fraction(0)
        for i in range(n):
            a2 += verts[i].cross(verts[(i + 1) % n])
        object.__setattr__(self, "area2", a2)

    # ---------------------------------------------------------------- queries

    def vertex(self, i: int) -> Point:
        return self.vertices[i % self.n]

    def classify(self, i: int) -> str:
        """CONVEX or REFLEX for vertex i (interior angle 90 / 270 degrees)."""
        return self.classes[i % self.n]

    def edge(self, i: int) -> EdgeRef:
        return self.edges[i % self.n]

    def reflex_edges(self) -> List[EdgeRef]:
        return [e for e in self.edges if e.kind == "reflex"]

    def area(self) -> Fraction:
        return self.area2 / 2

    def bbox(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def vertex_index(self, p: Point) -> Optional[int]:
        return self._vertex_pos.get(p)

    def contains(self, p: Point) -> str:
        """'in', 'on' or 'out' (closed polygon; exact)."""
        for e in self.edges:
            if on_axis_segment(p, e.a, e.b):
                return "on"
        inside = False
        for e in self.edges:
            if e.orientation != "V":
                continue
            y1, y2 = e.a.y, e.b.y
            lo, hi = (y1, y2) if y1 <= y2 else (y2, y1)
            if e.a.x > p.x and lo <= p.y < hi:
                inside = not inside
        return "in" if inside else "out"

    def monotonicity(self) -> dict:
        """x-monotone iff no vertical reflex edge; y-monotone iff no horizontal one."""
        x_mono = True
        y_mono = True
        for e in self.edges:
            if e.kind == "reflex":
                if e.orientation == "V":
                    x_mono = False
                else:
                    y_mono = False
        return {"x_monotone": x_mono, "y_monotone": y_mono}

    def is_xy_monotone(self) -> bool:
        m = self.monotonicity()
        return m["x_monotone"] and m["y_monotone"]

    # ------------------------------------------------------- boundary walking

    def locate_boundary(self, p: Point) -> Optional[Tuple[int, bool]]:
        """(edge index, at_start_vertex) for a boundary point, else None.

        at_start_vertex is True when p is exactly vertices[index].
        """
        idx = self._vertex_pos.get(p)
        if idx is not None:
            return (idx, True)
        for e in self.edges:
            if on_axis_segment(p, e.a, e.b):
                return (e.index, False)
        return None

    def _boundary_key(self, p: Point) -> Tuple[int, Fraction]:
        """Sortable position of a boundary point along the CCW walk."""
        loc = self.locate_boundary(p)
        if loc is None:
            raise NotAChord(f"{p} is not on the boundary")
        i, at_vertex = loc
        if at_vertex:
            return (i, Fraction(0))
        e = self.edges[i]
        d = e.b - e.a
        num = (p.x - e.a.x) if d.x != 0 else (p.y - e.a.y)
        den = d.x if d.x != 0 else d.y
        return (i, num / den)

    def chain_between(self, a: Point, b: Point) -> List[Point]:
        """Boundary points from a to b walking CCW: [a, intermediate vertices..., b]."""
        ka = self._boundary_key(a)
        kb = self._boundary_key(b)
        if ka == kb:
            raise NotAChord("chain endpoints coincide on the boundary")
        out = [a]
        j = (ka[0] + 1) % self.n
        for _ in range(self.n):
            kj = (j, Fraction(0))
            if kj == kb or not self._cyclic_between(ka, kj, kb):
                break
            out.append(self.vertices[j])
            j = (j + 1) % self.n
        out.append(b)
        return out

    def _cyclic_between(self, ka, k, kb) -> bool:
        """True iff position k lies strictly after ka and strictly before kb (cyclic)."""
        if ka < kb:
            return ka < k < kb
        return k > ka or k < kb

    # ---------------------------------------------------------------- display

    def __repr__(self):
        return f"RectPolygon(n={self.n}, r={self.r})"

    def __eq__(self, other):
        return isinstance(other, RectPolygon) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)


# ------------------------------------------------------------------ validate


def validate(vertex_list: Iterable, merge_collinear: bool = False,
             check_general_position: bool = True) -> RectPolygon:
    """Validate a vertex list into a RectPolygon.

    Accepts Points or (x, y) pairs of ints/strings/Fractions.  Clockwise
    input is reversed automatically and flagged via .was_reversed.
    """
    pts: List[Point] = []
    for item in vertex_list:
        if isinstance(item, Point):
            pts.append(item)
        else:
            x, y = item
            pts.append(Point(scalar(x), scalar(y)))
    if len(pts) < 4:
        raise NotRectilinear("a rectilinear polygon needs at least 4 vertices")
    if merge_collinear:
        pts = _merge_ring(pts)
        if len(pts) < 4:
            raise NotRectilinear("degenerate polygon after merging collinear vertices")

    n = len(pts)
    if len(set(pts)) != n:
        raise NotSimple("repeated vertex")
    # Axis-parallel edges, alternating orientation.
    orients = []
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        if a.x == b.x and a.y != b.y:
            orients.append("V")
        elif a.y == b.y and a.x != b.x:
            orients.append("H")
        else:
            raise NotRectilinear(f"edge {a}->{b} is not axis-parallel (or has zero length)")
    for i in range(n):
        if orients[i] == orients[(i + 1) % n]:
            raise NotRectilinear(
                f"consecutive collinear edges at vertex {pts[(i + 1) % n]}; "
                "either fix the input or pass merge_collinear=True"
            )

    _check_simple(pts, orients)

    # Orientation: normalize to CCW.
    a2 = Fraction(0)
    for i in range(n):
        a2 += pts[i].cross(pts[(i + 1) % n])
    was_reversed = False
    if a2 < 0:
        pts.reverse()
        was_reversed = True

    poly = RectPolygon(pts, was_reversed=was_reversed, _trusted=True)
    if check_general_position:
        _check_general_position(poly)
    return poly


def _check_simple(pts: List[Point], orients: List[str]) -> None:
    n = len(pts)
    h_edges = []  # (y, x1, x2, i)
    v_edges = []  # (x, y1, y2, i)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        if orients[i] == "H":
            x1, x2 = (a.x, b.x) if a.x <= b.x else (b.x, a.x)
            h_edges.append((a.y, x1, x2, i))
        else:
            y1, y2 = (a.y, b.y) if a.y <= b.y else (b.y, a.y)
            v_edges.append((a.x, y1, y2, i))
    h_edges.sort()
    for k in range(1, len(h_edges)):
        y0, x1, x2, i = h_edges[k - 1]
        y1_, x3, x4, j = h_edges[k]
        if y0 == y1_ and x3 <= x2:
            raise NotSimple(f"horizontal edges {i} and {j} overlap on y={y0}")
    v_sorted = sorted(v_edges)
    for k in range(1, len(v_sorted)):
        x0, y1, y2, i = v_sorted[k - 1]
        x1_, y3, y4, j = v_sorted[k]
        if x0 == x1_ and y3 <= y2:
            raise NotSimple(f"vertical edges {i} and {j} overlap on x={x0}")
    # Horizontal x vertical contacts: only adjacent edges may touch (at their
    # shared vertex).
    import bisect

    v_xs = [v[0] for v in v_sorted]
    for y, x1, x2, i in h_edges:
        kx = bisect.bisect_left(v_xs, x1)
        while kx < len(v_sorted) and v_sorted[kx][0] <= x2:
            x, y1, y2, j = v_sorted[kx]
            kx += 1
            if y1 <= y <= y2:
                if (j - i) % n == 1 or (i - j) % n == 1:
                    continue  # consecutive edges share one endpoint by design
                raise NotSimple(f"edges {i} and {j} intersect at ({x},{y})")


def _check_general_position(poly: RectPolygon) -> None:
    refl = [poly.vertices[i] for i in poly.reflex_indices]
    for i in range(len(refl)):
        for j in range(i + 1, len(refl)):
            a, b = refl[i], refl[j]
            if a.x == b.x or a.y == b.y:
                if _open_segment_interior(poly, a, b):
                    raise GeneralPositionViolated(
                        f"cut connects reflex vertices {a} and {b}", pair=(a, b)
                    )


def _open_segment_interior(poly: RectPolygon, a: Point, b: Point) -> bool:
    """True iff the open axis-parallel segment (a, b) lies strictly inside."""
    if a == b:
        return False
    if a.x == b.x:
        lo, hi = (a.y, b.y) if a.y <= b.y else (b.y, a.y)
        for e in poly.edges:
            if e.orientation == "V" and e.a.x == a.x:
                s1, s2 = e.span()
                if s1 < hi and lo < s2:  # overlaps open interval
                    return False
            elif e.orientation == "H":
                x1, x2 = e.span()
                if x1 <= a.x <= x2 and lo < e.a.y < hi:
                    return False
    else:
        lo, hi = (a.x, b.x) if a.x <= b.x else (b.x, a.x)
        for e in poly.edges:
            if e.orientation == "H" and e.a.y == a.y:
                s1, s2 = e.span()
                if s1 < hi and lo < s2:
                    return False
            elif e.orientation == "V":
                y1, y2 = e.span()
                if y1 <= a.y <= y2 and lo < e.a.x < hi:
                    return False
    from .geometry import midpoint

    return poly.contains(midpoint(a, b)) == "in"


# --------------------------------------------------------------- lines, cuts


def chords_on_line(poly: RectPolygon, axis: str, level: Fraction) -> List[Tuple[Fraction, Fraction]]:
    """Maximal closed intervals on the line whose interior is inside poly.

    axis 'H' means the horizontal line y=level; intervals are x-ranges.
    Boundary runs collinear with the line are never part of a chord.
    """
    crossings = []  # x positions where the boundary crosses transversally
    runs = []  # (x1, x2, toggles)
    n = poly.n
    for e in poly.edges:
        if axis == "H":
            if e.orientation == "V":
                y1, y2 = e.span()
                if y1 < level < y2:
                    crossings.append(e.a.x)
            elif e.a.y == level:
                x1, x2 = e.span()
                prev_e = poly.edges[(e.index - 1) % n]
                next_e = poly.edges[(e.index + 1) % n]
                above_prev = max(prev_e.a.y, prev_e.b.y) > level
                above_next = max(next_e.a.y, next_e.b.y) > level
                runs.append((x1, x2, above_prev != above_next))
        else:
            if e.orientation == "H":
                x1, x2 = e.span()
                if x1 < level < x2:
                    crossings.append(e.a.y)
            elif e.a.x == level:
                y1, y2 = e.span()
                prev_e = poly.edges[(e.index - 1) % n]
                next_e = poly.edges[(e.index + 1) % n]
                right_prev = max(prev_e.a.x, prev_e.b.x) > level
                right_next = max(next_e.a.x, next_e.b.x) > level
                runs.append((y1, y2, right_prev != right_next))
    events = [(x, "x", None) for x in crossings] + [(r[0], "run", r) for r in runs]
    events.sort(key=lambda t: (t[0], t[1]))
    chords: List[Tuple[Fraction, Fraction]] = []
    inside = False
    open_at: Optional[Fraction] = None
    pos = None
    for coord, kind, payload in events:
        if kind == "x":
            if inside:
                if open_at is not None and open_at < coord:
                    chords.append((open_at, coord))
                inside = False
                open_at = None
            else:
                inside = True
                open_at = coord
        else:
            x1, x2, toggles = payload
            if inside:
                if open_at is not None and open_at < x1:
                    chords.append((open_at, x1))
            inside = inside != toggles
            open_at = x2 if inside else None
    return chords


def _nearest_level(poly: RectPolygon, coord: Fraction, axis: str, side: str) -> Fraction:
    """Level for a symbolic cut: midway between coord and the nearest distinct
    vertex coordinate on the requested side."""
    vals = sorted({(p.y if axis == "H" else p.x) for p in poly.vertices})
    if side == "before":
        cands = [v for v in vals if v < coord]
        if not cands:
            raise NotAChord(f"no polygon level {'below' if axis == 'H' else 'left of'} {coord}")
        return (coord + cands[-1]) / 2
    cands = [v for v in vals if v > coord]
    if not cands:
        raise NotAChord(f"no polygon level {'above' if axis == 'H' else 'right of'} {coord}")
    return (coord + cands[0]) / 2


def _ray_shoot_axis(poly: RectPolygon, start: Point, direction: Point) -> Point:
    """First boundary point strictly beyond start along an axis direction."""
    best: Optional[Fraction] = None
    horizontal = direction.y == 0
    sign = 1 if (direction.x + direction.y) > 0 else -1
    for e in poly.edges:
        pts_hit: List[Fraction] = []
        if horizontal:
            if e.orientation == "V":
                y1, y2 = e.span()
                if y1 <= start.y <= y2:
                    pts_hit.append(e.a.x)
            else:
                if e.a.y == start.y:
                    x1, x2 = e.span()
                    pts_hit.extend([x1, x2])
        else:
            if e.orientation == "H":
                x1, x2 = e.span()
                if x1 <= start.x <= x2:
                    pts_hit.append(e.a.y)
            else:
                if e.a.x == start.x:
                    y1, y2 = e.span()
                    pts_hit.extend([y1, y2])
        base = start.x if horizontal else start.y
        for h in pts_hit:
            d = (h - base) * sign
            if d > 0 and (best is None or d < best):
                best = d
    if best is None:
        raise NotAChord(f"ray from {start} exits the polygon without hitting the boundary")
    if horizontal:
        return Point(start.x + best * sign, start.y)
    return Point(start.x, start.y + best * sign)


def materialize(poly: RectPolygon, cut: Cut) -> Chord:
    """Turn a possibly-symbolic Cut into a concrete Chord of poly."""
    if cut._chord is not None:
        return cut._chord
    o = cut.orientation
    if isinstance(cut.anchor, int):
        v = poly.vertices[cut.anchor % poly.n]
        if cut.side is None:
            if poly.classify(cut.anchor) != REFLEX:
                raise NotAChord(f"no {o} cut at non-reflex vertex {v}")
            # Chord extends opposite to the incident edge of this orientation.
            inc = [poly.edges[(cut.anchor - 1) % poly.n], poly.edges[cut.anchor % poly.n]]
            same = [e for e in inc if e.orientation == o]
            assert len(same) == 1
            e = same[0]
            d = _DIR_VEC[e.direction]
            if e.b == v:
                away = d  # continue past v in the edge's travel direction
            else:
                away = Point(-d.x, -d.y)
            other = _ray_shoot_axis(poly, v, away)
            if o == "H":
                lo, hi = sorted((v.x, other.x))
                chord = Chord("H", v.y, lo, hi)
            else:
                lo, hi = sorted((v.y, other.y))
                chord = Chord("V", v.x, lo, hi)
        else:
            if o == "H":
                level = _nearest_level(poly, v.y, "H", cut.side)
                want = v.x
            else:
                level = _nearest_level(poly, v.x, "V", cut.side)
                want = v.y
            chord = _chord_at(poly, o, level, want)
    else:
        p = cut.anchor
        loc = poly.locate_boundary(p)
        if loc is None:
            raise NotAChord(f"cut anchor {p} is not on the boundary")
        i, at_vertex = loc
        if at_vertex:
            raise NotAChord("boundary-point cuts must not be anchored at a vertex")
        e = poly.edges[i]
        if (o == "H") == (e.orientation == "H"):
            raise NotAChord("cut orientation runs along its anchor edge")
        inward = _INWARD[e.direction]
        other = _ray_shoot_axis(poly, p, inward)
        if o == "H":
            lo, hi = sorted((p.x, other.x))
            chord = Chord("H", p.y, lo, hi)
        else:
            lo, hi = sorted((p.y, other.y))
            chord = Chord("V", p.x, lo, hi)
    _assert_chord(poly, chord)
    cut._chord = chord
    return chord


def _chord_at(poly: RectPolygon, axis: str, level: Fraction, want: Fraction) -> Chord:
    for lo, hi in chords_on_line(poly, axis, level):
        if lo <= want <= hi:
            return Chord(axis, level, lo, hi)
    raise NotAChord(f"no chord of line {axis}={level} contains coordinate {want}")


def _assert_chord(poly: RectPolygon, chord: Chord) -> None:
    from .geometry import midpoint

    if poly.contains(midpoint(chord.a, chord.b)) != "in":
        raise NotAChord(f"{chord} does not run through the interior")


# -------------------------------------------------------------------- split


def split(poly: RectPolygon, cut: Cut) -> Tuple[RectPolygon, RectPolygon]:
    """Split along a cut: returns (P_minus, P_plus).

    P_minus is below a horizontal cut / left of a vertical one, in the
    locally-adjacent sense: it is the piece whose interior touches the chord
    from that side (it may still reach around to the other side elsewhere).
    """
    minus_ring, plus_ring = _split_rings(poly, cut)
    p_minus = RectPolygon(_merge_ring(minus_ring), _trusted=True)
    p_plus = RectPolygon(_merge_ring(plus_ring), _trusted=True)
    return p_minus, p_plus


def _split_rings(poly: RectPolygon, cut: Cut) -> Tuple[List[Point], List[Point]]:
    chord = materialize(poly, cut)
    a, b = chord.a, chord.b
    ring1 = poly.chain_between(a, b)  # closes with chord edge b -> a
    ring2 = poly.chain_between(b, a)  # closes with chord edge a -> b
    if chord.axis == "H":
        # ring1 traverses the chord westward (b->a): interior below => minus.
        return ring1, ring2
    # Vertical chord: ring2 traverses a->b northward: interior west => minus.
    return ring2, ring1


def count_reflex_below(poly: RectPolygon, cut: Cut) -> int:
    """Reflex vertices of poly strictly inside the P_minus side of the cut."""
    chord = materialize(poly, cut)
    a, b = chord.a, chord.b
    if chord.axis == "H":
        chain = poly.chain_between(a, b)
    else:
        chain = poly.chain_between(b, a)
    count = 0
    for p in chain[1:-1]:
        i = poly.vertex_index(p)
        if i is not None and poly.classes[i] == REFLEX:
            count += 1
    return count


def m_cut_class(poly: RectPolygon, cut: Cut) -> int:
    """m of the m-cut classification: r(P_minus) mod 3."""
    return count_reflex_below(poly, cut) % 3


def pocket(poly: RectPolygon, edge_index: int, vertex_index: int) -> RectPolygon:
    """Pocket of reflex edge e at endpoint v: the split side not containing e."""
    e = poly.edges[edge_index % poly.n]
    if e.kind != "reflex":
        raise NotAChord(f"edge {edge_index} is not a reflex edge")
    vi = vertex_index % poly.n
    v = poly.vertices[vi]
    if v != e.a and v != e.b:
        raise NotAChord(f"vertex {vertex_index} is not an endpoint of edge {edge_index}")
    other = e.b if v == e.a else e.a
    cut = Cut(vi, "H" if e.orientation == "H" else "V")
    minus_ring, plus_ring = _split_rings(poly, cut)
    if other in minus_ring:
        return RectPolygon(_merge_ring(plus_ring), _trusted=True)
    return RectPolygon(_merge_ring(minus_ring), _trusted=True)


def cut_of_edge_through(poly: RectPolygon, edge_index: int, vertex_index: int) -> Cut:
    """The cut obtained by extending edge e through its endpoint v."""
    e = poly.edges[edge_index % poly.n]
    return Cut(vertex_index % poly.n, e.orientation)


# --------------------------------------------------- normal cut enumeration


class NormalCutClass:
    """One combinatorial class of normal cuts (band x chord) with its count."""

    __slots__ = ("orientation", "level", "lo", "hi", "r_minus", "cut")

    def __init__(self, orientation, level, lo, hi, r_minus, cut):
        self.orientation = orientation
        self.level = level
        self.lo = lo
        self.hi = hi
        self.r_minus = r_minus
        self.cut = cut

    def __repr__(self):
        return f"NormalCut({self.orientation}={self.level} [{self.lo},{self.hi}] r-={self.r_minus})"


def iter_normal_cuts(poly: RectPolygon, orientation: str) -> List[NormalCutClass]:
    """All combinatorial classes of normal cuts of one orientation.

    Bands between consecutive distinct vertex levels each contribute one
    representative per chord; r(P_minus) is constant within a class.
    """
    if orientation == "H":
        levels = sorted({p.y for p in poly.vertices})
    else:
        levels = sorted({p.x for p in poly.vertices})
    out: List[NormalCutClass] = []
    for k in range(len(levels) - 1):
        t = (levels[k] + levels[k + 1]) / 2
        for lo, hi in chords_on_line(poly, orientation, t):
            chord = Chord(orientation, t, lo, hi)
            cut = Cut(chord.a, orientation, _chord=chord)
            rm = count_reflex_below(poly, cut)
            out.append(NormalCutClass(orientation, t, lo, hi, rm, cut))
    return out
