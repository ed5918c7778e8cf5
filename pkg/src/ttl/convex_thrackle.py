"""Thrackles of convex sets: planar bodies over a vertex set V with a transversal W.

A family of convex hulls C_1..C_m of subsets of V is a thrackle of convex sets
when some finite W containing V meets every pairwise intersection C_i & C_j in
exactly one point.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exact import as_point, cross2, dot, format_rational, sub
from .geometry import (DimensionMismatch, affine_dim, hull_membership, hulls_intersect,
                       pair_structure)
from .projective import IncidenceStructure

ZERO = Fraction(0)
ONE = Fraction(1)

# tan(theta/2) for theta = 90 + 360 i / 7 degrees, rounded to small rationals
HEPTAGON_T = (Fraction(1), Fraction(20, 7), Fraction(-71, 8), Fraction(-19, 12),
              Fraction(-5, 8), Fraction(-1, 9), Fraction(4, 11))


class InvalidInstance(ValueError):
    pass


class HypothesisViolation(ValueError):
    pass


class DataCorruption(ValueError):
    pass


def circle_point(t: Fraction) -> tuple:
    t = Fraction(t)
    return ((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))


def convex_polygon(n: int) -> list:
    """n rational points on the unit circle, monotone in angle (t = 1..n)."""
    return [circle_point(Fraction(t)) for t in range(1, n + 1)]


def heptagon() -> list:
    return [circle_point(t) for t in HEPTAGON_T]


def ccw_hull(points):
    """Extreme points in counterclockwise order (monotone chain, exact)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross2(sub(out[-1], out[-2]), sub(p, out[-2])) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = half(pts), half(reversed(pts))
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class ThrackleInstance:
    dim: int
    W: tuple        # (id, point) pairs
    V: tuple        # ids of vertices, a subset of W's ids
    bodies: tuple   # tuples of vertex ids
    _coords: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        coords = {}
        for wid, p in self.W:
            if wid in coords:
                raise InvalidInstance(f"duplicate W id {wid!r}")
            if len(p) != self.dim:
                raise DimensionMismatch(f"point {wid!r} is not in R^{self.dim}")
            coords[wid] = p
        object.__setattr__(self, "_coords", coords)
        if not set(self.V) <= set(coords):
            raise InvalidInstance("V must be a subset of W")
        hulls = set()
        for i, body in enumerate(self.bodies):
            if not body:
                raise InvalidInstance(f"body {i} is empty")
            if not set(body) <= set(self.V):
                raise InvalidInstance(f"body {i} uses points outside V")
            pts = [coords[v] for v in body]
            if affine_dim(pts) == 0:
                raise InvalidInstance(f"body {i} is a single point")
            key = frozenset(self.extreme_vertices(i))
            if key in hulls:
                raise InvalidInstance(f"body {i} repeats an earlier convex hull")
            hulls.add(key)

    def point(self, wid):
        return self._coords[wid]

    def body_points(self, i):
        return [self._coords[v] for v in self.bodies[i]]

    def body_dim(self, i) -> int:
        return affine_dim(self.body_points(i))

    def extreme_vertices(self, i) -> tuple:
        """Ids of the body's listed points that are vertices of its hull."""
        body = list(dict.fromkeys(self.bodies[i]))
        out = []
        for v in body:
            p = self._coords[v]
            others = [self._coords[u] for u in body if u != v and self._coords[u] != p]
            if not others or not hull_membership(p, others):
                if all(self._coords[u] != p for u in out):
                    out.append(v)
        return tuple(out)

    @property
    def m(self):
        return len(self.bodies)

    @property
    def n(self):
        return len(self.V)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "W": [{"id": wid, "coords": [format_rational(c) for c in p]} for wid, p in self.W],
            "V": list(self.V),
            "bodies": [list(b) for b in self.bodies],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ThrackleInstance":
        try:
            W = tuple((str(e["id"]), as_point(e["coords"])) for e in data["W"])
            return cls(int(data["dim"]), W, tuple(str(v) for v in data["V"]),
                       tuple(tuple(str(v) for v in b) for b in data["bodies"]))
        except (KeyError, TypeError) as exc:
            raise InvalidInstance(f"malformed thrackle instance: {exc}") from exc


@dataclass(frozen=True)
class TransversalReport:
    ok: bool
    counts: dict                       # (i, j) -> |C_i & C_j & W|
    violation: Optional[tuple] = None  # first (i, j, count) with count != 1

    def __bool__(self):
        return self.ok


def body_contents(inst: ThrackleInstance) -> list:
    """For each body, the set of W ids lying in its convex hull."""
    out = []
    for i in range(inst.m):
        pts = inst.body_points(i)
        own = set(inst.bodies[i])
        inside = {wid for wid, p in inst.W if wid in own or hull_membership(p, pts)}
        out.append(inside)
    return out


def check_transversal(inst: ThrackleInstance) -> TransversalReport:
    contents = body_contents(inst)
    counts = {}
    violation = None
    for i, j in itertools.combinations(range(inst.m), 2):
        c = len(contents[i] & contents[j])
        counts[(i, j)] = c
        if c != 1 and violation is None:
            violation = (i, j, c)
    return TransversalReport(violation is None, counts, violation)


def derive_transversal(vertices, bodies, dim: int = 2, prefix: str = "x") -> ThrackleInstance:
    """Instance whose W is V plus every pairwise intersection that is a single point.

    ``vertices`` maps id -> point. Intersections of higher dimension add
    nothing; :func:`check_transversal` then decides whether V already meets them once.
    """
    W = [(vid, as_point(p)) for vid, p in vertices.items()]
    seen = {p for _, p in W}
    coords = dict(W)
    extra = 0
    for a, b in itertools.combinations(range(len(bodies)), 2):
        s = pair_structure([coords[v] for v in bodies[a]], [coords[v] for v in bodies[b]])
        if s.dim == 0 and s.interior_point not in seen:
            extra += 1
            W.append((f"{prefix}{extra}", s.interior_point))
            seen.add(s.interior_point)
    return ThrackleInstance(dim, tuple(W), tuple(vertices), tuple(tuple(b) for b in bodies))


# -- vertex selection -----------------------------------------------------------


@dataclass
class SelectionMap:
    choice: dict                                # vertex id -> body index
    case: dict                                  # vertex id -> "1", "2", "3" or "none"
    flags: list = field(default_factory=list)   # advisory notes (shared vertices etc.)

    def selected_bodies(self) -> set:
        return set(self.choice.values())

    def is_surjective(self, m: int) -> bool:
        return self.selected_bodies() == set(range(m))

    def to_json(self):
        return {"choice": {v: b for v, b in sorted(self.choice.items())},
                "case": dict(sorted(self.case.items())), "flags": list(self.flags)}


def _same_direction(u, v) -> bool:
    return cross2(u, v) == 0 and dot(u, v) > 0


def _select_ray(rays):
    """The ray whose clockwise angle to every other ray lies strictly in (0, pi)."""
    for k, (rho, body) in enumerate(rays):
        if all(cross2(rho, sigma) < 0 for j, (sigma, _) in enumerate(rays) if j != k):
            return body
    return None


def check_selection_hypotheses(inst: ThrackleInstance, report: Optional[TransversalReport] = None):
    if inst.dim != 2:
        raise HypothesisViolation("vertex selection is planar only")
    report = report or check_transversal(inst)
    if not report:
        i, j, c = report.violation
        raise HypothesisViolation(f"bodies {i} and {j} meet W in {c} points")
    full = [i for i in range(inst.m) if inst.body_dim(i) == 2]
    verts = {i: set(inst.extreme_vertices(i)) for i in full}
    for i, j in itertools.combinations(full, 2):
        shared = verts[i] & verts[j]
        if shared:
            raise HypothesisViolation(
                f"2-dimensional bodies {i} and {j} share vertices {sorted(shared)}")


def vertex_selection(inst: ThrackleInstance, check: bool = True) -> SelectionMap:
    """Each vertex picks at most one incident body (segment rays and one wedge)."""
    if check:
        check_selection_hypotheses(inst)
    dims = [inst.body_dim(i) for i in range(inst.m)]
    extremes = [inst.extreme_vertices(i) for i in range(inst.m)]
    polygons = {}
    for i in range(inst.m):
        if dims[i] == 2:
            polygons[i] = ccw_hull([inst.point(v) for v in extremes[i]])
    sel = SelectionMap({}, {})
    for v in inst.V:
        p = inst.point(v)
        rays, wedge = [], None
        for i in range(inst.m):
            if v not in extremes[i]:
                continue
            if dims[i] == 1:
                other = next(u for u in extremes[i] if u != v)
                rays.append((sub(inst.point(other), p), i))
            else:
                if wedge is not None:
                    raise HypothesisViolation(f"vertex {v} lies on two 2-dimensional bodies")
                poly = polygons[i]
                k = poly.index(p)
                cw_side = sub(poly[(k + 1) % len(poly)], p)   # toward the next vertex
                ccw_side = sub(poly[k - 1], p)                # toward the previous vertex
                wedge = (cw_side, ccw_side, i)
        for (u, a), (w, b) in itertools.combinations(rays, 2):
            if _same_direction(u, w):
                raise DataCorruption(f"bodies {a} and {b} leave vertex {v} in the same direction")
        if wedge is not None:
            cw_side, ccw_side, wi = wedge
            for u, a in rays:
                if _same_direction(u, cw_side) or _same_direction(u, ccw_side):
                    raise DataCorruption(f"body {a} runs along an edge of body {wi} at {v}")
            for u, a in rays:
                if set(extremes[a]) & set(extremes[wi]) - {v}:
                    sel.flags.append(f"segment {a} shares both endpoints with 2-dimensional body {wi}")
            inside = [a for u, a in rays if cross2(cw_side, u) > 0 and cross2(u, ccw_side) > 0]
            if inside:
                case, candidates = "2", rays
            else:
                case, candidates = "3", rays + [(ccw_side, wi)]
        else:
            case, candidates = "1", rays
        chosen = _select_ray(candidates) if candidates else None
        if chosen is None:
            sel.case[v] = "none"
        else:
            sel.case[v] = case
            sel.choice[v] = chosen
    sel.flags = sorted(set(sel.flags))
    return sel


# -- constructions ------------------------------------------------------------------


def plane_thrackle_from_incidence(inc: IncidenceStructure) -> ThrackleInstance:
    """Vertices on a convex n-gon, one body per line; W = V."""
    inc.validate()
    pts = convex_polygon(inc.n_points)
    ids = tuple(f"v{i + 1}" for i in range(inc.n_points))
    W = tuple(zip(ids, pts))
    bodies = tuple(tuple(ids[i] for i in line) for line in inc.lines)
    return ThrackleInstance(2, W, ids, bodies)


def star_edges(n: int, step: int) -> list:
    return [(i, (i + step) % n) for i in range(n)]


def heptagram_thrackle() -> ThrackleInstance:
    """The star polygon {7/3}: seven segments, every two meeting exactly once."""
    pts = heptagon()
    verts = {f"v{i + 1}": p for i, p in enumerate(pts)}
    bodies = [(f"v{a + 1}", f"v{b + 1}") for a, b in star_edges(7, 3)]
    return derive_transversal(verts, bodies)


def quad_apex_thrackle() -> ThrackleInstance:
    """A quadrilateral and the four segments from its corners to an outside apex."""
    quad = {"q1": (0, 1), "q2": (0, -1), "q3": (1, -2), "q4": (1, 2)}
    verts = dict(quad, a=(4, 0))
    bodies = [tuple(quad)] + [(q, "a") for q in quad]
    return derive_transversal(verts, bodies)


def seven_gon_example() -> ThrackleInstance:
    """The 21 triangles on a heptagon that contain exactly one of its edges; W = V."""
    pts = heptagon()
    ids = tuple(f"v{i + 1}" for i in range(7))
    bodies = []
    for i in range(7):
        a, b = i, (i + 1) % 7
        for j in range(7):
            if j not in (a, b, (i - 1) % 7, (i + 2) % 7):
                bodies.append(tuple(ids[t] for t in sorted((a, b, j))))
    return ThrackleInstance(2, tuple(zip(ids, pts)), ids, tuple(bodies))


def octahedron_counterexample() -> ThrackleInstance:
    """Three diagonals and four alternating faces of the octahedron; W = V + origin."""
    e = {}
    for axis in range(3):
        for s, name in ((1, "+"), (-1, "-")):
            e[f"{name}e{axis + 1}"] = tuple(Fraction(s if c == axis else 0) for c in range(3))
    V = tuple(e)
    W = tuple(e.items()) + (("o", (ZERO, ZERO, ZERO)),)
    bodies = (("+e1", "-e1"), ("+e2", "-e2"), ("+e3", "-e3"),
              ("+e1", "+e2", "+e3"), ("+e1", "-e2", "-e3"),
              ("-e1", "+e2", "-e3"), ("-e1", "-e2", "+e3"))
    return ThrackleInstance(3, W, V, bodies)


def random_segment_thrackle(seed: int) -> ThrackleInstance:
    """Seeded segment-only thrackle: an odd star polygon on random convex points.

    A random nonempty subset of its edges is kept and the picture is pushed
    through a random rational affine map.
    """
    rng = random.Random(seed)
    n = rng.choice((3, 5, 7, 9))
    ts = sorted({Fraction(rng.randint(-400, 400), rng.randint(1, 40)) for _ in range(3 * n)})
    ts = sorted(rng.sample(ts, n))
    pts = [circle_point(t) for t in ts]
    while True:
        a, b, c, d = (Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(4))
        if a * d - b * c != 0:
            break
    shift = (Fraction(rng.randint(-9, 9)), Fraction(rng.randint(-9, 9)))
    pts = [(a * x + b * y + shift[0], c * x + d * y + shift[1]) for x, y in pts]
    edges = star_edges(n, (n - 1) // 2)
    keep = [e for e in edges if rng.random() < 0.75] or [edges[0]]
    used = sorted({v for e in keep for v in e})
    verts = {f"v{i + 1}": pts[i] for i in used}
    bodies = [(f"v{x + 1}", f"v{y + 1}") for x, y in keep]
    return derive_transversal(verts, bodies)
