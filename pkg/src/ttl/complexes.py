"""Pure simplicial complexes mapped affinely into R^d, and linear (d-1)-thrackles.

A linear (d-1)-thrackle is a pure complex with d-vertex facets, realized in R^d
so that every facet is embedded, any two facets meet in a (d-2)-ball and every
such intersection is stable. For convex polytopes "ball" means nonempty of the
right dimension.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Optional

from .exact import as_point, format_rational
from .geometry import affine_dim, orient, pair_structure


class ComplexError(ValueError):
    pass


class ConstructionError(RuntimeError):
    pass


class ReductionError(RuntimeError):
    pass


@dataclass(frozen=True)
class PureComplex:
    vertices: tuple
    facets: tuple  # tuples of vertex ids, each sorted by vertex order

    def __post_init__(self):
        if not self.facets:
            raise ComplexError("a pure complex needs at least one facet")
        order = {v: i for i, v in enumerate(self.vertices)}
        if len(order) != len(self.vertices):
            raise ComplexError("duplicate vertex id")
        size = len(self.facets[0])
        normalised = []
        for f in self.facets:
            if len(set(f)) != len(f) or len(f) != size:
                raise ComplexError(f"facet {f} does not have {size} distinct vertices")
            if not set(f) <= set(order):
                raise ComplexError(f"facet {f} uses unknown vertices")
            normalised.append(tuple(sorted(f, key=order.__getitem__)))
        if len(set(normalised)) != len(normalised):
            raise ComplexError("repeated facet")
        if {v for f in normalised for v in f} != set(order):
            raise ComplexError("complex is not pure: some vertex lies in no facet")
        object.__setattr__(self, "facets", tuple(normalised))

    @classmethod
    def from_facets(cls, facets, vertices=None):
        facets = [tuple(str(v) for v in f) for f in facets]
        if vertices is None:
            vertices = tuple(dict.fromkeys(v for f in facets for v in f))
        return cls(tuple(str(v) for v in vertices), tuple(facets))

    @property
    def dim(self) -> int:
        return len(self.facets[0]) - 1

    @property
    def m(self) -> int:
        return len(self.facets)

    def order(self):
        return {v: i for i, v in enumerate(self.vertices)}

    def without(self, facet_index: int) -> "PureComplex":
        facets = self.facets[:facet_index] + self.facets[facet_index + 1:]
        used = {v for f in facets for v in f}
        return PureComplex(tuple(v for v in self.vertices if v in used), facets)


def ridges(K: PureComplex) -> dict:
    """Every codimension-one face of a facet, with the number of facets containing it."""
    order = K.order()
    out = {}
    for f in K.facets:
        for r in itertools.combinations(f, len(f) - 1):
            out[r] = out.get(r, 0) + 1
    return dict(sorted(out.items(), key=lambda kv: [order[v] for v in kv[0]]))


# the realization is stored as a plain mapping vertex id -> point


def complex_to_json(K: PureComplex, f: dict) -> dict:
    return {
        "dim": K.dim,
        "facets": [list(s) for s in K.facets],
        "realization": {v: [format_rational(c) for c in f[v]] for v in K.vertices},
    }


def complex_from_json(data: dict):
    try:
        realization = {str(v): as_point(p) for v, p in data["realization"].items()}
        K = PureComplex.from_facets(data["facets"], vertices=tuple(realization))
    except (KeyError, TypeError, AttributeError) as exc:
        raise ComplexError(f"malformed complex: {exc}") from exc
    if "dim" in data and int(data["dim"]) != K.dim:
        raise ComplexError(f"declared dim {data['dim']} but facets have dimension {K.dim}")
    used = {v for s in K.facets for v in s}
    return PureComplex(tuple(v for v in K.vertices if v in used), K.facets), realization


def _ambient(K, f):
    dims = {len(f[v]) for v in K.vertices if v in f}
    missing = [v for v in K.vertices if v not in f]
    if missing:
        raise ComplexError(f"vertices without images: {missing}")
    if len(dims) != 1:
        raise ComplexError("images live in different dimensions")
    d = dims.pop()
    if d != K.dim + 1:
        raise ComplexError(f"facets of dimension {K.dim} need ambient R^{K.dim + 1}, got R^{d}")
    return d


@dataclass(frozen=True)
class StabilityVerdict:
    stable: bool
    kind: str   # common-face | shared-vertex | transverse | boundary-touch | coplanar-overlap


def stability_check(s1, s2, f) -> StabilityVerdict:
    """Whether an arbitrarily small perturbation of f can remove f(s1) & f(s2).

    Facets that share a vertex always keep that common point. Otherwise the
    contact survives perturbation only as a transverse crossing: distinct
    affine hulls, with the relative interior of the intersection inside both
    relative interiors. Coplanar overlaps get their own diagnostic.
    """
    P1, P2 = [f[v] for v in s1], [f[v] for v in s2]
    st = pair_structure(P1, P2)
    if st.dim < 0:
        raise ComplexError("stability is only defined for intersecting facets")
    shared = set(s1) & set(s2)
    if shared:
        off1 = {i for i, v in enumerate(s1) if v not in shared}
        off2 = {i for i, v in enumerate(s2) if v not in shared}
        if st.zero_first == off1 and st.zero_second == off2:
            return StabilityVerdict(True, "common-face")
        return StabilityVerdict(True, "shared-vertex")
    same_hull = affine_dim(P1 + P2) == affine_dim(P1)
    if same_hull:
        return StabilityVerdict(False, "coplanar-overlap")
    if not st.zero_first and not st.zero_second:
        return StabilityVerdict(True, "transverse")
    return StabilityVerdict(False, "boundary-touch")


@dataclass
class ThrackleReport:
    d: int
    m: int
    embedding_failures: list = field(default_factory=list)   # facet indices
    ball_failures: list = field(default_factory=list)        # (i, j, intersection dim)
    stability_failures: list = field(default_factory=list)   # (i, j, kind)
    pair_dims: dict = field(default_factory=dict)
    contact: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not (self.embedding_failures or self.ball_failures or self.stability_failures)

    def __bool__(self):
        return self.passed

    def to_json(self, K: Optional[PureComplex] = None):
        name = (lambda i: list(K.facets[i])) if K else (lambda i: i)
        return {
            "passed": self.passed, "d": self.d, "m": self.m,
            "embedding_failures": [name(i) for i in self.embedding_failures],
            "ball_failures": [{"facets": [name(i), name(j)], "dim": dm}
                              for i, j, dm in self.ball_failures],
            "stability_failures": [{"facets": [name(i), name(j)], "kind": kind}
                                   for i, j, kind in self.stability_failures],
        }


def verify_linear_thrackle(K: PureComplex, f: dict) -> ThrackleReport:
    d = _ambient(K, f)
    rep = ThrackleReport(d, K.m)
    for i, s in enumerate(K.facets):
        if affine_dim([f[v] for v in s]) != len(s) - 1:
            rep.embedding_failures.append(i)
    for i, j in itertools.combinations(range(K.m), 2):
        s1, s2 = K.facets[i], K.facets[j]
        dm = pair_structure([f[v] for v in s1], [f[v] for v in s2]).dim
        rep.pair_dims[(i, j)] = dm
        if dm != d - 2:
            rep.ball_failures.append((i, j, dm))
            continue
        verdict = stability_check(s1, s2, f)
        rep.contact[(i, j)] = verdict.kind
        if not verdict.stable:
            rep.stability_failures.append((i, j, verdict.kind))
    return rep


@dataclass(frozen=True)
class FacetRidgeCount:
    m: int
    n: int
    d: int    # vertices per facet, i.e. ambient dimension of a thrackle

    @property
    def holds(self) -> bool:
        return self.d * self.m <= 2 * self.n


def facet_ridge_inequality(K: PureComplex) -> FacetRidgeCount:
    return FacetRidgeCount(K.m, len(ridges(K)), K.dim + 1)


# -- reduction ----------------------------------------------------------------


@dataclass(frozen=True)
class ReductionStep:
    ridge: tuple
    incident: tuple      # facets containing the ridge at this step
    removed: tuple
    separated: tuple     # two incident facets on strictly opposite sides of the removed one


@dataclass
class ReductionTrace:
    steps: list
    final: PureComplex
    m: int
    n: int
    d: int

    @property
    def holds(self) -> bool:
        return self.d * self.m <= 2 * self.n

    def to_json(self):
        return {
            "steps": [{"ridge": list(s.ridge), "incident": [list(x) for x in s.incident],
                       "removed": list(s.removed), "separated": [list(x) for x in s.separated]}
                      for s in self.steps],
            "final_m": self.m, "final_n": self.n, "d": self.d, "holds": self.holds,
        }


def _side(facet_pts, q) -> int:
    return orient(list(facet_pts) + [q])


def _removable(K, f, ridge, incident, cand):
    """Two other incident facets whose off-ridge vertices lie strictly on either side."""
    pts = [f[v] for v in cand]
    sides = {}
    for other in incident:
        if other == cand:
            continue
        apex = next(v for v in other if v not in ridge)
        s = _side(pts, f[apex])
        if s and -s in sides:
            return (sides[-s], other)
        sides.setdefault(s, other)
    return None


def reduction(K: PureComplex, f: dict, check: bool = True) -> ReductionTrace:
    """Remove facets until every ridge lies in at most two, recording each step."""
    if check:
        rep = verify_linear_thrackle(K, f)
        if not rep:
            raise ReductionError("input is not a linear thrackle")
    steps = []
    cur = K
    while True:
        counts = ridges(cur)
        heavy = [r for r, c in counts.items() if c >= 3]
        if not heavy:
            break
        tau = heavy[0]
        incident = [s for s in cur.facets if set(tau) <= set(s)]
        for cand in incident:
            sep = _removable(cur, f, tau, incident, cand)
            if sep is None:
                continue
            own = [r for r in itertools.combinations(cand, len(cand) - 1) if r != tau]
            if any(counts[r] > 1 for r in own):
                raise ReductionError(
                    f"facet {cand} separates at ridge {tau} but shares another ridge")
            steps.append(ReductionStep(tau, tuple(incident), cand, sep))
            cur = cur.without(cur.facets.index(cand))
            break
        else:
            raise ReductionError(f"no incident facet separates the others at ridge {tau}")
    c = facet_ridge_inequality(cur)
    return ReductionTrace(steps, cur, c.m, c.n, c.d)


def replay_reduction(K: PureComplex, f: dict, trace: ReductionTrace) -> bool:
    """Re-apply the recorded removals, re-checking every step."""
    cur = K
    for step in trace.steps:
        counts = ridges(cur)
        if counts.get(step.ridge, 0) < 3 or step.removed not in cur.facets:
            return False
        incident = [s for s in cur.facets if set(step.ridge) <= set(s)]
        if tuple(incident) != step.incident:
            return False
        a, b = step.separated
        pts = [f[v] for v in step.removed]
        sa = _side(pts, f[next(v for v in a if v not in step.ridge)])
        sb = _side(pts, f[next(v for v in b if v not in step.ridge)])
        if sa * sb != -1:
            return False
        own = [r for r in itertools.combinations(step.removed, len(step.removed) - 1)
               if r != step.ridge]
        if any(counts[r] > 1 for r in own):
            return False
        cur = cur.without(cur.facets.index(step.removed))
        if not verify_linear_thrackle(cur, f):
            return False
    return cur.facets == trace.final.facets and all(c <= 2 for c in ridges(cur).values())


# -- links and counting transfer ---------------------------------------------------


def vertex_link(K: PureComplex, v) -> PureComplex:
    if v not in K.vertices:
        raise ComplexError(f"{v!r} is not a vertex")
    facets = [tuple(u for u in s if u != v) for s in K.facets if v in s]
    if not facets[0]:
        raise ComplexError("link of a vertex in a 0-dimensional complex is empty")
    used = {u for s in facets for u in s}
    return PureComplex(tuple(u for u in K.vertices if u in used), tuple(facets))


@dataclass(frozen=True)
class CountingTransfer:
    c: Fraction
    per_vertex: dict        # v -> (f_top(v), f_ridge(v), holds)
    local_holds: bool
    global_lhs: int         # (d+1) m
    global_rhs: Fraction    # 2 c n
    global_holds: bool


def counting_transfer(K: PureComplex, c) -> CountingTransfer:
    """Per-link d f_{d-1}(v) <= 2c f_{d-2}(v), and the summed (d+1) m <= 2 c n."""
    c = Fraction(c)
    if c <= 0:
        raise ValueError("c must be positive")
    d = K.dim  # links have (d-1)-dimensional facets with d vertices
    per = {}
    for v in K.vertices:
        L = vertex_link(K, v)
        top, low = L.m, len(ridges(L))
        per[v] = (top, low, d * top <= 2 * c * low)
    local = all(h for _, _, h in per.values())
    n = len(ridges(K))
    lhs, rhs = (d + 1) * K.m, 2 * c * n
    if local:
        # summing the local inequalities counts each facet d+1 times and each ridge d times
        assert sum(t for t, _, _ in per.values()) == (d + 1) * K.m
        assert sum(r for _, r, _ in per.values()) == d * n
        assert lhs <= rhs
    return CountingTransfer(c, per, local, lhs, rhs, lhs <= rhs)


FULEK_PACH_C = Fraction(1428, 1000)


# -- constructions ----------------------------------------------------------------


def simplex_boundary(d: int):
    """Boundary of the d-simplex on the origin and 2 e_1, ..., 2 e_d in R^d."""
    if d < 2:
        raise ValueError("d must be at least 2")
    f = {"0": tuple(Fraction(0) for _ in range(d))}
    for i in range(d):
        f[str(i + 1)] = tuple(Fraction(2 if c == i else 0) for c in range(d))
    verts = tuple(f)
    K = PureComplex.from_facets(itertools.combinations(verts, d), vertices=verts)
    return K, f


def pyramid_example():
    """All ten triangles of a square pyramid plus its base and diagonal triangles."""
    f = {"1": (-1, -1, 0), "2": (1, -1, 0), "3": (1, 1, 0), "4": (-1, 1, 0), "5": (0, 0, 1)}
    f = {k: as_point(v) for k, v in f.items()}
    facets = ["125", "235", "345", "145", "123", "234", "134", "124", "135", "245"]
    return PureComplex.from_facets([tuple(s) for s in facets], vertices=tuple(f)), f


def book_example():
    """Three triangles hinged on one edge, fanned out to roughly 0, 135 and 225 degrees."""
    f = {"a": (0, 0, 0), "b": (0, 0, 2), "p": (1, 0, 1), "q": (-1, 1, 1), "r": (-1, -1, 1)}
    f = {k: as_point(v) for k, v in f.items()}
    return PureComplex.from_facets([("a", "b", "p"), ("a", "b", "q"), ("a", "b", "r")]), f


STAR_NAMES = "GABCDEF"  # heptagon vertex i carries letter STAR_NAMES[i]


def star_cone_complex(second_apex):
    """Cone the {7/3} star to an apex over its centre, and three star edges to a second apex."""
    from .convex_thrackle import heptagon, star_edges
    pts = heptagon()
    z = Fraction(0)
    f = {STAR_NAMES[i]: p + (z,) for i, p in enumerate(pts)}
    cx = sum((p[0] for p in pts), z) / 7
    cy = sum((p[1] for p in pts), z) / 7
    f["P"] = (cx, cy, Fraction(1))
    f["Q"] = as_point(second_apex)
    edges = [(STAR_NAMES[a], STAR_NAMES[b]) for a, b in star_edges(7, 3)]
    marked = [e for e in edges if set(e) in ({"A", "D"}, {"G", "C"}, {"B", "E"})]
    facets = [e + ("P",) for e in edges] + [e + ("Q",) for e in marked]
    return PureComplex.from_facets(facets, vertices=tuple(f)), f


def search_second_apex(seed: int = 0, tries: int = 4000):
    """Seeded rational search for a second apex making the star cone a linear 2-thrackle."""
    import random
    rng = random.Random(seed)
    for _ in range(tries):
        q = (Fraction(rng.randint(-30, 30), 10), Fraction(rng.randint(-30, 30), 10),
             Fraction(rng.randint(1, 30), 10))
        K, f = star_cone_complex(q)
        if verify_linear_thrackle(K, f):
            return q
    raise ConstructionError("no admissible second apex found")


def star_cone_example():
    data = json.loads(resources.files("ttl").joinpath("data").joinpath("star_cone.json").read_text())
    K, f = star_cone_complex(as_point(data["second_apex"]))
    if not verify_linear_thrackle(K, f):
        raise ConstructionError("frozen second apex no longer yields a linear thrackle")
    return K, f
