"""Exact convexity predicates over rational point sets.

Hull membership and hull intersection are decided by exact LP feasibility
(:mod:`ttl.lp`); affine dimensions come from exact rank computations.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import exact
from .exact import Point, as_point, format_rational
from .lp import solve_standard

ZERO = Fraction(0)
ONE = Fraction(1)

DEFAULT_SGP_MAX_POINTS = 10


class DimensionMismatch(ValueError):
    pass


class EmptyInput(ValueError):
    pass


class SizeGuardError(ValueError):
    """Raised when an exhaustive check would exceed its configured size cap."""


class ResampleBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class PointConfiguration:
    """Labelled points in R^dim with optional colour classes."""

    dim: int
    ids: tuple
    points: tuple
    colors: tuple = ()

    def __post_init__(self):
        if len(self.ids) != len(self.points):
            raise ValueError("ids and points differ in length")
        if len(set(self.ids)) != len(self.ids):
            raise ValueError("point ids must be unique")
        for p in self.points:
            if len(p) != self.dim:
                raise DimensionMismatch(f"point {p} is not in R^{self.dim}")
        if self.colors:
            if len(self.colors) != len(self.points):
                raise ValueError("colors must be given for every point or none")
            present = {c for c in self.colors if c is not None}
            if None in self.colors:
                raise ValueError("colors must be given for every point or none")
            if present != set(range(len(present))):
                raise ValueError("colors must form a contiguous range 0..c")

    @classmethod
    def from_points(cls, points, ids=None, colors=None, dim=None):
        pts = tuple(as_point(p) for p in points)
        if dim is None:
            if not pts:
                raise EmptyInput("cannot infer the dimension of an empty configuration")
            dim = len(pts[0])
        if ids is None:
            ids = tuple(f"p{i + 1}" for i in range(len(pts)))
        return cls(dim, tuple(ids), pts, tuple(colors) if colors else ())

    def __len__(self):
        return len(self.points)

    def color_classes(self):
        classes = {}
        for p, c in zip(self.points, self.colors):
            classes.setdefault(c, []).append(p)
        return [classes[c] for c in sorted(classes)]

    def to_json(self) -> dict:
        out = []
        for i, (pid, p) in enumerate(zip(self.ids, self.points)):
            entry = {"id": pid, "coords": [format_rational(c) for c in p]}
            if self.colors:
                entry["color"] = self.colors[i]
            out.append(entry)
        return {"dim": self.dim, "points": out}

    @classmethod
    def from_json(cls, data: dict) -> "PointConfiguration":
        try:
            dim = int(data["dim"])
            entries = data["points"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed point configuration: {exc}") from exc
        ids = tuple(str(e["id"]) for e in entries)
        pts = tuple(as_point(e["coords"]) for e in entries)
        colors = tuple(e.get("color") for e in entries)
        if all(c is None for c in colors):
            colors = ()
        return cls(dim, ids, pts, colors)


@dataclass(frozen=True)
class Membership:
    inside: bool
    coefficients: Optional[tuple] = None

    def __bool__(self):
        return self.inside


@dataclass(frozen=True)
class Intersection:
    nonempty: bool
    witness: Optional[Point] = None

    def __bool__(self):
        return self.nonempty


def _check_dims(point_lists, dim=None):
    for pts in point_lists:
        for p in pts:
            if dim is None:
                dim = len(p)
            elif len(p) != dim:
                raise DimensionMismatch("points of different dimensions")
    return dim


def orient(simplex: Sequence[Point]) -> int:
    """Sign of det[p1 - p0, ..., pd - p0] for d+1 points in R^d."""
    if not simplex:
        raise EmptyInput("orient needs d+1 points")
    d = len(simplex[0])
    _check_dims([simplex], d)
    if len(simplex) != d + 1:
        raise DimensionMismatch(f"orient needs {d + 1} points in R^{d}, got {len(simplex)}")
    base = simplex[0]
    return exact.sign(exact.determinant([exact.sub(p, base) for p in simplex[1:]]))


def hull_membership(q: Point, S: Sequence[Point]) -> Membership:
    """Decide q in conv(S); the witness is a list of convex coefficients."""
    if not S:
        raise EmptyInput("hull of an empty set")
    d = len(q)
    _check_dims([S], d)
    A = [[ONE] * len(S)] + [[p[c] for p in S] for c in range(d)]
    b = [ONE] + list(q)
    sol = solve_standard(A, b)
    if sol is None:
        return Membership(False)
    return Membership(True, tuple(sol))


def _joint_system(families):
    """Equality system in the stacked convex coefficients of all families."""
    d = len(families[0][0])
    sizes = [len(f) for f in families]
    nvar = sum(sizes)
    offsets = list(itertools.accumulate([0] + sizes))
    A, b = [], []
    for i, f in enumerate(families):
        row = [ZERO] * nvar
        for j in range(len(f)):
            row[offsets[i] + j] = ONE
        A.append(row)
        b.append(ONE)
    first = families[0]
    for i in range(1, len(families)):
        f = families[i]
        for c in range(d):
            row = [ZERO] * nvar
            for j, p in enumerate(first):
                row[j] = p[c]
            for j, p in enumerate(f):
                row[offsets[i] + j] = -p[c]
            A.append(row)
            b.append(ZERO)
    return A, b, offsets


def _combine(coeffs, pts, d):
    return tuple(sum((l * p[c] for l, p in zip(coeffs, pts)), ZERO) for c in range(d))


def hulls_intersect(families: Sequence[Sequence[Point]]) -> Intersection:
    """Decide whether the convex hulls of all families share a point."""
    if not families:
        raise EmptyInput("no families given")
    if any(len(f) == 0 for f in families):
        raise EmptyInput("empty family")
    d = _check_dims(families)
    if len(families) == 1:
        return Intersection(True, tuple(families[0][0]))
    A, b, offsets = _joint_system(families)
    sol = solve_standard(A, b)
    if sol is None:
        return Intersection(False)
    first = families[0]
    return Intersection(True, _combine(sol[: len(first)], first, d))


def affine_dim(S: Sequence[Point]) -> int:
    if not S:
        raise EmptyInput("affine hull of an empty set")
    _check_dims([S])
    base = S[0]
    return exact.rank([exact.sub(p, base) for p in S[1:]])


def positive_support(A, b):
    """Coordinates that can be strictly positive on the polytope {x >= 0, Ax = b}.

    Returns ``(support, interior)`` where ``interior`` is a point that is positive
    exactly on ``support`` (a relative-interior point), or None when empty.
    The polytope must be bounded; each candidate coordinate is probed with the
    homogenised system ``A x - b t = 0, x_j = 1``.
    """
    x0 = solve_standard(A, b)
    if x0 is None:
        return None
    n = len(x0)
    witnesses = [x0]
    support = {j for j in range(n) if x0[j] > 0}
    homog = [list(row) + [-bi] for row, bi in zip(A, b)]
    for j in range(n):
        if j in support:
            continue
        probe = [ZERO] * (n + 1)
        probe[j] = ONE
        sol = solve_standard(homog + [probe], [ZERO] * len(homog) + [ONE])
        if sol is None:
            continue
        t = sol[n]
        x = [v / t for v in sol[:n]]
        witnesses.append(x)
        support.update(i for i in range(n) if x[i] > 0)
    k = len(witnesses)
    interior = [sum((w[i] for w in witnesses), ZERO) / k for i in range(n)]
    return support, interior


@dataclass(frozen=True)
class PairStructure:
    """Face structure of conv(S1) & conv(S2) in terms of convex coefficients."""

    dim: int
    zero_first: frozenset   # coefficient indices of S1 that vanish on the whole intersection
    zero_second: frozenset
    interior_point: Optional[Point]


def pair_structure(S1: Sequence[Point], S2: Sequence[Point]) -> PairStructure:
    if not S1 or not S2:
        raise EmptyInput("empty point list")
    d = _check_dims([S1, S2])
    A, b, offsets = _joint_system([list(S1), list(S2)])
    res = positive_support(A, b)
    if res is None:
        return PairStructure(-1, frozenset(), frozenset(), None)
    support, interior = res
    n1 = len(S1)
    cols = sorted(support)
    A_J = [[row[j] for j in cols] for row in A]
    directions = exact.nullspace(A_J, len(cols))
    images = []
    for v in directions:
        lam = [ZERO] * n1
        for val, j in zip(v, cols):
            if j < n1:
                lam[j] = val
        images.append(_combine(lam, S1, d))
    dim = exact.rank(images) if images else 0
    zero1 = frozenset(j for j in range(n1) if j not in support)
    zero2 = frozenset(j - n1 for j in range(n1, n1 + len(S2)) if j not in support)
    return PairStructure(dim, zero1, zero2, _combine(interior[:n1], S1, d))


def intersection_dim(S1: Sequence[Point], S2: Sequence[Point]) -> int:
    """Affine dimension of conv(S1) & conv(S2), or -1 when they are disjoint."""
    return pair_structure(S1, S2).dim


# -- affine subspaces -------------------------------------------------------


def affine_equations(S: Sequence[Point]):
    """Rows (N, c) with aff(S) = {x : N x = c}; len(N) is the codimension."""
    d = len(S[0])
    base = S[0]
    dirs = [exact.sub(p, base) for p in S[1:]]
    normals = exact.nullspace(dirs, d) if dirs else [
        [Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    return [(n, exact.dot(n, base)) for n in normals]


def _intersection_codim(equations):
    """codim of the intersection, or None if the affine subspaces miss each other."""
    if not equations:
        return 0
    rows = [n for n, _ in equations]
    rhs = [c for _, c in equations]
    if not exact.solve_consistent(rows, rhs):
        return None
    return exact.rank(rows)


@dataclass(frozen=True)
class SGPResult:
    ok: bool
    violation: Optional[tuple] = None  # tuple of index tuples

    def __bool__(self):
        return self.ok


def strong_general_position(config: PointConfiguration, r_max: Optional[int] = None,
                            max_points: int = DEFAULT_SGP_MAX_POINTS,
                            override: bool = False) -> SGPResult:
    """Exhaustive strong-general-position test.

    For every family of 2..r_max pairwise disjoint nonempty subsets, the affine
    hulls must either miss each other or meet with codimension equal to the sum
    of their codimensions. Subsets spanning the whole space have codimension 0
    and never affect either side, so only proper subsets are enumerated.
    """
    n = len(config)
    if n == 0:
        raise EmptyInput("empty configuration")
    if n > max_points and not override:
        raise SizeGuardError(
            f"exhaustive strong-general-position check refused for {n} > {max_points} points")
    if r_max is None:
        r_max = n
    if r_max < 2:
        raise ValueError("r_max must be at least 2")
    d = config.dim
    pts = config.points
    proper = []
    for mask in range(1, 1 << n):
        idx = tuple(i for i in range(n) if mask >> i & 1)
        sub = [pts[i] for i in idx]
        eqs = affine_equations(sub)
        if eqs:
            proper.append((mask, idx, eqs))

    def search(start, used, family, eqs, codim_sum):
        for pos in range(start, len(proper)):
            mask, idx, sub_eqs = proper[pos]
            if mask & used:
                continue
            new_eqs = eqs + sub_eqs
            new_sum = codim_sum + len(sub_eqs)
            codim = _intersection_codim(new_eqs)
            fam = family + (idx,)
            if codim is None:
                continue
            if len(fam) >= 2 and codim != new_sum:
                return fam
            if len(fam) < r_max:
                hit = search(pos + 1, used | mask, fam, new_eqs, new_sum)
                if hit:
                    return hit
        return None

    bad = search(0, 0, (), [], 0)
    return SGPResult(bad is None, bad)


def affinely_generic(points: Sequence[Point]) -> bool:
    """No d+1 of the points are affinely dependent."""
    if not points:
        return True
    d = len(points[0])
    for sub in itertools.combinations(points, min(d + 1, len(points))):
        if affine_dim(sub) != len(sub) - 1:
            return False
    return True


def sample_generic_config(d: int, n: int, seed: int, budget: int = 10_000,
                          spread: int = 97) -> PointConfiguration:
    """Seeded rational points with no d+1 of them affinely dependent."""
    if d < 1 or n < 1:
        raise ValueError("need d >= 1 and n >= 1")
    rng = random.Random(seed)
    pts: list = []
    attempts = 0
    while len(pts) < n:
        attempts += 1
        if attempts > budget:
            raise ResampleBudgetExceeded(f"could not place {n} generic points in R^{d}")
        cand = tuple(Fraction(rng.randint(-spread, spread), rng.randint(1, 7)) for _ in range(d))
        if affinely_generic_with(pts, cand, d):
            pts.append(cand)
    return PointConfiguration.from_points(pts, dim=d)


def affinely_generic_with(pts, cand, d) -> bool:
    k = min(d, len(pts))
    for sub in itertools.combinations(pts, k):
        if affine_dim(list(sub) + [cand]) != k:
            return False
    return True
