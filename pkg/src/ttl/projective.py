"""Finite projective planes over prime fields."""
from __future__ import annotations

import itertools
from dataclasses import dataclass


class UnsupportedOrder(ValueError):
    pass


class IncidenceError(ValueError):
    pass


@dataclass(frozen=True)
class IncidenceStructure:
    n_points: int
    lines: tuple  # sorted tuples of 0-based point indices

    def validate(self):
        """Raise IncidenceError unless this is a projective plane."""
        lines = [frozenset(l) for l in self.lines]
        if len(set(lines)) != len(lines):
            raise IncidenceError("duplicate line")
        for l in lines:
            if not l <= set(range(self.n_points)):
                raise IncidenceError(f"line {sorted(l)} uses unknown points")
        for a, b in itertools.combinations(range(self.n_points), 2):
            through = sum(1 for l in lines if a in l and b in l)
            if through != 1:
                raise IncidenceError(f"points {a} and {b} lie on {through} common lines")
        for (i, l1), (j, l2) in itertools.combinations(enumerate(lines), 2):
            if len(l1 & l2) != 1:
                raise IncidenceError(f"lines {i} and {j} meet in {len(l1 & l2)} points")
        if not self._has_quadrangle(lines):
            raise IncidenceError("no four points with no three collinear")

    def _has_quadrangle(self, lines):
        for quad in itertools.combinations(range(self.n_points), 4):
            q = set(quad)
            if all(len(q & l) < 3 for l in lines):
                return True
        return False


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % p for p in range(2, int(q ** 0.5) + 1))


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(p for p in range(2, q + 1) if q % p == 0)
    while q % p == 0:
        q //= p
    return q == 1


def _normalised_triples(q):
    """Nonzero vectors of GF(q)^3 scaled so the first nonzero entry is 1."""
    out = []
    for v in itertools.product(range(q), repeat=3):
        lead = next((x for x in v if x), None)
        if lead == 1:
            out.append(v)
    return out


def projective_plane(q: int) -> IncidenceStructure:
    """PG(2, q) for prime q: q^2+q+1 points and lines, q+1 points per line."""
    if not _is_prime(q):
        if _is_prime_power(q):
            raise UnsupportedOrder(f"order {q} is a prime power; only prime orders are supported")
        raise UnsupportedOrder(f"order {q} is not a prime power; no projective plane is known")
    pts = _normalised_triples(q)
    lines = []
    for l in pts:
        on = tuple(i for i, p in enumerate(pts) if sum(a * b for a, b in zip(l, p)) % q == 0)
        lines.append(on)
    return IncidenceStructure(len(pts), tuple(lines))
