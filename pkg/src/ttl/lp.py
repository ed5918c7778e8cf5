"""Exact LP feasibility by phase-1 simplex with Bland's anti-cycling rule.

Only feasibility is ever needed, so there is no user-facing objective: the solver
minimises the sum of artificial variables and reports a feasible point when that
sum reaches zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


def solve_standard(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]):
    """Find x >= 0 with A x = b, or return None when no such x exists."""
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [ZERO] * n
    width = n + m + 1
    rows = []
    for i, (a_row, rhs) in enumerate(zip(A, b)):
        flip = rhs < 0
        row = [(-Fraction(v) if flip else Fraction(v)) for v in a_row]
        row.extend(ONE if k == i else ZERO for k in range(m))
        row.append(-Fraction(rhs) if flip else Fraction(rhs))
        rows.append(row)
    basis = [n + i for i in range(m)]
    # reduced costs of the phase-1 objective (sum of artificials)
    cost = [ZERO] * width
    for row in rows:
        for j in range(n):
            if row[j]:
                cost[j] -= row[j]
        cost[-1] -= row[-1]

    while True:
        enter = next((j for j in range(width - 1) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # cannot happen for a phase-1 problem, which is bounded below by 0
            raise ArithmeticError("phase-1 simplex reported unbounded")
        _pivot(rows, cost, leave, enter)
        basis[leave] = enter

    if cost[-1] != 0:
        return None
    x = [ZERO] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = rows[i][-1]
    return x


def _pivot(rows, cost, r, c):
    prow = rows[r]
    p = prow[c]
    if p != 1:
        prow = rows[r] = [v / p for v in prow]
    nz = [j for j, v in enumerate(prow) if v]
    for i, row in enumerate(rows):
        if i != r:
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
    f = cost[c]
    if f:
        for j in nz:
            cost[j] -= f * prow[j]


@dataclass(frozen=True)
class Halfspace:
    normal: tuple
    offset: Fraction
    relation: str = "<="  # "<=" or "="

    def __post_init__(self):
        if self.relation not in ("<=", "="):
            raise ValueError(f"unknown relation {self.relation!r}")


@dataclass(frozen=True)
class HalfspaceSystem:
    """Rows ``normal . x (<= | =) offset`` over free real variables."""

    nvars: int
    rows: tuple = field(default_factory=tuple)

    def __post_init__(self):
        for h in self.rows:
            if len(h.normal) != self.nvars:
                raise ValueError("halfspace normal has wrong length")

    def satisfied_by(self, x) -> bool:
        for h in self.rows:
            lhs = sum((Fraction(a) * v for a, v in zip(h.normal, x)), ZERO)
            if h.relation == "=" and lhs != h.offset:
                return False
            if h.relation == "<=" and lhs > h.offset:
                return False
        return True


def feasible_point(system: HalfspaceSystem):
    """A point satisfying every row of ``system``, or None if it is empty.

    Free variables are split as x = x+ - x-, and inequalities get slacks.
    """
    n = system.nvars
    n_ub = sum(1 for h in system.rows if h.relation == "<=")
    A, b = [], []
    s = 0
    for h in system.rows:
        row = [Fraction(a) for a in h.normal] + [-Fraction(a) for a in h.normal]
        slack = [ZERO] * n_ub
        if h.relation == "<=":
            slack[s] = ONE
            s += 1
        A.append(row + slack)
        b.append(Fraction(h.offset))
    if not A:
        return tuple([ZERO] * n)
    sol = solve_standard(A, b)
    if sol is None:
        return None
    return tuple(sol[j] - sol[n + j] for j in range(n))
