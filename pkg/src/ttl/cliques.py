"""Combinatorial transversal bound and a brute-force clique-cover oracle."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

MAX_CLIQUE_COVER_M = 6


class TransversalError(ValueError):
    def __init__(self, pair, count):
        super().__init__(f"sets {pair[0]} and {pair[1]} meet W in {count} points")
        self.pair = pair
        self.count = count


@dataclass(frozen=True)
class TransversalBound:
    m: int
    w_size: int
    cover: tuple       # (w, clique as tuple of set indices), cliques with >= 2 members
    degenerate: bool   # one point of W lies in every set, so the cover is K_m itself
    holds: bool        # m <= |W|

    def to_json(self):
        return {"m": self.m, "W": self.w_size, "holds": self.holds, "degenerate": self.degenerate,
                "cover": [{"w": w, "clique": list(c)} for w, c in self.cover]}


def abstract_transversal_bound(sets, W) -> TransversalBound:
    """Check |C_i & C_j & W| = 1 for all pairs and build the induced clique decomposition.

    Each w in W spans the clique of sets containing it; the transversal
    condition makes these cliques an edge decomposition of K_m. When one w lies
    in all sets the decomposition is K_m itself rather than proper cliques, and
    m <= |W| can genuinely fail (e.g. three sets through a single common point);
    such inputs are flagged ``degenerate``.
    """
    sets = [frozenset(s) for s in sets]
    W = list(dict.fromkeys(W))
    wset = set(W)
    m = len(sets)
    for i, j in itertools.combinations(range(m), 2):
        count = len(sets[i] & sets[j] & wset)
        if count != 1:
            raise TransversalError((i, j), count)
    cover = []
    for w in W:
        clique = tuple(i for i in range(m) if w in sets[i])
        if len(clique) >= 2:
            cover.append((w, clique))
    covered = {}
    for w, clique in cover:
        for pair in itertools.combinations(clique, 2):
            covered[pair] = covered.get(pair, 0) + 1
    assert all(covered.get(p) == 1 for p in itertools.combinations(range(m), 2))
    degenerate = any(len(c) == m for _, c in cover) or m < 3
    return TransversalBound(m, len(W), tuple(cover), degenerate, m <= len(W))


def min_clique_cover_bruteforce(m: int) -> int:
    """Fewest proper cliques (>= 2 and < m vertices) whose edge sets partition E(K_m)."""
    if not 3 <= m <= MAX_CLIQUE_COVER_M:
        raise ValueError(f"supported range is 3 <= m <= {MAX_CLIQUE_COVER_M}")
    edges = list(itertools.combinations(range(m), 2))
    index = {e: i for i, e in enumerate(edges)}
    cliques = []
    for size in range(2, m):
        for c in itertools.combinations(range(m), size):
            mask = 0
            for e in itertools.combinations(c, 2):
                mask |= 1 << index[e]
            cliques.append(mask)
    full = (1 << len(edges)) - 1
    by_edge = [[c for c in cliques if c >> i & 1] for i in range(len(edges))]
    best = [len(edges)]  # all single edges always works

    def search(covered, used):
        if used >= best[0]:
            return
        if covered == full:
            best[0] = used
            return
        # lowest uncovered edge must be covered by exactly one clique
        low = (~covered & full & -(~covered & full)).bit_length() - 1
        for c in by_edge[low]:
            if not c & covered:
                search(covered | c, used + 1)

    search(0, 0)
    return best[0]
