"""Partition search and certificates for the k-wise Tverberg numbers T(d, r, k).

T(d, r, k) is the least n such that every n points in R^d can be split into r
blocks any k of whose convex hulls share a point. A configuration of n points
with no such split certifies T(d, r, k) > n; :func:`verify_no_partition`
produces that certificate by exhaustive enumeration.
"""
from __future__ import annotations

import itertools
import json
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Optional

from .exact import format_rational
from .geometry import (PointConfiguration, affine_dim, hulls_intersect,
                       sample_generic_config, strong_general_position)
from .partitions import IndexPartition, chunk_prefixes, enumerate_partitions, stirling2

DEFAULT_MAX_PARTITIONS = 10 ** 8


class SearchBudgetExceeded(ValueError):
    pass


class BaseWitnessNotFound(RuntimeError):
    pass


class NotStronglyGeneral(ValueError):
    pass


def max_partitions() -> int:
    raw = os.environ.get("TTL_MAX_PARTITIONS")
    return DEFAULT_MAX_PARTITIONS if raw is None else int(raw)


def _check_params(n, r, k):
    if not (n >= r >= k >= 2):
        raise ValueError(f"need n >= r >= k >= 2, got n={n}, r={r}, k={k}")
    count = stirling2(n, r)
    cap = max_partitions()
    if count > cap:
        raise SearchBudgetExceeded(
            f"{count} partitions of {n} points into {r} blocks exceed the cap of {cap} "
            "(set TTL_MAX_PARTITIONS to raise it)")
    return count


class _HullCache:
    """Memoised k-wise hull intersection keyed by the set of blocks."""

    def __init__(self, points):
        self.points = points
        self.memo = {}

    def __call__(self, blocks):
        key = frozenset(blocks)
        hit = self.memo.get(key)
        if hit is None:
            hit = hulls_intersect([[self.points[i] for i in b] for b in blocks])
            self.memo[key] = hit
        return hit


def _scan_partition(part: IndexPartition, k: int, cache: _HullCache):
    """(first empty k-subfamily or None, witnesses when none is empty)."""
    witnesses = {}
    for sub in itertools.combinations(range(len(part.blocks)), k):
        res = cache([part.blocks[i] for i in sub])
        if not res:
            return sub, None
        witnesses[sub] = res.witness
    return None, witnesses


def _scan_chunk(points, n, r, k, prefix, cache=None):
    cache = cache or _HullCache(points)
    entries = []
    for part in enumerate_partitions(n, r, prefix):
        bad, witnesses = _scan_partition(part, k, cache)
        if bad is None:
            return entries, (part, witnesses)
        entries.append((part, bad))
    return entries, None


@dataclass(frozen=True)
class PartitionResult:
    partition: IndexPartition
    witnesses: dict  # k-subset of block indices -> common point

    def to_json(self):
        return {
            "partition": self.partition.to_json(),
            "witnesses": [{"subfamily": list(s), "point": [format_rational(c) for c in p]}
                          for s, p in sorted(self.witnesses.items())],
        }


def _scan(config: PointConfiguration, r: int, k: int, jobs: int = 1):
    """Walk every partition in canonical order, stopping at the first qualifying one.

    Work is split by restricted-growth prefix; results are consumed in prefix
    order, so the answer does not depend on ``jobs``.
    """
    n = len(config)
    _check_params(n, r, k)
    points = config.points
    if jobs <= 1:
        entries, found = _scan_chunk(points, n, r, k, (0,))
        return entries, found
    depth = 1
    while len(chunk_prefixes(n, r, depth)) < 4 * jobs and depth < n:
        depth += 1
    prefixes = chunk_prefixes(n, r, depth)
    entries = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for start in range(0, len(prefixes), jobs):
            wave = prefixes[start:start + jobs]
            futures = [pool.submit(_scan_chunk, points, n, r, k, p) for p in wave]
            for fut in futures:
                chunk_entries, found = fut.result()
                entries.extend(chunk_entries)
                if found is not None:
                    for f in futures:
                        f.cancel()
                    return entries, found
    return entries, None


def find_partition(config: PointConfiguration, r: int, k: int, jobs: int = 1) -> Optional[PartitionResult]:
    """First partition (canonical order) whose every k blocks have intersecting hulls."""
    _, found = _scan(config, r, k, jobs)
    if found is None:
        return None
    return PartitionResult(*found)


@dataclass
class WitnessCertificate:
    """Exhaustive proof that no r-partition of ``config`` is k-wise intersecting."""

    config: PointConfiguration
    r: int
    k: int
    partitions_checked: int
    entries: list = field(default_factory=list)  # (IndexPartition, k-subset of block indices)

    def to_json(self) -> dict:
        return {
            "kind": "no-partition",
            "config": self.config.to_json(),
            "r": self.r,
            "k": self.k,
            "partitions_checked": self.partitions_checked,
            "entries": [{"partition": p.to_json(), "empty_subfamily": list(s)}
                        for p, s in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> "WitnessCertificate":
        if data.get("kind") != "no-partition":
            raise ValueError("not a no-partition certificate")
        entries = [(IndexPartition.from_json(e["partition"]), tuple(e["empty_subfamily"]))
                   for e in data["entries"]]
        return cls(PointConfiguration.from_json(data["config"]), int(data["r"]), int(data["k"]),
                   int(data.get("partitions_checked", len(entries))), entries)

    def replay(self) -> list:
        """Re-check every entry from scratch; returns a list of problems (empty = valid)."""
        problems = []
        n = len(self.config)
        expected = stirling2(n, self.r)
        if self.partitions_checked != expected:
            problems.append(f"partitions_checked={self.partitions_checked}, expected {expected}")
        if len(self.entries) != expected:
            problems.append(f"{len(self.entries)} entries, expected {expected}")
        seen = set()
        pts = self.config.points
        for part, sub in self.entries:
            if part.n != n or len(part.blocks) != self.r:
                problems.append(f"{part.to_json()} is not an {self.r}-partition of {n} points")
                continue
            key = frozenset(frozenset(b) for b in part.blocks)
            if key in seen:
                problems.append(f"duplicate partition {part.to_json()}")
            seen.add(key)
            if len(set(sub)) != self.k or not all(0 <= i < self.r for i in sub):
                problems.append(f"bad subfamily {sub} for {part.to_json()}")
                continue
            if hulls_intersect([[pts[i] for i in part.blocks[j]] for j in sub]):
                problems.append(f"subfamily {sub} of {part.to_json()} does intersect")
        return problems


class PartitionExists(Exception):
    """Raised by :func:`verify_no_partition` with the qualifying partition."""

    def __init__(self, result: PartitionResult):
        super().__init__(f"qualifying partition {result.partition.to_json()}")
        self.result = result


def verify_no_partition(config: PointConfiguration, r: int, k: int, jobs: int = 1) -> WitnessCertificate:
    entries, found = _scan(config, r, k, jobs)
    if found is not None:
        raise PartitionExists(PartitionResult(*found))
    return WitnessCertificate(config, r, k, len(entries), entries)


# -- constructions ------------------------------------------------------------


def lift_witness(config: PointConfiguration, k: int) -> PointConfiguration:
    """Embed as R^d x {0} and add k-1 points at height +1.

    The extra points sit at (i, 0, ..., 0, 1) for i = 0..k-2.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    d = config.dim
    zero = Fraction(0)
    pts = [tuple(p) + (zero,) for p in config.points]
    ids = list(config.ids)
    for i in range(k - 1):
        head = (Fraction(i),) if d >= 1 else ()
        pts.append(head + (zero,) * (d - 1) + (Fraction(1),))
        new_id = f"lift{d + 1}_{i + 1}"
        while new_id in ids:
            new_id += "'"
        ids.append(new_id)
    return PointConfiguration(d + 1, tuple(ids), tuple(pts))


def _load_data(name):
    return json.loads(resources.files("ttl").joinpath("data").joinpath(name).read_text())


def search_planar_witness(r: int, seed: int, k: int = 2, max_tries: int = 2000, jobs: int = 1):
    """Seeded search for 3r-3 planar points with no k-wise intersecting r-partition.

    Returns ``(config, certificate, attempts)``; every candidate is judged only
    by an exhaustive certificate.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    rng = random.Random(seed)
    n = 3 * r - 3
    for attempt in range(1, max_tries + 1):
        cfg = sample_generic_config(2, n, rng.randrange(2 ** 32))
        try:
            cert = verify_no_partition(cfg, r, k, jobs)
        except PartitionExists:
            continue
        return cfg, cert, attempt
    raise BaseWitnessNotFound(f"no planar witness for r={r}, k={k} in {max_tries} tries")


def planar_witness(r: int) -> PointConfiguration:
    """Cached 3r-3 point planar witness for T(2, r, 2) > 3r-3."""
    data = _load_data("planar_witnesses.json")
    entry = data.get(str(r))
    if entry is None:
        cfg, _, _ = search_planar_witness(r, seed=r)
        return cfg
    return PointConfiguration.from_json(entry)


def reay_chain_witness(d: int, r: int, k: int) -> PointConfiguration:
    """3r-3+(k-1)(d-2) points in R^d with no k-wise intersecting r-partition.

    A planar witness for pairwise intersection also rules out k-wise
    intersection, so it serves every k; it is then lifted d-2 times.
    """
    if d < 2 or not 2 <= k <= r:
        raise ValueError("need d >= 2 and 2 <= k <= r")
    cfg = planar_witness(r)
    for _ in range(d - 2):
        cfg = lift_witness(cfg, k)
    return cfg


def sgp_size_bound(d: int, r: int, k: int):
    """r((k-1)/k d + 1) exactly, with its ceiling as a point count."""
    if d < 1 or not 2 <= k <= r:
        raise ValueError("need d >= 1 and 2 <= k <= r")
    bound = r * (Fraction(k - 1, k) * d + 1)
    return bound, math.ceil(bound)


@dataclass(frozen=True)
class SGPCountingReport:
    block_dims: tuple
    checked_subfamilies: tuple  # (k-subset, sum of codimensions) for intersecting ones
    qualifies: bool             # every k-subfamily intersects
    size: int
    bound: Fraction
    passed: bool


def check_sgp_counting(config: PointConfiguration, partition: IndexPartition, k: int,
                       assume_sgp: bool = False) -> SGPCountingReport:
    """Replay the codimension-counting argument on one partition."""
    if not assume_sgp and not strong_general_position(config):
        raise NotStronglyGeneral("configuration is not in strong general position")
    d = config.dim
    pts = config.points
    blocks = [[pts[i] for i in b] for b in partition.blocks]
    dims = tuple(affine_dim(b) for b in blocks)
    checked = []
    passed = True
    qualifies = True
    for sub in itertools.combinations(range(len(blocks)), k):
        if hulls_intersect([blocks[i] for i in sub]):
            codims = sum(d - dims[i] for i in sub)
            checked.append((sub, codims))
            passed &= codims <= d
        else:
            qualifies = False
    size = len(config)
    r = len(blocks)
    bound = r * (Fraction(k - 1, k) * d + 1) if r >= k else Fraction(0)
    if qualifies:
        passed &= size >= bound
    return SGPCountingReport(dims, tuple(checked), qualifies, size, bound, passed)


# -- coloured version -----------------------------------------------------------


@dataclass(frozen=True)
class ColoredConfiguration:
    dim: int
    classes: tuple  # tuple of tuples of points

    @property
    def size(self):
        return sum(len(c) for c in self.classes)

    def points(self):
        return [p for c in self.classes for p in c]

    def to_config(self) -> PointConfiguration:
        pts, colors, ids = [], [], []
        for j, cls in enumerate(self.classes):
            for i, p in enumerate(cls):
                pts.append(p)
                colors.append(j)
                ids.append(f"c{j}_{i + 1}")
        return PointConfiguration(self.dim, tuple(ids), tuple(pts), tuple(colors) if pts else ())

    @classmethod
    def from_config(cls, config: PointConfiguration) -> "ColoredConfiguration":
        if not config.colors:
            raise ValueError("configuration carries no colours")
        return cls(config.dim, tuple(tuple(c) for c in config.color_classes()))


def colored_witness(d: int, r: int, k: int) -> ColoredConfiguration:
    """Colour classes C_0..C_d with |C_0| = r-1 and |C_j| = r admitting no good rainbow split.

    Built by lifting: C_0 is r-1 copies of the origin, and class j gets
    ceil(r/2) copies of +e_j and floor(r/2) copies of -e_j.
    """
    if d < 0 or r < 2:
        raise ValueError("need d >= 0 and r >= 2")
    if not (r + 1) // 2 < k <= r:
        raise ValueError(f"need ceil(r/2) < k <= r, got r={r}, k={k}")
    zero, one = Fraction(0), Fraction(1)
    classes = [[()] * (r - 1)]
    for j in range(d):
        classes = [[p + (zero,) for p in c] for c in classes]
        up = tuple(zero for _ in range(j)) + (one,)
        down = tuple(zero for _ in range(j)) + (-one,)
        classes.append([up] * ((r + 1) // 2) + [down] * (r // 2))
    return ColoredConfiguration(d, tuple(tuple(c) for c in classes))


def _class_assignments(size, r, first):
    """Maximal injective maps of one colour class into r blocks, as block -> point slot."""
    used = min(size, r)
    out = []
    if first:
        # blocks are unlabelled: fix the first class's points to blocks 0, 1, ...
        for chosen in itertools.combinations(range(size), used):
            out.append(tuple(chosen) + (None,) * (r - used))
        return out
    for chosen in itertools.permutations(range(size), used):
        for slots in itertools.combinations(range(r), used):
            row = [None] * r
            for s, c in zip(slots, chosen):
                row[s] = c
            out.append(tuple(row))
    return sorted(set(out), key=lambda t: tuple(-1 if x is None else x for x in t))


@dataclass(frozen=True)
class RainbowSelection:
    blocks: tuple     # tuples of global point indices (class order, then position)
    witnesses: dict


def find_rainbow_partition(colored: ColoredConfiguration, r: int, k: int) -> Optional[RainbowSelection]:
    """Search r disjoint rainbow blocks (<= 1 point per class each) with all k-subsets intersecting.

    Adding points to a block only enlarges its hull, so it suffices to try the
    maximal selections, where every class fills min(|C_j|, r) blocks. That makes
    the search exhaustive over all selections, empty blocks included.
    """
    if r < 2 or k < 2 or k > r:
        raise ValueError("need 2 <= k <= r")
    pts = colored.points()
    offsets = list(itertools.accumulate([0] + [len(c) for c in colored.classes]))
    per_class = [_class_assignments(len(c), r, first=(j == 0))
                 for j, c in enumerate(colored.classes) if c]
    nonempty = [j for j, c in enumerate(colored.classes) if c]
    cache = _HullCache(pts)
    for combo in itertools.product(*per_class):
        blocks = [[] for _ in range(r)]
        for j, row in zip(nonempty, combo):
            for b, slot in enumerate(row):
                if slot is not None:
                    blocks[b].append(offsets[j] + slot)
        if any(not b for b in blocks):
            continue
        blocks = [tuple(b) for b in blocks]
        witnesses = {}
        for sub in itertools.combinations(range(r), k):
            res = cache([blocks[i] for i in sub])
            if not res:
                break
            witnesses[sub] = res.witness
        else:
            return RainbowSelection(tuple(blocks), witnesses)
    return None
