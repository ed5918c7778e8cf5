"""Set partitions into exactly r nonempty blocks, via restricted growth strings."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator


@dataclass(frozen=True)
class IndexPartition:
    """Blocks of 0-based point indices, in first-occurrence order."""

    blocks: tuple

    def __post_init__(self):
        seen = set()
        for b in self.blocks:
            if not b:
                raise ValueError("empty block")
            if seen & set(b):
                raise ValueError("blocks overlap")
            seen |= set(b)
        if seen != set(range(len(seen))):
            raise ValueError("blocks do not cover 0..n-1")

    @classmethod
    def from_rgs(cls, rgs) -> "IndexPartition":
        blocks = [[] for _ in range(max(rgs) + 1)]
        for i, b in enumerate(rgs):
            blocks[b].append(i)
        return cls(tuple(tuple(b) for b in blocks))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def to_json(self):
        # JSON files use 1-based point indices
        return [[i + 1 for i in b] for b in self.blocks]

    @classmethod
    def from_json(cls, blocks):
        return cls(tuple(tuple(int(i) - 1 for i in b) for b in blocks))


@lru_cache(maxsize=None)
def stirling2(n: int, r: int) -> int:
    """Stirling numbers of the second kind by the standard recurrence."""
    if n == r:
        return 1
    if r == 0 or r > n:
        return 0
    return r * stirling2(n - 1, r) + stirling2(n - 1, r - 1)


def _extend(prefix: list, n: int, r: int) -> Iterator[tuple]:
    top = max(prefix) + 1 if prefix else 0
    i = len(prefix)
    if i == n:
        if top == r:
            yield tuple(prefix)
        return
    # remaining positions must be able to open the missing blocks
    if r - top > n - i:
        return
    for b in range(min(top + 1, r)):
        prefix.append(b)
        yield from _extend(prefix, n, r)
        prefix.pop()


def restricted_growth_strings(n: int, r: int, prefix=()) -> Iterator[tuple]:
    return _extend(list(prefix), n, r)


def enumerate_partitions(n: int, r: int, prefix=()) -> Iterator[IndexPartition]:
    """Each partition of {0..n-1} into exactly r blocks, once, in lexicographic RGS order.

    ``prefix`` restricts the stream to strings starting with that prefix, which is
    how :func:`chunk_prefixes` slices the search deterministically.
    """
    if r < 1 or n < 1:
        raise ValueError("need n >= 1 and r >= 1")
    if r > n:
        raise ValueError(f"cannot split {n} points into {r} nonempty blocks")
    for rgs in restricted_growth_strings(n, r, prefix):
        yield IndexPartition.from_rgs(rgs)


def chunk_prefixes(n: int, r: int, depth: int) -> list:
    """Valid RGS prefixes of the given length, in canonical order.

    Concatenating the streams of all prefixes reproduces the full stream.
    """
    depth = max(1, min(depth, n))
    out = []

    def rec(prefix):
        top = max(prefix) + 1
        if r - top > n - len(prefix):
            return
        if len(prefix) == depth:
            out.append(tuple(prefix))
            return
        for b in range(min(top + 1, r)):
            rec(prefix + [b])

    rec([0])
    return out
