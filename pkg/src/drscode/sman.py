"""Simple multiple access network (SMAN) model.

Sources are numbered 1..s and relays 1..N, matching the evaluation points
alpha^1..alpha^N of the constituent code. Source subsets are represented as
ascending tuples of source numbers, e.g. ``(1, 3)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import TopologyError, UnsupportedTopology

MAX_SOURCES = 3


def nonempty_subsets(s: int) -> list[tuple[int, ...]]:
    return [c for size in range(1, s + 1) for c in combinations(range(1, s + 1), size)]


@dataclass(frozen=True)
class SmanTopology:
    rates: tuple[int, ...]
    z: int
    adjacency: tuple[tuple[int, ...], ...]

    def __init__(self, rates: Sequence[int], z: int, adjacency: Sequence[Sequence[int]]):
        rates = tuple(int(r) for r in rates)
        adjacency = tuple(tuple(int(bool(v)) for v in row) for row in adjacency)
        s = len(rates)
        if s == 0:
            raise TopologyError("at least one source is required")
        if s > MAX_SOURCES:
            raise UnsupportedTopology(f"{s} sources: more than three sources unsupported")
        if len(adjacency) != s:
            raise TopologyError(f"adjacency has {len(adjacency)} rows for {s} sources")
        n = len(adjacency[0])
        if n < 1:
            raise TopologyError("at least one relay is required")
        if any(len(row) != n for row in adjacency):
            raise TopologyError("adjacency rows have different lengths")
        if any(r < 0 for r in rates):
            raise TopologyError("rates must be non-negative")
        if z < 0:
            raise TopologyError("adversary budget z must be non-negative")
        for j in range(n):
            if not any(row[j] for row in adjacency):
                raise TopologyError(f"relay {j + 1} is not connected to any source")
        object.__setattr__(self, "rates", rates)
        object.__setattr__(self, "z", int(z))
        object.__setattr__(self, "adjacency", adjacency)

    @property
    def s(self) -> int:
        return len(self.rates)

    @property
    def N(self) -> int:
        return len(self.adjacency[0])

    @property
    def total_rate(self) -> int:
        return sum(self.rates)

    def sources_of(self, relay: int) -> tuple[int, ...]:
        """Sources (1-based) feeding the given 1-based relay."""
        return tuple(i + 1 for i, row in enumerate(self.adjacency) if row[relay - 1])

    def with_rates(self, rates: Sequence[int]) -> "SmanTopology":
        return SmanTopology(rates, self.z, self.adjacency)


@dataclass(frozen=True)
class PartitionSets:
    blocks: dict  # subset tuple -> ascending relay tuple
    zsets: dict  # source -> ascending relay tuple

    def n(self, *sources: int) -> int:
        return len(self.blocks.get(tuple(sorted(sources)), ()))

    def block(self, *sources: int) -> tuple[int, ...]:
        return self.blocks.get(tuple(sorted(sources)), ())


def partition(top: SmanTopology) -> PartitionSets:
    blocks = {subset: [] for subset in nonempty_subsets(top.s)}
    for j in range(1, top.N + 1):
        blocks[top.sources_of(j)].append(j)
    blocks = {k: tuple(v) for k, v in blocks.items()}
    zsets = {
        i: tuple(j for j in range(1, top.N + 1) if not top.adjacency[i - 1][j - 1])
        for i in range(1, top.s + 1)
    }
    return PartitionSets(blocks, zsets)


def cut_capacity(top: SmanTopology, subset: Sequence[int]) -> int:
    """Number of relays adjacent to at least one source in the subset."""
    if not subset:
        raise TopologyError("cut capacity needs a nonempty source subset")
    return sum(1 for j in range(top.N) if any(top.adjacency[i - 1][j] for i in subset))


def in_capacity_region(top: SmanTopology) -> tuple[bool, list[tuple[int, ...]]]:
    """Check every cut-set bound r(S') <= C(S') - 2z; return (ok, violated subsets)."""
    violated = [
        subset
        for subset in nonempty_subsets(top.s)
        if sum(top.rates[i - 1] for i in subset) > cut_capacity(top, subset) - 2 * top.z
    ]
    return not violated, violated


def permute_sources(top: SmanTopology, perm: Sequence[int]) -> SmanTopology:
    """Reorder sources: new source k is old source perm[k-1] (1-based)."""
    if sorted(perm) != list(range(1, top.s + 1)):
        raise TopologyError(f"{tuple(perm)} is not a permutation of the sources")
    return SmanTopology(
        [top.rates[p - 1] for p in perm],
        top.z,
        [top.adjacency[p - 1] for p in perm],
    )


def pad_sources(top: SmanTopology) -> SmanTopology:
    """Append zero-rate, unconnected phantom sources up to three."""
    missing = MAX_SOURCES - top.s
    if missing == 0:
        return top
    return SmanTopology(
        top.rates + (0,) * missing,
        top.z,
        top.adjacency + ((0,) * top.N,) * missing,
    )
