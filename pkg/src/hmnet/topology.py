"""Decomposition topology by recursive halving, and edge distances against it."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import GraphError
from .graph import Graph


@dataclass(frozen=True)
class Split:
    level: int  # root split is level 0
    lo: int
    hi: int
    mid: int  # also the label of the internal node


class DecompositionTopology:
    """Binary tree over node labels ``0..n-1``.

    A segment ``[lo, hi)`` of size ``s >= ts`` is split at
    ``lo + s // 2`` (the left half is the smaller one for odd ``s``) and the
    split point labels the internal node. ``paths[i]`` lists the internal
    nodes whose segment contains node ``i``, root first.
    """

    def __init__(self, n: int, ts: int):
        if n < 1:
            raise ValueError("topology needs at least one node")
        if ts < 2:
            raise ValueError("minimum module size ts must be at least 2")
        self.n = n
        self.ts = ts
        paths: list[list[int]] = [[] for _ in range(n)]
        splits: list[Split] = []
        frontier = [(0, n)]
        level = 0
        while frontier:
            nxt = []
            for lo, hi in frontier:
                size = hi - lo
                if size < ts:
                    continue
                mid = lo + size // 2
                splits.append(Split(level, lo, hi, mid))
                for i in range(lo, hi):
                    paths[i].append(mid)
                nxt.append((lo, mid))
                nxt.append((mid, hi))
            frontier = nxt
            level += 1
        self.paths: tuple[tuple[int, ...], ...] = tuple(tuple(p) for p in paths)
        self.splits: tuple[Split, ...] = tuple(splits)  # breadth-first order
        self.ed_max = max(0, max(len(p) for p in self.paths) - 1)
        self._table: list[bytearray] | None = None

    @property
    def depth(self) -> int:
        """Number of split levels."""
        return max((s.level for s in self.splits), default=-1) + 1

    def _common(self, u: int, v: int) -> int:
        a, b = self.paths[u], self.paths[v]
        c = 0
        for x, y in zip(a, b):
            if x != y:
                break
            c += 1
        return c

    @property
    def table(self) -> list[bytearray]:
        """Dense ``ed`` lookup table, ``table[u][v]``; built on first use."""
        if self._table is None:
            bounds = {s.mid: (s.lo, s.hi) for s in self.splits}
            rows = []
            for u in range(self.n):
                row = bytearray(self.n)
                # segments nest root first, so deeper ones overwrite
                for k, mid in enumerate(self.paths[u][1:], 1):
                    lo, hi = bounds[mid]
                    row[lo:hi] = bytes([k]) * (hi - lo)
                row[u] = 0
                rows.append(row)
            self._table = rows
        return self._table

    def edge_distance(self, u: int, v: int) -> int:
        if u == v:
            raise GraphError(f"edge distance undefined for loop ({u}, {u})")
        return max(self._common(u, v) - 1, 0)

    def complementary_edge_distance(self, u: int, v: int) -> int:
        return self.ed_max - self.edge_distance(u, v) + 1

    def dump(self) -> str:
        return "".join(
            f"{i}: {' '.join(map(str, p))}".rstrip() + "\n" for i, p in enumerate(self.paths)
        )

    def __repr__(self) -> str:
        return f"DecompositionTopology(n={self.n}, ts={self.ts}, ed_max={self.ed_max})"


def build_topology(n: int, ts: int) -> DecompositionTopology:
    return DecompositionTopology(n, ts)


def parse_topology(text: str) -> DecompositionTopology:
    """Parse ``<n>:<ts>``."""
    n, _, ts = text.partition(":")
    return DecompositionTopology(int(n), int(ts))


def edge_distance(t: DecompositionTopology, u: int, v: int) -> int:
    return t.edge_distance(u, v)


def complementary_edge_distance(t: DecompositionTopology, u: int, v: int) -> int:
    return t.complementary_edge_distance(u, v)


def _check(g: Graph, t: DecompositionTopology) -> None:
    if g.n != t.n:
        raise ValueError(f"graph has {g.n} nodes but topology {t.n}")


def average_edge_distance(g: Graph, t: DecompositionTopology) -> float:
    _check(g, t)
    if g.m == 0:
        raise ValueError("average edge distance of an edgeless graph is undefined")
    table = t.table
    return sum(table[u][v] for u, v in g.edges) / g.m


def edge_distance_histogram(g: Graph, t: DecompositionTopology) -> dict[int, int]:
    _check(g, t)
    table = t.table
    hist: dict[int, int] = {}
    for u, v in g.edges:
        d = table[u][v]
        hist[d] = hist.get(d, 0) + 1
    return dict(sorted(hist.items()))


def write_topology(path: str | Path, t: DecompositionTopology) -> None:
    Path(path).write_text(t.dump())


def edge_distances(g: Graph, t: DecompositionTopology) -> Iterable[int]:
    table = t.table
    return (table[u][v] for u, v in g.edges)
