"""Simple undirected graphs and the double-edge switch."""

from __future__ import annotations

import bisect
from collections import deque
from pathlib import Path
from typing import Iterable, Sequence

from .errors import GraphError, ParseError

Edge = tuple[int, int]

CROSS = "cross"  # (p, q), (r, s) -> (p, s), (q, r)
PARALLEL = "parallel"  # (p, q), (r, s) -> (p, r), (q, s)


def canon(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def switch_targets(e1: Edge, e2: Edge, pattern: str) -> tuple[Edge, Edge]:
    """Replacement edges for exchanging ``e1`` and ``e2`` (possibly loops)."""
    p, q = e1
    r, s = e2
    if pattern == CROSS:
        return canon(p, s), canon(q, r)
    if pattern == PARALLEL:
        return canon(p, r), canon(q, s)
    raise ValueError(f"unknown switch pattern {pattern!r}")


class Graph:
    """Simple undirected graph on nodes ``0..n-1``.

    Adjacency is a list of neighbor sets. A sorted canonical edge list is
    kept alongside so that edge iteration and uniform edge draws are
    reproducible for a given history of mutations.
    """

    __slots__ = ("n", "adj", "_edges")

    def __init__(self, n: int):
        if n < 1:
            raise GraphError(f"invalid graph size {n}")
        self.n = n
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self._edges: list[Edge] = []

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        g = cls(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> list[Edge]:
        """Sorted canonical edge list (do not mutate)."""
        return self._edges

    def copy(self) -> "Graph":
        g = Graph(self.n)
        g.adj = [set(a) for a in self.adj]
        g._edges = list(self._edges)
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def _check_node(self, u: int) -> None:
        if not 0 <= u < self.n:
            raise GraphError(f"node {u} out of range for n={self.n}")

    def add_edge(self, u: int, v: int) -> None:
        self._check_node(u)
        self._check_node(v)
        if u == v:
            raise GraphError(f"loop ({u}, {u}) rejected")
        if v in self.adj[u]:
            raise GraphError(f"multi-edge {canon(u, v)} rejected")
        self.adj[u].add(v)
        self.adj[v].add(u)
        bisect.insort(self._edges, canon(u, v))

    def remove_edge(self, u: int, v: int) -> None:
        if v not in self.adj[u]:
            raise GraphError(f"edge {canon(u, v)} not present")
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        e = canon(u, v)
        del self._edges[bisect.bisect_left(self._edges, e)]

    def switch_edges(self, e1: Edge, e2: Edge, pattern: str) -> tuple[Edge, Edge]:
        """Replace ``e1`` and ``e2`` by the two edges of ``pattern``.

        All-or-nothing: if a replacement would be a loop or would duplicate
        an edge already in the graph, :class:`GraphError` is raised and the
        graph is left untouched. Returns the two inserted edges.
        """
        e1, e2 = canon(*e1), canon(*e2)
        if e1 == e2:
            raise GraphError("cannot switch an edge with itself")
        for e in (e1, e2):
            if e[1] not in self.adj[e[0]]:
                raise GraphError(f"edge {e} not present")
        a, b = switch_targets(e1, e2, pattern)
        for x, y in (a, b):
            if x == y:
                raise GraphError(f"switch would create loop ({x}, {x})")
            if y in self.adj[x]:
                raise GraphError(f"switch would duplicate edge {(x, y)}")
        if a == b:
            raise GraphError(f"switch would create multi-edge {a}")
        self.remove_edge(*e1)
        self.remove_edge(*e2)
        self.add_edge(*a)
        self.add_edge(*b)
        return a, b


def new_graph(n: int) -> Graph:
    return Graph(n)


def degree_list(g: Graph) -> list[int]:
    return [len(a) for a in g.adj]


def bfs_order(g: Graph, source: int) -> list[int]:
    seen = [False] * g.n
    seen[source] = True
    order = [source]
    queue = deque(order)
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            if not seen[v]:
                seen[v] = True
                order.append(v)
                queue.append(v)
    return order


def is_connected(g: Graph) -> bool:
    return len(bfs_order(g, 0)) == g.n


def components(g: Graph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest label."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if not seen[s]:
            comp = bfs_order(g, s)
            for u in comp:
                seen[u] = True
            out.append(sorted(comp))
    return out


def largest_component(g: Graph) -> list[int]:
    """Node set of the largest component (ties go to the smallest label)."""
    best: list[int] = []
    for comp in components(g):
        if len(comp) > len(best):
            best = comp
    return best


# ---------------------------------------------------------------- file I/O

def format_header(fields: dict[str, object]) -> str:
    return "# " + " ".join(f"{k}={v}" for k, v in fields.items())


def parse_header(line: str) -> dict[str, str]:
    out = {}
    for tok in line.lstrip("#").split():
        if "=" in tok:
            k, v = tok.split("=", 1)
            out[k] = v
    return out


def write_edge_list(
    path: str | Path,
    g: Graph,
    seed: int = 0,
    extra: Sequence[str] = (),
) -> None:
    """Write ``g`` in the shared edge-list format.

    The first line is ``# n=<N> m=<M> seed=<seed>``; ``extra`` lines are
    written verbatim after it, each prefixed with ``# `` if needed.
    """
    lines = [format_header({"n": g.n, "m": g.m, "seed": seed})]
    for x in extra:
        lines.append(x if x.startswith("#") else "# " + x)
    lines.extend(f"{u} {v}" for u, v in g.edges)
    Path(path).write_text("\n".join(lines) + "\n")


def read_edge_list(path: str | Path) -> tuple[Graph, dict[str, str], list[str]]:
    """Parse an edge-list file.

    Returns the graph, the fields of the ``n=.. m=..`` header and all extra
    header lines (in order), so that a write after a read reproduces the
    file byte for byte.
    """
    text = Path(path).read_text()
    fields: dict[str, str] = {}
    extra: list[str] = []
    pairs: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parsed = parse_header(line)
            if not fields and "n" in parsed:
                fields = parsed
            else:
                extra.append(raw)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"{path}:{lineno}: expected two node labels, got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"{path}:{lineno}: non-integer node label in {line!r}") from None
        if u < 0 or v < 0:
            raise ParseError(f"{path}:{lineno}: negative node label")
        pairs.append((u, v))
    if "n" in fields:
        try:
            n = int(fields["n"])
        except ValueError:
            raise ParseError(f"{path}: bad header n={fields['n']!r}") from None
    else:
        n = 1 + max((max(p) for p in pairs), default=0)
    g = Graph(n)
    for u, v in pairs:
        try:
            g.add_edge(u, v)
        except GraphError as exc:
            raise ParseError(f"{path}: {exc}") from None
    if "m" in fields and int(fields["m"]) != g.m:
        raise ParseError(f"{path}: header m={fields['m']} but {g.m} edges read")
    return g, fields, extra
