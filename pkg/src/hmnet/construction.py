"""Random simple graphs with a prescribed degree list, and their randomization."""

from __future__ import annotations

import bisect
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BudgetError, ConstructionError, InvalidSpecError
from .graph import Edge, Graph, canon, switch_targets, CROSS, PARALLEL


@dataclass(frozen=True)
class ConstraintSet:
    """Edges that may never be removed and node pairs that may never be linked."""

    protected: frozenset[Edge] = field(default_factory=frozenset)
    forbidden: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "protected", frozenset(canon(*e) for e in self.protected))
        object.__setattr__(self, "forbidden", frozenset(canon(*e) for e in self.forbidden))
        both = self.protected & self.forbidden
        if both:
            raise InvalidSpecError(f"edges both protected and forbidden: {sorted(both)}")

    def __bool__(self) -> bool:
        return bool(self.protected or self.forbidden)


NO_CONSTRAINTS = ConstraintSet()


def default_attempts(n: int) -> int:
    """Randomization attempts: one eighth of the number of node pairs, floored."""
    return n * (n - 1) // 16


def build_g0(
    ndl: Sequence[int],
    rng: random.Random,
    constraints: ConstraintSet = NO_CONSTRAINTS,
    max_iterations: int | None = None,
) -> Graph:
    """Create a random simple graph whose degree list is exactly ``ndl``.

    Stubs live in a shuffled pool in which node ``i`` appears once per
    unplaced unit of degree. Each iteration draws a source from the pool and
    scans the pool circularly from a random start for the first eligible
    target. When the scan fails, a random unprotected edge ``(u, v)`` is
    broken up and one of its endpoints becomes the target instead, the other
    endpoint going back into the pool. After ``n**2`` iterations with stubs
    left over the list is abandoned with :class:`ConstructionError`.
    """
    n = len(ndl)
    g = Graph(n)
    forbidden = constraints.forbidden
    remaining = list(ndl)
    for u, v in sorted(constraints.protected):
        g.add_edge(u, v)
        remaining[u] -= 1
        remaining[v] -= 1
    short = [i for i in range(n) if remaining[i] < 0]
    if short:
        raise BudgetError(
            f"protected edges exceed the prescribed degree of nodes {short}",
            {i: remaining[i] for i in short},
        )
    pool = [i for i in range(n) for _ in range(remaining[i])]
    rng.shuffle(pool)
    adj = g.adj
    protected = constraints.protected
    # edges that step (iv) may break up, kept sorted for reproducible draws
    free = [e for e in g.edges if e not in protected]

    def eligible(x: int, y: int) -> bool:
        return x != y and y not in adj[x] and (not forbidden or canon(x, y) not in forbidden)

    iterations = n * n if max_iterations is None else max_iterations
    for _ in range(iterations):
        if not pool:
            break
        i = rng.randrange(len(pool))
        x = pool[i]
        size = len(pool)
        start = rng.randrange(size)
        j = -1
        for step in range(size):
            k = (start + step) % size
            if k != i and eligible(x, pool[k]):
                j = k
                break
        if j >= 0:
            y = pool[j]
            _link(g, free, x, y)
            for k in sorted((i, j), reverse=True):
                del pool[k]
            continue
        if not free:
            continue
        u, v = free[rng.randrange(len(free))]
        ends = (u, v) if rng.random() < 0.5 else (v, u)
        for target, displaced in (ends, ends[::-1]):
            if eligible(x, target):
                _unlink(g, free, u, v)
                _link(g, free, x, target)
                del pool[i]
                pool.insert(rng.randrange(len(pool) + 1), displaced)
                break
    if pool:
        residual = dict(sorted(Counter(pool).items()))
        raise ConstructionError(
            f"node degree list abandoned after {iterations} iterations; "
            f"unplaced stubs {residual}",
            residual,
        )
    return g


def _link(g: Graph, free: list[Edge], x: int, y: int) -> None:
    g.add_edge(x, y)
    bisect.insort(free, canon(x, y))


def _unlink(g: Graph, free: list[Edge], u: int, v: int) -> None:
    g.remove_edge(u, v)
    e = canon(u, v)
    del free[bisect.bisect_left(free, e)]


def try_switch(
    g: Graph,
    e1: Edge,
    e2: Edge,
    pattern: str,
    constraints: ConstraintSet = NO_CONSTRAINTS,
) -> bool:
    """Apply a degree-preserving switch if it keeps every constraint."""
    if e1 in constraints.protected or e2 in constraints.protected:
        return False
    a, b = switch_targets(e1, e2, pattern)
    adj = g.adj
    for x, y in (a, b):
        if x == y or y in adj[x]:
            return False
    if a == b:
        return False
    if constraints.forbidden and (a in constraints.forbidden or b in constraints.forbidden):
        return False
    g.switch_edges(e1, e2, pattern)
    return True


def randomize(
    g: Graph,
    attempts: int,
    rng: random.Random,
    constraints: ConstraintSet = NO_CONSTRAINTS,
    check=None,
) -> Graph:
    """Return a copy of ``g`` after ``attempts`` random switch attempts.

    Each attempt draws two distinct edges uniformly and one of the two
    exchange patterns with equal probability. Attempts that would remove a
    protected edge or create a loop, multi-edge or forbidden pair are
    skipped but still counted. ``check``, if given, is called with the graph
    after every attempt.
    """
    out = g.copy()
    edges = out.edges
    if out.m < 2:
        return out
    m = out.m
    for _ in range(attempts):
        i = rng.randrange(m)
        j = rng.randrange(m - 1)
        if j >= i:
            j += 1
        pattern = CROSS if rng.random() < 0.5 else PARALLEL
        try_switch(out, edges[i], edges[j], pattern, constraints)
        if check is not None:
            check(out)
    return out


def contains_all(g: Graph, edges: Iterable[Edge]) -> bool:
    return all(g.has_edge(u, v) for u, v in edges)
