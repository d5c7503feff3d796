"""Topology-guided modularization by edge switching, and the Q2 score."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .construction import NO_CONSTRAINTS, ConstraintSet
from .graph import CROSS, PARALLEL, Edge, Graph, canon
from .topology import DecompositionTopology

MAXIMIZE = "maximize_ed"
MINIMIZE = "minimize_ed"
KEEP = "keep"


@dataclass(frozen=True)
class ModularizationConfig:
    pg: float = 0.8
    objective: str = MAXIMIZE
    constraints: ConstraintSet = field(default_factory=ConstraintSet)

    def __post_init__(self):
        if self.pg < 0:
            raise ValueError("pg must be non-negative")
        if self.objective not in (MAXIMIZE, MINIMIZE):
            raise ValueError(f"unknown objective {self.objective!r}")


@dataclass(frozen=True)
class SwitchEvent:
    iteration: int
    removed: tuple[Edge, Edge]
    added: tuple[Edge, Edge]
    ped_before: int
    ped_after: int


def iteration_budget(g: Graph, pg: float) -> int:
    return math.floor(pg * (g.m + g.n * (g.n - 1) / 2))


def _alt_ped(g: Graph, table, a: Edge, b: Edge, forbidden) -> Optional[int]:
    """ped of a replacement pair, or None if either edge is a loop,
    a multi-edge or a forbidden pair."""
    adj = g.adj
    (p, q), (r, s) = a, b
    if p == q or r == s or q in adj[p] or s in adj[r] or a == b:
        return None
    if forbidden and (a in forbidden or b in forbidden):
        return None
    return table[p][q] * table[r][s]


def evaluate_switch(
    g: Graph,
    t: DecompositionTopology,
    e1: Edge,
    e2: Edge,
    constraints: ConstraintSet = NO_CONSTRAINTS,
    objective: str = MAXIMIZE,
) -> str:
    """Decide what to do with the edge pair ``e1 = (p, q)``, ``e2 = (r, s)``.

    Returns ``PARALLEL`` for ``(p, r), (q, s)``, ``CROSS`` for
    ``(p, s), (q, r)`` or ``KEEP``. A replacement pair containing a loop,
    a duplicate or a forbidden pair is ineligible. The better eligible pair
    wins if it strictly beats the current ped product (strictly lower for
    ``MINIMIZE``); ties between the two alternatives go to ``PARALLEL``.
    """
    e1, e2 = canon(*e1), canon(*e2)
    if e1 == e2:
        raise ValueError(f"cannot switch edge {e1} with itself")
    return _decide(g, t.table, e1, e2, constraints, objective)[0]


def _decide(g, table, e1, e2, constraints, objective):
    if e1 in constraints.protected or e2 in constraints.protected:
        return KEEP, 0, 0
    p, q = e1
    r, s = e2
    current = table[p][q] * table[r][s]
    forbidden = constraints.forbidden
    par = _alt_ped(g, table, canon(p, r), canon(q, s), forbidden)
    crs = _alt_ped(g, table, canon(p, s), canon(q, r), forbidden)
    if objective == MAXIMIZE:
        if par is not None and par > current and (crs is None or par >= crs):
            return PARALLEL, current, par
        if crs is not None and crs > current and (par is None or crs >= par):
            return CROSS, current, crs
    else:
        if par is not None and par < current and (crs is None or par <= crs):
            return PARALLEL, current, par
        if crs is not None and crs < current and (par is None or crs <= par):
            return CROSS, current, crs
    return KEEP, current, current


def build_pool(g: Graph, t: DecompositionTopology, rng: random.Random) -> list[Edge]:
    """Shuffled edge list in which each edge appears ced(e) times."""
    table = t.table
    top = t.ed_max + 1
    pool = []
    for e in g.edges:
        pool.extend([e] * (top - table[e[0]][e[1]]))
    rng.shuffle(pool)
    return pool


def modularize(
    g: Graph,
    t: DecompositionTopology,
    cfg: ModularizationConfig,
    rng: random.Random,
    trace: Optional[Callable[[SwitchEvent], None]] = None,
    check: Optional[Callable[[Graph], None]] = None,
) -> Graph:
    """Return a modularized copy of ``g``.

    Runs ``floor(pg * (M + N(N-1)/2))`` iterations. Each iteration draws two
    pool slots without replacement; a draw of two copies of the same edge
    uses up the iteration. The pool is rebuilt and reshuffled after every
    accepted switch. ``trace`` receives one :class:`SwitchEvent` per accepted
    switch and ``check`` is called with the graph after every iteration.
    """
    if g.n != t.n:
        raise ValueError(f"graph has {g.n} nodes but topology {t.n}")
    if g.m == 0:
        raise ValueError("nothing to modularize: the graph has no edges")
    out = g.copy()
    budget = iteration_budget(g, cfg.pg)
    if g.m < 2:
        return out
    table = t.table
    constraints = cfg.constraints
    objective = cfg.objective
    pool = build_pool(out, t, rng)
    size = len(pool)
    randrange = rng.randrange
    for it in range(budget):
        i = randrange(size)
        j = randrange(size - 1)
        if j >= i:
            j += 1
        e1, e2 = pool[i], pool[j]
        if e1 != e2:
            pattern, before, after = _decide(out, table, e1, e2, constraints, objective)
            if pattern != KEEP:
                added = out.switch_edges(e1, e2, pattern)
                if trace is not None:
                    trace(SwitchEvent(it, (e1, e2), added, before, after))
                pool = build_pool(out, t, rng)
                size = len(pool)
        if check is not None:
            check(out)
    return out


def q2(aed_reference: float, aed_target: float) -> float:
    """Relative modularity ``1 - aed_reference / aed_target``.

    Both zero gives 0.0. A zero target against a positive reference gives
    ``-inf`` rather than raising.
    """
    if aed_reference < 0 or aed_target < 0:
        raise ValueError("average edge distances are non-negative")
    if aed_target == 0:
        return 0.0 if aed_reference == 0 else -math.inf
    return 1.0 - aed_reference / aed_target
