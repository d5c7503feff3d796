"""End-to-end generation: G0 -> Gr -> Gm plus measurements."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .construction import NO_CONSTRAINTS, ConstraintSet, build_g0, default_attempts, randomize
from .errors import BudgetError, ConstructionError
from .graph import Graph
from .metrics import MetricsReport, compute_report
from .modularize import ModularizationConfig, modularize
from .richclub import RichClubSpec, build_constraints, select_rich_club
from .rng import stream
from .topology import DecompositionTopology, average_edge_distance

log = logging.getLogger(__name__)


@dataclass
class PipelineResult:
    seed: int
    ndl: list[int]
    topology: DecompositionTopology
    constraints: ConstraintSet
    rich_club: list[int]
    g0: Graph
    gr: Graph
    gm: Graph
    construction_attempt: int
    report_r: Optional[MetricsReport] = field(default=None, repr=False)
    report_m: Optional[MetricsReport] = field(default=None, repr=False)


def construct(
    ndl: Sequence[int],
    seed: int,
    constraints: ConstraintSet = NO_CONSTRAINTS,
    retries: int = 0,
) -> tuple[Graph, int]:
    """Build G0, retrying with fresh streams up to ``retries`` extra times.

    Budget errors are not retried: they do not depend on the draw.
    """
    for attempt in range(retries + 1):
        rng = stream(seed, "construction") if attempt == 0 else stream(seed, "construction", attempt)
        try:
            return build_g0(ndl, rng, constraints), attempt
        except BudgetError:
            raise
        except ConstructionError as exc:
            if attempt == retries:
                raise
            log.info("construction attempt %d failed: %s", attempt, exc)
    raise AssertionError("unreachable")


def run_pipeline(
    ndl: Sequence[int],
    seed: int,
    ts: int = 4,
    pg: float = 0.8,
    rich_club: Optional[RichClubSpec] = None,
    attempts: Optional[int] = None,
    retries: int = 0,
    measure: bool = True,
    depth: int = 3,
    jobs: int = 1,
    objective: str = "maximize_ed",
) -> PipelineResult:
    """Build, randomize and modularize a graph for ``ndl``.

    Each stage draws from its own stream derived from ``seed``. When a rich
    club is given its constraints hold at every stage. With ``measure`` the
    randomized and modularized graphs are both measured, Q2 of the latter
    taken against the former.
    """
    n = len(ndl)
    topology = DecompositionTopology(n, ts)
    members: list[int] = []
    constraints = NO_CONSTRAINTS
    if rich_club is not None:
        rng = stream(seed, "richclub")
        members = select_rich_club(ndl, rich_club, rng)
        constraints = build_constraints(members, rich_club, rng)
    g0, attempt = construct(ndl, seed, constraints, retries)
    attempts = default_attempts(n) if attempts is None else attempts
    gr = randomize(g0, attempts, stream(seed, "randomize"), constraints)
    cfg = ModularizationConfig(pg=pg, objective=objective, constraints=constraints)
    gm = modularize(gr, topology, cfg, stream(seed, "modularize")) if gr.m else gr.copy()
    result = PipelineResult(seed, list(ndl), topology, constraints, members, g0, gr, gm, attempt)
    if measure:
        aed_r = average_edge_distance(gr, topology) if gr.m else None
        result.report_r = compute_report(gr, topology, aed_r, depth=depth, jobs=jobs)
        result.report_m = compute_report(gm, topology, aed_r, depth=depth, jobs=jobs)
    return result


def run_conditioned_pipeline(
    ndl: Sequence[int],
    topology: DecompositionTopology,
    cfg: ModularizationConfig,
    spec: Optional[RichClubSpec],
    seed: int,
    **kwargs,
) -> PipelineResult:
    """The full pipeline with a rich-club condition.

    ``cfg.constraints`` is ignored; the condition supplies them.
    """
    if topology.n != len(ndl):
        raise ValueError("topology and degree list disagree on the node count")
    return run_pipeline(
        ndl, seed, ts=topology.ts, pg=cfg.pg, rich_club=spec, objective=cfg.objective, **kwargs
    )
