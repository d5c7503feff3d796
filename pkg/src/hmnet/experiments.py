"""Multi-seed experiment suites over the reference degree-list classes."""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

from .degrees import DegreeDistributionSpec, Normal, PowerLaw, sample_ndl
from .errors import ConstructionError
from .metrics import MetricsReport
from .pipeline import run_pipeline
from .richclub import parse_condition
from .rng import stream

N_NODES = 200

# two degree lists per distribution, as in the reference experiments
NDL_CLASSES: dict[str, DegreeDistributionSpec] = {
    "1": DegreeDistributionSpec(Normal(6.0, 1.1)),
    "2": DegreeDistributionSpec(Normal(6.0, 1.1)),
    "9": DegreeDistributionSpec(PowerLaw(4.0, 3)),
    "10": DegreeDistributionSpec(PowerLaw(4.0, 3)),
    "11": DegreeDistributionSpec(PowerLaw(3.0, 3)),
    "12": DegreeDistributionSpec(PowerLaw(3.0, 3)),
    "13": DegreeDistributionSpec(PowerLaw(2.6, 3)),
    "14": DegreeDistributionSpec(PowerLaw(2.6, 3)),
}

RICH_CLUB_CONDITIONS = (
    "none",
    "top10:0.75",
    "top10:0.25",
    "top10:0.00",
    "random10:0.75",
    "random10:0.25",
    "random10:0.00",
)
APPENDIX_CLASSES = ("11", "12", "13", "14")

TABLE2_COLUMNS = (
    [f"q{i}" for i in range(1, 8)]
    + ["aed", "q2", "clustering_c", "h", "assortativity_r", "knn_slope",
       "degree_centrality_corr", "diameter", "apl", "median_pl"]
)
APPENDIX_COLUMNS = [
    "assortativity_r", "q2", "clustering_c", "h",
    "quartile_ampl_1", "quartile_ampl_2", "quartile_ampl_3", "quartile_ampl_4",
    "diameter", "apl", "median_pl",
]


def class_ndl(ndl_class: str, seed: int, n: int = N_NODES) -> list[int]:
    return sample_ndl(NDL_CLASSES[ndl_class], n, stream(seed, "ndl", ndl_class))


def knn_slope(report: MetricsReport) -> Optional[float]:
    """Least-squares slope of k_nn(k) against k."""
    pts = list(report.knn_spectrum.items())
    if len(pts) < 2:
        return None
    mk = sum(k for k, _ in pts) / len(pts)
    mv = sum(v for _, v in pts) / len(pts)
    sxx = sum((k - mk) ** 2 for k, _ in pts)
    return sum((k - mk) * (v - mv) for k, v in pts) / sxx


def _report_row(report: MetricsReport) -> dict[str, object]:
    row: dict[str, object] = {}
    for i, lq in enumerate(report.q_levels[:7], 1):
        row[f"q{i}"] = lq.q
    row.update(
        aed=report.aed,
        q2=report.q2,
        clustering_c=report.clustering_c,
        h=report.h,
        assortativity_r=report.assortativity_r,
        knn_slope=knn_slope(report),
        degree_centrality_corr=report.degree_centrality_corr,
        diameter=report.diameter,
        apl=report.apl,
        median_pl=report.median_pl,
    )
    for i, x in enumerate(report.quartile_ampl, 1):
        row[f"quartile_ampl_{i}"] = x
    return row


@dataclass(frozen=True)
class Task:
    suite: str
    ndl_class: str
    condition: str
    seed: int
    ts: int = 4
    pg: float = 0.8
    retries: int = 5


def run_task(task: Task) -> list[dict[str, object]]:
    """Rows for one (class, condition, seed) run: m0 and m8 for table2,
    the final graph only for the rich-club suite."""
    ndl = class_ndl(task.ndl_class, task.seed)
    base = {"ndl": task.ndl_class, "condition": task.condition, "seed": task.seed}
    try:
        res = run_pipeline(
            ndl, task.seed, ts=task.ts, pg=task.pg,
            rich_club=parse_condition(task.condition), retries=task.retries,
        )
    except ConstructionError as exc:
        return [{**base, "stage": "m8", "status": f"failed: {type(exc).__name__}"}]
    rows = []
    if task.suite == "table2":
        rows.append({**base, "stage": "m0", "status": "ok", **_report_row(res.report_r)})
    rows.append({**base, "stage": "m8", "status": "ok", **_report_row(res.report_m)})
    return rows


def suite_tasks(suite: str, seeds: Iterable[int], ts: int = 4, pg: float = 0.8) -> list[Task]:
    seeds = list(seeds)
    if suite == "table2":
        return [Task(suite, c, "none", s, ts, pg) for c in NDL_CLASSES for s in seeds]
    if suite == "appendixA":
        return [
            Task(suite, c, cond, s, ts, pg)
            for c in APPENDIX_CLASSES
            for cond in RICH_CLUB_CONDITIONS
            for s in seeds
        ]
    raise ValueError(f"unknown suite {suite!r}")


def _order(row: dict) -> tuple:
    return (int(row["ndl"]), row["condition"], row["seed"], row["stage"])


def run_suite(suite: str, seeds: Iterable[int], jobs: int = 1, ts: int = 4, pg: float = 0.8) -> list[dict]:
    """All per-seed rows, sorted by (ndl, condition, seed, stage)."""
    tasks = suite_tasks(suite, seeds, ts, pg)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            batches = list(ex.map(run_task, tasks))
    else:
        batches = [run_task(t) for t in tasks]
    return sorted((r for b in batches for r in b), key=_order)


def columns(suite: str) -> list[str]:
    return TABLE2_COLUMNS if suite == "table2" else APPENDIX_COLUMNS


def summarize(rows: list[dict], cols: list[str], by=("ndl", "condition", "stage")) -> list[dict]:
    """Mean and sample standard deviation per group; the deviation is left
    empty for single-seed groups."""
    groups: dict[tuple, list[dict]] = {}
    for r in rows:
        if r.get("status") == "ok":
            groups.setdefault(tuple(r[k] for k in by), []).append(r)
    out = []
    for key, members in groups.items():
        row: dict[str, object] = dict(zip(by, key))
        row["runs"] = len(members)
        for c in cols:
            vals = [float(m[c]) for m in members if m.get(c) is not None]
            vals = [v for v in vals if math.isfinite(v)]
            if not vals:
                row[f"{c}_mean"] = None
                row[f"{c}_sd"] = None
                continue
            mean = sum(vals) / len(vals)
            row[f"{c}_mean"] = mean
            row[f"{c}_sd"] = (
                math.sqrt(sum((v - mean) ** 2 for v in vals) / (len(vals) - 1)) if len(vals) > 1 else None
            )
        out.append(row)
    return out


def to_csv(rows: list[dict], header_cols: list[str], provenance: Iterable[str] = ()) -> str:
    buf = io.StringIO()
    for line in provenance:
        buf.write(line if line.startswith("#") else "# " + line)
        buf.write("\n")
    writer = csv.DictWriter(buf, fieldnames=header_cols, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: ("" if r.get(k) is None else (repr(r[k]) if isinstance(r[k], float) else r[k]))
                         for k in header_cols})
    return buf.getvalue()
