"""Structural measurements of simple graphs.

Everything based on shortest paths (hierarchy, path statistics,
betweenness, quartile path lengths) is computed from one breadth-first
pass per source node. Passes are independent, so they may be farmed out
to worker processes; results are always combined in source order, which
keeps the output bit-identical regardless of the number of workers.
"""

from __future__ import annotations

import math
import warnings
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Optional, Sequence

from .graph import Graph, degree_list, largest_component
from .modularize import q2 as _q2
from .topology import DecompositionTopology, average_edge_distance, edge_distance_histogram


# --------------------------------------------------------------- modularity

def _check_split(n: int, lo: int, hi: int, split_at: int) -> None:
    if not 0 <= lo < hi <= n:
        raise ValueError(f"bad node range [{lo}, {hi}) for n={n}")
    if not lo < split_at < hi:
        raise ValueError(f"split point {split_at} leaves an empty side of [{lo}, {hi})")


def modularity_matrix(g: Graph, lo: int = 0, hi: Optional[int] = None) -> list[list[float]]:
    """``B[i][j] = A_ij - k_i k_j / 2m`` of the subgraph induced by ``[lo, hi)``."""
    hi = g.n if hi is None else hi
    size = hi - lo
    inside = [[v - lo for v in g.adj[u] if lo <= v < hi] for u in range(lo, hi)]
    k = [len(a) for a in inside]
    two_m = sum(k)
    b = [[0.0] * size for _ in range(size)]
    for i in range(size):
        row = b[i]
        if two_m:
            for j in range(size):
                row[j] = -k[i] * k[j] / two_m
        for j in inside[i]:
            row[j] += 1.0
    return b


def q_split(g: Graph, lo: int, hi: int, split_at: int) -> float:
    """Modularity of the bisection of ``[lo, hi)`` at ``split_at``.

    Uses the induced subgraph's own degrees and edge count and divides by
    ``2m``, i.e. ``Q = s^T B s / 2m`` with ``s = +1`` below the split.
    """
    _check_split(g.n, lo, hi, split_at)
    same = cross = 0
    k_plus = k_minus = 0
    for u in range(lo, hi):
        left = u < split_at
        for v in g.adj[u]:
            if not lo <= v < hi:
                continue
            if left:
                k_plus += 1
            else:
                k_minus += 1
            if v > u:
                if (v < split_at) == left:
                    same += 1
                else:
                    cross += 1
    m = same + cross
    if m == 0:
        return 0.0
    return (2 * (same - cross) - (k_plus - k_minus) ** 2 / (2 * m)) / (2 * m)


@dataclass(frozen=True)
class LevelQ:
    level: int
    lo: int
    hi: int
    split_at: int
    q: float


def q_levels(g: Graph, t: DecompositionTopology, depth: int = 3) -> list[LevelQ]:
    """Split modularity for every topology split in the top ``depth`` levels,
    breadth first."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if depth > t.depth:
        warnings.warn(f"topology has only {t.depth} levels; truncating from {depth}", stacklevel=2)
    return [
        LevelQ(s.level, s.lo, s.hi, s.mid, q_split(g, s.lo, s.hi, s.mid))
        for s in t.splits
        if s.level < depth
    ]


# ----------------------------------------------------------- local measures

def local_clustering(g: Graph) -> list[float]:
    out = []
    for u in range(g.n):
        nb = g.adj[u]
        k = len(nb)
        if k < 2:
            out.append(0.0)
            continue
        links = sum(len(nb & g.adj[v]) for v in nb) // 2
        out.append(2 * links / (k * (k - 1)))
    return out


def _spectrum(deg: Sequence[int], values: Sequence[float], skip=None) -> dict[int, float]:
    acc: dict[int, list[float]] = {}
    for k, x in zip(deg, values):
        if skip is not None and skip(k):
            continue
        acc.setdefault(k, []).append(x)
    return {k: math.fsum(v) / len(v) for k, v in sorted(acc.items())}


def clustering(g: Graph) -> tuple[float, dict[int, float]]:
    """Mean clustering coefficient and its degree spectrum C(k).

    Nodes of degree 0 or 1 count as 0.
    """
    c = local_clustering(g)
    return math.fsum(c) / g.n, _spectrum(degree_list(g), c)


def knn_spectrum(g: Graph) -> dict[int, float]:
    """Mean neighbour degree of nodes of degree k (isolated nodes skipped)."""
    deg = degree_list(g)
    per_node = [
        math.fsum(deg[v] for v in g.adj[u]) / deg[u] if deg[u] else 0.0 for u in range(g.n)
    ]
    return _spectrum(deg, per_node, skip=lambda k: k == 0)


def assortativity_r(g: Graph) -> Optional[float]:
    """Degree assortativity over edge endpoints; None if undefined.

    Sums are kept as integers so degenerate cases come out exact.
    """
    if g.m == 0:
        return None
    deg = degree_list(g)
    m = g.m
    s1 = s2 = prod = 0
    for u, v in g.edges:
        j, k = deg[u], deg[v]
        s1 += j + k
        s2 += j * j + k * k
        prod += j * k
    num = 4 * m * prod - s1 * s1
    den = 2 * m * s2 - s1 * s1
    if den == 0:
        return None
    return num / den


def edge_density(g: Graph) -> Optional[float]:
    if g.n < 2:
        return None
    return g.m / (g.n * (g.n - 1) / 2)


def pearson(xs: Sequence[float], ys: Sequence[float]) -> Optional[float]:
    n = len(xs)
    if n < 2:
        return None
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    sxx = math.fsum((x - mx) ** 2 for x in xs)
    syy = math.fsum((y - my) ** 2 for y in ys)
    if sxx == 0 or syy == 0:
        return None
    sxy = math.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return sxy / math.sqrt(sxx * syy)


# ------------------------------------------------------ shortest-path passes

@dataclass
class SourcePass:
    """Everything one breadth-first pass from ``source`` contributes."""

    source: int
    dist: list[int]  # -1 where unreachable
    paths: int  # shortest paths to every other reachable node
    hierarchical: int  # ... of which hierarchical
    delta: list[float]  # betweenness dependencies of the source


def source_pass(adj: Sequence[Sequence[int]], deg: Sequence[int], s: int, strict: bool = False) -> SourcePass:
    n = len(adj)
    dist = [-1] * n
    sigma = [0] * n
    rising = [0] * n  # degrees non-decreasing so far
    falling = [0] * n  # past the peak, non-increasing since
    preds: list[list[int]] = [[] for _ in range(n)]
    dist[s] = 0
    sigma[s] = 1
    rising[s] = 1
    order = [s]
    head = 0
    while head < len(order):
        u = order[head]
        head += 1
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = du
                order.append(v)
            if dist[v] == du:
                sigma[v] += sigma[u]
                preds[v].append(u)
    paths = hier = 0
    for v in order[1:]:
        dv = deg[v]
        r = f = 0
        for u in preds[v]:
            du = deg[u]
            if dv > du:
                r += rising[u]
            elif dv < du:
                f += rising[u] + falling[u]
            elif not strict:
                r += rising[u]
                f += falling[u]
        rising[v] = r
        falling[v] = f
        paths += sigma[v]
        hier += r + f
    delta = [0.0] * n
    for w in reversed(order):
        coeff = (1.0 + delta[w]) / sigma[w]
        for u in preds[w]:
            delta[u] += sigma[u] * coeff
    delta[s] = 0.0
    return SourcePass(s, dist, paths, hier, delta)


_WORKER_STATE: tuple = ()


def _init_worker(adj, deg, strict):
    global _WORKER_STATE
    _WORKER_STATE = (adj, deg, strict)


def _worker_pass(s: int) -> SourcePass:
    adj, deg, strict = _WORKER_STATE
    return source_pass(adj, deg, s, strict)


def all_source_passes(g: Graph, jobs: int = 1, strict: bool = False) -> list[SourcePass]:
    """One :class:`SourcePass` per node, in node order."""
    adj = tuple(tuple(sorted(a)) for a in g.adj)
    deg = degree_list(g)
    if jobs <= 1 or g.n < 2:
        return [source_pass(adj, deg, s, strict) for s in range(g.n)]
    with ProcessPoolExecutor(jobs, initializer=_init_worker, initargs=(adj, deg, strict)) as ex:
        chunk = max(1, g.n // (4 * jobs))
        return list(ex.map(_worker_pass, range(g.n), chunksize=chunk))


def lower_median(values: Sequence[float]) -> float:
    ordered = sorted(values)
    return ordered[(len(ordered) - 1) // 2]


def _median_from_counts(counts: Counter) -> int:
    total = sum(counts.values())
    target = (total - 1) // 2
    seen = 0
    for d in sorted(counts):
        seen += counts[d]
        if seen > target:
            return d
    raise ValueError("empty distance multiset")


@dataclass(frozen=True)
class PathStats:
    diameter: int
    apl: float
    median_pl: int
    connected: bool


def _component_mask(g: Graph) -> tuple[list[bool], bool]:
    comp = largest_component(g)
    mask = [False] * g.n
    for u in comp:
        mask[u] = True
    return mask, len(comp) == g.n


def _path_stats(passes: Sequence[SourcePass], mask: Sequence[bool], connected: bool) -> PathStats:
    counts: Counter = Counter()
    for sp in passes:
        if not mask[sp.source]:
            continue
        s = sp.source
        for t, d in enumerate(sp.dist):
            if t > s and d > 0:
                counts[d] += 1
    if not counts:
        return PathStats(0, 0.0, 0, connected)
    total = sum(counts.values())
    apl = sum(d * c for d, c in counts.items()) / total
    return PathStats(max(counts), apl, _median_from_counts(counts), connected)


def path_stats(g: Graph, passes: Optional[Sequence[SourcePass]] = None) -> PathStats:
    """Diameter, mean and lower-median distance over unordered node pairs of
    the largest component."""
    passes = passes if passes is not None else all_source_passes(g)
    mask, connected = _component_mask(g)
    return _path_stats(passes, mask, connected)


def hierarchy_h(g: Graph, strict: bool = False, passes: Optional[Sequence[SourcePass]] = None) -> float:
    """Fraction of all shortest paths that are hierarchical.

    A path is hierarchical when the degrees along it rise to a single peak
    and then fall, either phase possibly empty. With ``strict=False``
    plateaus are allowed in both phases. Computed over the largest
    component.
    """
    passes = passes if passes is not None else all_source_passes(g, strict=strict)
    mask, _ = _component_mask(g)
    paths = sum(sp.paths for sp in passes if mask[sp.source])
    hier = sum(sp.hierarchical for sp in passes if mask[sp.source])
    return hier / paths if paths else 1.0


def _betweenness(passes: Sequence[SourcePass], n: int) -> list[float]:
    bc = [0.0] * n
    for sp in passes:
        for v, d in enumerate(sp.delta):
            bc[v] += d
    return bc


def betweenness(g: Graph, passes: Optional[Sequence[SourcePass]] = None) -> list[float]:
    """Unnormalized betweenness over ordered source/target pairs."""
    passes = passes if passes is not None else all_source_passes(g)
    return _betweenness(passes, g.n)


def degree_centrality_corr(g: Graph, bc: Optional[Sequence[float]] = None) -> Optional[float]:
    bc = bc if bc is not None else betweenness(g)
    return pearson([float(k) for k in degree_list(g)], bc)


def quartile_sets(g: Graph, nodes: Optional[Sequence[int]] = None) -> list[list[int]]:
    """Node sets of the four degree quartiles, highest degrees first.

    The sorted unique degree values are cut into four almost equal parts;
    quartile 1 keeps nodes at or above the smallest value of the top part,
    quartile 2 those at or above the median unique value, quartile 3 those
    at or above the smallest value of the second part, and quartile 4 is
    every node.
    """
    nodes = list(range(g.n)) if nodes is None else list(nodes)
    deg = degree_list(g)
    uniq = sorted({deg[u] for u in nodes})
    u = len(uniq)
    half = u // 2
    median = uniq[half] if u % 2 else (uniq[half - 1] + uniq[half]) / 2
    thresholds = (uniq[(3 * u) // 4], median, uniq[u // 4])
    sets = [[v for v in nodes if deg[v] >= th] for th in thresholds]
    sets.append(nodes)
    return sets


def _quartile_ampl(g: Graph, passes: Sequence[SourcePass], mask: Sequence[bool]) -> list[Optional[float]]:
    nodes = [u for u in range(g.n) if mask[u]]
    out: list[Optional[float]] = []
    for members in quartile_sets(g, nodes):
        if len(members) < 2:
            out.append(None)
            continue
        counts: Counter = Counter()
        for i, s in enumerate(members):
            row = passes[s].dist
            for t in members[i + 1:]:
                counts[row[t]] += 1
        out.append(float(_median_from_counts(counts)))
    return out


def quartile_ampl(g: Graph, passes: Optional[Sequence[SourcePass]] = None) -> list[Optional[float]]:
    """Median pairwise distance inside each degree quartile (None if < 2 nodes)."""
    passes = passes if passes is not None else all_source_passes(g)
    mask, _ = _component_mask(g)
    return _quartile_ampl(g, passes, mask)


def degree_ccdf(g: Graph) -> dict[int, float]:
    """``P(X >= k)`` at every degree value present."""
    deg = degree_list(g)
    counts = Counter(deg)
    out = {}
    above = 0
    for k in sorted(counts, reverse=True):
        above += counts[k]
        out[k] = above / g.n
    return dict(sorted(out.items()))


# ------------------------------------------------------------------- report

@dataclass
class MetricsReport:
    n: int
    m: int
    p_e: Optional[float]
    q_levels: list[LevelQ]
    aed: Optional[float]
    q2: Optional[float]
    clustering_c: float
    h: float
    diameter: int
    apl: float
    median_pl: int
    connected: bool
    assortativity_r: Optional[float]
    degree_centrality_corr: Optional[float]
    quartile_ampl: list[Optional[float]]
    c_spectrum: dict[int, float] = field(repr=False)
    knn_spectrum: dict[int, float] = field(repr=False)
    betweenness: list[float] = field(repr=False)
    degree_ccdf: dict[int, float] = field(repr=False)
    ed_histogram: dict[int, int] = field(repr=False)

    @property
    def top_q(self) -> Optional[float]:
        return self.q_levels[0].q if self.q_levels else None

    def scalars(self) -> dict[str, object]:
        """Flat key/value view (spectra and per-node values excluded)."""
        out: dict[str, object] = {}
        for f in fields(self):
            if f.name in ("c_spectrum", "knn_spectrum", "betweenness", "degree_ccdf", "ed_histogram"):
                continue
            value = getattr(self, f.name)
            if f.name == "q_levels":
                for lq in value:
                    out[f"q[{lq.level}:{lq.lo}-{lq.hi}]"] = lq.q
            elif f.name == "quartile_ampl":
                for i, x in enumerate(value, 1):
                    out[f"quartile_ampl_{i}"] = x
            else:
                out[f.name] = value
        return out

    def to_text(self) -> str:
        lines = []
        for k, v in self.scalars().items():
            lines.append(f"{k}={format_value(v)}")
        lines.append("betweenness=" + ",".join(format_value(x) for x in self.betweenness))
        return "\n".join(lines) + "\n"

    def spectra_csv(self) -> dict[str, str]:
        """CSV text per spectrum, keyed by a short name."""
        return {
            "ccdf": _csv(("degree", "ccdf"), self.degree_ccdf),
            "ck": _csv(("degree", "mean_clustering"), self.c_spectrum),
            "knn": _csv(("degree", "mean_neighbor_degree"), self.knn_spectrum),
            "edhist": _csv(("edge_distance", "edges"), self.ed_histogram),
        }


def format_value(v: object) -> str:
    if v is None:
        return "undefined"
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _csv(header: tuple[str, str], data: dict) -> str:
    rows = [",".join(header)] + [f"{k},{format_value(v)}" for k, v in data.items()]
    return "\n".join(rows) + "\n"


def compute_report(
    g: Graph,
    t: Optional[DecompositionTopology] = None,
    reference_aed: Optional[float] = None,
    depth: int = 3,
    jobs: int = 1,
    strict_h: bool = False,
) -> MetricsReport:
    """Measure ``g``; topology-based entries are None when ``t`` is None.

    ``reference_aed`` is the aed of the graph Q2 compares against.
    """
    passes = all_source_passes(g, jobs=jobs, strict=strict_h)
    mask, connected = _component_mask(g)
    ps = _path_stats(passes, mask, connected)
    c, ck = clustering(g)
    bc = _betweenness(passes, g.n)
    aed = None
    levels: list[LevelQ] = []
    hist: dict[int, int] = {}
    if t is not None:
        if g.m:
            aed = average_edge_distance(g, t)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            levels = q_levels(g, t, depth) if t.splits else []
        hist = edge_distance_histogram(g, t)
    q2_value = None
    if aed is not None and reference_aed is not None:
        q2_value = _q2(reference_aed, aed)
    return MetricsReport(
        n=g.n,
        m=g.m,
        p_e=edge_density(g),
        q_levels=levels,
        aed=aed,
        q2=q2_value,
        clustering_c=c,
        h=hierarchy_h(g, passes=passes),
        diameter=ps.diameter,
        apl=ps.apl,
        median_pl=ps.median_pl,
        connected=connected,
        assortativity_r=assortativity_r(g),
        degree_centrality_corr=pearson([float(k) for k in degree_list(g)], bc),
        quartile_ampl=_quartile_ampl(g, passes, mask),
        c_spectrum=ck,
        knn_spectrum=knn_spectrum(g),
        betweenness=bc,
        degree_ccdf=degree_ccdf(g),
        ed_histogram=hist,
    )


def write_report(path: str | Path, report: MetricsReport, header: Sequence[str] = ()) -> list[Path]:
    """Write the key/value record to ``path`` and one CSV per spectrum
    next to it; returns every path written."""
    path = Path(path)
    head = "".join((h if h.startswith("#") else "# " + h) + "\n" for h in header)
    path.write_text(head + report.to_text())
    written = [path]
    for name, text in report.spectra_csv().items():
        p = path.with_name(f"{path.name}.{name}.csv")
        p.write_text(head + text)
        written.append(p)
    return written


def read_report(path: str | Path) -> dict[str, str]:
    out = {}
    for line in Path(path).read_text().splitlines():
        if line and not line.startswith("#") and "=" in line:
            k, v = line.split("=", 1)
            out[k] = v
    return out
