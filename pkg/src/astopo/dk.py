"""0K-, 1K- and 2K-random graphs and the uncorrelated-graph predictions.

1K and 2K graphs are obtained by double-edge-swap rewiring of the observed
graph; the 2K chain only accepts swaps between equal-degree endpoints, which
keeps the joint degree matrix fixed. Random draws come from numpy's PCG64
bit generator, in fixed-size chunks, so a given ``rng_seed`` always produces
the same graph.
"""
from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from . import _kernels
from .graph import GraphError, TopologyGraph, _from_index_edges, build_graph
from .local_metrics import (
    UndefinedMetric,
    assortativity,
    clustering,
    degree_distribution,
    joint_degree_distribution,
    mean_neighbor_degree,
)

log = logging.getLogger(__name__)

RNG_ALGORITHM = "numpy PCG64"
_CHUNK = 1 << 18


class SwapBudgetWarning(UserWarning):
    pass


@dataclass(frozen=True)
class DkModelSpec:
    level: str  # "0k" | "1k" | "2k"
    seed_graph: TopologyGraph
    rng_seed: int = 0
    swap_factor: float = 10.0
    samples: int = 1

    def __post_init__(self):
        object.__setattr__(self, "level", self.level.lower())
        if self.level not in ("0k", "1k", "2k"):
            raise ValueError(f"unknown model level {self.level!r}")
        if not self.swap_factor > 0:
            raise ValueError("swap_factor must be positive")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")


def generate_0k(spec: DkModelSpec) -> TopologyGraph:
    """G(n, p) on the seed's node set with p = kbar/n."""
    g = spec.seed_graph
    if g.n == 0:
        raise GraphError("empty seed graph")
    n = g.n
    p = 2 * g.m / n / n
    if p > 1:
        raise GraphError("kbar/n exceeds 1")
    rng = np.random.Generator(np.random.PCG64(spec.rng_seed))
    pairs = n * (n - 1) // 2
    count = int(rng.binomial(pairs, p)) if pairs else 0
    picks = np.sort(rng.choice(pairs, size=count, replace=False)) if count else np.zeros(0, np.int64)
    # linear index over the upper triangle, row-major
    rows = np.arange(n, dtype=np.int64)
    row_start = rows * (2 * n - rows - 1) // 2
    i = np.searchsorted(row_start, picks, side="right") - 1
    j = picks - row_start[i] + i + 1
    return _from_index_edges(g._ids.copy(), i, j)


def _rewire(g: TopologyGraph, rng_seed: int, swap_factor: float, match_degrees: bool) -> TopologyGraph:
    if g.m < 2:
        raise GraphError("rewiring needs at least two edges")
    m, n = g.m, g.n
    e = g.edge_array()
    src, dst = e[:, 0].copy(), e[:, 1].copy()
    deg = g.degrees().astype(np.int64)
    table = _kernels.new_edge_table()
    _kernels.fill_edge_table(table, src, dst, n)
    target = int(round(swap_factor * m))
    budget = 100 * target
    rng = np.random.Generator(np.random.PCG64(rng_seed))
    accepted = proposals = 0
    while accepted < target and proposals < budget:
        size = min(_CHUNK, budget - proposals)
        pick1 = rng.integers(0, m, size)
        pick2 = rng.integers(0, m, size)
        flips = rng.integers(0, 4, size)
        accepted, used = _kernels.swap_chunk(
            src, dst, deg, table, n, pick1, pick2, flips & 1, flips >> 1,
            match_degrees, target, accepted)
        proposals += used
    if accepted == 0:
        warnings.warn(f"no acceptable swap in {proposals} proposals; returning seed unchanged",
                      SwapBudgetWarning, stacklevel=3)
        return g
    if accepted < target:
        warnings.warn(f"swap budget exhausted: {accepted}/{target} swaps accepted",
                      SwapBudgetWarning, stacklevel=3)
    log.debug("rewire: %d accepted of %d proposals", accepted, proposals)
    lo, hi = np.minimum(src, dst), np.maximum(src, dst)
    order = np.lexsort((hi, lo))
    return _from_index_edges(g._ids.copy(), lo[order], hi[order])


def generate_1k(spec: DkModelSpec) -> TopologyGraph:
    """Degree-preserving randomization: Q*m accepted double-edge swaps."""
    return _rewire(spec.seed_graph, spec.rng_seed, spec.swap_factor, match_degrees=False)


def generate_2k(spec: DkModelSpec) -> TopologyGraph:
    """JDD-preserving randomization: swaps only between equal-degree endpoints."""
    return _rewire(spec.seed_graph, spec.rng_seed, spec.swap_factor, match_degrees=True)


GENERATORS = {"0k": generate_0k, "1k": generate_1k, "2k": generate_2k}


def generate(spec: DkModelSpec) -> TopologyGraph:
    return GENERATORS[spec.level](spec)


@dataclass(frozen=True)
class StubMatchingResult:
    graph: TopologyGraph
    l1_deviation: int
    self_loops: int
    multi_edges: int


def configuration_model(degrees: dict[int, int], rng_seed: int = 0) -> StubMatchingResult:
    """Random stub matching for a bare degree sequence, with loops and multi-edges erased.

    ``l1_deviation`` is sum |target degree - realized degree|.
    """
    ids = sorted(degrees)
    stubs = np.repeat(np.array(ids, dtype=np.int64), [degrees[a] for a in ids])
    if len(stubs) % 2:
        raise ValueError("degree sum must be even")
    rng = np.random.Generator(np.random.PCG64(rng_seed))
    rng.shuffle(stubs)
    pairs = stubs.reshape(-1, 2)
    g = build_graph(map(tuple, pairs.tolist()), ids)
    realized = dict(zip(g.nodes, g.degrees().tolist()))
    dev = sum(abs(degrees[a] - realized[a]) for a in ids)
    return StubMatchingResult(g, dev, g.dropped.self_loops, g.dropped.duplicates)


@dataclass(frozen=True)
class AnalyticalPredictions:
    knn_0k: float
    knn_1k: float
    c_0k: float
    c_1k: float


def analytical_predictions(g: TopologyGraph) -> AnalyticalPredictions:
    if g.m == 0:
        raise GraphError("graph has no edges")
    dist = degree_distribution(g)
    kbar, k2 = dist.mean, dist.second_moment
    return AnalyticalPredictions(
        knn_0k=kbar + 1,
        knn_1k=k2 / kbar,
        c_0k=kbar / g.n,
        c_1k=(k2 - kbar ** 2) / (g.n * kbar ** 3),
    )


def uncorrelated_jdd(g: TopologyGraph) -> dict[tuple[int, int], float]:
    """P_1K(k1,k2) = P~(k1) P~(k2) with P~(k) = k P(k) / kbar."""
    dist = degree_distribution(g)
    kbar = dist.mean
    edge_end = {k: k * p / kbar for k, p in dist.pdf.items() if k > 0}
    return {(a, b): pa * pb for a, pa in edge_end.items() for b, pb in edge_end.items()}


def jdd_ratio_matrix(g: TopologyGraph, reference: TopologyGraph | None = None) -> dict[tuple[int, int], float]:
    """log10(P(k1,k2) / P_1K(k1,k2)) over ordered degree pairs observed in ``g``.

    P_1K comes from ``reference``'s degree distribution (default: ``g`` itself).
    Cells with no observed edges are absent.
    """
    jdm = joint_degree_distribution(g)
    p1k = uncorrelated_jdd(reference if reference is not None else g)
    out = {}
    for cell, p in jdm.ordered_items():
        q = p1k.get(cell, 0.0)
        if q > 0:
            out[cell] = math.log10(p / q)
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class EnsembleStatistic:
    metric: str
    values: list[float]
    missing: int
    level: str
    rng_algorithm: str = RNG_ALGORITHM

    @property
    def mean(self) -> float:
        return float(np.mean(self.values)) if self.values else math.nan

    @property
    def std(self) -> float:
        return float(np.std(self.values)) if self.values else math.nan


def _global_clustering(g):
    return clustering(g).coefficient


def _mean_clustering(g):
    return clustering(g).mean


METRICS: dict[str, Callable[[TopologyGraph], float]] = {
    "assortativity": assortativity,
    "global_clustering": _global_clustering,
    "mean_clustering": _mean_clustering,
    "mean_knn": mean_neighbor_degree,
    "edges": lambda g: float(g.m),
}


def ensemble(spec: DkModelSpec):
    """Yield ``spec.samples`` graphs generated with seeds rng_seed, rng_seed+1, ..."""
    for s in range(spec.samples):
        yield generate(replace(spec, rng_seed=spec.rng_seed + s))


def ensemble_statistic(spec: DkModelSpec, metric: str | Callable[[TopologyGraph], float]) -> EnsembleStatistic:
    fn = METRICS[metric] if isinstance(metric, str) else metric
    name = metric if isinstance(metric, str) else getattr(metric, "__name__", "metric")
    values, missing = [], 0
    for h in ensemble(spec):
        try:
            values.append(float(fn(h)))
        except (UndefinedMetric, GraphError, ZeroDivisionError):
            missing += 1
    return EnsembleStatistic(name, values, missing, spec.level)


def mixing_check(spec: DkModelSpec, metric: str) -> tuple[EnsembleStatistic, EnsembleStatistic, bool]:
    """Compare ensemble means at Q and 2Q; agreement within one ensemble stddev."""
    a = ensemble_statistic(spec, metric)
    b = ensemble_statistic(replace(spec, swap_factor=2 * spec.swap_factor), metric)
    tol = max(a.std, b.std)
    return a, b, abs(a.mean - b.mean) <= tol


@dataclass(frozen=True)
class ClusteringComparison:
    observed_by_degree: dict[int, float]
    observed_mean: float
    c2k_by_degree: dict[int, float]
    c2k_mean: float
    c2k_mean_std: float
    c1k: float
    c0k: float
    samples: int
    method: str = "monte-carlo over 2K rewiring ensemble"

    @property
    def ratio_2k(self) -> float:
        """mean C_2K / observed mean C."""
        return self.c2k_mean / self.observed_mean if self.observed_mean else math.nan

    @property
    def ratio_0k_1k(self) -> float:
        return self.c0k / self.c1k if self.c1k else math.nan


def clustering_vs_randomness(g: TopologyGraph, spec: DkModelSpec) -> ClusteringComparison:
    obs = clustering(g)
    pred = analytical_predictions(g)
    spec2 = replace(spec, level="2k", seed_graph=g)
    per_k: dict[int, list[float]] = {}
    means = []
    for h in ensemble(spec2):
        c = clustering(h)
        means.append(c.mean)
        for k, v in c.by_degree.items():
            per_k.setdefault(k, []).append(v)
    return ClusteringComparison(
        observed_by_degree=obs.by_degree,
        observed_mean=obs.mean,
        c2k_by_degree={k: float(np.mean(v)) for k, v in sorted(per_k.items())},
        c2k_mean=float(np.mean(means)),
        c2k_mean_std=float(np.std(means)),
        c1k=pred.c_1k,
        c0k=pred.c_0k,
        samples=spec.samples,
    )
