"""Degree- and neighborhood-based metrics: degree distribution through coreness."""
from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import GraphError, TopologyGraph

log = logging.getLogger(__name__)


class UndefinedMetric(ArithmeticError):
    """The metric is mathematically undefined for this graph (e.g. r on a regular graph)."""


def _require_nodes(g: TopologyGraph):
    if g.n == 0:
        raise GraphError("empty graph")


def _require_edges(g: TopologyGraph):
    if g.m == 0:
        raise GraphError("graph has no edges")


def basic_stats(g: TopologyGraph) -> tuple[int, int, float]:
    _require_nodes(g)
    return g.n, g.m, 2 * g.m / g.n


@dataclass(frozen=True)
class DegreeDistribution:
    counts: dict[int, int]
    n: int

    @property
    def pdf(self) -> dict[int, float]:
        return {k: c / self.n for k, c in self.counts.items()}

    @property
    def ccdf(self) -> dict[int, float]:
        out, tail = {}, 0
        for k in sorted(self.counts, reverse=True):
            tail += self.counts[k]
            out[k] = tail / self.n
        return dict(sorted(out.items()))

    @property
    def k_max(self) -> int:
        return max(self.counts)

    @property
    def k_min(self) -> int:
        return min(self.counts)

    @property
    def mean(self) -> float:
        return sum(k * c for k, c in self.counts.items()) / self.n

    @property
    def second_moment(self) -> float:
        return sum(k * k * c for k, c in self.counts.items()) / self.n


def degree_distribution(g: TopologyGraph) -> DegreeDistribution:
    _require_nodes(g)
    ks, cs = np.unique(g.degrees(), return_counts=True)
    return DegreeDistribution({int(k): int(c) for k, c in zip(ks, cs)}, g.n)


def power_law_max_degree(n: int, gamma: float) -> float:
    """Natural cutoff n^(1/(gamma-1)) of a power-law degree distribution."""
    if gamma <= 1:
        raise ValueError("gamma must exceed 1")
    if n < 1:
        raise ValueError("n must be positive")
    return n ** (1.0 / (gamma - 1.0))


@dataclass(frozen=True)
class PowerLawFit:
    slope: float
    intercept: float
    fit_range: tuple[float, float]
    r_squared: float
    points: int

    @property
    def exponent(self) -> float:
        """Decay exponent, -slope (so y ~ x^-exponent)."""
        return -self.slope


def fit_power_law(series, fit_range: tuple[float, float] | None = None) -> PowerLawFit:
    """Least-squares line through (log10 x, log10 y).

    Points with y <= 0 are skipped. ``fit_range`` is an inclusive x interval.
    """
    pts = [(float(x), float(y)) for x, y in (series.items() if isinstance(series, dict) else series)]
    lo, hi = fit_range if fit_range is not None else (-math.inf, math.inf)
    inside = [(x, y) for x, y in pts if lo <= x <= hi and x > 0]
    usable = [(x, y) for x, y in inside if y > 0]
    if len(usable) < len(inside):
        log.debug("fit_power_law: skipped %d non-positive points", len(inside) - len(usable))
    if len({x for x, _ in usable}) < 2:
        raise ValueError("need at least two distinct x values to fit")
    lx = np.log10([x for x, _ in usable])
    ly = np.log10([y for _, y in usable])
    slope, intercept = np.polyfit(lx, ly, 1)
    ss_tot = float(((ly - ly.mean()) ** 2).sum())
    ss_res = float(((ly - (slope * lx + intercept)) ** 2).sum())
    r2 = 1.0 if ss_tot == 0 else max(0.0, 1.0 - ss_res / ss_tot)
    xs = [x for x, _ in usable]
    return PowerLawFit(float(slope), float(intercept), (min(xs), max(xs)), min(r2, 1.0), len(usable))


class JointDegreeMatrix:
    """Edge counts m(k1, k2) keyed by k1 <= k2."""

    def __init__(self, m_kk: dict[tuple[int, int], int]):
        self.m_kk = dict(sorted(m_kk.items()))
        self.total_edges = sum(self.m_kk.values())

    def count(self, k1: int, k2: int) -> int:
        return self.m_kk.get((min(k1, k2), max(k1, k2)), 0)

    def probability(self, k1: int, k2: int) -> float:
        """m(k1,k2)/m over unordered degree classes; sums to 1 over k1 <= k2."""
        return self.count(k1, k2) / self.total_edges

    def ordered_probability(self, k1: int, k2: int) -> float:
        """Symmetric P(k1,k2); off-diagonal mass split 1/2 each way so it sums to 1 over all ordered pairs."""
        c = self.count(k1, k2)
        return c / self.total_edges if k1 == k2 else c / (2 * self.total_edges)

    def ordered_items(self):
        for (a, b), c in self.m_kk.items():
            if a == b:
                yield (a, b), c / self.total_edges
            else:
                p = c / (2 * self.total_edges)
                yield (a, b), p
                yield (b, a), p

    def endpoint_counts(self) -> dict[int, int]:
        """Edge endpoints per degree class; equals k * n(k)."""
        out: dict[int, int] = defaultdict(int)
        for (a, b), c in self.m_kk.items():
            out[a] += c
            out[b] += c
        return dict(sorted(out.items()))

    def __eq__(self, other):
        return isinstance(other, JointDegreeMatrix) and self.m_kk == other.m_kk

    def __hash__(self):
        return hash(tuple(self.m_kk.items()))

    def __repr__(self):
        return f"JointDegreeMatrix({len(self.m_kk)} cells, m={self.total_edges})"


def joint_degree_distribution(g: TopologyGraph) -> JointDegreeMatrix:
    _require_edges(g)
    deg = g.degrees()
    e = g.edge_array()
    a, b = deg[e[:, 0]], deg[e[:, 1]]
    pairs = np.column_stack([np.minimum(a, b), np.maximum(a, b)])
    cells, counts = np.unique(pairs, axis=0, return_counts=True)
    return JointDegreeMatrix({(int(x), int(y)): int(c) for (x, y), c in zip(cells, counts)})


def _neighbor_degree_sums(g: TopologyGraph) -> np.ndarray:
    deg = g.degrees()
    rows = np.repeat(np.arange(g.n), deg)
    return np.bincount(rows, weights=deg[g._indices].astype(float), minlength=g.n)


def node_avg_neighbor_degree(g: TopologyGraph) -> np.ndarray:
    """Mean neighbor degree per node (dense order); NaN for isolated nodes."""
    deg = g.degrees()
    with np.errstate(invalid="ignore", divide="ignore"):
        return _neighbor_degree_sums(g) / deg


def avg_neighbor_degree(g: TopologyGraph) -> dict[int, float]:
    """k_nn(k): mean over k-degree nodes of their mean neighbor degree."""
    _require_edges(g)
    deg = g.degrees()
    per_node = node_avg_neighbor_degree(g)
    out = {}
    for k in np.unique(deg[deg > 0]):
        out[int(k)] = float(per_node[deg == k].mean())
    return out


def avg_neighbor_degree_from_jdd(jdm: JointDegreeMatrix, dist: DegreeDistribution) -> dict[int, float]:
    """k_nn(k) = sum_k' k' P(k'|k) with P(k'|k) = (kbar/k) P(k,k') / P(k)."""
    kbar = dist.mean
    pdf = dist.pdf
    out: dict[int, float] = defaultdict(float)
    for (k, k2), p in jdm.ordered_items():
        out[k] += k2 * (kbar / k) * p / pdf[k]
    return dict(sorted(out.items()))


def normalized_avg_neighbor_degree(g: TopologyGraph) -> dict[int, float]:
    return {k: v / (g.n - 1) for k, v in avg_neighbor_degree(g).items()}


def mean_neighbor_degree(g: TopologyGraph) -> float:
    """Node average of per-node mean neighbor degree (degree-0 nodes excluded)."""
    per_node = node_avg_neighbor_degree(g)
    return float(np.nanmean(per_node))


def assortativity(g: TopologyGraph) -> float:
    """Pearson correlation of endpoint degrees over both orientations of every edge."""
    _require_edges(g)
    deg = g.degrees().astype(np.float64)
    e = g.edge_array()
    x = np.concatenate([deg[e[:, 0]], deg[e[:, 1]]])
    y = np.concatenate([deg[e[:, 1]], deg[e[:, 0]]])
    mx = x.mean()
    var = float(((x - mx) ** 2).mean())
    if var == 0.0:
        raise UndefinedMetric("assortativity undefined: all edge endpoints have equal degree")
    cov = float(((x - mx) * (y - mx)).mean())
    return max(-1.0, min(1.0, cov / var))


@dataclass(frozen=True)
class Clustering:
    by_degree: dict[int, float]
    mean: float
    coefficient: float
    triangles: int
    triples: int
    local: np.ndarray  # per node, dense order; NaN for degree < 2


def clustering(g: TopologyGraph) -> Clustering:
    _require_nodes(g)
    deg = g.degrees()
    tri = _kernels.triangles_per_node(g._indptr, g._indices)
    pairs = deg * (deg - 1) // 2
    local = np.full(g.n, np.nan)
    ok = deg >= 2
    local[ok] = tri[ok] / pairs[ok]
    by_k = {int(k): float(local[deg == k].mean()) for k in np.unique(deg[ok])}
    # nodes with degree < 2 contribute zero
    mean = float(np.nansum(local) / g.n)
    triples = int(pairs.sum())
    triangles = int(tri.sum()) // 3
    coef = 3 * triangles / triples if triples else 0.0
    return Clustering(by_k, mean, coef, triangles, triples, local)


def rich_club(g: TopologyGraph) -> dict[int, float]:
    """phi(rho): edge density among the rho highest-degree nodes, rho = 2..n.

    Degree ties are ordered by ascending AS number.
    """
    if g.n < 2:
        raise GraphError("rich club needs at least two nodes")
    deg = g.degrees()
    # dense index order is ascending AS number, so a stable sort keeps the tie rule
    order = np.argsort(-deg, kind="stable")
    rank = np.empty(g.n, dtype=np.int64)
    rank[order] = np.arange(g.n)
    e = g.edge_array()
    # an edge becomes internal once both endpoints are admitted
    admitted_at = np.maximum(rank[e[:, 0]], rank[e[:, 1]])
    internal = np.cumsum(np.bincount(admitted_at, minlength=g.n))
    out = {}
    for rho in range(2, g.n + 1):
        out[rho] = float(internal[rho - 1]) / (rho * (rho - 1) / 2)
    return out


def rich_club_series(g: TopologyGraph) -> dict[float, float]:
    """phi keyed by rho/n."""
    return {rho / g.n: phi for rho, phi in rich_club(g).items()}


@dataclass(frozen=True)
class CorenessMap:
    kappa: dict[int, int]
    kappa_max: int
    kappa_min: int
    core: frozenset
    fringe: frozenset
    core_ratio: float
    fringe_ratio: float
    min_degree_in_core: int
    max_degree_in_fringe: int

    @property
    def mean(self) -> float:
        return float(np.mean(list(self.kappa.values())))


def core_numbers(g: TopologyGraph) -> np.ndarray:
    """Standard peeling core numbers (dense order), bucket algorithm."""
    n = g.n
    deg = g.degrees().astype(np.int64).copy()
    if n == 0:
        return deg
    maxd = int(deg.max())
    bins = np.zeros(maxd + 2, dtype=np.int64)
    np.cumsum(np.bincount(deg, minlength=maxd + 1), out=bins[1:])
    start = bins[:-1].copy()
    vert = np.argsort(deg, kind="stable")
    pos = np.empty(n, dtype=np.int64)
    pos[vert] = np.arange(n)
    indptr, indices = g._indptr, g._indices
    deg_l, vert_l, pos_l, start_l = deg.tolist(), vert.tolist(), pos.tolist(), start.tolist()
    for i in range(n):
        v = vert_l[i]
        dv = deg_l[v]
        for w in indices[indptr[v]:indptr[v + 1]].tolist():
            dw = deg_l[w]
            if dw > dv:
                pw = pos_l[w]
                ps = start_l[dw]
                u = vert_l[ps]
                if u != w:
                    vert_l[pw], vert_l[ps] = u, w
                    pos_l[u], pos_l[w] = pw, ps
                start_l[dw] += 1
                deg_l[w] = dw - 1
    return np.array(deg_l, dtype=np.int64)


def coreness(g: TopologyGraph) -> CorenessMap:
    """Node coreness under iterative removal of nodes with degree <= k.

    This is the usual core number minus one.
    """
    _require_nodes(g)
    kappa = core_numbers(g) - 1
    deg = g.degrees()
    kmax, kmin = int(kappa.max()), int(kappa.min())
    ids = g._ids
    core_mask, fringe_mask = kappa == kmax, kappa == kmin
    return CorenessMap(
        kappa=dict(zip(g.nodes, (int(k) for k in kappa))),
        kappa_max=kmax,
        kappa_min=kmin,
        core=frozenset(int(a) for a in ids[core_mask]),
        fringe=frozenset(int(a) for a in ids[fringe_mask]),
        core_ratio=float(core_mask.mean()),
        fringe_ratio=float(fringe_mask.mean()),
        min_degree_in_core=int(deg[core_mask].min()),
        max_degree_in_fringe=int(deg[fringe_mask].max()),
    )


def coreness_by_degree(g: TopologyGraph, cmap: CorenessMap | None = None) -> dict[int, float]:
    cmap = cmap or coreness(g)
    deg = g.degrees()
    kappa = np.array([cmap.kappa[a] for a in g.nodes])
    return {int(k): float(kappa[deg == k].mean()) for k in np.unique(deg)}
