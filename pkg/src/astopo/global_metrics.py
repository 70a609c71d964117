"""Shortest-path metrics (distance, eccentricity, betweenness) and the adjacency spectrum.

Everything here runs on the largest connected component; the fraction of
nodes covered is reported as ``coverage``.
"""
from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as sla

from . import _kernels
from .graph import GraphError, TopologyGraph, largest_component

log = logging.getLogger(__name__)

DENSE_THRESHOLD = 2000


def _lcc(g: TopologyGraph) -> tuple[TopologyGraph, float]:
    if g.m == 0:
        raise GraphError("graph has no edges")
    h = largest_component(g)
    return h, h.n / g.n


@dataclass(frozen=True)
class DistanceStats:
    histogram: dict[int, int]
    d_bar: float
    sigma: float
    d_of_k: dict[int, float]
    coverage: float

    @property
    def pdf(self) -> dict[int, float]:
        total = sum(self.histogram.values())
        return {x: c / total for x, c in self.histogram.items()}


@dataclass(frozen=True)
class EccentricityStats:
    ecc: dict[int, int]
    radius: int
    diameter: int
    mean: float
    center: frozenset
    periphery: frozenset
    center_ratio: float
    periphery_ratio: float
    min_degree_in_center: int
    max_degree_in_periphery: int
    ecc_of_k: dict[int, float]
    coverage: float

    @property
    def pdf(self) -> dict[int, float]:
        vals, counts = np.unique(list(self.ecc.values()), return_counts=True)
        return {int(v): c / len(self.ecc) for v, c in zip(vals, counts)}


def _per_degree_mean(deg: np.ndarray, values: np.ndarray) -> dict[int, float]:
    return {int(k): float(values[deg == k].mean()) for k in np.unique(deg)}


def path_stats(g: TopologyGraph) -> tuple[DistanceStats, EccentricityStats]:
    """One all-sources BFS sweep feeding both distance and eccentricity stats."""
    h, coverage = _lcc(g)
    hist, ecc, dsum = _kernels.all_pairs_bfs(h._indptr, h._indices)
    xs = np.flatnonzero(hist)
    counts = hist[xs]
    total = counts.sum()
    d_bar = float((xs * counts).sum() / total)
    var = float(((xs - d_bar) ** 2 * counts).sum() / total)
    deg = h.degrees()
    dist = DistanceStats(
        histogram={int(x): int(c) for x, c in zip(xs, counts)},
        d_bar=d_bar,
        sigma=math.sqrt(var),
        d_of_k=_per_degree_mean(deg, dsum / (h.n - 1)),
        coverage=coverage,
    )
    R, D = int(ecc.min()), int(ecc.max())
    cmask, pmask = ecc == R, ecc == D
    ids = h._ids
    eccs = EccentricityStats(
        ecc=dict(zip(h.nodes, (int(e) for e in ecc))),
        radius=R,
        diameter=D,
        mean=float(ecc.mean()),
        center=frozenset(int(a) for a in ids[cmask]),
        periphery=frozenset(int(a) for a in ids[pmask]),
        # ratios are over all nodes of g, matching the size-ratio rows of the summary
        center_ratio=int(cmask.sum()) / g.n,
        periphery_ratio=int(pmask.sum()) / g.n,
        min_degree_in_center=int(deg[cmask].min()),
        max_degree_in_periphery=int(deg[pmask].max()),
        ecc_of_k=_per_degree_mean(deg, ecc.astype(float)),
        coverage=coverage,
    )
    return dist, eccs


def distance_stats(g: TopologyGraph) -> DistanceStats:
    return path_stats(g)[0]


def eccentricity_stats(g: TopologyGraph) -> EccentricityStats:
    return path_stats(g)[1]


@dataclass(frozen=True)
class BetweennessScores:
    """Raw betweenness under the ordered-pair convention; normalize by n(n-1)."""

    node_b: dict[int, float]
    edge_b: dict[tuple[int, int], float]
    normalization: float
    coverage: float

    def normalized_node(self) -> dict[int, float]:
        return {v: b / self.normalization for v, b in self.node_b.items()}

    def normalized_edge(self) -> dict[tuple[int, int], float]:
        return {e: b / self.normalization for e, b in self.edge_b.items()}

    @property
    def mean_node(self) -> float:
        return float(np.mean(list(self.node_b.values()))) / self.normalization

    @property
    def mean_edge(self) -> float:
        return float(np.mean(list(self.edge_b.values()))) / self.normalization


def _edge_slots(h: TopologyGraph) -> tuple[np.ndarray, np.ndarray]:
    """Edge array (i<j, sorted) and the CSR-slot -> edge id map."""
    e = h.edge_array()
    m = len(e)
    rows = np.repeat(np.arange(h.n, dtype=np.int64), h.degrees())
    cols = h._indices
    lo, hi = np.minimum(rows, cols), np.maximum(rows, cols)
    # edge_array is sorted lexicographically, so a combined key is monotone in edge id
    keys = e[:, 0] * h.n + e[:, 1]
    slot_edge = np.searchsorted(keys, lo * h.n + hi)
    assert m == 0 or np.array_equal(keys[slot_edge], lo * h.n + hi)
    return e, slot_edge


def betweenness(g: TopologyGraph) -> BetweennessScores:
    h, coverage = _lcc(g)
    e, slot_edge = _edge_slots(h)
    cb, eb = _kernels.brandes(h._indptr, h._indices, slot_edge, len(e))
    ids = h._ids
    return BetweennessScores(
        node_b=dict(zip(h.nodes, cb.tolist())),
        edge_b={(int(ids[i]), int(ids[j])): float(b) for (i, j), b in zip(e, eb)},
        normalization=float(h.n * (h.n - 1)),
        coverage=coverage,
    )


def log_bin(k: int, per_decade: int = 10) -> int:
    """Smallest integer degree sharing k's logarithmic bin."""
    b = math.floor(per_decade * math.log10(k) + 1e-9)
    lo = math.ceil(10 ** (b / per_decade) - 1e-9)
    return max(lo, 1)


def betweenness_by_degree(scores: BetweennessScores, g: TopologyGraph,
                          per_decade: int = 10) -> tuple[dict[int, float], dict[tuple[int, int], float]]:
    """B(k) per degree and log-binned B(k1, k2) grid, both normalized."""
    node_norm = scores.normalized_node()
    acc: dict[int, list[float]] = defaultdict(list)
    for v, b in node_norm.items():
        acc[g.degree(v)].append(b)
    b_k = {k: float(np.mean(acc[k])) for k in sorted(acc)}
    cells: dict[tuple[int, int], list[float]] = defaultdict(list)
    for (u, v), b in scores.normalized_edge().items():
        ku, kv = log_bin(g.degree(u), per_decade), log_bin(g.degree(v), per_decade)
        cells[(ku, kv)].append(b)
        if ku != kv:
            cells[(kv, ku)].append(b)
    grid = {c: float(np.mean(cells[c])) for c in sorted(cells)}
    return b_k, grid


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: list[float]
    count_requested: int
    method: str  # "dense" | "iterative"
    coverage: float


def _order_by_magnitude(vals: np.ndarray) -> list[float]:
    vals = np.asarray(vals, dtype=float)
    order = np.lexsort((-vals, -np.abs(vals)))
    return vals[order].tolist()


def spectrum(g: TopologyGraph, top_k: int | None = None, dense_threshold: int = DENSE_THRESHOLD,
             method: str | None = None, tol: float = 1e-8) -> SpectrumResult:
    """Adjacency eigenvalues of the largest component, by descending |lambda|.

    Dense symmetric solve up to ``dense_threshold`` nodes, otherwise
    implicitly restarted Lanczos (ARPACK) for the ``top_k`` largest-magnitude
    eigenvalues.
    """
    if g.n == 0:
        raise GraphError("empty graph")
    h = largest_component(g) if g.m else g
    coverage = h.n / g.n
    n = h.n
    requested = n if top_k is None else top_k
    if requested > n:
        log.warning("top_k=%d exceeds n=%d; clamping", requested, n)
        requested = n
    a = sp.csr_matrix((np.ones(len(h._indices)), h._indices, h._indptr), shape=(n, n))
    if method is None:
        method = "dense" if n <= dense_threshold or requested >= n - 1 else "iterative"
    if method == "dense":
        vals = np.linalg.eigvalsh(a.toarray())
        return SpectrumResult(_order_by_magnitude(vals)[:requested], requested, "dense", coverage)
    if requested >= n - 1:
        raise ValueError("iterative solver needs top_k < n - 1")
    vals = sla.eigsh(a, k=requested, which="LM", tol=tol, maxiter=10 * n,
                     return_eigenvectors=False)
    return SpectrumResult(_order_by_magnitude(vals), requested, "iterative", coverage)
