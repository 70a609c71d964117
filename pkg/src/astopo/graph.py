"""Immutable undirected simple graph over AS numbers.

Node identifiers are AS numbers. Internally every graph keeps a dense
re-indexing (position in the sorted node array) and a CSR adjacency so the
array-based kernels in other modules can work on plain integer arrays.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

MAX_ASN = 2**32 - 1


class GraphError(ValueError):
    """Raised for bad node ids or graphs that violate an operation's precondition."""


@dataclass(frozen=True)
class DropCounts:
    self_loops: int = 0
    duplicates: int = 0


class TopologyGraph:
    """Undirected simple graph. Build with :func:`build_graph`."""

    __slots__ = ("_ids", "_index", "_indptr", "_indices", "dropped")

    def __init__(self, ids: np.ndarray, indptr: np.ndarray, indices: np.ndarray,
                 dropped: DropCounts = DropCounts()):
        self._ids = ids
        self._indptr = indptr
        self._indices = indices
        self._index = {int(a): i for i, a in enumerate(ids)}
        self.dropped = dropped
        for arr in (ids, indptr, indices):
            arr.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self._ids)

    @property
    def m(self) -> int:
        return len(self._indices) // 2

    @property
    def nodes(self) -> list[int]:
        return [int(a) for a in self._ids]

    def __contains__(self, asn) -> bool:
        return int(asn) in self._index

    def __len__(self) -> int:
        return self.n

    def index_of(self, asn: int) -> int:
        try:
            return self._index[int(asn)]
        except KeyError:
            raise GraphError(f"unknown node id {asn}") from None

    def degree(self, asn: int) -> int:
        i = self.index_of(asn)
        return int(self._indptr[i + 1] - self._indptr[i])

    def neighbors(self, asn: int) -> list[int]:
        i = self.index_of(asn)
        return [int(a) for a in self._ids[self._indices[self._indptr[i]:self._indptr[i + 1]]]]

    def has_edge(self, u: int, v: int) -> bool:
        if u not in self or v not in self:
            return False
        i, j = self._index[int(u)], self._index[int(v)]
        row = self._indices[self._indptr[i]:self._indptr[i + 1]]
        k = np.searchsorted(row, j)
        return k < len(row) and row[k] == j

    def degrees(self) -> np.ndarray:
        """Degrees in dense-index order (aligned with ``nodes``)."""
        return np.diff(self._indptr)

    def edge_array(self) -> np.ndarray:
        """(m, 2) array of dense index pairs with i < j, lexicographically sorted."""
        rows = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self._indptr))
        mask = rows < self._indices
        return np.column_stack([rows[mask], self._indices[mask]])

    def edges(self) -> Iterator[tuple[int, int]]:
        ids = self._ids
        for i, j in self.edge_array():
            yield int(ids[i]), int(ids[j])

    def edge_set(self) -> set[tuple[int, int]]:
        return set(self.edges())

    def __eq__(self, other) -> bool:
        if not isinstance(other, TopologyGraph):
            return NotImplemented
        return (np.array_equal(self._ids, other._ids)
                and np.array_equal(self._indptr, other._indptr)
                and np.array_equal(self._indices, other._indices))

    def __hash__(self):
        return hash((self._ids.tobytes(), self._indices.tobytes()))

    def __repr__(self) -> str:
        return f"TopologyGraph(n={self.n}, m={self.m})"


def _from_index_edges(ids: np.ndarray, ei: np.ndarray, ej: np.ndarray,
                      dropped: DropCounts = DropCounts()) -> TopologyGraph:
    # ei, ej: dense index endpoints of unique edges, no self-loops
    n = len(ids)
    src = np.concatenate([ei, ej]).astype(np.int64)
    dst = np.concatenate([ej, ei]).astype(np.int64)
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return TopologyGraph(ids.astype(np.int64), indptr, dst, dropped)


def build_graph(edges: Iterable[tuple[int, int]], nodes: Iterable[int] = ()) -> TopologyGraph:
    """Build a simple graph from an edge list.

    Duplicate edges (in either orientation) are collapsed and self-loops
    dropped; both counts are recorded in ``graph.dropped``. Endpoints of
    self-loops still become nodes. ``nodes`` adds isolated nodes.
    """
    arr = np.array([(int(u), int(v)) for u, v in edges], dtype=np.int64).reshape(-1, 2)
    extra = np.fromiter((int(a) for a in nodes), dtype=np.int64)
    if (arr < 0).any() or (extra < 0).any() or (arr > MAX_ASN).any() or (extra > MAX_ASN).any():
        raise GraphError("AS numbers must be in 0..2^32-1")
    ids = np.unique(np.concatenate([arr.ravel(), extra]))
    loops = arr[:, 0] == arr[:, 1]
    arr = np.sort(arr[~loops], axis=1)
    uniq = np.unique(arr, axis=0) if len(arr) else arr
    dropped = DropCounts(self_loops=int(loops.sum()), duplicates=len(arr) - len(uniq))
    ei = np.searchsorted(ids, uniq[:, 0])
    ej = np.searchsorted(ids, uniq[:, 1])
    return _from_index_edges(ids, ei, ej, dropped)


def degree_sequence(g: TopologyGraph) -> list[tuple[int, int]]:
    return list(zip(g.nodes, (int(d) for d in g.degrees())))


@dataclass(frozen=True)
class ComponentLabeling:
    component_of: dict[int, int]
    sizes: list[int]
    largest: int | None

    @property
    def count(self) -> int:
        return len(self.sizes)


def _component_labels(g: TopologyGraph) -> np.ndarray:
    # labels in order of first (smallest-index) node, so label order follows smallest NodeId
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import connected_components as cc

    if g.n == 0:
        return np.zeros(0, dtype=np.int64)
    a = csr_matrix((np.ones(len(g._indices)), g._indices, g._indptr), shape=(g.n, g.n))
    _, raw = cc(a, directed=False)
    # relabel by first occurrence
    _, first = np.unique(raw, return_index=True)
    remap = np.argsort(np.argsort(first))
    return remap[raw]


def connected_components(g: TopologyGraph) -> ComponentLabeling:
    """Reachability classes; ``largest`` ties go to the component holding the smallest NodeId."""
    labels = _component_labels(g)
    if g.n == 0:
        return ComponentLabeling({}, [], None)
    sizes = np.bincount(labels)
    # labels are numbered by smallest member, so argmax picks the right tie
    largest = int(np.argmax(sizes))
    return ComponentLabeling(dict(zip(g.nodes, (int(c) for c in labels))),
                             [int(s) for s in sizes], largest)


def largest_component(g: TopologyGraph) -> TopologyGraph:
    if g.n == 0:
        return g
    labels = _component_labels(g)
    sizes = np.bincount(labels)
    if len(sizes) == 1:
        return g
    keep = np.flatnonzero(labels == int(np.argmax(sizes)))
    return _induced_by_index(g, keep)


def bfs_distances(g: TopologyGraph, source: int) -> dict[int, int]:
    s = g.index_of(source)
    dist = {s: 0}
    queue = deque([s])
    indptr, indices = g._indptr, g._indices
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1
        for w in indices[indptr[v]:indptr[v + 1]]:
            w = int(w)
            if w not in dist:
                dist[w] = dv
                queue.append(w)
    ids = g._ids
    return {int(ids[v]): d for v, d in dist.items()}


def _induced_by_index(g: TopologyGraph, keep: np.ndarray) -> TopologyGraph:
    keep = np.unique(keep)
    pos = np.full(g.n, -1, dtype=np.int64)
    pos[keep] = np.arange(len(keep))
    e = g.edge_array()
    if len(e):
        a, b = pos[e[:, 0]], pos[e[:, 1]]
        mask = (a >= 0) & (b >= 0)
        a, b = a[mask], b[mask]
    else:
        a = b = np.zeros(0, dtype=np.int64)
    return _from_index_edges(g._ids[keep], a, b)


def induced_subgraph(g: TopologyGraph, keep: Iterable[int]) -> TopologyGraph:
    """Subgraph on ``keep ∩ nodes(g)``; ids absent from ``g`` are ignored."""
    idx = [g._index[int(a)] for a in keep if int(a) in g._index]
    return _induced_by_index(g, np.array(idx, dtype=np.int64))


# canonical text form -------------------------------------------------------

HEADER = "# astopo edge list"


def format_edge_list(g: TopologyGraph, comments: Iterable[str] = ()) -> str:
    """Canonical serialization: ``u<TAB>v`` with u < v, sorted, '#' header.

    Isolated nodes cannot be expressed as edges, so they are listed in
    ``# isolated<TAB>asn`` header lines which :func:`parse_canonical` reads back.
    """
    lines = [HEADER, f"# n={g.n}\tm={g.m}"]
    lines += [f"# {c}" for c in comments]
    deg = g.degrees()
    lines += [f"# isolated\t{int(a)}" for a in g._ids[deg == 0]]
    # dense order equals numeric order, so edge_array() is already sorted by (u, v)
    ids = g._ids
    lines += [f"{int(ids[i])}\t{int(ids[j])}" for i, j in g.edge_array()]
    return "\n".join(lines) + "\n"


def parse_canonical(text: str) -> TopologyGraph:
    edges, isolated = [], []
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "isolated":
                isolated.append(int(parts[1]))
            continue
        u, v = line.split()
        edges.append((int(u), int(v)))
    return build_graph(edges, isolated)


def write_graph(g: TopologyGraph, path, comments: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_edge_list(g, comments))


def read_graph(path) -> TopologyGraph:
    with open(path, encoding="ascii") as fh:
        return parse_canonical(fh.read())
