"""Numba kernels over CSR arrays (indptr, indices).

Every kernel visits sources and neighbors in a fixed order, so results are
reproducible bit for bit.
"""
import numpy as np
from numba import njit
from numba import types
from numba.typed import Dict


@njit(cache=True)
def all_pairs_bfs(indptr, indices):
    """BFS from every node of a connected graph.

    Returns (histogram of hop counts over ordered pairs, eccentricity per
    node, sum of distances per source).
    """
    n = len(indptr) - 1
    hist = np.zeros(n + 1, dtype=np.int64)
    ecc = np.zeros(n, dtype=np.int64)
    dsum = np.zeros(n, dtype=np.int64)
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        dist[:] = -1
        dist[s] = 0
        queue[0] = s
        head, tail = 0, 1
        while head < tail:
            v = queue[head]
            head += 1
            dv = dist[v]
            hist[dv] += 1
            dsum[s] += dv
            if dv > ecc[s]:
                ecc[s] = dv
            for p in range(indptr[v], indptr[v + 1]):
                w = indices[p]
                if dist[w] < 0:
                    dist[w] = dv + 1
                    queue[tail] = w
                    tail += 1
    hist[0] = 0
    return hist, ecc, dsum


@njit(cache=True)
def brandes(indptr, indices, edge_of_slot, m):
    """Node and edge betweenness by single-source accumulation, ordered pairs.

    ``edge_of_slot[p]`` maps CSR slot p to its undirected edge id.
    """
    n = len(indptr) - 1
    cb = np.zeros(n, dtype=np.float64)
    eb = np.zeros(m, dtype=np.float64)
    sigma = np.zeros(n, dtype=np.float64)
    delta = np.zeros(n, dtype=np.float64)
    dist = np.full(n, -1, dtype=np.int64)
    order = np.empty(n, dtype=np.int64)
    for s in range(n):
        sigma[:] = 0.0
        delta[:] = 0.0
        dist[:] = -1
        sigma[s] = 1.0
        dist[s] = 0
        order[0] = s
        head, tail = 0, 1
        while head < tail:
            v = order[head]
            head += 1
            for p in range(indptr[v], indptr[v + 1]):
                w = indices[p]
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    order[tail] = w
                    tail += 1
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
        # predecessors of w are neighbors v with dist[v] == dist[w] - 1
        for idx in range(tail - 1, 0, -1):
            w = order[idx]
            coeff = (1.0 + delta[w]) / sigma[w]
            for p in range(indptr[w], indptr[w + 1]):
                v = indices[p]
                if dist[v] == dist[w] - 1:
                    c = sigma[v] * coeff
                    eb[edge_of_slot[p]] += c
                    delta[v] += c
            cb[w] += delta[w]
    return cb, eb


@njit(cache=True)
def triangles_per_node(indptr, indices):
    n = len(indptr) - 1
    tri = np.zeros(n, dtype=np.int64)
    for u in range(n):
        for p in range(indptr[u], indptr[u + 1]):
            v = indices[p]
            if v <= u:
                continue
            # merge-intersect sorted neighbor rows, count w > v
            a, b = indptr[u], indptr[v]
            ae, be = indptr[u + 1], indptr[v + 1]
            while a < ae and b < be:
                x, y = indices[a], indices[b]
                if x == y:
                    if x > v:
                        tri[u] += 1
                        tri[v] += 1
                        tri[x] += 1
                    a += 1
                    b += 1
                elif x < y:
                    a += 1
                else:
                    b += 1
    return tri


def new_edge_table():
    return Dict.empty(key_type=types.int64, value_type=types.int64)


@njit(cache=True)
def fill_edge_table(table, src, dst, n):
    for e in range(len(src)):
        u, v = src[e], dst[e]
        if u > v:
            u, v = v, u
        table[u * n + v] = e


@njit(cache=True)
def swap_chunk(src, dst, deg, table, n, pick1, pick2, flip1, flip2, match_degrees, target, accepted):
    """Run double-edge-swap proposals from pre-drawn randomness.

    Stops at ``target`` accepted swaps. Returns (accepted, proposals used).
    """
    used = 0
    for t in range(len(pick1)):
        if accepted >= target:
            break
        used += 1
        i = pick1[t]
        j = pick2[t]
        if i == j:
            continue
        u, v = src[i], dst[i]
        if flip1[t]:
            u, v = v, u
        x, y = src[j], dst[j]
        if flip2[t]:
            x, y = y, x
        # (u,v),(x,y) -> (u,y),(x,v)
        if u == y or x == v:
            continue
        if match_degrees and deg[v] != deg[y]:
            continue
        a, b = (u, y) if u < y else (y, u)
        c, d = (x, v) if x < v else (v, x)
        if a * n + b in table or c * n + d in table:
            continue
        p, q = (u, v) if u < v else (v, u)
        r, s = (x, y) if x < y else (y, x)
        del table[p * n + q]
        del table[r * n + s]
        table[a * n + b] = i
        table[c * n + d] = j
        src[i], dst[i] = u, y
        src[j], dst[j] = x, v
        accepted += 1
    return accepted, used
