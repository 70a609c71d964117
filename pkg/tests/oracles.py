"""Exhaustive-enumeration oracles. Slow and simple; independent of the package kernels."""
import itertools
from collections import defaultdict


def adjacency(g):
    return {v: set(g.neighbors(v)) for v in g.nodes}


def all_shortest_paths(adj, s, t, d):
    """Every simple s-t path with exactly d hops (d = BFS distance), by depth-limited DFS."""
    found = []
    stack = [[s]]
    while stack:
        p = stack.pop()
        if len(p) - 1 == d:
            if p[-1] == t:
                found.append(p)
            continue
        for w in adj[p[-1]]:
            if w not in p:
                stack.append(p + [w])
    return found


def betweenness(g):
    adj = adjacency(g)
    nb = {v: 0.0 for v in g.nodes}
    eb = {e: 0.0 for e in g.edges()}
    dist = {}
    hops = bfs_all(g)
    for s, t in itertools.permutations(g.nodes, 2):
        if t not in hops[s]:
            continue
        paths = all_shortest_paths(adj, s, t, hops[s][t])
        dist[(s, t)] = hops[s][t]
        for p in paths:
            for v in p[1:-1]:
                nb[v] += 1 / len(paths)
            for a, b in zip(p, p[1:]):
                eb[(min(a, b), max(a, b))] += 1 / len(paths)
    return nb, eb, dist


def triangles(g):
    adj = adjacency(g)
    per = defaultdict(int)
    total = 0
    for a, b, c in itertools.combinations(g.nodes, 3):
        if b in adj[a] and c in adj[a] and c in adj[b]:
            total += 1
            for v in (a, b, c):
                per[v] += 1
    return total, per


def connected_triples(g):
    """Paths of length two, counted once per center and unordered end pair."""
    adj = adjacency(g)
    return sum(1 for v in g.nodes for _ in itertools.combinations(adj[v], 2))


def clustering(g):
    adj = adjacency(g)
    _, per = triangles(g)
    local = {v: per[v] / (len(adj[v]) * (len(adj[v]) - 1) / 2) for v in g.nodes if len(adj[v]) >= 2}
    by_k = defaultdict(list)
    for v, c in local.items():
        by_k[len(adj[v])].append(c)
    c_k = {k: sum(cs) / len(cs) for k, cs in by_k.items()}
    n = g.n
    pk = defaultdict(int)
    for v in g.nodes:
        pk[len(adj[v])] += 1
    c_bar = sum(c_k[k] * pk[k] / n for k in c_k)
    tri, _ = triangles(g)
    trip = connected_triples(g)
    return c_k, c_bar, (3 * tri / trip if trip else 0.0)


def coreness(g):
    """Iterative removal of nodes with degree <= k; kappa = largest k a node survives."""
    adj = adjacency(g)
    kappa = {v: -1 for v in g.nodes}
    k = 0
    alive = set(g.nodes)
    while alive:
        changed = True
        while changed:
            changed = False
            for v in list(alive):
                if len(adj[v] & alive) <= k:
                    alive.discard(v)
                    changed = True
        for v in alive:
            kappa[v] = k
        k += 1
    return kappa


def rich_club(g):
    adj = adjacency(g)
    order = sorted(g.nodes, key=lambda v: (-len(adj[v]), v))
    out = {}
    for rho in range(2, g.n + 1):
        top = set(order[:rho])
        links = sum(1 for u, v in itertools.combinations(top, 2) if v in adj[u])
        out[rho] = links / (rho * (rho - 1) / 2)
    return out


def jdd(g):
    adj = adjacency(g)
    out = defaultdict(int)
    for u, v in g.edges():
        a, b = len(adj[u]), len(adj[v])
        out[(min(a, b), max(a, b))] += 1
    return dict(out)


def knn(g):
    adj = adjacency(g)
    by_k = defaultdict(list)
    for v in g.nodes:
        if adj[v]:
            by_k[len(adj[v])].append(sum(len(adj[w]) for w in adj[v]) / len(adj[v]))
    return {k: sum(x) / len(x) for k, x in by_k.items()}


def bfs_all(g):
    adj = adjacency(g)
    out = {}
    for s in g.nodes:
        d = {s: 0}
        frontier = [s]
        while frontier:
            nxt = []
            for v in frontier:
                for w in adj[v]:
                    if w not in d:
                        d[w] = d[v] + 1
                        nxt.append(w)
            frontier = nxt
        out[s] = d
    return out
