"""Brute-force reference implementations the test suite checks the library against.

Everything here is written directly from the definitions with the dumbest
correct algorithm available (dense matrices, nested loops, exhaustive
enumeration). Nothing imports topoaware.
"""
from __future__ import annotations

import itertools
import math
from collections import deque

import numpy as np

INF = math.inf


# ---------------------------------------------------------------------------
# graph construction references


def set_based_graph(edge_tokens):
    """Reference builder: first-seen token order, set-of-sets adjacency.

    Returns (tokens, edges) with tokens a list in first-seen order and edges a
    set of frozenset token pairs (self-loops and duplicates dropped).
    """
    tokens = []
    seen = {}
    edges = set()
    for a, b in edge_tokens:
        for t in (a, b):
            if t not in seen:
                seen[t] = len(tokens)
                tokens.append(t)
        if a != b:
            edges.add(frozenset((a, b)))
    return tokens, edges


def adjacency_sets(n, edges):
    """Neighbor sets from a collection of (u, v) id pairs."""
    adj = [set() for _ in range(n)]
    for u, v in edges:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    return adj


# ---------------------------------------------------------------------------
# distances


def bfs_levels(adj, source):
    """Level-synchronous deque BFS over neighbor sets. Returns float list, INF
    for unreachable."""
    n = len(adj)
    dist = [INF] * n
    dist[source] = 0.0
    q = deque([source])
    while q:
        u = q.popleft()
        for v in adj[u]:
            if dist[v] == INF:
                dist[v] = dist[u] + 1.0
                q.append(v)
    return dist


def floyd_warshall(n, edges):
    """Dense all-pairs hop distances, INF across components."""
    d = np.full((n, n), INF)
    np.fill_diagonal(d, 0.0)
    for u, v in edges:
        if u != v:
            d[u, v] = 1.0
            d[v, u] = 1.0
    for k in range(n):
        d = np.minimum(d, d[:, k : k + 1] + d[k : k + 1, :])
    return d


def point_group_distance(dist_matrix, v, group):
    return min(dist_matrix[v, u] for u in group)


def group_distance(dist_matrix, s1, s2):
    """Directed max-min distance via the definitional double loop."""
    return max(point_group_distance(dist_matrix, v, s2) for v in s1)


def kcenter_objective(dist_matrix, seeds):
    n = dist_matrix.shape[0]
    rest = [v for v in range(n) if v not in set(seeds)]
    return group_distance(dist_matrix, rest, seeds)


def aggregate_distance(dist_matrix, seeds, aggregator):
    """Mean/max over finite complement distances plus excluded count."""
    n = dist_matrix.shape[0]
    seeds = set(seeds)
    vals = [point_group_distance(dist_matrix, v, seeds) for v in range(n) if v not in seeds]
    finite = [x for x in vals if x != INF]
    excluded = len(vals) - len(finite)
    if not finite:
        return None, excluded
    agg = max(finite) if aggregator == "max" else sum(finite) / len(finite)
    return agg, excluded


def brute_kcenter(dist_matrix, k):
    """Exhaustive minimum over all C(n,k) seed sets; lexicographically smallest
    minimizer."""
    n = dist_matrix.shape[0]
    best_set, best_obj = None, None
    for combo in itertools.combinations(range(n), k):
        obj = kcenter_objective(dist_matrix, combo)
        if best_obj is None or obj < best_obj:
            best_set, best_obj = combo, obj
    return best_set, best_obj


# ---------------------------------------------------------------------------
# centrality


def dense_pagerank(n, edges, damping, tol, max_iter):
    """Dense power iteration; undirected edges as two arcs, dangling mass
    spread uniformly."""
    A = np.zeros((n, n))
    for u, v in edges:
        if u != v:
            A[u, v] = 1.0
            A[v, u] = 1.0
    deg = A.sum(axis=1)
    x = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        contrib = np.zeros(n)
        for u in range(n):
            if deg[u] > 0:
                contrib += x[u] * A[u] / deg[u]
            else:
                contrib += x[u] / n
        nxt = damping * contrib + (1.0 - damping) / n
        if np.abs(nxt - x).sum() < tol:
            return nxt
        x = nxt
    return x


def closeness_from_allpairs(dist_matrix):
    """Wasserman-Faust closeness: (rc/sum) * (rc/(n-1)); isolated vertex 0."""
    n = dist_matrix.shape[0]
    out = np.zeros(n)
    for v in range(n):
        finite = [dist_matrix[v, u] for u in range(n) if u != v and dist_matrix[v, u] != INF]
        rc = len(finite)
        if rc == 0 or n == 1:
            out[v] = 0.0
        else:
            out[v] = (rc / sum(finite)) * (rc / (n - 1))
    return out


# ---------------------------------------------------------------------------
# embedding / propagation


def dense_propagate(n, edges, X, layers):
    """(D+I)^{-1} (A+I) applied `layers` times to the feature rows."""
    A = np.zeros((n, n))
    for u, v in edges:
        if u != v:
            A[u, v] = 1.0
            A[v, u] = 1.0
    M = A + np.eye(n)
    M = M / M.sum(axis=1, keepdims=True)
    H = np.asarray(X, dtype=float)
    for _ in range(layers):
        H = M @ H
    return H


def profile_rows(dist_to_seeds, vectors, seed_ids, max_hop, point_to_set):
    """Nested-loop hop profile: (hop, mean, population std, count) rows with
    empty hops omitted."""
    seed_ids = sorted(seed_ids)
    rows = []
    for k in range(1, max_hop + 1):
        members = [v for v in range(len(dist_to_seeds)) if dist_to_seeds[v] == k]
        if not members:
            continue
        vals = []
        for v in members:
            ds = [float(np.linalg.norm(vectors[v] - vectors[s])) for s in seed_ids]
            vals.append(min(ds) if point_to_set == "min" else sum(ds) / len(ds))
        arr = np.asarray(vals)
        rows.append((k, float(arr.mean()), float(arr.std()), len(members)))
    return rows


# ---------------------------------------------------------------------------
# statistics


def spearman_rank(xs, ys):
    """Average-rank Spearman via Pearson on ranks. Returns nan when either
    side is constant."""

    def avg_ranks(vals):
        order = sorted(range(len(vals)), key=lambda i: vals[i])
        ranks = [0.0] * len(vals)
        i = 0
        while i < len(order):
            j = i
            while j + 1 < len(order) and vals[order[j + 1]] == vals[order[i]]:
                j += 1
            r = (i + j) / 2.0 + 1.0
            for t in range(i, j + 1):
                ranks[order[t]] = r
            i = j + 1
        return ranks

    rx = np.asarray(avg_ranks(list(xs)))
    ry = np.asarray(avg_ranks(list(ys)))
    if np.all(rx == rx[0]) or np.all(ry == ry[0]):
        return float("nan")
    rx = rx - rx.mean()
    ry = ry - ry.mean()
    return float((rx * ry).sum() / math.sqrt((rx * rx).sum() * (ry * ry).sum()))


def ordering_violations(hop_risks):
    """All pairs (i, j) with hop_i > hop_j but risk_i < risk_j."""
    out = []
    for (hi, ri), (hj, rj) in itertools.permutations(hop_risks, 2):
        if hi > hj and ri < rj:
            out.append((hi, hj))
    return sorted(out)


# ---------------------------------------------------------------------------
# random graph helpers for the suite


def random_edge_ids(n, p, rng):
    """Erdos-Renyi style id pairs."""
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v))
    return edges


def random_connected_edges(n, p, rng):
    """ER pairs plus a random spanning chain so the graph is connected."""
    edges = set(random_edge_ids(n, p, rng))
    perm = list(rng.permutation(n))
    for a, b in zip(perm, perm[1:]):
        u, v = (a, b) if a < b else (b, a)
        edges.add((int(u), int(v)))
    return sorted(edges)
