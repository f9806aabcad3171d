"""Cold-start seed selection: k-center objective, farthest-first greedy,
coverage-based probabilistic sampling, score/random baselines, and an
exhaustive optimum for small-instance verification."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csgraph

from .errors import ArgumentError, InternalInvariantError, SizeGuardError
from .graph import UNREACHABLE, Graph, bfs_distances, closeness_centrality, degrees, \
    multi_source_bfs, pagerank

BRUTE_FORCE_MAX_N = 20

METHODS = ("kcenter_greedy", "coverage_sampling", "random", "degree",
           "centrality", "pagerank", "brute_force")


@dataclass(frozen=True)
class SeedSelection:
    """An ordered seed set with its k-center objective.

    The objective is always recomputed from scratch over the final set; when
    seeds = V the objective is undefined and reported as 0 with full_cover.
    """

    seeds: tuple
    objective: float
    method: str
    rng_seed: int | None = None
    full_cover: bool = False
    start_policy: str | None = None


def kcenter_objective(g: Graph, seeds) -> float:
    """max over v outside seeds of min hop distance to seeds."""
    seed_set = {int(v) for v in seeds}
    if not seed_set:
        raise ArgumentError("seed set is empty")
    if len(seed_set) >= g.n:
        raise ArgumentError("seed set covers every vertex; objective undefined")
    dist = multi_source_bfs(g, seed_set)
    mask = np.ones(g.n, dtype=bool)
    mask[list(seed_set)] = False
    worst = float(dist[mask].max())
    return worst if worst == UNREACHABLE else int(worst)


def _finish(g: Graph, seeds: list[int], method: str, rng_seed, start_policy=None) -> SeedSelection:
    full = len(seeds) == g.n
    objective = 0 if full else kcenter_objective(g, seeds)
    return SeedSelection(seeds=tuple(seeds), objective=objective, method=method,
                         rng_seed=rng_seed, full_cover=full, start_policy=start_policy)


def _check_k(g: Graph, k: int) -> int:
    k = int(k)
    if k < 1:
        raise ArgumentError(f"k must be >= 1, got {k}")
    if k > g.n:
        raise ArgumentError(f"k = {k} exceeds vertex count {g.n}")
    return k


def _highest_degree(g: Graph) -> int:
    return int(np.argmax(degrees(g)))


def kcenter_greedy(g: Graph, k: int, start="highest_degree",
                   rng_seed: int | None = None) -> SeedSelection:
    """Farthest-first traversal: each step adds the vertex farthest from the
    current seed set (ties to the lowest id, unreachable before any finite).

    Distances are relaxed incrementally with one BFS per new seed, so the
    whole selection costs k BFS sweeps. `start` is "highest_degree", "random"
    (needs rng_seed), or an explicit vertex id.
    """
    k = _check_k(g, k)
    if start == "highest_degree":
        first, policy = _highest_degree(g), "highest_degree"
    elif start == "random":
        if rng_seed is None:
            raise ArgumentError("start='random' requires rng_seed")
        rng = np.random.Generator(np.random.PCG64(rng_seed))
        first, policy = int(rng.integers(g.n)), "random"
    elif isinstance(start, (int, np.integer)) and not isinstance(start, bool):
        first = int(start)
        if not 0 <= first < g.n:
            raise ArgumentError(f"start vertex {first} out of range 0..{g.n - 1}")
        policy = f"vertex:{g.tokens[first]}"
    else:
        raise ArgumentError(f"unsupported start policy {start!r}")
    seeds = [first]
    dist = bfs_distances(g, first)
    for _ in range(k - 1):
        nxt = int(np.argmax(dist))
        seeds.append(nxt)
        dist = np.minimum(dist, bfs_distances(g, nxt))
    return _finish(g, seeds, "kcenter_greedy", rng_seed, policy)


def coverage_sampling(g: Graph, k: int, rng_seed: int) -> SeedSelection:
    """Probabilistic coverage sampling: start at the highest-degree vertex,
    then draw each next seed with probability proportional to its current
    distance to the seed set (unreachable weighted as n)."""
    k = _check_k(g, k)
    if rng_seed is None:
        raise ArgumentError("coverage_sampling requires rng_seed")
    rng = np.random.Generator(np.random.PCG64(rng_seed))
    seeds = [_highest_degree(g)]
    dist = bfs_distances(g, seeds[0])
    for _ in range(k - 1):
        weights = np.where(np.isfinite(dist), dist, float(g.n))
        weights[seeds] = 0.0
        total = float(weights.sum())
        if total <= 0.0:
            raise InternalInvariantError("all candidate weights are zero")
        nxt = int(rng.choice(g.n, p=weights / total))
        seeds.append(nxt)
        dist = np.minimum(dist, bfs_distances(g, nxt))
    return _finish(g, seeds, "coverage_sampling", rng_seed)


def baseline_select(g: Graph, k: int, method: str,
                    rng_seed: int | None = None) -> SeedSelection:
    """Baselines: uniform random (seeded) or top-k by degree, closeness
    centrality, or PageRank score (ties to the lowest id)."""
    k = _check_k(g, k)
    if method == "random":
        if rng_seed is None:
            raise ArgumentError("random baseline requires rng_seed")
        rng = np.random.Generator(np.random.PCG64(rng_seed))
        seeds = [int(v) for v in rng.choice(g.n, size=k, replace=False)]
        return _finish(g, seeds, "random", rng_seed)
    if method == "degree":
        scores = degrees(g).astype(np.float64)
    elif method == "centrality":
        scores = closeness_centrality(g)
    elif method == "pagerank":
        scores = pagerank(g).scores
    else:
        raise ArgumentError(f"unknown baseline method {method!r}")
    order = np.lexsort((np.arange(g.n), -scores))
    seeds = [int(v) for v in order[:k]]
    return _finish(g, seeds, method, rng_seed)


def brute_force_kcenter(g: Graph, k: int) -> SeedSelection:
    """Exhaustive optimum over all C(n,k) seed sets (n <= 20 guard); ties go
    to the lexicographically smallest set."""
    if g.n > BRUTE_FORCE_MAX_N:
        raise SizeGuardError(
            f"brute force limited to n <= {BRUTE_FORCE_MAX_N}, got n = {g.n}")
    k = _check_k(g, k)
    if k == g.n:
        return _finish(g, list(range(g.n)), "brute_force", None)
    dist = csgraph.dijkstra(g.csr, directed=True, unweighted=True)
    best: tuple | None = None
    best_obj = np.inf
    for combo in itertools.combinations(range(g.n), k):
        mask = np.ones(g.n, dtype=bool)
        mask[list(combo)] = False
        obj = float(dist[np.ix_(mask, list(combo))].min(axis=1).max())
        if obj < best_obj:
            best, best_obj = combo, obj
    objective = best_obj if best_obj == UNREACHABLE else int(best_obj)
    return SeedSelection(seeds=tuple(best), objective=objective,
                         method="brute_force", rng_seed=None)
