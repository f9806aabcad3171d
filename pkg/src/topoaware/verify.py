"""Built-in self-checks: each check runs the library against an independent
in-module reference route and reports pass/fail with a counterexample dump.

A fault can be injected to corrupt the candidate side of one check, proving
the comparison actually bites.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import ArgumentError, SizeGuardError
from .graph import Graph, bfs_distances, build_graph
from .metrics import estimate_distortion
from .sampling import brute_force_kcenter, kcenter_greedy

CHECK_NAMES = ("distance", "greedy", "distortion")
MAX_GRAPHS = 500
MAX_N = 60


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    cases: int
    detail: dict = field(default_factory=dict)


def _reference_bfs(adj, source):
    """Deque BFS over neighbor lists; inf for unreachable."""
    dist = [np.inf] * len(adj)
    dist[source] = 0.0
    q = deque([source])
    while q:
        u = q.popleft()
        for v in adj[u]:
            if dist[v] == np.inf:
                dist[v] = dist[u] + 1.0
                q.append(v)
    return np.asarray(dist)


def _random_graph(rng, n, p, connected=False) -> Graph:
    pairs = [(f"v{i}", f"v{i}") for i in range(n)]
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    edges = {(int(u), int(v)) for u, v in zip(iu[keep], ju[keep])}
    if connected:
        perm = rng.permutation(n)
        for a, b in zip(perm, perm[1:]):
            u, v = (int(a), int(b)) if a < b else (int(b), int(a))
            edges.add((u, v))
    pairs.extend((f"v{u}", f"v{v}") for u, v in sorted(edges))
    return build_graph(pairs)


def _adjacency_lists(g: Graph):
    return [list(map(int, g.neighbors_of(v))) for v in range(g.n)]


def check_distance(rng, graphs: int, n_max: int, inject: bool = False) -> CheckResult:
    """bfs_distances against the in-module deque BFS."""
    for case in range(graphs):
        n = int(rng.integers(2, n_max + 1))
        g = _random_graph(rng, n, p=float(rng.uniform(0.05, 0.5)))
        adj = _adjacency_lists(g)
        source = int(rng.integers(n))
        got = bfs_distances(g, source).copy()
        if inject:
            got[source] += 1.0
        want = _reference_bfs(adj, source)
        if not np.array_equal(got, want):
            bad = int(np.flatnonzero(got != want)[0])
            return CheckResult("distance", False, case + 1, {
                "case": case, "n": n, "source": source, "vertex": bad,
                "got": float(got[bad]), "want": float(want[bad])})
    return CheckResult("distance", True, graphs)


def check_greedy(rng, graphs: int, n_max: int, inject: bool = False) -> CheckResult:
    """Farthest-first objective within 2x the exhaustive optimum."""
    n_max = min(n_max, 12)
    for case in range(graphs):
        n = int(rng.integers(4, n_max + 1))
        g = _random_graph(rng, n, p=float(rng.uniform(0.1, 0.4)), connected=True)
        k = int(rng.integers(1, 4))
        greedy = kcenter_greedy(g, k).objective
        if inject:
            greedy = greedy * 3
        best = brute_force_kcenter(g, k).objective
        if greedy > 2 * best:
            return CheckResult("greedy", False, case + 1, {
                "case": case, "n": n, "k": k,
                "greedy_objective": float(greedy), "optimal_objective": float(best)})
    return CheckResult("greedy", True, graphs)


def check_distortion(rng, samples: int, inject: bool = False) -> CheckResult:
    """(r, alpha) certify the sandwich r*d <= d' <= alpha*r*d on every pair,
    and alpha is invariant under scaling of the embedding side."""
    for case in range(samples):
        count = int(rng.integers(1, 40))
        gd = rng.integers(1, 8, size=count).astype(float)
        ed = rng.uniform(0.05, 5.0, size=count) * gd
        est = estimate_distortion(gd, ed)
        r = est.r * 1.5 if inject else est.r
        lo, hi = r * gd, est.alpha * r * gd
        ok = np.all(lo <= ed * (1 + 1e-12)) and np.all(ed <= hi * (1 + 1e-12))
        scaled = estimate_distortion(gd, ed * 3.0)
        ok = ok and abs(scaled.alpha - est.alpha) <= 1e-12 * max(1.0, est.alpha)
        if not ok:
            return CheckResult("distortion", False, case + 1, {
                "case": case, "pairs": count, "r": est.r, "alpha": est.alpha})
    return CheckResult("distortion", True, samples)


def run_verify(rng_seed: int, graphs: int = 50, n_max: int = 30,
               inject_fault: str | None = None) -> list[CheckResult]:
    if graphs < 1 or graphs > MAX_GRAPHS:
        raise SizeGuardError(f"graphs must be within 1..{MAX_GRAPHS}, got {graphs}")
    if n_max < 4 or n_max > MAX_N:
        raise SizeGuardError(f"n-max must be within 4..{MAX_N}, got {n_max}")
    if inject_fault is not None and inject_fault not in CHECK_NAMES:
        raise ArgumentError(
            f"inject-fault must be one of {CHECK_NAMES}, got {inject_fault!r}")
    rng = np.random.Generator(np.random.PCG64(rng_seed))
    return [
        check_distance(rng, graphs, n_max, inject=inject_fault == "distance"),
        check_greedy(rng, graphs, n_max, inject=inject_fault == "greedy"),
        check_distortion(rng, graphs, inject=inject_fault == "distortion"),
    ]
