from __future__ import annotations

import numpy as np
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite", max_examples=30, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("suite")


def id_graph(n, edges):
    """Graph over dense ids 0..n-1 ("v{i}" tokens) from (u, v) id pairs;
    leading self-loop pairs register every vertex so ids match positions."""
    from topoaware import build_graph

    pairs = [(f"v{i}", f"v{i}") for i in range(n)]
    pairs.extend((f"v{u}", f"v{v}") for u, v in edges)
    return build_graph(pairs)


def er_graph(rng, n, p, connected=False):
    """Seeded random graph plus its id edge list (for the oracles)."""
    edges = set()
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    if connected:
        perm = [int(x) for x in rng.permutation(n)]
        for a, b in zip(perm, perm[1:]):
            edges.add((a, b) if a < b else (b, a))
    edges = sorted(edges)
    return id_graph(n, edges), edges
