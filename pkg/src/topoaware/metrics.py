"""Structural group distances, hop-based subgroup partitioning, and
distortion estimation between the graph metric and an embedding metric."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, BoundsError, CoverageError, DegenerateEmbeddingError
from .graph import UNREACHABLE, Graph, multi_source_bfs

DEFAULT_MAX_HOP = 5


@dataclass(frozen=True)
class SubgroupPartition:
    """Hop-distance partition of V relative to a seed set.

    groups[k-1] = (k, vertices at hop distance exactly k), for k = 1..max_hop.
    overflow holds finite distances beyond max_hop; unreachable the rest.
    """

    seed_set: frozenset
    groups: tuple
    overflow: frozenset
    unreachable: frozenset
    max_hop: int

    def group(self, k: int) -> frozenset:
        if not 1 <= k <= self.max_hop:
            raise ArgumentError(f"hop {k} outside 1..{self.max_hop}")
        return self.groups[k - 1][1]


@dataclass(frozen=True)
class DistortionEstimate:
    """Tightest (r, alpha) certifying r*d <= d' <= alpha*r*d on the sample."""

    r: float
    alpha: float
    pair_count: int
    min_ratio: float
    max_ratio: float
    excluded_pairs: int


@dataclass(frozen=True)
class EmbeddingTable:
    """Per-vertex real vectors; rows outside `coverage` are undefined (NaN)."""

    dim: int
    vectors: np.ndarray
    coverage: frozenset

    def __post_init__(self):
        if self.dim < 1:
            raise ArgumentError(f"dim must be positive, got {self.dim}")
        if self.vectors.ndim != 2 or self.vectors.shape[1] != self.dim:
            raise ArgumentError(
                f"vectors must be (rows, {self.dim}), got {self.vectors.shape}")
        if self.coverage:
            ids = np.fromiter(self.coverage, dtype=np.int64)
            if ids.min() < 0 or ids.max() >= self.vectors.shape[0]:
                raise BoundsError("coverage id outside the vector table")
            if not np.all(np.isfinite(self.vectors[ids])):
                raise ArgumentError("covered embedding vectors must be finite")

    def vector(self, v: int) -> np.ndarray:
        if v not in self.coverage:
            raise CoverageError("vertex has no embedding", missing=(v,))
        return self.vectors[v]


def full_embedding_table(vectors: np.ndarray) -> EmbeddingTable:
    vectors = np.asarray(vectors, dtype=np.float64)
    return EmbeddingTable(dim=vectors.shape[1], vectors=vectors,
                          coverage=frozenset(range(vectors.shape[0])))


def group_distance_point(g: Graph, v: int, S) -> float:
    """D_s(v, S) = min hop distance from v to any member of S."""
    if not 0 <= int(v) < g.n:
        raise BoundsError(f"vertex {v} out of range 0..{g.n - 1}")
    d = multi_source_bfs(g, S)[int(v)]
    return float(d) if d == UNREACHABLE else int(d)


def group_distance(g: Graph, S1, S2) -> float:
    """Directed max-min distance D_s(S1, S2); asymmetric."""
    s1 = sorted({int(v) for v in S1})
    if not s1:
        raise ArgumentError("first vertex set is empty")
    if s1[0] < 0 or s1[-1] >= g.n:
        raise BoundsError(f"vertex out of range 0..{g.n - 1}")
    d = multi_source_bfs(g, S2)[s1]
    worst = float(d.max())
    return worst if worst == UNREACHABLE else int(worst)


def partition_by_distance(g: Graph, V0, max_hop: int = DEFAULT_MAX_HOP) -> SubgroupPartition:
    """Split V minus V0 into hop groups V_k (k = 1..max_hop), an overflow
    bucket (finite distance > max_hop), and the unreachable set."""
    if max_hop < 1:
        raise ArgumentError(f"max_hop must be positive, got {max_hop}")
    seeds = frozenset(int(v) for v in V0)
    dist = multi_source_bfs(g, seeds)
    groups = []
    for k in range(1, max_hop + 1):
        members = np.flatnonzero(dist == k)
        groups.append((k, frozenset(int(v) for v in members)))
    finite = np.isfinite(dist)
    overflow = frozenset(int(v) for v in np.flatnonzero(finite & (dist > max_hop)))
    unreachable = frozenset(int(v) for v in np.flatnonzero(~finite))
    return SubgroupPartition(seed_set=seeds, groups=tuple(groups),
                             overflow=overflow, unreachable=unreachable,
                             max_hop=max_hop)


def estimate_distortion(graph_dists, embed_dists,
                        exclude_zero_ratios: bool = False) -> DistortionEstimate:
    """Tightest scaling factor r = min(d'/d) and distortion alpha = max/min
    over the paired sample.

    Zero embedding distance at positive graph distance violates the r > 0
    requirement: a hard error unless exclude_zero_ratios, which skips such
    pairs and counts them in excluded_pairs.
    """
    gd = np.asarray(graph_dists, dtype=np.float64)
    ed = np.asarray(embed_dists, dtype=np.float64)
    if gd.ndim != 1 or ed.ndim != 1 or len(gd) != len(ed):
        raise ArgumentError("graph and embedding distances must be equal-length 1-D sequences")
    if len(gd) == 0:
        raise ArgumentError("no distance pairs supplied")
    if not np.all(np.isfinite(gd)) or np.any(gd <= 0):
        raise ArgumentError("graph distances must be finite and strictly positive")
    if not np.all(np.isfinite(ed)) or np.any(ed < 0):
        raise ArgumentError("embedding distances must be finite and non-negative")
    ratios = ed / gd
    zero = np.flatnonzero(ratios == 0.0)
    excluded = 0
    if len(zero):
        if not exclude_zero_ratios:
            i = int(zero[0])
            raise DegenerateEmbeddingError(
                f"pair {i} has embedding distance 0 at graph distance {gd[i]:g}; "
                "a positive scaling factor cannot exist")
        keep = ratios > 0.0
        excluded = int((~keep).sum())
        ratios = ratios[keep]
        if len(ratios) == 0:
            raise ArgumentError("all pairs were excluded as degenerate")
    min_ratio = float(ratios.min())
    max_ratio = float(ratios.max())
    return DistortionEstimate(r=min_ratio, alpha=max_ratio / min_ratio,
                              pair_count=int(len(ratios)), min_ratio=min_ratio,
                              max_ratio=max_ratio, excluded_pairs=excluded)


def _require_coverage(g: Graph, emb: EmbeddingTable, needed) -> None:
    missing = sorted(v for v in needed if v not in emb.coverage)
    if missing:
        raise CoverageError("vertices without embeddings", missing=tuple(missing))


def _point_to_set(emb: EmbeddingTable, vs: np.ndarray, seed_ids: np.ndarray,
                  mode: str) -> np.ndarray:
    """Euclidean point-to-set distances from each v to the seed vectors."""
    if mode not in ("min", "mean"):
        raise ArgumentError(f"point_to_set must be 'min' or 'mean', got {mode!r}")
    seed_vecs = emb.vectors[seed_ids]
    out = np.empty(len(vs))
    for i, v in enumerate(vs):
        d = np.linalg.norm(seed_vecs - emb.vectors[v], axis=1)
        out[i] = d.min() if mode == "min" else d.mean()
    return out


@dataclass(frozen=True)
class ProfileRow:
    hop: int
    mean_distance: float
    std: float
    count: int


def hop_embedding_profile(g: Graph, V0, emb: EmbeddingTable,
                          max_hop: int = DEFAULT_MAX_HOP,
                          point_to_set: str = "min") -> list[ProfileRow]:
    """Per-hop mean and population std of point-to-set embedding distance.

    Hops with no vertices are omitted. Every seed and every vertex within
    max_hop must be embedded.
    """
    part = partition_by_distance(g, V0, max_hop)
    seed_ids = np.asarray(sorted(part.seed_set), dtype=np.int64)
    needed = set(part.seed_set)
    for _, members in part.groups:
        needed |= members
    _require_coverage(g, emb, needed)
    rows = []
    for k, members in part.groups:
        if not members:
            continue
        vs = np.asarray(sorted(members), dtype=np.int64)
        vals = _point_to_set(emb, vs, seed_ids, point_to_set)
        rows.append(ProfileRow(hop=k, mean_distance=float(vals.mean()),
                               std=float(vals.std()), count=len(vs)))
    return rows


def paired_distances_for_distortion(g: Graph, V0, emb: EmbeddingTable,
                                    max_hop: int = DEFAULT_MAX_HOP,
                                    point_to_set: str = "min"):
    """One (graph distance, embedding distance) pair per vertex with
    1 <= D_s(v, V0) <= max_hop, in vertex-id order."""
    part = partition_by_distance(g, V0, max_hop)
    seed_ids = np.asarray(sorted(part.seed_set), dtype=np.int64)
    needed = set(part.seed_set)
    for _, members in part.groups:
        needed |= members
    _require_coverage(g, emb, needed)
    vs = []
    gd = []
    for k, members in part.groups:
        for v in sorted(members):
            vs.append(v)
            gd.append(float(k))
    order = np.argsort(np.asarray(vs, dtype=np.int64), kind="stable")
    vs = np.asarray(vs, dtype=np.int64)[order]
    gd = np.asarray(gd)[order]
    ed = _point_to_set(emb, vs, seed_ids, point_to_set) if len(vs) else np.empty(0)
    return gd, ed


def sampled_pair_distances(g: Graph, emb: EmbeddingTable, rng_seed: int,
                           max_pairs: int = 2000):
    """Diagnostic all-pairs mode: a seeded sample of distinct covered vertex
    pairs with finite graph distance, capped at max_pairs."""
    if max_pairs < 1:
        raise ArgumentError(f"max_pairs must be positive, got {max_pairs}")
    covered = np.asarray(sorted(emb.coverage), dtype=np.int64)
    if len(covered) < 2:
        raise ArgumentError("need at least two covered vertices")
    rng = np.random.Generator(np.random.PCG64(rng_seed))
    gd: list[float] = []
    ed: list[float] = []
    attempts = 0
    while len(gd) < max_pairs and attempts < 20 * max_pairs:
        u = covered[int(rng.integers(len(covered)))]
        dist_u = multi_source_bfs(g, [int(u)])
        take = min(max_pairs - len(gd), 32)
        for _ in range(take):
            attempts += 1
            v = covered[int(rng.integers(len(covered)))]
            if v == u or not np.isfinite(dist_u[v]):
                continue
            gd.append(float(dist_u[v]))
            ed.append(float(np.linalg.norm(emb.vectors[u] - emb.vectors[v])))
    return np.asarray(gd), np.asarray(ed)
