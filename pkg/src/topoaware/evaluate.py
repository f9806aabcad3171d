"""Empirical risk, per-subgroup accuracy and discrepancy, distortion-based
bound drivers, risk-ordering checks, and trial grouping."""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import ArgumentError, CoverageError
from .graph import UNREACHABLE, Graph, multi_source_bfs
from .metrics import DistortionEstimate, SubgroupPartition

LOSSES = ("zero_one", "absolute", "squared")


@dataclass(frozen=True)
class PredictionTable:
    """Predicted and true targets over the same covered vertex set."""

    coverage: frozenset
    predicted: dict
    truth: dict
    mode: str


def make_prediction_table(predicted, truth, mode: str) -> PredictionTable:
    if mode not in ("classification", "regression"):
        raise ArgumentError(f"mode must be classification or regression, got {mode!r}")
    pk, tk = set(predicted), set(truth)
    if pk != tk:
        diff = sorted(pk.symmetric_difference(tk))
        raise ArgumentError(
            f"predicted and truth must cover the same vertices; {len(diff)} differ")
    if mode == "classification":
        for m in (predicted, truth):
            for v, y in m.items():
                if not isinstance(y, (int, np.integer)) or isinstance(y, bool) or y < 0:
                    raise ArgumentError(
                        f"classification labels must be non-negative ints, got {y!r} at {v}")
    return PredictionTable(coverage=frozenset(int(v) for v in pk),
                           predicted={int(v): predicted[v] for v in pk},
                           truth={int(v): truth[v] for v in tk}, mode=mode)


def empirical_risk(preds: PredictionTable, subset, loss: str) -> float:
    """Mean loss over the subset; zero_one only in classification mode."""
    if loss not in LOSSES:
        raise ArgumentError(f"loss must be one of {LOSSES}, got {loss!r}")
    ids = sorted({int(v) for v in subset})
    if not ids:
        raise ArgumentError("subset is empty")
    missing = [v for v in ids if v not in preds.coverage]
    if missing:
        raise CoverageError("vertices without predictions", missing=tuple(missing))
    if loss == "zero_one":
        if preds.mode != "classification":
            raise ArgumentError("zero_one loss requires classification mode")
        errs = [1.0 if preds.predicted[v] != preds.truth[v] else 0.0 for v in ids]
        return float(np.mean(errs))
    diffs = np.asarray([float(preds.predicted[v]) - float(preds.truth[v]) for v in ids])
    return float(np.mean(np.abs(diffs) if loss == "absolute" else diffs ** 2))


@dataclass(frozen=True)
class SubgroupReport:
    """Per-hop accuracies R_k, the training accuracy R_0, and the maximum
    discrepancy MD = max |R_i - R_j| over reported hops."""

    per_hop: tuple
    train_accuracy: float
    max_discrepancy: float
    max_hop: int


def subgroup_accuracy(partition: SubgroupPartition, preds: PredictionTable) -> SubgroupReport:
    """R_k = 1 - zero-one risk on each non-empty hop group; hop 0 is the seed
    set. Predictions must cover the seeds and every group within max_hop."""
    if preds.mode != "classification":
        raise ArgumentError("subgroup accuracy requires classification predictions")
    needed = set(partition.seed_set)
    for _, members in partition.groups:
        needed |= members
    missing = sorted(v for v in needed if v not in preds.coverage)
    if missing:
        raise CoverageError("vertices without predictions", missing=tuple(missing))
    train_acc = 1.0 - empirical_risk(preds, partition.seed_set, "zero_one")
    rows = []
    for k, members in partition.groups:
        if not members:
            continue
        acc = 1.0 - empirical_risk(preds, members, "zero_one")
        rows.append((k, acc, len(members)))
    accs = [acc for _, acc, _ in rows]
    md = float(max(accs) - min(accs)) if len(accs) >= 2 else 0.0
    return SubgroupReport(per_hop=tuple(rows), train_accuracy=float(train_acc),
                          max_discrepancy=md, max_hop=partition.max_hop)


@dataclass(frozen=True)
class BoundReport:
    """Constant-free driver alpha * D_s of the risk bound
    R(V_i) <= R(V_0) + O(alpha * D_s(V_i, V_0))."""

    train_risk: float
    alpha: float
    group_distance: float
    bound_driver: float

    def bound_value(self, c: float = 1.0) -> float:
        return self.train_risk + c * self.bound_driver


def bound_report(train_risk: float, distortion: DistortionEstimate,
                 Dsi) -> BoundReport:
    if Dsi == UNREACHABLE or not np.isfinite(float(Dsi)):
        raise ArgumentError("group distance is unreachable; the bound is vacuous")
    d = float(Dsi)
    if d < 0:
        raise ArgumentError(f"group distance must be >= 0, got {d}")
    return BoundReport(train_risk=float(train_risk), alpha=float(distortion.alpha),
                       group_distance=d, bound_driver=float(distortion.alpha) * d)


@dataclass(frozen=True)
class OrderingResult:
    """Risk-ordering check across hops: strict inversions plus the Spearman
    rank correlation between hop index and risk."""

    violations: tuple
    spearman: float
    all_ties: bool


def ordering_check(subgroup_risks) -> OrderingResult:
    rows = [(int(k), float(r)) for k, r in subgroup_risks]
    if len(rows) < 2:
        raise ArgumentError("ordering check needs at least two hop groups")
    hops = [k for k, _ in rows]
    if len(set(hops)) != len(hops):
        raise ArgumentError("duplicate hop indices")
    risks = [r for _, r in rows]
    violations = []
    for i, (hi, ri) in enumerate(rows):
        for hj, rj in rows[:i] + rows[i + 1:]:
            if hi > hj and ri < rj:
                violations.append((hi, hj))
    all_ties = len(set(risks)) == 1
    if all_ties:
        rho = 0.0
    else:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            rho = float(stats.spearmanr(hops, risks).statistic)
        if not np.isfinite(rho):
            rho, all_ties = 0.0, True
    return OrderingResult(violations=tuple(sorted(violations)), spearman=rho,
                          all_ties=all_ties)


def trial_grouping(trials, group_count: int):
    """Sort trials by aggregate distance descending (stable), split into
    group_count contiguous blocks (remainder to the last), and report 1-based
    (group, mean accuracy, population variance) rows."""
    trials = [(float(d), float(a)) for d, a in trials]
    if not trials:
        raise ArgumentError("no trials supplied")
    group_count = int(group_count)
    if group_count < 1:
        raise ArgumentError(f"group_count must be >= 1, got {group_count}")
    if group_count > len(trials):
        raise ArgumentError(
            f"group_count {group_count} exceeds trial count {len(trials)}")
    order = sorted(range(len(trials)), key=lambda i: -trials[i][0])
    base = len(trials) // group_count
    out = []
    pos = 0
    for gi in range(1, group_count + 1):
        size = base if gi < group_count else len(trials) - pos
        accs = np.asarray([trials[order[i]][1] for i in range(pos, pos + size)])
        out.append((gi, float(accs.mean()), float(accs.var())))
        pos += size
    return out


@dataclass(frozen=True)
class AggregateDistance:
    value: float
    excluded_unreachable: int
    aggregator: str


def aggregate_distance(g: Graph, V0, aggregator: str) -> AggregateDistance:
    """max or mean of finite distances from the complement to V0, with the
    count of excluded unreachable vertices."""
    if aggregator not in ("max", "mean"):
        raise ArgumentError(f"aggregator must be 'max' or 'mean', got {aggregator!r}")
    seeds = {int(v) for v in V0}
    if not seeds:
        raise ArgumentError("seed set is empty")
    if len(seeds) >= g.n:
        raise ArgumentError("seed set covers every vertex; nothing to aggregate")
    dist = multi_source_bfs(g, seeds)
    mask = np.ones(g.n, dtype=bool)
    mask[list(seeds)] = False
    vals = dist[mask]
    finite = vals[np.isfinite(vals)]
    excluded = int(len(vals) - len(finite))
    if len(finite) == 0:
        raise ArgumentError("no finite distances from the complement to the seed set")
    value = float(finite.max()) if aggregator == "max" else float(finite.mean())
    return AggregateDistance(value=value, excluded_unreachable=excluded,
                             aggregator=aggregator)


def format_acc_md(accuracy: float, md: float) -> str:
    """Fixed two-decimal "ACC|MD" rendering on the percent scale."""
    for name, val in (("accuracy", accuracy), ("md", md)):
        if not 0.0 <= float(val) <= 100.0:
            raise ArgumentError(f"{name} must be within [0, 100], got {val}")
    return f"{float(accuracy):.2f}|{float(md):.2f}"
