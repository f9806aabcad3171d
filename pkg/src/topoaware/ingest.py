"""Parsers and writers for all external data: edge lists, vector tables,
label tables, seed lists, and structured/tabular reports.

All output is byte-deterministic: stable ordering, '.' decimal separator,
no locale dependence. Structured reports round floats to 6 significant
digits at build time so write -> parse is an identity.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass

import numpy as np

from ._version import __version__
from .errors import ArgumentError, CoverageError, ParseError
from .graph import Graph
from .metrics import EmbeddingTable
from .embed import FeatureMatrix

SCHEMA_VERSION = "1"

_INT_RE = re.compile(r"^[+-]?\d+$")


def _lines(text):
    if isinstance(text, str):
        return text.splitlines()
    return [line.rstrip("\n") for line in text]


# ---------------------------------------------------------------------------
# edge lists


def parse_edge_list(text) -> list:
    """Whitespace-separated token pairs, one per line; '#' comments and blank
    lines skipped. Returns raw pairs (duplicates and self-loops included)."""
    pairs = []
    for ln, raw in enumerate(_lines(text), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(
                f"expected 2 tokens, found {len(tokens)}", line_number=ln,
                token=tokens[0] if tokens else None)
        pairs.append((tokens[0], tokens[1]))
    return pairs


def write_edge_list(g: Graph) -> str:
    """Edges in dense-id order; isolated vertices appear as trailing
    self-loop lines so a round trip registers their tokens."""
    out = []
    seen = np.zeros(g.n, dtype=bool)
    for u in range(g.n):
        for v in g.neighbors_of(u):
            seen[u] = seen[int(v)] = True
            if u < v:
                out.append(f"{g.tokens[u]} {g.tokens[int(v)]}")
    for u in np.flatnonzero(~seen):
        out.append(f"{g.tokens[int(u)]} {g.tokens[int(u)]}")
    return "\n".join(out) + ("\n" if out else "")


# ---------------------------------------------------------------------------
# seed / token lists


def parse_token_list(text) -> list:
    """One token per line; '#' comments and blanks skipped."""
    tokens = []
    for ln, raw in enumerate(_lines(text), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 1:
            raise ParseError(f"expected 1 token, found {len(parts)}", line_number=ln)
        tokens.append(parts[0])
    return tokens


def write_token_list(tokens) -> str:
    return "\n".join(tokens) + ("\n" if tokens else "")


def resolve_tokens(tokens, g: Graph) -> list:
    """Strict token -> dense id resolution; unknown tokens are an error."""
    unknown = [t for t in tokens if t not in g.token_index]
    if unknown:
        raise CoverageError("unknown vertex tokens", missing=tuple(unknown), kind="token")
    return [g.token_index[t] for t in tokens]


# ---------------------------------------------------------------------------
# vector tables


def parse_vector_table(text, expected: str, g: Graph):
    """Comma-separated vector rows under a "node,d0,d1,..." header.

    expected="embeddings" -> EmbeddingTable (partial coverage allowed);
    expected="features" -> FeatureMatrix (every vertex required).
    """
    if expected not in ("embeddings", "features"):
        raise ArgumentError(f"expected must be embeddings or features, got {expected!r}")
    lines = _lines(text)
    if not lines or not lines[0].strip():
        raise ParseError("missing header", line_number=1)
    header = [h.strip() for h in lines[0].split(",")]
    if header[0] != "node" or len(header) < 2:
        raise ParseError('header must be "node,d0,d1,..."', line_number=1)
    dim = len(header) - 1
    vectors = np.full((g.n, dim), np.nan)
    seen: dict[str, int] = {}
    unknown: list[str] = []
    for ln, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(",")]
        token = fields[0]
        if len(fields) != dim + 1:
            raise ParseError(
                f"expected {dim + 1} fields, found {len(fields)}",
                line_number=ln, token=token)
        if token in seen:
            raise ParseError(f"duplicate token {token!r} (first at line {seen[token]})",
                             line_number=ln, token=token)
        seen[token] = ln
        try:
            values = [float(f) for f in fields[1:]]
        except ValueError as exc:
            raise ParseError(f"non-numeric value: {exc}", line_number=ln, token=token) from None
        if not all(math.isfinite(x) for x in values):
            raise ParseError("non-finite value", line_number=ln, token=token)
        if token not in g.token_index:
            unknown.append(token)
            continue
        vectors[g.token_index[token]] = values
    if unknown:
        raise CoverageError("unknown vertex tokens", missing=tuple(unknown), kind="token")
    covered = frozenset(g.token_index[t] for t in seen)
    if expected == "features":
        missing = [g.tokens[v] for v in range(g.n) if v not in covered]
        if missing:
            raise CoverageError("vertices without feature rows",
                                missing=tuple(missing), kind="token")
        return FeatureMatrix(dim=dim, rows=vectors)
    return EmbeddingTable(dim=dim, vectors=vectors, coverage=covered)


def write_vector_table(obj, g: Graph) -> str:
    """Vector rows in dense-id order under the standard header; float repr is
    shortest-round-trip so write -> parse is exact."""
    if isinstance(obj, EmbeddingTable):
        rows, ids = obj.vectors, sorted(obj.coverage)
        dim = obj.dim
    elif isinstance(obj, FeatureMatrix):
        rows, ids = obj.rows, range(g.n)
        dim = obj.dim
    else:
        raise ArgumentError(f"cannot write vectors for {type(obj).__name__}")
    out = ["node," + ",".join(f"d{i}" for i in range(dim))]
    for v in ids:
        out.append(g.tokens[v] + "," + ",".join(repr(float(x)) for x in rows[v]))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# label tables


@dataclass(frozen=True)
class LabelTable:
    """Per-token targets; mode is classification (all ints) or regression."""

    values: dict
    mode: str


def parse_label_table(text) -> LabelTable:
    """"node,label" rows: integer literals -> classification, decimals ->
    regression; mixing the two or repeating a token is an error."""
    lines = _lines(text)
    if not lines or lines[0].strip() != "node,label":
        raise ParseError('header must be "node,label"', line_number=1)
    values: dict = {}
    mode: str | None = None
    for ln, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != 2:
            raise ParseError(f"expected 2 fields, found {len(fields)}", line_number=ln)
        token, label = fields
        if token in values:
            raise ParseError(f"duplicate token {token!r}", line_number=ln, token=token)
        if _INT_RE.match(label):
            kind, value = "classification", int(label)
        else:
            try:
                value = float(label)
            except ValueError:
                raise ParseError(f"non-numeric label {label!r}",
                                 line_number=ln, token=token) from None
            if not math.isfinite(value):
                raise ParseError("non-finite label", line_number=ln, token=token)
            kind = "regression"
        if mode is None:
            mode = kind
        elif mode != kind:
            raise ParseError(
                f"mixed integer and decimal labels ({mode} then {kind})",
                line_number=ln, token=token)
        values[token] = value
    if mode is None:
        raise ParseError("no label rows", line_number=len(lines) or 1)
    return LabelTable(values=values, mode=mode)


def write_label_table(values, mode: str) -> str:
    """Rows sorted by token; ints for classification, float repr otherwise."""
    out = ["node,label"]
    for token in sorted(values):
        v = values[token]
        out.append(f"{token},{int(v)}" if mode == "classification" else f"{token},{float(v)!r}")
    return "\n".join(out) + "\n"


def resolve_labels(table: LabelTable, g: Graph) -> dict:
    """Token-keyed labels -> dense-id-keyed; unknown tokens are an error."""
    ids = resolve_tokens(list(table.values), g)
    return {i: table.values[t] for i, t in zip(ids, table.values)}


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Report:
    """A self-describing run record: every parameter that shaped the run plus
    one payload. parameters must include rng_seed whenever randomness ran."""

    parameters: dict
    payload_kind: str
    payload: dict
    schema_version: str = SCHEMA_VERSION
    tool_version: str = __version__


def sig6(x: float) -> float:
    """Round to 6 significant digits (report precision)."""
    return float(f"{float(x):.6g}")


def jsonable(value):
    """Recursively convert to JSON-stable values: floats to 6 significant
    digits, numpy scalars unwrapped, unreachable distances to a string."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isinf(v):
            return "unreachable"
        return sig6(v)
    return value


def write_report(report: Report, format: str = "structured") -> str:
    if format == "structured":
        doc = {
            "schema_version": report.schema_version,
            "tool_version": report.tool_version,
            "parameters": report.parameters,
            "payload_kind": report.payload_kind,
            "payload": report.payload,
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if format == "tabular":
        return _write_tabular(report)
    raise ArgumentError(f"format must be structured or tabular, got {format!r}")


def parse_report(text) -> Report:
    """Inverse of the structured writer."""
    try:
        doc = json.loads(text if isinstance(text, str) else "\n".join(_lines(text)))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid structured report: {exc.msg}",
                         line_number=exc.lineno) from None
    for key in ("schema_version", "tool_version", "parameters", "payload_kind", "payload"):
        if key not in doc:
            raise ParseError(f"structured report missing key {key!r}", line_number=1)
    return Report(parameters=doc["parameters"], payload_kind=doc["payload_kind"],
                  payload=doc["payload"], schema_version=doc["schema_version"],
                  tool_version=doc["tool_version"])


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


_TABULAR_ROWS = {
    "partition": ("hop\tcount", "hop_counts", ("hop", "count")),
    "distortion": ("hop\tmean_distance\tstd\tcount", "profile",
                   ("hop", "mean_distance", "std", "count")),
    "seed_selection": ("order\ttoken", "seed_rows", ("order", "token")),
    "evaluation": ("hop\taccuracy\tcount", "per_hop", ("hop", "accuracy", "count")),
    "trial_table": ("group\tmean_accuracy\tvariance", "groups",
                    ("group", "mean_accuracy", "variance")),
    "verify": ("check\tstatus", "check_rows", ("check", "status")),
}


def _write_tabular(report: Report) -> str:
    if report.payload_kind not in _TABULAR_ROWS:
        raise ArgumentError(
            f"payload kind {report.payload_kind!r} has no tabular form")
    header, rows_key, columns = _TABULAR_ROWS[report.payload_kind]
    out = [f"# schema_version={report.schema_version}",
           f"# tool_version={report.tool_version}",
           f"# payload_kind={report.payload_kind}"]
    for key in sorted(report.parameters):
        out.append(f"# parameter.{key}={_fmt(report.parameters[key])}")
    scalars = {k: v for k, v in report.payload.items()
               if not isinstance(v, (list, dict))}
    for key in sorted(scalars):
        out.append(f"# {key}={_fmt(scalars[key])}")
    out.append("# " + header)
    for row in report.payload.get(rows_key, ()):
        out.append("\t".join(_fmt(row[c]) for c in columns))
    return "\n".join(out) + "\n"
