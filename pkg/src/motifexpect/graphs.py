"""Core graph, weighted-graph and motif types plus their file formats.

All three container types are immutable after construction (their matrices
are marked read-only) and safe to share across threads.

File formats
------------
Edge list: UTF-8 text, one edge per line as two whitespace-separated labels.
Lines starting with ``#`` are comments.  A line ``%nodes a b c`` pre-declares
nodes, which is how isolated nodes are represented.  Labels are mapped to
dense 0-based indices in first-appearance order and retained on the graph.

Motif: JSON object ``{"k": int, "directed": bool, "matrix": [[0|1, ...], ...]}``.
"""

from __future__ import annotations

import json
import warnings
from functools import lru_cache

import numpy as np

from .errors import ParseError, ValidationError

DEFAULT_MAX_ARITY = 5


@lru_cache(maxsize=64)
def link_indices(n: int, directed: bool) -> tuple[np.ndarray, np.ndarray]:
    """Row/column indices of the independent links of an n-node graph.

    Directed graphs have one link per ordered pair (i, j), i != j; undirected
    graphs one per unordered pair, indexed with i < j.  The row-major order
    returned here is the canonical link order used everywhere (likelihoods,
    sampling, oracle bitmasks), so all modules agree on link identity.
    """
    if directed:
        rows, cols = np.nonzero(~np.eye(n, dtype=bool))
    else:
        rows, cols = np.triu_indices(n, k=1)
    rows.flags.writeable = False
    cols.flags.writeable = False
    return rows, cols


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


class Graph:
    """Binary adjacency matrix over n labeled nodes, no self-loops."""

    def __init__(self, adj, directed: bool, labels: tuple[str, ...] | None = None):
        adj = np.array(adj, dtype=np.int8, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValidationError(f"adjacency matrix must be square, got shape {adj.shape}")
        if not np.isin(adj, (0, 1)).all():
            raise ValidationError("adjacency entries must be 0 or 1")
        if np.diagonal(adj).any():
            raise ValidationError("self-loops are not allowed (nonzero diagonal)")
        if not directed and not np.array_equal(adj, adj.T):
            raise ValidationError("undirected adjacency matrix must be symmetric")
        if labels is not None and len(labels) != adj.shape[0]:
            raise ValidationError("labels length must match node count")
        self.adj = _freeze(adj)
        self.directed = bool(directed)
        self.labels = tuple(labels) if labels is not None else None

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.directed == other.directed
            and np.array_equal(self.adj, other.adj)
        )

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"Graph(n={self.n}, {kind}, edges={int(self.adj.sum()) if self.directed else int(self.adj.sum()) // 2})"


class WeightedGraph:
    """Matrix of independent link probabilities (an expected adjacency matrix)."""

    def __init__(self, probs, directed: bool):
        probs = np.array(probs, dtype=np.float64, copy=True)
        if probs.ndim != 2 or probs.shape[0] != probs.shape[1]:
            raise ValidationError(f"probability matrix must be square, got shape {probs.shape}")
        if np.isnan(probs).any() or (probs < 0.0).any() or (probs > 1.0).any():
            raise ValidationError("link probabilities must lie in [0, 1]")
        if np.diagonal(probs).any():
            raise ValidationError("self-loop probabilities must be 0 (nonzero diagonal)")
        if not directed and not np.array_equal(probs, probs.T):
            raise ValidationError("undirected probability matrix must be symmetric")
        self.probs = _freeze(probs)
        self.directed = bool(directed)

    @property
    def n(self) -> int:
        return self.probs.shape[0]

    def __eq__(self, other):
        return (
            isinstance(other, WeightedGraph)
            and self.directed == other.directed
            and np.array_equal(self.probs, other.probs)
        )

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"WeightedGraph(n={self.n}, {kind})"


class Motif:
    """k x k binary template matrix; occurrences of it are counted in host graphs."""

    def __init__(self, template, directed: bool, max_arity: int = DEFAULT_MAX_ARITY):
        template = np.array(template, dtype=np.int8, copy=True)
        if template.ndim != 2 or template.shape[0] != template.shape[1]:
            raise ValidationError(f"motif template must be square, got shape {template.shape}")
        k = template.shape[0]
        if k < 2:
            raise ValidationError(f"motif arity must be >= 2, got {k}")
        if k > max_arity:
            raise ValidationError(
                f"motif arity {k} exceeds the maximum {max_arity}; "
                f"matching enumerates O(n^{k}) tuples"
            )
        if not np.isin(template, (0, 1)).all():
            raise ValidationError("motif template entries must be 0 or 1")
        if np.diagonal(template).any():
            raise ValidationError("motif template diagonal must be 0")
        if not directed and not np.array_equal(template, template.T):
            raise ValidationError("undirected motif template must be symmetric")
        self.template = _freeze(template)
        self.directed = bool(directed)

    @property
    def k(self) -> int:
        return self.template.shape[0]

    def __eq__(self, other):
        return (
            isinstance(other, Motif)
            and self.directed == other.directed
            and np.array_equal(self.template, other.template)
        )

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"Motif(k={self.k}, {kind})"


def load_graph(path, directed: bool) -> Graph:
    """Read an edge-list file into a Graph.

    Unknown labels are assigned dense 0-based indices in first-appearance
    order (``%nodes`` declarations count as appearances).  Duplicate edges
    warn and are ignored; self-loops are an error.
    """
    index: dict[str, int] = {}
    labels: list[str] = []

    def intern(tok: str) -> int:
        if tok not in index:
            index[tok] = len(labels)
            labels.append(tok)
        return index[tok]

    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    try:
        with open(path, encoding="utf-8") as fh:
            raw_lines = fh.readlines()
    except OSError as exc:
        raise ParseError(f"cannot read graph file {path}: {exc}") from exc

    for lineno, raw in enumerate(raw_lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if toks[0] == "%nodes":
            for tok in toks[1:]:
                intern(tok)
            continue
        if toks[0].startswith("%"):
            raise ParseError(f"{path}:{lineno}: unknown directive {toks[0]!r}")
        if len(toks) != 2:
            raise ParseError(f"{path}:{lineno}: expected two labels, got {len(toks)}")
        u, v = intern(toks[0]), intern(toks[1])
        if u == v:
            raise ValidationError(f"{path}:{lineno}: self-loop on {toks[0]!r}")
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in seen:
            warnings.warn(f"{path}:{lineno}: duplicate edge {toks[0]} {toks[1]} ignored")
            continue
        seen.add(key)
        edges.append((u, v))

    n = len(labels)
    adj = np.zeros((n, n), dtype=np.int8)
    for u, v in edges:
        adj[u, v] = 1
        if not directed:
            adj[v, u] = 1
    return Graph(adj, directed, labels=tuple(labels))


def save_graph(g: Graph, path) -> None:
    """Write a Graph as an edge-list file; load_graph() round-trips it."""
    labels = g.labels if g.labels is not None else tuple(str(i) for i in range(g.n))
    for lab in labels:
        if not lab or lab.split() != [lab] or lab.startswith(("#", "%")):
            raise ValidationError(f"label {lab!r} cannot be written to an edge list")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("%nodes " + " ".join(labels) + "\n")
        rows, cols = np.nonzero(g.adj if g.directed else np.triu(g.adj))
        for u, v in zip(rows.tolist(), cols.tolist()):
            fh.write(f"{labels[u]} {labels[v]}\n")


def load_motif(path, max_arity: int = DEFAULT_MAX_ARITY) -> Motif:
    """Read a motif template from its JSON file format."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read motif file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or not {"k", "directed", "matrix"} <= set(data):
        raise ParseError(f"{path}: motif JSON needs keys 'k', 'directed', 'matrix'")
    try:
        template = np.array(data["matrix"], dtype=np.int8)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: 'matrix' is not a rectangular 0/1 array") from exc
    motif = Motif(template, bool(data["directed"]), max_arity=max_arity)
    if int(data["k"]) != motif.k:
        raise ValidationError(f"{path}: declared k={data['k']} but matrix is {motif.k}x{motif.k}")
    return motif


def permute_nodes(g: Graph, perm) -> Graph:
    """Relabel nodes: edge (i, j) becomes (perm[i], perm[j])."""
    perm = np.asarray(perm, dtype=np.intp)
    if perm.shape != (g.n,) or not np.array_equal(np.sort(perm), np.arange(g.n)):
        raise ValidationError(f"perm must be a bijection of 0..{g.n - 1}")
    adj = np.empty_like(g.adj)
    adj[np.ix_(perm, perm)] = g.adj
    labels = None
    if g.labels is not None:
        out = [""] * g.n
        for i, lab in enumerate(g.labels):
            out[perm[i]] = lab
        labels = tuple(out)
    return Graph(adj, g.directed, labels=labels)


def threshold_to_graph(wg: WeightedGraph) -> Graph:
    """Convert a degenerate 0/1-valued WeightedGraph to a binary Graph."""
    probs = wg.probs
    if not np.isin(probs, (0.0, 1.0)).all():
        bad = probs[(probs != 0.0) & (probs != 1.0)].flat[0]
        raise ValidationError(f"probability {bad} is strictly between 0 and 1")
    return Graph(probs.astype(np.int8), wg.directed)
