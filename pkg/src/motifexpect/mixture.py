"""Latent-variable mixture model: prior, decoders, likelihood, sampling.

A decoder deterministically maps a latent vector z to a WeightedGraph of
independent link probabilities; sampling each link once (undirected links
sampled once and mirrored) draws a graph from the conditional distribution.

Stream-splitting rule
---------------------
All randomness derives from ``numpy.random.SeedSequence`` children of a
single root seed, so parallel and serial runs agree per index:

* spawn_key ``(0,)``            - latent draws (`sample_latent`)
* spawn_key ``(1, z_index)``    - uniforms for graphs sampled from the
  z_index-th decoded graph; sampled graph g consumes row g of the uniform
  block, one column per independent link in canonical link order.

`sample_graph` itself takes an explicit seed and draws one uniform per
independent link in the same canonical order.

Decoder file format (JSON)
--------------------------
Table:         ``{"type": "table", "directed": bool, "probs": [[...], ...]}``
Inner product: ``{"type": "inner_product", "directed": bool, "dim": t,
"embeddings": [[...], ...], "bias": b}`` with one length-t row per node.
The inner-product decoder projects the latent onto per-node scores
``s = E @ z`` and sets ``probs[i][j] = logistic(s_i * s_j + bias)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import json

import numpy as np
from scipy.special import expit

from .errors import ParseError, ValidationError
from .graphs import Graph, WeightedGraph, link_indices

LATENT_STREAM = 0
GRAPH_STREAM = 1

# Applied to link probabilities inside log-likelihoods only, so a model that
# assigns probability exactly 0 to an observed link yields a very negative
# but finite value.  Decoders and motif counting never clamp.
PROB_CLAMP = 1e-12


@dataclass(frozen=True)
class PriorSpec:
    """Standard-normal latent prior of a given dimension, with a root seed."""

    dim: int
    seed: int
    kind: str = "standard_normal"

    def __post_init__(self):
        if self.dim < 0:
            raise ValidationError(f"prior dimension must be >= 0, got {self.dim}")
        if self.kind != "standard_normal":
            raise ValidationError(f"unsupported prior kind {self.kind!r}")


class TableDecoder:
    """Decoder that ignores the latent and always emits a fixed WeightedGraph."""

    latent_dim = 0

    def __init__(self, probs, directed: bool):
        self._wg = WeightedGraph(probs, directed)

    @property
    def n(self) -> int:
        return self._wg.n

    @property
    def directed(self) -> bool:
        return self._wg.directed

    def decode(self, z=None) -> WeightedGraph:
        return self._wg


class InnerProductDecoder:
    """Latent-conditioned link probabilities from projected node scores.

    The latent z (dimension t) is projected to one score per node,
    ``s = E @ z``; link (i, j) gets probability ``logistic(s_i * s_j + bias)``.
    With all-zero embeddings every off-diagonal probability is
    ``logistic(bias)``.
    """

    def __init__(self, embeddings, bias: float, directed: bool):
        E = np.array(embeddings, dtype=np.float64, copy=True)
        if E.ndim != 2:
            raise ValidationError(f"embeddings must be an n x t matrix, got shape {E.shape}")
        if not np.isfinite(E).all():
            raise ValidationError("embeddings must be finite")
        E.flags.writeable = False
        self.embeddings = E
        self.bias = float(bias)
        self.directed = bool(directed)

    @property
    def n(self) -> int:
        return self.embeddings.shape[0]

    @property
    def latent_dim(self) -> int:
        return self.embeddings.shape[1]

    def decode(self, z) -> WeightedGraph:
        z = np.asarray(z, dtype=np.float64)
        if z.shape != (self.latent_dim,):
            raise ValidationError(
                f"latent vector has shape {z.shape}, decoder expects ({self.latent_dim},)"
            )
        scores = self.embeddings @ z
        logits = np.outer(scores, scores) + self.bias
        probs = expit(logits)
        # mirror the upper triangle so undirected symmetry is exact in floats
        probs = np.triu(probs, k=1)
        probs = probs + probs.T
        return WeightedGraph(probs, self.directed)


def load_decoder(path):
    """Read a decoder from its JSON file format."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read decoder file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or "type" not in data:
        raise ParseError(f"{path}: decoder JSON needs a 'type' key")
    kind = data["type"]
    try:
        if kind == "table":
            return TableDecoder(data["probs"], bool(data["directed"]))
        if kind == "inner_product":
            dec = InnerProductDecoder(data["embeddings"], data["bias"], bool(data["directed"]))
            if int(data["dim"]) != dec.latent_dim:
                raise ValidationError(
                    f"{path}: declared dim={data['dim']} but embeddings have width {dec.latent_dim}"
                )
            return dec
    except KeyError as exc:
        raise ParseError(f"{path}: decoder JSON missing key {exc}") from exc
    raise ParseError(f"{path}: unknown decoder type {kind!r}")


def load_latents(path) -> list[np.ndarray]:
    """Read latent vectors, one whitespace-separated row of reals per line."""
    vectors: list[np.ndarray] = []
    try:
        with open(path, encoding="utf-8") as fh:
            raw_lines = fh.readlines()
    except OSError as exc:
        raise ParseError(f"cannot read latents file {path}: {exc}") from exc
    for lineno, raw in enumerate(raw_lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            vec = np.array([float(tok) for tok in line.split()], dtype=np.float64)
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from exc
        vectors.append(vec)
    if not vectors:
        raise ParseError(f"{path}: no latent vectors found")
    width = vectors[0].size
    for vec in vectors:
        if vec.size != width:
            raise ParseError(f"{path}: inconsistent vector lengths ({width} vs {vec.size})")
    return vectors


def sample_latent(prior: PriorSpec, count: int) -> list[np.ndarray]:
    """Draw `count` latent vectors from the prior, deterministically per seed."""
    if count < 1:
        raise ValidationError(f"count must be >= 1, got {count}")
    rng = np.random.default_rng(np.random.SeedSequence(prior.seed, spawn_key=(LATENT_STREAM,)))
    draws = rng.standard_normal((count, prior.dim))
    return [draws[i] for i in range(count)]


def graph_log_likelihood(g: Graph, wg: WeightedGraph) -> float:
    """Log probability of a binary graph under independent link draws.

    One Bernoulli factor per independent link (ordered pairs when directed,
    unordered when undirected); factors are clamped to
    [PROB_CLAMP, 1 - PROB_CLAMP] so the result stays finite.
    """
    if g.n != wg.n:
        raise ValidationError(f"graph has {g.n} nodes, model has {wg.n}")
    if g.directed != wg.directed:
        raise ValidationError("graph and model directedness differ")
    rows, cols = link_indices(g.n, g.directed)
    p = np.clip(wg.probs[rows, cols], PROB_CLAMP, 1.0 - PROB_CLAMP)
    present = g.adj[rows, cols] == 1
    return float(np.sum(np.where(present, np.log(p), np.log1p(-p))))


def sample_graph(wg: WeightedGraph, seed) -> Graph:
    """Draw one graph: each independent link sampled once in canonical order."""
    rng = np.random.default_rng(seed)
    rows, cols = link_indices(wg.n, wg.directed)
    bits = (rng.random(len(rows)) < wg.probs[rows, cols]).astype(np.int8)
    adj = np.zeros((wg.n, wg.n), dtype=np.int8)
    adj[rows, cols] = bits
    if not wg.directed:
        adj[cols, rows] = bits
    return Graph(adj, wg.directed)
