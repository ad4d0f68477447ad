"""Ground-truth engine: exhaustive enumeration over all graphs on small node sets.

Graphs are indexed by a bitmask over the independent links (canonical link
order), so the 2^L graphs are enumerated each exactly once and probabilities
follow directly from the link bits.  This is the slow-but-exact side of every
identity the fast paths are checked against; it is exposed on the CLI so the
shortcut can be verified on user-supplied models at small n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .errors import SizeLimitError, ValidationError
from .graphs import Graph, Motif, WeightedGraph, link_indices
from .mixture import PROB_CLAMP, graph_log_likelihood
from .motifs import automorphism_count, ordered_count, ordered_count_stack, set_count

MAX_ORACLE_LINKS = 30
_MASK_CHUNK = 4096


def _guard_links(n: int, directed: bool, max_links: int) -> int:
    rows, _ = link_indices(n, directed)
    L = len(rows)
    limit = min(max_links, MAX_ORACLE_LINKS)
    if L > limit:
        raise SizeLimitError(
            f"n={n} {'directed' if directed else 'undirected'} has L={L} independent links; "
            f"enumerating 2^{L} graphs exceeds the limit of 2^{limit}"
        )
    return L


def enumerate_graphs(n: int, directed: bool, max_links: int = MAX_ORACLE_LINKS) -> Iterator[Graph]:
    """Yield all 2^L graphs on n nodes, once each, in link-bitmask order."""
    L = _guard_links(n, directed, max_links)
    rows, cols = link_indices(n, directed)
    shifts = np.arange(L, dtype=np.int64)
    for mask in range(1 << L):
        bits = ((mask >> shifts) & 1).astype(np.int8)
        adj = np.zeros((n, n), dtype=np.int8)
        adj[rows, cols] = bits
        if not directed:
            adj[cols, rows] = bits
        yield Graph(adj, directed)


def _mask_chunks(L: int):
    total = 1 << L
    for start in range(0, total, _MASK_CHUNK):
        yield np.arange(start, min(start + _MASK_CHUNK, total), dtype=np.int64)


def exact_conditional_expectation(wg: WeightedGraph, m: Motif,
                                  max_links: int = MAX_ORACLE_LINKS) -> float:
    """Expected ordered motif count by brute force: sum of P(G) * count(G) over all graphs.

    Per-graph probabilities use the same per-link Bernoulli factors (and the
    same clamping) as `graph_log_likelihood`; counts are the vectorized
    binary ordered counts.  Chunks are combined in fixed order.
    """
    if wg.directed != m.directed:
        raise ValidationError("model and motif directedness differ")
    if wg.n < m.k:
        raise ValidationError(f"model has {wg.n} nodes, motif arity is {m.k}")
    L = _guard_links(wg.n, wg.directed, max_links)
    rows, cols = link_indices(wg.n, wg.directed)
    p = np.clip(wg.probs[rows, cols], PROB_CLAMP, 1.0 - PROB_CLAMP)
    logp, log1mp = np.log(p), np.log1p(-p)
    shifts = np.arange(L, dtype=np.int64)
    partials = []
    for masks in _mask_chunks(L):
        bits = ((masks[:, None] >> shifts) & 1).astype(np.float64)
        probs = np.exp(bits @ logp + (1.0 - bits) @ log1mp)
        mats = np.zeros((len(masks), wg.n, wg.n))
        mats[:, rows, cols] = bits
        if not wg.directed:
            mats[:, cols, rows] = bits
        counts = ordered_count_stack(mats, m)
        partials.append(float(probs @ counts))
    return math.fsum(partials)


@dataclass(frozen=True)
class ExactDistribution:
    """Exact probability mass over motif count values."""

    support: tuple[tuple[int, float], ...]

    def mean(self) -> float:
        return math.fsum(v * p for v, p in self.support)

    def variance(self) -> float:
        mu = self.mean()
        return math.fsum((v - mu) ** 2 * p for v, p in self.support)

    def std(self) -> float:
        return math.sqrt(self.variance())

    def total_probability(self) -> float:
        return math.fsum(p for _, p in self.support)


def exact_count_distribution(wg: WeightedGraph, m: Motif, set_based: bool = False,
                             max_links: int = MAX_ORACLE_LINKS) -> ExactDistribution:
    """Exact distribution of the ordered (or set) count under the link model."""
    if wg.directed != m.directed:
        raise ValidationError("model and motif directedness differ")
    if wg.n < m.k:
        raise ValidationError(f"model has {wg.n} nodes, motif arity is {m.k}")
    mass: dict[int, list[float]] = {}
    for g in enumerate_graphs(wg.n, wg.directed, max_links=max_links):
        prob = math.exp(graph_log_likelihood(g, wg))
        value = set_count(g, m) if set_based else ordered_count(g, m)
        mass.setdefault(value, []).append(prob)
    support = tuple((v, math.fsum(ps)) for v, ps in sorted(mass.items()))
    return ExactDistribution(support)


@dataclass(frozen=True)
class ConjectureReport:
    """Outcome of testing ordered == automorphisms x set on binary graphs."""

    holds: bool
    cases_checked: int
    aut: int
    counterexample: Optional[Graph] = None
    ordered: Optional[int] = None
    set_value: Optional[int] = None


def check_conjecture(m: Motif, trials: int, seed: int = 0,
                     max_links: int = MAX_ORACLE_LINKS) -> ConjectureReport:
    """Test the ordered = Aut x set identity exhaustively (n <= 4) and on random graphs.

    A counterexample is reported, not raised; callers decide what a failed
    identity means for them.
    """
    aut = automorphism_count(m)
    checked = 0

    def violates(g: Graph):
        nonlocal checked
        checked += 1
        o = ordered_count(g, m)
        s = set_count(g, m)
        if o != aut * s:
            return ConjectureReport(False, checked, aut, g, o, s)
        return None

    for n in range(m.k, 5):
        for g in enumerate_graphs(n, m.directed, max_links=max_links):
            bad = violates(g)
            if bad is not None:
                return bad

    rng = np.random.default_rng(seed)
    for _ in range(trials):
        n = int(rng.integers(m.k, 8))
        p = rng.uniform(0.15, 0.85)
        raw = (rng.random((n, n)) < p).astype(np.int8)
        if not m.directed:
            raw = np.triu(raw, k=1)
            raw = raw + raw.T
        np.fill_diagonal(raw, 0)
        bad = violates(Graph(raw, m.directed))
        if bad is not None:
            return bad

    return ConjectureReport(True, checked, aut)
