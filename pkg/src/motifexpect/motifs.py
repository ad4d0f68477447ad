"""Motif indicator, ordered/set counts, automorphisms, and the triangle kernel.

Counting conventions
--------------------
A tuple of nodes is always injective (pairwise distinct).  The indicator of a
directed motif is the product over all ordered template positions (i, j),
i != j, of ``R(v_i, v_j)`` when the template requires the link and
``1 - R(v_i, v_j)`` when it forbids it.  Undirected motifs take the same
product restricted to positions i < j, so each undirected link contributes
exactly one factor.  On a probability matrix the same product yields the
probability that the tuple matches, which is what makes the expected-count
shortcut exact.

Tuples are enumerated in lexicographic order and summed in fixed blocks
(compensated recombination), so results are bit-stable at any worker count.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

import numpy as np

from .errors import ValidationError
from .graphs import Graph, Motif, WeightedGraph

TUPLE_BLOCK = 1 << 16  # tuples per summation block; fixed, never tied to thread count
_CACHE_TUPLE_LIMIT = 200_000


def _weights(g) -> np.ndarray:
    if isinstance(g, WeightedGraph):
        return g.probs
    if isinstance(g, Graph):
        return g.adj
    raise ValidationError(f"expected Graph or WeightedGraph, got {type(g).__name__}")


def _check_compat(g, m: Motif) -> None:
    if g.directed != m.directed:
        raise ValidationError(
            f"directedness mismatch: graph is {'directed' if g.directed else 'undirected'}, "
            f"motif is {'directed' if m.directed else 'undirected'}"
        )


@lru_cache(maxsize=128)
def _pair_arrays(template_bytes: bytes, k: int, directed: bool):
    """Template positions contributing one factor each: (i_idx, j_idx, required)."""
    template = np.frombuffer(template_bytes, dtype=np.int8).reshape(k, k)
    if directed:
        ii, jj = np.nonzero(~np.eye(k, dtype=bool))
    else:
        ii, jj = np.triu_indices(k, k=1)
    need = template[ii, jj].astype(bool)
    return ii, jj, need


def _motif_pairs(m: Motif):
    return _pair_arrays(m.template.tobytes(), m.k, m.directed)


@lru_cache(maxsize=32)
def _cached_tuples(n: int, k: int) -> np.ndarray | None:
    count = math.perm(n, k)
    if count > _CACHE_TUPLE_LIMIT:
        return None
    arr = np.fromiter(
        itertools.chain.from_iterable(itertools.permutations(range(n), k)),
        dtype=np.intp,
        count=count * k,
    ).reshape(count, k)
    arr.flags.writeable = False
    return arr


def _tuple_blocks(n: int, k: int):
    """Yield lexicographically ordered blocks of injective k-tuples."""
    cached = _cached_tuples(n, k)
    if cached is not None:
        if len(cached):
            yield cached
        return
    it = itertools.permutations(range(n), k)
    while True:
        chunk = list(itertools.islice(it, TUPLE_BLOCK))
        if not chunk:
            return
        yield np.asarray(chunk, dtype=np.intp)


def _block_sum(W: np.ndarray, tuples: np.ndarray, ii, jj, need) -> float:
    vals = W[tuples[:, ii], tuples[:, jj]].astype(np.float64, copy=False)
    factors = np.where(need, vals, 1.0 - vals)
    return float(factors.prod(axis=1).sum())


def motif_indicator(g, m: Motif, nodes) -> float:
    """Degree to which an injective node tuple realizes the motif.

    Exactly 0.0 or 1.0 on binary graphs; on weighted graphs, the probability
    that independent link draws make the tuple match.
    """
    _check_compat(g, m)
    nodes = np.asarray(nodes, dtype=np.intp)
    if nodes.shape != (m.k,):
        raise ValidationError(f"tuple has {nodes.size} nodes, motif arity is {m.k}")
    if len(set(nodes.tolist())) != m.k:
        raise ValidationError(f"tuple {nodes.tolist()} is not injective")
    if nodes.min() < 0 or nodes.max() >= g.n:
        raise ValidationError(f"tuple {nodes.tolist()} has indices outside 0..{g.n - 1}")
    ii, jj, need = _motif_pairs(m)
    vals = _weights(g)[nodes[ii], nodes[jj]].astype(np.float64, copy=False)
    return float(np.where(need, vals, 1.0 - vals).prod())


def ordered_count(g, m: Motif, threads: int = 1):
    """Sum of the motif indicator over every injective k-tuple of nodes.

    Returns an int for binary graphs and a float for weighted ones.  Blocks
    of tuples may be evaluated by `threads` workers; block boundaries are
    fixed and partial sums are recombined in block order, so the result is
    identical at any thread count.
    """
    _check_compat(g, m)
    if g.n < m.k:
        raise ValidationError(f"graph has {g.n} nodes, motif arity is {m.k}")
    if threads < 1:
        raise ValidationError("threads must be >= 1")
    W = _weights(g)
    ii, jj, need = _motif_pairs(m)
    blocks = _tuple_blocks(g.n, m.k)
    if threads == 1:
        partials = [_block_sum(W, b, ii, jj, need) for b in blocks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(lambda b: _block_sum(W, b, ii, jj, need), blocks))
    total = math.fsum(partials)
    if isinstance(g, Graph):
        return int(round(total))
    return total


def ordered_count_stack(mats: np.ndarray, m: Motif) -> np.ndarray:
    """Vectorized ordered counts for a stack of adjacency/probability matrices.

    `mats` has shape (B, n, n); one count per matrix is returned.  Intended
    for small n (the full tuple table must fit in memory); the oracle and the
    graph-sampling estimator batch through here.
    """
    mats = np.asarray(mats, dtype=np.float64)
    if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
        raise ValidationError(f"expected a (B, n, n) stack, got shape {mats.shape}")
    n = mats.shape[1]
    if n < m.k:
        raise ValidationError(f"stack graphs have {n} nodes, motif arity is {m.k}")
    tuples = _cached_tuples(n, m.k)
    if tuples is None:
        raise ValidationError(f"stack counting needs n^k <= {_CACHE_TUPLE_LIMIT}; got n={n}, k={m.k}")
    ii, jj, need = _motif_pairs(m)
    vals = mats[:, tuples[:, ii], tuples[:, jj]]
    factors = np.where(need, vals, 1.0 - vals)
    return factors.prod(axis=2).sum(axis=1)


def set_count(g: Graph, m: Motif) -> int:
    """Number of k-subsets of nodes with at least one ordering matching the motif.

    Defined on binary graphs only; each subset is tested against all k!
    orderings, stopping at the first match.
    """
    if not isinstance(g, Graph):
        raise ValidationError("set counts are defined on binary graphs only")
    _check_compat(g, m)
    if g.n < m.k:
        raise ValidationError(f"graph has {g.n} nodes, motif arity is {m.k}")
    ii, jj, need = _motif_pairs(m)
    pair_list = list(zip(ii.tolist(), jj.tolist(), need.tolist()))
    adj = g.adj.tolist()
    count = 0
    for subset in itertools.combinations(range(g.n), m.k):
        for perm in itertools.permutations(subset):
            if all((adj[perm[i]][perm[j]] == 1) == req for i, j, req in pair_list):
                count += 1
                break
    return count


def automorphism_count(m: Motif) -> int:
    """Number of index permutations leaving the template invariant (>= 1)."""
    t = m.template
    count = 0
    for perm in itertools.permutations(range(m.k)):
        p = np.asarray(perm, dtype=np.intp)
        if np.array_equal(t, t[np.ix_(p, p)]):
            count += 1
    return count


def triangle_count_trace(g) -> float:
    """Ordered triangle count via the trace of the cubed link matrix.

    With a zero diagonal every closed length-3 walk visits three distinct
    nodes, so this equals the generic ordered count of the complete 3-motif
    while costing one dense matrix cube.
    """
    if g.directed:
        raise ValidationError("triangle trace kernel is defined for undirected graphs")
    W = _weights(g).astype(np.float64, copy=False)
    return float(np.trace(W @ W @ W))


def triangle_motif(directed: bool = False) -> Motif:
    """The complete 3-node motif."""
    t = np.ones((3, 3), dtype=np.int8)
    np.fill_diagonal(t, 0)
    return Motif(t, directed)


def enumerate_motifs(k: int, directed: bool, up_to_iso: bool = True) -> list[Motif]:
    """All k-node motif templates, deduplicated by index-permutation orbit.

    The representative kept for each orbit is the one with the smallest
    template bit pattern, and the list is sorted by that pattern, so the
    catalog is deterministic.
    """
    if directed:
        ii, jj = np.nonzero(~np.eye(k, dtype=bool))
    else:
        ii, jj = np.triu_indices(k, k=1)
    npairs = len(ii)
    perms = [np.asarray(p, dtype=np.intp) for p in itertools.permutations(range(k))]
    seen: set[bytes] = set()
    out: list[Motif] = []
    for mask in range(1 << npairs):
        t = np.zeros((k, k), dtype=np.int8)
        bits = (mask >> np.arange(npairs)) & 1
        t[ii, jj] = bits
        if not directed:
            t[jj, ii] = bits
        if up_to_iso:
            canon = min(t[np.ix_(p, p)].tobytes() for p in perms)
            if canon in seen:
                continue
            seen.add(canon)
        out.append(Motif(t, directed, max_arity=max(k, 5)))
    return out
