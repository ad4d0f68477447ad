"""Expected-count estimation: the conditional shortcut, Monte Carlo over
latents, the naive graph-sampling cross-check, and significance scoring.

The shortcut evaluates the weighted ordered count directly on the decoded
link-probability matrix, which equals the conditional expectation of the
binary count with no graph sampling.  Integrating over the latent prior is
then plain Monte Carlo over latent draws.  `naive_estimate` pays for graph
sampling anyway and exists to cross-validate the shortcut.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ValidationError
from .graphs import Graph, Motif, link_indices
from .mixture import GRAPH_STREAM, PriorSpec, sample_latent
from .motifs import ordered_count, ordered_count_stack

_GRAPH_BATCH = 8192

CONDITIONAL_SPREAD = "conditional-spread"
TOTAL_VARIANCE = "total-variance"
SIGNIFICANCE_MODES = (CONDITIONAL_SPREAD, TOTAL_VARIANCE)


@dataclass(frozen=True)
class EstimateReport:
    """Point estimate of an expected motif count."""

    mean: float
    std_error: float
    samples: int
    method: str
    seed: int


@dataclass(frozen=True)
class SignificanceReport:
    """Observed count standardized against the model's expectation.

    `score` is None (and the count is flagged undefined) when the expected
    spread is exactly 0; a zero spread is reported honestly, never padded.
    """

    observed: float
    expected_mean: float
    expected_std: float
    score: Optional[float]
    mode: str


def _mean_and_stderr(values: np.ndarray) -> tuple[float, float]:
    # a constant sample has spread exactly 0; np.mean's round trip must not
    # manufacture a tiny variance out of it
    if values.size < 2 or np.all(values == values[0]):
        return float(values[0] if values.size else 0.0), 0.0
    return float(values.mean()), float(values.std(ddof=1) / math.sqrt(values.size))


def conditional_expected_count(decoder, z, m: Motif, threads: int = 1) -> float:
    """Exact expected ordered count given a latent: count the decoded graph."""
    return float(ordered_count(decoder.decode(z), m, threads=threads))


def estimate_expected_count(decoder, prior: PriorSpec, m: Motif, samples: int,
                            latents=None, threads: int = 1) -> EstimateReport:
    """Monte Carlo over latents, each resolved exactly by the conditional shortcut.

    Supplying `latents` (e.g. posterior samples from an external tool)
    bypasses prior sampling; `samples` is then ignored in favor of the list
    length.
    """
    if latents is None:
        if samples < 1:
            raise ValidationError(f"samples must be >= 1, got {samples}")
        latents = sample_latent(prior, samples)
    elif len(latents) < 1:
        raise ValidationError("latent sample list is empty")
    values = np.array(
        [conditional_expected_count(decoder, z, m, threads=threads) for z in latents]
    )
    mean, stderr = _mean_and_stderr(values)
    return EstimateReport(mean, stderr, len(latents), "conditional", prior.seed)


def _sampled_counts(decoder, prior: PriorSpec, m: Motif, z_samples: int,
                    graphs_per_z: int, latents=None) -> np.ndarray:
    """Binary ordered counts of sampled graphs, one row block per latent.

    Graph uniforms come from the per-z substream (spawn_key (1, z_index));
    row g of the block drives sampled graph g, one uniform per link.
    """
    if latents is None:
        latents = sample_latent(prior, z_samples)
    counts = np.empty(len(latents) * graphs_per_z, dtype=np.int64)
    pos = 0
    for zi, z in enumerate(latents):
        wg = decoder.decode(z)
        rows, cols = link_indices(wg.n, wg.directed)
        p = wg.probs[rows, cols]
        rng = np.random.default_rng(np.random.SeedSequence(prior.seed, spawn_key=(GRAPH_STREAM, zi)))
        remaining = graphs_per_z
        while remaining > 0:
            batch = min(_GRAPH_BATCH, remaining)
            bits = (rng.random((batch, len(rows))) < p).astype(np.float64)
            mats = np.zeros((batch, wg.n, wg.n))
            mats[:, rows, cols] = bits
            if not wg.directed:
                mats[:, cols, rows] = bits
            counts[pos:pos + batch] = np.rint(ordered_count_stack(mats, m)).astype(np.int64)
            pos += batch
            remaining -= batch
    return counts


def naive_estimate(decoder, prior: PriorSpec, m: Motif, z_samples: int,
                   graphs_per_z: int) -> EstimateReport:
    """Direct Monte Carlo: sample graphs from sampled latents and count them.

    Exists to cross-validate the conditional shortcut; its variance includes
    the within-latent graph-sampling noise the shortcut integrates out.
    """
    if z_samples < 1 or graphs_per_z < 1:
        raise ValidationError("z_samples and graphs_per_z must both be >= 1")
    counts = _sampled_counts(decoder, prior, m, z_samples, graphs_per_z)
    mean, stderr = _mean_and_stderr(counts.astype(np.float64))
    return EstimateReport(mean, stderr, counts.size, "naive", prior.seed)


def significance(observed: Graph, decoder, prior: PriorSpec, m: Motif, mode: str,
                 samples: int, graphs_per_z: int = 1, latents=None) -> SignificanceReport:
    """Standardize an observed motif count against the model.

    conditional-spread standardizes by the spread of the conditional means
    across latents only (it ignores within-latent count variance, so it
    understates the total spread); total-variance standardizes by the spread
    of counts of actually sampled graphs.
    """
    if mode not in SIGNIFICANCE_MODES:
        raise ValidationError(f"mode must be one of {SIGNIFICANCE_MODES}, got {mode!r}")
    if observed.n != decoder.n:
        raise ValidationError(f"observed graph has {observed.n} nodes, decoder has {decoder.n}")
    if observed.directed != decoder.directed:
        raise ValidationError("observed graph and decoder directedness differ")
    if samples < 1:
        raise ValidationError(f"samples must be >= 1, got {samples}")

    obs = float(ordered_count(observed, m))
    if latents is None:
        latents = sample_latent(prior, samples)
    if mode == CONDITIONAL_SPREAD:
        values = np.array([conditional_expected_count(decoder, z, m) for z in latents])
    else:
        values = _sampled_counts(decoder, prior, m, samples, graphs_per_z, latents=latents).astype(np.float64)
    if values.size < 2 or np.all(values == values[0]):
        mean, std = float(values[0]), 0.0
    else:
        mean, std = float(values.mean()), float(values.std(ddof=1))
    score = (obs - mean) / std if std > 0.0 else None
    return SignificanceReport(obs, mean, std, score, mode)
