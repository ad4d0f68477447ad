"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as they
complete.  Tolerances are pinned here and nowhere else.
"""

import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from motifexpect import (
    EstimateReport,
    Graph,
    InnerProductDecoder,
    Motif,
    PriorSpec,
    TableDecoder,
    WeightedGraph,
    automorphism_count,
    enumerate_graphs,
    enumerate_motifs,
    estimate_expected_count,
    exact_conditional_expectation,
    graph_log_likelihood,
    naive_estimate,
    ordered_count,
    set_count,
    triangle_count_trace,
    triangle_motif,
)

from conftest import random_binary, random_weighted

PROP1_TOL = 1e-9
NORMALIZATION_TOL = 1e-9
TRIANGLE_TOL = 1e-9


def report(criterion: str, ok: bool, detail: str = "") -> bool:
    status = "PASS" if ok else "FAIL"
    line = f"ACCEPTANCE {criterion}: {status}"
    if detail:
        line += f" ({detail})"
    print(line)
    return ok


def test_criterion_1_paper_worked_example(paper_graph, paper_motif):
    start = time.perf_counter()
    ordered = ordered_count(paper_graph, paper_motif)
    sets = set_count(paper_graph, paper_motif)
    aut = automorphism_count(paper_motif)
    elapsed = time.perf_counter() - start
    ok = (
        ordered == 4
        and sets == 2
        and aut == 2
        and ordered == aut * sets
        and isinstance(ordered, int)
        and isinstance(sets, int)
        and isinstance(aut, int)
        and elapsed < 1.0
    )
    assert report("1 worked example", ok,
                  f"ordered={ordered} set={sets} aut={aut} in {elapsed:.3f}s")


def test_criterion_2_expectation_oracle_suite():
    rng = np.random.default_rng(20240809)
    catalogs = {
        True: [m for k in (2, 3) for m in enumerate_motifs(k, True)],
        False: [m for k in (2, 3) for m in enumerate_motifs(k, False)],
    }
    start = time.perf_counter()
    graphs_checked = 0
    pairs = 0
    worst = 0.0
    for directed, n_max, instances in ((True, 4, 50), (False, 5, 50)):
        for _ in range(instances):
            n = int(rng.integers(2, n_max + 1))
            wg = random_weighted(rng, n, directed)
            graphs_checked += 1
            for m in catalogs[directed]:
                if m.k > n:
                    continue
                fast = ordered_count(wg, m)
                exact = exact_conditional_expectation(wg, m)
                worst = max(worst, abs(fast - exact))
                pairs += 1
    elapsed = time.perf_counter() - start
    ok = graphs_checked >= 100 and worst <= PROP1_TOL and elapsed < 120.0
    assert report("2 expectation vs oracle", ok,
                  f"{graphs_checked} graphs, {pairs} pairs, worst diff {worst:.2e}, {elapsed:.1f}s")


def test_criterion_3_ordered_set_automorphism_identity():
    failures = []

    def check(g, m):
        o = ordered_count(g, m)
        a = automorphism_count(m)
        s = set_count(g, m)
        if o != a * s:
            failures.append((g.adj.tolist(), m.template.tolist(), o, a, s))

    # exhaustive: every undirected graph n <= 4 against every non-isomorphic
    # undirected motif with k <= 3
    motifs = [m for k in (2, 3) for m in enumerate_motifs(k, False)]
    exhaustive = 0
    for m in motifs:
        for n in range(m.k, 5):
            for g in enumerate_graphs(n, False):
                check(g, m)
                exhaustive += 1

    # randomized: 1000 (graph, motif) pairs at n <= 7, k <= 4, both directednesses
    rng = np.random.default_rng(1234)
    for _ in range(1000):
        directed = bool(rng.integers(2))
        k = int(rng.integers(2, 5))
        pool = enumerate_motifs(k, directed)
        m = pool[int(rng.integers(len(pool)))]
        n = int(rng.integers(k, 8))
        g = random_binary(rng, n, directed, p=float(rng.uniform(0.15, 0.85)))
        check(g, m)

    for bad in failures:
        print(f"counterexample: graph={bad[0]} motif={bad[1]} "
              f"ordered={bad[2]} aut={bad[3]} set={bad[4]}")
    ok = not failures
    assert report("3 ordered = aut x set", ok,
                  f"{exhaustive} exhaustive + 1000 random cases, {len(failures)} counterexamples")


def test_criterion_4_likelihood_normalization():
    rng = np.random.default_rng(4444)
    worst = 0.0
    for i in range(50):
        directed = i % 2 == 0
        n = int(rng.integers(2, 4 + 1)) if directed else int(rng.integers(2, 5 + 1))
        if i % 5 == 0:
            dec = InnerProductDecoder(rng.normal(size=(n, 2)), bias=float(rng.normal()),
                                      directed=directed)
            wg = dec.decode(rng.normal(size=2))
        else:
            wg = random_weighted(rng, n, directed)
        total = math.fsum(
            math.exp(graph_log_likelihood(g, wg)) for g in enumerate_graphs(n, directed)
        )
        worst = max(worst, abs(total - 1.0))
    ok = worst <= NORMALIZATION_TOL
    assert report("4 likelihood normalization", ok, f"50 decoders, worst |sum-1| {worst:.2e}")


def test_criterion_5_triangle_kernel():
    rng = np.random.default_rng(5555)
    tri = triangle_motif()
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(3, 31))
        wg = random_weighted(rng, n, False)
        worst = max(worst, abs(triangle_count_trace(wg) - ordered_count(wg, tri)))

    n = 1000
    probs = rng.random((n, n))
    probs = np.triu(probs, k=1)
    probs = probs + probs.T
    big = WeightedGraph(probs, directed=False)
    start = time.perf_counter()
    value = triangle_count_trace(big)
    elapsed = time.perf_counter() - start
    ok = worst <= TRIANGLE_TOL and elapsed < 5.0 and value > 0.0
    assert report("5 triangle kernel", ok,
                  f"worst diff {worst:.2e} on n<=30; n=1000 trace in {elapsed:.2f}s")


def test_criterion_6_estimator_consistency():
    def table(probs, directed):
        return TableDecoder(probs, directed)

    p_half3 = np.full((3, 3), 0.5) - np.eye(3) * 0.5
    p_mixed3 = np.array([[0, 0.8, 0.2], [0.8, 0, 0.5], [0.2, 0.5, 0]])
    p_dir3 = np.array([[0, 0.7, 0.1], [0.3, 0, 0.9], [0.4, 0.2, 0]])
    p_rand4 = np.triu(np.random.default_rng(5).random((4, 4)), 1)
    p_rand4 = p_rand4 + p_rand4.T
    E1 = np.random.default_rng(11).normal(size=(4, 2)) * 0.7
    E2 = np.random.default_rng(12).normal(size=(3, 3)) * 0.5

    edge_d = Motif([[0, 1], [0, 0]], True)
    mutual = Motif([[0, 1], [1, 0]], True)
    edge_u = Motif([[0, 1], [1, 0]], False)
    tri = triangle_motif()
    path3 = Motif([[0, 1, 0], [1, 0, 1], [0, 1, 0]], False)
    cyc3 = Motif([[0, 1, 0], [0, 0, 1], [1, 0, 0]], True)
    fig1 = Motif([[0, 1, 0], [1, 0, 0], [0, 0, 0]], False)

    # (seed, decoder, motif, z_samples, graphs_per_z); 1e5 graphs per triple
    triples = [
        (101, table([[0, 0.3], [0.6, 0]], True), edge_d, 1, 100_000),
        (102, table([[0, 0.3], [0.6, 0]], True), mutual, 1, 100_000),
        (103, table(p_half3, False), tri, 1, 100_000),
        (104, table(p_mixed3, False), path3, 1, 100_000),
        (105, table(p_dir3, True), cyc3, 1, 100_000),
        (106, table(p_rand4, False), fig1, 1, 100_000),
        (107, InnerProductDecoder(E1, -0.3, False), tri, 50, 2_000),
        (108, InnerProductDecoder(E1, 0.2, False), edge_u, 50, 2_000),
        (109, InnerProductDecoder(E2, -1.0, False), path3, 50, 2_000),
        (110, InnerProductDecoder(E2, 0.5, False), edge_u, 50, 2_000),
    ]
    failures = []
    for seed, dec, m, zs, gpz in triples:
        prior = PriorSpec(dim=dec.latent_dim, seed=seed)
        cond = estimate_expected_count(dec, prior, m, samples=zs)
        naive = naive_estimate(dec, prior, m, z_samples=zs, graphs_per_z=gpz)
        assert isinstance(cond, EstimateReport) and naive.samples == 100_000
        combined = math.hypot(cond.std_error, naive.std_error)
        if abs(naive.mean - cond.mean) > 4 * combined:
            failures.append((seed, cond.mean, naive.mean, combined))
    ok = not failures
    assert report("6 estimator consistency", ok,
                  f"10 triples x 1e5 graphs, failures: {failures or 'none'}")


def test_criterion_7_cli_byte_reproducibility(tmp_path):
    files = {
        "fig.edges": "%nodes a b c d\na b\nb c\n",
        "fig_motif.json": '{"k": 3, "directed": false, "matrix": [[0,1,0],[1,0,0],[0,0,0]]}',
        "tri_motif.json": '{"k": 3, "directed": false, "matrix": [[0,1,1],[1,0,1],[1,1,0]]}',
        "inner.json": (
            '{"type": "inner_product", "directed": false, "dim": 2,'
            ' "embeddings": [[0.4, -0.2], [0.1, 0.9], [-0.7, 0.3], [0.5, 0.5]], "bias": -0.4}'
        ),
        "table_u4.json": (
            '{"type": "table", "directed": false, "probs":'
            ' [[0, 0.5, 0.5, 0.5], [0.5, 0, 0.5, 0.5], [0.5, 0.5, 0, 0.5], [0.5, 0.5, 0.5, 0]]}'
        ),
    }
    paths = {}
    for name, text in files.items():
        p = tmp_path / name
        p.write_text(text)
        paths[name] = str(p)

    commands = [
        ["count", "--graph", paths["fig.edges"], "--motif", paths["fig_motif.json"]],
        ["aut", "--motif", paths["fig_motif.json"]],
        ["expected", "--decoder", paths["inner.json"], "--motif", paths["tri_motif.json"],
         "--samples", "30", "--seed", "7"],
        ["verify", "--decoder", paths["table_u4.json"], "--motif", paths["tri_motif.json"],
         "--samples", "10", "--seed", "3"],
        ["significance", "--graph", paths["fig.edges"], "--decoder", paths["table_u4.json"],
         "--motif", paths["fig_motif.json"], "--mode", "total-variance",
         "--samples", "50", "--seed", "1"],
    ]
    mismatches = []
    for cmd in commands:
        outputs = set()
        for threads in ("1", "1", "2", "4"):
            proc = subprocess.run(
                [sys.executable, "-m", "motifexpect.cli", *cmd, "--threads", threads],
                capture_output=True, check=False,
            )
            outputs.add(proc.stdout)
        if len(outputs) != 1:
            mismatches.append(cmd[0])
    ok = not mismatches
    assert report("7 CLI reproducibility", ok,
                  f"5 commands x 4 runs, mismatches: {mismatches or 'none'}")
