"""Command-line front end.

Subcommands: count, expected, verify, significance, aut.  Reports are JSON
(default) or CSV on stdout; given identical inputs and seed the bytes are
identical across runs at any --threads setting.  Diagnostics go to stderr.

Exit codes: 0 success; 2 file/parse error (also argparse usage errors);
3 validation error; 4 enumeration size limit; 5 numerical flag
(zero-variance significance score).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__
from .errors import ParseError, SizeLimitError, ValidationError
from .estimate import (
    SIGNIFICANCE_MODES,
    estimate_expected_count,
    naive_estimate,
    significance,
)
from .graphs import DEFAULT_MAX_ARITY, load_graph, load_motif
from .mixture import PriorSpec, load_decoder, load_latents, sample_latent
from .motifs import automorphism_count, ordered_count, set_count
from .oracle import check_conjecture, exact_conditional_expectation
from .graphs import link_indices

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_SIZE_LIMIT = 4
EXIT_NUMERIC_FLAG = 5

DEFAULT_MAX_ORACLE_LINKS = 16
PROP1_TOLERANCE = 1e-9

_EPILOG = """\
exit codes:
  0  success
  2  file or parse error (also bad command-line usage)
  3  validation error (invariant or precondition violated)
  4  enumeration size limit exceeded
  5  numerical flag (zero-variance significance score)

defaults: --seed 0, --samples 100, --graphs-per-z 1, --threads 1,
--max-arity 5, --max-oracle-links 16.  Raising the two limits prints a cost
estimate to stderr before proceeding.
"""


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def _report(args, command: str, payload: dict, inputs: dict[str, str]) -> str:
    doc = {
        "command": command,
        "version": __version__,
        "inputs": {name: f"sha256:{_sha256(path)}" for name, path in inputs.items()},
    }
    doc.update(payload)
    if args.format == "csv":
        keys = list(payload)
        header = ",".join(keys)
        row = ",".join(json.dumps(payload[k]) for k in keys)
        return f"{header}\n{row}"
    return json.dumps(doc, sort_keys=True)


def _warn_arity_cost(args, k: int, n: int) -> None:
    if k > DEFAULT_MAX_ARITY:
        print(
            f"warning: arity {k} above the default {DEFAULT_MAX_ARITY}; "
            f"counting enumerates about {n ** k} tuples",
            file=sys.stderr,
        )


def _warn_oracle_cost(args, n: int, directed: bool) -> None:
    L = len(link_indices(n, directed)[0])
    if L > DEFAULT_MAX_ORACLE_LINKS:
        print(
            f"warning: L={L} links above the default {DEFAULT_MAX_ORACLE_LINKS}; "
            f"the oracle enumerates 2^{L} = {2 ** L} graphs",
            file=sys.stderr,
        )


def _cmd_count(args) -> int:
    motif = load_motif(args.motif, max_arity=args.max_arity)
    graph = load_graph(args.graph, args.directed)
    _warn_arity_cost(args, motif.k, graph.n)
    ordered = ordered_count(graph, motif, threads=args.threads)
    sets = set_count(graph, motif)
    aut = automorphism_count(motif)
    payload = {
        "ordered": ordered,
        "set": sets,
        "aut": aut,
        "identity_holds": ordered == aut * sets,
    }
    print(_report(args, "count", payload, {"graph": args.graph, "motif": args.motif}))
    return EXIT_OK


def _cmd_aut(args) -> int:
    motif = load_motif(args.motif, max_arity=args.max_arity)
    print(_report(args, "aut", {"aut": automorphism_count(motif)}, {"motif": args.motif}))
    return EXIT_OK


def _load_model(args):
    decoder = load_decoder(args.decoder)
    prior = PriorSpec(dim=decoder.latent_dim, seed=args.seed)
    return decoder, prior


def _cmd_expected(args) -> int:
    motif = load_motif(args.motif, max_arity=args.max_arity)
    decoder, prior = _load_model(args)
    _warn_arity_cost(args, motif.k, decoder.n)
    inputs = {"decoder": args.decoder, "motif": args.motif}
    latents = None
    if args.latents:
        latents = load_latents(args.latents)
        if latents[0].size != decoder.latent_dim:
            raise ValidationError(
                f"latents have dimension {latents[0].size}, decoder expects {decoder.latent_dim}"
            )
        inputs["latents"] = args.latents
    report = estimate_expected_count(
        decoder, prior, motif, args.samples, latents=latents, threads=args.threads
    )
    payload = {
        "mean": report.mean,
        "std_error": report.std_error,
        "samples": report.samples,
        "method": report.method,
        "seed": report.seed,
    }
    print(_report(args, "expected", payload, inputs))
    return EXIT_OK


def _cmd_verify(args) -> int:
    motif = load_motif(args.motif, max_arity=args.max_arity)
    decoder, prior = _load_model(args)
    _warn_oracle_cost(args, decoder.n, decoder.directed)
    z = sample_latent(prior, 1)[0]
    wg = decoder.decode(z)
    fast = float(ordered_count(wg, motif, threads=args.threads))
    exact = exact_conditional_expectation(wg, motif, max_links=args.max_oracle_links)
    diff = abs(fast - exact)
    conjecture = check_conjecture(motif, trials=args.samples, seed=args.seed)
    payload = {
        "fast_path": fast,
        "oracle": exact,
        "abs_difference": diff,
        "tolerance": PROP1_TOLERANCE,
        "expectation_matches": diff <= PROP1_TOLERANCE,
        "conjecture_holds": conjecture.holds,
        "conjecture_cases": conjecture.cases_checked,
        "aut": conjecture.aut,
        "seed": args.seed,
    }
    print(_report(args, "verify", payload, {"decoder": args.decoder, "motif": args.motif}))
    return EXIT_OK


def _cmd_significance(args) -> int:
    motif = load_motif(args.motif, max_arity=args.max_arity)
    graph = load_graph(args.graph, args.directed)
    decoder, prior = _load_model(args)
    inputs = {"graph": args.graph, "decoder": args.decoder, "motif": args.motif}
    latents = None
    if args.latents:
        latents = load_latents(args.latents)
        inputs["latents"] = args.latents
    report = significance(
        graph, decoder, prior, motif, args.mode, args.samples,
        graphs_per_z=args.graphs_per_z, latents=latents,
    )
    payload = {
        "observed": report.observed,
        "expected_mean": report.expected_mean,
        "expected_std": report.expected_std,
        "score": report.score,
        "undefined_score": report.score is None,
        "mode": report.mode,
        "samples": args.samples,
        "seed": args.seed,
    }
    print(_report(args, "significance", payload, inputs))
    return EXIT_NUMERIC_FLAG if report.score is None else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="motifexpect",
        description="Motif counts and their expectations under latent-variable link models.",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, graph=False, decoder=False, latents=False, samples=False, graphs_per_z=False):
        p.add_argument("--motif", required=True, help="motif JSON file")
        if graph:
            p.add_argument("--graph", required=True, help="edge-list file")
            p.add_argument("--directed", action="store_true",
                           help="treat the edge list as directed (default undirected)")
        if decoder:
            p.add_argument("--decoder", required=True, help="decoder JSON file")
        if latents:
            p.add_argument("--latents", help="latent vectors file, one per line (overrides prior sampling)")
        if samples:
            p.add_argument("--samples", type=int, default=100, help="latent samples (default 100)")
        if graphs_per_z:
            p.add_argument("--graphs-per-z", type=int, default=1,
                           help="graphs sampled per latent (default 1)")
        p.add_argument("--seed", type=int, default=0, help="root seed (default 0)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--threads", type=int, default=1,
                       help="tuple-enumeration workers; never changes results (default 1)")
        p.add_argument("--max-arity", type=int, default=DEFAULT_MAX_ARITY,
                       help=f"motif arity limit (default {DEFAULT_MAX_ARITY})")
        p.add_argument("--max-oracle-links", type=int, default=DEFAULT_MAX_ORACLE_LINKS,
                       help=f"oracle link limit (default {DEFAULT_MAX_ORACLE_LINKS}, hard cap 30)")

    p_count = sub.add_parser("count", help="ordered/set/automorphism counts on a binary graph")
    common(p_count, graph=True)
    p_count.set_defaults(func=_cmd_count)

    p_expected = sub.add_parser("expected", help="expected count under a decoder and latent prior")
    common(p_expected, decoder=True, latents=True, samples=True)
    p_expected.set_defaults(func=_cmd_expected)

    p_verify = sub.add_parser("verify", help="check the shortcut against the exhaustive oracle")
    common(p_verify, decoder=True, samples=True)
    p_verify.set_defaults(func=_cmd_verify)

    p_sig = sub.add_parser("significance", help="standardize an observed count against the model")
    common(p_sig, graph=True, decoder=True, latents=True, samples=True, graphs_per_z=True)
    p_sig.add_argument("--mode", choices=SIGNIFICANCE_MODES, default="conditional-spread",
                       help="spread of conditional means vs full sampled-count variance")
    p_sig.set_defaults(func=_cmd_significance)

    p_aut = sub.add_parser("aut", help="automorphism count of a motif")
    common(p_aut)
    p_aut.set_defaults(func=_cmd_aut)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE_LIMIT
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
