"""Command-line front end.  Every subcommand prints one JSON object.

Exit codes: 0 success, 2 usage or input-file errors, 3 runtime errors
(instance, capacity).
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import genomics, io
from .anneal import AnnealConfig, solve_sa
from .errors import ConfigError, ParseError, QuboError
from .exact import solve_exact
from .model import QuboModel, Sample, SampleSet, from_ising
from .problems import (
    PartitionInstance,
    cancer_multi,
    cancer_single,
    decode_cut,
    decode_order_partition,
    decode_partition,
    decode_pathways,
    max_cut,
    min_vertex_cover,
    number_partitioning,
    order_partitioning,
    verify_cover,
)
from .qaoa import QaoaConfig, optimize

EXIT_USAGE = 2
EXIT_RUNTIME = 3


def _values(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _solver_args(parser: argparse.ArgumentParser, default: str) -> None:
    g = parser.add_argument_group("solver")
    g.add_argument("--solver", choices=("exact", "sa", "qaoa"), default=default)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--restarts", type=int, default=None,
                   help="SA restarts (default 10) or QAOA optimizer restarts (default 3)")
    g.add_argument("--sweeps", type=int, default=1000, help="SA sweeps per restart")
    g.add_argument("--p-layers", type=int, default=1, help="QAOA layers")
    g.add_argument("--shots", type=int, default=1000, help="QAOA measurement shots")
    g.add_argument("--maxiter", type=int, default=200, help="QAOA optimizer iterations")
    g.add_argument("--expectation", choices=("exact", "sampled"), default="exact")
    g.add_argument("--top-k", type=int, default=1, help="exact solver: samples to keep")
    g.add_argument("--pretty", action="store_true", help="indent the JSON output")


def _run_solver(model: QuboModel, args) -> tuple[Sample, dict, SampleSet | None]:
    if args.solver == "exact":
        result = solve_exact(model, top_k=args.top_k)
        return result.first, {}, result
    if args.solver == "sa":
        cfg = AnnealConfig(sweeps=args.sweeps, restarts=args.restarts or 10, seed=args.seed)
        result = solve_sa(model, cfg)
        return result.first, {}, result
    cfg = QaoaConfig(
        layers=args.p_layers,
        shots=args.shots,
        maxiter=args.maxiter,
        restarts=args.restarts or 3,
        expectation=args.expectation,
        seed=args.seed,
    )
    result = optimize(model, cfg)
    return result.best, {"qaoa": result.to_dict()}, None


def _head(command: str, args, best: Sample) -> dict:
    return {"command": command, "solver": args.solver, "energy": best.energy, "bitstring": best.bitstring}


def cmd_partition(args) -> dict:
    inst = PartitionInstance(tuple(args.values))
    best, extra, _ = _run_solver(number_partitioning(inst), args)
    set_a, set_b, diff = decode_partition(inst, best.assignment)
    return {**_head("partition", args, best), "set_a": set_a, "set_b": set_b, "difference": diff, **extra}


def cmd_maxcut(args) -> dict:
    g = io.read_graph(args.graph)
    best, extra, _ = _run_solver(max_cut(g), args)
    side_a, side_b, cut = decode_cut(g, best.assignment)
    return {**_head("maxcut", args, best), "set_a": sorted(side_a), "set_b": sorted(side_b),
            "cut_size": cut, **extra}


def cmd_vertex_cover(args) -> dict:
    g = io.read_graph(args.graph)
    best, extra, _ = _run_solver(min_vertex_cover(g, args.penalty), args)
    valid, uncovered = verify_cover(g, best.assignment)
    if not valid:
        print(f"warning: selected nodes leave {len(uncovered)} edge(s) uncovered; "
              "consider a larger --penalty", file=sys.stderr)
    cover = [i for i, b in enumerate(best.assignment) if b]
    return {**_head("vertex-cover", args, best), "cover": cover, "size": len(cover),
            "valid": valid, "uncovered": [list(e) for e in uncovered], **extra}


def cmd_genomics(args) -> dict:
    table = genomics.parse_mutations(args.mutations)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        inst = genomics.build_pathway_instance(table, args.alpha, args.pathways, args.alpha_orth)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    model = cancer_single(inst) if inst.k == 1 else cancer_multi(inst)
    best, extra, _ = _run_solver(model, args)
    return {**_head("genomics", args, best), "genes": list(inst.labels),
            "pathways": decode_pathways(inst, best.assignment), **extra}


def cmd_order_partition(args) -> dict:
    inst = io.read_order_partition(args.stocks, args.risks, args.a, args.b)
    best, extra, _ = _run_solver(order_partitioning(inst), args)
    set_a, set_b, gap, factor_gaps = decode_order_partition(inst, best.assignment)
    return {**_head("order-partition", args, best), "set_a": set_a, "set_b": set_b,
            "money_gap": gap, "factor_gaps": factor_gaps, **extra}


def cmd_solve(args) -> dict:
    if args.qubo:
        model = io.read_qubo(args.qubo)
    else:
        model = from_ising(io.read_ising(args.ising, from_paper_convention=args.paper_convention))
    best, extra, sampleset = _run_solver(model, args)
    if sampleset is None:
        sampleset = SampleSet((best,), model.fingerprint, {"solver": args.solver})
    return {**_head("solve", args, best), **sampleset.to_dict(), **extra}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qubo-forge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="number partitioning")
    p.add_argument("--values", type=_values, required=True, help="e.g. 1,5,5,11")
    _solver_args(p, "exact")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("maxcut", help="max-cut on an edge-list graph")
    p.add_argument("--graph", required=True)
    _solver_args(p, "exact")
    p.set_defaults(func=cmd_maxcut)

    p = sub.add_parser("vertex-cover", help="minimum vertex cover with an edge penalty")
    p.add_argument("--graph", required=True)
    p.add_argument("--penalty", type=float, default=2.0)
    _solver_args(p, "exact")
    p.set_defaults(func=cmd_vertex_cover)

    p = sub.add_parser("genomics", help="cancer pathways from a patient/gene TSV")
    p.add_argument("--mutations", required=True)
    p.add_argument("--alpha", type=float, default=1.0, help="coverage weight")
    p.add_argument("--alpha-orth", type=float, default=None,
                   help="one-pathway-per-gene weight for k >= 2 (default: --alpha)")
    p.add_argument("--pathways", type=int, default=1)
    _solver_args(p, "sa")
    p.set_defaults(func=cmd_genomics)

    p = sub.add_parser("order-partition", help="A/B split of stock orders")
    p.add_argument("--stocks", required=True)
    p.add_argument("--risks", required=True)
    p.add_argument("--a", type=float, default=1.0, help="money-balance weight")
    p.add_argument("--b", type=float, default=1.0, help="risk-balance weight")
    _solver_args(p, "sa")
    p.set_defaults(func=cmd_order_partition)

    p = sub.add_parser("solve", help="solve a QUBO or Ising JSON file without decoding")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--qubo")
    src.add_argument("--ising")
    p.add_argument("--paper-convention", action="store_true",
                   help="read the Ising file as H = -sum J s s - sum h s")
    _solver_args(p, "exact")
    p.set_defaults(func=cmd_solve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except (ParseError, ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuboError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    print(json.dumps(out, indent=2 if args.pretty else None))
    return 0


if __name__ == "__main__":
    sys.exit(main())
