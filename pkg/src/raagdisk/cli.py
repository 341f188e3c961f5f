"""Command line front end.

Subcommands cover the enumeration (enumerate-cases), the obstruction
analysis (check-embedding), certificate checking (verify-certificate),
group-theoretic verification (raag-verify, kernel-search), graph
predicates (graph-props) and the embeddability table of the built-in
commuting-pair graph (gamma1-table).

Exit codes: 0 success / verified, 1 verification failure (certificate
mismatch, kernel witness found, relator broken), 2 invalid input,
3 search budget exceeded.  JSON output is deterministic (sorted keys,
two-space indent) and identical for any worker count.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import decompositions, embeddings, obstructions, raag
from .errors import BudgetExceededError, InputError
from .graphs import (
    SimplicialGraph,
    graph_from_json,
    has_thick_stars,
    is_triangle_free,
    max_clique_size,
    standard_graph,
)
from .surfaces import HandlebodyType, Mode, complexity, parse_gn

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_BUDGET_EXCEEDED = 3


def _resolve_graph(spec: str) -> SimplicialGraph:
    """Named graphs win over paths; anything else is a JSON file."""
    try:
        return standard_graph(spec)
    except InputError:
        pass
    try:
        with open(spec) as f:
            data = json.load(f)
    except OSError as e:
        raise InputError(f"cannot read graph {spec!r}: {e}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"graph file {spec!r} is not valid JSON: {e}") from None
    return graph_from_json(data)


def _resolve_certificate(spec: str) -> embeddings.CurveCertificate:
    if spec in embeddings.BUILTIN_CERTIFICATE_NAMES:
        return embeddings.builtin_certificate(spec)
    try:
        return embeddings.load_certificate(spec)
    except OSError as e:
        raise InputError(f"cannot read certificate {spec!r}: {e}") from None
    except json.JSONDecodeError as e:
        raise InputError(
            f"certificate file {spec!r} is not valid JSON: {e}"
        ) from None


def _load_hom(path: str):
    try:
        return raag.load_hom(path)
    except OSError as e:
        raise InputError(f"cannot read homomorphism {path!r}: {e}") from None
    except json.JSONDecodeError as e:
        raise InputError(
            f"homomorphism file {path!r} is not valid JSON: {e}"
        ) from None


def _parse_mode(text: str) -> Mode:
    try:
        return Mode(text)
    except ValueError:
        raise InputError(
            f"mode must be 'handlebody' or 'surface', got {text!r}"
        ) from None


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        out = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        out = "\n".join(text_lines) + "\n"
    if args.out:
        # relative --out paths land in RAAGDISK_OUT_DIR when that is set
        target = args.out
        if not os.path.isabs(target):
            target = os.path.join(os.environ.get("RAAGDISK_OUT_DIR", ""),
                                  target)
        with open(target, "w") as f:
            f.write(out)
    else:
        sys.stdout.write(out)


def _pool_mapper(workers: int):
    if workers <= 1:
        return None, map
    pool = ThreadPoolExecutor(max_workers=workers)
    return pool, pool.map


def _find_cycle(graph: SimplicialGraph, cycle_arg: str | None):
    if cycle_arg is not None:
        cycle = tuple(cycle_arg.split(","))
        if len(cycle) != 4:
            raise InputError(f"--cycle expects four labels, got {cycle_arg!r}")
        obstructions.derive_constraints(graph, cycle)  # validates
        return cycle
    default = ("a", "b", "c", "d")
    if all(graph.has_vertex(v) for v in default):
        try:
            obstructions.derive_constraints(graph, default)
            return default
        except InputError:
            pass
    from .graphs import find_induced_embedding

    hit = find_induced_embedding(standard_graph("C4"), graph)
    if hit is None:
        raise InputError(
            "the graph contains no induced four-cycle; the case analysis "
            "does not apply"
        )
    m = hit.as_dict()
    return (m["a"], m["b"], m["c"], m["d"])


# ------------------------------------------------------------ subcommands

def _cmd_enumerate_cases(args) -> int:
    mode = _parse_mode(args.mode)
    pool, mapper = _pool_mapper(args.workers)
    try:
        if pool is not None:
            # warm the per-ambient enumeration cache in parallel; the
            # catalog then groups the identical cached tuples
            cap = (args.xi + 3) // 3
            from .surfaces import surfaces_with_complexity

            ambients = surfaces_with_complexity(args.xi, cap)
            list(mapper(
                lambda a: decompositions.enumerate_decompositions(a, mode),
                ambients,
            ))
        entries = decompositions.case_catalog(args.xi, mode)
    finally:
        if pool is not None:
            pool.shutdown()
    payload = {
        "xi": args.xi,
        "mode": mode.value,
        "case_count": len(entries),
        "cases": decompositions.catalog_to_json(entries),
    }
    lines = [f"complexity {args.xi}, {mode.value} mode: {len(entries)} cases"]
    for e in entries:
        label = e.label if e.label is not None else "(unlabeled)"
        ambients = ", ".join(f"({g},{n})" for g, n in
                             ((a.genus, a.marks) for a in e.ambients))
        lines.append(f"  {label:12s} {str(e.key):40s} ambients: {ambients}")
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_check_embedding(args) -> int:
    graph = _resolve_graph(args.graph)
    g, n = parse_gn(args.handlebody)
    h = HandlebodyType(g, n)
    xi = complexity(h)
    mode = _parse_mode(args.mode)

    if xi <= 2:
        decision = embeddings.small_complexity_decision(graph, h)
        payload = {
            "handlebody": [g, n],
            "analysis": "small_complexity",
            "decision": decision.value,
        }
        lines = [f"H_{{{g},{n}}} (complexity {xi}): {decision.value}"]
        _emit(args, payload, lines)
        return EXIT_OK

    if xi > 5:
        payload = {
            "handlebody": [g, n],
            "analysis": "out_of_range",
            "verdict": "inconclusive",
            "reason": "complexity above 5 is outside the case analysis; "
                      "positive certificates may still apply",
        }
        _emit(args, payload, [payload["reason"]])
        return EXIT_OK

    cycle = _find_cycle(graph, args.cycle)
    pool, mapper = _pool_mapper(args.workers)
    try:
        result = obstructions.check_all_cases(graph, cycle, h, mode, mapper)
    finally:
        if pool is not None:
            pool.shutdown()
    payload = {
        "analysis": "case_analysis",
        "cycle": list(cycle),
        **obstructions.analysis_to_json(result),
    }
    lines = [f"H_{{{g},{n}}}: {result.verdict.value}", f"  {result.reason}"]
    for r in result.reports:
        label = r.label if r.label is not None else "(unlabeled)"
        lines.append(f"  {label:12s} {str(r.key):40s} {r.verdict.value}")
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_verify_certificate(args) -> int:
    cert = _resolve_certificate(args.cert)
    graph = _resolve_graph(args.graph)
    report = embeddings.verify_certificate(cert, graph)
    payload = {
        "certificate": args.cert,
        "graph": args.graph,
        "handlebody": [cert.handlebody.genus, cert.handlebody.marks],
        **embeddings.certificate_report_to_json(report),
    }
    if report.ok:
        lines = [
            f"certificate verifies against {args.graph} "
            f"(matched by {report.matched_by})"
        ]
    else:
        lines = ["certificate does NOT verify:"] + [
            f"  {m}" for m in report.mismatches
        ]
    _emit(args, payload, lines)
    return EXIT_OK if report.ok else EXIT_VERIFICATION_FAILED


def _cmd_raag_verify(args) -> int:
    verification = _load_hom(args.hom)
    payload = {
        "ok": verification.ok,
        "failed_edge": list(verification.failed_edge)
        if verification.failed_edge
        else None,
        "failed_commutator": str(verification.failed_commutator)
        if verification.failed_commutator
        else None,
    }
    _emit(args, payload, [verification.describe()])
    return EXIT_OK if verification.ok else EXIT_VERIFICATION_FAILED


def _cmd_kernel_search(args) -> int:
    verification = _load_hom(args.hom)
    if not verification.ok:
        _emit(args, {"ok": False, "error": verification.describe()},
              [verification.describe()])
        return EXIT_VERIFICATION_FAILED
    try:
        witness = raag.kernel_ball_search(
            verification.hom, args.max_len, args.budget
        )
    except BudgetExceededError as e:
        payload = {"witness": None, "exhausted": False,
                   "progress": dict(e.progress)}
        _emit(args, payload,
              [f"budget exceeded before the ball was exhausted: {e}"])
        return EXIT_BUDGET_EXCEEDED
    if witness is None:
        payload = {"witness": None, "exhausted": True, "max_len": args.max_len}
        lines = [
            f"no nontrivial kernel element of normal-form length <= "
            f"{args.max_len}"
        ]
        _emit(args, payload, lines)
        return EXIT_OK
    payload = {"witness": str(witness), "exhausted": True,
               "max_len": args.max_len}
    _emit(args, payload, [f"kernel witness found: {witness}"])
    return EXIT_VERIFICATION_FAILED


def _cmd_graph_props(args) -> int:
    graph = _resolve_graph(args.graph)
    payload = {
        "vertices": len(graph.vertices),
        "edges": len(graph.edges),
        "triangle_free": is_triangle_free(graph),
        "max_clique": max_clique_size(graph),
    }
    lines = [
        f"vertices: {payload['vertices']}",
        f"edges: {payload['edges']}",
        f"triangle-free: {payload['triangle_free']}",
        f"max clique: {payload['max_clique']}",
    ]
    if args.thick_stars is not None:
        witnesses = has_thick_stars(graph, args.thick_stars)
        if witnesses is None:
            payload["thick_stars"] = None
            lines.append(f"{args.thick_stars}-thick stars: missing")
        else:
            payload["thick_stars"] = {
                v: {
                    "clique1": sorted(w.clique1),
                    "clique2": sorted(w.clique2),
                }
                for v, w in witnesses.items()
            }
            lines.append(f"{args.thick_stars}-thick stars: all vertices")
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_gamma1_table(args) -> int:
    rows = []
    for g in range(args.max_genus + 1):
        n = 0
        while complexity(HandlebodyType(g, n)) <= args.max_xi:
            rows.append(HandlebodyType(g, n))
            n += 1
    pool, mapper = _pool_mapper(args.workers)
    try:
        answers = list(mapper(embeddings.gamma1_embeddability, rows))
    finally:
        if pool is not None:
            pool.shutdown()
    payload = {
        "max_genus": args.max_genus,
        "max_xi": args.max_xi,
        "rows": [embeddings.embeddability_to_json(a) for a in answers],
    }
    lines = []
    for a in answers:
        h = a.handlebody
        mark = "yes" if a.embeddable else "no "
        lines.append(
            f"H_{{{h.genus},{h.marks}}} xi={complexity(h)}: {mark} "
            f"({a.justification[0]})"
        )
    _emit(args, payload, lines)
    return EXIT_OK


# ------------------------------------------------------------ entry point

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="raagdisk",
        description="Disk-graph embedding toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, workers=False):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", help="write output to this file")
        if workers:
            p.add_argument("--workers", type=int, default=1,
                           help="thread pool size; output is identical "
                                "for any value")

    p = sub.add_parser("enumerate-cases",
                       help="catalog boundary decompositions at a complexity")
    p.add_argument("--xi", type=int, required=True)
    p.add_argument("--mode", default="handlebody")
    common(p, workers=True)
    p.set_defaults(func=_cmd_enumerate_cases)

    p = sub.add_parser("check-embedding",
                       help="run the case analysis for a graph and handlebody")
    p.add_argument("--graph", required=True, help="graph name or JSON file")
    p.add_argument("--handlebody", required=True, help="g,n")
    p.add_argument("--cycle", help="four comma-separated vertex labels")
    p.add_argument("--mode", default="handlebody")
    common(p, workers=True)
    p.set_defaults(func=_cmd_check_embedding)

    p = sub.add_parser("verify-certificate",
                       help="check a disk certificate against a graph")
    p.add_argument("--cert", required=True,
                   help="built-in certificate name or JSON file")
    p.add_argument("--graph", required=True)
    common(p)
    p.set_defaults(func=_cmd_verify_certificate)

    p = sub.add_parser("raag-verify",
                       help="verify a homomorphism between graph groups")
    p.add_argument("--hom", required=True, help="homomorphism JSON file")
    common(p)
    p.set_defaults(func=_cmd_raag_verify)

    p = sub.add_parser("kernel-search",
                       help="search the kernel ball of a verified homomorphism")
    p.add_argument("--hom", required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--budget", type=int, default=None,
                   help="bound on visited normal forms")
    common(p)
    p.set_defaults(func=_cmd_kernel_search)

    p = sub.add_parser("graph-props", help="basic graph predicates")
    p.add_argument("--graph", required=True)
    p.add_argument("--thick-stars", type=int, default=None)
    common(p)
    p.set_defaults(func=_cmd_graph_props)

    p = sub.add_parser("gamma1-table",
                       help="embeddability of the commuting-pair graph")
    p.add_argument("--max-genus", type=int, default=3)
    p.add_argument("--max-xi", type=int, default=6)
    common(p, workers=True)
    p.set_defaults(func=_cmd_gamma1_table)

    return parser


def main(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad usage, matching the input-error code
        return int(e.code or 0)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except BudgetExceededError as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET_EXCEEDED


def main_entry() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    main_entry()
