"""Command-line front end.

Exit codes: 0 ok/true, 1 false or mismatch, 2 bad input, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .corpus import graphs_up_to, random_graph
from .decomposition import (
    ROUTES,
    SdKePartition,
    algorithm1_sdke,
    hall_tutte_sd_with_pm,
    is_konig_egervary,
    larson_sdke,
    reduce,
    sdke,
)
from .errors import BudgetExceeded, GraphParseError, PreconditionError
from .graph import DEFAULT_ENUM_BUDGET, Graph, parse_graph
from .matching import enumerate_maximum_matchings, has_unique_perfect_matching, matching_number
from .sachs import enumerate_sachs, has_odd_cycle_factor, k_sachs_critical, odd_sachs_cover
from .structures import Certificate, certify_vertex, sd_oracle, verify_certificate

log = logging.getLogger("sdke")

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
BUDGET_ENV = "SDKE_BUDGET"
EXHAUSTIVE_CAP = 8
RANDOM_CAP = 10
PREDICATES = ("sd", "ke", "unique-pm", "1-sachs", "odd-factor", "hall-tutte")


@dataclass
class Report:
    command: str
    input: dict
    result: dict
    budget: int
    elapsed: float | None = None
    ok: bool = True

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls(**json.loads(text))


@dataclass
class _Outcome:
    result: dict
    ok: bool = True
    dot: str | None = None
    input: dict = field(default_factory=dict)


# -------------------------------------------------------------------- DOT

def to_dot(G: Graph, partition: SdKePartition | None = None, certificate: Certificate | None = None) -> str:
    lines = ["graph G {", "  node [shape=circle, style=filled, fillcolor=white];"]
    for v in G.vertices:
        color = "white"
        if partition is not None:
            color = "salmon" if v in partition.sd else "lightblue"
        if certificate is not None and v in certificate.vertices:
            color = "gold"
        lines.append(f'  {v} [fillcolor="{color}"];')
    highlight = certificate.edges() if certificate is not None else set()
    matched = set(certificate.matching.edges) if certificate is not None else set()
    for u, v in G.edges():
        attrs = []
        if (u, v) in highlight:
            attrs.append('color="red"')
        if (u, v) in matched:
            attrs.append("penwidth=3")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {u} -- {v}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------- commands

def _describe(G: Graph, path: str, fmt: str | None) -> dict:
    return {"path": path, "format": fmt or "auto", "n": G.n, "m": G.m, "graph6": G.to_graph6()}


def cmd_decompose(G: Graph, args) -> _Outcome:
    part = sdke(G, route=args.route, budget=args.budget)
    return _Outcome(part.to_json(), dot=to_dot(G, partition=part))


def cmd_check(G: Graph, args) -> _Outcome:
    pred = args.predicate
    out: dict = {"predicate": pred}
    if pred == "sd":
        part = sdke(G, budget=args.budget)
        out["value"] = not part.ke
        out["witness"] = {"ke": sorted(part.ke)} if part.ke else None
    elif pred == "ke":
        out["value"] = is_konig_egervary(G)
    elif pred == "unique-pm":
        unique, M = has_unique_perfect_matching(G)
        out["value"] = unique
        out["witness"] = M.to_json() if M is not None else None
    elif pred == "1-sachs":
        res = k_sachs_critical(G, 1)
        out["value"] = res.holds
        out["witness"] = sorted(res.witness) if res.witness is not None else None
    elif pred == "odd-factor":
        found, factor = has_odd_cycle_factor(G)
        out["value"] = found
        out["witness"] = factor.to_json() if factor is not None else None
    elif pred == "hall-tutte":
        res = hall_tutte_sd_with_pm(G)
        out["value"] = res.holds
        out["witness"] = sorted(res.witness) if res.witness is not None else None
        out["condition"] = res.condition
    else:
        raise ValueError(f"unknown predicate {pred!r}")
    out.setdefault("witness", None)
    return _Outcome(out, ok=bool(out["value"]))


def cmd_certify(G: Graph, args) -> _Outcome:
    v = args.vertex
    if not 0 <= v < G.n:
        raise PreconditionError(f"vertex {v} is not in 0..{G.n - 1}")
    cert = certify_vertex(G, v, budget=args.budget)
    if cert is None:
        return _Outcome({"vertex": v, "verdict": "KE", "certificate": None}, dot=to_dot(G))
    assert verify_certificate(G, cert), "emitted certificate failed verification"
    return _Outcome(
        {"vertex": v, "verdict": "SD", "certificate": cert.to_json()},
        dot=to_dot(G, certificate=cert),
    )


def cmd_reduce(G: Graph, args) -> _Outcome:
    R = reduce(G)
    return _Outcome({"gallaiEdmonds": R.ge.to_json(), "reduced": R.to_json()}, dot=to_dot(R.graph))


def cmd_matchings(G: Graph, args) -> _Outcome:
    ms = [M.to_json() for M in enumerate_maximum_matchings(G, args.budget)]
    return _Outcome({"mu": matching_number(G), "count": len(ms), "matchings": ms})


def cmd_sachs(G: Graph, args) -> _Outcome:
    subs = [S.to_json() for S in enumerate_sachs(G, args.budget)]
    return _Outcome({"count": len(subs), "sachs": subs, "oddCover": sorted(odd_sachs_cover(G))})


def compare_routes(G: Graph, budget: int | None) -> dict[str, list[int]]:
    """SD set according to every route that applies to ``G``."""
    sds = {
        "auto": sdke(G, budget=budget).sd,
        "oracle-J": sd_oracle(G, "J", budget),
        "oracle-T": sd_oracle(G, "T", budget),
        "reduction+oracle": sdke(G, "reduction+oracle", budget).sd,
    }
    unique, M = has_unique_perfect_matching(G)
    if M is not None:
        sds["larson"] = larson_sdke(G, budget).sd
    if unique:
        sds["algorithm1"] = algorithm1_sdke(G).sd
    return {k: sorted(v) for k, v in sds.items()}


def cmd_oracle_compare(args) -> _Outcome:
    max_n = args.max_n
    if args.count is None:
        if max_n > EXHAUSTIVE_CAP:
            raise BudgetExceeded("exhaustive oracle comparison (max-n)", EXHAUSTIVE_CAP)
        graphs = list(graphs_up_to(max_n, connected=True))
        mode = "exhaustive"
    else:
        if max_n > RANDOM_CAP:
            raise BudgetExceeded("random oracle comparison (max-n)", RANDOM_CAP)
        log.info("oracle-compare seed=%d count=%d max_n=%d", args.seed, args.count, max_n)
        rng = random.Random(args.seed)
        graphs = []
        for _ in range(args.count):
            n = rng.randint(1, max_n)
            graphs.append(random_graph(rng, n, rng.random()))
        mode = "random"
    mismatches = []
    for G in graphs:
        sds = compare_routes(G, args.budget)
        if len({tuple(v) for v in sds.values()}) > 1:
            mismatches.append({"graph6": G.to_graph6(), "edgeList": G.to_edge_list(), "sd": sds})
    result = {
        "mode": mode,
        "maxN": max_n,
        "seed": args.seed if mode == "random" else None,
        "graphs": len(graphs),
        "mismatches": mismatches,
        "pass": not mismatches,
    }
    return _Outcome(result, ok=not mismatches, input={"maxN": max_n, "count": args.count, "seed": args.seed})


COMMANDS = {
    "decompose": cmd_decompose,
    "check": cmd_check,
    "certify": cmd_certify,
    "reduce": cmd_reduce,
    "matchings": cmd_matchings,
    "sachs": cmd_sachs,
}


# ------------------------------------------------------------------ driver

def _default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_ENUM_BUDGET


def _read_graph(path: str, fmt: str | None) -> Graph:
    if fmt is None:
        suffix = Path(path).suffix
        fmt = {".g6": "g6", ".el": "el"}.get(suffix)
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_graph(text, fmt)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the full report envelope")
    common.add_argument("--dot", action="store_true", help="print Graphviz DOT instead of JSON")
    common.add_argument("--budget", type=int, default=None,
                        help=f"enumeration budget (default ${BUDGET_ENV} or {DEFAULT_ENUM_BUDGET})")
    common.add_argument("--timing", action="store_true", help="include wall-clock time in the report")

    graph_args = argparse.ArgumentParser(add_help=False)
    graph_args.add_argument("path", help="graph file, or - for stdin")
    graph_args.add_argument("--format", choices=("el", "g6"), default=None)

    parser = argparse.ArgumentParser(prog="sdke", description="SD-KE decomposition toolkit")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common, graph_args], help="compute (SD, KE)")
    p.add_argument("--route", choices=ROUTES, default=None)
    p = sub.add_parser("check", parents=[common, graph_args], help="test a graph property")
    p.add_argument("predicate", choices=PREDICATES)
    p = sub.add_parser("certify", parents=[common, graph_args], help="witness a vertex in SD")
    p.add_argument("vertex", type=int)
    sub.add_parser("reduce", parents=[common, graph_args], help="reduced form R(G)")
    sub.add_parser("matchings", parents=[common, graph_args], help="list maximum matchings")
    sub.add_parser("sachs", parents=[common, graph_args], help="list Sachs subgraphs")
    p = sub.add_parser("oracle-compare", parents=[common], help="cross-check every route")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.budget is None:
        args.budget = _default_budget()
    start = time.perf_counter()
    try:
        if args.command == "oracle-compare":
            outcome = cmd_oracle_compare(args)
        else:
            G = _read_graph(args.path, args.format)
            outcome = COMMANDS[args.command](G, args)
            outcome.input = _describe(G, args.path, args.format)
    except (GraphParseError, OSError, PreconditionError) as exc:
        print(f"sdke: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"sdke: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    elapsed = round(time.perf_counter() - start, 6) if args.timing else None

    if args.dot:
        if outcome.dot is None:
            print(f"sdke: --dot is not available for {args.command}", file=sys.stderr)
            return EXIT_INPUT
        sys.stdout.write(outcome.dot)
    elif args.json:
        report = Report(args.command, outcome.input, outcome.result, args.budget, elapsed, outcome.ok)
        print(report.to_json())
    else:
        print(json.dumps(outcome.result, sort_keys=True))
    return EXIT_OK if outcome.ok else EXIT_FALSE


if __name__ == "__main__":
    sys.exit(main())
