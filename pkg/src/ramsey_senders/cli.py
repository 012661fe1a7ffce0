"""Command-line front end.

Exit codes: 0 the relation or claim holds, 1 it does not (witness printed),
2 input error, 3 budget exhausted (verdict unknown).
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Optional, Sequence

from . import __version__
from .catalog import Catalog, CatalogError, canonical_json
from .coloring import (
    BudgetExhausted, Color, Goal, Mode, PinConflict, arrows, build_clauses, edge_key,
    find_good_coloring,
)
from .copies import enumerate_copies
from .graph import (
    Graph6Error, GraphError, classify_gamma, complete_graph, connected_components, cycle_graph,
    edge, edge_distance, identify, parse_graph6, path_graph, to_graph6, bridges,
)
from .pipeline import build_cyclic_minimal, is_ramsey_minimal
from .sender import (
    Polarity, SearchExhausted, SenderClaim, check_sender, minimize_sender, search_senders,
)

EXIT_HOLDS, EXIT_FAILS, EXIT_INPUT, EXIT_UNKNOWN = 0, 1, 2, 3
JSON_SCHEMA_VERSION = 1

_SHORTHAND = re.compile(r"^([KCP])(\d+)$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def parse_graph_arg(text: str):
    """graph6, or a shorthand ``K<n>``, ``C<n>``, ``P<n>`` (path on n vertices)."""
    m = _SHORTHAND.match(text.strip())
    if m:
        kind, n = m.group(1), int(m.group(2))
        return {"K": complete_graph, "C": cycle_graph, "P": path_graph}[kind](n)
    return parse_graph6(text)


def parse_goal(text: str, mode: str) -> Goal:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError("--goal expects two graphs separated by a comma")
    return Goal(parse_graph_arg(parts[0]), parse_graph_arg(parts[1]), Mode(mode))


def parse_edge_arg(text: str):
    try:
        u, v = (int(x) for x in re.split(r"[,-]", text.strip()))
    except ValueError:
        raise UsageError(f"bad edge {text!r}, expected u,v") from None
    return edge(u, v)


def parse_pin(text: str):
    try:
        key, color = text.split("=")
        return parse_edge_arg(key), Color.parse(color)
    except ValueError:
        raise UsageError(f"bad pin {text!r}, expected u-v=R or u-v=B") from None


def parse_orient(text: str):
    try:
        left, right = text.split("-")
        a, b = (int(x) for x in left.split(","))
        c, d = (int(x) for x in right.split(","))
    except ValueError:
        raise UsageError(f"bad orientation {text!r}, expected a,b-c,d") from None
    return (a, b), (c, d)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        payload = {"schema_version": JSON_SCHEMA_VERSION, **payload}
        if args.deterministic:
            print(canonical_json(payload))
        else:
            print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _catalog(args, certificate: dict) -> Optional[str]:
    if not getattr(args, "catalog", None):
        return None
    return Catalog(args.catalog).add(certificate, args.budget, args.deterministic)


def _coloring_text(c) -> str:
    return " ".join(f"{edge_key(e)}={c[e].code}" for e in c)


# -- commands ----------------------------------------------------------------


def cmd_arrows(args) -> int:
    host = parse_graph_arg(args.host)
    goal = parse_goal(args.goal, args.mode)
    if args.dimacs:
        with open(args.dimacs, "w") as fh:
            fh.write(build_clauses(host, goal).to_dimacs())
    v = arrows(host, goal, args.budget)
    payload = {"command": "arrows", "host": to_graph6(host), "goal": goal.to_json(),
               "arrows": v.arrows, "witness": None if v.witness is None else v.witness.to_json(),
               "nodes": v.nodes}
    text = "arrows" if v.arrows else "does not arrow; good coloring: " + _coloring_text(v.witness)
    _emit(args, payload, text)
    return EXIT_HOLDS if v.arrows else EXIT_FAILS


def cmd_good_coloring(args) -> int:
    host = parse_graph_arg(args.host)
    goal = parse_goal(args.goal, args.mode)
    pins = [parse_pin(p) for p in args.pin]
    c = find_good_coloring(host, goal, pins, args.budget)
    payload = {"command": "good-coloring", "host": to_graph6(host), "goal": goal.to_json(),
               "pins": {edge_key(e): col.code for e, col in pins},
               "coloring": None if c is None else c.to_json()}
    _emit(args, payload, "no good coloring" if c is None else _coloring_text(c))
    return EXIT_HOLDS if c is not None else EXIT_FAILS


def _claim(args) -> SenderClaim:
    if args.e is None or args.f is None:
        raise UsageError("sender commands need -e u,v and -f u,v")
    return SenderClaim(parse_graph_arg(args.host), parse_edge_arg(args.e), parse_edge_arg(args.f),
                       parse_goal(args.goal, args.mode), Polarity(args.polarity))


def cmd_sender_check(args) -> int:
    result = check_sender(_claim(args), args.budget)
    data = result.to_json()
    if result.ok:
        cid = _catalog(args, data)
        text = f"{result.claim.polarity.value} sender certified" + (f" (catalog {cid})" if cid else "")
    else:
        text = f"not a sender: condition {result.condition} fails: {result.reason}"
        if result.counterexample is not None:
            text += "\ncounterexample: " + _coloring_text(result.counterexample)
    _emit(args, {"command": "sender check", "result": data}, text)
    return EXIT_HOLDS if result.ok else EXIT_FAILS


def cmd_sender_minimize(args) -> int:
    result = check_sender(_claim(args), args.budget)
    if not result.ok:
        _emit(args, {"command": "sender minimize", "result": result.to_json()},
              f"not a sender: condition {result.condition} fails: {result.reason}")
        return EXIT_FAILS
    mini = minimize_sender(result, args.budget)
    cert = mini.certificate
    data = cert.to_json()
    cid = _catalog(args, data)
    payload = {"command": "sender minimize", "result": data,
               "vertex_map": {str(k): v for k, v in sorted(mini.vertex_map.items())},
               "removed_edges": [edge_key(x) for x in mini.removed_edges],
               "distance_before": _dist(mini.distance_before),
               "distance_after": _dist(mini.distance_after)}
    text = (f"minimal sender {to_graph6(cert.host)} e={edge_key(cert.claim.e)} "
            f"f={edge_key(cert.claim.f)} ({cert.host.n} vertices, {cert.host.m} edges)")
    if cid:
        text += f" catalog {cid}"
    _emit(args, payload, text)
    return EXIT_HOLDS


def _dist(d):
    return d if d != float("inf") else "inf"


def _parse_resume(text: Optional[str]):
    if not text:
        return None
    try:
        n, i = text.split(":")
        return int(n), int(i)
    except ValueError:
        raise UsageError("--resume expects ORDER:INDEX") from None


def cmd_sender_search(args) -> int:
    goal = parse_goal(args.goal, args.mode)
    certs = []
    checkpoint = None
    try:
        for cert in search_senders(goal, Polarity(args.polarity), args.max_vertices, args.budget,
                                   connected_only=args.connected_only,
                                   resume=_parse_resume(args.resume)):
            certs.append(cert)
            _catalog(args, cert.to_json())
    except SearchExhausted as exc:
        checkpoint = exc.checkpoint
    rows = [f"{to_graph6(c.host)} e={edge_key(c.claim.e)} f={edge_key(c.claim.f)}" for c in certs]
    payload = {"command": "sender search", "goal": goal.to_json(), "polarity": args.polarity,
               "max_vertices": args.max_vertices, "certificates": [c.to_json() for c in certs],
               "complete": checkpoint is None,
               "checkpoint": None if checkpoint is None else f"{checkpoint[0]}:{checkpoint[1]}"}
    text = "\n".join(rows + [f"{len(certs)} sender(s)"])
    if checkpoint is not None:
        text += f"; budget exhausted, resume with --resume {checkpoint[0]}:{checkpoint[1]}"
    _emit(args, payload, text)
    if checkpoint is not None:
        return EXIT_UNKNOWN
    return EXIT_HOLDS if certs else EXIT_FAILS


def cmd_identify(args) -> int:
    host = parse_graph_arg(args.host)
    if not args.orient:
        raise UsageError("identify needs --orient a,b-c,d")
    x, xp = parse_orient(args.orient)
    ident = identify(host, x, xp)
    payload = {"command": "identify", "host": to_graph6(host), "orientation": [list(x), list(xp)],
               "result": to_graph6(ident.graph), "result_edges": ident.graph.to_json(),
               "vertex_map": {str(k): v for k, v in sorted(ident.vertex_map.items())}}
    _emit(args, payload, to_graph6(ident.graph))
    return EXIT_HOLDS


def cmd_rminimal(args) -> int:
    host = parse_graph_arg(args.host)
    goal = parse_goal(args.goal, args.mode)
    result = is_ramsey_minimal(host, goal, args.budget)
    data = result.to_json()
    if result.ok:
        cid = _catalog(args, data)
        text = "Ramsey-minimal" + (f" (catalog {cid})" if cid else "")
    else:
        text = f"not Ramsey-minimal: {result.reason}"
    _emit(args, {"command": "rminimal check", "result": data}, text)
    return EXIT_HOLDS if result.ok else EXIT_FAILS


def cmd_pipeline_cycle(args) -> int:
    claim = _claim_negative(args)
    result = check_sender(claim, args.budget)
    if not result.ok:
        _emit(args, {"command": "pipeline cycle", "result": result.to_json()},
              f"not a negative sender: {result.reason}")
        return EXIT_FAILS
    out = build_cyclic_minimal(result, args.n, args.budget)
    data = out.to_json()
    if out.ok:
        cid = _catalog(args, data)
        text = (f"{to_graph6(out.result)} is Ramsey-minimal with cycle {list(out.cycle)}"
                + (f" (catalog {cid})" if cid else ""))
    else:
        text = "construction failed: " + "; ".join(
            f"{a['orientation']}: minimal={a['minimal']} cycle={a['cycle']}" for a in data["attempts"])
    _emit(args, {"command": "pipeline cycle", "result": data}, text)
    return EXIT_HOLDS if out.ok else EXIT_FAILS


def _claim_negative(args) -> SenderClaim:
    args.polarity = "negative"
    return _claim(args)


def cmd_graph_info(args) -> int:
    g = parse_graph_arg(args.host)
    comps = connected_components(g)
    info = {"graph6": to_graph6(g), "n": g.n, "m": g.m, "connected": len(comps) <= 1,
            "components": comps, "gamma": classify_gamma(g).value,
            "bridges": [edge_key(b) for b in bridges(g)]}
    if args.e and args.f:
        info["edge_distance"] = _dist(edge_distance(g, parse_edge_arg(args.e), parse_edge_arg(args.f)))
    if args.goal:
        goal = parse_goal(args.goal, args.mode)
        info["copies_g"] = len(enumerate_copies(g, goal.g, goal.induced))
        info["copies_h"] = len(enumerate_copies(g, goal.h, goal.induced))
    text = "\n".join(f"{k}: {v}" for k, v in info.items())
    _emit(args, {"command": "graph info", **info}, text)
    return EXIT_HOLDS


def cmd_catalog(args) -> int:
    if not args.catalog:
        raise UsageError("catalog commands need --catalog PATH")
    cat = Catalog(args.catalog)
    if args.action == "list":
        rows = [{"id": r["id"], "kind": r["kind"], "host": r["host"], "goal": r["goal"]}
                for r in cat.records()]
        _emit(args, {"command": "catalog list", "records": rows},
              "\n".join(f"{r['id'][:16]} {r['kind']:<15} {r['host']}" for r in rows))
        return EXIT_HOLDS
    if not args.id:
        raise UsageError(f"catalog {args.action} needs a record id")
    if args.action == "show":
        rec = cat.find(args.id)
        _emit(args, {"command": "catalog show", "record": rec}, json.dumps(rec, indent=2, sort_keys=True))
        return EXIT_HOLDS
    problems = cat.verify(args.id)
    _emit(args, {"command": "catalog verify", "id": args.id, "ok": not problems, "problems": problems},
          "OK" if not problems else "FAILED\n" + "\n".join(problems))
    return EXIT_HOLDS if not problems else EXIT_FAILS


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--goal", help="pattern pair G,H as graph6 or K3/C5/P4 shorthand")
    common.add_argument("--mode", choices=["plain", "strong"], default="plain")
    common.add_argument("--budget", type=int, default=None, help="search node budget")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--catalog", metavar="PATH", help="JSONL certificate catalog")
    common.add_argument("--deterministic", action="store_true",
                        help="byte-identical output across runs (no timestamps)")
    hosted = argparse.ArgumentParser(add_help=False, parents=[common])
    hosted.add_argument("--host", required=True, help="host graph (graph6 or shorthand)")
    signals = argparse.ArgumentParser(add_help=False)
    signals.add_argument("-e", metavar="U,V")
    signals.add_argument("-f", metavar="U,V")

    p = _Parser(prog="ramsey-senders", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("arrows", parents=[hosted], help="decide host -> (G,H)")
    a.add_argument("--dimacs", metavar="PATH", help="also write the clause system as DIMACS CNF")
    a.set_defaults(func=cmd_arrows)

    gc = sub.add_parser("good-coloring", parents=[hosted], help="find a good coloring")
    gc.add_argument("--pin", action="append", default=[], metavar="U-V=R|B")
    gc.set_defaults(func=cmd_good_coloring)

    s = sub.add_parser("sender", help="sender check|minimize|search")
    ssub = s.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name, func in (("check", cmd_sender_check), ("minimize", cmd_sender_minimize)):
        sp = ssub.add_parser(name, parents=[hosted, signals])
        sp.add_argument("--polarity", choices=["positive", "negative"], default="negative")
        sp.set_defaults(func=func)
    ss = ssub.add_parser("search", parents=[common])
    ss.add_argument("--polarity", choices=["positive", "negative"], default="negative")
    ss.add_argument("--max-vertices", type=int, default=4)
    ss.add_argument("--connected-only", action="store_true")
    ss.add_argument("--resume", metavar="ORDER:INDEX")
    ss.set_defaults(func=cmd_sender_search)

    i = sub.add_parser("identify", parents=[hosted], help="identify edge x onto x'")
    i.add_argument("--orient", metavar="A,B-C,D")
    i.set_defaults(func=cmd_identify)

    r = sub.add_parser("rminimal", help="rminimal check")
    rsub = r.add_subparsers(dest="action", required=True, parser_class=_Parser)
    rsub.add_parser("check", parents=[hosted]).set_defaults(func=cmd_rminimal)

    pl = sub.add_parser("pipeline", help="pipeline cycle")
    psub = pl.add_subparsers(dest="action", required=True, parser_class=_Parser)
    pc = psub.add_parser("cycle", parents=[hosted, signals])
    pc.add_argument("-n", type=int, default=3, help="requested cycle length")
    pc.set_defaults(func=cmd_pipeline_cycle)

    g = sub.add_parser("graph", help="graph info")
    gsub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    gsub.add_parser("info", parents=[hosted, signals]).set_defaults(func=cmd_graph_info)

    c = sub.add_parser("catalog", help="catalog list|show|verify")
    c.add_argument("action", choices=["list", "show", "verify"])
    c.add_argument("id", nargs="?")
    c.add_argument("--catalog", metavar="PATH")
    c.add_argument("--json", action="store_true")
    c.add_argument("--deterministic", action="store_true")
    c.set_defaults(func=cmd_catalog)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "goal", None) is None and args.func not in (
                cmd_identify, cmd_graph_info, cmd_catalog):
            raise UsageError("--goal is required")
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (GraphError, Graph6Error, PinConflict, CatalogError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExhausted as exc:
        print(f"unknown: {exc} ({exc.nodes} nodes)", file=sys.stderr)
        return EXIT_UNKNOWN
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
