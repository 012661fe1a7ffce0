"""Positive and negative senders: verification, minimization and bounded search.

A (G, H, e, f)-sender has good colorings with ``e`` Red and with ``e`` Blue,
and every good coloring gives ``e`` and ``f`` the same color (positive) or
different colors (negative). Checking one claim is four pinned queries: two
that must succeed (the witnesses) and two that must be exhausted.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Iterator, Optional

from . import __version__
from .audit import exhaustive_good_coloring
from .coloring import (
    BLUE, RED, BudgetExhausted, ClauseSystem, Color, EdgeColoring, Goal, Pin, SearchStats,
    build_clauses, edge_key, find_good_coloring, parse_edge_key, verify_coloring,
)
from .generate import DEFAULT_MAX_VERTICES, iter_graphs
from .graph import (
    Edge, Graph, GraphError, connected_components, delete_edge, edge, edge_distance,
    parse_graph6, remove_isolated, to_graph6,
)

log = logging.getLogger(__name__)


class Polarity(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


@dataclass(frozen=True)
class SenderClaim:
    host: Graph
    e: Edge
    f: Edge
    goal: Goal
    polarity: Polarity

    def __post_init__(self):
        e, f = edge(*self.e), edge(*self.f)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "f", f)
        if e == f:
            raise GraphError("signal edges must differ")
        for x in (e, f):
            if x not in self.host.edge_set:
                raise GraphError(f"signal edge {x} not in host")

    def forbidden_pins(self) -> list[tuple[Pin, Pin]]:
        """Pin pairs that contradict the polarity; each must have no good coloring."""
        if self.polarity is Polarity.NEGATIVE:
            combos = [(RED, RED), (BLUE, BLUE)]
        else:
            combos = [(RED, BLUE), (BLUE, RED)]
        return [(Pin(self.e, a), Pin(self.f, b)) for a, b in combos]

    def to_json(self) -> dict:
        return {
            "host": to_graph6(self.host),
            "host_edges": self.host.to_json(),
            "e": list(self.e),
            "f": list(self.f),
            "goal": self.goal.to_json(),
            "polarity": self.polarity.value,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SenderClaim":
        host = parse_graph6(data["host"])
        if "host_edges" in data and Graph.from_json(data["host_edges"]) != host:
            raise ValueError("claim host graph6 and edge list disagree")
        return cls(host, tuple(data["e"]), tuple(data["f"]), Goal.from_json(data["goal"]),
                   Polarity(data["polarity"]))


@dataclass(frozen=True)
class ExhaustedQuery:
    pins: tuple[Pin, ...]
    nodes: int
    exhausted: bool = True

    def to_json(self) -> dict:
        return {
            "pins": {edge_key(p.edge): p.color.code for p in self.pins},
            "outcome": "none",
            "exhausted": self.exhausted,
            "nodes": self.nodes,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ExhaustedQuery":
        if data.get("outcome") != "none":
            raise ValueError("forbidden query outcome must be 'none'")
        pins = tuple(Pin(parse_edge_key(k), Color.parse(v)) for k, v in data["pins"].items())
        return cls(pins, int(data.get("nodes", 0)), bool(data["exhausted"]))


@dataclass(frozen=True)
class SenderCertificate:
    claim: SenderClaim
    red_witness: EdgeColoring
    blue_witness: EdgeColoring
    forbidden_queries: tuple[ExhaustedQuery, ...]
    budget: Optional[int] = None
    nodes: int = 0

    ok = True

    @property
    def host(self) -> Graph:
        return self.claim.host

    def to_json(self) -> dict:
        return {
            "kind": "sender",
            "claim": self.claim.to_json(),
            "red_witness": self.red_witness.to_json(),
            "blue_witness": self.blue_witness.to_json(),
            "forbidden_queries": [q.to_json() for q in self.forbidden_queries],
            "engine_version": __version__,
            "budget": self.budget,
            "nodes": self.nodes,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SenderCertificate":
        claim = SenderClaim.from_json(data["claim"])
        return cls(
            claim,
            EdgeColoring.from_json(claim.host, data["red_witness"]),
            EdgeColoring.from_json(claim.host, data["blue_witness"]),
            tuple(ExhaustedQuery.from_json(q) for q in data["forbidden_queries"]),
            data.get("budget"),
            int(data.get("nodes", 0)),
        )


@dataclass(frozen=True)
class SenderFailure:
    claim: SenderClaim
    condition: int
    reason: str
    counterexample: Optional[EdgeColoring] = None

    ok = False

    def to_json(self) -> dict:
        return {
            "kind": "sender-failure",
            "claim": self.claim.to_json(),
            "condition": self.condition,
            "reason": self.reason,
            "counterexample": None if self.counterexample is None else self.counterexample.to_json(),
        }


def check_sender(claim: SenderClaim, budget: Optional[int] = None, *,
                 system: Optional[ClauseSystem] = None,
                 stats: Optional[SearchStats] = None,
                 backend: Optional[str] = None) -> SenderCertificate | SenderFailure:
    """Certify ``claim`` or report which sender condition fails.

    Raises :class:`BudgetExhausted` if the node budget is not enough.
    """
    host, goal = claim.host, claim.goal
    system = system or build_clauses(host, goal)
    stats = stats or SearchStats(budget)

    def query(*pins):
        return find_good_coloring(host, goal, pins, system=system, stats=stats, backend=backend)

    red_w = query(Pin(claim.e, RED))
    blue_w = query(Pin(claim.e, BLUE))
    if red_w is None and blue_w is None:
        return SenderFailure(claim, 1, "host has no good coloring")
    if red_w is None or blue_w is None:
        missing = "Red" if red_w is None else "Blue"
        return SenderFailure(claim, 3, f"no good coloring with signal edge {claim.e} {missing}",
                             red_w or blue_w)
    # A witness may already break the polarity.
    for w in (red_w, blue_w):
        same = w[claim.e] is w[claim.f]
        if same != (claim.polarity is Polarity.POSITIVE):
            return SenderFailure(claim, 2, "good coloring violates the polarity", w)
    queries = []
    for pins in claim.forbidden_pins():
        before = stats.nodes
        bad = query(*pins)
        if bad is not None:
            return SenderFailure(claim, 2, "good coloring violates the polarity", bad)
        queries.append(ExhaustedQuery(pins, stats.nodes - before))
    return SenderCertificate(claim, red_w, blue_w, tuple(queries), budget, stats.nodes)


def verify_sender_certificate(cert: SenderCertificate, max_nodes: Optional[int] = None) -> list[str]:
    """Re-check a certificate from its own data; returns a list of problems (empty = valid).

    Witnesses are scanned directly; the exhausted queries are re-established
    by chronological backtracking that shares no code with the clause kernel.
    """
    claim = cert.claim
    host, goal = claim.host, claim.goal
    problems = []
    for name, w, color in (("red_witness", cert.red_witness, RED),
                           ("blue_witness", cert.blue_witness, BLUE)):
        if w.host != host:
            problems.append(f"{name} colors a different host")
            continue
        if not verify_coloring(host, goal, w):
            problems.append(f"{name} is not a good coloring")
        if w[claim.e] is not color:
            problems.append(f"{name} does not give e the expected color")
    expected = {frozenset(p) for p in claim.forbidden_pins()}
    stored = {frozenset(q.pins) for q in cert.forbidden_queries}
    if stored != expected or len(cert.forbidden_queries) != len(expected):
        problems.append("forbidden queries do not match the polarity")
    for q in cert.forbidden_queries:
        if not q.exhausted:
            problems.append(f"query {q.to_json()['pins']} was not exhausted")
        elif exhaustive_good_coloring(host, goal, q.pins, max_nodes) is not None:
            problems.append(f"query {q.to_json()['pins']} has a good coloring")
    return problems


# -- minimization --------------------------------------------------------


@dataclass(frozen=True)
class MinimizedSender:
    certificate: SenderCertificate
    vertex_map: dict[int, int] = field(compare=False)
    removed_edges: tuple[Edge, ...]
    distance_before: float
    distance_after: float


def _relabel_claim(claim: SenderClaim, g: Graph) -> tuple[SenderClaim, dict[int, int]]:
    pruned, vmap = remove_isolated(g)
    e = edge(vmap[claim.e[0]], vmap[claim.e[1]])
    f = edge(vmap[claim.f[0]], vmap[claim.f[1]])
    return SenderClaim(pruned, e, f, claim.goal, claim.polarity), vmap


def minimize_sender(cert: SenderCertificate, budget: Optional[int] = None, *,
                    stats: Optional[SearchStats] = None,
                    backend: Optional[str] = None) -> MinimizedSender:
    """Greedily delete non-signal edges while the claim survives, then drop isolated vertices.

    Deletions are tried in lexicographic order and passes repeat until none
    succeeds; a final audit confirms every single-edge deletion breaks the
    sender. The returned graph is edge-minimal and has no isolated vertices.
    """
    claim = cert.claim
    stats = stats or SearchStats(budget)
    current = claim.host
    removed: list[Edge] = []
    progress = True
    while progress:
        progress = False
        for x in current.edges:
            if x in (claim.e, claim.f):
                continue
            trial = SenderClaim(delete_edge(current, x), claim.e, claim.f, claim.goal, claim.polarity)
            if check_sender(trial, stats=stats, backend=backend).ok:
                current = trial.host
                removed.append(x)
                progress = True
    final_claim, vmap = _relabel_claim(claim, current)
    result = check_sender(final_claim, stats=stats, backend=backend)
    if not result.ok:
        raise AssertionError(f"minimized graph is no longer a sender: {result.reason}")
    bad = minimality_audit(result, stats=stats, backend=backend)
    if bad:
        raise AssertionError(f"single-edge deletions {bad} still give senders")
    return MinimizedSender(
        result, vmap, tuple(removed),
        edge_distance(claim.host, claim.e, claim.f),
        edge_distance(final_claim.host, final_claim.e, final_claim.f),
    )


def minimality_audit(cert: SenderCertificate, *, stats: Optional[SearchStats] = None,
                     backend: Optional[str] = None) -> list[Edge]:
    """Non-signal edges whose deletion still leaves a sender (empty = edge-minimal)."""
    claim = cert.claim
    survivors = []
    for x in claim.host.edges:
        if x in (claim.e, claim.f):
            continue
        trial = SenderClaim(delete_edge(claim.host, x), claim.e, claim.f, claim.goal, claim.polarity)
        if check_sender(trial, stats=stats, backend=backend).ok:
            survivors.append(x)
    return survivors


# -- bounded search ------------------------------------------------------


class SearchExhausted(BudgetExhausted):
    """Budget ran out mid-search; ``checkpoint`` resumes at the unfinished host."""

    def __init__(self, checkpoint: tuple[int, int], nodes: int, found: int):
        super().__init__(f"budget exhausted at host {checkpoint} after {found} certificates", nodes)
        self.checkpoint = checkpoint
        self.found = found


def _host_senders(host: Graph, goal: Goal, polarity: Polarity, stats: SearchStats,
                  backend: Optional[str]) -> list[SenderCertificate]:
    system = build_clauses(host, goal)
    if not system.gmasks and not system.hmasks:
        return []
    first = find_good_coloring(host, goal, system=system, stats=stats, backend=backend)
    if first is None:
        return []
    pool = [first]
    # Signal edges must take both colors across good colorings.
    flexible = []
    for x in host.edges:
        if len({w[x] for w in pool}) == 2:
            flexible.append(x)
            continue
        other = BLUE if first[x] is RED else RED
        w = find_good_coloring(host, goal, [Pin(x, other)], system=system, stats=stats,
                               backend=backend)
        if w is not None:
            pool.append(w)
            flexible.append(x)
    want_same = polarity is Polarity.POSITIVE
    out = []
    for i, e in enumerate(flexible):
        for f in flexible[i + 1:]:
            if any((w[e] is w[f]) != want_same for w in pool):
                continue
            result = check_sender(SenderClaim(host, e, f, goal, polarity), system=system,
                                  stats=stats, backend=backend)
            if result.ok:
                out.append(result)
            elif result.counterexample is not None:
                pool.append(result.counterexample)
    return out


def search_senders(goal: Goal, polarity: Polarity, max_vertices: int,
                   budget: Optional[int] = None, *, connected_only: bool = False,
                   resume: Optional[tuple[int, int]] = None,
                   max_cap: int = DEFAULT_MAX_VERTICES,
                   stats: Optional[SearchStats] = None,
                   backend: Optional[str] = None) -> Iterator[SenderCertificate]:
    """Yield every sender certificate on hosts with at most ``max_vertices`` vertices.

    Hosts run over one representative per isomorphism class, ordered by
    vertex count then canonical order; signal pairs ``e < f`` lexicographically.
    Raises :class:`SearchExhausted` carrying a resumable checkpoint.
    """
    if max_vertices > max_cap:
        raise ValueError(f"max_vertices={max_vertices} exceeds the cap of {max_cap}")
    stats = stats or SearchStats(budget)
    found = 0
    for key, host in iter_graphs(max_vertices, min_vertices=2, connected_only=connected_only,
                                 start=resume):
        try:
            certs = _host_senders(host, goal, polarity, stats, backend)
        except BudgetExhausted:
            raise SearchExhausted(key, stats.nodes, found) from None
        for cert in certs:
            found += 1
            yield cert
    log.debug("sender search finished: %d certificates, %d nodes", found, stats.nodes)


def signal_component(claim: SenderClaim) -> Optional[list[int]]:
    """The component holding both signal edges, or None if they are split."""
    for comp in connected_components(claim.host):
        if claim.e[0] in comp:
            return comp if claim.f[0] in comp else None
    return None
