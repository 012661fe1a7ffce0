"""Ramsey-minimality certificates and the identification construction.

A minimal negative sender F with far-apart signal edges e, f is turned into
F[e~f]; the result is checked directly to arrow (G, H), to lose that property
after any single edge deletion, and to contain a long cycle. Nothing about
the result is inherited from the sender: every claim is recomputed.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .audit import exhaustive_good_coloring
from .coloring import (
    ArrowVerdict, EdgeColoring, Goal, SearchStats, arrows, edge_key, find_good_coloring,
    parse_edge_key, verify_coloring,
)
from .graph import (
    Edge, GammaClass, Graph, GraphError, Identification, classify_gamma, delete_edge,
    edge_distance, find_cycle_at_least, identify, is_cycle, parse_graph6, shortest_path,
    to_graph6,
)
from .sender import Polarity, SenderCertificate, minimality_audit

log = logging.getLogger(__name__)


# -- Ramsey minimality -----------------------------------------------------


@dataclass(frozen=True)
class MinimalityCertificate:
    host: Graph
    goal: Goal
    arrows_nodes: int
    per_edge_witness: dict[Edge, EdgeColoring] = field(compare=False)
    budget: Optional[int] = None

    ok = True

    def to_json(self) -> dict:
        return {
            "kind": "minimal",
            "host": to_graph6(self.host),
            "goal": self.goal.to_json(),
            "arrows_attestation": {"outcome": "none", "exhausted": True, "nodes": self.arrows_nodes},
            "per_edge_witness": [
                {"edge": edge_key(x), "coloring": self.per_edge_witness[x].to_json()}
                for x in self.host.edges
            ],
            "engine_version": __version__,
            "budget": self.budget,
        }

    @classmethod
    def from_json(cls, data: dict) -> "MinimalityCertificate":
        host = parse_graph6(data["host"])
        att = data["arrows_attestation"]
        if att.get("outcome") != "none" or not att.get("exhausted"):
            raise ValueError("arrowing attestation must be an exhausted 'none'")
        witnesses = {}
        for item in data["per_edge_witness"]:
            x = parse_edge_key(item["edge"])
            witnesses[x] = EdgeColoring.from_json(delete_edge(host, x), item["coloring"])
        return cls(host, Goal.from_json(data["goal"]), int(att.get("nodes", 0)), witnesses,
                   data.get("budget"))


@dataclass(frozen=True)
class MinimalityFailure:
    host: Graph
    goal: Goal
    reason: str
    coloring: Optional[EdgeColoring] = None
    edge: Optional[Edge] = None

    ok = False

    def to_json(self) -> dict:
        return {
            "kind": "minimal-failure",
            "host": to_graph6(self.host),
            "goal": self.goal.to_json(),
            "reason": self.reason,
            "coloring": None if self.coloring is None else self.coloring.to_json(),
            "edge": None if self.edge is None else edge_key(self.edge),
        }


def is_ramsey_minimal(host: Graph, goal: Goal, budget: Optional[int] = None,
                      backend: Optional[str] = None) -> MinimalityCertificate | MinimalityFailure:
    """Certify that ``host`` arrows ``goal`` and no single-edge deletion does.

    Deleting isolated vertices never changes colorings and every proper
    subgraph misses some edge, so single-edge deletions suffice.
    """
    stats = SearchStats(budget)
    before = stats.nodes
    good = find_good_coloring(host, goal, stats=stats, backend=backend)
    if good is not None:
        return MinimalityFailure(host, goal, "host has a good coloring", coloring=good)
    arrows_nodes = stats.nodes - before
    witnesses = {}
    for x in host.edges:
        sub = delete_edge(host, x)
        w = find_good_coloring(sub, goal, stats=stats, backend=backend)
        if w is None:
            return MinimalityFailure(host, goal, f"host minus {x} still arrows", edge=x)
        witnesses[x] = w
    return MinimalityCertificate(host, goal, arrows_nodes, witnesses, budget)


def verify_minimality_certificate(cert: MinimalityCertificate,
                                  max_nodes: Optional[int] = None) -> list[str]:
    """Problems found when re-checking ``cert`` from its own data (empty = valid)."""
    problems = []
    host, goal = cert.host, cert.goal
    if set(cert.per_edge_witness) != set(host.edges):
        problems.append("per-edge witnesses do not cover exactly the host edges")
    for x, w in sorted(cert.per_edge_witness.items()):
        sub = delete_edge(host, x) if x in host.edge_set else None
        if sub is None or w.host != sub:
            problems.append(f"witness for {x} colors the wrong graph")
        elif not verify_coloring(sub, goal, w):
            problems.append(f"witness for {x} is not a good coloring of host minus {x}")
    if exhaustive_good_coloring(host, goal, (), max_nodes) is not None:
        problems.append("host has a good coloring")
    return problems


# -- identification checks --------------------------------------------------


def orientation(cert: SenderCertificate, index: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Oriented pair for identification: 0 maps (a->c, b->d), 1 maps (b->c, a->d)."""
    (a, b), f = cert.claim.e, cert.claim.f
    if index == 0:
        return (a, b), f
    if index == 1:
        return (b, a), f
    raise ValueError("orientation index must be 0 or 1")


def goals_in_gamma3(goal: Goal) -> bool:
    return classify_gamma(goal.g) is GammaClass.GAMMA3 and classify_gamma(goal.h) is GammaClass.GAMMA3


def _require_negative_disjoint(cert: SenderCertificate) -> None:
    claim = cert.claim
    if claim.polarity is not Polarity.NEGATIVE:
        raise GraphError("identification construction needs a negative sender")
    if set(claim.e) & set(claim.f):
        raise GraphError(f"signal edges {claim.e} and {claim.f} share a vertex")


@dataclass(frozen=True)
class IdentifiedCheck:
    certificate: SenderCertificate
    orientation: tuple[tuple[int, int], tuple[int, int]]
    identification: Identification
    verdict: ArrowVerdict
    in_gamma3: bool
    signal_distance: float

    @property
    def arrows(self) -> bool:
        return self.verdict.arrows

    @property
    def falsification(self) -> bool:
        """Goals in the triangle/3-connected class, yet the identified graph has a good coloring."""
        return self.in_gamma3 and not self.verdict.arrows

    def to_json(self) -> dict:
        w = self.verdict.witness
        return {
            "kind": "identified-arrows",
            "sender": self.certificate.to_json(),
            "orientation": [list(self.orientation[0]), list(self.orientation[1])],
            "result": to_graph6(self.identification.graph),
            "arrows": self.verdict.arrows,
            "witness": None if w is None else w.to_json(),
            "goals_in_gamma3": self.in_gamma3,
            "signal_distance": _json_distance(self.signal_distance),
            "falsification": self.falsification,
        }


def _json_distance(d: float):
    return d if d != float("inf") else "inf"


def identified_arrows_check(cert: SenderCertificate, orientation_index: int = 0,
                            budget: Optional[int] = None,
                            backend: Optional[str] = None) -> IdentifiedCheck:
    """Decide whether ``F[e~f]`` arrows the goal for one orientation."""
    _require_negative_disjoint(cert)
    x, xp = orientation(cert, orientation_index)
    ident = identify(cert.host, x, xp)
    verdict = arrows(ident.graph, cert.claim.goal, budget, backend)
    gamma = goals_in_gamma3(cert.claim.goal)
    if not gamma:
        log.warning("goal patterns are not both 3-connected or triangles; result is informational only")
    d = edge_distance(cert.host, cert.claim.e, cert.claim.f)
    check = IdentifiedCheck(cert, (x, xp), ident, verdict, gamma, d)
    if check.falsification:
        log.warning("identified sender has a good coloring: %s", check.to_json()["result"])
    return check


# -- cyclic minimal construction ----------------------------------------------


@dataclass(frozen=True)
class CycleSeed:
    """Shortest u-v path between the signal edges pushed through the identification."""

    path: tuple[int, ...]
    merged: bool
    cycle: tuple[int, ...]


def seed_cycle(cert: SenderCertificate, ident: Identification) -> Optional[CycleSeed]:
    claim = cert.claim
    path = shortest_path(cert.host, claim.e, claim.f)
    if path is None:
        return None
    mapped = [ident.image(v) for v in path]
    merged = mapped[0] == mapped[-1]
    cycle = mapped[:-1] if merged else mapped
    return CycleSeed(tuple(path), merged, tuple(cycle))


@dataclass(frozen=True)
class OrientationAttempt:
    orientation: tuple[tuple[int, int], tuple[int, int]]
    result: Graph
    minimality: MinimalityCertificate | MinimalityFailure
    cycle: Optional[tuple[int, ...]]
    seed: Optional[CycleSeed]

    @property
    def ok(self) -> bool:
        return self.minimality.ok and self.cycle is not None

    def summary(self) -> dict:
        return {
            "orientation": [list(self.orientation[0]), list(self.orientation[1])],
            "result": to_graph6(self.result),
            "minimal": self.minimality.ok,
            "minimality_reason": None if self.minimality.ok else self.minimality.reason,
            "cycle": None if self.cycle is None else list(self.cycle),
        }


@dataclass(frozen=True)
class CyclicMinimalResult:
    source: SenderCertificate
    orientation: tuple[tuple[int, int], tuple[int, int]]
    identification: Identification
    minimality: MinimalityCertificate
    cycle: tuple[int, ...]
    requested: int
    seed: Optional[CycleSeed]
    attempts: tuple[OrientationAttempt, ...]

    ok = True

    @property
    def result(self) -> Graph:
        return self.identification.graph

    def to_json(self) -> dict:
        seed = self.seed
        return {
            "kind": "cyclic-minimal",
            "source": self.source.to_json(),
            "orientation": [list(self.orientation[0]), list(self.orientation[1])],
            "result": to_graph6(self.result),
            "vertex_map": {str(k): v for k, v in sorted(self.identification.vertex_map.items())},
            "minimality": self.minimality.to_json(),
            "cycle": list(self.cycle),
            "requested_length": self.requested,
            "seed": None if seed is None else {
                "path": list(seed.path), "merged": seed.merged, "cycle": list(seed.cycle)},
            "attempts": [a.summary() for a in self.attempts],
            "engine_version": __version__,
        }


@dataclass(frozen=True)
class CyclicFailure:
    source: SenderCertificate
    requested: int
    attempts: tuple[OrientationAttempt, ...]
    in_gamma3: bool

    ok = False

    def to_json(self) -> dict:
        return {
            "kind": "cyclic-failure",
            "source": self.source.to_json(),
            "requested_length": self.requested,
            "goals_in_gamma3": self.in_gamma3,
            "signal_distance": _json_distance(
                edge_distance(self.source.host, self.source.claim.e, self.source.claim.f)),
            "attempts": [a.summary() for a in self.attempts],
        }


def build_cyclic_minimal(cert: SenderCertificate, n: int, budget: Optional[int] = None,
                         check_sender_minimal: bool = True,
                         backend: Optional[str] = None) -> CyclicMinimalResult | CyclicFailure:
    """Identify the signal edges of a minimal negative sender and certify the result.

    Both orientations are tried in order; the first whose result is certified
    Ramsey-minimal and holds a cycle of length at least ``n`` is returned.
    """
    _require_negative_disjoint(cert)
    claim = cert.claim
    d = edge_distance(claim.host, claim.e, claim.f)
    if d < n - 1:
        raise GraphError(f"signal distance {d} is too small for a cycle of length {n}")
    if check_sender_minimal:
        extra = minimality_audit(cert, backend=backend)
        if extra:
            raise GraphError(f"sender is not edge-minimal: deleting {extra[0]} keeps it a sender")
    attempts = []
    for idx in (0, 1):
        x, xp = orientation(cert, idx)
        ident = identify(claim.host, x, xp)
        minimality = is_ramsey_minimal(ident.graph, claim.goal, budget, backend)
        seed = seed_cycle(cert, ident)
        cycle = None
        if seed is not None and len(seed.cycle) >= n and is_cycle(ident.graph, seed.cycle):
            cycle = seed.cycle
        else:
            found = find_cycle_at_least(ident.graph, n)
            cycle = tuple(found) if found else None
        attempt = OrientationAttempt((x, xp), ident.graph, minimality, cycle, seed)
        attempts.append(attempt)
        if attempt.ok:
            return CyclicMinimalResult(cert, (x, xp), ident, minimality, cycle, n, seed,
                                       tuple(attempts))
    failure = CyclicFailure(cert, n, tuple(attempts), goals_in_gamma3(claim.goal))
    log.warning("identification construction failed: %s",
                [a.summary()["minimality_reason"] for a in attempts])
    return failure


def verify_cyclic_result(data: dict, max_nodes: Optional[int] = None) -> list[str]:
    """Re-check a serialized :class:`CyclicMinimalResult`."""
    from .sender import verify_sender_certificate

    problems = []
    source = SenderCertificate.from_json(data["source"])
    problems += [f"source: {p}" for p in verify_sender_certificate(source, max_nodes)]
    (x, xp) = data["orientation"]
    ident = identify(source.host, tuple(x), tuple(xp))
    if to_graph6(ident.graph) != data["result"]:
        problems.append("result is not the identification of the source sender")
    minimality = MinimalityCertificate.from_json(data["minimality"])
    if minimality.host != ident.graph:
        problems.append("minimality certificate is for a different graph")
    problems += [f"minimality: {p}" for p in verify_minimality_certificate(minimality, max_nodes)]
    cycle = data["cycle"]
    if not is_cycle(ident.graph, cycle):
        problems.append("cycle witness is not a cycle of the result")
    elif len(cycle) < data["requested_length"]:
        problems.append("cycle witness is shorter than requested")
    return problems
