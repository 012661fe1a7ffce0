"""Building larger sender candidates out of verified small ones.

Candidates produced here are only claims; every one is passed through
:func:`~ramsey_senders.sender.check_sender` before it is reported.

* :func:`chain` glues the second sender's first signal onto the first
  sender's second signal. When copies of the patterns cannot straddle a
  two-vertex cut (3-connected patterns, triangles) the polarities multiply.
* :func:`triangle_inversion` takes two copies of a positive sender, sharing
  one endpoint of the first signal and the whole second signal, and closes a
  triangle on the free first-signal endpoints. With K3 in both patterns the
  closing edge is forced against the shared signal, giving a negative sender.
"""
from __future__ import annotations

import logging
from typing import Iterator, Mapping, Optional

from .coloring import Goal, SearchStats
from .generate import canonical_labeling
from .graph import Graph, edge, edge_distance
from .sender import (
    Polarity, SenderCertificate, SenderClaim, check_sender, minimize_sender, search_senders,
)

log = logging.getLogger(__name__)


def glue(first: Graph, second: Graph, shared: Mapping[int, int]) -> tuple[Graph, dict[int, int]]:
    """Union of two graphs with ``second``'s vertex ``k`` merged into ``first``'s ``shared[k]``.

    Returns the glued graph and the vertex map for ``second``.
    """
    vmap = dict(shared)
    nxt = first.n
    for v in range(second.n):
        if v not in vmap:
            vmap[v] = nxt
            nxt += 1
    edges = list(first.edges) + [edge(vmap[u], vmap[v]) for u, v in second.edges]
    return Graph(nxt, tuple(edges)), vmap


def _product(p: Polarity, q: Polarity) -> Polarity:
    return Polarity.POSITIVE if p is q else Polarity.NEGATIVE


def chain(first: SenderClaim, second: SenderClaim, flip: bool = False) -> SenderClaim:
    """Claim on ``first`` + ``second`` with ``second.e`` laid onto ``first.f``.

    ``flip`` reverses the orientation of the overlay.
    """
    if first.goal != second.goal:
        raise ValueError("chained senders must share a goal")
    a, b = second.e
    if flip:
        a, b = b, a
    c, d = first.f
    host, vmap = glue(first.host, second.host, {a: c, b: d})
    f = edge(vmap[second.f[0]], vmap[second.f[1]])
    return SenderClaim(host, first.e, f, first.goal, _product(first.polarity, second.polarity))


def triangle_inversion(claim: SenderClaim, flip: bool = False) -> SenderClaim:
    """Negative candidate ``(z, f)`` from a positive sender with disjoint signals."""
    if claim.polarity is not Polarity.POSITIVE:
        raise ValueError("triangle inversion starts from a positive sender")
    if set(claim.e) & set(claim.f):
        raise ValueError("signal edges must be vertex-disjoint")
    v, p = claim.e[::-1] if flip else claim.e
    c, d = claim.f
    host, vmap = glue(claim.host, claim.host, {v: v, c: c, d: d})
    z = edge(p, vmap[p])
    host = Graph(host.n, host.edges + (z,))
    return SenderClaim(host, z, claim.f, claim.goal, Polarity.NEGATIVE)


def claim_key(claim: SenderClaim) -> tuple:
    """Isomorphism-invariant key for a claim with unordered signal edges."""
    host = claim.host
    # Mark the signal edges with pendant paths of lengths 1 and 2.
    n = host.n
    extra = [(claim.e[0], n), (claim.e[1], n + 1), (claim.f[0], n + 2), (n + 2, n + 3),
             (claim.f[1], n + 4), (n + 4, n + 5)]
    marked = Graph(n + 6, host.edges + tuple(extra))
    key_ef = canonical_labeling(marked)[0]
    extra_fe = [(claim.f[0], n), (claim.f[1], n + 1), (claim.e[0], n + 2), (n + 2, n + 3),
                (claim.e[1], n + 4), (n + 4, n + 5)]
    key_fe = canonical_labeling(Graph(n + 6, host.edges + tuple(extra_fe)))[0]
    return host.n, host.m, claim.polarity.value, max(key_ef, key_fe)


def constructed_negative_senders(
    goal: Goal,
    base_vertices: int = 7,
    rounds: int = 1,
    budget: Optional[int] = None,
    limit: Optional[int] = None,
    backend: Optional[str] = None,
) -> Iterator[SenderCertificate]:
    """Minimized negative senders grown from exhaustively found positive ones.

    Round 0 inverts each positive base sender with disjoint signals; every
    further round chains the previous round's negatives with each base. Each
    output is verified, minimized and reported once per isomorphism class.
    """
    stats = SearchStats(budget)
    base = []
    seen_base = set()
    for cert in search_senders(goal, Polarity.POSITIVE, base_vertices, connected_only=True,
                               stats=stats, backend=backend):
        if set(cert.claim.e) & set(cert.claim.f):
            continue
        key = claim_key(cert.claim)
        if key not in seen_base:
            seen_base.add(key)
            base.append(cert)
    log.info("%d positive base senders with disjoint signals", len(base))

    seen: set = set()
    emitted = 0

    def finish(candidate: SenderClaim):
        nonlocal emitted
        result = check_sender(candidate, stats=stats, backend=backend)
        if not result.ok:
            return None
        minimized = minimize_sender(result, stats=stats, backend=backend).certificate
        key = claim_key(minimized.claim)
        if key in seen:
            return None
        seen.add(key)
        emitted += 1
        return minimized

    frontier = []
    for cert in base:
        for flip in (False, True):
            got = finish(triangle_inversion(cert.claim, flip))
            if got is not None:
                frontier.append(got)
                yield got
                if limit is not None and emitted >= limit:
                    return
    for _ in range(rounds):
        nxt = []
        for neg in frontier:
            for pos in base:
                for flip in (False, True):
                    got = finish(chain(neg.claim, pos.claim, flip))
                    if got is not None:
                        log.debug("chained sender: %d vertices, distance %s", got.host.n,
                                  edge_distance(got.host, got.claim.e, got.claim.f))
                        nxt.append(got)
                        yield got
                        if limit is not None and emitted >= limit:
                            return
        frontier = nxt
