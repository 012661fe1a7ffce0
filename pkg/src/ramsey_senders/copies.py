"""Enumeration of copies of a pattern graph inside a host graph.

A copy is the edge set of the image of an embedding. In induced mode the
embedding must also send non-edges to non-edges.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .graph import Edge, Graph, GraphError


@dataclass(frozen=True)
class CopySet:
    pattern: Graph
    host: Graph
    induced: bool
    masks: tuple[int, ...]

    @cached_property
    def copies(self) -> tuple[frozenset[Edge], ...]:
        edges = self.host.edges
        return tuple(frozenset(edges[i] for i in _bits(m)) for m in self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self):
        return iter(self.copies)


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def mask_key(mask: int) -> tuple[int, ...]:
    """Sort key: the increasing tuple of edge indices in ``mask``."""
    return tuple(_bits(mask))


def _pattern_order(p: Graph) -> list[int]:
    """BFS order per component, each component started at its max-degree vertex."""
    order: list[int] = []
    seen: set[int] = set()
    by_degree = sorted(range(p.n), key=lambda v: (-p.degree(v), v))
    for start in by_degree:
        if start in seen:
            continue
        seen.add(start)
        queue = deque([start])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in sorted(p.adj[u], key=lambda v: (-p.degree(v), v)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def enumerate_copies(host: Graph, pattern: Graph, induced: bool = False) -> CopySet:
    """All distinct copies of ``pattern`` in ``host``, as host edge bitmasks.

    Masks index ``host.edges``; the result is sorted by :func:`mask_key`.
    """
    if pattern.m == 0:
        raise GraphError("pattern must have at least one edge")
    if pattern.n > host.n or pattern.m > host.m:
        return CopySet(pattern, host, induced, ())

    order = _pattern_order(pattern)
    pos = {v: i for i, v in enumerate(order)}
    # Earlier pattern vertices adjacent / non-adjacent to each vertex in order.
    back_adj = [[pos[w] for w in pattern.adj[v] if pos[w] < i] for i, v in enumerate(order)]
    back_non = [[j for j in range(i) if order[j] not in pattern.adj[v]]
                for i, v in enumerate(order)]
    pdeg = [pattern.degree(v) for v in order]
    hadj = host.adj
    hdeg = [host.degree(v) for v in range(host.n)]
    eidx = host.edge_index
    pattern_edges = [(pos[u], pos[v]) for u, v in pattern.edges]
    k = len(order)

    image = [-1] * k
    used = [False] * host.n
    found: set[int] = set()

    def extend(i: int) -> None:
        if i == k:
            mask = 0
            for a, b in pattern_edges:
                x, y = image[a], image[b]
                mask |= 1 << eidx[(x, y) if x < y else (y, x)]
            found.add(mask)
            return
        if back_adj[i]:
            candidates = hadj[image[back_adj[i][0]]]
        else:
            candidates = range(host.n)
        for h in sorted(candidates):
            if used[h] or hdeg[h] < pdeg[i]:
                continue
            nb = hadj[h]
            if any(image[j] not in nb for j in back_adj[i]):
                continue
            if induced and any(image[j] in nb for j in back_non[i]):
                continue
            image[i] = h
            used[h] = True
            extend(i + 1)
            used[h] = False
        image[i] = -1

    extend(0)
    return CopySet(pattern, host, induced, tuple(sorted(found, key=mask_key)))
