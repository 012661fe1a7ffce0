"""Search-independent checks used to re-verify stored certificates.

Nothing here touches the clause kernel: copies are scanned as edge sets and
exhaustion is re-established by plain chronological backtracking.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Optional

from .coloring import BLUE, RED, Color, EdgeColoring, Goal
from .copies import enumerate_copies
from .graph import Graph, edge


def naive_good_colorings(host: Graph, goal: Goal) -> Iterator[EdgeColoring]:
    """All 2^m colorings, keeping those with no all-Red G copy and no all-Blue H copy."""
    index = host.edge_index
    reds = [[index[e] for e in c] for c in enumerate_copies(host, goal.g, goal.induced).copies]
    blues = [[index[e] for e in c] for c in enumerate_copies(host, goal.h, goal.induced).copies]
    for bits in itertools.product((0, 1), repeat=host.m):
        if any(not any(bits[i] for i in c) for c in reds):
            continue
        if any(all(bits[i] for i in c) for c in blues):
            continue
        yield EdgeColoring(host, sum(b << i for i, b in enumerate(bits)))


def naive_arrows(host: Graph, goal: Goal) -> bool:
    return next(naive_good_colorings(host, goal), None) is None


def exhaustive_good_coloring(host: Graph, goal: Goal, pins: Iterable[tuple] = (),
                             max_nodes: Optional[int] = None) -> Optional[EdgeColoring]:
    """Backtrack over edges in colex order with forward checking on copy edge lists.

    A copy whose colored edges all carry its forbidden color and which has a
    single uncolored edge forces that edge the other way; a copy colored
    entirely in its forbidden color is a conflict. Returns a good coloring
    respecting ``pins`` or None. Raises RuntimeError past ``max_nodes``.
    """
    m = host.m
    idx = host.edge_index
    fixed: dict[int, Color] = {}
    for e, c in pins:
        i = idx[edge(*e)]
        c = c if isinstance(c, Color) else Color.parse(c) if isinstance(c, str) else Color(c)
        if fixed.get(i, c) is not c:
            return None
        fixed[i] = c
    copies: list[tuple[tuple[int, ...], Color]] = []
    for pattern, forbidden in ((goal.g, RED), (goal.h, BLUE)):
        for copy in enumerate_copies(host, pattern, goal.induced).copies:
            copies.append((tuple(idx[e] for e in copy), forbidden))
    touching: list[list[int]] = [[] for _ in range(m)]
    for k, (ids, _) in enumerate(copies):
        for j in ids:
            touching[j].append(k)
    order = sorted(range(m), key=lambda i: (host.edges[i][1], host.edges[i][0]))
    colors: list[Optional[Color]] = [None] * m
    nodes = 0

    def assign(i: int, c: Color, trail: list[int]) -> bool:
        stack = [(i, c)]
        while stack:
            j, cj = stack.pop()
            if colors[j] is not None:
                if colors[j] is not cj:
                    return False
                continue
            colors[j] = cj
            trail.append(j)
            for k in touching[j]:
                ids, forbidden = copies[k]
                free = None
                alive = True
                for t in ids:
                    ct = colors[t]
                    if ct is None:
                        if free is not None:
                            alive = False
                            break
                        free = t
                    elif ct is not forbidden:
                        alive = False
                        break
                if not alive:
                    continue
                if free is None:
                    return False
                stack.append((free, BLUE if forbidden is RED else RED))
        return True

    def undo(trail: list[int]) -> None:
        for j in trail:
            colors[j] = None

    def go(pos: int) -> bool:
        nonlocal nodes
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise RuntimeError("exhaustive check exceeded its node cap")
        while pos < m and colors[order[pos]] is not None:
            pos += 1
        if pos == m:
            return True
        i = order[pos]
        for c in (RED, BLUE):
            trail: list[int] = []
            if assign(i, c, trail) and go(pos + 1):
                return True
            undo(trail)
        return False

    base: list[int] = []
    for i, c in fixed.items():
        if not assign(i, c, base):
            return None
    if not go(0):
        return None
    mask = sum(1 << i for i, c in enumerate(colors) if c is BLUE)
    return EdgeColoring(host, mask)
