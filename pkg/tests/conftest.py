"""Shared helpers: random hosts and a brute-force oracle independent of the engine.

The oracle finds pattern copies by trying every injective vertex map and
decides goodness by scanning all 2^m colorings. It never touches the copy
enumerator or the clause kernel.
"""
from __future__ import annotations

import itertools
import random

import pytest

from ramsey_senders.graph import Graph, edge


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph(n, tuple(edges))


def oracle_copies(host: Graph, pattern: Graph, induced: bool = False) -> set[frozenset]:
    """Edge sets of all (induced) copies, by exhaustive injective maps."""
    found = set()
    hs = {frozenset(e) for e in host.edges}
    for image in itertools.permutations(range(host.n), pattern.n):
        mapped = [frozenset((image[u], image[v])) for u, v in pattern.edges]
        if not all(x in hs for x in mapped):
            continue
        if induced:
            pe = {frozenset(e) for e in pattern.edges}
            ok = all((frozenset((image[u], image[v])) in hs) == (frozenset((u, v)) in pe)
                     for u, v in itertools.combinations(range(pattern.n), 2))
            if not ok:
                continue
        found.add(frozenset(edge(*tuple(x)) for x in mapped))
    return found


def oracle_good_masks(host: Graph, goal) -> list[int]:
    """Blue masks of every good coloring, by full enumeration."""
    index = {e: i for i, e in enumerate(host.edges)}
    gm = [sum(1 << index[e] for e in c) for c in oracle_copies(host, goal.g, goal.induced)]
    hm = [sum(1 << index[e] for e in c) for c in oracle_copies(host, goal.h, goal.induced)]
    good = []
    for blue in range(1 << host.m):
        if any(s & blue == 0 for s in gm):      # all-Red G copy
            continue
        if any(t & ~blue == 0 for t in hm):     # all-Blue H copy
            continue
        good.append(blue)
    return good


@pytest.fixture
def rng():
    return random.Random(20261014)


def oracle_arrows(host: Graph, goal) -> bool:
    """True when no coloring of the 2^m avoids both forbidden monochromatic copies."""
    index = {e: i for i, e in enumerate(host.edges)}
    gm = [sum(1 << index[e] for e in c) for c in oracle_copies(host, goal.g, goal.induced)]
    hm = [sum(1 << index[e] for e in c) for c in oracle_copies(host, goal.h, goal.induced)]
    full = (1 << host.m) - 1
    for blue in range(1 << host.m):
        red = full & ~blue
        if all(s & blue for s in gm) and all(t & red for t in hm):
            return False
    return True


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
