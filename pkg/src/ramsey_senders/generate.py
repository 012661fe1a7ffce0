"""Isomorph-free generation of small graphs.

Canonical labels come from partition refinement plus individualization,
pruned by swapping twin vertices (vertices with equal open or closed
neighbourhoods). The canonical key is the largest upper-triangle adjacency
bitstring over the labelings reached, so two graphs are isomorphic iff
their keys (and orders) agree.
"""
from __future__ import annotations

from typing import Iterator, Optional

from .graph import Graph, is_connected

DEFAULT_MAX_VERTICES = 8


def _adj_masks(g: Graph) -> list[int]:
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def _refine(adj: list[int], cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement; sub-cells ordered by neighbour count."""
    cells = [list(c) for c in cells]
    changed = True
    while changed:
        changed = False
        for si in range(len(cells)):
            smask = 0
            for v in cells[si]:
                smask |= 1 << v
            out = []
            split = False
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault(bin(adj[v] & smask).count("1"), []).append(v)
                if len(groups) > 1:
                    split = True
                    out.extend(groups[k] for k in sorted(groups))
                else:
                    out.append(cell)
            if split:
                cells = out
                changed = True
                break
    return cells


def _key(adj: list[int], order: list[int]) -> int:
    key = 0
    for j in range(1, len(order)):
        aj = adj[order[j]]
        for i in range(j):
            key = (key << 1) | (aj >> order[i] & 1)
    return key


def _twin_representatives(adj: list[int], cell: list[int]) -> list[int]:
    reps: list[int] = []
    for v in cell:
        for r in reps:
            if adj[v] & ~(1 << r) == adj[r] & ~(1 << v):
                break
        else:
            reps.append(v)
    return reps


def canonical_labeling(g: Graph) -> tuple[int, list[int]]:
    """Return ``(key, order)``: ``order[i]`` is the vertex given label ``i``."""
    adj = _adj_masks(g)
    if g.n == 0:
        return 0, []
    by_degree: dict[int, list[int]] = {}
    for v in range(g.n):
        by_degree.setdefault(bin(adj[v]).count("1"), []).append(v)
    start = _refine(adj, [by_degree[d] for d in sorted(by_degree)])
    best: list = [-1, None]

    def search(cells: list[list[int]]) -> None:
        target = None
        for i, c in enumerate(cells):
            if len(c) > 1 and (target is None or len(c) < len(cells[target])):
                target = i
        if target is None:
            order = [c[0] for c in cells]
            k = _key(adj, order)
            if k > best[0]:
                best[0], best[1] = k, order
            return
        cell = cells[target]
        for v in _twin_representatives(adj, cell):
            rest = [w for w in cell if w != v]
            search(_refine(adj, cells[:target] + [[v], rest] + cells[target + 1:]))

    search(start)
    return best[0], best[1]


def canonical_key(g: Graph) -> tuple[int, int]:
    return g.n, canonical_labeling(g)[0]


def canonical_form(g: Graph) -> Graph:
    _, order = canonical_labeling(g)
    label = {v: i for i, v in enumerate(order)}
    return Graph(g.n, tuple((label[u], label[v]) for u, v in g.edges))


def is_isomorphic(a: Graph, b: Graph) -> bool:
    return a.n == b.n and a.m == b.m and canonical_key(a) == canonical_key(b)


def graphs_of_order(n: int, _cache: dict[int, list[Graph]] = {}) -> list[Graph]:
    """One canonical representative per isomorphism class on ``n`` vertices.

    Built by adding a vertex with every possible neighbourhood to each class
    on ``n - 1`` vertices; sorted by (edge count, canonical key).
    """
    if n in _cache:
        return _cache[n]
    if n == 0:
        result = [Graph(0)]
    else:
        seen: dict[int, Graph] = {}
        for base in graphs_of_order(n - 1):
            for nbrs in range(1 << (n - 1)):
                edges = list(base.edges) + [(i, n - 1) for i in range(n - 1) if nbrs >> i & 1]
                cand = Graph(n, tuple(edges))
                k, order = canonical_labeling(cand)
                if k not in seen:
                    label = {v: i for i, v in enumerate(order)}
                    seen[k] = Graph(n, tuple((label[u], label[v]) for u, v in cand.edges))
        result = [seen[k] for k in sorted(seen, key=lambda k: (seen[k].m, k))]
    _cache[n] = result
    return result


def iter_graphs(max_vertices: int, min_vertices: int = 1, connected_only: bool = False,
                start: Optional[tuple[int, int]] = None) -> Iterator[tuple[tuple[int, int], Graph]]:
    """Yield ``((order, index), graph)`` over all classes, optionally resuming at ``start``."""
    for n in range(min_vertices, max_vertices + 1):
        for i, g in enumerate(graphs_of_order(n)):
            if start is not None and (n, i) < start:
                continue
            if connected_only and not is_connected(g):
                continue
            yield (n, i), g
