"""Simple undirected graphs on vertices ``0..n-1`` and the queries the rest of
the package needs: graph6 / JSON serialization, distances, connectivity,
bridge and 3-connectivity tests, long-cycle search and edge identification.

Edges are plain ``(u, v)`` tuples normalized to ``u < v``.
"""
from __future__ import annotations

import enum
import itertools
import json
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

Edge = tuple[int, int]

GRAPH6_HEADER = ">>graph6<<"
MAX_GRAPH6_VERTICES = 68719476735


class GraphError(ValueError):
    """Invalid graph, edge or operation precondition."""


class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def edge(u: int, v: int) -> Edge:
    """Return the normalized edge ``{u, v}``."""
    if u == v:
        raise GraphError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be nonnegative")
        normalized = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
            normalized.add(edge(u, v))
        object.__setattr__(self, "edges", tuple(sorted(normalized)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, tuple((int(u), int(v)) for u, v in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and edge(u, v) in self.edge_set

    def __contains__(self, e: Sequence[int]) -> bool:
        u, v = e
        return self.has_edge(u, v)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"

    # -- serialization -------------------------------------------------

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        try:
            n = data["n"]
            raw = data["edges"]
        except (KeyError, TypeError) as exc:
            raise GraphError(f"bad graph JSON: {exc}") from None
        if not isinstance(n, int):
            raise GraphError("graph JSON 'n' must be an integer")
        edges = []
        for pair in raw:
            if len(pair) != 2:
                raise GraphError(f"bad edge {pair!r}")
            u, v = pair
            if u >= v:
                raise GraphError(f"edge {pair!r} must satisfy u < v")
            edges.append((u, v))
        if len(set(edges)) != len(edges):
            raise GraphError("duplicate edge in graph JSON")
        return cls(n, tuple(edges))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


# -- named graphs --------------------------------------------------------


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return Graph(n, tuple(edge(i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    """Path on ``n`` vertices (so ``n - 1`` edges)."""
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def disjoint_union(*graphs: Graph) -> Graph:
    offset = 0
    edges = []
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, tuple(edges))


# -- graph6 -------------------------------------------------------------


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= MAX_GRAPH6_VERTICES:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise GraphError(f"graph6 cannot encode n={n}")


def to_graph6(g: Graph) -> str:
    """Canonical graph6 encoding (no header, zero padding bits)."""
    bits = []
    es = g.edge_set
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if (i, j) in es else 0)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        body.append(chr(val + 63))
    return _encode_n(g.n) + "".join(body)


def parse_graph6(text: str) -> Graph:
    """Parse one graph6 line. An optional ``>>graph6<<`` header is accepted."""
    s = text.strip()
    base = 0
    if s.startswith(GRAPH6_HEADER):
        base = len(GRAPH6_HEADER)
        s = s[base:]
    if not s:
        raise Graph6Error("empty graph6 string", base)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ch!r} outside graph6 range 63..126", base + i)
    vals = [ord(ch) - 63 for ch in s]

    if vals[0] != 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise Graph6Error("truncated 8-byte vertex-count header", base + len(vals))
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
    else:
        if len(vals) < 4:
            raise Graph6Error("truncated 4-byte vertex-count header", base + len(vals))
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    have = len(vals) - pos
    if have < need:
        raise Graph6Error(f"truncated bit field: expected {need} data bytes, got {have}",
                          base + len(vals))
    if have > need:
        raise Graph6Error("trailing bytes after bit field", base + pos + need)

    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = vals[pos + k // 6]
            if (byte >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, tuple(edges))


# -- metric and connectivity --------------------------------------------


def bfs_distances(g: Graph, sources: Iterable[int]) -> list[float]:
    dist = [math.inf] * g.n
    queue = deque()
    for s in sources:
        if dist[s] != 0:
            dist[s] = 0
            queue.append(s)
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] == math.inf:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _require_edge(g: Graph, e: Sequence[int]) -> Edge:
    ne = edge(*e)
    if ne not in g.edge_set:
        raise GraphError(f"edge {ne} not in graph")
    return ne


def edge_distance(g: Graph, e: Sequence[int], f: Sequence[int]) -> float:
    """Minimum vertex distance between an endpoint of ``e`` and one of ``f``.

    Returns ``math.inf`` when no endpoint of ``f`` is reachable from ``e``.
    """
    e = _require_edge(g, e)
    f = _require_edge(g, f)
    dist = bfs_distances(g, e)
    d = min(dist[f[0]], dist[f[1]])
    return int(d) if d != math.inf else d


def shortest_path(g: Graph, sources: Iterable[int], targets: Iterable[int]) -> Optional[list[int]]:
    """A shortest path from any source to any target, or None."""
    targets = set(targets)
    parent: dict[int, Optional[int]] = {}
    queue = deque()
    for s in sorted(set(sources)):
        parent[s] = None
        queue.append(s)
    while queue:
        u = queue.popleft()
        if u in targets:
            path = [u]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for w in sorted(g.adj[u]):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    return None


def connected_components(g: Graph, removed: Iterable[int] = ()) -> list[list[int]]:
    """Vertex partition into components, each sorted, ordered by least vertex."""
    skip = set(removed)
    seen = set(skip)
    comps = []
    for s in range(g.n):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def delete_edge(g: Graph, e: Sequence[int], prune_isolated: bool = False) -> Graph:
    """Remove ``e``; vertices are kept unless ``prune_isolated`` is set."""
    e = _require_edge(g, e)
    h = Graph(g.n, tuple(x for x in g.edges if x != e))
    if prune_isolated:
        h, _ = remove_isolated(h)
    return h


def remove_isolated(g: Graph) -> tuple[Graph, dict[int, int]]:
    """Drop degree-0 vertices. Returns the graph and the old->new vertex map."""
    keep = [v for v in range(g.n) if g.adj[v]]
    vmap = {old: new for new, old in enumerate(keep)}
    return Graph(len(keep), tuple((vmap[u], vmap[v]) for u, v in g.edges)), vmap


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    keep = sorted(set(vertices))
    vmap = {old: new for new, old in enumerate(keep)}
    edges = tuple((vmap[u], vmap[v]) for u, v in g.edges if u in vmap and v in vmap)
    return Graph(len(keep), edges), vmap


def bridges(g: Graph) -> list[Edge]:
    """Edges whose removal increases the number of components."""
    base = len(connected_components(g))
    return [e for e in g.edges if len(connected_components(delete_edge(g, e))) > base]


def is_3_connected(g: Graph) -> bool:
    """Brute force: more than 3 vertices and no separating set of size <= 2."""
    if g.n < 4 or not is_connected(g):
        return False
    for k in (1, 2):
        for cut in itertools.combinations(range(g.n), k):
            if len(connected_components(g, removed=cut)) > 1:
                return False
    return True


def is_triangle(g: Graph) -> bool:
    return g.n == 3 and g.m == 3


class GammaClass(enum.Enum):
    GAMMA3 = "InGamma3"
    GAMMA2_PRIME = "InGamma2Prime"
    NEITHER = "Neither"


def classify_gamma(g: Graph) -> GammaClass:
    """Strongest of: 3-connected or triangle; connected and bridgeless; neither."""
    if is_triangle(g) or is_3_connected(g):
        return GammaClass.GAMMA3
    if g.m >= 1 and is_connected(g) and not bridges(g):
        return GammaClass.GAMMA2_PRIME
    return GammaClass.NEITHER


# -- cycles ---------------------------------------------------------------


def is_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    """True iff ``cycle`` lists distinct vertices of a simple cycle in ``g``."""
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        return False
    if any(not 0 <= v < g.n for v in cycle):
        return False
    return all(g.has_edge(cycle[i], cycle[(i + 1) % k]) for i in range(k))


def find_cycle_at_least(g: Graph, n: int) -> Optional[list[int]]:
    """Exhaustive DFS for a simple cycle with at least ``n`` edges.

    Each cycle is rooted at its least vertex; a branch is cut when the path
    plus every vertex still reachable from its tip cannot reach length ``n``.
    """
    if n < 1:
        raise GraphError("requested cycle length must be positive")
    target = max(n, 3)
    if g.m < target:
        return None
    adj = [sorted(s) for s in g.adj]

    def reachable(tip: int, blocked: set[int], root: int) -> int:
        seen = {tip}
        stack = [tip]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w > root and w not in seen and w not in blocked:
                    seen.add(w)
                    stack.append(w)
        return len(seen)

    for root in range(g.n):
        path = [root]
        on_path = {root}

        def dfs(u: int) -> Optional[list[int]]:
            if len(path) >= target and root in g.adj[u]:
                return list(path)
            if len(path) - 1 + reachable(u, on_path - {u}, root) < target:
                return None
            for w in adj[u]:
                if w <= root or w in on_path:
                    continue
                path.append(w)
                on_path.add(w)
                found = dfs(w)
                if found:
                    return found
                path.pop()
                on_path.discard(w)
            return None

        found = dfs(root)
        if found:
            return found
    return None


# -- identification -------------------------------------------------------


@dataclass(frozen=True)
class Identification:
    """Result of identifying ``x = (a, b)`` onto ``x' = (c, d)``."""

    graph: Graph
    vertex_map: dict[int, int] = field(compare=False)
    x: tuple[int, int] = (0, 0)
    x_prime: tuple[int, int] = (0, 0)

    def image(self, v: int) -> int:
        """New index of old vertex ``v``; ``a`` and ``b`` land on ``c`` and ``d``."""
        a, b = self.x
        c, d = self.x_prime
        if v == a:
            v = c
        elif v == b:
            v = d
        return self.vertex_map[v]


def identify(g: Graph, x: Sequence[int], x_prime: Sequence[int]) -> Identification:
    """Identify oriented edge ``x = (a, b)`` with ``x' = (c, d)``.

    ``a`` and ``b`` are deleted; every neighbour of ``a`` is joined to ``c`` and
    every neighbour of ``b`` to ``d``. Loops are dropped and parallel edges
    merged. Surviving vertices keep their relative order.
    """
    a, b = x
    c, d = x_prime
    _require_edge(g, (a, b))
    _require_edge(g, (c, d))
    if {a, b} & {c, d}:
        raise GraphError(f"edges {tuple(x)} and {tuple(x_prime)} share an endpoint")
    keep = [v for v in range(g.n) if v not in (a, b)]
    vmap = {old: new for new, old in enumerate(keep)}
    new_edges = set()
    for u, v in g.edges:
        if u in vmap and v in vmap:
            new_edges.add(edge(vmap[u], vmap[v]))
    for src, dst in ((a, c), (b, d)):
        for u in g.adj[src]:
            if u in vmap and u != dst:
                new_edges.add(edge(vmap[u], vmap[dst]))
    return Identification(Graph(len(keep), tuple(new_edges)), vmap, (a, b), (c, d))
