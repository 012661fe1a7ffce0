"""Good colorings and the arrowing relation.

A red/blue edge coloring of a host F is *good* for a goal (G, H) when no copy
of G is all Red and no copy of H is all Blue. In strong mode only induced
copies count. F arrows (G, H) when it has no good coloring.

The search builds one clause per copy (a G-copy needs a Blue edge, an H-copy
a Red edge) and hands the bitmask instance to :mod:`ramsey_senders.kernel`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

from . import kernel
from .copies import CopySet, enumerate_copies
from .graph import Edge, Graph, GraphError, connected_components, edge, is_connected, to_graph6


class Color(enum.IntEnum):
    RED = 0
    BLUE = 1

    @property
    def code(self) -> str:
        return "R" if self is Color.RED else "B"

    @classmethod
    def parse(cls, text: str) -> "Color":
        t = text.strip().upper()
        if t in ("R", "RED", "0"):
            return cls.RED
        if t in ("B", "BLUE", "1"):
            return cls.BLUE
        raise ValueError(f"unknown color {text!r}")


RED, BLUE = Color.RED, Color.BLUE


class Mode(enum.Enum):
    PLAIN = "plain"
    STRONG = "strong"


class BudgetExhausted(RuntimeError):
    """The node budget ran out before the search was decided."""

    def __init__(self, message: str = "search budget exhausted", nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes


class PinConflict(ValueError):
    pass


@dataclass(frozen=True)
class Goal:
    g: Graph
    h: Graph
    mode: Mode = Mode.PLAIN

    def __post_init__(self):
        if self.g.m == 0 or self.h.m == 0:
            raise GraphError("goal patterns must each have at least one edge")

    @property
    def induced(self) -> bool:
        return self.mode is Mode.STRONG

    @cached_property
    def patterns_connected(self) -> bool:
        return is_connected(self.g) and is_connected(self.h)

    def to_json(self) -> dict:
        return {"g": to_graph6(self.g), "h": to_graph6(self.h), "mode": self.mode.value}

    @classmethod
    def from_json(cls, data: dict) -> "Goal":
        from .graph import parse_graph6
        return cls(parse_graph6(data["g"]), parse_graph6(data["h"]), Mode(data.get("mode", "plain")))


class Pin(NamedTuple):
    edge: Edge
    color: Color


def edge_key(e: Sequence[int]) -> str:
    return f"{e[0]}-{e[1]}"


def parse_edge_key(key: str) -> Edge:
    try:
        u, v = key.split("-")
        return edge(int(u), int(v))
    except ValueError:
        raise ValueError(f"bad edge key {key!r}, expected 'u-v'") from None


class EdgeColoring(Mapping[Edge, Color]):
    """Total map from host edges to colors, stored as a Blue bitmask."""

    __slots__ = ("host", "blue_mask")

    def __init__(self, host: Graph, blue_mask: int):
        if blue_mask >> host.m:
            raise ValueError("blue mask has bits beyond the host's edges")
        self.host = host
        self.blue_mask = blue_mask

    @classmethod
    def from_mapping(cls, host: Graph, colors: Mapping[Sequence[int], Color | str | int]) -> "EdgeColoring":
        idx = host.edge_index
        assigned = {}
        for e, c in colors.items():
            ne = edge(*e)
            if ne not in idx:
                raise GraphError(f"colored edge {ne} not in host")
            assigned[ne] = c if isinstance(c, Color) else (Color.parse(c) if isinstance(c, str) else Color(c))
        missing = [e for e in host.edges if e not in assigned]
        if missing:
            raise ValueError(f"coloring is partial: missing {missing[:5]}")
        mask = 0
        for e, c in assigned.items():
            if c is BLUE:
                mask |= 1 << idx[e]
        return cls(host, mask)

    def __getitem__(self, e: Sequence[int]) -> Color:
        i = self.host.edge_index[edge(*e)]
        return BLUE if self.blue_mask >> i & 1 else RED

    def __iter__(self):
        return iter(self.host.edges)

    def __len__(self) -> int:
        return self.host.m

    def __eq__(self, other) -> bool:
        if isinstance(other, EdgeColoring):
            return self.host == other.host and self.blue_mask == other.blue_mask
        return super().__eq__(other)

    def __hash__(self) -> int:
        return hash((self.host, self.blue_mask))

    def __repr__(self) -> str:
        return "EdgeColoring(" + " ".join(f"{edge_key(e)}={self[e].code}" for e in self) + ")"

    @property
    def red_mask(self) -> int:
        return ((1 << self.host.m) - 1) & ~self.blue_mask

    def to_json(self) -> dict[str, str]:
        return {edge_key(e): self[e].code for e in self.host.edges}

    @classmethod
    def from_json(cls, host: Graph, data: Mapping[str, str]) -> "EdgeColoring":
        return cls.from_mapping(host, {parse_edge_key(k): Color.parse(v) for k, v in data.items()})

    def restrict(self, sub: Graph, vertex_map: Optional[Mapping[int, int]] = None) -> "EdgeColoring":
        """Coloring of ``sub`` inherited from this one.

        ``vertex_map`` sends vertices of ``sub`` to vertices of the host
        (identity when omitted).
        """
        mask = 0
        for i, (u, v) in enumerate(sub.edges):
            if vertex_map is not None:
                u, v = vertex_map[u], vertex_map[v]
            if self[(u, v)] is BLUE:
                mask |= 1 << i
        return EdgeColoring(sub, mask)


@dataclass(frozen=True)
class ClauseSystem:
    """Positive/negative CNF over host edges (variable true = Blue)."""

    host: Graph
    goal: Goal
    g_copies: CopySet
    h_copies: CopySet

    @property
    def gmasks(self) -> tuple[int, ...]:
        return self.g_copies.masks

    @property
    def hmasks(self) -> tuple[int, ...]:
        return self.h_copies.masks

    def __len__(self) -> int:
        return len(self.gmasks) + len(self.hmasks)

    def to_dimacs(self, pins: Iterable[Pin] = ()) -> str:
        """DIMACS CNF text; edge ``i`` of ``host.edges`` is variable ``i + 1``."""
        red, blue = pin_masks(self.host, pins)
        lines = []
        for s in self.gmasks:
            lines.append(" ".join(str(i + 1) for i in _indices(s)) + " 0")
        for t in self.hmasks:
            lines.append(" ".join(str(-(i + 1)) for i in _indices(t)) + " 0")
        for i in _indices(blue):
            lines.append(f"{i + 1} 0")
        for i in _indices(red):
            lines.append(f"{-(i + 1)} 0")
        comments = [f"c host {to_graph6(self.host)} goal {to_graph6(self.goal.g)},"
                    f"{to_graph6(self.goal.h)} mode {self.goal.mode.value}"]
        comments += [f"c var {i + 1} = edge {edge_key(e)} (true = Blue)"
                     for i, e in enumerate(self.host.edges)]
        return "\n".join(comments + [f"p cnf {self.host.m} {len(lines)}"] + lines) + "\n"


def _indices(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def build_clauses(host: Graph, goal: Goal) -> ClauseSystem:
    return ClauseSystem(
        host, goal,
        enumerate_copies(host, goal.g, goal.induced),
        enumerate_copies(host, goal.h, goal.induced),
    )


def pin_masks(host: Graph, pins: Iterable[Pin | tuple]) -> tuple[int, int]:
    """Red and Blue bitmasks for ``pins``; contradictory pins raise PinConflict."""
    red = blue = 0
    idx = host.edge_index
    for e, c in pins:
        ne = edge(*e)
        if ne not in idx:
            raise GraphError(f"pinned edge {ne} not in host")
        c = c if isinstance(c, Color) else Color.parse(c) if isinstance(c, str) else Color(c)
        bit = 1 << idx[ne]
        if c is BLUE:
            blue |= bit
        else:
            red |= bit
    if red & blue:
        bad = [host.edges[i] for i in _indices(red & blue)]
        raise PinConflict(f"edges pinned to both colors: {bad}")
    return red, blue


class SearchStats:
    """Node counter shared by a sequence of kernel calls under one budget."""

    def __init__(self, budget: Optional[int] = None):
        self.budget = budget
        self.nodes = 0

    def remaining(self) -> Optional[int]:
        if self.budget is None:
            return None
        return max(self.budget - self.nodes, 0)

    def charge(self, nodes: int) -> None:
        self.nodes += nodes


def _solve_masks(m, gmasks, hmasks, red, blue, stats: SearchStats, backend=None) -> Optional[int]:
    status, found, nodes = kernel.solve(m, gmasks, hmasks, red, blue, stats.remaining(), backend)
    stats.charge(nodes)
    if status == kernel.UNKNOWN:
        raise BudgetExhausted(nodes=stats.nodes)
    return found if status == kernel.SAT else None


def _component_split(system: ClauseSystem) -> list[int]:
    """Edge bitmasks of the host's components that carry edges."""
    host = system.host
    masks = []
    for comp in connected_components(host):
        cs = set(comp)
        mask = 0
        for i, (u, v) in enumerate(host.edges):
            if u in cs:
                mask |= 1 << i
        if mask:
            masks.append(mask)
    return masks


def find_good_coloring(
    host: Graph,
    goal: Goal,
    pins: Iterable[Pin | tuple] = (),
    budget: Optional[int] = None,
    *,
    system: Optional[ClauseSystem] = None,
    stats: Optional[SearchStats] = None,
    backend: Optional[str] = None,
) -> Optional[EdgeColoring]:
    """A good coloring respecting ``pins``, or None once the search is exhausted.

    Raises :class:`BudgetExhausted` when ``budget`` nodes do not suffice.
    When both patterns are connected every host component is solved on its
    own, since copies cannot straddle components.
    """
    system = system or build_clauses(host, goal)
    stats = stats or SearchStats(budget)
    red, blue = pin_masks(host, pins)
    m = host.m
    comps = _component_split(system) if goal.patterns_connected else []
    if len(comps) <= 1:
        found = _solve_masks(m, system.gmasks, system.hmasks, red, blue, stats, backend)
        return None if found is None else EdgeColoring(host, found)

    total = 0
    for cm in comps:
        gm = [s for s in system.gmasks if s & cm]
        hm = [t for t in system.hmasks if t & cm]
        # Edges outside the component are fixed Red so the kernel ignores them.
        outside = ((1 << m) - 1) & ~cm
        found = _solve_masks(m, gm, hm, (red & cm) | outside, blue & cm, stats, backend)
        if found is None:
            return None
        total |= found & cm
    return EdgeColoring(host, total)


@dataclass(frozen=True)
class ArrowVerdict:
    arrows: bool
    witness: Optional[EdgeColoring]
    nodes: int

    def __bool__(self) -> bool:
        return self.arrows


def arrows(host: Graph, goal: Goal, budget: Optional[int] = None, backend: Optional[str] = None) -> ArrowVerdict:
    """Decide whether every coloring of ``host`` has a red G or a blue H."""
    stats = SearchStats(budget)
    witness = find_good_coloring(host, goal, stats=stats, backend=backend)
    return ArrowVerdict(witness is None, witness, stats.nodes)


def verify_coloring(host: Graph, goal: Goal, coloring: EdgeColoring | Mapping) -> bool:
    """Direct scan: no all-Red copy of G and no all-Blue copy of H.

    Walks the copy edge sets one by one and looks colors up edge by edge.
    """
    if not isinstance(coloring, EdgeColoring):
        coloring = EdgeColoring.from_mapping(host, coloring)
    elif coloring.host != host:
        raise ValueError("coloring belongs to a different host")
    for copy in enumerate_copies(host, goal.g, goal.induced).copies:
        if all(coloring[e] is RED for e in copy):
            return False
    for copy in enumerate_copies(host, goal.h, goal.induced).copies:
        if all(coloring[e] is BLUE for e in copy):
            return False
    return True


class GoodColorings(NamedTuple):
    colorings: list[EdgeColoring]
    exhaustive: bool


def enumerate_good_colorings(
    host: Graph,
    goal: Goal,
    pins: Iterable[Pin | tuple] = (),
    limit: int = 1000,
    budget: Optional[int] = None,
    backend: Optional[str] = None,
) -> GoodColorings:
    """Up to ``limit`` distinct good colorings; ``exhaustive`` if that is all of them."""
    if limit < 1:
        raise ValueError("limit must be positive")
    system = build_clauses(host, goal)
    red, blue = pin_masks(host, pins)
    status, masks, nodes = kernel.enumerate_colorings(
        host.m, system.gmasks, system.hmasks, red, blue, limit, budget, backend)
    if status == kernel.UNKNOWN:
        raise BudgetExhausted(nodes=nodes)
    return GoodColorings([EdgeColoring(host, b) for b in masks], status == kernel.COMPLETE)
