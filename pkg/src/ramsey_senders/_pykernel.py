"""Pure-Python clause search kernel.

Colorings are bitmasks over host edge indices: bit ``i`` of ``red`` / ``blue``
means edge ``i`` is assigned that color. ``gmasks`` are copies of G (each needs
one Blue edge), ``hmasks`` copies of H (each needs one Red edge).

The compiled kernel implements exactly the same procedure, so both return the
same witness for the same input.
"""
from __future__ import annotations

SAT, UNSAT, UNKNOWN = 1, 0, -1
COMPLETE, TRUNCATED = 1, 0

BACKEND = "python"


class _Abort(Exception):
    pass


class _Search:
    def __init__(self, m, gmasks, hmasks, budget):
        self.full = (1 << m) - 1
        self.g = list(gmasks)
        self.h = list(hmasks)
        self.budget = budget
        self.nodes = 0

    def propagate(self, red, blue):
        full, g, h = self.full, self.g, self.h
        changed = True
        while changed:
            changed = False
            free = full & ~(red | blue)
            for s in g:
                if s & blue:
                    continue
                r = s & free
                if not r:
                    return None
                if not r & (r - 1):
                    blue |= r
                    free &= ~r
                    changed = True
            for t in h:
                if t & red:
                    continue
                r = t & free
                if not r:
                    return None
                if not r & (r - 1):
                    red |= r
                    free &= ~r
                    changed = True
        return red, blue

    def choose(self, red, blue):
        """Most constrained open clause: (free literals, wants_blue) or None."""
        free = self.full & ~(red | blue)
        best = None
        best_count = 1 << 30
        for s in self.g:
            if not s & blue:
                r = s & free
                c = bin(r).count("1")
                if c < best_count:
                    best, best_count, want_blue = r, c, True
        for t in self.h:
            if not t & red:
                r = t & free
                c = bin(r).count("1")
                if c < best_count:
                    best, best_count, want_blue = r, c, False
        if best is None:
            return None
        return best & -best, want_blue

    def tick(self):
        self.nodes += 1
        if 0 <= self.budget < self.nodes:
            raise _Abort

    def solve(self, red, blue):
        self.tick()
        state = self.propagate(red, blue)
        if state is None:
            return None
        red, blue = state
        pick = self.choose(red, blue)
        if pick is None:
            return blue
        bit, want_blue = pick
        for as_blue in ((True, False) if want_blue else (False, True)):
            if as_blue:
                found = self.solve(red, blue | bit)
            else:
                found = self.solve(red | bit, blue)
            if found is not None:
                return found
        return None

    def enumerate(self, red, blue, out, limit):
        """Append good colorings to ``out``; True once ``limit`` is exceeded."""
        self.tick()
        state = self.propagate(red, blue)
        if state is None:
            return False
        red, blue = state
        pick = self.choose(red, blue)
        if pick is None:
            free = self.full & ~(red | blue)
            bits = []
            x = free
            while x:
                low = x & -x
                bits.append(low)
                x ^= low
            for sub in range(1 << len(bits)):
                extra = 0
                for j, b in enumerate(bits):
                    if sub >> j & 1:
                        extra |= b
                if len(out) >= limit:
                    return True
                out.append(blue | extra)
            return False
        bit, want_blue = pick
        for as_blue in ((True, False) if want_blue else (False, True)):
            if as_blue:
                over = self.enumerate(red, blue | bit, out, limit)
            else:
                over = self.enumerate(red | bit, blue, out, limit)
            if over:
                return True
        return False


def solve(m, gmasks, hmasks, red, blue, budget=-1):
    """Return ``(status, blue_mask, nodes)``; unassigned edges end up Red."""
    search = _Search(m, gmasks, hmasks, budget)
    try:
        found = search.solve(red, blue)
    except _Abort:
        return UNKNOWN, 0, search.nodes
    if found is None:
        return UNSAT, 0, search.nodes
    return SAT, found, search.nodes


def enumerate_colorings(m, gmasks, hmasks, red, blue, limit, budget=-1):
    """Return ``(status, blue_masks, nodes)`` with status COMPLETE, TRUNCATED or UNKNOWN."""
    search = _Search(m, gmasks, hmasks, budget)
    out: list[int] = []
    try:
        over = search.enumerate(red, blue, out, limit)
    except _Abort:
        return UNKNOWN, out, search.nodes
    return (TRUNCATED if over else COMPLETE), out, search.nodes
