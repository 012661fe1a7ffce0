# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled clause search kernel (hosts with at most 64 edges).

Mirrors ``_pykernel`` step for step: same propagation order, same branching
rule, same value order, hence the same witnesses and node counts.
"""
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

SAT, UNSAT, UNKNOWN = 1, 0, -1
COMPLETE, TRUNCATED = 1, 0

BACKEND = "cython"
MAX_EDGES = 64

cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long) nogil


cdef struct Search:
    uint64_t full
    uint64_t *g
    int ng
    uint64_t *h
    int nh
    int64_t budget
    int64_t nodes
    bint aborted


cdef inline bint propagate(Search *s, uint64_t *red, uint64_t *blue) nogil:
    cdef uint64_t r, fr, x, bl = blue[0], rd = red[0]
    cdef int i
    cdef bint changed = True
    while changed:
        changed = False
        fr = s.full & ~(rd | bl)
        for i in range(s.ng):
            x = s.g[i]
            if x & bl:
                continue
            r = x & fr
            if r == 0:
                return False
            if (r & (r - 1)) == 0:
                bl |= r
                fr &= ~r
                changed = True
        for i in range(s.nh):
            x = s.h[i]
            if x & rd:
                continue
            r = x & fr
            if r == 0:
                return False
            if (r & (r - 1)) == 0:
                rd |= r
                fr &= ~r
                changed = True
    red[0] = rd
    blue[0] = bl
    return True


cdef inline uint64_t choose(Search *s, uint64_t red, uint64_t blue, bint *want_blue) nogil:
    cdef uint64_t fr = s.full & ~(red | blue), r, best = 0
    cdef int i, c, best_count = 1 << 30
    for i in range(s.ng):
        if (s.g[i] & blue) == 0:
            r = s.g[i] & fr
            c = popcount64(r)
            if c < best_count:
                best = r
                best_count = c
                want_blue[0] = True
    for i in range(s.nh):
        if (s.h[i] & red) == 0:
            r = s.h[i] & fr
            c = popcount64(r)
            if c < best_count:
                best = r
                best_count = c
                want_blue[0] = False
    return best & (~best + 1)


cdef inline bint tick(Search *s) nogil:
    s.nodes += 1
    if s.budget >= 0 and s.nodes > s.budget:
        s.aborted = True
        return False
    return True


cdef bint dfs_solve(Search *s, uint64_t red, uint64_t blue, uint64_t *out) nogil:
    cdef bint want_blue = False
    cdef uint64_t bit
    if not tick(s):
        return False
    if not propagate(s, &red, &blue):
        return False
    bit = choose(s, red, blue, &want_blue)
    if bit == 0:
        out[0] = blue
        return True
    if want_blue:
        if dfs_solve(s, red, blue | bit, out):
            return True
        if s.aborted:
            return False
        return dfs_solve(s, red | bit, blue, out)
    if dfs_solve(s, red | bit, blue, out):
        return True
    if s.aborted:
        return False
    return dfs_solve(s, red, blue | bit, out)


cdef bint dfs_enum(Search *s, uint64_t red, uint64_t blue, list out, Py_ssize_t limit) except -1:
    # Returns True once the limit is exceeded.
    cdef bint want_blue = False
    cdef uint64_t bit, fr, x, low, extra
    cdef uint64_t bits[64]
    cdef int nb, j
    cdef uint64_t sub
    if not tick(s):
        return False
    if not propagate(s, &red, &blue):
        return False
    bit = choose(s, red, blue, &want_blue)
    if bit == 0:
        fr = s.full & ~(red | blue)
        nb = 0
        x = fr
        while x:
            low = x & (~x + 1)
            bits[nb] = low
            nb += 1
            x ^= low
        sub = 0
        while True:
            extra = 0
            for j in range(nb):
                if (sub >> j) & 1:
                    extra |= bits[j]
            if len(out) >= limit:
                return True
            out.append(blue | extra)
            sub += 1
            if nb < 64 and (sub >> nb):
                break
            if nb == 64 and sub == 0:
                break
        return False
    if want_blue:
        if dfs_enum(s, red, blue | bit, out, limit):
            return True
        if s.aborted:
            return False
        return dfs_enum(s, red | bit, blue, out, limit)
    if dfs_enum(s, red | bit, blue, out, limit):
        return True
    if s.aborted:
        return False
    return dfs_enum(s, red, blue | bit, out, limit)


cdef int _setup(Search *s, int m, gmasks, hmasks, long long budget) except -1:
    cdef int i
    if m > 64:
        raise ValueError("compiled kernel supports at most 64 edges")
    s.full = (<uint64_t>0xFFFFFFFFFFFFFFFF) if m == 64 else ((<uint64_t>1 << m) - 1)
    s.ng = len(gmasks)
    s.nh = len(hmasks)
    s.g = <uint64_t *>malloc(sizeof(uint64_t) * (s.ng + 1))
    s.h = <uint64_t *>malloc(sizeof(uint64_t) * (s.nh + 1))
    if s.g == NULL or s.h == NULL:
        free(s.g)
        free(s.h)
        raise MemoryError()
    for i in range(s.ng):
        s.g[i] = gmasks[i]
    for i in range(s.nh):
        s.h[i] = hmasks[i]
    s.budget = budget
    s.nodes = 0
    s.aborted = False
    return 0


def solve(int m, gmasks, hmasks, red, blue, long long budget=-1):
    """Return ``(status, blue_mask, nodes)``; unassigned edges end up Red."""
    cdef Search s
    cdef uint64_t out = 0
    cdef uint64_t r0 = red, b0 = blue
    cdef bint found
    _setup(&s, m, gmasks, hmasks, budget)
    try:
        with nogil:
            found = dfs_solve(&s, r0, b0, &out)
    finally:
        free(s.g)
        free(s.h)
    if s.aborted:
        return UNKNOWN, 0, s.nodes
    if not found:
        return UNSAT, 0, s.nodes
    return SAT, int(out), s.nodes


def enumerate_colorings(int m, gmasks, hmasks, red, blue, Py_ssize_t limit, long long budget=-1):
    """Return ``(status, blue_masks, nodes)`` with status COMPLETE, TRUNCATED or UNKNOWN."""
    cdef Search s
    cdef list out = []
    cdef bint over
    _setup(&s, m, gmasks, hmasks, budget)
    try:
        over = dfs_enum(&s, red, blue, out, limit)
    finally:
        free(s.g)
        free(s.h)
    if s.aborted:
        return UNKNOWN, out, s.nodes
    return (TRUNCATED if over else COMPLETE), out, s.nodes
