"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``RAMSEY_SENDERS_PURE_PYTHON=1`` to force the fallback. Hosts with more
than 64 edges always use the Python kernel.
"""
from __future__ import annotations

import os

from . import _pykernel

SAT, UNSAT, UNKNOWN = _pykernel.SAT, _pykernel.UNSAT, _pykernel.UNKNOWN
COMPLETE, TRUNCATED = _pykernel.COMPLETE, _pykernel.TRUNCATED

_compiled = None
if not os.environ.get("RAMSEY_SENDERS_PURE_PYTHON"):
    try:
        from . import _ckernel as _compiled
    except ImportError:
        _compiled = None

BACKEND = _compiled.BACKEND if _compiled is not None else _pykernel.BACKEND


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _compiled is not None else [])


def _impl(m: int, backend: str | None):
    if backend == "python" or _compiled is None or m > 64:
        if backend == "cython" and (_compiled is None or m > 64):
            raise RuntimeError("compiled kernel unavailable for this input")
        return _pykernel
    return _compiled


def solve(m, gmasks, hmasks, red=0, blue=0, budget=None, backend=None):
    """``(status, blue_mask, nodes)`` for one pinned satisfiability query."""
    b = -1 if budget is None else int(budget)
    return _impl(m, backend).solve(m, gmasks, hmasks, red, blue, b)


def enumerate_colorings(m, gmasks, hmasks, red=0, blue=0, limit=1000, budget=None, backend=None):
    b = -1 if budget is None else int(budget)
    return _impl(m, backend).enumerate_colorings(m, gmasks, hmasks, red, blue, limit, b)
