#!/usr/bin/env python3
"""Time the compiled and pure-Python clause kernels on the same workloads.

    python3 benchmarks/bench_kernels.py --repeat 3
"""
from __future__ import annotations

import argparse
import json
import statistics
import time
from pathlib import Path

from ramsey_senders import kernel
from ramsey_senders.coloring import Goal, build_clauses
from ramsey_senders.graph import complete_graph, parse_graph6
from ramsey_senders.sender import Polarity, SenderClaim, SenderCertificate, check_sender

K3 = complete_graph(3)
KK = Goal(K3, K3)


def _raw(host, goal, enumerate_limit=None):
    s = build_clauses(host, goal)

    def run(backend):
        if enumerate_limit is None:
            return kernel.solve(host.m, s.gmasks, s.hmasks, backend=backend)[2]
        return kernel.enumerate_colorings(host.m, s.gmasks, s.hmasks, limit=enumerate_limit,
                                          backend=backend)[2]
    return run


def _sender(claim):
    def run(backend):
        return check_sender(claim, backend=backend).nodes
    return run


def workloads():
    k6 = complete_graph(6)
    sender = SenderClaim(parse_graph6("FK~~w"), (0, 3), (1, 2), KK, Polarity.POSITIVE)
    data = Path(__file__).resolve().parent.parent / "tests" / "data" / "negative_k3_d4.json"
    big = SenderCertificate.from_json(json.loads(data.read_text())).claim
    return {
        "arrows K6 (K3,K3)": _raw(k6, KK),
        "enumerate all good colorings of K5": _raw(complete_graph(5), KK, enumerate_limit=10**6),
        "check positive sender on 7 vertices": _sender(sender),
        "check negative sender on 16 vertices": _sender(big),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = kernel.available_backends()
    print(f"backends: {', '.join(backends)}")
    rows = []
    for name, fn in workloads().items():
        times, nodes = {}, {}
        for b in backends:
            samples = []
            for _ in range(args.repeat):
                t = time.perf_counter()
                nodes[b] = fn(b)
                samples.append(time.perf_counter() - t)
            times[b] = statistics.median(samples)
        if len(set(nodes.values())) != 1:
            raise SystemExit(f"{name}: backends disagree on node counts {nodes}")
        rows.append((name, nodes[backends[0]], times))
    width = max(len(r[0]) for r in rows)
    header = f"{'workload':<{width}}  {'nodes':>8}" + "".join(f"  {b:>10}" for b in backends)
    if len(backends) > 1:
        header += "  speedup"
    print(header)
    for name, n, times in rows:
        line = f"{name:<{width}}  {n:>8}" + "".join(f"  {times[b] * 1e3:>8.2f}ms" for b in backends)
        if len(backends) > 1:
            line += f"  {times['python'] / times['cython']:>6.1f}x"
        print(line)


if __name__ == "__main__":
    main()
