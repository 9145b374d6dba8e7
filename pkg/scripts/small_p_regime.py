#!/usr/bin/env python3
"""Exact P(u<->v) - P(u<->v') for small constant p on a few graph families.

At small p the difference is dominated by the shortest u-v path in the
bottom level, so it should be positive and of order p^dist.  The script
prints the exact value and its ratio to p^dist for a decreasing p sequence.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from bunkbed.auxiliary import small_p_differences
from bunkbed.graph import build_bunkbed, load_graph


@dataclass
class SmallPConfig:
    graphs: list[str] = field(default_factory=lambda: ["complete:4", "path:4", "complete:6"])
    exponents: list[int] = field(default_factory=lambda: [1, 2, 3, 4, 5])  # p = 2^-e


def _bottom_distance(g, u, v):
    adj = {c: set() for c in range(g.n_columns)}
    for a, b in g.original.edges:
        adj[a].add(b)
        adj[b].add(a)
    dist, frontier = {u: 0}, [u]
    while frontier:
        nxt = []
        for a in frontier:
            for b in adj[a] - dist.keys():
                dist[b] = dist[a] + 1
                nxt.append(b)
        frontier = nxt
    return dist.get(v)


def run(cfg: SmallPConfig) -> list[dict]:
    rows = []
    for spec in cfg.graphs:
        g = build_bunkbed(load_graph(spec))
        u, v = 0, g.n_columns - 1
        d = _bottom_distance(g, u, v)
        ps = [Fraction(1, 2**e) for e in cfg.exponents]
        for p, diff in small_p_differences(g, u, v, ps):
            scaled = diff / p**d if d is not None else None
            rows.append(dict(graph=spec, u=u, v=v, dist=d, p=str(p), difference=str(diff), ratio_to_p_dist=float(scaled) if scaled is not None else ""))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--graph", action="append", help="complete:n, path:n or an edge-list file (repeatable)")
    ap.add_argument("--max-exponent", type=int, default=6, help="smallest p is 2^-max_exponent")
    args = ap.parse_args(argv)
    cfg = SmallPConfig(exponents=list(range(1, args.max_exponent + 1)))
    if args.graph:
        cfg.graphs = args.graph
    rows = run(cfg)
    writer = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]))
    writer.writeheader()
    writer.writerows(rows)
    negative = [r for r in rows if Fraction(r["difference"]) < 0]
    print(f"{len(rows)} points, {len(negative)} with a negative difference", file=sys.stderr)


if __name__ == "__main__":
    main()
