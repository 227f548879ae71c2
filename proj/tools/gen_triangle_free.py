#!/usr/bin/env python3
"""Enumerate triangle-free graphs up to isomorphism and write them in the
line-per-graph format read by `aeq tdrank` ("n m u1 v1 ... um vm").

Graphs on n+1 vertices are grown from those on n vertices by attaching a new
vertex to an independent set; isomorphic copies are removed with networkx.
"""

import argparse
import itertools
import sys

import networkx as nx

# Unlabelled triangle-free graphs on n = 1, 2, ... vertices (OEIS A006785).
KNOWN_COUNTS = [1, 2, 3, 7, 14, 38, 107, 410, 1897, 12172]


def independent_sets(g):
    nodes = list(g.nodes)
    for r in range(len(nodes) + 1):
        for subset in itertools.combinations(nodes, r):
            if all(not g.has_edge(u, v) for u, v in itertools.combinations(subset, 2)):
                yield subset


def extend(graphs):
    buckets = {}
    out = []
    for g in graphs:
        n = g.number_of_nodes()
        for subset in independent_sets(g):
            h = g.copy()
            h.add_node(n)
            h.add_edges_from((n, v) for v in subset)
            key = (tuple(sorted(d for _, d in h.degree())), nx.weisfeiler_lehman_graph_hash(h, iterations=3))
            bucket = buckets.setdefault(key, [])
            if any(nx.is_isomorphic(h, other) for other in bucket):
                continue
            bucket.append(h)
            out.append(h)
    return out


def canonical_order(g):
    edges = sorted(tuple(sorted(e)) for e in g.edges)
    return (g.number_of_edges(), edges)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=8)
    parser.add_argument("--out", default="-")
    args = parser.parse_args()

    level = [nx.empty_graph(1)]
    by_n = {1: level}
    for n in range(2, args.max_n + 1):
        level = extend(level)
        by_n[n] = level

    for n, graphs in by_n.items():
        if n <= len(KNOWN_COUNTS) and len(graphs) != KNOWN_COUNTS[n - 1]:
            sys.exit(f"n={n}: found {len(graphs)} graphs, expected {KNOWN_COUNTS[n - 1]}")

    out = sys.stdout if args.out == "-" else open(args.out, "w")
    out.write(f"# all triangle-free graphs on 1..{args.max_n} vertices up to isomorphism\n")
    out.write("# n m u1 v1 ... um vm\n")
    for n, graphs in by_n.items():
        for g in sorted(graphs, key=canonical_order):
            edges = sorted(tuple(sorted(e)) for e in g.edges)
            out.write(" ".join(map(str, [n, len(edges)] + [x for e in edges for x in e])) + "\n")


if __name__ == "__main__":
    main()
