#!/usr/bin/env python3
"""Enumerate all connected triangle-free graphs up to isomorphism, filter to
the search pipeline's input class (connected, incomplete, triangle-free, no
separating clique), and write them as a graph6 stream.

Regenerates tests/data/connected_tf_nosep_le8.g6:

    python3 scripts/enumerate_small.py 8 tests/data/connected_tf_nosep_le8.g6

Incremental construction: every connected triangle-free graph on n vertices
arises from one on n-1 vertices by attaching a new vertex to a nonempty
independent-in-link subset.  Deduplication per size uses invariant bucketing
plus exact isomorphism checks (networkx VF2).
"""

import sys
from collections import defaultdict
from pathlib import Path

import networkx as nx

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from visualraag.graphs import (  # noqa: E402
    Graph,
    bits,
    has_separating_clique,
    is_incomplete,
    is_triangle_free,
    to_graph6,
)


def to_nx(adj):
    h = nx.Graph()
    h.add_nodes_from(range(len(adj)))
    for v, row in enumerate(adj):
        w = row
        while w:
            low = w & -w
            u = low.bit_length() - 1
            w ^= low
            if u > v:
                h.add_edge(v, u)
    return h


def invariant(adj):
    degs = sorted(bin(r).count("1") for r in adj)
    nbr_profiles = sorted(
        tuple(sorted(bin(adj[u]).count("1") for u in iter_bits(r))) for r in adj
    )
    return (len(adj), tuple(degs), tuple(nbr_profiles))


def iter_bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def grow(layer):
    """All connected triangle-free graphs with one more vertex, deduplicated."""
    buckets = defaultdict(list)
    out = []
    for adj in layer:
        n = len(adj)
        for subset in range(1, 1 << n):
            ok = True
            s = subset
            chosen = list(iter_bits(subset))
            for i, u in enumerate(chosen):
                if adj[u] & subset:  # two chosen vertices adjacent: triangle
                    ok = False
                    break
            if not ok:
                continue
            new_adj = [row | (1 << n if subset >> v & 1 else 0) for v, row in enumerate(adj)]
            new_adj.append(subset)
            key = invariant(new_adj)
            candidate = to_nx(new_adj)
            if any(nx.is_isomorphic(candidate, seen) for seen in buckets[key]):
                continue
            buckets[key].append(candidate)
            out.append(tuple(new_adj))
    return out


def main():
    max_n = int(sys.argv[1]) if len(sys.argv) > 1 else 8
    out_path = Path(sys.argv[2]) if len(sys.argv) > 2 else None
    layer = [(0,)]  # the single vertex
    qualifying = []
    counts = {}
    for n in range(2, max_n + 1):
        layer = grow(layer)
        counts[n] = len(layer)
        for adj in layer:
            g = Graph([str(i) for i in range(len(adj))], adj)
            if is_incomplete(g) and is_triangle_free(g) and not has_separating_clique(g):
                qualifying.append(g)
        print(f"n={n}: {len(layer)} connected triangle-free graphs", file=sys.stderr)
    lines = [to_graph6(g) for g in qualifying]
    print(f"qualifying (incomplete, no separating clique): {len(lines)}", file=sys.stderr)
    if out_path:
        out_path.parent.mkdir(parents=True, exist_ok=True)
        out_path.write_text("\n".join(lines) + "\n")
    else:
        print("\n".join(lines))


if __name__ == "__main__":
    main()
