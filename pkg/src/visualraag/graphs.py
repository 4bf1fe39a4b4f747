"""Immutable finite simplicial graphs with bitset adjacency.

Vertices are dense integer ids 0..n-1; display names live in a side table
and are used for all serialization.  Vertex sets are plain Python ints used
as bitmasks, which makes link-containment and separator checks single
machine-word operations for the graph sizes this package targets.

All functions here are pure; a Graph never mutates after construction, so
everything is safe for concurrent reads.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def bits(iterable: Iterable[int]) -> int:
    """Pack vertex ids into a bitmask."""
    m = 0
    for v in iterable:
        m |= 1 << v
    return m


def iter_bits(mask: int) -> Iterator[int]:
    """Yield vertex ids of a bitmask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bit_list(mask: int) -> list[int]:
    return list(iter_bits(mask))


class NotBipartiteError(ValueError):
    """Raised by bipartition; carries an odd closed walk as evidence."""

    def __init__(self, odd_walk: list[int]):
        super().__init__(f"graph is not bipartite; odd closed walk {odd_walk}")
        self.odd_walk = odd_walk


@dataclass(frozen=True)
class TwoColoring:
    """A proper 2-coloring, stored as the bitmask of each color class."""

    red: int
    blue: int

    def color_of(self, v: int) -> str:
        return "red" if self.red >> v & 1 else "blue"

    def same_class(self, u: int, v: int) -> bool:
        return bool((self.red >> u & 1) == (self.red >> v & 1))


class Graph:
    """Finite simplicial graph: unique display names plus bitset adjacency.

    No self-loops, no multi-edges; adjacency is symmetric.  ``adj[v]`` is the
    bitmask of neighbors of ``v`` (the link).
    """

    __slots__ = ("names", "adj", "_index")

    def __init__(self, names: Sequence[str], adj: Sequence[int]):
        names = tuple(names)
        adj = tuple(adj)
        if len(names) != len(adj):
            raise ValueError("names and adjacency rows disagree in length")
        if len(set(names)) != len(names):
            raise ValueError("display names must be unique")
        full = (1 << len(names)) - 1
        for v, row in enumerate(adj):
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {names[v]}")
            if row & ~full:
                raise ValueError(f"adjacency row of {names[v]} mentions unknown vertices")
            for w in iter_bits(row):
                if not adj[w] >> v & 1:
                    raise ValueError(f"adjacency not symmetric between {names[v]} and {names[w]}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "adj", adj)
        object.__setattr__(self, "_index", {name: v for v, name in enumerate(names)})

    def __setattr__(self, *a):  # immutable
        raise AttributeError("Graph is immutable")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edges(cls, names: Sequence[str], edges: Iterable[tuple[str, str]]) -> "Graph":
        names = list(names)
        index = {name: v for v, name in enumerate(names)}
        adj = [0] * len(names)
        for a, b in edges:
            u, w = index[a], index[b]
            if u == w:
                raise ValueError(f"self-loop at {a}")
            adj[u] |= 1 << w
            adj[w] |= 1 << u
        return cls(names, adj)

    @classmethod
    def from_int_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Graph on vertices named "0".."n-1" with integer edge pairs."""
        adj = [0] * n
        for u, w in edges:
            if u == w:
                raise ValueError(f"self-loop at {u}")
            adj[u] |= 1 << w
            adj[w] |= 1 << u
        return cls([str(i) for i in range(n)], adj)

    # -- basics ------------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.names == other.names and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.names, self.adj))

    def __repr__(self) -> str:
        return f"Graph({self.n} vertices, {self.edge_count()} edges)"

    def vertex_id(self, name: str) -> int:
        return self._index[name]

    def try_vertex_id(self, name: str) -> int | None:
        return self._index.get(name)

    def has_edge(self, u: int, w: int) -> bool:
        return bool(self.adj[u] >> w & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for w in iter_bits(self.adj[u] >> (u + 1) << (u + 1)):
                yield (u, w)

    def edge_count(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def name_pair(self, u: int, w: int) -> tuple[str, str]:
        return (self.names[u], self.names[w])

    def subgraph(self, mask: int) -> "Graph":
        """Induced subgraph on the vertices of ``mask``, names preserved."""
        verts = bit_list(mask)
        pos = {v: i for i, v in enumerate(verts)}
        adj = [bits(pos[w] for w in iter_bits(self.adj[v] & mask)) for v in verts]
        return Graph([self.names[v] for v in verts], adj)

    # -- connectivity helpers (masks) --------------------------------------

    def reach(self, start: int, active: int) -> int:
        """Bitmask of vertices reachable from ``start`` (a vertex id) inside ``active``."""
        reached = 1 << start
        frontier = reached
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= self.adj[v]
            nxt &= active & ~reached
            reached |= nxt
            frontier = nxt
        return reached

    def is_connected_mask(self, active: int) -> bool:
        """Is the induced subgraph on ``active`` connected?  Empty counts as connected."""
        if active == 0:
            return True
        start = (active & -active).bit_length() - 1
        return self.reach(start, active) == active

    def components(self, active: int) -> list[int]:
        """Connected components of the induced subgraph on ``active``, as masks."""
        comps = []
        rest = active
        while rest:
            start = (rest & -rest).bit_length() - 1
            comp = self.reach(start, rest)
            comps.append(comp)
            rest &= ~comp
        return comps


# --------------------------------------------------------------------------
# vocabulary operations


def complement(g: Graph) -> Graph:
    """Same vertices; edge present iff distinct vertices are non-adjacent in g."""
    full = g.full_mask
    return Graph(g.names, [full & ~g.adj[v] & ~(1 << v) for v in range(g.n)])


def link(g: Graph, v: int) -> int:
    """Neighbors of v, as a bitmask."""
    if not 0 <= v < g.n:
        raise KeyError(f"unknown vertex id {v}")
    return g.adj[v]


def star(g: Graph, v: int) -> int:
    return link(g, v) | 1 << v


def is_triangle_free(g: Graph) -> bool:
    for u, w in g.edges():
        if g.adj[u] & g.adj[w]:
            return False
    return True


def is_incomplete(g: Graph) -> bool:
    """True iff some pair of distinct vertices is non-adjacent.

    The empty graph and a single vertex count as complete.
    """
    full = g.full_mask
    return any(g.adj[v] | 1 << v != full for v in range(g.n))


def cliques(g: Graph) -> Iterator[int]:
    """All cliques of g as bitmasks, the empty clique included.

    Plain recursive extension; inputs are small, and on triangle-free graphs
    this degenerates to the empty set, vertices, and edges.
    """

    def extend(current: int, candidates: int) -> Iterator[int]:
        yield current
        for v in iter_bits(candidates):
            # keep candidates above v to avoid duplicates
            above = candidates & ~((1 << (v + 1)) - 1)
            yield from extend(current | 1 << v, above & g.adj[v])

    yield from extend(0, g.full_mask)


def has_separating_clique(g: Graph) -> bool:
    """Is there a clique whose removal leaves more than one component?

    A disconnected graph is separated by the empty clique.  All cliques are
    tested; for triangle-free graphs that means the empty set, single
    vertices, and edges.
    """
    full = g.full_mask
    for c in cliques(g):
        if len(g.components(full & ~c)) > 1:
            return True
    return False


def bipartition(g: Graph) -> TwoColoring:
    """Proper 2-coloring with the first vertex of each component red.

    Raises NotBipartiteError with an odd closed walk when impossible.
    """
    red = blue = 0
    parent: dict[int, int | None] = {}
    for comp in g.components(g.full_mask):
        root = (comp & -comp).bit_length() - 1
        red |= 1 << root
        parent[root] = None
        frontier = [root]
        while frontier:
            nxt = []
            for v in frontier:
                v_red = red >> v & 1
                for w in iter_bits(g.adj[v]):
                    if (red | blue) >> w & 1:
                        if bool(red >> w & 1) == bool(v_red):
                            walk = _odd_walk(parent, v, w)
                            raise NotBipartiteError(walk)
                        continue
                    parent[w] = v
                    if v_red:
                        blue |= 1 << w
                    else:
                        red |= 1 << w
                    nxt.append(w)
            frontier = nxt
    return TwoColoring(red, blue)


def _odd_walk(parent: dict[int, int | None], v: int, w: int) -> list[int]:
    """Closed odd walk through the offending edge v-w, via BFS-tree paths."""

    def path_to_root(x: int) -> list[int]:
        out = [x]
        while parent[out[-1]] is not None:
            out.append(parent[out[-1]])  # type: ignore[arg-type]
        return out

    pv, pw = path_to_root(v), path_to_root(w)
    return list(reversed(pv)) + pw[:-1] if pv[-1] == pw[-1] else pv + pw


def satellites(g: Graph, strict: bool = False) -> list[tuple[int, int]]:
    """Pairs (v, dominators) where the dominator set is nonempty.

    w dominates v when lk(v) is contained in lk(w) and w != v.  Containment
    is non-strict by default, so twins dominate each other; pass strict=True
    to require proper containment.
    """
    out = []
    for v in range(g.n):
        lv = g.adj[v]
        doms = 0
        for w in range(g.n):
            if w == v:
                continue
            lw = g.adj[w]
            if lv & ~lw:
                continue
            if strict and lv == lw:
                continue
            doms |= 1 << w
        if doms:
            out.append((v, doms))
    return out


def is_satellite(g: Graph, v: int, active: int | None = None, strict: bool = False) -> bool:
    """Is v a satellite inside the induced subgraph on ``active``?"""
    if active is None:
        active = g.full_mask
    lv = g.adj[v] & active
    for w in iter_bits(active & ~(1 << v)):
        lw = g.adj[w] & active
        if lv & ~lw:
            continue
        if strict and lv == lw:
            continue
        return True
    return False


def induced_cycles(g: Graph, max_len: int | None = None, active: int | None = None) -> Iterator[list[int]]:
    """Chordless cycles, each yielded once up to rotation and reflection.

    DFS from the smallest cycle vertex; a path extends only by vertices
    adjacent to nothing on the path except its last vertex, so every closed
    walk found is induced.  Unbounded enumeration is exponential in general.
    """
    if max_len is not None and max_len < 3:
        return
    if active is None:
        active = g.full_mask

    def extend(path: list[int], path_mask: int) -> Iterator[list[int]]:
        last = path[-1]
        start = path[0]
        if len(path) >= 3 and g.adj[last] >> start & 1:
            # closing edge exists; any longer path through `last` would carry
            # the chord start-last, so close (canonically) and stop.
            if path[1] < last:
                yield list(path)
            return
        if max_len is not None and len(path) >= max_len:
            return
        for w in iter_bits(g.adj[last] & active):
            if w <= start or path_mask >> w & 1:
                continue
            # w may touch the path only at `last` (and start, closing next call)
            if g.adj[w] & path_mask & ~(1 << last) & ~(1 << start):
                continue
            yield from extend(path + [w], path_mask | 1 << w)

    for s in iter_bits(active):
        for u in iter_bits(g.adj[s] & active):
            if u < s:
                continue
            yield from extend([s, u], 1 << s | 1 << u)


def n_chords(g: Graph, cycle: Sequence[int], n: int) -> list[tuple[int, ...]]:
    """Paths of length n (n = 1 or 2) between cycle vertices whose two cycle
    subsegments both have more than n edges.

    For n=2 the middle vertex may lie on or off the cycle.
    """
    if n not in (1, 2):
        raise ValueError("only 1-chords and 2-chords are defined here")
    length = len(cycle)
    out: list[tuple[int, ...]] = []
    for i, j in itertools.combinations(range(length), 2):
        d = min(j - i, length - (j - i))
        if d <= n:
            continue
        x, y = cycle[i], cycle[j]
        if n == 1:
            if g.has_edge(x, y):
                out.append((x, y))
        else:
            for m in iter_bits(g.adj[x] & g.adj[y]):
                out.append((x, m, y))
    return out


# --------------------------------------------------------------------------
# serialization: JSON and graph6


def to_json_dict(g: Graph) -> dict:
    return {
        "vertices": list(g.names),
        "edges": [[g.names[u], g.names[w]] for u, w in g.edges()],
    }


def to_json(g: Graph, **kwargs) -> str:
    return json.dumps(to_json_dict(g), **kwargs)


def from_json_dict(data: dict) -> Graph:
    try:
        names = data["vertices"]
        edges = [(a, b) for a, b in data["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed graph JSON: {exc}") from exc
    return Graph.from_edges(names, edges)


def from_json(text: str) -> Graph:
    return from_json_dict(json.loads(text))


_G6_HEADER = ">>graph6<<"


def from_graph6(line: str | bytes) -> Graph:
    """Parse one graph6 line (names become "0".."n-1")."""
    if isinstance(line, bytes):
        line = line.decode("ascii")
    line = line.strip()
    if line.startswith(_G6_HEADER):
        line = line[len(_G6_HEADER):]
    if not line:
        raise ValueError("empty graph6 string")
    data = [ord(c) - 63 for c in line]
    if any(b < 0 or b > 63 for b in data):
        raise ValueError("invalid graph6 character")
    if data[0] < 63:
        n, data = data[0], data[1:]
    elif len(data) >= 4 and data[1] < 63:
        n = (data[1] << 12) + (data[2] << 6) + data[3]
        data = data[4:]
    elif len(data) >= 8:
        n = 0
        for b in data[2:8]:
            n = (n << 6) + b
        data = data[8:]
    else:
        raise ValueError("truncated graph6 size field")
    nbits = n * (n - 1) // 2
    if len(data) != (nbits + 5) // 6:
        raise ValueError("graph6 body has wrong length")
    bitstream = []
    for b in data:
        for k in range(5, -1, -1):
            bitstream.append(b >> k & 1)
    adj = [0] * n
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bitstream[idx]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            idx += 1
    return Graph([str(i) for i in range(n)], adj)


def to_graph6(g: Graph) -> str:
    """Serialize to a graph6 string (standard format, no header)."""
    n = g.n
    if n <= 62:
        head = [n + 63]
    elif n <= 258047:
        head = [126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63]
    else:
        head = [126, 126] + [((n >> (6 * k)) & 63) + 63 for k in range(5, -1, -1)]
    stream = []
    for j in range(1, n):
        for i in range(j):
            stream.append(g.adj[i] >> j & 1)
    while len(stream) % 6:
        stream.append(0)
    body = []
    for k in range(0, len(stream), 6):
        val = 0
        for b in stream[k:k + 6]:
            val = val << 1 | b
        body.append(val + 63)
    return "".join(chr(c) for c in head + body)
