"""Core graph values: vertices, simple graphs, cycles, and small graph queries.

Everything in here is deliberately plain: vertices are dense integer ids
0..n-1, a graph is an immutable adjacency structure over a fixed universe
with a live-vertex mask, and a cycle is a canonicalised tuple of vertices.
All operations are pure; taking a subgraph never renumbers vertices.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Raised for structurally invalid graph inputs."""


class Graph:
    """Undirected simple graph on the universe 0..n-1.

    Vertices outside the live mask do not exist for any query. Neighbor
    lists are kept sorted so that every iteration order is deterministic.
    """

    __slots__ = ("_n", "_adj", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (),
                 vertices: Iterable[int] | None = None):
        if n < 0:
            raise GraphError("vertex universe must be non-negative")
        self._n = n
        live = range(n) if vertices is None else vertices
        adj: dict[int, list[int]] = {}
        for v in live:
            if not 0 <= v < n:
                raise GraphError(f"vertex {v} outside universe 0..{n - 1}")
            adj[v] = []
        m = 0
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if u not in adj or v not in adj:
                raise GraphError(f"edge ({u}, {v}) touches a dead vertex")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphError(f"duplicate edge ({u}, {v})")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
            m += 1
        for v in adj:
            adj[v].sort()
        self._adj = adj
        self._m = m

    # -- basic queries ----------------------------------------------------

    @property
    def n(self) -> int:
        """Size of the fixed universe (not the number of live vertices)."""
        return self._n

    @property
    def m(self) -> int:
        return self._m

    def vertices(self) -> list[int]:
        return sorted(self._adj)

    def __contains__(self, v: int) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        if u not in self._adj or v not in self._adj:
            return False
        return v in self._adj[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as (u, v) with u < v, in ascending order."""
        for u in sorted(self._adj):
            for v in self._adj[u]:
                if u < v:
                    yield (u, v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self._n == other._n and self._adj.keys() == other._adj.keys()
                and self._adj == other._adj)

    def __hash__(self):  # pragma: no cover - graphs are not meant as dict keys
        return hash((self._n, tuple(sorted(self._adj)), tuple(self.edges())))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, live={len(self._adj)}, m={self._m})"

    # -- derived graphs ---------------------------------------------------

    def induced(self, keep: Iterable[int]) -> "Graph":
        keep_set = set(keep)
        dead = keep_set - self._adj.keys()
        if dead:
            raise GraphError(f"cannot keep dead vertices {sorted(dead)}")
        edges = [(u, v) for u, v in self.edges() if u in keep_set and v in keep_set]
        return Graph(self._n, edges, vertices=keep_set)

    def without(self, drop: Iterable[int]) -> "Graph":
        drop_set = set(drop)
        return self.induced(v for v in self._adj if v not in drop_set)


def induced_subgraph(g: Graph, keep: Iterable[int]) -> Graph:
    """Subgraph induced on `keep` (which must be live); ids are preserved."""
    return g.induced(keep)


class Cycle:
    """A simple cycle, stored in canonical form.

    Canonical form: rotate so the smallest vertex id comes first, then
    orient toward the smaller second element. Two Cycle values are equal
    exactly when they traverse the same edges.
    """

    __slots__ = ("vertices",)

    def __init__(self, verts: Sequence[int], graph: Graph | None = None):
        vs = list(verts)
        if len(vs) < 3:
            raise GraphError(f"cycle needs at least 3 vertices, got {len(vs)}")
        if len(set(vs)) != len(vs):
            raise GraphError("cycle vertices must be distinct")
        if graph is not None:
            for a, b in zip(vs, vs[1:] + vs[:1]):
                if not graph.has_edge(a, b):
                    raise GraphError(f"cycle edge ({a}, {b}) missing from graph")
        i = vs.index(min(vs))
        rot = vs[i:] + vs[:i]
        if rot[1] > rot[-1]:
            rot = [rot[0]] + rot[:0:-1]
        self.vertices: tuple[int, ...] = tuple(rot)

    @property
    def length(self) -> int:
        return len(self.vertices)

    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        """Edges of the cycle as (min, max) pairs."""
        vs = self.vertices
        out = []
        for a, b in zip(vs, vs[1:] + vs[:1]):
            out.append((a, b) if a < b else (b, a))
        return out

    def __contains__(self, v: int) -> bool:
        return v in self.vertices

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cycle):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"Cycle{self.vertices}"


def is_long_s_cycle(c: Cycle, s: Iterable[int], ell: int) -> bool:
    """True when the cycle has length >= ell and meets the terminal set."""
    if c.length < ell:
        return False
    s_set = s if isinstance(s, (set, frozenset)) else set(s)
    return any(v in s_set for v in c.vertices)


def is_h_path(p: Sequence[int], h_vertices: Iterable[int],
              h_edge: Callable[[int, int], bool]) -> bool:
    """Check the H-path conditions for a path given as a vertex sequence.

    A path qualifies when both endpoints lie in H, no internal vertex does,
    and at least one of its edges is not an edge of H. The path itself is
    assumed to be a valid path of the host graph; `h_edge` answers whether
    a host edge belongs to H.
    """
    if len(p) < 2:
        return False
    h_set = set(h_vertices)
    if p[0] not in h_set or p[-1] not in h_set:
        return False
    if any(v in h_set for v in p[1:-1]):
        return False
    return any(not h_edge(a, b) for a, b in zip(p, p[1:]))


def ball(g: Graph, centers: Iterable[int], radius: int) -> set[int]:
    """All live vertices within graph distance `radius` of `centers`."""
    if radius < 0:
        raise GraphError("radius must be non-negative")
    frontier = deque()
    dist: dict[int, int] = {}
    for c in sorted(set(centers)):
        if c not in g:
            raise GraphError(f"ball center {c} is not a live vertex")
        dist[c] = 0
        frontier.append(c)
    while frontier:
        v = frontier.popleft()
        if dist[v] == radius:
            continue
        for w in g.neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                frontier.append(w)
    return set(dist)


def components(g: Graph) -> list[set[int]]:
    """Connected components, listed by ascending minimum vertex id."""
    seen: set[int] = set()
    out: list[set[int]] = []
    for root in g.vertices():
        if root in seen:
            continue
        comp = {root}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        out.append(comp)
    return out


def shortest_path(g: Graph, src: int, dst: int,
                  allowed: Iterable[int] | None = None) -> list[int] | None:
    """BFS shortest path from src to dst, smallest-id tie-breaking.

    When `allowed` is given the path may only use those vertices (src and
    dst must be included by the caller). Returns None if no path exists.
    """
    ok = None if allowed is None else set(allowed)

    def usable(v: int) -> bool:
        return ok is None or v in ok

    if not usable(src) or not usable(dst):
        return None
    parent: dict[int, int | None] = {src: None}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            path = []
            cur: int | None = v
            while cur is not None:
                path.append(cur)
                cur = parent[cur]
            return path[::-1]
        for w in g.neighbors(v):
            if w not in parent and usable(w):
                parent[w] = v
                queue.append(w)
    return None
