"""Disjoint cycle packing in subcubic multigraphs.

A multigraph whose vertices all have degree 3 and which has at least
``s_threshold(k)`` vertices always contains k vertex-disjoint cycles
(loops and parallel pairs count as cycles here). ``pack_cycles`` makes
that effective by greedy shortest-cycle peeling: repeatedly take a
shortest cycle, delete its vertices, then trim degree-<=1 vertices and
suppress degree-2 vertices to restore the 2/3-regular shape. Correctness
of every emitted packing is enforced by the output checks, not by the
counting argument behind the threshold.

Edges carry a "trail": the walk of original vertices the edge stands for.
Suppressing a vertex concatenates trails, so cycles found late in the
peeling still come out phrased in terms of the input multigraph. Callers
can also seed trails themselves (a trail may be any vertex walk), which
is how a contracted graph's cycles are expanded back to the host graph.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .rng import SplitMix64


class InsufficientBranchVertices(ValueError):
    """Packing was requested below the vertex threshold that guarantees it."""


class PackingShortfall(RuntimeError):
    """Peeling ran out of graph before finding the promised cycles.

    Under the documented precondition this indicates a bug, not a property
    of the input.
    """


def s_threshold(k: int) -> int:
    """Vertex count above which a cubic multigraph packs k disjoint cycles.

    Defined as ceil(4k(log2 k + log2 log2 k + 4)) for k >= 2 and as 1 for
    k = 1 (a cubic multigraph on one vertex is a loop). Nondecreasing in k.
    """
    if k < 1:
        raise ValueError(f"threshold undefined for k={k}")
    if k == 1:
        return 1
    log_k = math.log2(k)
    return math.ceil(4 * k * (log_k + math.log2(log_k) + 4))


class Multigraph:
    """Mutable undirected multigraph with loops, used by the peeling."""

    def __init__(self) -> None:
        self._adj: dict[int, list[int]] = {}   # vertex -> incident edge ids
        self._edges: dict[int, tuple[int, int, tuple[int, ...]]] = {}
        self._next_eid = 0

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Multigraph":
        mg = cls()
        for v in range(n):
            mg.add_vertex(v)
        for u, v in edges:
            mg.add_edge(u, v)
        return mg

    def add_vertex(self, v: int) -> None:
        self._adj.setdefault(v, [])

    def add_edge(self, u: int, v: int, trail: Sequence[int] | None = None) -> int:
        """Add an edge (u == v makes a loop). Trail defaults to (u, v)."""
        if u not in self._adj or v not in self._adj:
            raise ValueError(f"edge ({u}, {v}) touches an unknown vertex")
        t = tuple(trail) if trail is not None else (u, v)
        if t[0] != u or t[-1] != v:
            raise ValueError("trail endpoints must match the edge endpoints")
        eid = self._next_eid
        self._next_eid += 1
        self._edges[eid] = (u, v, t)
        self._adj[u].append(eid)
        if v != u:
            self._adj[v].append(eid)
        else:
            self._adj[u].append(eid)  # a loop occupies two slots at its vertex
        return eid

    def vertices(self) -> list[int]:
        return sorted(self._adj)

    def __len__(self) -> int:
        return len(self._adj)

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degree_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for v in self._adj:
            d = self.degree(v)
            out[d] = out.get(d, 0) + 1
        return out

    def edge_endpoints(self, eid: int) -> tuple[int, int]:
        u, v, _ = self._edges[eid]
        return u, v

    def trail(self, eid: int, start: int) -> tuple[int, ...]:
        """The edge's trail oriented to begin at `start`."""
        u, v, t = self._edges[eid]
        if start == u:
            return t
        if start == v:
            return t[::-1]
        raise ValueError(f"edge {eid} does not end at {start}")

    def incident(self, v: int) -> list[int]:
        return sorted(set(self._adj[v]))

    def other_end(self, eid: int, v: int) -> int:
        u, w, _ = self._edges[eid]
        return w if v == u else u

    def is_loop(self, eid: int) -> bool:
        u, v, _ = self._edges[eid]
        return u == v

    def delete_vertex(self, v: int) -> None:
        for eid in set(self._adj[v]):
            self._delete_edge(eid)
        del self._adj[v]

    def _delete_edge(self, eid: int) -> None:
        u, v, _ = self._edges.pop(eid)
        self._adj[u] = [e for e in self._adj[u] if e != eid]
        if v != u:
            self._adj[v] = [e for e in self._adj[v] if e != eid]

    def suppress(self, v: int) -> int:
        """Replace a degree-2 vertex having two distinct neighbors by an edge."""
        eids = self._adj[v]
        if len(eids) != 2 or eids[0] == eids[1]:
            raise ValueError(f"vertex {v} is not suppressible")
        e1, e2 = eids
        u = self.other_end(e1, v)
        w = self.other_end(e2, v)
        if u == w:
            raise ValueError(f"suppressing {v} would need a digon step instead")
        merged = self.trail(e1, u) + self.trail(e2, v)[1:]
        self._delete_edge(e1)
        self._delete_edge(e2)
        del self._adj[v]
        return self.add_edge(u, w, merged)

    def copy(self) -> "Multigraph":
        mg = Multigraph()
        mg._adj = {v: list(eids) for v, eids in self._adj.items()}
        mg._edges = dict(self._edges)
        mg._next_eid = self._next_eid
        return mg


def _close_trails(trails: list[tuple[int, ...]]) -> tuple[int, ...]:
    """Concatenate oriented edge trails into one closed vertex sequence."""
    seq: list[int] = []
    for t in trails:
        if seq:
            assert seq[-1] == t[0]
            seq.extend(t[1:])
        else:
            seq.extend(t)
    assert seq[0] == seq[-1]
    seq.pop()
    return tuple(seq)


def _shortest_cycle(mg: Multigraph) -> tuple[int, ...] | None:
    """A shortest cycle of the current multigraph as a closed vertex walk.

    Loops first, then parallel pairs, then breadth-first girth search.
    Ties go to the smallest starting vertex encountered first.
    """
    # Loops: length-1 cycles.
    for v in mg.vertices():
        for eid in mg.incident(v):
            if mg.is_loop(eid):
                return _close_trails([mg.trail(eid, v)])
    # Parallel pairs: length-2 cycles.
    for v in mg.vertices():
        by_other: dict[int, list[int]] = {}
        for eid in mg.incident(v):
            by_other.setdefault(mg.other_end(eid, v), []).append(eid)
        for w in sorted(by_other):
            pair = by_other[w]
            if len(pair) >= 2:
                return _close_trails([mg.trail(pair[0], v),
                                      mg.trail(pair[1], w)])
    # Simple girth by BFS from every vertex: the minimum over all roots of
    # the cycle closed by a non-tree edge is the girth.
    best: tuple[int, list[tuple[int, ...]]] | None = None
    for root in mg.vertices():
        cand = _bfs_cycle_from(mg, root)
        if cand is not None and (best is None or cand[0] < best[0]):
            best = cand
    if best is None:
        return None
    return _close_trails(best[1])


def _bfs_cycle_from(
        mg: Multigraph, root: int) -> tuple[int, list[tuple[int, ...]]] | None:
    """Shortest cycle candidate seen from one BFS root: (length, trails)."""
    dist = {root: 0}
    par: dict[int, tuple[int, int]] = {}  # child -> (parent vertex, edge id)
    queue = [root]
    qi = 0
    best: tuple[int, list[tuple[int, ...]]] | None = None
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        for eid in mg.incident(x):
            y = mg.other_end(eid, x)
            if y == x:
                continue  # loops were already handled
            if y not in dist:
                dist[y] = dist[x] + 1
                par[y] = (x, eid)
                queue.append(y)
            elif par.get(x, (None, -1))[1] != eid and par.get(y, (None, -1))[1] != eid:
                cand = _cycle_through(mg, x, y, eid, par)
                if best is None or cand[0] < best[0]:
                    best = cand
    return best


def _cycle_through(mg: Multigraph, x: int, y: int, exy: int,
                   par: dict[int, tuple[int, int]],
                   ) -> tuple[int, list[tuple[int, ...]]]:
    """Cycle formed by the non-tree edge (x, y) plus tree paths to their
    meeting point; ancestor chains are disjoint below the first shared
    vertex, so the walk is a simple cycle."""

    def chain(v: int) -> tuple[list[int], list[int]]:
        verts, eids = [v], []
        while verts[-1] in par:
            p, e = par[verts[-1]]
            eids.append(e)
            verts.append(p)
        return verts, eids

    xs, xe = chain(x)
    ys, ye = chain(y)
    pos_y = {v: i for i, v in enumerate(ys)}
    i = next(i for i, v in enumerate(xs) if v in pos_y)
    j = pos_y[xs[i]]
    meet = xs[i]
    trails: list[tuple[int, ...]] = []
    cur = meet
    for e in reversed(xe[:i]):  # descend from the meeting point to x
        trails.append(mg.trail(e, cur))
        cur = mg.other_end(e, cur)
    assert cur == x
    trails.append(mg.trail(exy, x))
    cur = y
    for e in ye[:j]:  # ascend from y back to the meeting point
        trails.append(mg.trail(e, cur))
        cur = mg.other_end(e, cur)
    assert cur == meet
    return i + j + 1, trails


def pack_cycles(mg: Multigraph, k: int) -> list[tuple[int, ...]]:
    """k vertex-disjoint cycles of mg, each a closed walk of input vertices.

    Precondition: mg has minimum degree 2, maximum degree 3, and at least
    ``s_threshold(k)`` vertices of degree 3. The degree shape is checked
    outright; the threshold is checked and violations raise
    InsufficientBranchVertices. A later failure to deliver k cycles raises
    PackingShortfall, which the precondition rules out.

    The input multigraph is not modified.
    """
    if k <= 0:
        return []
    counts = mg.degree_counts()
    bad = {d for d in counts if d < 2 or d > 3}
    if bad:
        raise ValueError(f"degree shape violated: found degrees {sorted(bad)}")
    if counts.get(3, 0) < s_threshold(k):
        raise InsufficientBranchVertices(
            f"{counts.get(3, 0)} degree-3 vertices < threshold {s_threshold(k)}")

    work = mg.copy()
    found: list[tuple[int, ...]] = []

    def cleanup() -> None:
        """Trim and suppress until every vertex has degree 2 or 3 again,
        banking any loop or digon cycles exposed along the way."""
        dirty = True
        while dirty and len(found) < k:
            dirty = False
            for v in work.vertices():
                if len(found) >= k:
                    return
                if v not in work._adj:
                    continue
                d = work.degree(v)
                if d <= 1:
                    work.delete_vertex(v)
                    dirty = True
                elif d == 2:
                    eids = work._adj[v]
                    if eids[0] == eids[1]:  # lone loop
                        found.append(_close_trails([work.trail(eids[0], v)]))
                        work.delete_vertex(v)
                    else:
                        u = work.other_end(eids[0], v)
                        w = work.other_end(eids[1], v)
                        if u == w:  # digon
                            found.append(_close_trails(
                                [work.trail(eids[0], v), work.trail(eids[1], u)]))
                            work.delete_vertex(v)
                            work.delete_vertex(u)
                        else:
                            work.suppress(v)
                    dirty = True

    while len(found) < k:
        cleanup()
        if len(found) >= k:
            break
        if len(work) == 0:
            raise PackingShortfall(
                f"peeling exhausted the graph after {len(found)} of {k} cycles")
        walk = _shortest_cycle(work)
        if walk is None:
            raise PackingShortfall(
                f"no cycle found with {len(work)} vertices remaining")
        found.append(walk)
        for v in set(_multigraph_vertices_of(work, walk)):
            if v in work._adj:
                work.delete_vertex(v)
    return found[:k]


def _multigraph_vertices_of(mg: Multigraph, walk: tuple[int, ...]) -> list[int]:
    """Vertices of a trail-expanded cycle that are still multigraph vertices."""
    return [v for v in walk if v in mg._adj]


def random_cubic_multigraph(n: int, seed: int | SplitMix64) -> Multigraph:
    """Random 3-regular multigraph by the pairing model (loops allowed).

    n must be even so that 3n half-edges pair up.
    """
    if n <= 0 or n % 2:
        raise ValueError("pairing model needs a positive even vertex count")
    rng = seed if isinstance(seed, SplitMix64) else SplitMix64(seed)
    stubs = [v for v in range(n) for _ in range(3)]
    rng.shuffle(stubs)
    mg = Multigraph()
    for v in range(n):
        mg.add_vertex(v)
    for i in range(0, len(stubs), 2):
        u, v = sorted((stubs[i], stubs[i + 1]))
        mg.add_edge(u, v)
    return mg
