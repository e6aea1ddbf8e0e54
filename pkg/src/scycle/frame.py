"""Frame-driven solver: a packing of long terminal cycles or a small hitting set.

The solver grows a subgraph H of G (a "frame": all degrees 2 or 3, every
cycle inside it long and through a terminal) together with a set of pendant
cycles hanging off it. Each round either certifies an answer or strictly
increases the frame's score, so the loop terminates:

* many branch vertices  -> a packing exists inside H (subcubic peeling);
* many pendant cycles   -> they are the packing;
* otherwise build the blocking candidate X around H's features; if G - X
  has no long terminal cycle, X is the hitting set;
* else the found cycle C is folded into (H, pendants) by a case analysis,
  raising the score.

Every surgery on H is re-validated structurally (degree shape, edge
decomposition) and the augmenting cases are gated by explicit precondition
checks, so a logic error surfaces as an exception instead of a wrong answer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Sequence

from .cubic import Multigraph, PackingShortfall, pack_cycles, s_threshold
from .graphs import Cycle, Graph, ball, components, is_long_s_cycle
from .longcycle import find_long_s_cycle


class MalformedFrame(RuntimeError):
    """An internal structural invariant of the solver state was violated."""


class NoImprovingCase(RuntimeError):
    """The case analysis fell through; indicates a bug, not a hard input."""


class AugmentPreconditionViolated(ValueError):
    """A path offered for frame augmentation fails the required checks."""


class IterationLimitExceeded(RuntimeError):
    """The main loop outran its score-based bound; indicates a bug."""


def hitting_bound(k: int, ell: int) -> float:
    """Guaranteed hitting-set size: 6.5*ell for k = 1 and
    18*ell*k*(log2 k + log2 log2 k + 37/9) for k >= 2."""
    if k < 1 or ell < 1:
        raise ValueError(f"bound undefined for k={k}, ell={ell}")
    if k == 1:
        return 6.5 * ell
    log_k = math.log2(k)
    return 18 * ell * k * (log_k + math.log2(log_k) + 37 / 9)


class Score(NamedTuple):
    """Lexicographic progress measure of a (frame, pendants) pair."""

    branch: int
    contact: int  # terminals inside the frame plus pendant count


@dataclass(frozen=True)
class Pendant:
    """A long terminal cycle meeting the frame in exactly one vertex."""

    cycle: Cycle
    attach: int


@dataclass(frozen=True)
class FrameEdge:
    """One edge of the contracted frame: a branch-to-branch path of H
    (endpoints included) or an entire cycle component of H."""

    kind: str  # "path" | "cycle"
    seq: tuple[int, ...]


class Frame:
    """Immutable view of a frame subgraph with its derived structure."""

    def __init__(self, graph: Graph, branch: tuple[int, ...],
                 edges: tuple[FrameEdge, ...]):
        self.graph = graph
        self.branch = branch
        self.edges = edges
        # Interior vertices resolve to a unique (edge index, position).
        locator: dict[int, tuple[int, int]] = {}
        for ei, fe in enumerate(edges):
            if fe.kind == "cycle":
                for pos, v in enumerate(fe.seq):
                    locator[v] = (ei, pos)
            else:
                for pos in range(1, len(fe.seq) - 1):
                    locator[fe.seq[pos]] = (ei, pos)
        self._locator = locator

    @classmethod
    def empty(cls, universe: int) -> "Frame":
        return cls.from_subgraph(Graph(universe, (), vertices=()))

    @classmethod
    def from_subgraph(cls, h: Graph) -> "Frame":
        """Validate degree shape and decompose into branch vertices, paths
        between them, and cycle components."""
        for v in h.vertices():
            if h.degree(v) not in (2, 3):
                raise MalformedFrame(f"vertex {v} has degree {h.degree(v)}")
        branch = tuple(v for v in h.vertices() if h.degree(v) == 3)
        branch_set = set(branch)
        edges: list[FrameEdge] = []
        end_slots = 0
        for comp in components(h):
            comp_branch = sorted(comp & branch_set)
            if not comp_branch:
                edges.append(FrameEdge("cycle", _trace_cycle(h, comp)))
                continue
            seen: set[tuple[int, ...]] = set()
            for b in comp_branch:
                for w in h.neighbors(b):
                    seq = _trace_b_path(h, b, w, branch_set)
                    key = _canonical_path(seq)
                    if key not in seen:
                        seen.add(key)
                        edges.append(FrameEdge("path", key))
                        end_slots += 2
        if end_slots != 3 * len(branch):
            raise MalformedFrame(
                f"{end_slots} path ends for {len(branch)} branch vertices")
        edges.sort(key=lambda fe: (fe.kind, fe.seq))
        return cls(h, branch, tuple(edges))

    def cycle_components(self) -> list[FrameEdge]:
        return [fe for fe in self.edges if fe.kind == "cycle"]

    def locate(self, v: int) -> tuple[int, int]:
        """(edge index, position) of an interior vertex."""
        try:
            return self._locator[v]
        except KeyError:
            raise MalformedFrame(f"vertex {v} is not frame-edge interior")

    def __repr__(self) -> str:
        return (f"Frame(vertices={len(self.graph)}, branch={len(self.branch)},"
                f" edges={len(self.edges)})")


def _trace_cycle(h: Graph, comp: set[int]) -> tuple[int, ...]:
    """Vertex order of a component that is a bare cycle."""
    start = min(comp)
    seq = [start]
    prev = None
    cur = start
    while True:
        nxt = next(w for w in h.neighbors(cur) if w != prev)
        if nxt == start:
            break
        seq.append(nxt)
        prev, cur = cur, nxt
    if len(seq) != len(comp):
        raise MalformedFrame("cycle component traversal did not close")
    return Cycle(seq).vertices


def _trace_b_path(h: Graph, b: int, first: int,
                  branch_set: set[int]) -> tuple[int, ...]:
    """Walk from branch vertex b through `first` until the next branch."""
    seq = [b, first]
    while seq[-1] not in branch_set:
        prev, cur = seq[-2], seq[-1]
        seq.append(next(w for w in h.neighbors(cur) if w != prev))
    return tuple(seq)


def _canonical_path(seq: tuple[int, ...] | Sequence[int]) -> tuple[int, ...]:
    t = tuple(seq)
    if t[0] > t[-1] or (t[0] == t[-1] and len(t) > 2 and t[1] > t[-2]):
        t = t[::-1]
    return t


def score_of(frame: Frame, pendants: Sequence[Pendant],
             s: Iterable[int]) -> Score:
    s_set = set(s)
    contact = sum(1 for v in frame.graph.vertices() if v in s_set)
    return Score(len(frame.branch), contact + len(pendants))


# -- the blocking candidate X ---------------------------------------------


@dataclass(frozen=True)
class HittingCandidate:
    """The wide set X assembled around the frame's features.

    `edge_anchor_pos[i]` holds the positions (into frame.edges[i].seq) of
    that edge's terminal anchors: first and last terminal for a path,
    the single chosen terminal for a cycle component, () if terminal-free.
    """

    vertices: frozenset[int]
    radius: int
    branch_block: frozenset[int]
    edge_anchor_pos: tuple[tuple[int, ...], ...]
    pendant_blocks: tuple[frozenset[int], ...]


def build_hitting_candidate(frame: Frame, pendants: Sequence[Pendant],
                            s: Iterable[int], ell: int) -> HittingCandidate:
    """X = (balls around branch vertices) + (along-edge balls around each
    edge's first/last terminals) + (balls around pendant attachments).

    Ball radii are floor((ell-1)/2) except pendant attachments, which get
    ell-1; that asymmetry is what isolates an attachment inside X so that
    re-routing through it is safe.
    """
    s_set = set(s)
    h = frame.graph
    r = (ell - 1) // 2
    blocked: set[int] = set()
    branch_block = frozenset(ball(h, frame.branch, r))
    blocked |= branch_block
    anchor_pos: list[tuple[int, ...]] = []
    for fe in frame.edges:
        seq = fe.seq
        hits = [i for i, v in enumerate(seq) if v in s_set]
        if fe.kind == "cycle":
            if not hits:
                raise MalformedFrame(
                    f"cycle component {seq[:4]}.. carries no terminal")
            a = min(hits, key=lambda i: seq[i])
            anchor_pos.append((a,))
            m = len(seq)
            blocked.update(seq[(a + d) % m] for d in range(-r, r + 1))
        elif hits:
            first, last = hits[0], hits[-1]
            anchor_pos.append((first,) if first == last else (first, last))
            for a in {first, last}:
                lo, hi = max(0, a - r), min(len(seq) - 1, a + r)
                blocked.update(seq[lo:hi + 1])
        else:
            anchor_pos.append(())
    pendant_blocks = []
    for p in pendants:
        pb = frozenset(ball(h, (p.attach,), ell - 1))
        pendant_blocks.append(pb)
        blocked |= pb
    return HittingCandidate(frozenset(blocked), r, branch_block,
                            tuple(anchor_pos), tuple(pendant_blocks))


def is_wide(h: Graph, x: Iterable[int], ell: int) -> bool:
    """Exact check of the wide property: every path of h whose endpoints
    avoid x but which passes through x has at least ell edges.

    Exponential in ell (bounded-depth path enumeration); meant for tests
    and assertions on small graphs, not for the solving path.
    """
    x_set = set(x)
    limit = ell - 1  # longest offending path has at most ell-1 edges

    def violating(u: int) -> bool:
        # Depth-first over simple paths from u of at most `limit` edges.
        stack: list[tuple[int, int, bool, frozenset[int]]] = [
            (u, 0, False, frozenset((u,)))]
        while stack:
            v, depth, touched, on = stack.pop()
            if depth == limit:
                continue
            for w in h.neighbors(v):
                if w in on:
                    continue
                if w in x_set:
                    stack.append((w, depth + 1, True, on | {w}))
                else:
                    if touched:
                        return True
                    stack.append((w, depth + 1, touched, on | {w}))
        return False

    return not any(violating(u) for u in h.vertices() if u not in x_set)


def interior_pieces(frame: Frame, cand: HittingCandidate,
                    ei: int) -> tuple[tuple[int, ...], ...]:
    """Maximal X-free runs of edge `ei` strictly between its anchors.

    For a cycle component every X-free run qualifies; for a terminal-free
    edge there are none.
    """
    fe = frame.edges[ei]
    anchors = cand.edge_anchor_pos[ei]
    if not anchors:
        return ()
    seq = fe.seq
    x = cand.vertices
    pieces: list[tuple[int, ...]] = []
    run: list[int] = []

    def flush() -> None:
        if run:
            pieces.append(tuple(run))
            run.clear()

    if fe.kind == "cycle":
        a = anchors[0]
        m = len(seq)
        for t in range(1, m):
            v = seq[(a + t) % m]
            if v in x:
                flush()
            else:
                run.append(v)
        flush()
    else:
        if len(anchors) < 2:
            return ()
        lo, hi = anchors
        for i in range(lo + 1, hi):
            v = seq[i]
            if v in x:
                flush()
            else:
                run.append(v)
        flush()
    return tuple(pieces)


# -- frame surgery ----------------------------------------------------------


def _norm_edges(pairs: Iterable[tuple[int, int]]) -> set[tuple[int, int]]:
    return {(u, v) if u < v else (v, u) for u, v in pairs}


def _path_edges(path: Sequence[int]) -> list[tuple[int, int]]:
    return list(zip(path, path[1:]))


def _build_frame(universe: int, verts: set[int],
                 edges: set[tuple[int, int]]) -> Frame:
    return Frame.from_subgraph(Graph(universe, sorted(edges), vertices=verts))


def _frame_parts(frame: Frame) -> tuple[set[int], set[tuple[int, int]]]:
    h = frame.graph
    return set(h.vertices()), set(h.edges())


def _cycles_through_carry_s(h: Graph, endpoints: tuple[int, int],
                            s: set[int]) -> bool:
    """Whether every cycle closed over an added path must meet a terminal:
    true when the closing H-walks all cross S, i.e. the endpoints are
    separated in H - S."""
    u, w = endpoints
    if u in s or w in s:
        return True
    drop = {v for v in s if v in h}
    hs = h.without(drop)
    if u not in hs or w not in hs:
        return True
    return not _connected_in(hs, u, w)


def _component_of(h: Graph, v: int) -> set[int]:
    comp = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for w in h.neighbors(u):
            if w not in comp:
                comp.add(w)
                stack.append(w)
    return comp


def _connected_in(h: Graph, v: int, target: int) -> bool:
    return target in _component_of(h, v)


def augment_with_path(g: Graph, frame: Frame, path: Sequence[int],
                      s: Iterable[int], wide_x: Iterable[int],
                      ell: int) -> Frame:
    """Add an H-path to the frame after checking every augmentation
    precondition explicitly.

    Required: `path` is a real path of g, avoids `wide_x`, has both ends in
    the frame and its interior outside it, carries at least one non-frame
    edge, the ends lie in different components of frame minus `wide_x`
    (which, `wide_x` being wide, makes every closed-up cycle long; for
    ell <= 2 length is never binding and this is waived), and every cycle
    the path closes must meet a terminal (witnessed either by a terminal on
    the path or by the ends being separated in frame minus terminals).
    Violations raise AugmentPreconditionViolated.
    """
    p = list(path)
    h = frame.graph
    s_set = set(s)
    x = set(wide_x)
    if len(p) < 2 or len(set(p)) != len(p):
        raise AugmentPreconditionViolated(f"not a simple path: {p}")
    for a, b in _path_edges(p):
        if not g.has_edge(a, b):
            raise AugmentPreconditionViolated(f"({a}, {b}) is not an edge")
    if p[0] not in h or p[-1] not in h:
        raise AugmentPreconditionViolated("path endpoints must be in frame")
    if any(v in h for v in p[1:-1]):
        raise AugmentPreconditionViolated("path interior touches the frame")
    if all(h.has_edge(a, b) for a, b in _path_edges(p)):
        raise AugmentPreconditionViolated("path adds no new edge")
    hit = [v for v in p if v in x]
    if hit:
        raise AugmentPreconditionViolated(f"path meets blocked set at {hit}")
    if ell > 2:
        hx = h.without(v for v in x if v in h)
        if p[0] not in hx or p[-1] not in hx or _connected_in(
                hx, p[0], p[-1]):
            raise AugmentPreconditionViolated(
                "endpoints do not bridge two blocked-set components")
    if not (set(p) & s_set) and not _cycles_through_carry_s(
            h, (p[0], p[-1]), s_set):
        raise AugmentPreconditionViolated(
            "cycles closed over the path may avoid all terminals")
    verts, edges = _frame_parts(frame)
    verts.update(p)
    edges |= _norm_edges(_path_edges(p))
    return _build_frame(g.n, verts, edges)


# -- improvement case analysis ---------------------------------------------


@dataclass(frozen=True)
class ImproveStep:
    case: str
    frame: Frame
    pendants: tuple[Pendant, ...]


def _segments(c: Cycle, in_h: set[int]) -> list[tuple[int, ...]]:
    """Split the cycle at its frame-visits; each segment runs from one
    visit to the next (interior disjoint from the frame), listed in walk
    order starting at the first visit of the canonical walk."""
    walk = c.vertices
    n = len(walk)
    visits = [i for i, v in enumerate(walk) if v in in_h]
    segs = []
    for t, i in enumerate(visits):
        j = visits[(t + 1) % len(visits)]
        if j > i:
            segs.append(walk[i:j + 1])
        else:
            segs.append(walk[i:] + walk[:j + 1])
    return segs


def _pendant_arc(p: Pendant, targets: set[int]) -> tuple[int, ...]:
    """Shortest arc of the pendant cycle from its attachment to the first
    vertex of `targets`; ties broken toward the lexicographically smaller
    arc."""
    seq = p.cycle.vertices
    m = len(seq)
    a = seq.index(p.attach)
    for d in range(1, m):
        cw = seq[(a + d) % m]
        ccw = seq[(a - d) % m]
        if cw in targets and ccw in targets:
            arc1 = tuple(seq[(a + t) % m] for t in range(d + 1))
            arc2 = tuple(seq[(a - t) % m] for t in range(d + 1))
            return min(arc1, arc2)
        if cw in targets:
            return tuple(seq[(a + t) % m] for t in range(d + 1))
        if ccw in targets:
            return tuple(seq[(a - t) % m] for t in range(d + 1))
    raise MalformedFrame("pendant does not reach the claimed cycle")


def _cycle_adjacency(edge_sets: Iterable[Iterable[tuple[int, int]]],
                     drop: Iterable[int] = ()) -> dict[int, list[int]]:
    """Sorted adjacency of a union of edge lists, minus dropped vertices."""
    dropped = set(drop)
    adj: dict[int, set[int]] = {}
    for edges in edge_sets:
        for u, v in edges:
            if u in dropped or v in dropped:
                continue
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
    return {v: sorted(ws) for v, ws in adj.items()}


def _bfs_path(adj: dict[int, list[int]], src: int,
              dst: int) -> list[int] | None:
    if src not in adj or dst not in adj:
        return None
    parent: dict[int, int | None] = {src: None}
    queue = [src]
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        if v == dst:
            out = []
            cur: int | None = v
            while cur is not None:
                out.append(cur)
                cur = parent[cur]
            return out[::-1]
        for w in adj[v]:
            if w not in parent:
                parent[w] = v
                queue.append(w)
    return None


_Node = tuple[str, int]


def _two_disjoint_paths(adj: dict[int, list[int]], src: int, t1: int,
                        t2: int) -> tuple[list[int], list[int]] | None:
    """Two paths src->t1 and src->t2, vertex-disjoint except at src.

    Unit vertex capacities via node splitting ("in"/"out" copies joined by
    a capacity-1 arc), a super-sink over both targets, and two rounds of
    augmentation over the residual network. Value 2 is reached iff the
    paths exist (Menger); otherwise None.
    """
    if src in (t1, t2) or t1 == t2:
        raise ValueError("need three distinct endpoints")
    source: _Node = ("out", src)
    sink: _Node = ("sink", -1)
    flow: set[tuple[_Node, _Node]] = set()

    def forward(node: _Node) -> list[_Node]:
        side, v = node
        if side == "in":
            return [sink] if v in (t1, t2) else [("out", v)]
        if side == "out":
            return [("in", w) for w in adj.get(v, ())]
        return []

    into: dict[_Node, list[_Node]] = {}
    for _ in range(2):
        parent: dict[_Node, _Node | None] = {source: None}
        queue = [source]
        qi = 0
        while qi < len(queue) and sink not in parent:
            node = queue[qi]
            qi += 1
            steps = [b for b in forward(node) if (node, b) not in flow]
            steps += [a for a in into.get(node, ()) if a not in steps]
            for nxt in steps:
                if nxt not in parent:
                    parent[nxt] = node
                    queue.append(nxt)
        if sink not in parent:
            return None
        cur: _Node = sink
        while parent[cur] is not None:
            prv = parent[cur]
            if (cur, prv) in flow:
                flow.discard((cur, prv))
                into[prv].remove(cur)
            else:
                flow.add((prv, cur))
                into.setdefault(cur, []).append(prv)
            cur = prv
    return _extract_two_paths(flow, src, t1, t2)


def _extract_two_paths(flow: set[tuple[_Node, _Node]], src: int, t1: int,
                       t2: int) -> tuple[list[int], list[int]]:
    succ: dict[_Node, _Node] = {}
    firsts = []
    for a, b in flow:
        if a == ("out", src):
            firsts.append(b)
        else:
            succ[a] = b
    if len(firsts) != 2:
        raise MalformedFrame("flow did not split into two unit paths")
    paths = []
    for node in sorted(firsts):
        path = [src]
        while node[0] != "sink":
            if node[0] == "in":
                path.append(node[1])
            node = succ[node]
        paths.append(path)
    if paths[0][-1] == t2 and paths[1][-1] == t1:
        paths.reverse()
    if paths[0][-1] != t1 or paths[1][-1] != t2:
        raise MalformedFrame("flow paths ended at the wrong targets")
    return paths[0], paths[1]


def _linking_path_through_terminal(
        adj: dict[int, list[int]], s_set: set[int], end_a: int, end_b: int,
        candidates: Iterable[int]) -> list[int] | None:
    """Path end_a .. s .. end_b through the smallest workable terminal."""
    for s_pick in sorted(set(candidates)):
        if s_pick in (end_a, end_b):
            path = _bfs_path(adj, end_a, end_b)
            if path is not None:
                return path
            continue
        pair = _two_disjoint_paths(adj, s_pick, end_a, end_b)
        if pair is not None:
            to_a, to_b = pair
            return to_a[::-1] + to_b[1:]
    return None


def improve(g: Graph, s: frozenset[int], ell: int, frame: Frame,
            pendants: tuple[Pendant, ...], cand: HittingCandidate,
            c: Cycle) -> ImproveStep:
    """Fold a long terminal cycle of G - X into the frame state.

    Dispatches on how the cycle meets the frame and the pendants; every
    branch strictly increases the (branch, contact) score. The case label
    is recorded in the returned step for tracing.
    """
    h = frame.graph
    in_h = set(h.vertices())
    cset = c.vertex_set()
    ch = sorted(cset & in_h)
    x = cand.vertices
    touched = [p for p in pendants if cset & p.cycle.vertex_set()]

    if not ch:
        verts, edges = _frame_parts(frame)
        verts |= cset
        edges |= _norm_edges(c.edges())
        if not touched:
            return ImproveStep("i", _build_frame(g.n, verts, edges), pendants)
        k_p = min(touched, key=lambda p: p.attach)
        arc = _pendant_arc(k_p, set(cset))
        verts.update(arc)
        edges |= _norm_edges(_path_edges(arc))
        return ImproveStep("ii", _build_frame(g.n, verts, edges), ())

    if len(ch) == 1:
        y = ch[0]
        if not touched:
            return ImproveStep("iii", frame, pendants + (Pendant(c, y),))
        k_p = min(touched, key=lambda p: p.attach)
        adj = _cycle_adjacency([c.edges(), k_p.cycle.edges()])
        path = _linking_path_through_terminal(
            adj, set(s), y, k_p.attach,
            (cset | k_p.cycle.vertex_set()) & s)
        if path is None:
            raise MalformedFrame("no terminal-carrying link to the pendant")
        wide = x - {k_p.attach}
        return ImproveStep(
            "iv", augment_with_path(g, frame, path, s, wide, ell), ())

    # The cycle meets the frame in >= 2 vertices: segment analysis.
    segs = _segments(c, in_h)
    qstar: tuple[int, ...] | None = None
    for seg in segs:
        if len(seg) == 2 and h.has_edge(seg[0], seg[1]):
            continue  # lies inside the frame already; not an H-path
        if set(seg) & s:
            qstar = seg
            break
    if qstar is None:
        trivial_candidates = [
            v for v in ch
            if v in s and all(h.has_edge(v, w) for w in _cycle_neighbors(c, v))
        ]
        if not trivial_candidates:
            raise MalformedFrame("no terminal-bearing segment and no pivot")
        pivot = min(trivial_candidates)
        q1 = q2 = pivot
    else:
        q1, q2 = qstar[0], qstar[-1]

    hx = h.without(v for v in x if v in h)
    if qstar is not None and not _connected_in(hx, q1, q2):
        return ImproveStep(
            "v-cross", augment_with_path(g, frame, qstar, s, x, ell), ())

    if qstar is not None:
        pend_hits = [p for p in pendants
                     if set(qstar[1:-1]) & p.cycle.vertex_set()]
        if pend_hits:
            k_p = min(pend_hits, key=lambda p: p.attach)
            path = _link_segment_to_pendant(qstar, k_p, s)
            wide = x - {k_p.attach}
            return ImproveStep(
                "v-pendant",
                augment_with_path(g, frame, path, s, wide, ell), ())

    ei, _ = frame.locate(q1)
    fe = frame.edges[ei]
    if qstar is not None:
        ej, _ = frame.locate(q2)
        if ej != ei:
            raise MalformedFrame(
                "segment endpoints on one component but different edges")
        between = _edge_between(frame, cand, ei, q1, q2)
        if not (set(between) & s):
            return ImproveStep("v-splice",
                               _splice(g, frame, between, qstar), pendants)

    pieces = interior_pieces(frame, cand, ei)
    ip: set[int] = set()
    for piece in pieces:
        ip.update(piece)
    if q1 not in ip:
        raise MalformedFrame("terminal-bearing region missed the pieces")

    for seg in segs:
        ends_in = (seg[0] in ip) + (seg[-1] in ip)
        if ends_in == 1:
            _assert_anchor_gate(frame, cand, ei, seg)
            return ImproveStep(
                "v-reach", augment_with_path(g, frame, seg, s, x, ell), ())

    if not set(ch) <= ip:
        raise NoImprovingCase(
            "frame visits escape the pieces but no segment straddles them")
    return ImproveStep("v-replace",
                       _replace_span(g, frame, cand, ei, ch, c), ())


def _cycle_neighbors(c: Cycle, v: int) -> tuple[int, int]:
    walk = c.vertices
    i = walk.index(v)
    return walk[i - 1], walk[(i + 1) % len(walk)]


def _link_segment_to_pendant(qstar: tuple[int, ...], p: Pendant,
                             s: frozenset[int]) -> list[int]:
    """Path from one end of the segment through a pendant terminal to the
    pendant's attachment, inside segment + pendant minus the other end."""
    seg_edges = _norm_edges(_path_edges(qstar))
    for keep, drop in ((qstar[0], qstar[-1]), (qstar[-1], qstar[0])):
        adj = _cycle_adjacency([seg_edges, p.cycle.edges()], drop=(drop,))
        path = _linking_path_through_terminal(
            adj, set(s), keep, p.attach, p.cycle.vertex_set() & s)
        if path is not None:
            return path
    raise MalformedFrame("segment touches a pendant but cannot link to it")


def _edge_between(frame: Frame, cand: HittingCandidate, ei: int, q1: int,
                  q2: int) -> tuple[int, ...]:
    """Subpath of frame edge `ei` from q1 to q2 staying clear of X (both
    lie in one X-free run, so the run fixes the subpath)."""
    fe = frame.edges[ei]
    seq = fe.seq
    if fe.kind == "path":
        i, j = seq.index(q1), seq.index(q2)
        lo, hi = min(i, j), max(i, j)
        return seq[lo:hi + 1]
    m = len(seq)
    i = seq.index(q1)
    x = cand.vertices
    for step in (1, -1):
        out = [q1]
        t = i
        while True:
            t = (t + step) % m
            v = seq[t]
            if v in x or v == q1:
                break
            out.append(v)
            if v == q2:
                return tuple(out)
    raise MalformedFrame("no blocked-free run joins the segment endpoints")


def _splice(g: Graph, frame: Frame, between: tuple[int, ...],
            qstar: tuple[int, ...]) -> Frame:
    """Swap a terminal-free stretch of a frame edge for a terminal-bearing
    segment with the same endpoints."""
    verts, edges = _frame_parts(frame)
    ends = {between[0], between[-1]}
    for v in between[1:-1]:
        verts.discard(v)
    edges -= _norm_edges(_path_edges(between))
    verts.update(qstar)
    edges |= _norm_edges(_path_edges(qstar))
    if ends != {qstar[0], qstar[-1]}:
        raise MalformedFrame("splice endpoints disagree")
    return _build_frame(g.n, verts, edges)


def _assert_anchor_gate(frame: Frame, cand: HittingCandidate, ei: int,
                        seg: tuple[int, ...]) -> None:
    """Every frame walk between the segment's ends must cross an anchor of
    edge `ei`; verified by a reachability check. Failure means the piece
    bookkeeping is broken."""
    fe = frame.edges[ei]
    anchors = {fe.seq[a] for a in cand.edge_anchor_pos[ei]}
    h = frame.graph
    ha = h.without(anchors)
    u, w = seg[0], seg[-1]
    if u in ha and w in ha and _connected_in(ha, u, w):
        raise MalformedFrame("an anchor-avoiding walk undermines the case")


def _replace_span(g: Graph, frame: Frame, cand: HittingCandidate, ei: int,
                  ch: list[int], c: Cycle) -> Frame:
    """Replace the stretch of edge `ei` spanned by the cycle's frame-visits
    with the cycle itself; the two extreme visits become branch vertices.
    For a cycle component the stretch is the arc avoiding the anchor.
    """
    fe = frame.edges[ei]
    seq = fe.seq
    if fe.kind == "path":
        pos = {v: i for i, v in enumerate(seq[1:-1], start=1)}
        spots = sorted(pos[v] for v in ch)
        lo, hi = spots[0], spots[-1]
        span = seq[lo:hi + 1]
    else:
        a = cand.edge_anchor_pos[ei][0]
        m = len(seq)
        rel = sorted(((seq.index(v) - a) % m, v) for v in ch)
        lo_rel, hi_rel = rel[0][0], rel[-1][0]
        span = tuple(seq[(a + t) % m] for t in range(lo_rel, hi_rel + 1))
    verts, edges = _frame_parts(frame)
    cset = c.vertex_set()
    for v in span[1:-1]:
        if v not in cset:
            verts.discard(v)
    edges -= _norm_edges(_path_edges(span))
    verts |= cset
    edges |= _norm_edges(c.edges())
    return _build_frame(g.n, verts, edges)


# -- packing extraction and the main loop -----------------------------------


def extract_packing(frame: Frame, s: frozenset[int], k: int,
                    ell: int, g: Graph) -> tuple[Cycle, ...]:
    """k disjoint long terminal cycles out of a branch-rich frame: cycle
    components count directly, the rest come from peeling the contracted
    branch multigraph and expanding its trails."""
    comp_cycles = [Cycle(fe.seq, graph=g) for fe in frame.cycle_components()]
    need = k - len(comp_cycles)
    found: list[Cycle] = []
    if need > 0:
        mg = Multigraph()
        for b in frame.branch:
            mg.add_vertex(b)
        for fe in frame.edges:
            if fe.kind == "path":
                mg.add_edge(fe.seq[0], fe.seq[-1], trail=fe.seq)
        for walk in pack_cycles(mg, need):
            found.append(Cycle(walk, graph=g))
    found.extend(comp_cycles)
    packing = tuple(found[:k])
    _check_packing(packing, s, k, ell)
    return packing


def _check_packing(packing: Sequence[Cycle], s: frozenset[int], k: int,
                   ell: int) -> None:
    if len(packing) != k:
        raise PackingShortfall(f"assembled {len(packing)} of {k} cycles")
    used: set[int] = set()
    for cyc in packing:
        if not is_long_s_cycle(cyc, s, ell):
            raise PackingShortfall(f"{cyc!r} is not a long terminal cycle")
        if used & cyc.vertex_set():
            raise PackingShortfall("packing cycles overlap")
        used |= cyc.vertex_set()


def _check_pendants(frame: Frame, pendants: Sequence[Pendant],
                    s: frozenset[int], ell: int) -> None:
    h = frame.graph
    used: set[int] = set()
    for p in pendants:
        kset = p.cycle.vertex_set()
        if not is_long_s_cycle(p.cycle, s, ell):
            raise MalformedFrame(f"pendant {p.cycle!r} lost its cycle status")
        if kset & set(h.vertices()) != {p.attach}:
            raise MalformedFrame("pendant meets the frame beyond its anchor")
        if h.degree(p.attach) != 2:
            raise MalformedFrame("pendant anchored at a branch vertex")
        if used & kset:
            raise MalformedFrame("pendants overlap")
        used |= kset


class TraceRecord(NamedTuple):
    """One solve-loop iteration: the pair's state and what was done."""

    iteration: int
    case: str
    score: Score
    branch: int
    loops: int
    pendants: int
    blocked: int  # size of the hitting candidate, 0 when none was built


@dataclass(frozen=True)
class SolveOutcome:
    """Either a packing of k disjoint long terminal cycles or a hitting
    set whose removal leaves no such cycle; never both."""

    packing: tuple[Cycle, ...] | None
    hitting_set: frozenset[int] | None
    trace: tuple[TraceRecord, ...]
    iterations: int

    @property
    def kind(self) -> str:
        return "packing" if self.packing is not None else "hitting"

    @property
    def cases(self) -> tuple[str, ...]:
        return tuple(rec.case for rec in self.trace)


Observer = Callable[[int, ImproveStep], None]


def solve(g: Graph, s: Iterable[int], k: int, ell: int,
          observer: Observer | None = None) -> SolveOutcome:
    """Decide the packing/hitting dichotomy for long terminal cycles.

    Returns either k vertex-disjoint cycles, each of length >= ell and
    meeting `s`, or a hitting set X with |X| <= hitting_bound(k, ell)
    (X = s itself when |s| <= k) such that G - X has no such cycle.
    """
    if k < 1 or ell < 1:
        raise ValueError(f"k and ell must be positive, got k={k}, ell={ell}")
    s_set = frozenset(s)
    stray = [v for v in s_set if v not in g]
    if stray:
        raise ValueError(f"terminals {sorted(stray)} are not graph vertices")

    if len(s_set) <= k:
        return SolveOutcome(None, s_set, (), 0)

    frame = Frame.empty(g.n)
    pendants: tuple[Pendant, ...] = ()
    trace: list[TraceRecord] = []
    score = Score(-1, -1)
    limit = s_threshold(k) * (k + len(s_set)) + 8
    iterations = 0

    def record(case: str, blocked: int) -> None:
        trace.append(TraceRecord(iterations, case, score, len(frame.branch),
                                 len(frame.cycle_components()),
                                 len(pendants), blocked))

    while True:
        iterations += 1
        if iterations > limit:
            raise IterationLimitExceeded(
                f"no verdict after {limit} iterations")
        new_score = score_of(frame, pendants, s_set)
        if not new_score > score:
            raise MalformedFrame(
                f"score failed to increase: {score} -> {new_score}")
        score = new_score
        _check_pendants(frame, pendants, s_set, ell)

        residual = k - len(frame.cycle_components())
        if residual <= 0 or len(frame.branch) >= s_threshold(residual):
            record("stop-simonovits", 0)
            packing = extract_packing(frame, s_set, k, ell, g)
            return SolveOutcome(packing, None, tuple(trace), iterations)
        if len(pendants) >= k:
            record("stop-pendants", 0)
            packing = tuple(p.cycle for p in pendants[:k])
            _check_packing(packing, s_set, k, ell)
            return SolveOutcome(packing, None, tuple(trace), iterations)

        if not score < Score(s_threshold(k), len(s_set) + k):
            raise MalformedFrame(f"score {score} outran its ceiling")
        cand = build_hitting_candidate(frame, pendants, s_set, ell)
        c = find_long_s_cycle(g.without(cand.vertices), s_set, ell)
        if c is None:
            record("stop-hitting", len(cand.vertices))
            return SolveOutcome(None, cand.vertices, tuple(trace), iterations)

        step = improve(g, s_set, ell, frame, pendants, cand, c)
        record(step.case, len(cand.vertices))
        frame, pendants = step.frame, step.pendants
        if observer is not None:
            observer(iterations, step)
