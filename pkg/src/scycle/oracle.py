"""Brute-force ground truth for small instances, plus outcome verification.

Everything here is deliberately independent of the solver's machinery: cycles
are enumerated exhaustively, optimal packings come from a bitmask recursion,
and optimal hitting sets from iterative-deepening search. These routines are
exponential and refuse graphs beyond a vertex cap rather than silently
grinding; they exist to check the fast path, not to replace it.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

from .graphs import Cycle, Graph, GraphError, is_long_s_cycle
from .longcycle import find_long_s_cycle

DEFAULT_CAP = 20


class InstanceTooLarge(ValueError):
    """The graph exceeds the size the exhaustive routines will accept."""


def enumerate_cycles(g: Graph, cap: int = DEFAULT_CAP) -> list[Cycle]:
    """Every cycle of g, each exactly once, in a deterministic order.

    Rooted enumeration: a cycle is generated from its minimum vertex, only
    extending through larger vertices, and only in the orientation whose
    second vertex is smaller than its last. Output is sorted by (length,
    vertex tuple).
    """
    if len(g) > cap:
        raise InstanceTooLarge(f"{len(g)} vertices exceeds the cap of {cap}")
    adj = {u: g.neighbors(u) for u in g.vertices()}
    out: list[Cycle] = []

    def extend(root: int, path: list[int], on_path: set[int]) -> None:
        head = path[-1]
        for w in adj[head]:
            if w == root and len(path) >= 3 and path[1] < path[-1]:
                out.append(Cycle(path, graph=g))
            elif w > root and w not in on_path:
                path.append(w)
                on_path.add(w)
                extend(root, path, on_path)
                path.pop()
                on_path.discard(w)

    for root in g.vertices():
        extend(root, [root], {root})
    out.sort(key=lambda c: (c.length, c.vertices))
    return out


def long_s_cycles(g: Graph, s: Iterable[int], ell: int,
                  cap: int = DEFAULT_CAP) -> list[Cycle]:
    """All cycles of length >= ell through at least one vertex of s."""
    s = set(s)
    return [c for c in enumerate_cycles(g, cap) if is_long_s_cycle(c, s, ell)]


def _packing_search(g: Graph, s: Iterable[int], ell: int, cap: int):
    """Shared machinery behind max_packing and its witness.

    Packing only cares about which vertex sets carry a qualifying cycle,
    not how many cycles share a support, so instead of listing cycles we
    run a subset dynamic program: dp[u] is the bitmask of endpoints v for
    which some simple path from min(u) to v spans exactly u. A set u is a
    support when some endpoint closes back to the root. Work and memory
    are bounded by the number of reachable (subset, endpoint) states
    however cycle-rich the graph is, which also keeps sparse graphs above
    20 vertices affordable when the caller raises the cap.
    """
    if len(g) > cap:
        raise InstanceTooLarge(f"{len(g)} vertices exceeds the cap of {cap}")
    verts = g.vertices()
    idx = {v: i for i, v in enumerate(verts)}
    nv = len(verts)
    adj = [0] * nv
    for u, w in g.edges():
        adj[idx[u]] |= 1 << idx[w]
        adj[idx[w]] |= 1 << idx[u]
    s_mask = 0
    for v in s:
        if v in idx:
            s_mask |= 1 << idx[v]
    need = max(3, ell)

    dp: dict[int, int] = {}
    level = {1 << i: 1 << i for i in range(nv)}
    supports: list[int] = []
    while level:  # subsets by size; extensions only ever grow by one
        dp.update(level)
        nxt: dict[int, int] = {}
        for u_set, ends in level.items():
            root_bit = u_set & -u_set
            root = root_bit.bit_length() - 1
            if (u_set & s_mask and u_set.bit_count() >= need
                    and ends & adj[root]):
                supports.append(u_set)
            free = ~u_set & ~(root_bit - 1)  # unvisited, no smaller root
            bits = ends
            while bits:
                v_bit = bits & -bits
                bits ^= v_bit
                cand = adj[v_bit.bit_length() - 1] & free
                while cand:
                    w_bit = cand & -cand
                    cand ^= w_bit
                    key = u_set | w_bit
                    nxt[key] = nxt.get(key, 0) | w_bit
        level = nxt

    by_low: dict[int, list[int]] = {}
    for bits in supports:
        low = (bits & -bits).bit_length() - 1
        by_low.setdefault(low, []).append(bits)
    memo: dict[int, int] = {0: 0}

    def f(mask: int) -> int:
        cached = memo.get(mask)
        if cached is not None:
            return cached
        low = (mask & -mask).bit_length() - 1
        best = f(mask & (mask - 1))  # lowest vertex goes unused
        for bits in by_low.get(low, []):
            if bits & ~mask == 0:
                best = max(best, 1 + f(mask & ~bits))
        memo[mask] = best
        return best

    return supports, dp, adj, verts, f, (1 << nv) - 1


def _cycle_on_support(g: Graph, verts: list[int], adj: list[int],
                      dp: dict[int, int], u_set: int) -> Cycle:
    """Rebuild an explicit cycle spanning the support u_set by walking the
    path table backwards from an endpoint adjacent to the root."""
    root_bit = u_set & -u_set
    closing = dp[u_set] & adj[root_bit.bit_length() - 1]
    v_bit = closing & -closing
    order = []
    cur = u_set
    while v_bit != root_bit:
        order.append(v_bit.bit_length() - 1)
        cur ^= v_bit
        prev = dp[cur] & adj[v_bit.bit_length() - 1]
        v_bit = prev & -prev
    order.append(root_bit.bit_length() - 1)
    return Cycle([verts[i] for i in order], graph=g)


def max_packing(g: Graph, s: Iterable[int], ell: int,
                cap: int = DEFAULT_CAP) -> int:
    """Maximum number of vertex-disjoint cycles of length >= ell through s.

    Bitmask recursion over the set of still-usable vertices: the lowest
    usable vertex is either left out or consumed by one of the supports
    whose minimum vertex it is.
    """
    _, _, _, _, f, full = _packing_search(g, s, ell, cap)
    return f(full)


def max_packing_witness(g: Graph, s: Iterable[int], ell: int,
                        cap: int = DEFAULT_CAP) -> list[Cycle]:
    """A maximum packing itself, reconstructed from the same recursion;
    len(result) == max_packing(...) always."""
    supports, dp, adj, verts, f, full = _packing_search(g, s, ell, cap)
    supports = sorted(supports, key=lambda bits: (bits.bit_count(), bits))
    out: list[Cycle] = []
    mask = full
    remaining = f(full)
    while remaining:
        for bits in supports:
            if bits & ~mask == 0 and 1 + f(mask & ~bits) == remaining:
                out.append(_cycle_on_support(g, verts, adj, dp, bits))
                mask &= ~bits
                remaining -= 1
                break
        else:
            raise AssertionError("packing reconstruction lost the optimum")
    return out


def min_hitting_set(g: Graph, s: Iterable[int], ell: int,
                    cap: int = DEFAULT_CAP) -> set[int]:
    """A minimum vertex set meeting every cycle of length >= ell through s.

    Iterative deepening on the hitting-set size; at each node the search
    branches over the vertices of the smallest cycle not yet hit, which is
    complete because that cycle must be hit by any solution.
    """
    csets = [frozenset(c.vertex_set())
             for c in sorted(long_s_cycles(g, s, ell, cap),
                             key=lambda c: (c.length, c.vertices))]
    if not csets:
        return set()

    def search(chosen: set[int], budget: int) -> set[int] | None:
        unhit = next((c for c in csets if not (c & chosen)), None)
        if unhit is None:
            return set(chosen)
        if budget == 0:
            return None
        for v in sorted(unhit):
            chosen.add(v)
            hit = search(chosen, budget - 1)
            chosen.discard(v)
            if hit is not None:
                return hit
        return None

    for budget in range(1, g.n + 1):
        hit = search(set(), budget)
        if hit is not None:
            return hit
    raise AssertionError("hitting every cycle with all vertices must succeed")


class Verdict(NamedTuple):
    ok: bool
    reason: str


def _as_vertex_tuple(item: object) -> tuple[int, ...]:
    if isinstance(item, Cycle):
        return item.vertices
    return tuple(item)  # type: ignore[arg-type]


def verify_outcome(g: Graph, s: Iterable[int], k: int, ell: int,
                   outcome: object, cap: int = DEFAULT_CAP) -> Verdict:
    """Check a solver outcome against the instance it claims to answer.

    Packings are re-validated edge by edge and checked for disjointness,
    length, and terminal contact. Hitting sets are checked against the size
    bound (|s| <= k allows only the trivial bound k, anything else the full
    guarantee) and the residual graph is certified free of long terminal
    cycles -- exhaustively when small enough, otherwise by the exact search.
    """
    s = set(s)
    packing = getattr(outcome, "packing", None)
    hitting = getattr(outcome, "hitting_set", None)
    if (packing is None) == (hitting is None):
        return Verdict(False,
                       "outcome must carry exactly one of packing/hitting_set")

    if packing is not None:
        if len(packing) != k:
            return Verdict(False, f"packing has {len(packing)} cycles, not {k}")
        used: set[int] = set()
        for pos, item in enumerate(packing):
            try:
                c = Cycle(_as_vertex_tuple(item), graph=g)
            except (GraphError, ValueError, TypeError) as exc:
                return Verdict(False, f"cycle {pos} invalid: {exc}")
            if not is_long_s_cycle(c, s, ell):
                return Verdict(
                    False, f"cycle {pos} is not a long terminal cycle: {c!r}")
            overlap = c.vertex_set() & used
            if overlap:
                return Verdict(
                    False, f"cycle {pos} reuses vertices {sorted(overlap)}")
            used |= c.vertex_set()
        return Verdict(True, f"packing of {k} disjoint long cycles verified")

    x = set(hitting)  # type: ignore[arg-type]
    stray = x - set(g.vertices())
    if stray:
        return Verdict(False, f"hitting set uses unknown vertices {sorted(stray)}")
    from .frame import hitting_bound
    bound: float = k if len(s) <= k else hitting_bound(k, ell)
    if len(x) > bound:
        return Verdict(False, f"hitting set size {len(x)} exceeds bound {bound}")
    h = g.without(x)
    rest = s & set(h.vertices())
    if len(h) <= cap:
        for c in enumerate_cycles(h, cap):
            if is_long_s_cycle(c, rest, ell):
                return Verdict(False, f"residual long cycle survives: {c!r}")
    else:
        c = find_long_s_cycle(h, rest, ell)
        if c is not None:
            return Verdict(False, f"residual long cycle survives: {c!r}")
    return Verdict(True, f"hitting set of size {len(x)} verified")
