"""Girth computation for expanded graphs and offset patterns.

Two independent routes are provided on purpose: girth_oracle walks an
explicit graph from every vertex and is kept as simple as possible, while
girth_fast exploits the rotational symmetry of a pattern (every vertex
class mod 2b has the same neighbourhood structure, so the 2b class
representatives suffice as roots).  Their agreement is a tested contract.

has_girth_at_least is the pruning predicate for the search: it decides
whether the edges forced by a partial offset assignment already close a
cycle shorter than the target girth.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from .pattern import ExpandedGraph, OffsetPattern

if TYPE_CHECKING:  # pragma: no cover
    from .search import PartialAssignment


@dataclass(frozen=True)
class GirthResult:
    """Exact girth, or the marker that no cycle of length <= cap exists.

    value is the length of a shortest cycle when it is at most cap, and
    None when every cycle is longer than cap.
    """

    value: int | None
    cap: int

    @property
    def exceeds_cap(self) -> bool:
        return self.value is None

    def at_least(self, g: int) -> bool:
        """Whether the result certifies girth >= g."""
        if self.value is not None:
            return self.value >= g
        return self.cap >= g - 1


def girth_oracle(graph: ExpandedGraph, cap: int) -> GirthResult:
    """Reference girth by truncated BFS from every vertex.

    Deliberately plain: dict-based BFS with parent-edge exclusion, shortest
    cycle estimate min over all roots, no symmetry assumptions.  A cycle of
    length L through the root is found at depth ceil(L/2), so expanding
    vertices below depth ceil(cap/2) sees every cycle of length <= cap.
    """
    if cap < 3:
        raise ValueError(f"cap must be at least 3, got {cap}")
    n = graph.order
    adj = graph.adjacency
    depth_cap = (cap + 1) // 2
    best: int | None = None
    for root in range(n):
        dist = {root: 0}
        parent = {root: -1}
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                du = dist[u]
                if du >= depth_cap:
                    continue
                for v in adj[u]:
                    if v == parent[u]:
                        continue
                    dv = dist.get(v)
                    if dv is None:
                        dist[v] = du + 1
                        parent[v] = u
                        nxt.append(v)
                    else:
                        length = du + dv + 1
                        if best is None or length < best:
                            best = length
            frontier = nxt
    if best is not None and best <= cap:
        return GirthResult(value=best, cap=cap)
    return GirthResult(value=None, cap=cap)


def girth_fast(pattern: OffsetPattern, cap: int) -> GirthResult:
    """Girth of the expanded pattern using only the 2b class representatives.

    Every vertex is mapped onto its class representative by a rotation of
    the cycle by a multiple of 2b, which is an automorphism of the expanded
    graph, so a shortest cycle always passes through one of the roots
    0..2b-1.  Agrees exactly with girth_oracle(expand(pattern), cap).
    """
    if cap < 3:
        raise ValueError(f"cap must be at least 3, got {cap}")
    n = pattern.order
    b2 = pattern.positions
    offs = pattern.offsets
    depth_cap = (cap + 1) // 2
    dist = [0] * n
    parent = [0] * n
    stamp = [0] * n
    queue = [0] * n
    token = 0
    best = n + 1
    for root in range(min(b2, n)):
        token += 1
        stamp[root] = token
        dist[root] = 0
        parent[root] = -1
        queue[0] = root
        head, tail = 0, 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if du >= depth_cap:
                break
            nd = du + 1
            pu = parent[u]
            chord = u + offs[u % b2]
            if chord >= n:
                chord -= n
            for v in (u + 1 if u + 1 < n else 0, u - 1 if u > 0 else n - 1, chord):
                if v == pu:
                    continue
                if stamp[v] == token:
                    length = du + dist[v] + 1
                    if length < best:
                        best = length
                else:
                    stamp[v] = token
                    dist[v] = nd
                    parent[v] = u
                    queue[tail] = v
                    tail += 1
    if best <= cap:
        return GirthResult(value=best, cap=cap)
    return GirthResult(value=None, cap=cap)


class _BfsScratch:
    """Reusable per-worker buffers for chord-cycle checks."""

    __slots__ = ("dist", "stamp", "queue", "token")

    def __init__(self, n: int):
        self.dist = [0] * n
        self.stamp = [0] * n
        self.queue = [0] * n
        self.token = 0


def chord_cycle_shorter_than(
    n: int,
    b2: int,
    offsets: list[int],
    rep: int,
    g: int,
    scratch: _BfsScratch,
) -> bool:
    """Whether some cycle through the chord orbit of position `rep` has length < g.

    offsets is the full 2b position table with -1 for unassigned classes.
    Because assigned chords come in whole translation orbits, it suffices to
    test the single representative chord (rep, rep + offset): a path of
    length <= g-2 back from its far end, avoiding the chord itself, closes
    a short cycle.
    """
    d = offsets[rep % b2]
    q = rep + d
    if q >= n:
        q -= n
    limit = g - 2
    dist = scratch.dist
    stamp = scratch.stamp
    queue = scratch.queue
    scratch.token += 1
    token = scratch.token
    stamp[rep] = token
    dist[rep] = 0
    queue[0] = rep
    head, tail = 0, 1
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u]
        if du >= limit:
            break
        nd = du + 1
        v = u + 1
        if v == n:
            v = 0
        if stamp[v] != token:
            if v == q:
                return True
            stamp[v] = token
            dist[v] = nd
            queue[tail] = v
            tail += 1
        v = u - 1
        if v < 0:
            v = n - 1
        if stamp[v] != token:
            if v == q:
                return True
            stamp[v] = token
            dist[v] = nd
            queue[tail] = v
            tail += 1
        off = offsets[u % b2]
        if off >= 0 and u != rep:
            v = u + off
            if v >= n:
                v -= n
            if stamp[v] != token:
                if v == q:
                    return True
                stamp[v] = token
                dist[v] = nd
                queue[tail] = v
                tail += 1
    return False


def has_girth_at_least(partial: "PartialAssignment", g: int) -> bool:
    """Sound pruning predicate over the edges forced by a partial assignment.

    False exactly when the Hamiltonian cycle plus the chords of the assigned
    classes already contain a cycle shorter than g; a prefix of any pattern
    whose completion has girth >= g therefore always passes.  Monotone: once
    False, every extension and every larger g stays False.
    """
    n = 2 * partial.m
    if g > n:
        return False
    b2 = 2 * partial.b
    table = [-1 if d is None else d for d in partial.offsets]
    scratch = _BfsScratch(n)
    seen: set[int] = set()
    for j, d in enumerate(table):
        if d < 0 or j in seen:
            continue
        seen.add(j)
        seen.add((j + d) % b2)
        if chord_cycle_shorter_than(n, b2, table, j, g, scratch):
            return False
    return True
