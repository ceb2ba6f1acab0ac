"""Degeneracy orders, cores, threshold peeling, coloring, greedy independent sets.

Every operation takes an optional ``within`` vertex set and works on the
induced subgraph without relabeling, so vertex ids stay stable across the
whole extraction pipeline.  Threshold comparisons against rational averages
are exact (cross-multiplied integers), never floating point.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .graphs import Graph


class EmptyCoreError(ValueError):
    """Requested subgraph does not exist (peeling emptied the graph)."""


def _domain(g: Graph, within: Iterable[int] | None) -> list[int]:
    if within is None:
        return list(range(g.n))
    dom = sorted(set(within))
    if dom and (dom[0] < 0 or dom[-1] >= g.n):
        raise ValueError("within contains out-of-range vertices")
    return dom


@dataclass(frozen=True)
class DegeneracyOrder:
    """Left-to-right repeated-min-degree-removal order.

    ``right_degree[v]`` is |N+(v)|, the neighbors of v occurring later in the
    order; ``degeneracy`` is the maximum right degree, which equals the usual
    degeneracy (max over induced subgraphs of the min degree).
    """

    order: tuple[int, ...]
    right_degree: dict[int, int] = field(repr=False)
    degeneracy: int

    @cached_property
    def pos(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    def right_neighbors(self, g: Graph, v: int) -> tuple[int, ...]:
        pv = self.pos[v]
        return tuple(w for w in g.adj[v] if self.pos.get(w, -1) > pv)

    def leftmost(self, vertices: Iterable[int]) -> int:
        return min(vertices, key=self.pos.__getitem__)


def degeneracy_order(g: Graph, within: Iterable[int] | None = None) -> DegeneracyOrder:
    """Min-degree removal order; ties broken by lowest vertex id."""
    dom = _domain(g, within)
    alive = set(dom)
    deg = {v: sum(1 for w in g.adj[v] if w in alive) for v in dom}
    heap = [(deg[v], v) for v in dom]
    heapq.heapify(heap)
    order: list[int] = []
    right: dict[int, int] = {}
    degeneracy = 0
    while heap:
        d, v = heapq.heappop(heap)
        if v not in alive or d != deg[v]:
            continue  # stale entry
        alive.remove(v)
        order.append(v)
        right[v] = d
        degeneracy = max(degeneracy, d)
        for w in g.adj[v]:
            if w in alive:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return DegeneracyOrder(order=tuple(order), right_degree=right, degeneracy=degeneracy)


def core(g: Graph, t: int, within: Iterable[int] | None = None) -> tuple[int, ...]:
    """The unique maximal induced subgraph of min degree >= t (may be empty)."""
    if t < 0:
        raise ValueError(f"threshold must be >= 0, got {t}")
    dom = _domain(g, within)
    alive = bytearray(g.n)
    deg = [0] * g.n
    for v in dom:
        alive[v] = 1
    for v in dom:
        deg[v] = sum(1 for w in g.adj[v] if alive[w])
    stack = [v for v in dom if deg[v] < t]
    while stack:
        v = stack.pop()
        if not alive[v]:
            continue
        alive[v] = 0
        for w in g.adj[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] < t:
                    stack.append(w)
    return tuple(v for v in dom if alive[v])


def _peel_below(g: Graph, dom: list[int], num: int, den: int) -> tuple[int, ...]:
    """Iterated removal of vertices with degree < num/den (exact compare)."""
    alive = bytearray(g.n)
    deg = [0] * g.n
    for v in dom:
        alive[v] = 1
    for v in dom:
        deg[v] = sum(1 for w in g.adj[v] if alive[w])
    stack = [v for v in dom if deg[v] * den < num]
    while stack:
        v = stack.pop()
        if not alive[v]:
            continue
        alive[v] = 0
        for w in g.adj[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] * den < num:
                    stack.append(w)
    return tuple(v for v in dom if alive[v])


def half_avg_subgraph(g: Graph, within: Iterable[int] | None = None) -> tuple[int, ...]:
    """Nonempty vertex set inducing min degree >= avg/2.

    The average degree of the input (sub)graph is fixed at entry as the exact
    rational 2m/n, and vertices of current degree < m/n are removed
    iteratively.  Standard double counting shows the result is nonempty.
    """
    dom = _domain(g, within)
    n_s = len(dom)
    if n_s == 0:
        raise EmptyCoreError("half_avg_subgraph of empty vertex set")
    mask = set(dom)
    m_s = sum(1 for v in dom for w in g.adj[v] if w > v and w in mask)
    if m_s == 0:
        raise EmptyCoreError("half_avg_subgraph requires at least one edge")
    # threshold avg/2 = m_s/n_s; degree d fails iff d * n_s < m_s
    out = _peel_below(g, dom, m_s, n_s)
    assert out, "peeling below half the average emptied the graph"
    return out


def minimal_min_degree_subgraph(
    g: Graph, d: int, within: Iterable[int] | None = None
) -> tuple[int, ...]:
    """Vertex set S inducing min degree >= d with no proper subset doing so.

    Realizes vertex-minimality constructively: repeatedly remove the lowest
    alive vertex whose deletion still leaves a nonempty d-core, until every
    single deletion cascades to the empty set.  Consequently g[S] is
    d-degenerate.  Removal attempts are incremental with rollback, so the
    whole loop costs about (successful removals + |S_final|) cascades.
    """
    start = core(g, d, within=within)
    if not start:
        raise EmptyCoreError(f"graph has no {d}-core")
    alive = bytearray(g.n)
    deg = [0] * g.n
    for v in start:
        alive[v] = 1
    for v in start:
        deg[v] = sum(1 for w in g.adj[v] if alive[w])
    alive_count = len(start)

    def try_remove(v: int) -> tuple[list[int], int]:
        removed: list[int] = []
        stack = [v]
        count = alive_count
        while stack:
            u = stack.pop()
            if not alive[u]:
                continue
            alive[u] = 0
            count -= 1
            removed.append(u)
            for w in g.adj[u]:
                if alive[w]:
                    deg[w] -= 1
                    if deg[w] < d:
                        stack.append(w)
        return removed, count

    def undo(removed: list[int]) -> None:
        for u in reversed(removed):
            alive[u] = 1
            for w in g.adj[u]:
                if alive[w]:
                    deg[w] += 1

    changed = True
    while changed:
        changed = False
        for v in range(g.n):
            if not alive[v]:
                continue
            removed, count = try_remove(v)
            if count > 0:
                alive_count = count
                changed = True
                break
            undo(removed)
    return tuple(v for v in range(g.n) if alive[v])


def greedy_color(
    g: Graph, order: DegeneracyOrder, within: Iterable[int] | None = None
) -> dict[int, int]:
    """Proper coloring with <= degeneracy+1 colors, assigned right to left.

    Processing against the order means each vertex sees only its already
    colored right-neighborhood N+; the lowest available color is taken.
    """
    if within is not None:
        dom = set(_domain(g, within))
        verts = [v for v in order.order if v in dom]
    else:
        dom = set(order.order)
        verts = list(order.order)
    color: dict[int, int] = {}
    for v in reversed(verts):
        used = {color[w] for w in g.adj[v] if w in color and w in dom}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    return color


def turan_independent_set(
    g: Graph, within: Iterable[int] | None = None
) -> tuple[int, ...]:
    """Independent set of size >= ceil(n/(avg+1)) by min-degree greedy.

    Pick a minimum-degree vertex (lowest id on ties), delete its closed
    neighborhood, repeat.
    """
    dom = _domain(g, within)
    alive = set(dom)
    deg = {v: sum(1 for w in g.adj[v] if w in alive) for v in dom}
    heap = [(deg[v], v) for v in dom]
    heapq.heapify(heap)
    chosen: list[int] = []
    while heap:
        dv, v = heapq.heappop(heap)
        if v not in alive or dv != deg[v]:
            continue
        chosen.append(v)
        drop = [v] + [w for w in g.adj[v] if w in alive]
        for u in drop:
            alive.discard(u)
        for u in drop:
            for w in g.adj[u]:
                if w in alive:
                    deg[w] -= 1
                    heapq.heappush(heap, (deg[w], w))
    return tuple(sorted(chosen))


def turan_bound(n: int, m: int) -> int:
    """ceil(n / (avg+1)) with avg = 2m/n, computed exactly."""
    if n == 0:
        return 0
    bound = Fraction(n, 1) / (Fraction(2 * m, n) + 1)
    return -(-bound.numerator // bound.denominator)


def independent_in(g: Graph, vertices: Sequence[int]) -> tuple[int, int] | None:
    """Witness edge inside the set, or None if independent."""
    mark = set(vertices)
    for v in vertices:
        for w in g.adj[v]:
            if w > v and w in mark:
                return (v, w)
    return None


def degrees_within(g: Graph, vertices: Sequence[int]) -> dict[int, int]:
    mark = set(vertices)
    return {v: sum(1 for w in g.adj[v] if w in mark) for v in vertices}


def min_degree_within(g: Graph, vertices: Sequence[int]) -> int:
    dw = degrees_within(g, vertices)
    return min(dw.values()) if dw else 0


def edge_count_within(g: Graph, vertices: Iterable[int]) -> int:
    mark = set(vertices)
    return sum(1 for v in mark for w in g.adj[v] if w > v and w in mark)


def np_induced_degrees(g: Graph, member: np.ndarray) -> np.ndarray:
    """Vectorized per-vertex neighbor counts inside the boolean mask."""
    indptr, indices = g.csr
    if g.n == 0:
        return np.zeros(0, dtype=np.int64)
    hits = member[indices].astype(np.int64)
    csum = np.concatenate([np.zeros(1, dtype=np.int64), np.cumsum(hits)])
    return csum[indptr[1:]] - csum[indptr[:-1]]
