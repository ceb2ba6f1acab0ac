"""Immutable simple undirected graphs with the plain-text exchange format.

A :class:`Graph` is frozen after construction: every algorithm in the package
reads it concurrently without locks.  Vertices are 0..n-1.  The wire format is

    # optional provenance comments
    n m
    u v            (m lines, 0-indexed, LF-terminated)

Heavier accessors (edge arrays for numpy kernels, neighbor bitsets for
triangle queries) are built lazily and cached on the instance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np


class GraphError(ValueError):
    """Invalid graph construction or parse input."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; adjacency lists are sorted tuples."""

    n: int
    m: int
    adj: tuple[tuple[int, ...], ...] = field(repr=False)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adj[u]
        lo, hi = 0, len(a)
        while lo < hi:
            mid = (lo + hi) // 2
            if a[mid] < v:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(a) and a[lo] == v

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges (u, v) with u < v, lexicographic."""
        for u in range(self.n):
            for v in self.adj[u]:
                if v > u:
                    yield (u, v)

    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def is_regular(self) -> bool:
        return self.n == 0 or self.min_degree() == self.max_degree()

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adj], dtype=np.int64)

    @cached_property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(eu, ev) with eu[i] < ev[i], lexicographic order."""
        eu = np.empty(self.m, dtype=np.int64)
        ev = np.empty(self.m, dtype=np.int64)
        i = 0
        for u, v in self.edges():
            eu[i] = u
            ev[i] = v
            i += 1
        return eu, ev

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) of the full symmetric adjacency."""
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        for v in range(self.n):
            indptr[v + 1] = indptr[v] + len(self.adj[v])
        indices = np.fromiter(
            (w for a in self.adj for w in a), dtype=np.int64, count=int(indptr[-1])
        )
        return indptr, indices

    @cached_property
    def nbr_bits(self) -> tuple[int, ...]:
        """Per-vertex neighbor bitmask (python ints) for set-intersection queries."""
        out = []
        for a in self.adj:
            b = 0
            for w in a:
                b |= 1 << w
            out.append(b)
        return tuple(out)


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Validate and build a simple graph; duplicate pairs collapse.

    Raises :class:`GraphError` naming the index of the first offending pair
    (out-of-range endpoint or self-loop).
    """
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    seen: set[tuple[int, int]] = set()
    for idx, pair in enumerate(edges):
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge #{idx} ({u},{v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"edge #{idx} ({u},{v}) is a self-loop")
        seen.add((u, v) if u < v else (v, u))
    lists: list[list[int]] = [[] for _ in range(n)]
    for u, v in seen:
        lists[u].append(v)
        lists[v].append(u)
    adj = tuple(tuple(sorted(a)) for a in lists)
    return Graph(n=n, m=len(seen), adj=adj)


def graph_from_arrays(n: int, eu: np.ndarray, ev: np.ndarray) -> Graph:
    """Fast trusted-path constructor for generators (dedupes, sorts)."""
    if len(eu):
        lo = np.minimum(eu, ev).astype(np.int64)
        hi = np.maximum(eu, ev).astype(np.int64)
        if lo.min() < 0 or hi.max() >= n:
            raise GraphError("edge endpoint out of range")
        if (lo == hi).any():
            raise GraphError("self-loop in edge arrays")
        key = np.unique(lo * np.int64(n) + hi)
        lo, hi = key // n, key % n
    else:
        lo = hi = np.empty(0, dtype=np.int64)
    lists: list[list[int]] = [[] for _ in range(n)]
    for u, v in zip(lo.tolist(), hi.tolist()):
        lists[u].append(v)
        lists[v].append(u)
    return Graph(n=n, m=len(lo), adj=tuple(tuple(sorted(a)) for a in lists))


def induced_edge_count(g: Graph, vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    bits = g.nbr_bits
    total = 0
    mv = mask
    while mv:
        low = mv & -mv
        v = low.bit_length() - 1
        total += (bits[v] & mask).bit_count()
        mv ^= low
    return total // 2


def cross_edge_count(g: Graph, side_a: Iterable[int], side_b: Iterable[int]) -> int:
    mask_b = 0
    for v in side_b:
        mask_b |= 1 << v
    bits = g.nbr_bits
    return sum((bits[v] & mask_b).bit_count() for v in side_a)


def list_triangles(
    g: Graph, restrict: Iterable[int] | None = None
) -> list[tuple[int, int, int]]:
    """All triangles (of g, or of g[restrict]), each once, vertices sorted.

    Edge-iterator with neighbor-bitmask intersection: O(sum min(d(u), d(v)))
    word operations, fine up to ~1e5 edges.
    """
    bits = g.nbr_bits
    if restrict is None:
        mask = (1 << g.n) - 1
        domain = range(g.n)
    else:
        mask = 0
        for v in restrict:
            mask |= 1 << v
        domain = [v for v in range(g.n) if (mask >> v) & 1]
    out: list[tuple[int, int, int]] = []
    for u in domain:
        bu = bits[u] & mask
        for v in g.adj[u]:
            if v <= u or not ((mask >> v) & 1):
                continue
            common = bu & bits[v]
            # only completions w > v, so each triangle is reported once
            common >>= v + 1
            w = v + 1
            while common:
                shift = (common & -common).bit_length() - 1
                w += shift
                out.append((u, v, w))
                common >>= shift + 1
                w += 1
    return out


def find_triangle(
    g: Graph, restrict: Iterable[int] | None = None
) -> tuple[int, int, int] | None:
    """First triangle in lexicographic order, or None."""
    bits = g.nbr_bits
    mask = (1 << g.n) - 1
    if restrict is not None:
        mask = 0
        for v in restrict:
            mask |= 1 << v
    for u in range(g.n):
        if not ((mask >> u) & 1):
            continue
        bu = bits[u] & mask
        for v in g.adj[u]:
            if v <= u or not ((mask >> v) & 1):
                continue
            common = (bu & bits[v]) >> (v + 1)
            if common:
                w = v + 1 + ((common & -common).bit_length() - 1)
                return (u, v, w)
    return None


def graph_to_text(g: Graph, header: Sequence[str] = ()) -> str:
    """Serialize to the exchange format; header lines get '# ' prefixes."""
    lines = [f"# {h}" for h in header]
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_graph_text(text: str) -> Graph:
    """Parse the exchange format, skipping '#' comments and blank lines."""
    data: list[str] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        data.append(line)
    if not data:
        raise GraphError("no data lines in graph text")
    head = data[0].split()
    if len(head) != 2:
        raise GraphError(f"expected 'n m' header line, got {data[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise GraphError(f"bad header line {data[0]!r}") from exc
    if len(data) - 1 != m:
        raise GraphError(f"header claims {m} edges, found {len(data) - 1} edge lines")
    edges = []
    for line in data[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"bad edge line {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    g = build_graph(n, edges)
    if g.m != m:
        raise GraphError(f"header claims {m} edges, {g.m} distinct after dedup")
    return g


def load_graph(path: str) -> Graph:
    with open(path, "r", encoding="ascii") as fh:
        return parse_graph_text(fh.read())


def save_graph(g: Graph, path: str, header: Sequence[str] = ()) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(graph_to_text(g, header))
