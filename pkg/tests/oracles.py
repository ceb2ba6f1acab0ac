"""Brute-force oracles, independent of the library's algorithmic paths.

Everything here is exhaustive enumeration over subsets/tuples and is only
usable at toy scale; tests compare library outputs against these.
"""

from __future__ import annotations

from itertools import combinations

from dibs.graphs import Graph, build_graph
from dibs.rng import stream


def brute_degeneracy(g: Graph) -> int:
    """max over nonempty induced subgraphs of their min degree (n <= ~12)."""
    best = 0
    for r in range(1, g.n + 1):
        for sub in combinations(range(g.n), r):
            mark = set(sub)
            mindeg = min(sum(1 for w in g.adj[v] if w in mark) for v in sub)
            best = max(best, mindeg)
    return best


def brute_triangles(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    for tri in combinations(range(g.n), 3):
        u, v, w = tri
        if g.has_edge(u, v) and g.has_edge(u, w) and g.has_edge(v, w):
            out.append(tri)
    return out


def brute_four_cycles_through_edge(g: Graph, u: int, v: int) -> int:
    """Count 4-cycles (as vertex sets with a cyclic structure) containing uv."""
    count = 0
    for x, y in combinations(range(g.n), 2):
        if x in (u, v) or y in (u, v):
            continue
        # 4-cycle u-v-x-y-u or u-v-y-x-u
        if g.has_edge(v, x) and g.has_edge(x, y) and g.has_edge(y, u):
            count += 1
        if g.has_edge(v, y) and g.has_edge(y, x) and g.has_edge(x, u):
            count += 1
    return count


def brute_four_cycle_total(g: Graph) -> int:
    """Total number of distinct 4-cycles (cycles, not necessarily induced)."""
    count = 0
    for quad in combinations(range(g.n), 4):
        a, b, c, d = quad
        for cyc in ((a, b, c, d), (a, b, d, c), (a, c, b, d)):
            ok = all(
                g.has_edge(cyc[i], cyc[(i + 1) % 4]) for i in range(4)
            )
            if ok:
                count += 1
    return count


def brute_max_independent_set(g: Graph) -> int:
    """Exact alpha via branch and bound on neighbor bitmasks (n <= ~30)."""
    bits = g.nbr_bits
    order = sorted(range(g.n), key=lambda v: -len(g.adj[v]))
    best = 0

    def rec(candidates: int, size: int) -> None:
        nonlocal best
        if size + candidates.bit_count() <= best:
            return
        if candidates == 0:
            best = max(best, size)
            return
        v = (candidates & -candidates).bit_length() - 1
        rec(candidates & ~(1 << v) & ~bits[v], size + 1)  # take v
        rec(candidates & ~(1 << v), size)  # skip v
    _ = order
    rec((1 << g.n) - 1, 0)
    return best


def brute_check_cert(g: Graph, side_a, side_b, claimed: int) -> bool:
    """Exhaustive independent-set/degree check of a claimed certificate."""
    a, b = set(side_a), set(side_b)
    if not all(0 <= v < g.n for v in a | b):
        return False
    if a & b:
        return False
    if not a and not b:
        return False
    for side in (a, b):
        for u, v in combinations(sorted(side), 2):
            if g.has_edge(u, v):
                return False
    for v in a:
        if sum(1 for w in g.adj[v] if w in b) < claimed:
            return False
    for v in b:
        if sum(1 for w in g.adj[v] if w in a) < claimed:
            return False
    if claimed >= 1 and (not a or not b):
        return False
    return True


def random_graph(seed: int, n_max: int = 10) -> Graph:
    """Deterministic random test graph with n in [1, n_max]."""
    st = stream(seed, 0x7E57)
    n = 1 + st.next_u64() % n_max
    p = 0.1 + 0.8 * st.uniform()
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if st.uniform() < p
    ]
    return build_graph(n, edges)


# Small named graphs used all over the tests.
def cycle(k: int) -> Graph:
    return build_graph(k, [(i, (i + 1) % k) for i in range(k)])


def path(k: int) -> Graph:
    return build_graph(k, [(i, i + 1) for i in range(k - 1)])


def complete(k: int) -> Graph:
    return build_graph(k, list(combinations(range(k), 2)))


def complete_bipartite(a: int, b: int) -> Graph:
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def complete_multipartite(*sizes: int) -> Graph:
    n = sum(sizes)
    offs = []
    acc = 0
    for s in sizes:
        offs.append(acc)
        acc += s
    edges = []
    for i in range(len(sizes)):
        for j in range(i + 1, len(sizes)):
            for x in range(sizes[i]):
                for y in range(sizes[j]):
                    edges.append((offs[i] + x, offs[j] + y))
    return build_graph(n, edges)


def petersen() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, 5 + i) for i in range(5)]
    return build_graph(10, edges)
