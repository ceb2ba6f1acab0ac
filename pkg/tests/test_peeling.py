"""graph-core: degeneracy, cores, exact-rational peeling, coloring, Turán greedy."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dibs.graphs import build_graph
from dibs.peeling import (
    EmptyCoreError,
    core,
    degeneracy_order,
    degrees_within,
    edge_count_within,
    greedy_color,
    half_avg_subgraph,
    independent_in,
    min_degree_within,
    minimal_min_degree_subgraph,
    turan_bound,
    turan_independent_set,
)

from oracles import (
    brute_degeneracy,
    complete,
    complete_bipartite,
    cycle,
    path,
    random_graph,
)


def test_degeneracy_examples():
    assert degeneracy_order(cycle(5)).degeneracy == 2
    # brute force over induced subgraphs confirms K_{3,3} is 3-degenerate
    k33 = complete_bipartite(3, 3)
    assert brute_degeneracy(k33) == 3
    assert degeneracy_order(k33).degeneracy == 3
    assert degeneracy_order(build_graph(5, [])).degeneracy == 0


def test_degeneracy_order_structure():
    g = complete_bipartite(3, 3)
    order = degeneracy_order(g)
    assert sorted(order.order) == list(range(6))
    pos = order.pos
    for v in range(6):
        nplus = order.right_neighbors(g, v)
        assert order.right_degree[v] == len(nplus)
        assert all(pos[w] > pos[v] for w in nplus)
    assert order.degeneracy == max(order.right_degree.values())


def test_degeneracy_matches_brute_on_corpus():
    for seed in range(80):
        g = random_graph(seed, n_max=9)
        assert degeneracy_order(g).degeneracy == brute_degeneracy(g)


def test_core_examples():
    assert core(cycle(5), 2) == (0, 1, 2, 3, 4)
    assert core(path(4), 2) == ()
    # K_{3,3} plus a pendant vertex hanging off vertex 0
    g = build_graph(7, [(i, 3 + j) for i in range(3) for j in range(3)] + [(0, 6)])
    assert core(g, 3) == (0, 1, 2, 3, 4, 5)


def test_core_is_maximal_min_degree_subgraph():
    # maximality against every superset, checked brute force on small graphs
    from itertools import combinations

    for seed in range(25):
        g = random_graph(seed, n_max=8)
        for t in range(4):
            c = core(g, t)
            if c:
                assert min_degree_within(g, c) >= t
            mark = set(c)
            for r in range(len(c) + 1, g.n + 1):
                for sub in combinations(range(g.n), r):
                    if mark <= set(sub):
                        assert min(degrees_within(g, sub).values()) < t


def test_half_avg_examples():
    assert half_avg_subgraph(path(3)) == (0, 1, 2)
    assert half_avg_subgraph(complete(4)) == (0, 1, 2, 3)
    star = build_graph(10, [(0, i) for i in range(1, 10)])
    out = half_avg_subgraph(star)
    assert out
    avg_half = Fraction(2 * 9, 10) / 2
    assert all(degrees_within(star, out)[v] >= avg_half for v in out)
    with pytest.raises(EmptyCoreError):
        half_avg_subgraph(build_graph(3, []))


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10_000))
def test_half_avg_property(seed):
    g = random_graph(seed)
    if g.m == 0:
        return
    out = half_avg_subgraph(g)
    assert out
    threshold = Fraction(g.m, g.n)  # avg/2 of the graph at entry
    dw = degrees_within(g, out)
    assert all(Fraction(dw[v]) >= threshold for v in out)


def test_minimal_examples():
    assert minimal_min_degree_subgraph(complete(4), 3) == (0, 1, 2, 3)
    two_c5 = build_graph(
        10,
        [(i, (i + 1) % 5) for i in range(5)]
        + [(5 + i, 5 + (i + 1) % 5) for i in range(5)],
    )
    # exactly one C5 survives: removing any vertex of a C5 empties its 2-core
    # (which one is tie-policy territory; lowest-id commit removes the first)
    assert minimal_min_degree_subgraph(two_c5, 2) == (5, 6, 7, 8, 9)
    with pytest.raises(EmptyCoreError):
        minimal_min_degree_subgraph(cycle(5), 3)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 3))
def test_minimal_property(seed, d):
    g = random_graph(seed)
    if not core(g, d):
        return
    s = minimal_min_degree_subgraph(g, d)
    assert min_degree_within(g, s) >= d
    for v in s:
        rest = [u for u in s if u != v]
        assert core(g, d, within=rest) == ()


def test_greedy_color_examples():
    for g, bound in ((cycle(5), 3), (complete(4), 4), (path(6), 2)):
        order = degeneracy_order(g)
        colors = greedy_color(g, order)
        used = len(set(colors.values()))
        assert used <= order.degeneracy + 1
        assert used <= bound
        for u, v in g.edges():
            assert colors[u] != colors[v]
    assert len(set(greedy_color(complete(4), degeneracy_order(complete(4))).values())) == 4


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10_000))
def test_greedy_color_property(seed):
    g = random_graph(seed)
    order = degeneracy_order(g)
    colors = greedy_color(g, order)
    for u, v in g.edges():
        assert colors[u] != colors[v]
    assert len(set(colors.values())) <= order.degeneracy + 1 if g.n else True


def test_turan_examples():
    assert len(turan_independent_set(cycle(5))) >= 2
    assert len(turan_independent_set(complete(4))) == 1
    assert turan_independent_set(build_graph(6, [])) == (0, 1, 2, 3, 4, 5)


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10_000))
def test_turan_property(seed):
    g = random_graph(seed)
    s = turan_independent_set(g)
    assert independent_in(g, s) is None
    assert len(s) >= turan_bound(g.n, g.m)


def test_within_variants():
    g = complete_bipartite(4, 4)
    sub = [0, 1, 4, 5]
    assert core(g, 2, within=sub) == (0, 1, 4, 5)
    assert edge_count_within(g, sub) == 4
    order = degeneracy_order(g, within=sub)
    assert sorted(order.order) == sub
    colors = greedy_color(g, order)
    assert set(colors) == set(sub)
    s = turan_independent_set(g, within=sub)
    assert set(s) <= set(sub) and independent_in(g, s) is None
