from __future__ import annotations

import random
from functools import lru_cache

import pytest

from sniplab.errors import GridTooLarge, NotACutVertex, OutOfRange, SizeLimit
from sniplab.rgraph import (RootedGraph, complement, complete_graph, disjoint_union, extend_root,
                            family, is_cut_vertex, minimal_minor_family, one_step_minors, path,
                            star, t3_rooted, vertex_sum)
from sniplab.snipcore import NullityPair, verify_certificate
from sniplab.xixi import (SearchGrid, XiXiReport, certified_lower_bound, cut_vertex_reduce,
                          edge_bound_check, edge_bound_upper, enumerate_pairs,
                          lower_bounds_all_roots, minor_value, ng_bound_check, pair_value,
                          search_certificate, xixi_minor_based)

from conftest import atlas_graphs, rooted_atlas


@lru_cache(maxsize=None)
def mv(g: RootedGraph) -> int:
    return minor_value(g)


# grid ---------------------------------------------------------------------------------


def test_grid_validation():
    with pytest.raises(ValueError):
        SearchGrid(edge_values=(1, 0))
    with pytest.raises(ValueError):
        SearchGrid(mode="randomized")
    with pytest.raises(ValueError):
        SearchGrid(mode="sideways")
    assert SearchGrid().edge_values_for(path(4)) == (1,)
    assert set(SearchGrid().edge_values_for(complete_graph(3))) == {1, -1}


def test_grid_too_large():
    with pytest.raises(GridTooLarge):
        search_certificate(complete_graph(6), (5, 5), True, SearchGrid(cap=1000))
    with pytest.raises(GridTooLarge):
        enumerate_pairs(complete_graph(6), SearchGrid(cap=1000))


# search -------------------------------------------------------------------------------


def test_search_examples():
    cert = search_certificate(complete_graph(3), NullityPair(1, 1), True)
    assert cert is not None and cert.pair == NullityPair(1, 1) and cert.snip and cert.agree
    assert verify_certificate(cert)
    cert = search_certificate(complete_graph(1), (0, 0), True)
    assert cert is not None and cert.matrix[0, 0] != 0


def test_search_not_found_at_star_centre():
    g = star(5)
    assert search_certificate(g, (1, 1), True) is None
    assert search_certificate(g, (1, 1), False) is None


def test_search_independent_of_workers():
    g = complete_graph(4)
    one = search_certificate(g, (1, 2), True, workers=1)
    two = search_certificate(g, (1, 2), True, workers=2)
    assert one is not None and one == two


def test_randomized_is_reproducible():
    grid = SearchGrid(mode="randomized", sample_count=400, seed=3)
    a = search_certificate(complete_graph(4), (2, 2), False, grid)
    b = search_certificate(complete_graph(4), (2, 2), False, grid)
    assert a == b


def test_search_certificates_are_sound():
    for g in rooted_atlas(4)[::3]:
        for (pair, snip), cert in enumerate_pairs(g).items():
            assert cert.pair == pair and cert.snip == snip and cert.agree
            assert verify_certificate(cert)


def test_enumerate_k1():
    found = enumerate_pairs(complete_graph(1))
    assert set(found) == {(NullityPair(0, 0), True), (NullityPair(1, 0), True)}


def test_square_pair_implies_downer_pair():
    """Whenever (k,k) with SNIP is found, (k+1,k) with SNIP is found too."""
    for g in rooted_atlas(4):
        found = enumerate_pairs(g)
        for pair, snip in found:
            if snip and pair.k == pair.l:
                assert (NullityPair(pair.k + 1, pair.k), True) in found, (g, pair)


def test_pair_value():
    assert pair_value(NullityPair(1, 2)) == 3
    assert pair_value(NullityPair(2, 2)) == 4
    assert pair_value(NullityPair(3, 2)) == 4


# minor values --------------------------------------------------------------------------


def test_minor_value_examples():
    assert mv(complete_graph(1)) == 0
    assert mv(path(3).with_root(0)) == 1
    rep = xixi_minor_based(complete_graph(4), budget=3000)
    assert rep.minor_value == 4 and not rep.saturated
    assert rep.certified_lower == 4
    assert XiXiReport.from_json(rep.to_json()) == rep


def test_minor_value_figure_values():
    cases = [(complete_graph(1), 0), (complete_graph(2).with_root(1), 1), (complete_graph(3), 2),
             (star(3).with_root(1), 2), (family("Paw").with_root(3), 3),
             (family("S211").with_root(4), 3)]
    for g, s in cases:
        assert mv(g) == s
    assert all(mv(g) == 4 for g in t3_rooted())
    assert all(mv(g) == 5 for g in minimal_minor_family(5))


def test_minor_value_disconnected_and_limits():
    g = disjoint_union(path(2), complete_graph(4))
    assert mv(g) == 1
    with pytest.raises(SizeLimit):
        minor_value(path(13))
    with pytest.raises(OutOfRange):
        minimal_minor_family(-1)


def test_minimality_audit_small():
    for s in range(4):
        for g in minimal_minor_family(s):
            assert all(mv(h) < s for h in one_step_minors(g))


def test_monotone_under_minors():
    for g in rooted_atlas(6)[::3]:
        v = mv(g)
        for h in one_step_minors(g):
            assert mv(h) <= v


def test_odd_even_coupling_six_vertices():
    for g in rooted_atlas(6):
        if g.n == 6 and not g.is_connected():
            continue
        a, b = mv(g), mv(extend_root(g))
        for k in range(3):
            assert (b >= 2 * k + 1) == (a >= 2 * k), (g, a, b)


# cut vertices --------------------------------------------------------------------------


def test_cut_vertex_reduce_examples():
    paw = family("Paw")  # vertex 0 carries the pendant
    parts = cut_vertex_reduce(paw.with_root(0))
    assert sorted((p.n, p.num_edges) for p in parts) == [(2, 1), (3, 3)]
    assert max(mv(p) for p in parts) == 2 == mv(paw.with_root(0))
    parts = cut_vertex_reduce(path(3).with_root(1))
    assert [(p.n, p.num_edges) for p in parts] == [(2, 1), (2, 1)]
    assert max(mv(p) for p in parts) == 1 == mv(path(3).with_root(1))
    with pytest.raises(NotACutVertex):
        cut_vertex_reduce(complete_graph(3))


def test_cut_vertex_identity():
    rng = random.Random(1)
    parts = [g for g in rooted_atlas(4) if g.is_connected() and g.n >= 2]
    for _ in range(200):
        a, b = rng.choice(parts), rng.choice(parts)
        s = vertex_sum(a, b, a.root, b.root)
        va, vb = mv(a), mv(b)
        if max(va, vb) < 5:
            assert mv(s) == max(va, vb)
            assert max(mv(p) for p in cut_vertex_reduce(s)) == max(va, vb)


def test_two_sided_gluing_spot_check():
    rng = random.Random(2)
    cores = [g for g in rooted_atlas(4) if g.is_connected() and g.n >= 2]
    sides = [g for g in atlas_graphs(3) if g.is_connected() and g.n >= 2]
    k2 = complete_graph(2)
    checked = 0
    for _ in range(80):
        g0 = rng.choice(cores)
        v1, v2 = rng.randrange(g0.n), rng.randrange(g0.n)
        g1, g2 = rng.choice(sides), rng.choice(sides)
        w1, w2 = rng.randrange(g1.n), rng.randrange(g2.n)

        def glue(a, b):
            return vertex_sum(vertex_sum(g0, a, v1, w1 if a is g1 else 0), b, v2,
                              w2 if b is g2 else 0)

        g = glue(g1, g2)
        assert g.n <= 8
        vals = (mv(g), mv(glue(k2, g2)), mv(glue(g1, k2)))
        if max(vals) < 5:
            assert vals[0] == max(vals[1:]), (g0, g1, g2)
            checked += 1
    assert checked > 30


# bounds ----------------------------------------------------------------------------------


def test_bound_examples():
    k4 = complete_graph(4)
    assert edge_bound_check(k4, 4)
    assert edge_bound_check(complete_graph(2), 1)
    assert not edge_bound_check(path(2), 4)
    assert ng_bound_check(k4, 4, 0)
    assert edge_bound_upper(k4) == 5  # m = 4 needs 6 <= 7; m = 5 needs 10


def test_search_below_minor_value_five_vertices():
    for g in atlas_graphs(5):
        vals = [mv(g.with_root(v)) for v in range(g.n)]
        lows = lower_bounds_all_roots(g, budget=1500, upper=vals)
        for v, (low, cert) in enumerate(lows):
            if vals[v] < 5:  # a saturated value only says "at least 5"
                assert low <= vals[v]
            assert cert is not None and cert.snip and pair_value(cert.pair) == low


def test_certified_lower_bound_matches_report():
    g = family("Paw").with_root(3)
    low, cert = certified_lower_bound(g)
    assert low == 3 and cert.pair == NullityPair(1, 2)
    assert ng_bound_check(g, low, certified_lower_bound(complement(g))[0])
