from __future__ import annotations

import random
from functools import lru_cache

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import categorical_node_match

from sniplab.errors import InvalidOp, OutOfRange, ParseError, SizeLimit
from sniplab.rgraph import (ContractEdge, DeleteEdge, DeleteVertex, RootedGraph, T3_MEMBERS,
                            apply_minor_op, complement, complete_graph, contains_rooted_minor,
                            cut_vertices, disjoint_union, extend_root, family, from_graph6,
                            is_cut_vertex, minimal_minor_family, minor_model, one_step_minors,
                            path, star, t3_rooted, to_graph6, vertex_sum)

from conftest import atlas_graphs, rooted_atlas


def to_nx(g: RootedGraph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from((v, {"root": v == g.root}) for v in range(g.n))
    G.add_edges_from(g.edges)
    return G


def rooted_iso(a: RootedGraph, b: RootedGraph) -> bool:
    if a.n != b.n or a.num_edges != b.num_edges:
        return False
    return nx.is_isomorphic(to_nx(a), to_nx(b), node_match=categorical_node_match("root", False))


def key(g: RootedGraph):
    return (g.n, g.root, tuple(sorted(g.edges)))


@lru_cache(maxsize=None)
def _closure(k):
    n, root, edges = k
    g = RootedGraph.from_edges(n, edges, root)
    seen = {k: g}
    frontier = [g]
    while frontier:
        nxt = []
        for h in frontier:
            for m in one_step_minors(h):
                km = key(m)
                if km not in seen:
                    seen[km] = m
                    nxt.append(m)
        frontier = nxt
    return list(seen.values())


def brute_contains(host: RootedGraph, pattern: RootedGraph) -> bool:
    """Oracle: some sequence of minor operations reaches a rooted copy of ``pattern``."""
    return any(rooted_iso(m, pattern) for m in _closure(key(host)) if m.n == pattern.n)


# basic structure ---------------------------------------------------------------------


def test_invalid_graphs():
    with pytest.raises(InvalidOp):
        RootedGraph.from_edges(2, [(0, 0)])
    with pytest.raises(InvalidOp):
        RootedGraph.from_edges(2, [(0, 2)])
    with pytest.raises(InvalidOp):
        RootedGraph.from_edges(2, [(0, 1)], root=2)


def test_json_round_trip():
    g = family("Paw").with_root(3)
    assert RootedGraph.from_json(g.to_json()) == g
    assert g.to_json() == {"n": 4, "edges": [[0, 1], [0, 2], [0, 3], [1, 2]], "root": 3}


# minor operations ------------------------------------------------------------------------


def test_minor_op_examples():
    k2 = apply_minor_op(complete_graph(3), ContractEdge(0, 1))
    assert k2.n == 2 and k2.num_edges == 1 and k2.root == 0
    two = apply_minor_op(complete_graph(2), DeleteEdge(0, 1))
    assert two.n == 2 and two.num_edges == 0 and two.root == 0
    s211 = family("S211").with_root(4)
    k13 = apply_minor_op(s211, ContractEdge(1, 0))
    assert rooted_iso(k13, star(3).with_root(1))


def test_minor_op_errors():
    with pytest.raises(InvalidOp):
        apply_minor_op(complete_graph(3), DeleteVertex(0))
    with pytest.raises(InvalidOp):
        apply_minor_op(path(3), DeleteEdge(0, 2))
    with pytest.raises(InvalidOp):
        apply_minor_op(path(3), ContractEdge(0, 2))
    g = extend_root(complete_graph(3))
    with pytest.raises(InvalidOp):
        apply_minor_op(g, DeleteVertex(g.root))


def test_contract_reroots():
    g = path(3).with_root(2)
    h = apply_minor_op(g, ContractEdge(1, 2))
    assert h.n == 2 and h.root == 1


# containment --------------------------------------------------------------------------


def test_containment_examples():
    paw = family("Paw").with_root(3)
    assert contains_rooted_minor(complete_graph(3), complete_graph(2))
    assert not contains_rooted_minor(star(3), complete_graph(3))
    assert contains_rooted_minor(paw, complete_graph(3))
    assert not contains_rooted_minor(paw, family("S211").with_root(4))


def test_size_limit():
    with pytest.raises(SizeLimit):
        contains_rooted_minor(path(13), complete_graph(2))
    assert contains_rooted_minor(path(13), complete_graph(2), size_cap=13)


def test_containment_matches_operation_closure():
    hosts = rooted_atlas(5)
    patterns = rooted_atlas(4)
    rng = random.Random(7)
    pairs = [(h, p) for h in hosts for p in patterns]
    rng.shuffle(pairs)
    for h, p in pairs[:2500]:
        assert contains_rooted_minor(h, p) == brute_contains(h, p), (h, p)


def test_model_is_valid():
    for h in rooted_atlas(5)[::3]:
        for p in minimal_minor_family(2) + minimal_minor_family(3):
            model = minor_model(h, p)
            if model is None:
                continue
            used = set()
            for v, bs in model.items():
                assert bs and not used & set(bs)
                used |= set(bs)
                assert h.induced(bs, root=bs[0]).is_connected()
            assert h.root in model[p.root]
            for u, v in p.edges:
                assert any(h.has_edge(a, b) for a in model[u] for b in model[v])


def test_reflexive_and_transitive_random():
    rng = random.Random(11)
    graphs = rooted_atlas(6)
    for _ in range(150):
        a, b, c = sorted(rng.sample(graphs, 3), key=lambda g: -g.n)
        assert contains_rooted_minor(a, a)
        if contains_rooted_minor(a, b) and contains_rooted_minor(b, c):
            assert contains_rooted_minor(a, c)


def test_rooted_implies_unrooted():
    for h in rooted_atlas(5)[::2]:
        for p in rooted_atlas(4)[::3]:
            if contains_rooted_minor(h, p):
                assert contains_rooted_minor(h, p, rooted=False)


def test_one_step_minors_are_minors():
    for g in rooted_atlas(5)[::4]:
        for m in one_step_minors(g):
            assert contains_rooted_minor(g, m)


# constructions --------------------------------------------------------------------------


def test_extend_root_examples():
    assert rooted_iso(extend_root(complete_graph(1)), complete_graph(2).with_root(1))
    assert rooted_iso(extend_root(complete_graph(3)), family("Paw").with_root(3))
    assert rooted_iso(extend_root(star(3).with_root(1)), family("S211").with_root(4))


def test_vertex_sum_examples():
    paw = vertex_sum(complete_graph(3), complete_graph(2), 0)
    assert nx.is_isomorphic(to_nx(paw.with_root(0)).to_undirected(), nx.Graph(family("Paw").edges))
    p3 = vertex_sum(complete_graph(2), complete_graph(2), 1, 0)
    assert nx.is_isomorphic(nx.Graph(p3.edges), nx.path_graph(3))
    bowtie = vertex_sum(complete_graph(3), complete_graph(3), 0)
    assert bowtie.n == 5 and bowtie.num_edges == 6 and is_cut_vertex(bowtie, 0)


def test_cut_vertices_match_networkx():
    for g in atlas_graphs(6):
        expected = set(nx.articulation_points(to_nx(g)))
        assert set(cut_vertices(g)) == expected


def test_complement_and_union():
    g = path(4)
    assert complement(complement(g)) == g
    assert complement(complete_graph(4)).num_edges == 0
    u = disjoint_union(complete_graph(3), complete_graph(2))
    assert u.n == 5 and u.num_edges == 4 and len(u.components()) == 2


# families --------------------------------------------------------------------------------


def test_family_errors():
    with pytest.raises(OutOfRange):
        family("Nope")
    with pytest.raises(OutOfRange):
        family("K")
    with pytest.raises(OutOfRange):
        minimal_minor_family(6)


def test_t3_family_shapes():
    sizes = {name: (family(name).n, family(name).num_edges) for name in T3_MEMBERS}
    assert sizes["T3:K4"] == (4, 6)
    assert sizes["T3:K23"] == (5, 6)
    assert sizes["T3:T"] == (6, 9)
    assert cut_vertices(family("T3:T1")) == [6]
    assert cut_vertices(family("T3:T2")) == [6, 7]
    assert cut_vertices(family("T3:T3")) == [6, 7, 8]
    assert all(not cut_vertices(family(n)) for n in ("T3:K4", "T3:K23", "T3:T"))


def test_minimal_minor_family_sizes():
    sizes = [len(minimal_minor_family(s)) for s in range(6)]
    # non-cut vertex counts: K4 4, K23 5, T 6, T1 6, T2 6, T3 6
    assert sizes == [1, 1, 2, 2, 33, 33]
    assert all(not is_cut_vertex(g, g.root) for g in t3_rooted())


def test_t3_members_pairwise_not_minors():
    members = [family(n) for n in T3_MEMBERS]
    for a in members:
        for b in members:
            if a is not b:
                assert not contains_rooted_minor(a, b, rooted=False, size_cap=12)


def test_noncut_root_t3_equivalence():
    """Non-cut root: a rooted T3 minor exists iff some T3 member is an unrooted minor."""
    t3r = t3_rooted()
    members = [family(n) for n in T3_MEMBERS]
    for g in atlas_graphs(7):
        if not g.is_connected() or g.num_edges < 6:
            continue
        unrooted = any(contains_rooted_minor(g, m, rooted=False) for m in members)
        for v in range(g.n):
            if is_cut_vertex(g, v):
                continue
            h = g.with_root(v)
            rooted = any(contains_rooted_minor(h, p) for p in t3r)
            assert rooted == unrooted, h


# graph6 ------------------------------------------------------------------------------------


def test_graph6_examples():
    assert to_graph6(complete_graph(3)) == "Bw"
    assert to_graph6(path(3)) == "Bg"
    assert from_graph6("Bw") == complete_graph(3)
    assert from_graph6("Bg", root=1) == path(3).with_root(1)
    assert to_graph6(complete_graph(1)) == "@"
    assert to_graph6(RootedGraph(0, frozenset())) == "?"


def test_graph6_matches_networkx():
    for g in atlas_graphs(7):
        G = nx.Graph()
        G.add_nodes_from(range(g.n))
        G.add_edges_from(g.edges)
        expected = nx.to_graph6_bytes(G, header=False).decode().strip()
        assert to_graph6(g) == expected
        assert from_graph6(expected) == g


def test_graph6_large_n():
    g = path(70)
    s = to_graph6(g)
    assert s.startswith("~")
    assert from_graph6(s) == g


@pytest.mark.parametrize("bad", ["", "B", "Bww", "B\x7f", "Bx"])
def test_graph6_errors(bad):
    with pytest.raises(ParseError):
        from_graph6(bad)
