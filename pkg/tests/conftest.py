from __future__ import annotations

import networkx as nx
import pytest

from sniplab.ratmat import RationalMatrix
from sniplab.rgraph import RootedGraph


def J(n: int) -> RationalMatrix:
    return RationalMatrix.ones(n, n)


def M(rows) -> RationalMatrix:
    return RationalMatrix(rows)


def atlas_graphs(max_n: int):
    """All graphs on 1..max_n vertices (up to isomorphism), as RootedGraph with root 0."""
    out = []
    for G in nx.graph_atlas_g()[1:]:
        if G.number_of_nodes() > max_n:
            break
        out.append(RootedGraph.from_edges(G.number_of_nodes(), list(G.edges())))
    return out


def rooted_atlas(max_n: int):
    return [g.with_root(v) for g in atlas_graphs(max_n) for v in range(g.n)]


@pytest.fixture(scope="session")
def atlas6():
    return atlas_graphs(6)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
