"""Seeded random (graph, matrix, root) instances for cross-checking the deciders.

Plain random matrices are almost always invertible, which makes every
decider trivially agree.  The generator therefore mixes four kinds:

* ``random``   random entries on a random graph;
* ``singular`` the same, with one diagonal entry moved so that det = 0;
* ``cliques``  a star-clique sum on random blocks (support gives the graph);
* ``lowrank``  a sum of a few ``v v^T`` with small integer ``v``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .ratmat import RationalMatrix
from .rgraph import RootedGraph

KINDS = ("random", "singular", "cliques", "lowrank")
DEFAULT_SEED = 20240917


def default_seed() -> int:
    """``SNIPLAB_SEED`` if set, else a fixed default."""
    env = os.environ.get("SNIPLAB_SEED")
    return int(env) if env else DEFAULT_SEED


@dataclass(frozen=True)
class Instance:
    graph: RootedGraph
    matrix: RationalMatrix
    kind: str

    @property
    def root(self) -> int:
        return self.graph.root


def _det(a: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in a]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def _support(a: list[list[Fraction]], root: int) -> RootedGraph:
    n = len(a)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if a[u][v] != 0]
    return RootedGraph.from_edges(n, edges, root)


def _random_graph(rng: np.random.Generator, n: int) -> list[tuple[int, int]]:
    p = rng.uniform(0.2, 0.9)
    return [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]


def _random_pattern(rng: np.random.Generator, n: int) -> list[list[Fraction]]:
    edges = _random_graph(rng, n)
    small = rng.random() < 0.4
    a = [[Fraction(0)] * n for _ in range(n)]
    for v in range(n):
        a[v][v] = Fraction(int(rng.integers(-1, 2) if small else rng.integers(-3, 4)))
    for u, v in edges:
        if small:
            x = int(rng.choice([-1, 1]))
        else:
            x = int(rng.choice([-3, -2, -1, 1, 2, 3]))
        a[u][v] = a[v][u] = Fraction(x)
    return a


def _make_singular(rng: np.random.Generator, a: list[list[Fraction]]) -> None:
    """det is affine in a_jj with slope det(A(j)); zero it at the first usable j."""
    n = len(a)
    for j in rng.permutation(n):
        j = int(j)
        minor = [[a[r][c] for c in range(n) if c != j] for r in range(n) if r != j]
        slope = _det(minor) if minor else Fraction(1)
        if slope != 0:
            a[j][j] -= _det(a) / slope
            return


def _cliques(rng: np.random.Generator, n: int) -> list[list[Fraction]]:
    a = [[Fraction(0)] * n for _ in range(n)]
    for _ in range(int(rng.integers(1, 4))):
        size = int(rng.integers(1, min(n, 4) + 1))
        block = [int(x) for x in rng.choice(n, size=size, replace=False)]
        if rng.random() < 0.7:
            for u in block:
                for v in block:
                    a[u][v] += 1
        elif size > 1:
            centre, leaves = block[0], block[1:]
            for leaf in leaves:
                a[centre][leaf] += 1
                a[leaf][centre] += 1
    return a


def _lowrank(rng: np.random.Generator, n: int) -> list[list[Fraction]]:
    a = [[Fraction(0)] * n for _ in range(n)]
    for _ in range(int(rng.integers(1, max(2, n - 1)))):
        vec = [int(x) if rng.random() < 0.6 else 0 for x in rng.integers(-2, 3, size=n)]
        sign = int(rng.choice([-1, 1]))
        for u in range(n):
            for v in range(n):
                a[u][v] += sign * vec[u] * vec[v]
    return a


def generate(count: int, seed: int | None = None, max_n: int = 7, min_n: int = 1) -> Iterator[Instance]:
    """``count`` reproducible instances with ``min_n <= n <= max_n``."""
    seed = default_seed() if seed is None else seed
    rng = np.random.Generator(np.random.Philox(key=seed))
    for t in range(count):
        kind = KINDS[t % len(KINDS)]
        n = int(rng.integers(min_n, max_n + 1))
        if kind == "random":
            a = _random_pattern(rng, n)
        elif kind == "singular":
            a = _random_pattern(rng, n)
            _make_singular(rng, a)
        elif kind == "cliques":
            a = _cliques(rng, n)
        else:
            a = _lowrank(rng, n)
        root = int(rng.integers(n))
        yield Instance(_support(a, root), RationalMatrix(a, n, n), kind)
