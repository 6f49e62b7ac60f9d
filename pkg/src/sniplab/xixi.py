"""Certificate search and the minor-based evaluation of xixi(G, i).

``minor_value`` is exact for values 0..4 and saturates at 5 (the true value
may exceed 5).  Grid searches only ever *certify*: every pair they report
comes with a witness matrix, while a pair that is not found is unknown,
never impossible.
"""

from __future__ import annotations

import itertools
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm
from typing import Iterator, Sequence

import numpy as np

from .errors import GridTooLarge, NotACutVertex, SizeLimit
from .ratmat import RationalMatrix, format_rational, rank_of_int_rows
from .rgraph import (DEFAULT_SIZE_CAP, RootedGraph, complement,
                     contains_rooted_minor, is_cut_vertex, minimal_minor_family)
from .snipcore import NullityPair, SnipCertificate, certify

log = logging.getLogger(__name__)

DEFAULT_CAP = 10 ** 8
DEFAULT_BUDGET = 20_000
MAX_MINOR_VALUE = 5


@dataclass(frozen=True)
class SearchGrid:
    """Witness search space: diagonal values and nonzero edge values.

    ``edge_values=None`` means ``(1, -1)``, or ``(1,)`` on forests.  With
    ``switching=True`` and a sign-symmetric edge list, edges of a fixed
    spanning forest are pinned to the first edge value; conjugating by a
    +-1 diagonal matrix reaches every other sign pattern, and that
    congruence preserves nullity pairs and i-SNIP.
    """

    diagonal_values: tuple[Fraction, ...] = tuple(Fraction(x) for x in (-2, -1, 0, 1, 2))
    edge_values: tuple[Fraction, ...] | None = None
    mode: str = "exhaustive"  # or "randomized"
    sample_count: int = 0
    seed: int | None = None
    cap: int = DEFAULT_CAP
    switching: bool = True

    def __post_init__(self):
        object.__setattr__(self, "diagonal_values",
                           tuple(Fraction(x) for x in self.diagonal_values))
        if self.edge_values is not None:
            ev = tuple(Fraction(x) for x in self.edge_values)
            if any(x == 0 for x in ev) or not ev:
                raise ValueError("edge values must be nonzero")
            object.__setattr__(self, "edge_values", ev)
        if self.mode not in ("exhaustive", "randomized"):
            raise ValueError(f"unknown grid mode {self.mode!r}")
        if self.mode == "randomized" and self.seed is None:
            raise ValueError("randomized mode needs a seed")
        if not self.diagonal_values:
            raise ValueError("need at least one diagonal value")

    def edge_values_for(self, g: RootedGraph) -> tuple[Fraction, ...]:
        if self.edge_values is not None:
            return self.edge_values
        return (Fraction(1),) if is_forest(g) else (Fraction(1), Fraction(-1))

    def randomized(self, sample_count: int, seed: int) -> "SearchGrid":
        return SearchGrid(self.diagonal_values, self.edge_values, "randomized",
                          sample_count, seed, self.cap, self.switching)

    def to_json(self) -> dict:
        return {
            "diagonal_values": [format_rational(x) for x in self.diagonal_values],
            "edge_values": None if self.edge_values is None else
            [format_rational(x) for x in self.edge_values],
            "mode": self.mode,
            "sample_count": self.sample_count,
            "seed": self.seed,
            "switching": self.switching,
        }


def is_forest(g: RootedGraph) -> bool:
    return g.num_edges == g.n - len(g.components())


def spanning_forest(g: RootedGraph) -> set[tuple[int, int]]:
    """BFS spanning forest, deterministic in vertex order."""
    seen = set()
    tree = set()
    for s in range(g.n):
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        while queue:
            u = queue.pop(0)
            for w in g.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    tree.add((min(u, w), max(u, w)))
                    queue.append(w)
    return tree


class _Space:
    """Mixed-radix indexing of the candidate matrices of a grid on a graph."""

    def __init__(self, g: RootedGraph, grid: SearchGrid):
        self.g = g
        self.n = g.n
        self.edges = g.sorted_edges()
        evals = grid.edge_values_for(g)
        symmetric = set(evals) == {-x for x in evals}
        pinned = spanning_forest(g) if grid.switching and symmetric and len(evals) > 1 else set()
        self.diag_vals = grid.diagonal_values
        self.edge_choices = [(evals[0],) if e in pinned else evals for e in self.edges]
        scale = 1
        for x in itertools.chain(self.diag_vals, evals):
            scale = lcm(scale, x.denominator)
        self.scale = scale
        self.diag_int = [int(x * scale) for x in self.diag_vals]
        self.edge_int = [[int(x * scale) for x in ch] for ch in self.edge_choices]
        self.radices = [len(self.diag_vals)] * self.n + [len(ch) for ch in self.edge_choices]
        size = 1
        for r in self.radices:
            size *= r
        self.size = size

    def digits(self, index: int) -> list[int]:
        """Lexicographic digits, most significant first (diagonal 0 first)."""
        out = [0] * len(self.radices)
        for pos in range(len(self.radices) - 1, -1, -1):
            r = self.radices[pos]
            index, out[pos] = divmod(index, r)
        return out

    def int_matrix(self, digits: Sequence[int]) -> list[list[int]]:
        n = self.n
        a = [[0] * n for _ in range(n)]
        for v in range(n):
            a[v][v] = self.diag_int[digits[v]]
        for e, (u, v) in enumerate(self.edges):
            a[u][v] = a[v][u] = self.edge_int[e][digits[n + e]]
        return a

    def rational_matrix(self, digits: Sequence[int]) -> RationalMatrix:
        n = self.n
        a = [[Fraction(0)] * n for _ in range(n)]
        for v in range(n):
            a[v][v] = self.diag_vals[digits[v]]
        for e, (u, v) in enumerate(self.edges):
            a[u][v] = a[v][u] = self.edge_choices[e][digits[n + e]]
        return RationalMatrix(a, n, n)

    def random_digits(self, seed: int, counter: int) -> list[int]:
        key = (seed % (1 << 64)) | (counter << 64)
        rng = np.random.Generator(np.random.Philox(key=key))
        return [int(rng.integers(r)) for r in self.radices]


def _indices(space: _Space, grid: SearchGrid) -> Iterator[tuple[int, list[int]]]:
    if grid.mode == "exhaustive":
        if space.size > grid.cap:
            raise GridTooLarge(f"{space.size} candidates exceed cap {grid.cap}")
        for idx in range(space.size):
            yield idx, space.digits(idx)
    else:
        for idx in range(grid.sample_count):
            yield idx, space.random_digits(grid.seed, idx)


# integer kernels for the hot loop --------------------------------------------------


def _nullity_int(a: list[list[int]]) -> int:
    return len(a) - rank_of_int_rows(a) if a else 0


def _minor_int(a: list[list[int]], i: int) -> list[list[int]]:
    return [[x for c, x in enumerate(row) if c != i] for r, row in enumerate(a) if r != i]


def _snip_int(a: list[list[int]], free: Sequence[tuple[int, int]], skip: int | None) -> bool:
    if not free:
        return True
    n = len(a)
    rows = []
    for r in range(n):
        if r == skip:
            continue
        ar = a[r]
        for c in range(n):
            row = [0] * len(free)
            nz = False
            for col, (j, k) in enumerate(free):
                if c == k and ar[j]:
                    row[col] = ar[j]
                    nz = True
                elif c == j and ar[k]:
                    row[col] = ar[k]
                    nz = True
            if nz:
                rows.append(row)
    return rank_of_int_rows(rows) == len(free)


def pair_value(pair: NullityPair) -> int:
    """xixi lower bound certified by a pair realised with i-SNIP.

    A downer pair (l+1, l) certifies (l, l), hence 2l.
    """
    return pair.k + pair.l if pair.k <= pair.l else 2 * pair.l


# search -----------------------------------------------------------------------


def _first_hit(args) -> int | None:
    g, grid, target, require_snip, lo, hi = args
    space = _Space(g, grid)
    free = g.non_edges()
    i = g.root
    for idx in range(lo, hi):
        digits = space.digits(idx) if grid.mode == "exhaustive" else space.random_digits(grid.seed, idx)
        a = space.int_matrix(digits)
        if _nullity_int(a) != target.k or _nullity_int(_minor_int(a, i)) != target.l:
            continue
        if require_snip and not _snip_int(a, free, i):
            continue
        return idx
    return None


def search_certificate(g: RootedGraph, target: NullityPair | tuple[int, int],
                       require_snip: bool = True, grid: SearchGrid | None = None,
                       workers: int = 1) -> SnipCertificate | None:
    """First grid matrix (in enumeration order) realising ``target`` at the root.

    ``None`` means "not found in this grid", not "impossible".  Parallel
    runs split the index range into contiguous chunks and keep the smallest
    hit, so the answer does not depend on ``workers``.
    """
    target = target if isinstance(target, NullityPair) else NullityPair(*target)
    grid = grid or SearchGrid()
    space = _Space(g, grid)
    total = space.size if grid.mode == "exhaustive" else grid.sample_count
    if grid.mode == "exhaustive" and total > grid.cap:
        raise GridTooLarge(f"{total} candidates exceed cap {grid.cap}")
    if g.n == 0:
        return None
    if workers <= 1 or total < 1000:
        hit = _first_hit((g, grid, target, require_snip, 0, total))
    else:
        bounds = [total * w // workers for w in range(workers + 1)]
        tasks = [(g, grid, target, require_snip, bounds[w], bounds[w + 1]) for w in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            hits = [h for h in ex.map(_first_hit, tasks) if h is not None]
        hit = min(hits) if hits else None
    if hit is None:
        return None
    digits = space.digits(hit) if grid.mode == "exhaustive" else space.random_digits(grid.seed, hit)
    return certify(space.rational_matrix(digits), g)


def enumerate_pairs(g: RootedGraph, grid: SearchGrid | None = None) -> dict[tuple[NullityPair, bool], SnipCertificate]:
    """Every (pair, snip flag) realised over the grid, each with its first witness."""
    grid = grid or SearchGrid()
    space = _Space(g, grid)
    free = g.non_edges()
    i = g.root
    found: dict[tuple[NullityPair, bool], list[int]] = {}
    for _, digits in _indices(space, grid):
        a = space.int_matrix(digits)
        pair = NullityPair(_nullity_int(a), _nullity_int(_minor_int(a, i)))
        if (pair, True) in found and (pair, False) in found:
            continue
        snip = _snip_int(a, free, i)
        found.setdefault((pair, snip), digits)
    return {key: certify(space.rational_matrix(d), g) for key, d in sorted(found.items())}


def lower_bounds_all_roots(g: RootedGraph, grid: SearchGrid | None = None,
                           budget: int = DEFAULT_BUDGET, seed: int = 0,
                           upper: Sequence[int] | None = None) -> list[tuple[int, SnipCertificate | None]]:
    """Best certified xixi lower bound at every root of ``g``, sharing one scan.

    The scan is exhaustive when the grid has at most ``budget`` candidates,
    otherwise ``budget`` seeded random samples.  A root stops improving once
    it reaches its entry in ``upper``.
    """
    grid = grid or SearchGrid()
    space = _Space(g, grid)
    if space.size > budget and grid.mode == "exhaustive":
        grid = grid.randomized(budget, seed)
    n = g.n
    free = g.non_edges()
    best = [0] * n
    best_digits: list[list[int] | None] = [None] * n
    upper = list(upper) if upper is not None else [2 * max(n - 1, 0)] * n
    open_roots = list(range(n))
    for _, digits in _indices(space, grid):
        if not open_roots:
            break
        a = space.int_matrix(digits)
        k = _nullity_int(a)
        for v in open_roots:
            l = _nullity_int(_minor_int(a, v))
            val = k + l if k <= l else 2 * l
            if val > best[v] or best_digits[v] is None:
                if _snip_int(a, free, v):
                    if best_digits[v] is None or val > best[v]:
                        best[v] = val
                        best_digits[v] = digits
        open_roots = [v for v in open_roots if best[v] < upper[v] or best_digits[v] is None]
    out = []
    for v in range(n):
        d = best_digits[v]
        out.append((best[v], certify(space.rational_matrix(d), g.with_root(v)) if d else None))
    return out


def certified_lower_bound(g: RootedGraph, grid: SearchGrid | None = None,
                          budget: int = DEFAULT_BUDGET, seed: int = 0,
                          upper: int | None = None) -> tuple[int, SnipCertificate | None]:
    if g.n == 0:
        return 0, None
    ups = None
    if upper is not None:
        ups = [2 * g.n] * g.n
        ups[g.root] = upper
    return lower_bounds_all_roots(g, grid, budget, seed, ups)[g.root]


# minor-based value ------------------------------------------------------------


def minor_value(g: RootedGraph, size_cap: int = DEFAULT_SIZE_CAP) -> int:
    """Largest s in 0..5 such that ``g`` contains a minimal minor for ``xixi >= s``."""
    if g.n > size_cap:
        raise SizeLimit(f"graph has {g.n} vertices, cap is {size_cap}")
    h = g.root_component()
    for s in range(MAX_MINOR_VALUE, 0, -1):
        if any(contains_rooted_minor(h, p, size_cap=size_cap) for p in minimal_minor_family(s)):
            return s
    return 0


@dataclass
class XiXiReport:
    graph: RootedGraph
    certified_lower: int
    minor_value: int
    saturated: bool
    certificates: list[SnipCertificate] = field(default_factory=list)
    edge_bound_ok: bool = True

    def to_json(self) -> dict:
        return {
            "graph": self.graph.to_json(),
            "certified_lower": self.certified_lower,
            "minor_value": self.minor_value,
            "saturated": self.saturated,
            "note": ("true value may exceed 5" if self.saturated else
                     "minor value is exact; missing certificates mean unknown, not impossible"),
            "edge_bound_ok": self.edge_bound_ok,
            "certificates": [c.to_json() for c in self.certificates],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "XiXiReport":
        return cls(RootedGraph.from_json(obj["graph"]), int(obj["certified_lower"]),
                   int(obj["minor_value"]), bool(obj["saturated"]),
                   [SnipCertificate.from_json(c) for c in obj.get("certificates", [])],
                   bool(obj["edge_bound_ok"]))


def edge_bound_upper(g: RootedGraph) -> int:
    """Largest s allowed by ``e(G) + 1 >= C(ceil((s+3)/2), 2)``."""
    s = 0
    while comb((s + 5) // 2, 2) <= g.num_edges + 1:
        s += 1
    return s


def xixi_minor_based(g: RootedGraph, grid: SearchGrid | None = None,
                     budget: int = DEFAULT_BUDGET, seed: int = 0,
                     size_cap: int = DEFAULT_SIZE_CAP) -> XiXiReport:
    """Minor-based value plus a certified lower bound from a grid search.

    Disconnected graphs are reduced to the root's component first.
    """
    value = minor_value(g, size_cap)
    saturated = value == MAX_MINOR_VALUE
    h = g.root_component()
    upper = value if not saturated else min(2 * max(h.n - 1, 0), edge_bound_upper(h))
    lower, cert = certified_lower_bound(h, grid, budget, seed, upper=upper)
    if lower > value and not saturated:
        raise AssertionError(f"certified {lower} exceeds minor value {value} on {g}")
    return XiXiReport(g, lower, value, saturated, [cert] if cert else [],
                      edge_bound_check(g, lower))


def cut_vertex_reduce(g: RootedGraph) -> list[RootedGraph]:
    """Split at a cut-vertex root: one part per component of ``G - i`` next to ``i``,
    each with the root added back (root relabelled inside the part)."""
    i = g.root
    if not is_cut_vertex(g, i):
        raise NotACutVertex(f"root {i} is not a cut-vertex")
    rest = [v for v in range(g.n) if v != i]
    sub = g.induced(rest, root=rest[0])
    parts = []
    nbrs = set(g.neighbors(i))
    for comp in sub.components():
        orig = [rest[v] for v in comp]
        if nbrs & set(orig):
            parts.append(g.induced(orig + [i], root=i))
    return parts


# bounds -------------------------------------------------------------------------


def edge_bound_check(g: RootedGraph, lower: int) -> bool:
    """``e(G) + 1 >= C(m, 2)`` with ``m = ceil((lower + 3) / 2)``."""
    m = (lower + 4) // 2
    return g.num_edges + 1 >= comb(m, 2)


def ng_bound_check(g: RootedGraph, lower: int | None = None, lower_complement: int | None = None,
                   budget: int = DEFAULT_BUDGET) -> bool:
    """``lower(G) + lower(complement) <= 2 sqrt(2) n``, tested as ``s^2 <= 8 n^2``."""
    if lower is None:
        lower = certified_lower_bound(g, budget=budget)[0]
    if lower_complement is None:
        lower_complement = certified_lower_bound(complement(g), budget=budget)[0]
    return (lower + lower_complement) ** 2 <= 8 * g.n * g.n


def default_workers() -> int:
    return max(1, min(4, os.cpu_count() or 1))
