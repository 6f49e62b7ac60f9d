"""Nullity pairs, the Strong Arnold Property and i-SNIP.

i-SNIP is decided three independent ways:

* ``has_isnip_direct`` -- the defining linear system on the free entries of
  ``X`` (non-edges off the diagonal), with every row of ``AX`` except row
  ``i`` forced to zero;
* ``has_isnip_cases`` -- reduce to SAP of ``A``, ``A + tE_ii`` or ``A(i)``
  according to whether ``i`` is downer, neutral or upper;
* ``has_isnip_recipe`` -- the right kernel of ``A(i,:]`` must give a full
  recipe from the graph.

The deciders read the zero pattern from the graph, not from ``A``, so
matrices in the closure S^cl(G) (edge entries allowed to vanish) are
accepted.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotABasis, NotNeutral, ParseError, ShapeMismatch
from .ratmat import (RationalMatrix, in_column_space, kernel_basis, nullity,
                     rank, rank_of_int_rows)
from .rgraph import RootedGraph


class IndexType(str, enum.Enum):
    UPPER = "upper"
    NEUTRAL = "neutral"
    DOWNER = "downer"


@dataclass(frozen=True, order=True)
class NullityPair:
    k: int
    l: int

    def __post_init__(self):
        if abs(self.k - self.l) > 1 or self.k < 0 or self.l < 0:
            raise ValueError(f"({self.k},{self.l}) violates |k - l| <= 1")

    @property
    def index_type(self) -> IndexType:
        if self.l == self.k + 1:
            return IndexType.UPPER
        if self.l == self.k:
            return IndexType.NEUTRAL
        return IndexType.DOWNER

    def astuple(self) -> tuple[int, int]:
        return (self.k, self.l)

    def __str__(self) -> str:
        return f"({self.k},{self.l})"


def _check_square(A: RationalMatrix, g: RootedGraph | None = None) -> None:
    if not A.is_square():
        raise ShapeMismatch(f"expected a square matrix, got {A.shape}")
    if g is not None and g.n != A.rows:
        raise ShapeMismatch(f"matrix is {A.rows}x{A.cols} but graph has {g.n} vertices")


def graph_minus(g: RootedGraph, i: int) -> RootedGraph:
    """``G - i`` with the root dropped (root set to 0); used where the root is irrelevant."""
    keep = [v for v in range(g.n) if v != i]
    if not keep:
        return RootedGraph(0, frozenset(), 0)
    return g.induced(keep, root=keep[0])


# pattern membership ----------------------------------------------------------


def in_pattern(A: RationalMatrix, g: RootedGraph, closed: bool = False) -> bool:
    """``A`` in S(G) (strict) or in its closure S^cl(G) (``closed=True``)."""
    _check_square(A, g)
    if not A.is_symmetric():
        return False
    for u in range(g.n):
        for v in range(u + 1, g.n):
            nz = A[u, v] != 0
            if g.has_edge(u, v):
                if not nz and not closed:
                    return False
            elif nz:
                return False
    return True


# nullity pairs -----------------------------------------------------------------


def nullity_pair(A: RationalMatrix, i: int) -> NullityPair:
    _check_square(A)
    if not 0 <= i < A.rows:
        raise ShapeMismatch(f"index {i} out of range for n={A.rows}")
    return NullityPair(nullity(A), nullity(A.delete(i)))


def index_type(A: RationalMatrix, i: int) -> IndexType:
    return nullity_pair(A, i).index_type


def neutral_shift(A: RationalMatrix, i: int) -> Fraction:
    """The unique ``t`` making ``i`` a downer index of ``A + t E_ii``.

    With ``C = A(i)`` and ``b`` the border column, any ``x`` with ``Cx = b``
    gives ``t = x^T C x - a_ii``.
    """
    if index_type(A, i) is not IndexType.NEUTRAL:
        raise NotNeutral(f"index {i} is not neutral")
    C = A.delete(i)
    b = [A[r, i] for r in range(A.rows) if r != i]
    x = in_column_space(C, b)
    assert x is not None  # neutral => b in Col(C)
    t = sum((xi * bi for xi, bi in zip(x, b)), Fraction(0)) - A[i, i]
    shifted = A.add_to_diagonal(i, t)
    if index_type(shifted, i) is not IndexType.DOWNER:
        raise AssertionError("neutral shift failed to produce a downer index")
    return t


# SAP / SNIP, direct ------------------------------------------------------------


def _free_pairs(g: RootedGraph) -> list[tuple[int, int]]:
    return g.non_edges()


def constraint_rows(A: RationalMatrix, g: RootedGraph, skip_row: int | None = None) -> list[list[int]]:
    """Integer constraint matrix of ``AX = O`` (rows of ``AX`` except
    ``skip_row``) in the unknowns ``X[j,k] = X[k,j]`` for non-edges ``{j,k}``.
    """
    _check_square(A, g)
    n = A.rows
    M = A.clear_denominators()
    a = [[int(M[r, c]) for c in range(n)] for r in range(n)]
    free = _free_pairs(g)
    rows: list[list[int]] = []
    if not free:
        return rows
    for r in range(n):
        if r == skip_row:
            continue
        ar = a[r]
        for c in range(n):
            # (AX)[r, c] = sum_m A[r, m] X[m, c]
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
    return rows


def has_sap(A: RationalMatrix, g: RootedGraph) -> bool:
    """``X = O`` is the only symmetric ``X`` vanishing on edges and the
    diagonal with ``AX = O``."""
    nfree = len(_free_pairs(g))
    if nfree == 0:
        _check_square(A, g)
        return True
    return rank_of_int_rows(constraint_rows(A, g)) == nfree


def has_isnip_direct(A: RationalMatrix, g: RootedGraph, i: int) -> bool:
    """As :func:`has_sap` but only rows other than ``i`` of ``AX`` are constrained."""
    nfree = len(_free_pairs(g))
    if nfree == 0:
        _check_square(A, g)
        return True
    return rank_of_int_rows(constraint_rows(A, g, skip_row=i)) == nfree


# SNIP via the downer/neutral/upper reduction ---------------------------------------


def has_isnip_cases(A: RationalMatrix, g: RootedGraph, i: int) -> bool:
    _check_square(A, g)
    kind = index_type(A, i)
    if kind is IndexType.DOWNER:
        return has_sap(A, g)
    if kind is IndexType.NEUTRAL:
        return has_sap(A.add_to_diagonal(i, neutral_shift(A, i)), g)
    return has_sap(A.delete(i), graph_minus(g, i))


# SNIP via full recipes ------------------------------------------------------------


def _sym_index(m: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(m) for b in range(a, m)]


def gives_full_recipe(N: RationalMatrix, g: RootedGraph) -> bool:
    """Do the vertex and edge ingredients built from the rows of ``N``
    span all symmetric ``m x m`` matrices?"""
    if N.rows != g.n:
        raise ShapeMismatch(f"basis has {N.rows} rows but graph has {g.n} vertices")
    m = N.cols
    if m == 0:
        return True
    if rank(N) != m:
        raise NotABasis(f"columns of the {N.rows}x{m} matrix are dependent")
    U = N.clear_denominators()
    u = [[int(U[j, c]) for c in range(m)] for j in range(N.rows)]
    slots = _sym_index(m)
    ingredients = []
    for j in range(g.n):
        ingredients.append([u[j][a] * u[j][b] for a, b in slots])
    for j, k in g.sorted_edges():
        ingredients.append([u[j][a] * u[k][b] + u[k][a] * u[j][b] for a, b in slots])
    return rank_of_int_rows(ingredients) == len(slots)


def has_isnip_recipe(A: RationalMatrix, g: RootedGraph, i: int) -> bool:
    _check_square(A, g)
    return gives_full_recipe(kernel_basis(A.delete_row(i)), g)


def has_sap_recipe(A: RationalMatrix, g: RootedGraph) -> bool:
    _check_square(A, g)
    return gives_full_recipe(kernel_basis(A), g)


METHODS = {
    "direct": has_isnip_direct,
    "cases": has_isnip_cases,
    "recipe": has_isnip_recipe,
}


# certificates -------------------------------------------------------------------


@dataclass(frozen=True)
class SnipCertificate:
    graph: RootedGraph
    matrix: RationalMatrix
    pair: NullityPair
    index_type: IndexType
    snip_direct: bool
    snip_cases: bool
    snip_recipe: bool

    @property
    def snip(self) -> bool:
        return self.snip_direct

    @property
    def agree(self) -> bool:
        return self.snip_direct == self.snip_cases == self.snip_recipe

    def to_json(self) -> dict:
        return {
            "graph": self.graph.to_json(),
            "matrix": self.matrix.to_json(),
            "pair": [self.pair.k, self.pair.l],
            "index": self.index_type.value,
            "snip": self.snip_direct,
            "snip_direct": self.snip_direct,
            "snip_cases": self.snip_cases,
            "snip_recipe": self.snip_recipe,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SnipCertificate":
        try:
            graph = RootedGraph.from_json(obj["graph"] if "graph" in obj else obj)
            matrix = RationalMatrix.from_json(obj["matrix"] if "matrix" in obj else obj)
            k, l = obj["pair"]
            snip = bool(obj["snip"])
            return cls(graph, matrix, NullityPair(int(k), int(l)), IndexType(obj["index"]),
                       bool(obj.get("snip_direct", snip)), bool(obj.get("snip_cases", snip)),
                       bool(obj.get("snip_recipe", snip)))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed certificate JSON: {exc}") from exc


def certify(A: RationalMatrix, g: RootedGraph, strict: bool = True) -> SnipCertificate:
    """Evaluate ``A`` at ``g.root`` under all three characterisations."""
    if not in_pattern(A, g, closed=not strict):
        raise ShapeMismatch("matrix does not lie in the pattern of the graph")
    i = g.root
    pair = nullity_pair(A, i)
    return SnipCertificate(g, A, pair, pair.index_type, has_isnip_direct(A, g, i),
                           has_isnip_cases(A, g, i), has_isnip_recipe(A, g, i))


def verify_certificate(cert: SnipCertificate) -> bool:
    """Recompute everything in ``cert`` from its graph and matrix."""
    try:
        fresh = certify(cert.matrix, cert.graph)
    except ShapeMismatch:
        return False
    return fresh == cert
