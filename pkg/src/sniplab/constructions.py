"""Explicit witness matrices and the staircase perturbations.

The three perturbation steps move a matrix along the nullity-pair staircase:

* ``sw_step``    (k+1, l+1) -> (k, l)    via ``A + E_jj``
* ``west_step``  (k+1, k+1) -> (k, k+1)  by pushing the border out of Col(C)
* ``south_step`` (k, k+1)   -> (k, k)    via ``C + eps b b^T``

West and south outputs are raw matrices; they may leave S(G) (an edge entry
can cancel), so each step reports closed-pattern membership when a graph is
supplied.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import witnesses
from .errors import (DegenerateKernel, NoSmallEps, NotNeutralSquare, NotUpper,
                     OutOfRange, PairTooSmall, ZeroWeight)
from .ratmat import RationalMatrix, format_rational, kernel_basis
from .rgraph import RootedGraph
from .snipcore import NullityPair, in_pattern, nullity_pair

PAPER_IDS = ("A0", "A1", "B0", "B1", "B2", "B3")
SOUTH_MAX_HALVINGS = 60


def paper_matrix(mid: str) -> tuple[RootedGraph, RationalMatrix]:
    """One of the T3-family witnesses together with its support graph (root 0)."""
    if mid not in witnesses.MATRICES:
        raise OutOfRange(f"unknown witness matrix {mid!r}; expected one of {PAPER_IDS}")
    mat = witnesses.MATRICES[mid]
    return (RootedGraph.from_edges(len(mat), witnesses.support_edges(mat)), RationalMatrix(mat))


def star_clique_sum(clique_blocks: Iterable[Iterable[int]],
                    star_blocks: Iterable[tuple[int, Iterable[int]]], n: int) -> RationalMatrix:
    """Sum of all-ones blocks on the cliques and star adjacency matrices, padded to n x n."""
    a = [[0] * n for _ in range(n)]
    for block in clique_blocks:
        vs = list(block)
        for u in vs:
            for v in vs:
                a[u][v] += 1
    for centre, leaves in star_blocks:
        for leaf in leaves:
            a[centre][leaf] += 1
            a[leaf][centre] += 1
    return RationalMatrix(a, n, n)


@dataclass(frozen=True)
class PerturbStep:
    kind: str  # "SW" | "West" | "South"
    parameter: object  # j for SW, eps for West/South
    matrix: RationalMatrix
    pair: NullityPair
    in_strict_pattern: bool | None = None
    in_closed_pattern: bool | None = None

    def label(self) -> str:
        p = self.parameter
        return f"{self.kind}({format_rational(p) if isinstance(p, Fraction) else p})"

    def to_json(self) -> dict:
        p = self.parameter
        return {
            "step": self.kind,
            "parameter": format_rational(p) if isinstance(p, Fraction) else p,
            "matrix": self.matrix.to_json(),
            "pair": [self.pair.k, self.pair.l],
            "in_strict_pattern": self.in_strict_pattern,
            "in_closed_pattern": self.in_closed_pattern,
        }


def _membership(M: RationalMatrix, g: RootedGraph | None) -> tuple[bool | None, bool | None]:
    if g is None:
        return None, None
    return in_pattern(M, g), in_pattern(M, g, closed=True)


def _border(A: RationalMatrix, i: int) -> list[Fraction]:
    return [A[r, i] for r in range(A.rows) if r != i]


def _rebuild(a_ii: Fraction, i: int, border: Sequence[Fraction], C: RationalMatrix) -> RationalMatrix:
    """Reassemble the symmetric matrix with diagonal ``a_ii`` at ``i``, border and ``C = M(i)``."""
    n = C.rows + 1
    others = [r for r in range(n) if r != i]
    out = [[Fraction(0)] * n for _ in range(n)]
    out[i][i] = Fraction(a_ii)
    for p, r in enumerate(others):
        out[r][i] = out[i][r] = Fraction(border[p])
        for q, c in enumerate(others):
            out[r][c] = C[p, q]
    return RationalMatrix(out, n, n)


def sw_step(A: RationalMatrix, i: int, g: RootedGraph | None = None) -> PerturbStep:
    """(k+1, l+1) -> (k, l) by adding 1 at a diagonal position ``j != i``.

    ``v`` is a kernel vector with ``v_i = 0``; ``j`` is its first nonzero
    coordinate.
    """
    start = nullity_pair(A, i)
    if start.k < 1 or start.l < 1:
        raise PairTooSmall(f"pair {start} is not of the form (k+1, l+1)")
    K = kernel_basis(A)
    row_i = RationalMatrix([K.row(i)], 1, K.cols)
    coeffs = kernel_basis(row_i)
    if coeffs.cols == 0:
        raise AssertionError("no kernel vector vanishing at the root")
    c = coeffs.col(0)
    v = K.apply(c)
    j = next(idx for idx, x in enumerate(v) if x != 0)
    out = A.add_to_diagonal(j, 1)
    pair = nullity_pair(out, i)
    if pair != NullityPair(start.k - 1, start.l - 1):
        raise AssertionError(f"SW step produced {pair} from {start}")
    return PerturbStep("SW", j, out, pair, *_membership(out, g))


def west_step(A: RationalMatrix, i: int, eps: object = 1, g: RootedGraph | None = None) -> PerturbStep:
    """(k+1, k+1) -> (k, k+1) by replacing the border ``b`` with ``b + eps v``,
    ``v`` the first kernel basis vector of ``C = A(i)``."""
    eps = Fraction(eps)
    if eps == 0:
        raise ValueError("eps must be nonzero")
    start = nullity_pair(A, i)
    if start.k != start.l or start.k < 1:
        raise NotNeutralSquare(f"pair {start} is not of the form (k+1, k+1)")
    C = A.delete(i)
    K = kernel_basis(C)
    if K.cols == 0:
        raise DegenerateKernel("A(i) is invertible")
    v = K.col(0)
    border = [b + eps * x for b, x in zip(_border(A, i), v)]
    out = _rebuild(A[i, i], i, border, C)
    pair = nullity_pair(out, i)
    if pair != NullityPair(start.k - 1, start.k):
        raise AssertionError(f"West step produced {pair} from {start}")
    return PerturbStep("West", eps, out, pair, *_membership(out, g))


def south_step(A: RationalMatrix, i: int, g: RootedGraph | None = None,
               max_halvings: int = SOUTH_MAX_HALVINGS) -> PerturbStep:
    """(k, k+1) -> (k, k) by replacing ``C`` with ``C + eps b b^T``.

    Tries ``eps = 1, 1/2, 1/4, ...`` and returns the first success.
    """
    start = nullity_pair(A, i)
    if start.l != start.k + 1:
        raise NotUpper(f"pair {start} is not of the form (k, k+1)")
    b = _border(A, i)
    C = A.delete(i)
    m = C.rows
    bbT = RationalMatrix([[b[p] * b[q] for q in range(m)] for p in range(m)], m, m)
    target = NullityPair(start.k, start.k)
    eps = Fraction(1)
    for _ in range(max_halvings + 1):
        out = _rebuild(A[i, i], i, b, C + bbT.scale(eps))
        if nullity_pair(out, i) == target:
            return PerturbStep("South", eps, out, target, *_membership(out, g))
        eps /= 2
    raise NoSmallEps(f"no eps >= 2^-{max_halvings} reached {target}")


def append_leaf_matrix(B: RationalMatrix, j: int, a: object = 0, k: object = 1) -> RationalMatrix:
    """``[[a, k e_j^T], [k e_j, B]]``: a new leaf at index 0 attached to ``j``
    (which becomes index ``j + 1``)."""
    k = Fraction(k)
    if k == 0:
        raise ZeroWeight("leaf weight must be nonzero")
    n = B.rows + 1
    out = [[Fraction(0)] * n for _ in range(n)]
    out[0][0] = Fraction(a)
    out[0][j + 1] = out[j + 1][0] = k
    for r in range(B.rows):
        for c in range(B.cols):
            out[r + 1][c + 1] = B[r, c]
    return RationalMatrix(out, n, n)


def prepend_leaf_graph(g: RootedGraph, j: int | None = None) -> RootedGraph:
    """Graph matching :func:`append_leaf_matrix`: new vertex 0 joined to ``j + 1``,
    rooted at the new vertex.  ``j`` defaults to the root of ``g``."""
    j = g.root if j is None else j
    edges = [(u + 1, v + 1) for u, v in g.edges] + [(0, j + 1)]
    return RootedGraph.from_edges(g.n + 1, edges, 0)


def staircase(A: RationalMatrix, i: int, g: RootedGraph | None = None) -> list[PerturbStep]:
    """Walk down the staircase from the pair of ``A`` to (0, 0).

    Off-diagonal pairs below the line are first mirrored down with an SW
    step, neutral pairs go west, upper pairs go south.  The walk is on raw
    matrices; pattern membership is reported per step.
    """
    steps: list[PerturbStep] = []
    M = A
    while True:
        pair = nullity_pair(M, i)
        if pair.k == 0 and pair.l == 0:
            return steps
        if pair.k >= 1 and pair.l >= 1 and pair.k != pair.l:
            step = sw_step(M, i, g)
        elif pair.k == pair.l:
            step = west_step(M, i, 1, g)
        elif pair.l == pair.k + 1:
            step = south_step(M, i, g)
        else:  # (1, 0): a downer root with one-dimensional kernel
            step = _downer_exit(M, i, g)
        steps.append(step)
        M = step.matrix


def _downer_exit(A: RationalMatrix, i: int, g: RootedGraph | None) -> PerturbStep:
    """(1, 0) -> (0, 0) by nudging the root's diagonal entry."""
    out = A.add_to_diagonal(i, 1)
    pair = nullity_pair(out, i)
    if pair != NullityPair(0, 0):
        raise AssertionError(f"diagonal nudge produced {pair}")
    return PerturbStep("Diag", i, out, pair, *_membership(out, g))
