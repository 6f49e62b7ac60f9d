"""Integer witness matrices for the T3-family, 0-based.

``A0`` lives on K4, ``A1`` on K_{2,3}, ``B0`` on T and ``B1``..``B3`` on
T^(1)..T^(3).  In ``B1``..``B3`` the cut-vertices are indices 6, 7, 8
(listed in ``CUT_VERTICES``); every other index is a non-cut vertex.
The graphs of the family are *defined* as the off-diagonal supports of
these matrices.
"""

from __future__ import annotations

A0 = (
    (1, 1, 1, 1),
    (1, 1, 1, 1),
    (1, 1, 1, 1),
    (1, 1, 1, 1),
)

A1 = (
    (0, 0, 1, 1, 1),
    (0, 0, 1, 1, 1),
    (1, 1, 0, 0, 0),
    (1, 1, 0, 0, 0),
    (1, 1, 0, 0, 0),
)

B0 = (
    (2, 1, 1, 0, 1, 1),
    (1, 1, 1, 0, 0, 0),
    (1, 1, 2, 1, 1, 0),
    (0, 0, 1, 1, 1, 0),
    (1, 0, 1, 1, 2, 1),
    (1, 0, 0, 0, 1, 1),
)

B1 = (
    (1, 0, 0, 0, 1, 1, 1),
    (0, 0, 0, 0, 0, 0, 1),
    (0, 0, 1, 1, 1, 0, 1),
    (0, 0, 1, 1, 1, 0, 0),
    (1, 0, 1, 1, 2, 1, 0),
    (1, 0, 0, 0, 1, 1, 0),
    (1, 1, 1, 0, 0, 0, 0),
)

B2 = (
    (1, 0, 0, 0, 1, 1, 1, 0),
    (0, 0, 0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 0, 1, 1),
    (0, 0, 0, 0, 0, 0, 0, 1),
    (1, 0, 0, 0, 1, 1, 0, 1),
    (1, 0, 0, 0, 1, 1, 0, 0),
    (1, 1, 1, 0, 0, 0, 0, 0),
    (0, 0, 1, 1, 1, 0, 0, 0),
)

B3 = (
    (0, 0, 0, 0, 0, 0, 1, 0, 1),
    (0, 0, 0, 0, 0, 0, 1, 0, 0),
    (0, 0, 0, 0, 0, 0, 1, 1, 0),
    (0, 0, 0, 0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 0, 0, 1, 1),
    (0, 0, 0, 0, 0, 0, 0, 0, 1),
    (1, 1, 1, 0, 0, 0, 0, 0, 0),
    (0, 0, 1, 1, 1, 0, 0, 0, 0),
    (1, 0, 0, 0, 1, 1, 0, 0, 0),
)

MATRICES = {"A0": A0, "A1": A1, "B0": B0, "B1": B1, "B2": B2, "B3": B3}

# family name of the support graph of each matrix
SUPPORT_NAME = {"A0": "T3:K4", "A1": "T3:K23", "B0": "T3:T", "B1": "T3:T1",
                "B2": "T3:T2", "B3": "T3:T3"}

CUT_VERTICES = {"A0": (), "A1": (), "B0": (), "B1": (6,), "B2": (6, 7), "B3": (6, 7, 8)}


def support_edges(mat: tuple[tuple[int, ...], ...]) -> list[tuple[int, int]]:
    n = len(mat)
    return [(u, v) for u in range(n) for v in range(u + 1, n) if mat[u][v] != 0]
