"""Exact dense linear algebra over the rationals.

Entries are :class:`fractions.Fraction`; ranks are computed with
fraction-free (Bareiss) elimination on integer-scaled rows, and kernels and
linear solves go through a reduced row echelon form over ``Fraction``.
All index sets are 0-based.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import ParseError, ShapeMismatch, SingularBlock

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(value: object) -> Fraction:
    """Parse ``"p"``, ``"p/q"``, an int or a Fraction into canonical form."""
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if not isinstance(value, str):
        raise ParseError(f"not a rational: {value!r}")
    m = _RATIONAL_RE.match(value)
    if m is None:
        raise ParseError(f"not a rational: {value!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator in {value!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class RationalMatrix:
    """Immutable dense matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "cols", "_data", "_int_rows")

    def __init__(self, data: Iterable[Iterable[object]], rows: int | None = None,
                 cols: int | None = None):
        body = tuple(tuple(Fraction(x) for x in row) for row in data)
        if rows is None:
            rows = len(body)
        if cols is None:
            cols = len(body[0]) if body else 0
        if len(body) != rows or any(len(r) != cols for r in body):
            raise ShapeMismatch(f"ragged or mis-sized data for {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self._data = body
        self._int_rows: list[list[int]] | None = None

    # construction -------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "RationalMatrix":
        cols = rows if cols is None else cols
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def ones(cls, rows: int, cols: int | None = None) -> "RationalMatrix":
        cols = rows if cols is None else cols
        return cls([[1] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def diag(cls, values: Sequence[object]) -> "RationalMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def column(cls, values: Sequence[object]) -> "RationalMatrix":
        return cls([[v] for v in values], len(values), 1)

    # access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        d = self._data
        return all(d[i][j] == d[j][i] for i in range(self.rows) for j in range(i))

    # algebra ------------------------------------------------------------

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self._data), self.cols, self.rows) if self.rows else \
            RationalMatrix.zeros(self.cols, 0)

    T = property(transpose)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same_shape(other)
        return RationalMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            self.rows, self.cols)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same_shape(other)
        return RationalMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            self.rows, self.cols)

    def __neg__(self) -> "RationalMatrix":
        return self.scale(-1)

    def scale(self, c: object) -> "RationalMatrix":
        c = Fraction(c)
        return RationalMatrix([[c * a for a in r] for r in self._data], self.rows, self.cols)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.cols
        ot = [other.col(j) for j in range(ocols)]
        out = [[sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in ot]
               for r in self._data]
        return RationalMatrix(out, self.rows, ocols)

    def apply(self, vec: Sequence[object]) -> tuple[Fraction, ...]:
        if len(vec) != self.cols:
            raise ShapeMismatch(f"vector of length {len(vec)} for {self.shape} matrix")
        v = [Fraction(x) for x in vec]
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), Fraction(0))
                     for r in self._data)

    def _check_same_shape(self, other: "RationalMatrix") -> None:
        if self.shape != other.shape:
            raise ShapeMismatch(f"shape {self.shape} vs {other.shape}")

    # submatrices --------------------------------------------------------

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RationalMatrix":
        """``M[rows, cols]`` with the given index order."""
        d = self._data
        return RationalMatrix([[d[i][j] for j in cols] for i in rows], len(rows), len(cols))

    def principal(self, alpha: Iterable[int]) -> "RationalMatrix":
        """``M[alpha]``; indices are sorted."""
        idx = sorted(set(alpha))
        return self.submatrix(idx, idx)

    def delete(self, i: int) -> "RationalMatrix":
        """``M(i)``: remove row and column ``i``."""
        keep = [k for k in range(self.rows) if k != i]
        return self.submatrix(keep, [k for k in range(self.cols) if k != i])

    def delete_indices(self, alpha: Iterable[int]) -> "RationalMatrix":
        """``M(alpha)``: remove the rows and columns in ``alpha``."""
        drop = set(alpha)
        keep = [k for k in range(self.rows) if k not in drop]
        return self.submatrix(keep, keep)

    def delete_row(self, i: int) -> "RationalMatrix":
        """``M(i,:]``: remove row ``i`` only."""
        return self.submatrix([k for k in range(self.rows) if k != i], range(self.cols))

    def with_entry(self, i: int, j: int, value: object, symmetric: bool = True) -> "RationalMatrix":
        data = self.tolist()
        data[i][j] = Fraction(value)
        if symmetric:
            data[j][i] = Fraction(value)
        return RationalMatrix(data, self.rows, self.cols)

    def add_to_diagonal(self, i: int, t: object) -> "RationalMatrix":
        """``M + t E_{i,i}``."""
        return self.with_entry(i, i, self._data[i][i] + Fraction(t))

    # integer view -------------------------------------------------------

    def integer_rows(self) -> list[list[int]]:
        """Rows scaled by the lcm of their denominators (row space unchanged)."""
        if self._int_rows is None:
            out = []
            for r in self._data:
                den = 1
                for x in r:
                    if x.denominator != 1:
                        den = lcm(den, x.denominator)
                out.append([x.numerator * (den // x.denominator) for x in r])
            self._int_rows = out
        return self._int_rows

    def clear_denominators(self) -> "RationalMatrix":
        den = 1
        for r in self._data:
            for x in r:
                den = lcm(den, x.denominator)
        return self.scale(den)

    # dunder -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self._data)
        return f"RationalMatrix({self.rows}x{self.cols}: [{body}])"

    # json ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[format_rational(x) for x in r] for r in self._data],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RationalMatrix":
        try:
            rows = int(obj["rows"])
            cols = int(obj["cols"])
            entries = obj["entries"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed matrix JSON: {exc}") from exc
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ParseError(f"entries do not match declared shape {rows}x{cols}")
        return cls([[parse_rational(x) for x in r] for r in entries], rows, cols)


# elimination kernels -------------------------------------------------------


def _bareiss_rank(m: list[list[int]]) -> int:
    """Rank of an integer matrix; destroys ``m``.

    Fraction-free elimination with full pivoting on the smallest nonzero
    magnitude.
    """
    nrows = len(m)
    if nrows == 0:
        return 0
    ncols = len(m[0])
    prev = 1
    r = 0
    while r < nrows and r < ncols:
        best = None
        best_size = None
        for i in range(r, nrows):
            row = m[i]
            for j in range(r, ncols):
                x = row[j]
                if x:
                    s = x if x > 0 else -x
                    if best_size is None or s < best_size:
                        best, best_size = (i, j), s
                        if s == 1:
                            break
            if best_size == 1:
                break
        if best is None:
            break
        pi, pj = best
        if pi != r:
            m[pi], m[r] = m[r], m[pi]
        if pj != r:
            for row in m:
                row[pj], row[r] = row[r], row[pj]
        piv_row = m[r]
        p = piv_row[r]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[r]
            if f:
                for j in range(r + 1, ncols):
                    row[j] = (row[j] * p - f * piv_row[j]) // prev
            else:
                for j in range(r + 1, ncols):
                    row[j] = (row[j] * p) // prev
            row[r] = 0
        prev = p
        r += 1
    return r


def rank_of_int_rows(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix given as rows; the input is not modified."""
    return _bareiss_rank([list(r) for r in rows])


def rank(M: RationalMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    return _bareiss_rank([list(r) for r in M.integer_rows()])


def nullity(M: RationalMatrix) -> int:
    return M.cols - rank(M)


def rref(M: RationalMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Fraction and the pivot columns."""
    a = [[Fraction(x) for x in r] for r in M.integer_rows()]
    nrows, ncols = M.rows, M.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if a[i][c]), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def _primitive(vec: list[Fraction]) -> list[Fraction]:
    """Scale to a primitive integer vector whose first nonzero entry is positive."""
    den = 1
    for x in vec:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return vec
    lead = next(x for x in ints if x)
    if lead < 0:
        g = -g
    return [Fraction(x // g) for x in ints]


def kernel_basis(M: RationalMatrix) -> RationalMatrix:
    """Columns form a basis of the right kernel of ``M``.

    Each column is a primitive integer vector with positive leading entry,
    one per free column of the RREF, in increasing free-column order.
    """
    n = M.cols
    if M.rows == 0:
        return RationalMatrix.identity(n)
    a, pivots = rref(M)
    free = [c for c in range(n) if c not in set(pivots)]
    vecs = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            v[pc] = -a[row_idx][f]
        vecs.append(_primitive(v))
    if not vecs:
        return RationalMatrix.zeros(n, 0)
    return RationalMatrix([[v[i] for v in vecs] for i in range(n)], n, len(vecs))


def in_column_space(M: RationalMatrix, b: Sequence[object]) -> tuple[Fraction, ...] | None:
    """A solution ``x`` of ``M x = b`` (free variables set to 0), or ``None``."""
    if len(b) != M.rows:
        raise ShapeMismatch(f"right-hand side of length {len(b)} for {M.rows} rows")
    if M.cols == 0:
        return () if all(Fraction(x) == 0 for x in b) else None
    a = [list(r) + [Fraction(x)] for r, x in zip(M.tolist(), b)]
    nrows, ncols = M.rows, M.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols + 1):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if a[i][c]), None)
        if pr is None:
            continue
        if c == ncols:
            return None
        a[r], a[pr] = a[pr], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    x = [Fraction(0)] * ncols
    for row_idx, pc in enumerate(pivots):
        x[pc] = a[row_idx][ncols]
    return tuple(x)


def solve(M: RationalMatrix, B: RationalMatrix) -> RationalMatrix:
    """``X`` with ``M X = B`` for invertible square ``M``."""
    if not M.is_square() or M.rows != B.rows:
        raise ShapeMismatch(f"cannot solve {M.shape} against {B.shape}")
    n = M.rows
    a = [list(r) + list(s) for r, s in zip(M.tolist(), B.tolist())]
    for c in range(n):
        pr = next((i for i in range(c, n) if a[i][c]), None)
        if pr is None:
            raise SingularBlock("matrix is singular")
        a[c], a[pr] = a[pr], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return RationalMatrix([r[n:] for r in a], n, B.cols)


def inverse(M: RationalMatrix) -> RationalMatrix:
    return solve(M, RationalMatrix.identity(M.rows))


def schur_complement(A: RationalMatrix, alpha: Iterable[int]) -> RationalMatrix:
    """``A / A[alpha] = C - B A[alpha]^{-1} B^T``.

    Rows and columns of the result are the indices outside ``alpha`` in
    increasing order.
    """
    if not A.is_square():
        raise ShapeMismatch(f"Schur complement of non-square {A.shape} matrix")
    a = sorted(set(alpha))
    if any(k < 0 or k >= A.rows for k in a):
        raise ShapeMismatch(f"index set {a} out of range for n={A.rows}")
    rest = [k for k in range(A.rows) if k not in set(a)]
    Q = A.submatrix(a, a)
    if rank(Q) != len(a):
        raise SingularBlock(f"A[{a}] is singular")
    C = A.submatrix(rest, rest)
    if not a:
        return C
    B = A.submatrix(rest, a)
    Bt = A.submatrix(a, rest)
    return C - B @ solve(Q, Bt)


def schur_index(n: int, alpha: Iterable[int], i: int) -> int:
    """Position of original index ``i`` (not in ``alpha``) inside ``A / A[alpha]``."""
    drop = set(alpha)
    if i in drop:
        raise ValueError(f"index {i} lies in alpha")
    return sum(1 for k in range(i) if k not in drop)
