"""Sparse exact integer matrices and Smith normal form.

Entries are arbitrary-precision Python ints.  The reduction uses a greedy
smallest-magnitude pivot with full row/column elimination and deterministic
index tie-breaking, and tracks the unimodular change-of-basis matrices and
their inverses alongside.
"""

from __future__ import annotations

from dataclasses import dataclass


class IntMatrix:
    """Sparse integer matrix: row dicts plus a column occupancy index."""

    __slots__ = ("nrows", "ncols", "rows", "cols")

    def __init__(self, nrows: int, ncols: int):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: dict[int, dict[int, int]] = {}
        self.cols: dict[int, set[int]] = {}

    @classmethod
    def from_rows(cls, data) -> "IntMatrix":
        data = [list(r) for r in data]
        m = cls(len(data), len(data[0]) if data else 0)
        for i, row in enumerate(data):
            for j, v in enumerate(row):
                m[i, j] = v
        return m

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        m = cls(n, n)
        for i in range(n):
            m[i, i] = 1
        return m

    def copy(self) -> "IntMatrix":
        m = IntMatrix(self.nrows, self.ncols)
        m.rows = {i: dict(r) for i, r in self.rows.items()}
        m.cols = {j: set(s) for j, s in self.cols.items()}
        return m

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.rows.get(i, {}).get(j, 0)

    def __setitem__(self, ij, v: int):
        i, j = ij
        row = self.rows.get(i)
        if v:
            if row is None:
                row = self.rows[i] = {}
            row[j] = v
            self.cols.setdefault(j, set()).add(i)
        elif row and j in row:
            del row[j]
            if not row:
                del self.rows[i]
            self.cols[j].discard(i)
            if not self.cols[j]:
                del self.cols[j]

    def entries(self):
        for i, row in self.rows.items():
            for j, v in row.items():
                yield i, j, v

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def is_zero(self) -> bool:
        return not self.rows

    def column(self, j: int) -> dict[int, int]:
        return {i: self.rows[i][j] for i in self.cols.get(j, ())}

    def row(self, i: int) -> dict[int, int]:
        return dict(self.rows.get(i, {}))

    # -- elementary operations ---------------------------------------------

    def row_add(self, i: int, i2: int, c: int):
        """row i += c * row i2"""
        if not c:
            return
        for j, v in list(self.rows.get(i2, {}).items()):
            self[i, j] = self[i, j] + c * v

    def col_add(self, j: int, j2: int, c: int):
        """col j += c * col j2"""
        if not c:
            return
        for i in list(self.cols.get(j2, ())):
            self[i, j] = self[i, j] + c * self.rows[i][j2]

    def row_swap(self, i: int, i2: int):
        if i == i2:
            return
        cols = set(self.rows.get(i, {})) | set(self.rows.get(i2, {}))
        for j in cols:
            a, b = self[i, j], self[i2, j]
            self[i, j], self[i2, j] = b, a

    def col_swap(self, j: int, j2: int):
        if j == j2:
            return
        rows = set(self.cols.get(j, ())) | set(self.cols.get(j2, ()))
        for i in rows:
            a, b = self[i, j], self[i, j2]
            self[i, j], self[i, j2] = b, a

    def row_negate(self, i: int):
        for j in list(self.rows.get(i, {})):
            self.rows[i][j] = -self.rows[i][j]

    def col_negate(self, j: int):
        for i in self.cols.get(j, ()):
            self.rows[i][j] = -self.rows[i][j]

    def matmul(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = IntMatrix(self.nrows, other.ncols)
        for i, row in self.rows.items():
            acc: dict[int, int] = {}
            for k, v in row.items():
                for j, w in other.rows.get(k, {}).items():
                    acc[j] = acc.get(j, 0) + v * w
            for j, v in acc.items():
                if v:
                    out[i, j] = v
        return out

    def apply(self, vec: dict[int, int]) -> dict[int, int]:
        """Matrix times a sparse column vector: out_i = sum_k M[i,k] vec[k]."""
        acc: dict[int, int] = {}
        for k, v in vec.items():
            if not v:
                continue
            for i in self.cols.get(k, ()):
                acc[i] = acc.get(i, 0) + self.rows[i][k] * v
        return {i: v for i, v in acc.items() if v}

    def to_dense(self):
        return [[self[i, j] for j in range(self.ncols)] for i in range(self.nrows)]

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.rows == other.rows)

    def __repr__(self):
        return f"IntMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


@dataclass
class SmithForm:
    """U @ M @ V = D with D diagonal, divisibility down the diagonal."""

    diagonal: list[int]
    rank: int
    u: IntMatrix
    u_inv: IntMatrix
    v: IntMatrix
    v_inv: IntMatrix
    shape: tuple[int, int]

    def d_matrix(self) -> IntMatrix:
        d = IntMatrix(*self.shape)
        for t, val in enumerate(self.diagonal):
            d[t, t] = val
        return d

    def kernel_columns(self) -> list[dict[int, int]]:
        """Columns of V spanning the integer kernel of M."""
        return [self.v.column(j) for j in range(self.rank, self.shape[1])]

    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d != 0]


def smith_normal_form(M: IntMatrix) -> SmithForm:
    """Smith normal form over the integers with tracked unimodular bases.

    Greedy smallest-magnitude pivoting with deterministic (row, col)
    tie-breaks; the divisibility chain is enforced during reduction by
    folding any offending entry into the pivot row.
    """
    work = M.copy()
    nr, nc = M.nrows, M.ncols
    u, u_inv = IntMatrix.identity(nr), IntMatrix.identity(nr)
    v, v_inv = IntMatrix.identity(nc), IntMatrix.identity(nc)

    def row_add(i, i2, c):
        work.row_add(i, i2, c)
        u.row_add(i, i2, c)
        u_inv.col_add(i2, i, -c)

    def col_add(j, j2, c):
        work.col_add(j, j2, c)
        v.col_add(j, j2, c)
        v_inv.row_add(j2, j, -c)

    def row_swap(i, i2):
        work.row_swap(i, i2)
        u.row_swap(i, i2)
        u_inv.col_swap(i, i2)

    def col_swap(j, j2):
        work.col_swap(j, j2)
        v.col_swap(j, j2)
        v_inv.row_swap(j, j2)

    def row_negate(i):
        work.row_negate(i)
        u.row_negate(i)
        u_inv.col_negate(i)

    def find_pivot(t):
        best = None
        for i, row in work.rows.items():
            if i < t:
                continue
            for j, val in row.items():
                if j < t:
                    continue
                key = (abs(val), i, j)
                if best is None or key < best[0]:
                    best = (key, i, j)
        return None if best is None else (best[1], best[2])

    t = 0
    limit = min(nr, nc)
    while t < limit:
        pos = find_pivot(t)
        if pos is None:
            break
        row_swap(t, pos[0])
        col_swap(t, pos[1])
        while True:
            # clear column t, then row t; remainders re-enter as new pivots
            for i in sorted(i for i in work.cols.get(t, ()) if i != t):
                q = work[i, t] // work[t, t]
                if q:
                    row_add(i, t, -q)
            residues = [i for i in work.cols.get(t, ()) if i != t]
            if residues:
                i = min(residues, key=lambda r: (abs(work[r, t]), r))
                row_swap(t, i)
                continue
            for j in sorted(j for j in work.rows.get(t, {}) if j != t):
                q = work[t, j] // work[t, t]
                if q:
                    col_add(j, t, -q)
            residues = [j for j in work.rows.get(t, {}) if j != t]
            if residues:
                j = min(residues, key=lambda c: (abs(work[t, c]), c))
                col_swap(t, j)
                continue
            break
        pivot = work[t, t]
        offender = None
        for i, row in work.rows.items():
            if i <= t:
                continue
            for j, val in row.items():
                if j > t and val % pivot:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_add(t, offender, 1)
            continue
        if pivot < 0:
            row_negate(t)
        t += 1

    diagonal = [work[i, i] for i in range(limit)]
    rank = sum(1 for d in diagonal if d)
    return SmithForm(diagonal, rank, u, u_inv, v, v_inv, (nr, nc))
