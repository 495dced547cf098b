"""Exact sparse linear algebra: kernels, images, quotients, sections, Kronecker.

Matrices are stored row-sparse (one dict per row, zeros omitted).  Over Q the
forward elimination is fraction-free in the Bareiss style after clearing row
denominators, which keeps intermediate entries as minors of the input; over
F_p a plain Gaussian elimination is used.  Pivot rows are chosen by minimal
fill (fewest nonzeros, ties by position), so every reduction is deterministic
and results are bit-reproducible regardless of thread count.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionError, NotSurjectiveError
from .field import Field, Scalar, check_same_field


class Matrix:
    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, nrows: int, ncols: int, rows):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows  # list[dict[int, Scalar]], zeros omitted

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zeros(field: Field, nrows: int, ncols: int) -> "Matrix":
        return Matrix(field, nrows, ncols, [dict() for _ in range(nrows)])

    @staticmethod
    def identity(field: Field, n: int) -> "Matrix":
        one = field.one()
        return Matrix(field, n, n, [{i: one} for i in range(n)])

    @staticmethod
    def from_rows(field: Field, data: Sequence[Sequence]) -> "Matrix":
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        rows = []
        for r in data:
            if len(r) != ncols:
                raise DimensionError("ragged rows")
            rows.append({j: field.from_int(v) if isinstance(v, int) else v
                         for j, v in enumerate(r) if v})
        return Matrix(field, nrows, ncols, rows)

    @staticmethod
    def from_entries(field: Field, nrows: int, ncols: int, entries) -> "Matrix":
        rows = [dict() for _ in range(nrows)]
        for (i, j), v in entries.items():
            if v:
                rows[i][j] = v
        return Matrix(field, nrows, ncols, rows)

    @staticmethod
    def from_columns(field: Field, nrows: int, cols: Sequence[Sequence]) -> "Matrix":
        rows = [dict() for _ in range(nrows)]
        for j, col in enumerate(cols):
            if len(col) != nrows:
                raise DimensionError("column length mismatch")
            for i, v in enumerate(col):
                if v:
                    rows[i][j] = v
        return Matrix(field, nrows, len(cols), rows)

    # -- basic access ------------------------------------------------------

    def entry(self, i: int, j: int) -> Scalar:
        return self.rows[i].get(j, self.field.zero())

    def column(self, j: int) -> tuple:
        z = self.field.zero()
        return tuple(self.rows[i].get(j, z) for i in range(self.nrows))

    def to_rows(self) -> list:
        z = self.field.zero()
        return [[row.get(j, z) for j in range(self.ncols)] for row in self.rows]

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.nrows == other.nrows
                and self.ncols == other.ncols and self.rows == other.rows)

    def __repr__(self):
        return "Matrix(%dx%d over %s, %d nnz)" % (
            self.nrows, self.ncols, self.field.descriptor(), self.nnz())

    def copy(self) -> "Matrix":
        return Matrix(self.field, self.nrows, self.ncols, [dict(r) for r in self.rows])

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_shape(other)
        f = self.field
        rows = []
        for ra, rb in zip(self.rows, other.rows):
            r = dict(ra)
            for j, v in rb.items():
                s = f.add(r.get(j, f.zero()), v)
                if s:
                    r[j] = s
                else:
                    r.pop(j, None)
            rows.append(r)
        return Matrix(f, self.nrows, self.ncols, rows)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(self.field.from_int(-1))

    def __neg__(self) -> "Matrix":
        return self.scale(self.field.from_int(-1))

    def scale(self, c: Scalar) -> "Matrix":
        f = self.field
        if not c:
            return Matrix.zeros(f, self.nrows, self.ncols)
        return Matrix(f, self.nrows, self.ncols,
                      [{j: f.mul(c, v) for j, v in r.items()} for r in self.rows])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        check_same_field(self.field, other.field)
        if self.ncols != other.nrows:
            raise DimensionError("cannot multiply %dx%d by %dx%d"
                                 % (self.nrows, self.ncols, other.nrows, other.ncols))
        f = self.field
        out = []
        for ra in self.rows:
            acc: dict = {}
            for k, a in ra.items():
                for j, b in other.rows[k].items():
                    s = f.add(acc.get(j, f.zero()), f.mul(a, b))
                    if s:
                        acc[j] = s
                    else:
                        acc.pop(j, None)
            out.append(acc)
        return Matrix(f, self.nrows, other.ncols, out)

    def apply(self, vec: Sequence[Scalar]) -> tuple:
        if len(vec) != self.ncols:
            raise DimensionError("vector length %d, expected %d" % (len(vec), self.ncols))
        f = self.field
        out = []
        for row in self.rows:
            s = f.zero()
            for j, a in row.items():
                if vec[j]:
                    s = f.add(s, f.mul(a, vec[j]))
            out.append(s)
        return tuple(out)

    def transpose(self) -> "Matrix":
        rows = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                rows[j][i] = v
        return Matrix(self.field, self.ncols, self.nrows, rows)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product, row-major bases (left factor slowest)."""
        check_same_field(self.field, other.field)
        f = self.field
        p, q = other.nrows, other.ncols
        rows = []
        for ra in self.rows:
            for rb in other.rows:
                r = {}
                for j, a in ra.items():
                    for l, b in rb.items():
                        r[j * q + l] = f.mul(a, b)
                rows.append(r)
        return Matrix(f, self.nrows * p, self.ncols * q, rows)

    def select_columns(self, cols: Sequence[int]) -> "Matrix":
        pos = {c: k for k, c in enumerate(cols)}
        rows = []
        for r in self.rows:
            rows.append({pos[j]: v for j, v in r.items() if j in pos})
        return Matrix(self.field, self.nrows, len(cols), rows)

    def _check_shape(self, other: "Matrix"):
        check_same_field(self.field, other.field)
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise DimensionError("shape mismatch %dx%d vs %dx%d"
                                 % (self.nrows, self.ncols, other.nrows, other.ncols))


def hstack(mats: Sequence[Matrix]) -> Matrix:
    mats = list(mats)
    if not mats:
        raise DimensionError("hstack of nothing")
    f, n = mats[0].field, mats[0].nrows
    rows = [dict() for _ in range(n)]
    off = 0
    for m in mats:
        if m.nrows != n:
            raise DimensionError("hstack row mismatch")
        for i, r in enumerate(m.rows):
            for j, v in r.items():
                rows[i][off + j] = v
        off += m.ncols
    return Matrix(f, n, off, rows)


def vstack(mats: Sequence[Matrix]) -> Matrix:
    mats = list(mats)
    if not mats:
        raise DimensionError("vstack of nothing")
    f, n = mats[0].field, mats[0].ncols
    rows = []
    for m in mats:
        if m.ncols != n:
            raise DimensionError("vstack column mismatch")
        rows.extend(dict(r) for r in m.rows)
    return Matrix(f, len(rows), n, rows)


def block_matrix(field: Field, blocks, row_dims: Sequence[int], col_dims: Sequence[int]) -> Matrix:
    """Assemble from a dict {(bi, bj): Matrix}; missing blocks are zero."""
    row_off = [0]
    for d in row_dims:
        row_off.append(row_off[-1] + d)
    col_off = [0]
    for d in col_dims:
        col_off.append(col_off[-1] + d)
    rows = [dict() for _ in range(row_off[-1])]
    for (bi, bj), m in blocks.items():
        if m.nrows != row_dims[bi] or m.ncols != col_dims[bj]:
            raise DimensionError("block (%d,%d) has shape %dx%d, expected %dx%d"
                                 % (bi, bj, m.nrows, m.ncols, row_dims[bi], col_dims[bj]))
        r0, c0 = row_off[bi], col_off[bj]
        for i, r in enumerate(m.rows):
            for j, v in r.items():
                rows[r0 + i][c0 + j] = v
    return Matrix(field, row_off[-1], col_off[-1], rows)


# -- elimination core --------------------------------------------------------


def _clear_denominators(row: dict) -> dict:
    """Scale a Q-row to integers with gcd 1 (kernel/row space unchanged)."""
    if not row:
        return row
    lcm = 1
    for v in row.values():
        d = v.denominator
        lcm = lcm * d // gcd(lcm, d)
    g = 0
    scaled = {}
    for j, v in row.items():
        n = int(v * lcm)
        scaled[j] = n
        g = gcd(g, n)
    if g > 1:
        scaled = {j: n // g for j, n in scaled.items()}
    return {j: Fraction(n) for j, n in scaled.items()}


def _echelon(field: Field, rows: list, ncols: int):
    """Forward-eliminate in place; returns pivot columns.

    Q path: fraction-free Bareiss update (rows pre-cleared to integers), so
    every intermediate entry is a minor of the cleared input.  F_p path:
    plain Gaussian elimination with normalized pivots.
    """
    rational = field.char == 0
    if rational:
        work = [_clear_denominators(r) for r in rows]
    else:
        work = [dict(r) for r in rows]
    pivcols = []
    pivrows = []
    used = [False] * len(work)
    prev_pivot = field.one()
    for col in range(ncols):
        cand = [i for i in range(len(work)) if not used[i] and col in work[i]]
        if not cand:
            continue
        piv = min(cand, key=lambda i: (len(work[i]), i))
        used[piv] = True
        pivcols.append(col)
        pivrows.append(piv)
        prow = work[piv]
        pval = prow[col]
        for i in range(len(work)):
            if used[i] or col not in work[i]:
                continue
            row = work[i]
            fac = row.pop(col)
            if rational:
                # row := (pval*row - fac*prow) / prev_pivot, division exact
                keys = set(row) | set(prow)
                keys.discard(col)
                for j in keys:
                    v = (pval * row.get(j, 0) - fac * prow.get(j, 0)) / prev_pivot
                    if v:
                        row[j] = v
                    else:
                        row.pop(j, None)
            else:
                q = field.div(fac, pval)
                for j, pv in prow.items():
                    if j == col:
                        continue
                    v = field.sub(row.get(j, 0), field.mul(q, pv))
                    if v:
                        row[j] = v
                    else:
                        row.pop(j, None)
        if rational:
            prev_pivot = pval
    ordered = [work[i] for i in pivrows]
    return pivcols, ordered


def rref(field: Field, rows: list, ncols: int):
    """Reduced row echelon form; returns (pivot columns, reduced rows)."""
    pivcols, ech = _echelon(field, rows, ncols)
    # normalize pivots to 1, then eliminate above
    for k, col in enumerate(pivcols):
        inv = field.inv(ech[k][col])
        ech[k] = {j: field.mul(inv, v) for j, v in ech[k].items()}
    for k in range(len(pivcols) - 1, -1, -1):
        col = pivcols[k]
        prow = ech[k]
        for i in range(k):
            fac = ech[i].get(col)
            if not fac:
                continue
            row = ech[i]
            for j, pv in prow.items():
                v = field.sub(row.get(j, field.zero()), field.mul(fac, pv))
                if v:
                    row[j] = v
                else:
                    row.pop(j, None)
    return pivcols, ech


def rank(m: Matrix) -> int:
    pivcols, _ = _echelon(m.field, m.rows, m.ncols)
    return len(pivcols)


def kernel_basis(m: Matrix) -> list:
    """Canonical kernel basis from the RREF, one vector per free column."""
    f = m.field
    pivcols, red = rref(f, m.rows, m.ncols)
    pivset = dict(zip(pivcols, range(len(pivcols))))
    basis = []
    for free in range(m.ncols):
        if free in pivset:
            continue
        vec = [f.zero()] * m.ncols
        vec[free] = f.one()
        for col, k in pivset.items():
            v = red[k].get(free)
            if v:
                vec[col] = f.neg(v)
        basis.append(tuple(vec))
    return basis


class Subspace:
    """Subspace of F^ambient given by a canonical (column-reduced) basis."""

    __slots__ = ("field", "ambient", "basis")

    def __init__(self, field: Field, ambient: int, basis: Matrix):
        self.field = field
        self.ambient = ambient
        self.basis = basis  # ambient x dim, canonical form

    @staticmethod
    def zero(field: Field, ambient: int) -> "Subspace":
        return Subspace(field, ambient, Matrix.zeros(field, ambient, 0))

    @staticmethod
    def full(field: Field, ambient: int) -> "Subspace":
        return Subspace(field, ambient, Matrix.identity(field, ambient))

    @staticmethod
    def from_columns(field: Field, ambient: int, cols: Iterable[Sequence[Scalar]]) -> "Subspace":
        cols = list(cols)
        for c in cols:
            if len(c) != ambient:
                raise DimensionError("spanning vector has length %d, ambient %d"
                                     % (len(c), ambient))
        rows = [{j: v for j, v in enumerate(c) if v} for c in cols]
        _, red = rref(field, rows, ambient)
        basis = Matrix.from_columns(field, ambient,
                                    [[r.get(j, field.zero()) for j in range(ambient)] for r in red])
        return Subspace(field, ambient, basis)

    @staticmethod
    def from_matrix_columns(m: Matrix) -> "Subspace":
        return Subspace.from_columns(m.field, m.nrows,
                                     [m.column(j) for j in range(m.ncols)])

    @property
    def dim(self) -> int:
        return self.basis.ncols

    def contains(self, vec: Sequence[Scalar]) -> bool:
        if len(vec) != self.ambient:
            raise DimensionError("vector length mismatch")
        aug = hstack([self.basis, Matrix.from_columns(self.field, self.ambient, [list(vec)])])
        return rank(aug) == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        if other.ambient != self.ambient:
            raise DimensionError("ambient mismatch")
        aug = hstack([self.basis, other.basis])
        return rank(aug) == self.dim

    def sum(self, other: "Subspace") -> "Subspace":
        if other.ambient != self.ambient:
            raise DimensionError("ambient mismatch")
        return Subspace.from_matrix_columns(hstack([self.basis, other.basis]))

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient == other.ambient and self.basis == other.basis)

    def __repr__(self):
        return "Subspace(dim %d in F^%d)" % (self.dim, self.ambient)


def kernel(m: Matrix) -> Subspace:
    """Columns spanning {v : m v = 0}; dim = cols - rank."""
    vecs = kernel_basis(m)
    zero = tuple([m.field.zero()] * m.nrows)
    for v in vecs:
        assert m.apply(v) == zero, "kernel vector not annihilated"
    sub = Subspace.from_columns(m.field, m.ncols, vecs)
    assert sub.dim == len(vecs)
    return sub


def image(m: Matrix) -> Subspace:
    """Canonical basis of the column space; dim = rank."""
    sub = Subspace.from_columns(m.field, m.nrows,
                                [m.column(j) for j in range(m.ncols)])
    assert sub.dim <= min(m.nrows, m.ncols)
    return sub


def kernel_and_image(m: Matrix):
    """Both at once, with the rank-nullity identity asserted."""
    ker = kernel(m)
    im = image(m)
    assert ker.dim + im.dim == m.ncols, "rank-nullity violated"
    return ker, im


def solve_matrix(m: Matrix, b: Matrix):
    """Deterministic X with m X = b (free variables 0), or None."""
    check_same_field(m.field, b.field)
    if b.nrows != m.nrows:
        raise DimensionError("rhs has %d rows, expected %d" % (b.nrows, m.nrows))
    f = m.field
    aug_rows = [dict(r) for r in m.rows]
    for i, r in enumerate(b.rows):
        for j, v in r.items():
            aug_rows[i][m.ncols + j] = v
    pivcols, red = rref(f, aug_rows, m.ncols + b.ncols)
    if any(c >= m.ncols for c in pivcols):
        return None  # inconsistent system
    sol = Matrix.zeros(f, m.ncols, b.ncols)
    for k, col in enumerate(pivcols):
        for j, v in red[k].items():
            if j >= m.ncols and v:
                sol.rows[col][j - m.ncols] = v
    return sol


def solve(m: Matrix, rhs: Sequence[Scalar]):
    sol = solve_matrix(m, Matrix.from_columns(m.field, m.nrows, [list(rhs)]))
    return None if sol is None else sol.column(0)


def section_of_surjection(m: Matrix) -> Matrix:
    """Right inverse s with m s = identity; raises if m is not surjective."""
    if rank(m) != m.nrows:
        raise NotSurjectiveError("matrix %dx%d has rank < %d, no section"
                                 % (m.nrows, m.ncols, m.nrows))
    s = solve_matrix(m, Matrix.identity(m.field, m.nrows))
    assert s is not None
    assert m * s == Matrix.identity(m.field, m.nrows)
    return s


class QuotientPresentation:
    """Quotient of F^ambient by a subspace: projection with that exact kernel."""

    __slots__ = ("field", "ambient", "dim", "projection", "section", "sub")

    def __init__(self, field, ambient, dim, projection, section, sub):
        self.field = field
        self.ambient = ambient
        self.dim = dim
        self.projection = projection  # dim x ambient, surjective, kernel = sub
        self.section = section        # ambient x dim, projection*section = id
        self.sub = sub

    def __repr__(self):
        return "Quotient(F^%d -> F^%d)" % (self.ambient, self.dim)


def quotient(ambient_dim: int, sub: Subspace) -> QuotientPresentation:
    """Pointwise quotient: surjective projection whose kernel is exactly sub.

    Uses the complement of the pivot coordinates of the canonical basis, so
    the projection and its section are deterministic.
    """
    if sub.ambient != ambient_dim:
        raise DimensionError("subspace ambient %d does not match %d"
                             % (sub.ambient, ambient_dim))
    f = sub.field
    basis = sub.basis
    pivot_rows = []
    for j in range(basis.ncols):
        col = basis.column(j)
        lead = next(i for i, v in enumerate(col) if v)
        pivot_rows.append(lead)
    comp = [i for i in range(ambient_dim) if i not in set(pivot_rows)]
    dim = len(comp)
    proj = Matrix.zeros(f, dim, ambient_dim)
    for k, c in enumerate(comp):
        proj.rows[k][c] = f.one()
        for j, r in enumerate(pivot_rows):
            v = basis.entry(c, j)
            if v:
                proj.rows[k][r] = f.neg(v)
    sec = Matrix.zeros(f, ambient_dim, dim)
    for k, c in enumerate(comp):
        sec.rows[c][k] = f.one()
    assert (proj * basis).is_zero(), "projection does not kill the subspace"
    assert proj * sec == Matrix.identity(f, dim)
    return QuotientPresentation(f, ambient_dim, dim, proj, sec, sub)
