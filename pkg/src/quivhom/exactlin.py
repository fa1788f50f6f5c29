"""Exact linear algebra over the rationals and prime fields.

Everything downstream (Hom spaces, resolutions, rank certificates) reduces to
the three kernels in this module: ``rref``, ``kernel_basis`` and ``solve``.
Scalars are ``fractions.Fraction`` over the rationals and plain ``int``
residues over a prime field.  Elimination uses first-nonzero pivoting, so all
outputs are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DimensionMismatch, QuivhomError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """Ground field: the rationals ('q') or a prime field ('fp')."""

    kind: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind == "q":
            if self.p is not None:
                raise QuivhomError("rationals carry no modulus")
        elif self.kind == "fp":
            if self.p is None or not _is_prime(self.p):
                raise QuivhomError(f"modulus {self.p} is not prime")
        else:
            raise QuivhomError(f"unknown field kind {self.kind!r}")

    # -- scalar arithmetic ------------------------------------------------
    def zero(self):
        return Fraction(0) if self.kind == "q" else 0

    def one(self):
        return Fraction(1) if self.kind == "q" else 1

    def of_int(self, n: int):
        return Fraction(n) if self.kind == "q" else n % self.p

    def add(self, a, b):
        return a + b if self.kind == "q" else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.kind == "q" else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.kind == "q" else (a * b) % self.p

    def neg(self, a):
        return -a if self.kind == "q" else (-a) % self.p

    def inv(self, a):
        if self.kind == "q":
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / Fraction(a)
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # -- text form ---------------------------------------------------------
    def format(self, a) -> str:
        if self.kind == "q":
            a = Fraction(a)
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(a % self.p)

    def parse(self, text: str):
        text = text.strip()
        try:
            if self.kind == "q":
                return Fraction(text)
            if "/" in text:
                num, den = text.split("/")
                return self.div(self.of_int(int(num)), self.of_int(int(den)))
            return self.of_int(int(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise QuivhomError(f"bad scalar {text!r}: {exc}") from exc


QQ = Field("q")


def GF(p: int) -> Field:
    return Field("fp", p)


@dataclass(frozen=True)
class Mat:
    """Immutable dense matrix, entries in row-major order."""

    field: Field
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    # -- constructors -------------------------------------------------------
    @staticmethod
    def from_rows(field: Field, rows) -> "Mat":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
        ent = tuple(field.of_int(x) if isinstance(x, int) else x for r in rows for x in r)
        return Mat(field, nrows, ncols, ent)

    @staticmethod
    def zeros(field: Field, rows: int, cols: int) -> "Mat":
        z = field.zero()
        return Mat(field, rows, cols, (z,) * (rows * cols))

    @staticmethod
    def identity(field: Field, n: int) -> "Mat":
        z, o = field.zero(), field.one()
        ent = [z] * (n * n)
        for i in range(n):
            ent[i * n + i] = o
        return Mat(field, n, n, tuple(ent))

    @staticmethod
    def column(field: Field, values) -> "Mat":
        vals = [field.of_int(v) if isinstance(v, int) else v for v in values]
        return Mat(field, len(vals), 1, tuple(vals))

    # -- access --------------------------------------------------------------
    def at(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def row_list(self):
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def col(self, j: int) -> "Mat":
        return Mat(self.field, self.rows, 1, tuple(self.at(i, j) for i in range(self.rows)))

    def column_vector(self):
        if self.cols != 1:
            raise DimensionMismatch("not a column")
        return list(self.entries)

    # -- arithmetic -----------------------------------------------------------
    def _samefield(self, other: "Mat"):
        if self.field != other.field:
            raise DimensionMismatch("field mismatch")

    def add(self, other: "Mat") -> "Mat":
        self._samefield(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in add")
        f = self.field
        return Mat(f, self.rows, self.cols,
                   tuple(f.add(a, b) for a, b in zip(self.entries, other.entries)))

    def sub(self, other: "Mat") -> "Mat":
        return self.add(other.neg())

    def neg(self) -> "Mat":
        f = self.field
        return Mat(f, self.rows, self.cols, tuple(f.neg(a) for a in self.entries))

    def scale(self, c) -> "Mat":
        f = self.field
        return Mat(f, self.rows, self.cols, tuple(f.mul(c, a) for a in self.entries))

    def mul(self, other: "Mat") -> "Mat":
        self._samefield(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        f = self.field
        n, m, k = self.rows, other.cols, self.cols
        a, b = self.entries, other.entries
        zero = f.zero()
        out = [zero] * (n * m)
        if f.kind == "q":
            for i in range(n):
                arow = a[i * k:(i + 1) * k]
                base = i * m
                for t in range(k):
                    coef = arow[t]
                    if coef == 0:
                        continue
                    brow = b[t * m:(t + 1) * m]
                    for j in range(m):
                        if brow[j] != 0:
                            out[base + j] += coef * brow[j]
        else:
            p = f.p
            for i in range(n):
                arow = a[i * k:(i + 1) * k]
                base = i * m
                for t in range(k):
                    coef = arow[t]
                    if coef == 0:
                        continue
                    brow = b[t * m:(t + 1) * m]
                    for j in range(m):
                        if brow[j]:
                            out[base + j] = (out[base + j] + coef * brow[j]) % p
        return Mat(f, n, m, tuple(out))

    def transpose(self) -> "Mat":
        return Mat(self.field, self.cols, self.rows,
                   tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)))

    def is_zero(self) -> bool:
        z = self.field.zero()
        return all(e == z for e in self.entries)

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        return self == Mat.identity(self.field, self.rows)

    # -- stacking ---------------------------------------------------------------
    @staticmethod
    def vstack(field: Field, mats) -> "Mat":
        mats = list(mats)
        if not mats:
            return Mat.zeros(field, 0, 0)
        cols = mats[0].cols
        ent = []
        rows = 0
        for m in mats:
            if m.cols != cols:
                raise DimensionMismatch("vstack column mismatch")
            ent.extend(m.entries)
            rows += m.rows
        return Mat(field, rows, cols, tuple(ent))

    @staticmethod
    def hstack(field: Field, mats) -> "Mat":
        mats = list(mats)
        if not mats:
            return Mat.zeros(field, 0, 0)
        rows = mats[0].rows
        for m in mats:
            if m.rows != rows:
                raise DimensionMismatch("hstack row mismatch")
        ent = []
        for i in range(rows):
            for m in mats:
                ent.extend(m.entries[i * m.cols:(i + 1) * m.cols])
        return Mat(field, rows, sum(m.cols for m in mats), tuple(ent))

    @staticmethod
    def block_diag(field: Field, mats) -> "Mat":
        mats = list(mats)
        rows = sum(m.rows for m in mats)
        cols = sum(m.cols for m in mats)
        z = field.zero()
        ent = [z] * (rows * cols)
        r0 = c0 = 0
        for m in mats:
            for i in range(m.rows):
                base = (r0 + i) * cols + c0
                ent[base:base + m.cols] = m.entries[i * m.cols:(i + 1) * m.cols]
            r0 += m.rows
            c0 += m.cols
        return Mat(field, rows, cols, tuple(ent))

    @staticmethod
    def kron(a: "Mat", b: "Mat") -> "Mat":
        f = a.field
        rows, cols = a.rows * b.rows, a.cols * b.cols
        ent = [f.zero()] * (rows * cols)
        for i in range(a.rows):
            for j in range(a.cols):
                c = a.at(i, j)
                if c == f.zero():
                    continue
                for k in range(b.rows):
                    for l in range(b.cols):
                        ent[(i * b.rows + k) * cols + (j * b.cols + l)] = f.mul(c, b.at(k, l))
        return Mat(f, rows, cols, tuple(ent))

    def flatten(self):
        return list(self.entries)


def _eliminate(rows, field):
    """In-place Gauss-Jordan on list-of-lists; returns pivot column list."""
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = []
    r = 0
    nrows = len(rows)
    zero = field.zero()
    for c in range(ncols):
        # first nonzero pivot at or below r
        pr = None
        for i in range(r, nrows):
            if rows[i][c] != zero:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.inv(rows[r][c])
        if inv != field.one():
            rows[r] = [field.mul(inv, x) for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i == r:
                continue
            factor = rows[i][c]
            if factor == zero:
                continue
            ri = rows[i]
            if field.kind == "q":
                rows[i] = [x - factor * y for x, y in zip(ri, prow)]
            else:
                p = field.p
                rows[i] = [(x - factor * y) % p for x, y in zip(ri, prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rref(m: Mat):
    """Reduced row-echelon form.  Returns (reduced matrix, rank, pivot cols)."""
    rows = m.row_list()
    pivots = _eliminate(rows, m.field)
    rank = len(pivots)
    # move zero rows to the bottom (elimination already ordered pivot rows)
    ent = tuple(x for row in rows for x in row)
    return Mat(m.field, m.rows, m.cols, ent), rank, tuple(pivots)


def rank(m: Mat) -> int:
    return rref(m)[1]


def kernel_basis(m: Mat):
    """Basis of the right null space as a list of column vectors."""
    r, rk, pivots = rref(m)
    field = m.field
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    basis = []
    for fc in free:
        v = [field.zero()] * m.cols
        v[fc] = field.one()
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(r.at(i, fc))
        basis.append(Mat(field, m.cols, 1, tuple(v)))
    return basis


def solve(a: Mat, b: Mat) -> Optional[Mat]:
    """One exact solution of a x = b (b a column), or None if inconsistent."""
    if b.cols != 1:
        raise DimensionMismatch("rhs must be a column")
    x = solve_matrix(a, b)
    return x


def solve_matrix(a: Mat, b: Mat) -> Optional[Mat]:
    """Solve a X = B columnwise; None if any column is inconsistent."""
    if a.rows != b.rows:
        raise DimensionMismatch("solve: row mismatch")
    field = a.field
    aug = Mat.hstack(field, [a, b])
    rows = aug.row_list()
    pivots = _eliminate(rows, field)
    # any pivot in the b-block means inconsistency
    for c in pivots:
        if c >= a.cols:
            return None
    zero = field.zero()
    out = [[zero] * b.cols for _ in range(a.cols)]
    for i, pc in enumerate(pivots):
        for j in range(b.cols):
            out[pc][j] = rows[i][a.cols + j]
    return Mat.from_rows(field, out) if a.cols else Mat.zeros(field, 0, b.cols)


def inverse(m: Mat) -> Optional[Mat]:
    if m.rows != m.cols:
        return None
    x = solve_matrix(m, Mat.identity(m.field, m.rows))
    if x is None:
        return None
    if not m.mul(x).is_identity():
        return None
    return x


def column_space_contains(a: Mat, b: Mat) -> bool:
    return solve_matrix(a, b) is not None


def row_space_basis(m: Mat):
    """Nonzero rows of the rref, as a matrix (possibly 0 rows)."""
    r, rk, _ = rref(m)
    rows = r.row_list()[:rk]
    if not rows:
        return Mat.zeros(m.field, 0, m.cols)
    return Mat.from_rows(m.field, rows)


def span_dim(field: Field, vectors, length: int) -> int:
    """Rank of the span of flat vectors (each of the given length)."""
    vecs = [list(v) for v in vectors]
    if not vecs:
        return 0
    return rank(Mat.from_rows(field, vecs))


def in_span(field: Field, vectors, target, length: int) -> bool:
    """Is target in the span of vectors?  All given as flat lists."""
    if all(x == field.zero() for x in target):
        return True
    if not vectors:
        return False
    a = Mat.from_rows(field, vectors).transpose()
    return solve(a, Mat.column(field, list(target))) is not None
