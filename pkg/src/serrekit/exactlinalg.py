"""Exact dense linear algebra over the rationals and prime fields.

Matrices are thin wrappers around python-flint matrices (``fmpq_mat`` over
Q, ``nmod_mat`` over F_p).  Row reduction over Q goes through integer
matrices after clearing denominators, which keeps flint on its fast
fraction-free path.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import flint

__all__ = [
    "Field",
    "QQ",
    "Matrix",
    "kernel_basis",
    "kernel_matrix",
    "rank",
    "solve",
    "solve_matrix",
    "column_space",
    "complement_columns",
]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


# entry types the flint constructors take as they are
_FMPQ_OK = frozenset((int, flint.fmpq, flint.fmpz))
_NMOD_OK = frozenset((int, flint.nmod))


class Field:
    """The scalar field: ``Field()`` is Q, ``Field(p)`` is F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            p = int(p)
            if not _is_prime(p):
                raise ValueError(f"field characteristic {p} is not prime")
        self.p = p

    @property
    def kind(self) -> str:
        return "rationals" if self.p is None else "prime"

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    # scalars ---------------------------------------------------------
    def scalar(self, x):
        """Canonical form of ``x`` (int, Fraction, "a/b" string, flint scalar)."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if self.p is None:
                return flint.fmpq(x.numerator, x.denominator)
            return flint.nmod(x.numerator, self.p) / flint.nmod(x.denominator, self.p)
        if self.p is None:
            return flint.fmpq(x)
        if isinstance(x, flint.fmpq):
            return flint.nmod(int(x.p), self.p) / flint.nmod(int(x.q), self.p)
        return flint.nmod(int(x), self.p)

    def format(self, x) -> str:
        if self.p is None:
            x = flint.fmpq(x)
            return str(x.p) if x.q == 1 else f"{x.p}/{x.q}"
        return str(int(x))

    def to_json(self) -> dict:
        if self.p is None:
            return {"kind": "rationals"}
        return {"kind": "prime", "p": self.p}

    @classmethod
    def from_json(cls, d) -> "Field":
        if d is None:
            return cls()
        kind = d.get("kind", "rationals")
        if kind in ("rationals", "QQ", "Q"):
            return cls()
        if kind in ("prime", "prime-field"):
            if "p" not in d:
                raise ValueError("prime field requires 'p'")
            return cls(int(d["p"]))
        raise ValueError(f"unknown field kind {kind!r}")

    # matrices --------------------------------------------------------
    def _raw(self, rows: int, cols: int, entries=None):
        if self.p is None:
            if entries is None:
                return flint.fmpq_mat(rows, cols)
            return flint.fmpq_mat(rows, cols, entries)
        if entries is None:
            return flint.nmod_mat(rows, cols, self.p)
        return flint.nmod_mat(rows, cols, [e if type(e) in _NMOD_OK else self.scalar(e) for e in entries], self.p)

    def matrix(self, rows: int, cols: int, entries: Sequence | None = None) -> "Matrix":
        if entries is not None:
            entries = list(entries)
            if len(entries) != rows * cols:
                raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
            if self.p is None:
                entries = [e if type(e) in _FMPQ_OK else self.scalar(e) for e in entries]
        return Matrix(self, self._raw(rows, cols, entries))

    def from_rows(self, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
        return self.matrix(len(rows), cols, [e for r in rows for e in r])

    def from_columns(self, columns: Sequence[Sequence], rows: int) -> "Matrix":
        columns = [list(c) for c in columns]
        m = self.matrix(len(columns), rows, [e for c in columns for e in c]) if columns else self.zeros(0, rows)
        return m.T

    def zeros(self, rows: int, cols: int) -> "Matrix":
        return Matrix(self, self._raw(rows, cols))

    def identity(self, n: int) -> "Matrix":
        m = self._raw(n, n)
        for i in range(n):
            m[i, i] = 1
        return Matrix(self, m)

    def random_scalar(self, rng, bound: int = 3):
        if self.p is None:
            return flint.fmpq(rng.randint(-bound, bound))
        return flint.nmod(rng.randrange(self.p), self.p)


QQ = Field()


class Matrix:
    """Immutable-by-convention dense matrix over a :class:`Field`."""

    __slots__ = ("field", "m")

    def __init__(self, field: Field, m):
        self.field = field
        self.m = m

    @property
    def rows(self) -> int:
        return self.m.nrows()

    @property
    def cols(self) -> int:
        return self.m.ncols()

    @property
    def shape(self):
        return (self.m.nrows(), self.m.ncols())

    def __getitem__(self, ij):
        return self.m[ij]

    def entries(self) -> list:
        return self.m.entries()

    def tolist(self) -> list[list]:
        r, c = self.shape
        e = self.m.entries()
        return [e[i * c:(i + 1) * c] for i in range(r)]

    def to_json(self) -> list[list[str]]:
        fmt = self.field.format
        return [[fmt(x) for x in row] for row in self.tolist()]

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.to_json()})"

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.m == other.m

    def __hash__(self):
        return hash((self.shape, tuple(self.field.format(x) for x in self.entries())))

    def _wrap(self, m) -> "Matrix":
        return Matrix(self.field, m)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return self._wrap(self.m + other.m)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return self._wrap(self.m - other.m)

    def __neg__(self) -> "Matrix":
        return self._wrap(-self.m)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} * {other.shape}")
            if self.rows == 0 or other.cols == 0 or self.cols == 0:
                return self.field.zeros(self.rows, other.cols)
            return self._wrap(self.m * other.m)
        return self._wrap(self.m * other)

    def __rmul__(self, scalar):
        return self._wrap(self.m * scalar)

    __matmul__ = __mul__

    @property
    def T(self) -> "Matrix":
        return self._wrap(self.m.transpose())

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.m.entries())

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == self.field.identity(self.rows)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Matrix":
        rows, cols = list(rows), list(cols)
        m = self.m
        return self.field.matrix(len(rows), len(cols), [m[i, j] for i in rows for j in cols])

    def column(self, j: int) -> list:
        return [self.m[i, j] for i in range(self.rows)]

    def columns(self) -> list[list]:
        return [list(c) for c in zip(*self.tolist())] if self.rows else [[] for _ in range(self.cols)]

    def hstack(self, *others: "Matrix") -> "Matrix":
        return hstack([self, *others], self.rows, self.field)

    def vstack(self, *others: "Matrix") -> "Matrix":
        return vstack([self, *others], self.cols, self.field)

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        if self.rows == 0:
            return self
        if rank(self) != self.rows:
            raise ZeroDivisionError("matrix is singular")
        return self._wrap(self.m.inv())

    def power(self, n: int) -> "Matrix":
        result = self.field.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result


def hstack(blocks: Sequence[Matrix], rows: int, field: Field) -> Matrix:
    cols = sum(b.cols for b in blocks)
    ents = []
    tl = [b.tolist() for b in blocks]
    for i in range(rows):
        for t in tl:
            ents.extend(t[i])
    return field.matrix(rows, cols, ents)


def vstack(blocks: Sequence[Matrix], cols: int, field: Field) -> Matrix:
    ents = []
    for b in blocks:
        if b.cols != cols:
            raise ValueError("vstack column mismatch")
        ents.extend(b.entries())
    return field.matrix(sum(b.rows for b in blocks), cols, ents)


def block_diag(blocks: Sequence[Matrix], field: Field) -> Matrix:
    r = sum(b.rows for b in blocks)
    c = sum(b.cols for b in blocks)
    out = field._raw(r, c)
    i0 = j0 = 0
    for b in blocks:
        e = b.entries()
        bc = b.cols
        for i in range(b.rows):
            for j in range(bc):
                x = e[i * bc + j]
                if x != 0:
                    out[i0 + i, j0 + j] = x
        i0 += b.rows
        j0 += bc
    return Matrix(field, out)


# -- row reduction ----------------------------------------------------------


def _rref(A: Matrix):
    """Return (pivot columns, rows) where rows[i] is the reduced row i as a list
    scaled so that its pivot entry is 1."""
    r, c = A.shape
    if r == 0 or c == 0:
        return [], []
    if A.field.p is None:
        num, _den = A.m.numer_denom()
        R, _d, rk = num.rref()
        ents = R.entries()
        pivots, out = [], []
        for i in range(rk):
            row = ents[i * c:(i + 1) * c]
            j = next(k for k, x in enumerate(row) if x != 0)
            piv = row[j]
            pivots.append(j)
            out.append([flint.fmpq(x, piv) if x != 0 else flint.fmpq(0) for x in row])
        return pivots, out
    R, rk = A.m.rref()
    ents = R.entries()
    pivots, out = [], []
    for i in range(rk):
        row = ents[i * c:(i + 1) * c]
        j = next(k for k, x in enumerate(row) if x != 0)
        pivots.append(j)
        out.append(row)
    return pivots, out


def rref(A: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    pivots, rows = _rref(A)
    return A.field.matrix(len(rows), A.cols, [x for row in rows for x in row]), pivots


def rank(A: Matrix) -> int:
    if A.rows == 0 or A.cols == 0:
        return 0
    if A.field.p is None:
        return A.m.numer_denom()[0].rank()
    return A.m.rank()


def kernel_matrix(A: Matrix) -> Matrix:
    """Matrix whose columns form a basis of the right null space of ``A``."""
    return kernel_with_free(A)[0]


def kernel_with_free(A: Matrix) -> tuple[Matrix, list[int]]:
    """Null space basis plus the free column index each basis vector owns.

    Basis vector ``k`` is 1 at ``free[k]`` and 0 at every other free index.
    """
    r, c = A.shape
    F = A.field
    if c == 0:
        return F.zeros(0, 0), []
    if r == 0:
        return F.identity(c), list(range(c))
    pivots, rows = _rref(A)
    pivset = set(pivots)
    free = [j for j in range(c) if j not in pivset]
    out = F._raw(c, len(free))
    for k, j in enumerate(free):
        out[j, k] = 1
        for i, pj in enumerate(pivots):
            x = rows[i][j]
            if x != 0:
                out[pj, k] = -x
    return Matrix(F, out), free


def kernel_basis(A: Matrix) -> list[list]:
    """Basis of the right null space as a list of column vectors (lists)."""
    K = kernel_matrix(A)
    return K.columns() if K.cols else []


def solve(A: Matrix, b: Sequence):
    """A particular solution of ``A x = b`` as a list, or ``None`` if inconsistent."""
    b = list(b)
    if len(b) != A.rows:
        raise ValueError(f"dimension mismatch: A has {A.rows} rows, b has {len(b)} entries")
    F = A.field
    if A.cols == 0:
        return [] if all(x == 0 for x in b) else None
    X = solve_matrix(A, F.matrix(len(b), 1, b))
    return None if X is None else X.column(0)


def solve_matrix(A: Matrix, B: Matrix):
    """A particular solution ``X`` of ``A X = B`` or ``None``."""
    if A.rows != B.rows:
        raise ValueError("dimension mismatch in solve")
    F = A.field
    n, k = A.cols, B.cols
    if A.rows == 0:
        return F.zeros(n, k)
    aug = A.hstack(B)
    pivots, rows = _rref(aug)
    if pivots and pivots[-1] >= n:
        return None
    out = F._raw(n, k)
    for i, pj in enumerate(pivots):
        row = rows[i]
        for j in range(k):
            x = row[n + j]
            if x != 0:
                out[pj, j] = x
    return Matrix(F, out)


def column_space(A: Matrix) -> Matrix:
    """The pivot columns of ``A``: a basis of its column space."""
    if A.rows == 0 or A.cols == 0:
        return A.field.zeros(A.rows, 0)
    pivots, _ = _rref(A)
    return A.submatrix(range(A.rows), pivots)


def complement_columns(B: Matrix) -> Matrix:
    """Standard basis vectors completing the columns of ``B`` to a basis."""
    n = B.rows
    F = B.field
    if B.cols == 0:
        return F.identity(n)
    pivots, _ = _rref(B.hstack(F.identity(n)))
    chosen = [j - B.cols for j in pivots if j >= B.cols]
    I = F.identity(n)
    return I.submatrix(range(n), chosen)
