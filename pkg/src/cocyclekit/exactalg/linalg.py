"""Sparse exact linear algebra.

Rows are dictionaries ``{column: scalar}`` holding only nonzero entries.
Elimination is Gauss-Jordan over the field with the lowest pivot column
first, so reduced row echelon forms are canonical and every result is
deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import ValidationError

ZERO = Fraction(0)


class Vec:
    """Immutable dense coordinate vector with vector-space operators."""

    __slots__ = ("c",)

    def __init__(self, coords: Iterable):
        self.c = tuple(coords)

    @staticmethod
    def zero(n: int) -> "Vec":
        return Vec((ZERO,) * n)

    @staticmethod
    def unit(n: int, i: int) -> "Vec":
        return Vec(Fraction(int(k == i)) for k in range(n))

    def __len__(self):
        return len(self.c)

    def __iter__(self):
        return iter(self.c)

    def __getitem__(self, i):
        return self.c[i]

    def __add__(self, other: "Vec") -> "Vec":
        return Vec(a + b for a, b in zip(self.c, other.c))

    def __sub__(self, other: "Vec") -> "Vec":
        return Vec(a - b for a, b in zip(self.c, other.c))

    def __neg__(self) -> "Vec":
        return Vec(-a for a in self.c)

    def __mul__(self, s) -> "Vec":
        if isinstance(s, Vec):
            return NotImplemented
        return Vec(a * s for a in self.c)

    __rmul__ = __mul__

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, Vec):
            return self.c == other.c
        if isinstance(other, (tuple, list)):
            return self.c == tuple(other)
        if other == 0:
            return not self
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return "Vec(" + ", ".join(str(a) for a in self.c) + ")"

    def dot(self, other) -> object:
        return sum((a * b for a, b in zip(self.c, other)), ZERO)

    def sparse(self) -> dict:
        return {i: a for i, a in enumerate(self.c) if a}


def exact(a):
    if isinstance(a, bool) or isinstance(a, float):
        raise ValidationError(f"inexact scalar {a!r}")
    if isinstance(a, int):
        return Fraction(a)
    return a


def sparse_of(v) -> dict:
    if isinstance(v, dict):
        return {k: exact(a) for k, a in v.items() if a}
    return {i: exact(a) for i, a in enumerate(v) if a}


def dense_of(v: dict, n: int) -> list:
    out = [ZERO] * n
    for i, a in v.items():
        out[i] = a
    return out


def axpy(target: dict, scale, source: dict) -> None:
    """target += scale * source, in place, dropping cancellations."""
    for k, b in source.items():
        val = target.get(k, ZERO) + scale * b
        if val:
            target[k] = val
        else:
            target.pop(k, None)


class SparseMatrix:
    def __init__(self, nrows: int, ncols: int, rows: dict[int, dict] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: dict[int, dict] = {}
        for i, row in (rows or {}).items():
            row = {j: exact(a) for j, a in row.items() if a}
            if row:
                self.rows[i] = row

    @classmethod
    def from_triplets(cls, nrows: int, ncols: int, triplets: Iterable[tuple]) -> "SparseMatrix":
        rows: dict[int, dict] = {}
        for i, j, a in triplets:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise ValidationError(f"triplet index ({i},{j}) out of range for {nrows}x{ncols}")
            if j in rows.setdefault(i, {}):
                raise ValidationError(f"duplicate triplet at ({i},{j})")
            rows[i][j] = a
        return cls(nrows, ncols, rows)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence]) -> "SparseMatrix":
        nrows = len(dense)
        ncols = len(dense[0]) if nrows else 0
        return cls(nrows, ncols, {i: sparse_of(r) for i, r in enumerate(dense)})

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int) -> "SparseMatrix":
        rows: dict[int, dict] = {}
        for j, col in enumerate(cols):
            for i, a in sparse_of(col).items():
                rows.setdefault(i, {})[j] = a
        return cls(nrows, len(cols), rows)

    def to_dense(self) -> list[list]:
        return [dense_of(self.rows.get(i, {}), self.ncols) for i in range(self.nrows)]

    def transpose(self) -> "SparseMatrix":
        rows: dict[int, dict] = {}
        for i, row in self.rows.items():
            for j, a in row.items():
                rows.setdefault(j, {})[i] = a
        return SparseMatrix(self.ncols, self.nrows, rows)

    def apply(self, v) -> list:
        """Matrix times column vector (dense in, dense out)."""
        if len(v) != self.ncols:
            raise ValidationError(f"vector length {len(v)} != {self.ncols} columns")
        out = [ZERO] * self.nrows
        for i, row in self.rows.items():
            out[i] = sum((a * v[j] for j, a in row.items()), ZERO)
        return out

    def left_apply(self, y) -> list:
        """Row vector times matrix."""
        if len(y) != self.nrows:
            raise ValidationError(f"vector length {len(y)} != {self.nrows} rows")
        out = [ZERO] * self.ncols
        for i, row in self.rows.items():
            if y[i]:
                for j, a in row.items():
                    out[j] += y[i] * a
        return out

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValidationError("dimension mismatch in matmul")
        rows: dict[int, dict] = {}
        for i, row in self.rows.items():
            acc: dict = {}
            for k, a in row.items():
                orow = other.rows.get(k)
                if orow:
                    axpy(acc, a, orow)
            if acc:
                rows[i] = acc
        return SparseMatrix(self.nrows, other.ncols, rows)

    def is_zero(self) -> bool:
        return not self.rows

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())


class Echelon:
    """Incrementally maintained reduced row echelon form.

    With ``track=True`` every stored row remembers which combination of the
    inserted rows produced it; this is what yields left-null certificates.
    ``pivot_limit`` restricts pivots to columns below the limit, leaving the
    remaining columns (e.g. a right-hand side) as passengers.
    """

    def __init__(self, track: bool = False, pivot_limit: int | None = None):
        self.track = track
        self.pivot_limit = pivot_limit
        self.pivots: dict[int, dict] = {}
        self.combos: dict[int, dict] = {}
        self.count = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v: dict, combo: dict | None = None) -> tuple[dict, dict | None]:
        v = dict(v)
        combo = dict(combo) if combo is not None else None
        for c in sorted(k for k in v if k in self.pivots):
            a = v.get(c)
            if not a:
                continue
            axpy(v, -a, self.pivots[c])
            if combo is not None:
                axpy(combo, -a, self.combos[c])
        return v, combo

    def add(self, v, label=None) -> tuple[bool, dict, dict | None]:
        """Insert a row.  Returns (new_pivot, residual, residual_combo)."""
        label = self.count if label is None else label
        self.count += 1
        combo = {label: Fraction(1)} if self.track else None
        res, combo = self.reduce(sparse_of(v), combo)
        limit = self.pivot_limit
        cands = [k for k in res if limit is None or k < limit]
        if not cands:
            return False, res, combo
        c = min(cands)
        inv = 1 / res[c]
        row = {k: a * inv for k, a in res.items()}
        if combo is not None:
            combo = {k: a * inv for k, a in combo.items()}
        for pc, prow in self.pivots.items():
            a = prow.get(c)
            if a:
                axpy(prow, -a, row)
                if combo is not None:
                    axpy(self.combos[pc], -a, combo)
        self.pivots[c] = row
        if combo is not None:
            self.combos[c] = combo
        return True, row, combo

    def contains(self, v) -> bool:
        res, _ = self.reduce(sparse_of(v))
        return not res

    def coordinates(self, v) -> dict | None:
        """Coefficients expressing v in the stored rows (keyed by pivot column)."""
        v = sparse_of(v)
        res, _ = self.reduce(v)
        if res:
            return None
        return {c: v[c] for c in self.pivots if c in v}

    def rows(self) -> list[tuple[int, dict]]:
        return sorted(self.pivots.items())


def rref(A: SparseMatrix, track: bool = False, pivot_limit: int | None = None) -> tuple[Echelon, list]:
    """Row-reduce A.  Returns the echelon and the residual combos of dependent rows."""
    ech = Echelon(track=track, pivot_limit=pivot_limit)
    dead = []
    for i in range(A.nrows):
        row = A.rows.get(i)
        if row is None:
            if track:
                dead.append(({}, {i: Fraction(1)}))
            ech.count += 1
            continue
        new, res, combo = ech.add(row, label=i)
        if not new and track:
            dead.append((res, combo))
    return ech, dead


def rank(A: SparseMatrix) -> int:
    return rref(A)[0].rank


def kernel_basis(A: SparseMatrix) -> list[list]:
    ech, _ = rref(A)
    free = [j for j in range(A.ncols) if j not in ech.pivots]
    basis = []
    for f in free:
        v = [ZERO] * A.ncols
        v[f] = Fraction(1)
        for c, row in ech.pivots.items():
            a = row.get(f)
            if a:
                v[c] = -a
        basis.append(v)
    return basis


def image_basis(A: SparseMatrix) -> list[list]:
    """Canonical (reduced echelon) basis of the column space."""
    ech, _ = rref(A.transpose())
    return [dense_of(row, A.nrows) for _, row in ech.rows()]


def left_kernel_basis(A: SparseMatrix) -> list[list]:
    return kernel_basis(A.transpose())


@dataclass
class SolveResult:
    """Outcome of ``solve``: a witness x with Ax = b, or a certificate y with yA = 0, yb != 0."""

    solution: list | None = None
    certificate: list | None = None
    info: dict = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.solution is not None

    def __bool__(self):
        return self.feasible


def solve(A: SparseMatrix, b: Sequence) -> SolveResult:
    if len(b) != A.nrows:
        raise ValidationError(f"rhs length {len(b)} != {A.nrows} rows")
    rhs = A.ncols
    ech = Echelon(track=True, pivot_limit=rhs)
    for i in range(A.nrows):
        row = dict(A.rows.get(i, {}))
        if b[i]:
            row[rhs] = b[i]
        new, res, combo = ech.add(row, label=i)
        if not new and res:
            y = dense_of(combo, A.nrows)
            return SolveResult(certificate=y)
    x = [ZERO] * A.ncols
    for c, row in ech.pivots.items():
        x[c] = row.get(rhs, ZERO)
    return SolveResult(solution=x)


def verify_certificate(A: SparseMatrix, b: Sequence, y: Sequence) -> bool:
    yA = A.left_apply(y)
    yb = sum((yi * bi for yi, bi in zip(y, b)), ZERO)
    return not any(yA) and bool(yb)


def verify_solution(A: SparseMatrix, b: Sequence, x: Sequence) -> bool:
    return list(A.apply(x)) == [Fraction(0) + bi for bi in b]


class Subspace:
    """Span of vectors in a fixed ambient dimension with membership and quotient helpers."""

    def __init__(self, dim: int, vectors: Iterable = ()):
        self.dim = dim
        self.ech = Echelon()
        self.generators: list[list] = []
        for v in vectors:
            self.add(v)

    def add(self, v) -> bool:
        new, _, _ = self.ech.add(v)
        if new:
            self.generators.append(list(v))
        return new

    @property
    def rank(self) -> int:
        return self.ech.rank

    def contains(self, v) -> bool:
        return self.ech.contains(v)

    def reduce(self, v) -> dict:
        return self.ech.reduce(sparse_of(v))[0]

    def basis(self) -> list[list]:
        return [dense_of(row, self.dim) for _, row in self.ech.rows()]

    def complement_indices(self) -> list[int]:
        return [j for j in range(self.dim) if j not in self.ech.pivots]

    def quotient_coords(self, v) -> list:
        """Coordinates of the class of v in the standard complement basis."""
        res = self.reduce(v)
        return [res.get(j, ZERO) for j in self.complement_indices()]

    def equals(self, other: "Subspace") -> bool:
        return self.rank == other.rank and all(other.contains(v) for v in self.basis())


def dense_solve_matrix(M: Sequence[Sequence], B: Sequence[Sequence]) -> list[list] | None:
    """Solve M X = B for a square or tall M with exact entries; None if inconsistent."""
    A = SparseMatrix.from_dense(M)
    cols = []
    ncol = len(B[0]) if B else 0
    for j in range(ncol):
        res = solve(A, [row[j] for row in B])
        if not res:
            return None
        cols.append(res.solution)
    return [[cols[j][i] for j in range(ncol)] for i in range(A.ncols)]


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    out = [[ZERO] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        oi = out[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                for j in range(m):
                    if Bt[j]:
                        oi[j] += a * Bt[j]
    return out


def mat_vec(A, v):
    return [sum((a * b for a, b in zip(row, v)), ZERO) for row in A]


def identity(n: int) -> list[list]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A, s):
    return [[a * s for a in row] for row in A]


def commutator(A, B):
    return mat_sub(mat_mul(A, B), mat_mul(B, A))


def mat_inverse(A) -> list[list] | None:
    return dense_solve_matrix(A, identity(len(A)))


def is_zero_matrix(A) -> bool:
    return not any(any(row) for row in A)
