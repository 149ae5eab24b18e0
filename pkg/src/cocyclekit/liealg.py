"""Finite-dimensional Lie algebras given by structure constants, and their modules."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .errors import (
    AntisymmetryViolation,
    JacobiViolation,
    NotADerivation,
    NotAHomomorphism,
    NotAModule,
    ValidationError,
)
from .exactalg import Field, Subspace, Vec
from .exactalg.linalg import ZERO, axpy, commutator, is_zero_matrix, mat_mul, sparse_of, kernel_basis, SparseMatrix


class LieAlgebra:
    """Structure constants stored for i < j as sparse dicts; Jacobi checked on construction."""

    def __init__(self, field: Field, names: Sequence[str], brackets: Mapping[tuple, object],
                 matrices: Sequence | None = None, label: str = "", validate: bool = True):
        self.field = field
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValidationError("basis names must be distinct")
        self.dim = len(self.names)
        self.label = label
        self.matrices = [tuple(tuple(r) for r in m) for m in matrices] if matrices is not None else None
        n = self.dim
        table: dict[tuple, dict] = {}
        for (i, j), v in brackets.items():
            if not (0 <= i < n and 0 <= j < n):
                raise ValidationError(f"bracket index ({i},{j}) out of range")
            if i >= j:
                raise AntisymmetryViolation(f"bracket stored at ({i},{j}) with i >= j", witness=(i, j))
            sv = sparse_of(v)
            if any(k >= n or k < 0 for k in sv):
                raise ValidationError(f"bracket value at ({i},{j}) has out-of-range component")
            if sv:
                table[(i, j)] = sv
        self._table = table
        self._full = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i < j:
                    self._full[i][j] = table.get((i, j), {})
                elif i > j:
                    self._full[i][j] = {k: -a for k, a in table.get((j, i), {}).items()}
                else:
                    self._full[i][j] = {}
        if validate:
            bad = self.jacobi_failure()
            if bad is not None:
                names = tuple(self.names[k] for k in bad)
                raise JacobiViolation(f"Jacobi identity fails on {names}", witness=names)

    @property
    def brackets(self) -> dict[tuple, Vec]:
        return {k: Vec(self.dense(v)) for k, v in sorted(self._table.items())}

    def dense(self, sv: dict) -> list:
        out = [ZERO] * self.dim
        for k, a in sv.items():
            out[k] = a
        return out

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValidationError(f"unknown basis element {name!r}") from None

    def bracket_sparse(self, i: int, j: int) -> dict:
        return self._full[i][j]

    def bracket_basis(self, i: int, j: int) -> Vec:
        return Vec(self.dense(self._full[i][j]))

    def bracket_sp(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, a in u.items():
            row = self._full[i]
            for j, b in v.items():
                br = row[j]
                if br:
                    axpy(out, a * b, br)
        return out

    def bracket(self, u, v) -> Vec:
        return Vec(self.dense(self.bracket_sp(sparse_of(u), sparse_of(v))))

    def basis_vector(self, i: int) -> Vec:
        return Vec.unit(self.dim, i)

    def ad(self, i: int) -> list[list]:
        """Matrix of ad(e_i) acting on column vectors."""
        n = self.dim
        M = [[ZERO] * n for _ in range(n)]
        for j in range(n):
            for k, a in self._full[i][j].items():
                M[k][j] = a
        return M

    def ad_vec(self, x) -> list[list]:
        n = self.dim
        M = [[ZERO] * n for _ in range(n)]
        for i, a in sparse_of(x).items():
            for j in range(n):
                for k, b in self._full[i][j].items():
                    M[k][j] += a * b
        return M

    def jacobi_failure(self):
        for i, j, k in combinations(range(self.dim), 3):
            acc: dict = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                inner = self._full[a][b]
                for m, coef in inner.items():
                    axpy(acc, coef, self._full[m][c])
            if acc:
                return (i, j, k)
        return None

    def is_automorphism(self, M) -> bool:
        """M acts on column vectors; checks M[e_i,e_j] = [Me_i, Me_j]."""
        n = self.dim
        cols = [{r: M[r][c] for r in range(n) if M[r][c]} for c in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                lhs: dict = {}
                for k, a in self._full[i][j].items():
                    axpy(lhs, a, cols[k])
                if lhs != self.bracket_sp(cols[i], cols[j]):
                    return False
        return True

    def __eq__(self, other):
        return (isinstance(other, LieAlgebra) and self.field == other.field
                and self.names == other.names and self._table == other._table)

    def __hash__(self):
        return hash((self.names, tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self._table.items()))))

    def __repr__(self):
        return f"LieAlgebra({self.label or 'custom'}, dim={self.dim})"


def lie_from_structure(field: Field, basis: Sequence[str], brackets: Mapping, label: str = "") -> LieAlgebra:
    """Build from brackets keyed by name or index pairs; values are dicts name->scalar or vectors."""
    names = list(basis)
    n = len(names)

    def idx(x):
        if isinstance(x, int):
            return x
        if x not in names:
            raise ValidationError(f"unknown basis element {x!r}")
        return names.index(x)

    def vec(v):
        if isinstance(v, Mapping):
            out = [ZERO] * n
            for k, a in v.items():
                out[idx(k)] += field(a)
            return out
        if len(v) != n:
            raise ValidationError("bracket value has wrong length")
        return [field(a) for a in v]

    table: dict[tuple, list] = {}
    for (x, y), v in brackets.items():
        i, j = idx(x), idx(y)
        val = vec(v)
        if i == j:
            if any(val):
                raise AntisymmetryViolation(f"[{names[i]},{names[i]}] must vanish", witness=(names[i],))
            continue
        if i > j:
            i, j, val = j, i, [-a for a in val]
        if (i, j) in table and table[(i, j)] != val:
            raise AntisymmetryViolation(f"inconsistent values for [{names[i]},{names[j]}]",
                                        witness=(names[i], names[j]))
        table[(i, j)] = val
    return LieAlgebra(field, names, table, label=label)


def from_matrices(field: Field, names: Sequence[str], mats: Sequence, label: str = "") -> LieAlgebra:
    """Linear Lie algebra spanned by the given (independent) matrices, closed under commutators."""
    flat = [[a for row in m for a in row] for m in mats]
    n = len(mats)
    size = len(flat[0])
    A = SparseMatrix.from_columns(flat, size)
    from .exactalg.linalg import solve
    table = {}
    for i in range(n):
        for j in range(i + 1, n):
            c = commutator(mats[i], mats[j])
            res = solve(A, [a for row in c for a in row])
            if not res:
                raise ValidationError(f"matrices not closed under commutator at ({names[i]},{names[j]})")
            if any(res.solution):
                table[(i, j)] = res.solution
    return LieAlgebra(field, names, table, matrices=mats, label=label)


def _unit_matrix(d: int, i: int, j: int):
    return [[Fraction(int(r == i and c == j)) for c in range(d)] for r in range(d)]


def sl(n: int, field: Field | None = None) -> LieAlgebra:
    field = field or Field()
    if n < 2:
        raise ValidationError("sl(n) needs n >= 2")
    if n == 2:
        h = [[Fraction(1), ZERO], [ZERO, Fraction(-1)]]
        return from_matrices(field, ["h", "e", "f"], [h, _unit_matrix(2, 0, 1), _unit_matrix(2, 1, 0)], label="sl(2)")
    names, mats = [], []
    for i in range(n - 1):
        m = _unit_matrix(n, i, i)
        m[i + 1][i + 1] = Fraction(-1)
        names.append(f"H{i + 1}")
        mats.append(m)
    for i in range(n):
        for j in range(n):
            if i != j:
                names.append(f"E{i + 1}{j + 1}")
                mats.append(_unit_matrix(n, i, j))
    return from_matrices(field, names, mats, label=f"sl({n})")


def gl(d: int, field: Field | None = None) -> LieAlgebra:
    field = field or Field()
    names = [f"E{i + 1}{j + 1}" for i in range(d) for j in range(d)]
    mats = [_unit_matrix(d, i, j) for i in range(d) for j in range(d)]
    return from_matrices(field, names, mats, label=f"gl({d})")


def abelian(n: int, field: Field | None = None) -> LieAlgebra:
    return LieAlgebra(field or Field(), [f"x{i + 1}" for i in range(n)], {}, label=f"abelian({n})")


def heisenberg(field: Field | None = None) -> LieAlgebra:
    return lie_from_structure(field or Field(), ["x", "y", "z"], {("x", "y"): {"z": 1}}, label="heisenberg(3)")


def aff1(field: Field | None = None) -> LieAlgebra:
    return lie_from_structure(field or Field(), ["x", "y"], {("x", "y"): {"y": 1}}, label="aff(1)")


def cotangent(h: LieAlgebra) -> LieAlgebra:
    """h* semidirect h with the coadjoint action; dual basis first, named a_<name>."""
    n = h.dim
    names = [f"a_{nm}" for nm in h.names] + list(h.names)
    table: dict[tuple, list] = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = [ZERO] * (2 * n)
            for k, a in h.bracket_sparse(i, j).items():
                v[n + k] = a
            if any(v):
                table[(n + i, n + j)] = v
    # [x_i, a_j] = x_i . a_j = -sum_k C_{ik}^j a_k, stored at (j, n+i) with a sign flip
    for i in range(n):
        for j in range(n):
            v = [ZERO] * (2 * n)
            for k in range(n):
                c = h.bracket_sparse(i, k).get(j, ZERO)
                if c:
                    v[k] = c  # [a_j, x_i] = -[x_i, a_j]
            if any(v):
                table[(j, n + i)] = v
    return LieAlgebra(h.field, names, table, label=f"cotangent({h.label or 'h'})")


def standard_algebra(name: str, params=None, field: Field | None = None) -> LieAlgebra:
    name = name.lower()
    if name == "sl":
        return sl(int(params), field)
    if name == "gl":
        return gl(int(params), field)
    if name == "abelian":
        return abelian(int(params), field)
    if name == "heisenberg":
        if params not in (None, 3):
            raise ValidationError("only heisenberg(3) is provided")
        return heisenberg(field)
    if name == "aff":
        if params not in (None, 1):
            raise ValidationError("only aff(1) is provided")
        return aff1(field)
    if name == "cotangent":
        if not isinstance(params, LieAlgebra):
            raise ValidationError("cotangent needs a LieAlgebra parameter")
        return cotangent(params)
    raise ValidationError(f"unknown standard algebra {name!r}")


def derived_subalgebra(g: LieAlgebra) -> list[list]:
    return Subspace(g.dim, (g.bracket_basis(i, j).c for i in range(g.dim) for j in range(i + 1, g.dim))).basis()


def is_perfect(g: LieAlgebra) -> bool:
    return len(derived_subalgebra(g)) == g.dim


def center(g: LieAlgebra) -> list[list]:
    n = g.dim
    rows = {}
    for j in range(n):
        ad_j = g.ad(j)  # [e_j, x] = ad_j x, and x central iff ad_j x = 0 for all j
        for k in range(n):
            if any(ad_j[k]):
                rows[j * n + k] = sparse_of(ad_j[k])
    return kernel_basis(SparseMatrix(n * n, n, rows))


class ModuleAction:
    """Representation rho: g -> gl(V) given on basis elements; matrices act on columns."""

    def __init__(self, algebra: LieAlgebra, dim: int, rho: Sequence | None = None,
                 label: str = "", validate: bool = True):
        self.algebra = algebra
        self.dim = dim
        self.label = label
        if rho is None:
            rho = [[[ZERO] * dim for _ in range(dim)] for _ in range(algebra.dim)]
        if len(rho) != algebra.dim:
            raise ValidationError("need one matrix per basis element")
        self.rho = [[[Fraction(a) if isinstance(a, int) else a for a in row] for row in m] for m in rho]
        self.trivial = all(is_zero_matrix(m) for m in self.rho)
        self._sparse = [[{c: m[r][c] for c in range(dim) if m[r][c]} for r in range(dim)] for m in self.rho]
        if validate:
            bad = self.failure()
            if bad is not None:
                raise NotAModule(f"rho([{algebra.names[bad[0]]},{algebra.names[bad[1]]}]) != [rho,rho]",
                                 witness=(algebra.names[bad[0]], algebra.names[bad[1]]))

    def matrix_of(self, x) -> list[list]:
        d = self.dim
        M = [[ZERO] * d for _ in range(d)]
        for i, a in sparse_of(x).items():
            for r in range(d):
                for c, b in self._sparse[i][r].items():
                    M[r][c] += a * b
        return M

    def failure(self):
        g = self.algebra
        for i in range(g.dim):
            for j in range(i + 1, g.dim):
                lhs = self.matrix_of(g.bracket_sparse(i, j))
                if lhs != commutator(self.rho[i], self.rho[j]):
                    return (i, j)
        return None

    def act(self, i: int, v) -> list:
        """rho(e_i) v for a dense vector v."""
        return [sum((a * v[c] for c, a in row.items()), ZERO) for row in self._sparse[i]]

    def act_sparse(self, i: int, v: dict) -> dict:
        out: dict = {}
        rows = self._sparse[i]
        for r in range(self.dim):
            s = ZERO
            for c, a in rows[r].items():
                b = v.get(c)
                if b:
                    s += a * b
            if s:
                out[r] = s
        return out


def trivial_module(g: LieAlgebra, dim: int = 1) -> ModuleAction:
    return ModuleAction(g, dim, None, label=f"trivial({dim})", validate=False)


def adjoint_module(g: LieAlgebra) -> ModuleAction:
    return ModuleAction(g, g.dim, [g.ad(i) for i in range(g.dim)], label="adjoint", validate=False)


def coadjoint_module(g: LieAlgebra) -> ModuleAction:
    # (x.a)(y) = -a([x,y]); matrix is -ad(x)^T
    mats = []
    for i in range(g.dim):
        A = g.ad(i)
        mats.append([[-A[c][r] for c in range(g.dim)] for r in range(g.dim)])
    return ModuleAction(g, g.dim, mats, label="coadjoint", validate=False)


@dataclass(frozen=True)
class SemidirectData:
    n: LieAlgebra
    g: LieAlgebra
    S: tuple  # one dim_n x dim_n matrix per basis element of g


def _check_semidirect(data: SemidirectData) -> None:
    n, g, S = data.n, data.g, data.S
    if len(S) != g.dim:
        raise ValidationError("need one derivation matrix per basis element of g")
    for xi, D in enumerate(S):
        for a in range(n.dim):
            for b in range(a + 1, n.dim):
                Da = {r: D[r][a] for r in range(n.dim) if D[r][a]}
                Db = {r: D[r][b] for r in range(n.dim) if D[r][b]}
                lhs: dict = {}
                for k, c in n.bracket_sparse(a, b).items():
                    axpy(lhs, c, {r: D[r][k] for r in range(n.dim) if D[r][k]})
                rhs = n.bracket_sp(Da, {b: Fraction(1)})
                axpy(rhs, Fraction(1), n.bracket_sp({a: Fraction(1)}, Db))
                if lhs != rhs:
                    raise NotADerivation(f"S({g.names[xi]}) is not a derivation on ({n.names[a]},{n.names[b]})",
                                         witness=(g.names[xi], n.names[a], n.names[b]))
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs = [[ZERO] * n.dim for _ in range(n.dim)]
            for k, c in g.bracket_sparse(i, j).items():
                lhs = [[x + c * y for x, y in zip(r1, r2)] for r1, r2 in zip(lhs, S[k])]
            if lhs != commutator(S[i], S[j]):
                raise NotAHomomorphism(f"S is not a homomorphism on ({g.names[i]},{g.names[j]})",
                                       witness=(g.names[i], g.names[j]))


def semidirect_sum(data: SemidirectData) -> LieAlgebra:
    """n first, then g.  [(n1,x1),(n2,x2)] = ([n1,n2] + S(x1)n2 - S(x2)n1, [x1,x2])."""
    _check_semidirect(data)
    n, g, S = data.n, data.g, data.S
    dn, dg = n.dim, g.dim
    clash = set(n.names) & set(g.names)
    names = ([f"n.{x}" for x in n.names] + [f"g.{x}" for x in g.names]) if clash else list(n.names) + list(g.names)
    table: dict[tuple, list] = {}
    for (a, b), v in n._table.items():
        out = [ZERO] * (dn + dg)
        for k, c in v.items():
            out[k] = c
        table[(a, b)] = out
    for (i, j), v in g._table.items():
        out = [ZERO] * (dn + dg)
        for k, c in v.items():
            out[dn + k] = c
        table[(dn + i, dn + j)] = out
    for i in range(dg):
        for a in range(dn):
            out = [ZERO] * (dn + dg)
            for r in range(dn):
                out[r] = -S[i][r][a]  # [n_a, x_i] = -S(x_i) n_a
            if any(out):
                table[(a, dn + i)] = out
    h = LieAlgebra(n.field, names, table, label=f"{n.label or 'n'} x| {g.label or 'g'}")
    h.semidirect = (dn, dg)
    return h
