"""Chevalley-Eilenberg cochains, cohomology, Cartan calculus and invariant forms.

Sign convention: for a p-cochain c,

    (dc)(x_0..x_p) = sum_i (-1)^i x_i.c(..^x_i..)
                     + sum_{i<j} (-1)^{i+j} c([x_i,x_j], ..^x_i..^x_j..)

so that for p = 2, (dw)(x,y,z) = sum_cyc x.w(y,z) - sum_cyc w([x,y],z).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Sequence

from .errors import InconsistencyError, NotACocycle, NotAutomorphism, NotInvariant, ValidationError
from .exactalg import SparseMatrix, Subspace, Vec, kernel_basis, solve
from .exactalg.linalg import ZERO, axpy, mat_inverse, sparse_of, verify_certificate
from .liealg import LieAlgebra, ModuleAction, trivial_module


def sort_sign(idx: Sequence[int]) -> tuple[int, tuple | None]:
    """Sign of the sorting permutation and the sorted tuple; (0, None) on repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign, tuple(sorted(idx))


def perm_sign(perm: Sequence[int]) -> int:
    return sort_sign(perm)[0]


class _Indexer:
    def __init__(self, n: int, p: int):
        self.tuples = list(combinations(range(n), p))
        self.pos = {t: k for k, t in enumerate(self.tuples)}


_INDEXERS: dict[tuple, _Indexer] = {}


def indexer(n: int, p: int) -> _Indexer:
    key = (n, p)
    if key not in _INDEXERS:
        _INDEXERS[key] = _Indexer(n, p)
    return _INDEXERS[key]


class Cochain:
    """Alternating p-linear map g^p -> V stored on strictly increasing basis tuples."""

    __slots__ = ("p", "algebra", "module", "values")

    def __init__(self, p: int, algebra: LieAlgebra, module: ModuleAction, values: dict | None = None):
        if module.algebra is not algebra and module.algebra != algebra:
            raise ValidationError("module belongs to a different algebra")
        if p < 0 or p > algebra.dim:
            raise ValidationError(f"cochain degree {p} out of range")
        self.p = p
        self.algebra = algebra
        self.module = module
        vals = {}
        for t, v in (values or {}).items():
            sign, st = sort_sign(t)
            if sign == 0:
                raise ValidationError(f"cochain value on repeated tuple {t}")
            v = Vec(v) if not isinstance(v, Vec) else v
            if len(v) != module.dim:
                raise ValidationError("value has wrong module dimension")
            v = v * sign if sign < 0 else v
            if st in vals:
                v = vals[st] + v
            if v:
                vals[st] = v
            else:
                vals.pop(st, None)
        self.values = vals

    @classmethod
    def zero(cls, p: int, algebra: LieAlgebra, module: ModuleAction) -> "Cochain":
        return cls(p, algebra, module)

    @classmethod
    def from_vector(cls, p: int, algebra: LieAlgebra, module: ModuleAction, vec) -> "Cochain":
        ix = indexer(algebra.dim, p)
        d = module.dim
        vals = {}
        for k, t in enumerate(ix.tuples):
            chunk = vec[k * d:(k + 1) * d]
            if any(chunk):
                vals[t] = Vec(chunk)
        return cls(p, algebra, module, vals)

    def vector(self) -> list:
        ix = indexer(self.algebra.dim, self.p)
        d = self.module.dim
        out = [ZERO] * (len(ix.tuples) * d)
        for t, v in self.values.items():
            base = ix.pos[t] * d
            for a, c in enumerate(v):
                out[base + a] = c
        return out

    def on_basis(self, idx: Sequence[int]) -> Vec:
        sign, st = sort_sign(idx)
        if sign == 0:
            return Vec.zero(self.module.dim)
        v = self.values.get(st)
        if v is None:
            return Vec.zero(self.module.dim)
        return v if sign > 0 else -v

    def eval_sparse(self, args: Sequence[dict]) -> Vec:
        d = self.module.dim
        acc = [ZERO] * d
        for combo in product(*(sorted(a.items()) for a in args)):
            idx = [k for k, _ in combo]
            sign, st = sort_sign(idx)
            if sign == 0:
                continue
            v = self.values.get(st)
            if v is None:
                continue
            coef = Fraction(sign)
            for _, c in combo:
                coef = coef * c
            for a, x in enumerate(v):
                if x:
                    acc[a] += coef * x
        return Vec(acc)

    def __call__(self, *args) -> Vec:
        if len(args) != self.p:
            raise ValidationError(f"{self.p}-cochain evaluated on {len(args)} arguments")
        return self.eval_sparse([sparse_of(a) for a in args])

    def _compat(self, other: "Cochain"):
        if other.p != self.p or other.algebra != self.algebra or other.module.dim != self.module.dim:
            raise ValidationError("incompatible cochains")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._compat(other)
        vals = dict(self.values)
        for t, v in other.values.items():
            vals[t] = vals[t] + v if t in vals else v
        return Cochain(self.p, self.algebra, self.module, vals)

    def __neg__(self):
        return Cochain(self.p, self.algebra, self.module, {t: -v for t, v in self.values.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        return Cochain(self.p, self.algebra, self.module, {t: v * s for t, v in self.values.items()})

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.values)

    def __eq__(self, other):
        if isinstance(other, Cochain):
            return self.p == other.p and self.values == other.values and self.module.dim == other.module.dim
        if other == 0:
            return not self.values
        return NotImplemented

    def __hash__(self):
        return hash((self.p, tuple(sorted(self.values.items()))))

    def __repr__(self):
        return f"Cochain(p={self.p}, nnz={len(self.values)})"


def _matrix_cache(module: ModuleAction) -> dict:
    cache = getattr(module, "_d_cache", None)
    if cache is None:
        cache = {}
        module._d_cache = cache
    return cache


def d_matrix(g: LieAlgebra, V: ModuleAction, p: int) -> SparseMatrix:
    """Matrix of d: C^p -> C^{p+1} in the tuple-major, module-minor coordinates."""
    cache = _matrix_cache(V)
    if p in cache:
        return cache[p]
    n, dv = g.dim, V.dim
    src = indexer(n, p)
    rows: dict[int, dict] = {}
    if p + 1 <= n:
        dst = indexer(n, p + 1)
        for r, I in enumerate(dst.tuples):
            entries: dict[tuple, object] = {}
            if not V.trivial:
                for k, ik in enumerate(I):
                    J = I[:k] + I[k + 1:]
                    col = src.pos[J]
                    s = 1 if k % 2 == 0 else -1
                    for a, row in enumerate(V._sparse[ik]):
                        for b, val in row.items():
                            key = (a, col * dv + b)
                            entries[key] = entries.get(key, ZERO) + s * val
            for k in range(len(I)):
                for l in range(k + 1, len(I)):
                    br = g.bracket_sparse(I[k], I[l])
                    if not br:
                        continue
                    rest = I[:k] + I[k + 1:l] + I[l + 1:]
                    s0 = 1 if (k + l) % 2 == 0 else -1
                    for c, coef in br.items():
                        if c in rest:
                            continue
                        pos = sum(1 for x in rest if x < c)
                        T = rest[:pos] + (c,) + rest[pos:]
                        col = src.pos[T]
                        s = s0 * (1 if pos % 2 == 0 else -1)
                        for b in range(dv):
                            key = (b, col * dv + b)
                            entries[key] = entries.get(key, ZERO) + s * coef
            for (a, col), val in entries.items():
                if val:
                    rows.setdefault(r * dv + a, {})[col] = val
        nrows = len(dst.tuples) * dv
    else:
        nrows = 0
    M = SparseMatrix(nrows, len(src.tuples) * dv, rows)
    cache[p] = M
    return M


def ce_d(c: Cochain) -> Cochain:
    g, V = c.algebra, c.module
    if c.p + 1 > g.dim:
        raise ValidationError("ce_d needs p + 1 <= dim g")
    M = d_matrix(g, V, c.p)
    return Cochain.from_vector(c.p + 1, g, V, M.apply(c.vector()))


def evaluate_d(omega: Callable, args: Sequence, bracket: Callable, act: Callable | None = None):
    """Generic CE differential of an evaluator cochain on explicit arguments.

    ``omega`` takes len(args) - 1 arguments; ``act(x, value)`` is the module
    action (omitted for trivial modules).  Values must support + and -.
    """
    total = None
    k = len(args)

    def acc(val, sign):
        nonlocal total
        term = val if sign > 0 else -val
        total = term if total is None else total + term

    if act is not None:
        for i in range(k):
            rest = list(args[:i]) + list(args[i + 1:])
            acc(act(args[i], omega(*rest)), 1 if i % 2 == 0 else -1)
    for i in range(k):
        for j in range(i + 1, k):
            rest = [a for t, a in enumerate(args) if t not in (i, j)]
            acc(omega(bracket(args[i], args[j]), *rest), 1 if (i + j) % 2 == 0 else -1)
    return total


@dataclass
class CohomologyReport:
    p: int
    dim_Z: int
    dim_B: int
    representatives: list
    algebra: LieAlgebra = field(repr=False)
    module: ModuleAction = field(repr=False)
    _B: list = field(default_factory=list, repr=False)

    @property
    def dim_H(self) -> int:
        return self.dim_Z - self.dim_B

    def class_coordinates(self, c: Cochain) -> list:
        """Coordinates of [c] in the representative basis; c must be a cocycle."""
        if c.p != self.p:
            raise ValidationError("degree mismatch")
        if self.p + 1 <= self.algebra.dim and ce_d(c):
            raise NotACocycle("class_coordinates needs a cocycle")
        cols = list(self._B) + [r.vector() for r in self.representatives]
        if not cols:
            return []
        A = SparseMatrix.from_columns(cols, len(c.vector()))
        res = solve(A, c.vector())
        if not res:
            raise InconsistencyError("cocycle outside Z^p = B^p + span(representatives)")
        return res.solution[len(self._B):]

    def is_coboundary(self, c: Cochain) -> bool:
        return not any(self.class_coordinates(c))

    def from_coordinates(self, coords: Sequence) -> Cochain:
        out = Cochain.zero(self.p, self.algebra, self.module)
        for a, r in zip(coords, self.representatives):
            if a:
                out = out + r * a
        return out


def cohomology(g: LieAlgebra, V: ModuleAction, p: int) -> CohomologyReport:
    if p < 0:
        raise ValidationError("negative degree")
    n = g.dim
    ncols = len(indexer(n, p).tuples) * V.dim if p <= n else 0
    if p > n:
        return CohomologyReport(p, 0, 0, [], g, V)
    Z = kernel_basis(d_matrix(g, V, p)) if p + 1 <= n else [
        [Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    B = Subspace(ncols)
    if p >= 1:
        Dm = d_matrix(g, V, p - 1)
        for v in _columns(Dm):
            B.add(v)
    b_basis = B.basis()
    reps = []
    span = Subspace(ncols, b_basis)
    for z in Z:
        if span.add(z):
            reps.append(Cochain.from_vector(p, g, V, z))
    return CohomologyReport(p, len(Z), B.rank, reps, g, V, b_basis)


def _columns(M: SparseMatrix) -> list[list]:
    cols = [[ZERO] * M.nrows for _ in range(M.ncols)]
    for i, row in M.rows.items():
        for j, a in row.items():
            cols[j][i] = a
    return cols


@dataclass
class CoboundaryResult:
    """Either a potential eta with d eta = omega or a certificate y (y D = 0, y omega != 0)."""

    potential: Cochain | None = None
    certificate: list | None = None

    @property
    def feasible(self) -> bool:
        return self.potential is not None

    def __bool__(self):
        return self.feasible


def coboundary_solve(omega: Cochain) -> CoboundaryResult:
    g, V, p = omega.algebra, omega.module, omega.p
    if p < 1:
        raise ValidationError("coboundary_solve needs degree >= 1")
    if p + 1 <= g.dim and ce_d(omega):
        raise NotACocycle("input is not a cocycle")
    D = d_matrix(g, V, p - 1)
    w = omega.vector()
    res = solve(D, w)
    if res:
        eta = Cochain.from_vector(p - 1, g, V, res.solution)
        if ce_d(eta) != omega:
            raise InconsistencyError("returned potential does not reproduce omega")
        return CoboundaryResult(potential=eta)
    if not verify_certificate(D, w, res.certificate):
        raise InconsistencyError("infeasibility certificate failed verification")
    return CoboundaryResult(certificate=res.certificate)


def contract(c: Cochain, x) -> Cochain:
    """(i_x c)(x_1..x_{p-1}) = c(x, x_1, ..., x_{p-1})."""
    if c.p < 1:
        raise ValidationError("contract needs degree >= 1")
    xs = sparse_of(x)
    n = c.algebra.dim
    vals = {}
    for t in combinations(range(n), c.p - 1):
        v = c.eval_sparse([xs] + [{k: Fraction(1)} for k in t])
        if v:
            vals[t] = v
    return Cochain(c.p - 1, c.algebra, c.module, vals)


def lie_derivative(c: Cochain, x) -> Cochain:
    """(L_x c)(x_1..x_p) = x.c(x_1..x_p) - sum_i c(.., [x, x_i], ..)."""
    g, V = c.algebra, c.module
    xs = sparse_of(x)
    vals = {}
    for t in combinations(range(g.dim), c.p):
        args = [{k: Fraction(1)} for k in t]
        acc = Vec.zero(V.dim)
        if not V.trivial:
            base = c.on_basis(t)
            for i, a in xs.items():
                acc = acc + Vec(V.act(i, base.c)) * a
        for slot in range(c.p):
            br = g.bracket_sp(xs, args[slot])
            if br:
                acc = acc - c.eval_sparse(args[:slot] + [br] + args[slot + 1:])
        if acc:
            vals[t] = acc
    return Cochain(c.p, g, V, vals)


class BilinearFormSym:
    """Symmetric V-valued bilinear form on an algebra, stored on pairs i <= j."""

    def __init__(self, algebra: LieAlgebra, vdim: int, values: dict | None = None):
        self.algebra = algebra
        self.vdim = vdim
        vals = {}
        for (i, j), v in (values or {}).items():
            key = (min(i, j), max(i, j))
            v = Vec(v)
            if len(v) != vdim:
                raise ValidationError("form value has wrong dimension")
            if key in vals and vals[key] != v:
                raise ValidationError(f"asymmetric data at {key}")
            if v:
                vals[key] = v
        self.values = vals

    def on_basis(self, i: int, j: int) -> Vec:
        return self.values.get((min(i, j), max(i, j)), Vec.zero(self.vdim))

    def eval_sparse(self, u: dict, v: dict) -> Vec:
        acc = [ZERO] * self.vdim
        for i, a in u.items():
            for j, b in v.items():
                val = self.values.get((i, j) if i <= j else (j, i))
                if val is not None:
                    ab = a * b
                    for k, x in enumerate(val):
                        if x:
                            acc[k] += ab * x
        return Vec(acc)

    def __call__(self, u, v) -> Vec:
        return self.eval_sparse(sparse_of(u), sparse_of(v))

    def invariance_failure(self):
        g = self.algebra
        n = g.dim
        for z in range(n):
            for x in range(n):
                for y in range(x, n):
                    a = self.eval_sparse(g.bracket_sparse(z, x), {y: Fraction(1)})
                    b = self.eval_sparse({x: Fraction(1)}, g.bracket_sparse(z, y))
                    if a + b:
                        return (z, x, y)
        return None

    def is_invariant(self) -> bool:
        return self.invariance_failure() is None

    def is_equivariant(self, M) -> bool:
        """kappa(Mx, My) = kappa(x, y) for an automorphism matrix M."""
        n = self.algebra.dim
        cols = [{r: M[r][c] for r in range(n) if M[r][c]} for c in range(n)]
        return all(self.eval_sparse(cols[i], cols[j]) == self.on_basis(i, j)
                   for i in range(n) for j in range(i, n))

    def __add__(self, other):
        keys = set(self.values) | set(other.values)
        return BilinearFormSym(self.algebra, self.vdim,
                               {k: self.on_basis(*k) + other.on_basis(*k) for k in keys})

    def __mul__(self, s):
        return BilinearFormSym(self.algebra, self.vdim, {k: v * s for k, v in self.values.items()})

    __rmul__ = __mul__

    def __sub__(self, other):
        return self + other * Fraction(-1)

    def __eq__(self, other):
        return isinstance(other, BilinearFormSym) and self.vdim == other.vdim and self.values == other.values

    def __hash__(self):
        return hash(tuple(sorted(self.values.items())))

    def __bool__(self):
        return bool(self.values)

    def vector(self) -> list:
        n = self.algebra.dim
        out = []
        for i in range(n):
            for j in range(i, n):
                out.extend(self.on_basis(i, j))
        return out

    def __repr__(self):
        return f"BilinearFormSym(vdim={self.vdim}, nnz={len(self.values)})"


def form_from_matrix(algebra: LieAlgebra, G) -> BilinearFormSym:
    """Scalar form with Gram matrix G (must be symmetric)."""
    n = algebra.dim
    vals = {}
    for i in range(n):
        for j in range(i, n):
            if G[i][j] != G[j][i]:
                raise ValidationError("Gram matrix is not symmetric")
            if G[i][j]:
                vals[(i, j)] = (Fraction(G[i][j]),)
    return BilinearFormSym(algebra, 1, vals)


def killing_form(g: LieAlgebra) -> BilinearFormSym:
    from .exactalg.linalg import mat_mul
    ads = [g.ad(i) for i in range(g.dim)]
    G = [[sum((r[k] for k, r in enumerate(mat_mul(ads[i], ads[j]))), ZERO) for j in range(g.dim)]
         for i in range(g.dim)]
    return form_from_matrix(g, G)


def trace_form(g: LieAlgebra, kind: str = "tr(xy)") -> BilinearFormSym:
    """tr(xy) or tr(x)tr(y) on a matrix algebra."""
    from .exactalg.linalg import mat_mul
    if g.matrices is None:
        raise ValidationError("trace forms need a matrix realization")
    ms = [[list(r) for r in m] for m in g.matrices]
    tr = [sum((m[k][k] for k in range(len(m))), ZERO) for m in ms]
    n = g.dim
    if kind == "tr(xy)":
        G = [[sum((mat_mul(ms[i], ms[j])[k][k] for k in range(len(ms[0]))), ZERO) for j in range(n)]
             for i in range(n)]
    elif kind == "tr(x)tr(y)":
        G = [[tr[i] * tr[j] for j in range(n)] for i in range(n)]
    else:
        raise ValidationError(f"unknown trace form {kind!r}")
    return form_from_matrix(g, G)


def _pair_index(n: int) -> dict:
    out = {}
    for i in range(n):
        for j in range(i, n):
            out[(i, j)] = len(out)
    return out


def invariant_sym_forms(k: LieAlgebra, vdim: int = 1) -> list[BilinearFormSym]:
    n = k.dim
    P = _pair_index(n)
    rows = {}
    r = 0
    for z in range(n):
        for x in range(n):
            for y in range(x, n):
                row: dict = {}
                for c, a in k.bracket_sparse(z, x).items():
                    axpy(row, a, {P[(min(c, y), max(c, y))]: Fraction(1)})
                for c, a in k.bracket_sparse(z, y).items():
                    axpy(row, a, {P[(min(x, c), max(x, c))]: Fraction(1)})
                if row:
                    rows[r] = row
                r += 1
    scalar = kernel_basis(SparseMatrix(r, len(P), rows))
    out = []
    for v in scalar:
        for a in range(vdim):
            vals = {}
            for (i, j), p in P.items():
                if v[p]:
                    vals[(i, j)] = Vec(v[p] if b == a else ZERO for b in range(vdim))
            out.append(BilinearFormSym(k, vdim, vals))
    return out


@dataclass
class UniversalForm:
    """V(k) = S^2(k) / k.S^2(k) with kappa_u(x, y) = [x v y]."""

    algebra: LieAlgebra
    dim: int
    kappa: BilinearFormSym
    relations: Subspace = field(repr=False)

    def factor(self, kappa: BilinearFormSym) -> list[list]:
        """The unique linear lambda: V(k) -> V with kappa = lambda o kappa_u (checked)."""
        n = self.algebra.dim
        P = _pair_index(n)
        inv = {p: ij for ij, p in P.items()}
        comp = self.relations.complement_indices()
        lam = [[kappa.on_basis(*inv[p])[a] for p in comp] for a in range(kappa.vdim)]
        for (i, j) in P:
            u = self.kappa.on_basis(i, j)
            img = Vec(sum((lam[a][c] * u[c] for c in range(self.dim)), ZERO) for a in range(kappa.vdim))
            if img != kappa.on_basis(i, j):
                raise NotInvariant("form does not factor through the universal form", witness=(i, j))
        span = Subspace(self.dim, (self.kappa.on_basis(i, j).c for (i, j) in P))
        if span.rank != self.dim:
            raise InconsistencyError("universal form values do not span V(k)")
        return lam


def universal_form(k: LieAlgebra) -> UniversalForm:
    n = k.dim
    P = _pair_index(n)
    W = Subspace(len(P))
    for z in range(n):
        for x in range(n):
            for y in range(x, n):
                v: dict = {}
                for c, a in k.bracket_sparse(z, x).items():
                    axpy(v, a, {P[(min(c, y), max(c, y))]: Fraction(1)})
                for c, a in k.bracket_sparse(z, y).items():
                    axpy(v, a, {P[(min(x, c), max(x, c))]: Fraction(1)})
                if v:
                    W.add(v)
    dim = len(P) - W.rank
    vals = {}
    for (i, j), p in P.items():
        vals[(i, j)] = Vec(W.quotient_coords({p: Fraction(1)}))
    return UniversalForm(k, dim, BilinearFormSym(k, dim, vals), W)


def cartan_map(kappa: BilinearFormSym) -> Cochain:
    """Gamma(kappa)(x, y, z) = kappa([x, y], z)."""
    g = kappa.algebra
    bad = kappa.invariance_failure()
    if bad is not None:
        raise NotInvariant("form is not invariant", witness=tuple(g.names[i] for i in bad))
    V = trivial_module(g, kappa.vdim)
    if g.dim < 3:
        return Cochain.zero(min(3, g.dim), g, V) if g.dim >= 3 else _empty3(g, V)
    vals = {}
    for t in combinations(range(g.dim), 3):
        v = kappa.eval_sparse(g.bracket_sparse(t[0], t[1]), {t[2]: Fraction(1)})
        if v:
            vals[t] = v
    gamma = Cochain(3, g, V, vals)
    if g.dim >= 4 and ce_d(gamma):
        raise InconsistencyError("Cartan 3-cochain is not closed")
    return gamma


def _empty3(g, V):
    raise ValidationError("Cartan map needs dim >= 3 (3-cochains vanish otherwise)")


def cartan_exactness(kappa: BilinearFormSym) -> CoboundaryResult:
    g = kappa.algebra
    if g.dim < 3:
        bad = kappa.invariance_failure()
        if bad is not None:
            raise NotInvariant("form is not invariant", witness=bad)
        return CoboundaryResult(potential=Cochain.zero(2, g, trivial_module(g, kappa.vdim)))
    return coboundary_solve(cartan_map(kappa))


@dataclass
class UniversalType2:
    """V = Z^2(k)^* with eta_u(x, x')(f) = f(x, x'), coordinates in the dual of ``cocycles``."""

    cocycles: list
    eta: Cochain
    module: ModuleAction

    @property
    def dim(self) -> int:
        return len(self.cocycles)


def universal_type2_target(k: LieAlgebra) -> UniversalType2:
    F = trivial_module(k, 1)
    Z = kernel_basis(d_matrix(k, F, 2)) if k.dim >= 3 else [
        [Fraction(int(i == j)) for i in range(len(indexer(k.dim, 2).tuples))]
        for j in range(len(indexer(k.dim, 2).tuples))]
    cocycles = [Cochain.from_vector(2, k, F, z) for z in Z]
    m = len(cocycles)
    V = trivial_module(k, m)
    vals = {}
    for t in combinations(range(k.dim), 2):
        v = Vec(f.on_basis(t)[0] for f in cocycles)
        if v:
            vals[t] = v
    return UniversalType2(cocycles, Cochain(2, k, V, vals), V)


def shuffles(p: int, q: int):
    """(sign, first p positions, last q positions) over (p,q)-shuffles."""
    for first in combinations(range(p + q), p):
        rest = tuple(i for i in range(p + q) if i not in first)
        yield perm_sign(first + rest), first, rest


def cup_evaluators(f1: Callable, p: int, f2: Callable, q: int, pairing: Callable) -> Callable:
    """Alternating cup of two evaluator cochains:
    (f1 u f2)(x_1..x_{p+q}) = sum over shuffles sgn * pairing(f1(x_S), f2(x_S')).
    """
    def cup(*args):
        if len(args) != p + q:
            raise ValidationError("wrong number of arguments for cup product")
        total = None
        for sign, first, rest in shuffles(p, q):
            val = pairing(f1(*(args[i] for i in first)), f2(*(args[i] for i in rest)))
            val = val if sign > 0 else -val
            total = val if total is None else total + val
        return total
    return cup


def cup_product(c1: Cochain, c2: Cochain, pairing: Callable | None = None,
                module: ModuleAction | None = None) -> Cochain:
    """Cup product of finite cochains; ``pairing(Vec, Vec) -> Vec``, default scalar product for 1-dim values."""
    if c1.algebra != c2.algebra:
        raise ValidationError("cup product of cochains on different algebras")
    g = c1.algebra
    if pairing is None:
        if c1.module.dim != 1 and c2.module.dim != 1:
            raise ValidationError("default pairing needs one 1-dimensional value module")
        if c1.module.dim == 1:
            pairing = lambda a, b: b * a[0]  # noqa: E731
        else:
            pairing = lambda a, b: a * b[0]  # noqa: E731
    p, q = c1.p, c2.p
    if p + q > g.dim:
        raise ValidationError("cup product degree exceeds dim g")
    out_dim = None
    vals = {}
    for t in combinations(range(g.dim), p + q):
        total = None
        for sign, first, rest in shuffles(p, q):
            val = pairing(c1.on_basis([t[i] for i in first]), c2.on_basis([t[i] for i in rest]))
            val = val if sign > 0 else -val
            total = val if total is None else total + val
        out_dim = len(total)
        if total:
            vals[t] = total
    if module is None:
        if out_dim is None:
            out_dim = len(pairing(Vec.zero(c1.module.dim), Vec.zero(c2.module.dim)))
        module = trivial_module(g, out_dim)
    return Cochain(p + q, g, module, vals)


def twist_cochain(omega: Cochain, gamma_V, gamma_g) -> Cochain:
    """(gamma.omega)(x, y) = gamma_V omega(gamma_g^{-1} x, gamma_g^{-1} y)."""
    g = omega.algebra
    inv = mat_inverse(gamma_g)
    if inv is None:
        raise NotAutomorphism("gamma_g is not invertible")
    n = g.dim
    cols = [{r: inv[r][c] for r in range(n) if inv[r][c]} for c in range(n)]
    vals = {}
    for t in combinations(range(n), omega.p):
        v = omega.eval_sparse([cols[i] for i in t])
        v = Vec(sum((gamma_V[a][b] * v[b] for b in range(len(v))), ZERO) for a in range(len(gamma_V)))
        if v:
            vals[t] = v
    return Cochain(omega.p, g, omega.module, vals)


def central_extension_algebra(omega: Cochain) -> tuple[LieAlgebra, tuple | None]:
    """V (+)_omega g as structure constants (V first, then g) plus any Jacobi failure."""
    g = omega.algebra
    if omega.p != 2 or not omega.module.trivial:
        raise ValidationError("central extensions need a 2-cochain with trivial module")
    dv = omega.module.dim
    names = [f"z{a + 1}" for a in range(dv)] + list(g.names)
    table = {}
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            v = [ZERO] * (dv + g.dim)
            w = omega.on_basis((i, j))
            for a in range(dv):
                v[a] = w[a]
            for k, c in g.bracket_sparse(i, j).items():
                v[dv + k] = c
            if any(v):
                table[(dv + i, dv + j)] = v
    ext = LieAlgebra(g.field, names, table, label=f"ext({g.label})", validate=False)
    return ext, ext.jacobi_failure()


def lift_automorphism_check(gamma_V, gamma_g, omega: Cochain, theta: Cochain) -> bool:
    """True iff gamma.omega - omega = d theta; the lifted map is then checked to be an automorphism."""
    g = omega.algebra
    if not g.is_automorphism(gamma_g):
        raise NotAutomorphism("gamma_g is not an automorphism of g")
    dv = omega.module.dim
    if mat_inverse(gamma_V) is None:
        raise NotAutomorphism("gamma_V is not invertible")
    cond = (twist_cochain(omega, gamma_V, gamma_g) - omega) == ce_d(theta)
    ext, bad = central_extension_algebra(omega)
    if bad is not None:
        raise NotACocycle("omega is not a cocycle; the extension is not a Lie algebra")
    n = g.dim
    N = dv + n
    lift = [[ZERO] * N for _ in range(N)]
    for a in range(dv):
        for b in range(dv):
            lift[a][b] = Fraction(gamma_V[a][b])
    for c in range(n):
        col = {r: gamma_g[r][c] for r in range(n) if gamma_g[r][c]}
        th = theta.eval_sparse([col])
        for a in range(dv):
            lift[a][dv + c] = th[a]
        for r in range(n):
            lift[dv + r][dv + c] = Fraction(gamma_g[r][c])
    hom = ext.is_automorphism(lift)
    if hom != cond:
        raise InconsistencyError("lift criterion disagrees with the bracket check")
    return cond
