"""Abelian extensions of a semidirect sum h = n x| g by an h-module V.

All cohomology spaces use the representative bases of ``ce.cohomology``, so the maps
between them are honest matrices.  Class equality always goes through a linear solve.

Coordinates: h has n first (indices 0..dn-1), then g.  A 1-cochain on n with values in V
is a vector of length dn*dV, chunk a holding its value on n_a.  Z1(n,V) is a g-module
under (x.b)(m) = x.b(m) - b(S(x)m); the continuity conditions of the topological theory
are vacuous here and dropped.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .ce import Cochain, CohomologyReport, ce_d, cohomology, d_matrix
from .errors import InconsistencyError, NotACocycle, ValidationError
from .exactalg import SparseMatrix, Subspace, Vec, kernel_basis, solve
from .exactalg.linalg import ZERO, rank
from .liealg import LieAlgebra, ModuleAction, SemidirectData, is_perfect, semidirect_sum, trivial_module

ONE = Fraction(1)


def _frac_matrix(M) -> list[list]:
    return [[Fraction(a) if isinstance(a, int) else a for a in row] for row in M]


def _cohom(g: LieAlgebra, M: ModuleAction, p: int) -> CohomologyReport:
    if M.dim == 0 or p > g.dim:
        return CohomologyReport(p, 0, 0, [], g, M)
    return cohomology(g, M, p)


def _coords(report: CohomologyReport, c: Cochain | None) -> list:
    if c is None or not report.representatives:
        return [ZERO] * report.dim_H
    return list(report.class_coordinates(c))


class _SubmoduleCoords:
    """A subspace with a fixed basis and coordinate solving."""

    def __init__(self, basis: list[list], ambient: int):
        self.basis = basis
        self.ambient = ambient
        self._A = SparseMatrix.from_columns(basis, ambient) if basis else None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, v) -> list:
        if not self.basis:
            if any(v):
                raise InconsistencyError("vector outside the zero subspace")
            return []
        res = solve(self._A, list(v))
        if not res:
            raise InconsistencyError("vector outside the subspace")
        return res.solution

    def embed(self, coords) -> list:
        out = [ZERO] * self.ambient
        for a, b in zip(coords, self.basis):
            if a:
                out = [x + a * y for x, y in zip(out, b)]
        return out


@dataclass
class SemidirectSetup:
    """All spaces and module structures attached to (n x| g, V)."""

    data: SemidirectData
    h: LieAlgebra
    V: ModuleAction
    Vn: ModuleAction
    Vg: ModuleAction
    S: list
    Z1: _SubmoduleCoords
    W: ModuleAction
    Vinv: _SubmoduleCoords
    VinvMod: ModuleAction
    H2h: CohomologyReport
    H2n: CohomologyReport
    H2g: CohomologyReport
    H1gW: CohomologyReport
    H2gW: CohomologyReport
    H2gVinv: CohomologyReport

    @property
    def dn(self) -> int:
        return self.data.n.dim

    @property
    def dg(self) -> int:
        return self.data.g.dim

    # -- g acting on cochains of n -------------------------------------------------
    def act_on_cochain(self, j: int, c: Cochain) -> Cochain:
        """(x_j.c)(a_1..a_p) = x_j.c(a_1..a_p) - sum_i c(.., S(x_j)a_i, ..)."""
        n, S, p = self.data.n, self.S[j], c.p
        vals = {}
        for t in combinations(range(n.dim), p):
            args = [{k: ONE} for k in t]
            v = Vec(self.Vg.act(j, list(c.on_basis(t))))
            for slot in range(p):
                col = t[slot]
                Sa = {r: S[r][col] for r in range(n.dim) if S[r][col]}
                if Sa:
                    v = v - c.eval_sparse(args[:slot] + [Sa] + args[slot + 1:])
            if v:
                vals[t] = v
        return Cochain(p, n, self.Vn, vals)

    def act_on_c1_vector(self, j: int, b: list) -> list:
        return self.act_on_cochain(j, Cochain.from_vector(1, self.data.n, self.Vn, b)).vector()

    def d_n_of_value(self, v) -> list:
        """The 1-cochain m -> m.v on n, as a C1(n,V) vector."""
        out = []
        for a in range(self.dn):
            out.extend(self.Vn.act(a, list(v)))
        return out

    # -- restrictions ----------------------------------------------------------------
    def restrict_n(self, omega: Cochain) -> Cochain | None:
        if omega.p > self.dn:
            return None
        vals = {t: v for t, v in omega.values.items() if all(k < self.dn for k in t)}
        return Cochain(omega.p, self.data.n, self.Vn, vals)

    def restrict_g(self, omega: Cochain) -> Cochain | None:
        if omega.p > self.dg:
            return None
        dn = self.dn
        vals = {tuple(k - dn for k in t): v for t, v in omega.values.items() if all(k >= dn for k in t)}
        return Cochain(omega.p, self.data.g, self.Vg, vals)

    def w_cochain(self, p: int, values: dict) -> Cochain | None:
        """A cochain on g with values in Z1(n,V) from C1(n,V)-valued entries."""
        if p > self.dg or self.W.dim == 0:
            return None
        return Cochain(p, self.data.g, self.W, {t: self.Z1.coords(v) for t, v in values.items()})


def _invariants(V: ModuleAction, idx: range) -> list[list]:
    rows = {}
    d = V.dim
    for k, a in enumerate(idx):
        for r in range(d):
            row = V._sparse[a][r]
            if row:
                rows[k * d + r] = dict(row)
    return kernel_basis(SparseMatrix(len(idx) * d, d, rows))


def _sub_action(g: LieAlgebra, sub: _SubmoduleCoords, act) -> ModuleAction:
    k = sub.dim
    mats = []
    for j in range(g.dim):
        cols = [sub.coords(act(j, b)) for b in sub.basis]
        mats.append([[cols[c][r] for c in range(k)] for r in range(k)])
    return ModuleAction(g, k, mats, validate=False)


def setup(data: SemidirectData, V: ModuleAction | None = None) -> SemidirectSetup:
    h = semidirect_sum(data)
    if V is None:
        V = trivial_module(h)
    if V.algebra != h:
        raise ValidationError("V must be a module over the semidirect sum")
    n, g = data.n, data.g
    dn, dg, dv = n.dim, g.dim, V.dim
    S = [_frac_matrix(M) for M in data.S]
    Vn = ModuleAction(n, dv, V.rho[:dn], label="V|n")
    Vg = ModuleAction(g, dv, V.rho[dn:], label="V|g")
    c1 = dn * dv
    if dn >= 2:
        z1 = kernel_basis(d_matrix(n, Vn, 1))
    else:
        z1 = [[Fraction(int(i == j)) for i in range(c1)] for j in range(c1)]
    Z1 = _SubmoduleCoords(z1, c1)
    vinv = _SubmoduleCoords(_invariants(V, range(dn)), dv)
    partial = SemidirectSetup(data, h, V, Vn, Vg, S, Z1, None, vinv, None, None, None, None, None, None, None)
    W = _sub_action(g, Z1, partial.act_on_c1_vector)
    W.label = "Z1(n,V)"
    partial.W = W
    partial.VinvMod = _sub_action(g, vinv, lambda j, v: Vg.act(j, v))
    partial.H2h = _cohom(h, V, 2)
    partial.H2n = _cohom(n, Vn, 2)
    partial.H2g = _cohom(g, Vg, 2)
    partial.H1gW = _cohom(g, W, 1)
    partial.H2gW = _cohom(g, W, 2)
    partial.H2gVinv = _cohom(g, partial.VinvMod, 2)
    return partial


# -- restriction and inflation -------------------------------------------------------

def restriction_maps(ctx: SemidirectSetup) -> tuple[list[list], list[list]]:
    """Matrices of R_n and R_g on the H2(h,V) representatives (one column per class)."""
    Rn, Rg = [], []
    for w in ctx.H2h.representatives:
        Rn.append(_coords(ctx.H2n, ctx.restrict_n(w)))
        Rg.append(_coords(ctx.H2g, ctx.restrict_g(w)))
    return _transpose(Rn, ctx.H2n.dim_H), _transpose(Rg, ctx.H2g.dim_H)


def _transpose(cols: list[list], nrows: int) -> list[list]:
    return [[c[r] for c in cols] for r in range(nrows)]


def inflate(ctx: SemidirectSetup, f: Cochain) -> Cochain:
    """I(f) = f o (pr_g x pr_g) with values pushed from V^n into V."""
    dn = ctx.dn
    vals = {tuple(dn + k for k in t): ctx.Vinv.embed(list(v)) for t, v in f.values.items()}
    return Cochain(f.p, ctx.h, ctx.V, vals)


@dataclass
class InflationCheck:
    dim_source: int
    ri_zero: bool
    rg_is_inclusion: bool
    failure: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.ri_zero and self.rg_is_inclusion


def inflation_check(ctx: SemidirectSetup) -> InflationCheck:
    """R_n o I = 0 and R_g o I = the map induced by V^n -> V, on every basis class."""
    ri, rg = True, True
    failure = None
    for k, f in enumerate(ctx.H2gVinv.representatives):
        w = inflate(ctx, f)
        if ce_d(w):
            raise InconsistencyError("inflated class is not a cocycle", witness=k)
        if any(_coords(ctx.H2n, ctx.restrict_n(w))):
            ri, failure = False, ("R_n I", k)
        pushed = Cochain(2, ctx.data.g, ctx.Vg, {t: ctx.Vinv.embed(list(v)) for t, v in f.values.items()})
        if _coords(ctx.H2g, ctx.restrict_g(w)) != _coords(ctx.H2g, pushed):
            rg, failure = False, ("R_g I", k)
    return InflationCheck(ctx.H2gVinv.dim_H, ri, rg, failure)


# -- bracket group ---------------------------------------------------------------------

@dataclass
class BracketGroup:
    """Basis (H2(n,V) coordinates) of the classes admitting theta with d_n theta(x) = x.f."""

    basis: list[list]
    thetas: list[list]  # per basis vector: one C1(n,V) vector per basis element of g
    ambient: int

    @property
    def dim(self) -> int:
        return len(self.basis)


def _class_cochain(ctx: SemidirectSetup, coords) -> Cochain:
    return ctx.H2n.from_coordinates(coords)


def solve_theta(ctx: SemidirectSetup, f: Cochain) -> list[list] | None:
    """theta(x_j) in C1(n,V) with d_n theta(x_j) = x_j.f, or None if some equation fails."""
    n = ctx.data.n
    D1 = d_matrix(n, ctx.Vn, 1)
    out = []
    for j in range(ctx.dg):
        res = solve(D1, ctx.act_on_cochain(j, f).vector())
        if not res:
            return None
        out.append(res.solution)
    return out


def bracket_group(ctx: SemidirectSetup) -> BracketGroup:
    """One joint linear system in (c, theta(x_1), .., theta(x_dg)); project its kernel onto c."""
    r = ctx.H2n.dim_H
    if r == 0:
        return BracketGroup([], [], 0)
    n = ctx.data.n
    D1 = d_matrix(n, ctx.Vn, 1)
    m1, m2 = D1.ncols, D1.nrows
    reps = ctx.H2n.representatives
    acted = [[ctx.act_on_cochain(j, f).vector() for f in reps] for j in range(ctx.dg)]
    rows: dict[int, dict] = {}
    for j in range(ctx.dg):
        for i, row in D1.rows.items():
            rows.setdefault(j * m2 + i, {}).update({r + j * m1 + c: a for c, a in row.items()})
        for k in range(r):
            for i, a in enumerate(acted[j][k]):
                if a:
                    rows.setdefault(j * m2 + i, {})[k] = -a
    A = SparseMatrix(ctx.dg * m2, r + ctx.dg * m1, rows)
    sub = Subspace(r, (v[:r] for v in kernel_basis(A)))
    basis = sub.basis()
    thetas = []
    for b in basis:
        th = solve_theta(ctx, _class_cochain(ctx, b))
        if th is None:
            raise InconsistencyError("bracket-group basis vector has no theta witness")
        thetas.append(th)
    return BracketGroup(basis, thetas, r)


def invariant_classes(ctx: SemidirectSetup) -> list[list]:
    """H2(n,V)^g: kernel of [f] -> ([x_j.f])_j, computed from class coordinates."""
    r = ctx.H2n.dim_H
    if r == 0:
        return []
    cols = []
    for f in ctx.H2n.representatives:
        col = []
        for j in range(ctx.dg):
            col.extend(ctx.H2n.class_coordinates(ctx.act_on_cochain(j, f)))
        cols.append(col)
    return kernel_basis(SparseMatrix.from_columns(cols, r * ctx.dg))


def bracket_equals_invariant(ctx: SemidirectSetup, bg: BracketGroup | None = None) -> bool:
    bg = bg or bracket_group(ctx)
    r = ctx.H2n.dim_H
    return Subspace(r, bg.basis).equals(Subspace(r, invariant_classes(ctx)))


# -- gamma, eta, phi ---------------------------------------------------------------------

def d_g_theta(ctx: SemidirectSetup, theta: list[list]) -> Cochain | None:
    """(d_g theta)(x_i,x_j) = x_i.theta(x_j) - x_j.theta(x_i) - theta([x_i,x_j]), Z1-valued."""
    g = ctx.data.g
    vals = {}
    for i, j in combinations(range(g.dim), 2):
        v = [a - b for a, b in zip(ctx.act_on_c1_vector(i, theta[j]), ctx.act_on_c1_vector(j, theta[i]))]
        for k, c in g.bracket_sparse(i, j).items():
            v = [a - c * b for a, b in zip(v, theta[k])]
        if any(v):
            vals[(i, j)] = v
    return ctx.w_cochain(2, vals)


def gamma_map(ctx: SemidirectSetup, coords, theta: list[list] | None = None) -> list:
    """[f] -> [d_g theta] in H2(g, Z1(n,V)); theta is solved for when not supplied."""
    f = _class_cochain(ctx, coords) if ctx.H2n.dim_H else None
    if theta is None:
        theta = solve_theta(ctx, f) if f is not None else [[ZERO] * (ctx.dn * ctx.V.dim)] * ctx.dg
        if theta is None:
            raise ValidationError("class is not in the bracket group")
    return _coords(ctx.H2gW, d_g_theta(ctx, theta))


def eta_map(ctx: SemidirectSetup, coords) -> list:
    """[f_g] -> [-d_n o f_g] in H2(g, Z1(n,V)), where (d_n v)(m) = m.v."""
    if not ctx.H2g.dim_H:
        return [ZERO] * ctx.H2gW.dim_H
    f = ctx.H2g.from_coordinates(coords)
    vals = {t: [-a for a in ctx.d_n_of_value(v)] for t, v in f.values.items()}
    return _coords(ctx.H2gW, ctx.w_cochain(2, vals))


def omega_theta(ctx: SemidirectSetup, theta: Cochain) -> Cochain:
    """omega((n1,x1),(n2,x2)) = theta(x1)(n2) - theta(x2)(n1)."""
    dn, dv = ctx.dn, ctx.V.dim
    vals = {}
    for j in range(ctx.dg):
        b = ctx.Z1.embed(list(theta.on_basis((j,))))
        for a in range(dn):
            chunk = b[a * dv:(a + 1) * dv]
            if any(chunk):
                vals[(a, dn + j)] = [-x for x in chunk]
    return Cochain(2, ctx.h, ctx.V, vals)


@dataclass
class PhiResult:
    omega: Cochain
    coords: list
    witness: Cochain | None = None  # beta-tilde with d_h beta-tilde = omega when theta = x.beta


def phi_map(ctx: SemidirectSetup, theta: Cochain) -> PhiResult:
    if ctx.dg >= 2 and ce_d(theta):
        raise NotACocycle("theta is not a 1-cocycle on g")
    w = omega_theta(ctx, theta)
    if ce_d(w):
        raise InconsistencyError("omega_theta is not a 2-cocycle")
    return PhiResult(w, _coords(ctx.H2h, w))


def phi_of_coboundary(ctx: SemidirectSetup, beta_coords) -> PhiResult:
    """theta = x.beta for beta in Z1(n,V): omega_theta = d_h beta-tilde, beta-tilde zero on g."""
    g = ctx.data.g
    beta0 = Cochain(0, g, ctx.W, {(): beta_coords})
    theta = ce_d(beta0)
    res = phi_map(ctx, theta)
    b = ctx.Z1.embed(list(beta_coords))
    dv = ctx.V.dim
    vals = {(a,): b[a * dv:(a + 1) * dv] for a in range(ctx.dn) if any(b[a * dv:(a + 1) * dv])}
    tilde = Cochain(1, ctx.h, ctx.V, vals)
    if ce_d(tilde) != res.omega:
        raise InconsistencyError("d_h beta-tilde differs from omega_theta")
    res.witness = tilde
    return res


def gamma_well_defined(ctx: SemidirectSetup, bg: BracketGroup, rng) -> bool:
    """gamma is unchanged under theta -> theta + Z1-valued cochain and f -> f + d_n beta."""
    n = ctx.data.n
    m1 = ctx.dn * ctx.V.dim
    for b, th in zip(bg.basis, bg.thetas):
        base = gamma_map(ctx, b, th)
        shifted = [[a + c for a, c in zip(t, ctx.Z1.embed([Fraction(rng.randint(-3, 3)) for _ in range(ctx.Z1.dim)]))]
                   for t in th]
        if gamma_map(ctx, b, shifted) != base:
            return False
        beta = Cochain.from_vector(1, n, ctx.Vn, [Fraction(rng.randint(-3, 3)) for _ in range(m1)])
        f2 = _class_cochain(ctx, b) + ce_d(beta)
        th2 = [[a + c for a, c in zip(t, ctx.act_on_c1_vector(j, beta.vector()))] for j, t in enumerate(th)]
        for j in range(ctx.dg):
            if ce_d(Cochain.from_vector(1, n, ctx.Vn, th2[j])) != ctx.act_on_cochain(j, f2):
                return False
        if _coords(ctx.H2gW, d_g_theta(ctx, th2)) != base:
            return False
    return True


# -- the exact sequence ---------------------------------------------------------------------

@dataclass
class ExactSequenceReport:
    dims: dict
    phi: list[list]
    R: list[list]
    gamma_minus_eta: list[list]
    exact_at_h2h: bool
    exact_at_middle: bool
    bracket_equals_invariant: bool
    inflation: InflationCheck
    corollary_applies: bool
    restriction_bijective: bool
    counterexample: dict | None = None
    label: str = ""
    notes: list = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.exact_at_h2h and self.exact_at_middle


def _mat_from_cols(cols: list[list], nrows: int) -> list[list]:
    return _transpose(cols, nrows)


def _kernel(M: list[list], ncols: int) -> list[list]:
    if ncols == 0:
        return []
    rows = {i: {j: a for j, a in enumerate(r) if a} for i, r in enumerate(M)}
    return kernel_basis(SparseMatrix(len(M), ncols, rows))


def _compare(dim: int, left: list[list], right: list[list]):
    """Double inclusion; returns (equal, vector of one side not in the other, which side)."""
    L, Rs = Subspace(dim, left), Subspace(dim, right)
    for v in L.basis():
        if not Rs.contains(v):
            return False, v, "left"
    for v in Rs.basis():
        if not L.contains(v):
            return False, v, "right"
    return True, None, None


def verify_exact_sequence(data: SemidirectData, V: ModuleAction | None = None, label: str = "") -> ExactSequenceReport:
    ctx = setup(data, V)
    h2h, h2n, h2g = ctx.H2h.dim_H, ctx.H2n.dim_H, ctx.H2g.dim_H
    h1w, h2w = ctx.H1gW.dim_H, ctx.H2gW.dim_H
    bg = bracket_group(ctx)

    phi_cols = [phi_map(ctx, th).coords for th in ctx.H1gW.representatives]
    phi = _mat_from_cols(phi_cols, h2h)
    Rn, Rg = restriction_maps(ctx)
    R = Rn + Rg
    ge_cols = [gamma_map(ctx, b, th) for b, th in zip(bg.basis, bg.thetas)]
    ge_cols += [[-a for a in eta_map(ctx, e)] for e in _unit_vectors(h2g)]
    GE = _mat_from_cols(ge_cols, h2w)

    counter = None
    ok1, v1, side1 = _compare(h2h, phi_cols, _kernel(R, h2h))
    if not ok1:
        counter = {"node": "H2(h,V)", "vector": v1, "in": "im(phi)" if side1 == "left" else "ker(R)"}
    im_R = [[R[r][c] for r in range(h2n + h2g)] for c in range(h2h)]
    ker_GE = []
    for v in _kernel(GE, bg.dim + h2g):
        top = [ZERO] * h2n
        for a, b in zip(v[:bg.dim], bg.basis):
            top = [x + a * y for x, y in zip(top, b)]
        ker_GE.append(top + list(v[bg.dim:]))
    ok2, v2, side2 = _compare(h2n + h2g, im_R, ker_GE)
    if not ok2 and counter is None:
        counter = {"node": "H2(n)^[g] + H2(g)", "vector": v2, "in": "im(R)" if side2 == "left" else "ker(gamma-eta)"}

    infl = inflation_check(ctx)
    v_is_n_trivial = ctx.Vinv.dim == ctx.V.dim
    applies = is_perfect(data.n) and v_is_n_trivial
    rk = rank(SparseMatrix(len(R), h2h, {i: {j: a for j, a in enumerate(r) if a} for i, r in enumerate(R)})) if R else 0
    bijective = rk == h2h and rk == bg.dim + h2g
    dims = {"H1(g,Z1(n,V))": h1w, "H2(h,V)": h2h, "H2(n,V)": h2n, "H2(n,V)^[g]": bg.dim,
            "H2(g,V)": h2g, "H2(g,Z1(n,V))": h2w, "H2(g,V^n)": ctx.H2gVinv.dim_H}
    return ExactSequenceReport(dims, phi, R, GE, ok1, ok2, bracket_equals_invariant(ctx, bg), infl,
                               applies, bijective, counter, label)


def _unit_vectors(k: int) -> list[list]:
    return [[Fraction(int(i == j)) for i in range(k)] for j in range(k)]


# -- standard instances -----------------------------------------------------------------------

def grading_instance() -> SemidirectData:
    """heisenberg(3) with abelian(1) acting by x -> x, y -> y, z -> 2z."""
    from .liealg import abelian, heisenberg
    D = [[1, 0, 0], [0, 1, 0], [0, 0, 2]]
    return SemidirectData(heisenberg(), abelian(1), (_frac_matrix(D),))


def rotation_instance() -> SemidirectData:
    from .liealg import abelian
    return SemidirectData(abelian(2), abelian(1), (_frac_matrix([[0, -1], [1, 0]]),))


def shear_instance() -> SemidirectData:
    """abelian(2) with abelian(1) acting by the nilpotent shear e2 -> e1."""
    from .liealg import abelian
    return SemidirectData(abelian(2), abelian(1), (_frac_matrix([[0, 1], [0, 0]]),))


def sl2_adjoint_instance() -> SemidirectData:
    """sl(2) with sl(2) acting by the adjoint action."""
    from .liealg import sl
    s = sl(2)
    return SemidirectData(s, s, tuple(_frac_matrix(s.ad(i)) for i in range(3)))


def sl2_torus_instance() -> SemidirectData:
    """sl(2) with abelian(1) acting by ad(h)."""
    from .liealg import abelian, sl
    s = sl(2)
    return SemidirectData(s, abelian(1), (_frac_matrix(s.ad(0)),))


def abelian_trivial_instance() -> SemidirectData:
    """abelian(1) with abelian(2) acting trivially, so h = abelian(3)."""
    from .liealg import abelian
    zero = _frac_matrix([[0]])
    return SemidirectData(abelian(1), abelian(2), (zero, zero))


def character_module(data: SemidirectData) -> ModuleAction:
    """One-dimensional h-module on which the first basis element of n acts by 1, all else by 0."""
    h = semidirect_sum(data)
    return ModuleAction(h, 1, [[[Fraction(int(i == 0))]] for i in range(h.dim)], label="character")


def standard_instances() -> dict:
    """name -> (SemidirectData, module or None for the trivial module)."""
    from .liealg import adjoint_module
    shear = shear_instance()
    return {"heisenberg-grading": (grading_instance(), None),
            "abelian2-rotation": (rotation_instance(), None),
            "abelian2-shear": (shear, None),
            "abelian2-shear-adjoint": (shear, adjoint_module(semidirect_sum(shear))),
            "abelian-trivial": (abelian_trivial_instance(), None),
            "abelian-character": (abelian_trivial_instance(), character_module(abelian_trivial_instance())),
            "sl2-adjoint": (sl2_adjoint_instance(), None),
            "sl2-torus": (sl2_torus_instance(), None)}
