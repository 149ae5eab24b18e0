"""Polynomial vector fields on T^r, the crossed homomorphism theta and Gelfand-Fuks type cocycles.

Fields are written X = sum_i f_i d_i with d_i = t_i d/dt_i the log derivations,
so the Witt basis of V(T^1) is L_m = t^m d_1 and [L_m, L_n] = (n - m) L_{m+n}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Callable, Sequence

from .ce import perm_sign
from .errors import NotClosed, NotHomogeneous, ValidationError
from .exactalg import LaurentPoly, SparseMatrix, Vec, add_exp, box, solve, zero_exp
from .exactalg.linalg import ZERO, Echelon, dense_of, verify_certificate, verify_solution
from .liealg import gl
from .mapalg import Cocycle2Map, MappingAlgebra, MappingElement, type1_cocycle, value_lie_derivative
from .torusforms import ReducedOneForm, TorusForm, derham_d, reduce_oneform, reduced_basis, wedge


class VectorField:
    __slots__ = ("r", "components")

    def __init__(self, components: Sequence[LaurentPoly]):
        comps = tuple(components)
        if not comps:
            raise ValidationError("a vector field needs at least one component")
        r = comps[0].r
        if len(comps) != r or any(c.r != r for c in comps):
            raise ValidationError("vector field needs r components on T^r")
        self.r = r
        self.components = comps

    @classmethod
    def zero(cls, r: int) -> "VectorField":
        return cls([LaurentPoly.zero(r)] * r)

    @classmethod
    def monomial(cls, r: int, i: int, exp, coeff=Fraction(1)) -> "VectorField":
        """coeff * t^exp d_i (0-based axis)."""
        return cls([LaurentPoly(r, {tuple(exp): coeff}) if j == i else LaurentPoly.zero(r) for j in range(r)])

    def apply(self, f: LaurentPoly) -> LaurentPoly:
        out = LaurentPoly.zero(self.r)
        for i, c in enumerate(self.components):
            if c:
                out = out + c * f.partial(i)
        return out

    def bracket(self, other: "VectorField") -> "VectorField":
        return VectorField([self.apply(g) - other.apply(f) for f, g in zip(self.components, other.components)])

    def __add__(self, other):
        return VectorField([a + b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return VectorField([-a for a in self.components])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        return VectorField([a * s for a in self.components])

    __rmul__ = __mul__

    def __bool__(self):
        return any(self.components)

    def __eq__(self, other):
        if isinstance(other, VectorField):
            return self.components == other.components
        if isinstance(other, int) and other == 0:
            return not self
        return NotImplemented

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        parts = [f"({c})d{i + 1}" for i, c in enumerate(self.components) if c]
        return " + ".join(parts) if parts else "0"

    def degrees(self) -> set:
        return {a for c in self.components for a in c.terms}


def witt(m: int) -> VectorField:
    """L_m = t^m (t d/dt)."""
    return VectorField.monomial(1, 0, (m,))


@dataclass(eq=False)
class VFieldAlgebra:
    """V(T^r) as a bracket domain for evaluator cocycles."""

    r: int

    def bracket(self, X: VectorField, Y: VectorField) -> VectorField:
        return X.bracket(Y)

    def zero(self) -> VectorField:
        return VectorField.zero(self.r)

    def basis(self, N: int) -> list[VectorField]:
        return [VectorField.monomial(self.r, i, a) for a in box(self.r, N) for i in range(self.r)]

    def basis_index(self, N: int) -> dict:
        """(axis, exponent) -> position in ``basis(N)``."""
        return {(i, a): k for k, (a, i) in enumerate((a, i) for a in box(self.r, N) for i in range(self.r))}


def act_field(X: VectorField, value):
    return value_lie_derivative(value, X.components)


# ---------------------------------------------------------------- theta and trace cocycles


def crossed_hom_theta(X: VectorField) -> list[list[LaurentPoly]]:
    """theta(X)_ij = -d_j f_i, defined by L_X delta = -theta(X) delta for the log frame."""
    r = X.r
    return [[-X.components[i].partial(j) for j in range(r)] for i in range(r)]


def _pmat_mul(A, B):
    n = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(n)), LaurentPoly.zero(A[0][0].r)) for j in range(n)]
            for i in range(n)]


def _pmat_trace(A) -> LaurentPoly:
    return sum((A[i][i] for i in range(len(A))), LaurentPoly.zero(A[0][0].r))


def crossed_hom_failure(X: VectorField, Y: VectorField):
    """theta([X,Y]) - (X.theta(Y) - Y.theta(X) + [theta(X), theta(Y)]); None when it vanishes."""
    tX, tY = crossed_hom_theta(X), crossed_hom_theta(Y)
    lhs = crossed_hom_theta(X.bracket(Y))
    XY, YX = _pmat_mul(tX, tY), _pmat_mul(tY, tX)
    r = X.r
    for i in range(r):
        for j in range(r):
            rhs = X.apply(tY[i][j]) - Y.apply(tX[i][j]) + XY[i][j] - YX[i][j]
            if lhs[i][j] != rhs:
                return (i, j), lhs[i][j], rhs
    return None


def _d_matrix(A):
    return [[derham_d(TorusForm.function(f)) for f in row] for row in A]


@lru_cache(maxsize=8192)
def _theta_data(X: VectorField) -> tuple:
    """theta(X) as functions, as 0-forms and its differential; reused across cocycle evaluations."""
    th = crossed_hom_theta(X)
    return th, _fn_mat(th), _d_matrix(th)


def _trace_wedge(mats) -> TorusForm:
    """Tr(A_1 ^ ... ^ A_k) for matrices of scalar forms."""
    n = len(mats[0])
    cur = mats[0]
    for B in mats[1:]:
        cur = [[sum((wedge(cur[i][k], B[k][j]) for k in range(n) if cur[i][k] and B[k][j]),
                    _zero_like(cur[0][0], B[0][0]))
                for j in range(n)] for i in range(n)]
    return sum((cur[i][i] for i in range(1, n)), cur[0][0])


def _zero_like(a: TorusForm, b: TorusForm) -> TorusForm:
    return TorusForm.zero(a.p + b.p, a.r, 1)


def _fn_mat(A):
    return [[TorusForm.function(f) for f in row] for row in A]


def psi_k(k: int, *fields: VectorField) -> TorusForm:
    """Psi_k = sum_sigma sgn Tr(d theta(X_s1) ^ .. ^ d theta(X_sk))."""
    if k not in (1, 2) or len(fields) != k:
        raise ValidationError("psi_k is implemented for k in {1, 2} with k arguments")
    dts = [_theta_data(X)[2] for X in fields]
    r = fields[0].r
    total = TorusForm.zero(k, r, 1)
    for perm in permutations(range(k)):
        term = _trace_wedge([dts[i] for i in perm])
        total = total + (term if perm_sign(perm) > 0 else -term)
    return total


def phi_k(k: int, *fields: VectorField) -> LaurentPoly:
    """Phi_k = sum_sigma sgn Tr(theta(X_s1) ... theta(X_s(2k-1)))."""
    if k not in (1, 2) or len(fields) != 2 * k - 1:
        raise ValidationError("phi_k is implemented for k in {1, 2} with 2k-1 arguments")
    ths = [crossed_hom_theta(X) for X in fields]
    total = LaurentPoly.zero(fields[0].r)
    for perm in permutations(range(len(fields))):
        M = ths[perm[0]]
        for i in perm[1:]:
            M = _pmat_mul(M, ths[i])
        t = _pmat_trace(M)
        total = total + (t if perm_sign(perm) > 0 else -t)
    return total


def psibar_k(k: int, *fields: VectorField):
    """Psibar_1(X) = Tr theta(X) (a function); Psibar_2 = [Tr(theta1 d theta2 - theta2 d theta1)]."""
    if len(fields) != k:
        raise ValidationError("psibar_k takes k arguments")
    if k == 1:
        return _pmat_trace(_theta_data(fields[0])[0])
    if k == 2:
        _, f1, d1 = _theta_data(fields[0])
        _, f2, d2 = _theta_data(fields[1])
        a = _trace_wedge([f1, d2])
        b = _trace_wedge([f2, d1])
        return reduce_oneform(a - b)
    raise ValidationError("psibar_k is implemented for k in {1, 2}")


def psibar1_wedge_psi1(X: VectorField, Y: VectorField) -> ReducedOneForm:
    """(Psibar_1 ^ Psi_1)(X, Y) = [Psibar_1(X) Psi_1(Y) - Psibar_1(Y) Psi_1(X)]."""
    a = psi_k(1, Y).times_function(psibar_k(1, X))
    b = psi_k(1, X).times_function(psibar_k(1, Y))
    return reduce_oneform(a - b)


def _as_fn(f: LaurentPoly) -> TorusForm:
    return TorusForm.function(f) if f else TorusForm.zero(0, f.r, 1)


def vfield_cocycle(r: int, target: str, dv: int, fn: Callable, label: str, action: bool = True) -> Cocycle2Map:
    act = act_field if action else None
    return Cocycle2Map(VFieldAlgebra(r), target, dv, fn, act, label)


def psibar2_cocycle(r: int) -> Cocycle2Map:
    return vfield_cocycle(r, "reduced1", 1, lambda X, Y: psibar_k(2, X, Y), "psibar2")


def psi2_cocycle(r: int) -> Cocycle2Map:
    return vfield_cocycle(r, "form2", 1, lambda X, Y: psi_k(2, X, Y), "psi2")


def psibar1_wedge_psi1_cocycle(r: int) -> Cocycle2Map:
    return vfield_cocycle(r, "reduced1", 1, psibar1_wedge_psi1, "psibar1^psi1")


# ---------------------------------------------------------------- pull-backs


@lru_cache(maxsize=8192)
def theta_element(X: VectorField) -> MappingElement:
    """theta(X) as an element of gl_r (x) Laurent (basis E_ij row-major)."""
    th = crossed_hom_theta(X)
    r = X.r
    terms: dict = {}
    for i in range(r):
        for j in range(r):
            for a, c in th[i][j].terms.items():
                terms.setdefault(a, {})[i * r + j] = c
    return MappingElement(r, terms)


def gl_mapping_algebra(r: int) -> MappingAlgebra:
    return MappingAlgebra(gl(r), r)


def pullback_cocycle(omega: Cocycle2Map) -> Cocycle2Map:
    """(theta^* omega)(X, Y) = omega(theta(X), theta(Y)) for a cocycle on gl_r (x) Laurent."""
    g = omega.domain
    if not isinstance(g, MappingAlgebra) or g.k.dim != g.r * g.r:
        raise ValidationError("pull-back needs a cocycle on the mapping algebra of gl_r")
    ev = omega.evaluate
    return vfield_cocycle(g.r, omega.target, omega.dv, lambda X, Y: ev(theta_element(X), theta_element(Y)),
                          f"theta*({omega.label})")


def kappa_trace(r: int, kind: str):
    from .ce import trace_form

    return trace_form(gl(r), kind)


def virasoro_cocycle() -> Cocycle2Map:
    """omega(f d, g d) = constant term of (D f D^2 g - D g D^2 f), D = t d/dt; (L_m, L_-m) -> 2 m^3."""
    def ev(X: VectorField, Y: VectorField) -> Vec:
        f, g = X.components[0], Y.components[0]
        Df, Dg = f.partial(0), g.partial(0)
        h = Df * Dg.partial(0) - Dg * Df.partial(0)
        return Vec((Fraction(h.constant_term()),))

    return vfield_cocycle(1, "scalar", 1, ev, "virasoro", action=False)


def virasoro_shift_potential(m0: Fraction = Fraction(-1)):
    """1-cochain beta with beta(L_0) = m0; omega + d beta has (L_m, L_-m) -> 2(m^3 - m) for m0 = -1."""
    def beta(X: VectorField) -> Vec:
        return Vec((X.components[0].constant_term() * m0,))
    return beta


def coboundary_of(beta: Callable, domain, act: Callable | None, target: str, dv: int) -> Cocycle2Map:
    """(d beta)(X, Y) = X.beta(Y) - Y.beta(X) - beta([X, Y])."""
    def ev(X, Y):
        val = -beta(domain.bracket(X, Y))
        if act is not None:
            val = val + act(X, beta(Y)) - act(Y, beta(X))
        return val
    return Cocycle2Map(domain, target, dv, ev, act, "d beta")


def transfer_cocycle(omega: TorusForm) -> Cocycle2Map:
    """omega^[2](X, Y) = [i_Y i_X omega] for a closed (p+2)-form, p <= 1."""
    p = omega.p - 2
    if p not in (0, 1):
        raise ValidationError("transfer cocycles are implemented for 2- and 3-forms")
    if omega.p < omega.r:
        dw = derham_d(omega)
        if dw:
            raise NotClosed("omega is not closed", witness=dw.items()[0])
    if p == 0:
        fn = lambda X, Y: omega.contract(X.components).contract(Y.components)  # noqa: E731
        target = "function"
    else:
        fn = lambda X, Y: reduce_oneform(omega.contract(X.components).contract(Y.components))  # noqa: E731
        target = "reduced1"
    return vfield_cocycle(omega.r, target, omega.dv, fn, f"transfer{p}")


def beta_cup_psibar1(beta: TorusForm | None = None) -> Cocycle2Map:
    """(X, Y) -> i_X beta Psibar_1(Y) - i_Y beta Psibar_1(X) on V(T^1), beta the closed 1-form delta by default."""
    if beta is None:
        beta = TorusForm.monomial((0,), (0,))
    r = beta.r

    def ev(X, Y):
        a = beta.contract(X.components).times_function(psibar_k(1, Y))
        b = beta.contract(Y.components).times_function(psibar_k(1, X))
        return a - b

    return vfield_cocycle(r, "function", 1, ev, "beta^psibar1")


def constant_function_cocycle(omega: Cocycle2Map) -> Cocycle2Map:
    """A scalar cocycle viewed as taking constant function values."""
    r = omega.domain.r
    ev = omega.evaluate

    def fn(X, Y):
        v = ev(X, Y)
        return TorusForm(0, r, len(v), {((), zero_exp(r)): v} if v else {})

    return vfield_cocycle(r, "function", omega.dv, fn, f"{omega.label}*1")


# ---------------------------------------------------------------- window certificates


def value_basis(target: str, r: int, dv: int, exp) -> list:
    """Basis of the homogeneous component of degree ``exp`` of a value space."""
    exp = tuple(exp)
    out = []
    if target == "scalar":
        if any(exp):
            return []
        return [Vec.unit(dv, a) for a in range(dv)]
    if target == "function":
        return [TorusForm(0, r, dv, {((), exp): Vec.unit(dv, a)}) for a in range(dv)]
    if target == "reduced1":
        axes = reduced_basis(r, exp) if any(exp) else list(range(r))
        return [ReducedOneForm(TorusForm(1, r, dv, {((i,), exp): Vec.unit(dv, a)})) for i in axes for a in range(dv)]
    if target in ("form1", "form2"):
        from itertools import combinations

        p = 1 if target == "form1" else 2
        for I in combinations(range(r), p):
            for a in range(dv):
                out.append(TorusForm(p, r, dv, {(I, exp): Vec.unit(dv, a)}))
        return out
    raise ValidationError(f"unknown target {target!r}")


def value_coords(value, target: str, r: int, dv: int, exp) -> tuple[list, bool]:
    """Coordinates of ``value`` in ``value_basis(.., exp)`` plus a flag for support outside degree exp."""
    exp = tuple(exp)
    if target == "scalar":
        if any(exp):
            return [], bool(value)
        return list(value), False
    form = value.rep if isinstance(value, ReducedOneForm) else value
    stray = any(a != exp for (_, a) in form.terms)
    coords = []
    for b in value_basis(target, r, dv, exp):
        bf = b.rep if isinstance(b, ReducedOneForm) else b
        (key, unit), = bf.terms.items()
        a = next(k for k, x in enumerate(unit) if x)
        coords.append(form.terms.get(key, Vec.zero(dv))[a])
    return coords, stray


def _field_degree(X: VectorField):
    degs = X.degrees()
    if len(degs) != 1:
        raise ValidationError("window bases consist of homogeneous fields")
    return next(iter(degs))


@dataclass
class WindowCertificate:
    """Feasible: potential values on basis fields. Infeasible: row y with y D = 0, y w != 0."""

    window: int
    feasible: bool
    potential: dict | None = None  # (axis, exponent) -> value
    certificate: list | None = None
    nrows: int = 0
    ncols: int = 0
    info: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "feasible (inconclusive at N)" if self.feasible else "infeasible"


@dataclass
class WindowSystem:
    """Coboundary equations on pairs of window-N basis fields, potentials on degrees <= 2N.

    omega is homogeneous of degree ``shift``: omega(t^a d_i, t^b d_j) has degree
    a + b + shift (checked). Potentials are taken homogeneous of the same shift,
    beta(t^a d_i) of degree a + shift; the differential preserves this grading,
    so projecting any potential to its homogeneous part loses no solutions.
    """

    r: int
    N: int
    target: str
    dv: int
    act: bool
    shift: tuple = None
    D: SparseMatrix = None
    rows: list = None  # (pair, coordinate index)
    unknowns: list = None  # ((axis, exponent), basis value)

    def build(self):
        r, N = self.r, self.N
        sh = tuple(self.shift) if self.shift is not None else zero_exp(r)
        self.shift = sh
        if self.target == "scalar" and any(sh):
            raise NotHomogeneous("scalar cocycles must have degree shift 0", witness=sh)
        V = VFieldAlgebra(r)
        pairs_basis = V.basis(N)
        pot_exps = box(r, 2 * N)
        unknowns = []
        col_of = {}
        for a in pot_exps:
            for i in range(r):
                for e, bv in enumerate(value_basis(self.target, r, self.dv, add_exp(a, sh))):
                    col_of[(i, a, e)] = len(unknowns)
                    unknowns.append(((i, a), bv))
        rows = []
        trip = []
        nb = len(pairs_basis)
        for s in range(nb):
            for t in range(s + 1, nb):
                X, Y = pairs_basis[s], pairs_basis[t]
                aX, aY = _field_degree(X), _field_degree(Y)
                iX = next(i for i, c in enumerate(X.components) if c)
                iY = next(i for i, c in enumerate(Y.components) if c)
                deg = add_exp(add_exp(aX, aY), sh)
                nco = len(value_basis(self.target, r, self.dv, deg))
                base = len(rows)
                for c in range(nco):
                    rows.append(((X, Y), deg, c))
                # -beta([X, Y])
                Z = X.bracket(Y)
                for j, comp in enumerate(Z.components):
                    coef = comp.coeff(add_exp(aX, aY))
                    if coef:
                        for e in range(nco):
                            trip.append((base + e, col_of[(j, add_exp(aX, aY), e)], -coef))
                if self.act:
                    # X.beta(Y) - Y.beta(X)
                    for e, bv in enumerate(value_basis(self.target, r, self.dv, add_exp(aY, sh))):
                        cs, _ = value_coords(act_field(X, bv), self.target, r, self.dv, deg)
                        for c, x in enumerate(cs):
                            if x:
                                trip.append((base + c, col_of[(iY, aY, e)], x))
                    for e, bv in enumerate(value_basis(self.target, r, self.dv, add_exp(aX, sh))):
                        cs, _ = value_coords(act_field(Y, bv), self.target, r, self.dv, deg)
                        for c, x in enumerate(cs):
                            if x:
                                trip.append((base + c, col_of[(iX, aX, e)], -x))
        acc: dict = {}
        for i, j, x in trip:
            acc[(i, j)] = acc.get((i, j), ZERO) + x
        self.D = SparseMatrix.from_triplets(len(rows), len(unknowns), [(i, j, x) for (i, j), x in acc.items() if x])
        self.rows = rows
        self.unknowns = unknowns
        return self

    def rhs(self, omega: Cocycle2Map) -> list:
        out = []
        cache = {}
        for (X, Y), deg, c in self.rows:
            key = (id(X), id(Y))
            if key not in cache:
                val = omega(X, Y)
                cs, stray = value_coords(val, self.target, self.r, self.dv, deg)
                if stray:
                    raise NotHomogeneous("cocycle value has components outside the degree of its arguments",
                                         witness=(repr(X), repr(Y)))
                cache[key] = cs
            out.append(cache[key][c])
        return out


def degree_shift(omega: Cocycle2Map, N: int) -> tuple:
    """The degree shift of a homogeneous cocycle, read off its first nonzero window value (0 if none)."""
    r = omega.domain.r
    B = VFieldAlgebra(r).basis(N)
    for s in range(len(B)):
        for t in range(s + 1, len(B)):
            val = omega(B[s], B[t])
            if not val or omega.target == "scalar":
                continue
            form = val.rep if isinstance(val, ReducedOneForm) else val
            degs = form.degrees()
            if len(degs) != 1:
                raise NotHomogeneous("cocycle value is not homogeneous", witness=(repr(B[s]), repr(B[t])))
            d = next(iter(degs))
            base = add_exp(_field_degree(B[s]), _field_degree(B[t]))
            return tuple(x - y for x, y in zip(d, base))
    return zero_exp(r)


def window_system(omega: Cocycle2Map, N: int, shift=None) -> WindowSystem:
    if shift is None:
        shift = degree_shift(omega, N)
    return WindowSystem(omega.domain.r, N, omega.target, omega.dv, omega.act is not None, tuple(shift)).build()


def window_coboundary_cert(omega: Cocycle2Map, N: int, shift=None) -> WindowCertificate:
    """Solve omega = d beta on the window, returning a potential or a verified infeasibility row."""
    W = window_system(omega, N, shift)
    w = W.rhs(omega)
    res = solve(W.D, w)
    if res.feasible:
        if not verify_solution(W.D, w, res.solution):
            from .errors import InconsistencyError
            raise InconsistencyError("window potential does not reproduce omega")
        pot = {}
        for x, ((i, a), bv) in zip(res.solution, W.unknowns):
            if x:
                key = (i, a)
                pot[key] = pot[key] + bv * x if key in pot else bv * x
        return WindowCertificate(N, True, potential=pot, nrows=W.D.nrows, ncols=W.D.ncols,
                                 info={"shift": W.shift})
    if not verify_certificate(W.D, w, res.certificate):
        from .errors import InconsistencyError
        raise InconsistencyError("infeasibility certificate failed re-verification")
    y = res.certificate
    yw = sum((a * b for a, b in zip(y, w)), ZERO)
    return WindowCertificate(N, False, certificate=y, nrows=W.D.nrows, ncols=W.D.ncols,
                             info={"y.w": yw, "shift": W.shift})


@dataclass
class IndependenceCertificate:
    """Rows Y with Y D = 0 and Y W = I: no nonzero combination of the cocycles is a window coboundary."""

    window: int
    independent: bool
    rows: list | None = None
    D: SparseMatrix | None = None
    W: list | None = None  # columns, one per cocycle
    dependency: list | None = None

    def verify(self) -> bool:
        if not self.independent:
            return False
        k = len(self.W)
        for r, y in enumerate(self.rows):
            if any(self.D.left_apply(y)):
                return False
            for j in range(k):
                if sum((a * b for a, b in zip(y, self.W[j])), ZERO) != (1 if r == j else 0):
                    return False
        return True


def batch_independence(cocycles: Sequence[Cocycle2Map], N: int) -> IndependenceCertificate:
    if not cocycles:
        raise ValidationError("need at least one cocycle")
    c0 = cocycles[0]
    for c in cocycles[1:]:
        if (c.target, c.dv, c.domain.r, c.act is None) != (c0.target, c0.dv, c0.domain.r, c0.act is None):
            raise ValidationError("cocycles must share domain and value space")
    S = window_system(c0, N)
    Ws = [S.rhs(c) for c in cocycles]
    k = len(Ws)
    m = S.D.nrows
    # left kernel of D, tracked: eliminate rows [D | W] and keep combos whose D-part vanishes
    ncol = S.D.ncols
    ech = Echelon(track=True, pivot_limit=ncol)
    kernel_rows = []
    for i in range(m):
        row = dict(S.D.rows.get(i, {}))
        for j in range(k):
            if Ws[j][i]:
                row[ncol + j] = Ws[j][i]
        new, res, combo = ech.add(row, label=i)
        if not new and res:
            kernel_rows.append((dense_of(combo, m), res))
    # images y W of the candidate rows; choose k rows whose images are independent and invert
    imgs = []
    for y, _ in kernel_rows:
        imgs.append([sum((a * b for a, b in zip(y, Ws[j])), ZERO) for j in range(k)])
    sel = Echelon(track=True)
    picks = []
    for idx, v in enumerate(imgs):
        new, _, _ = sel.add({j: x for j, x in enumerate(v) if x}, label=idx)
        if new:
            picks.append(idx)
        if len(picks) == k:
            break
    if len(picks) < k:
        # find a dependency: c with W c in the column space of D
        aug = SparseMatrix.from_columns([[S.D.rows.get(i, {}).get(j, ZERO) for i in range(m)]
                                         for j in range(ncol)] + Ws, m)
        from .exactalg import kernel_basis
        dep = None
        for v in kernel_basis(aug):
            if any(v[ncol:]):
                dep = v[ncol:]
                break
        return IndependenceCertificate(N, False, D=S.D, W=Ws, dependency=dep)
    M = [imgs[i] for i in picks]  # k x k invertible
    from .exactalg.linalg import mat_inverse
    Minv = mat_inverse(M)
    Y0 = [kernel_rows[i][0] for i in picks]
    rows = []
    for r_ in range(k):
        y = [ZERO] * m
        for s in range(k):
            c = Minv[r_][s]
            if c:
                y = [a + c * b for a, b in zip(y, Y0[s])]
        rows.append(y)
    cert = IndependenceCertificate(N, True, rows=rows, D=S.D, W=Ws)
    if not cert.verify():
        from .errors import InconsistencyError
        raise InconsistencyError("independence certificate failed re-verification")
    return cert
