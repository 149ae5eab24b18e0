"""Fixed-point subalgebras of k (x) Laurent under finite symmetry groups (multiloop algebras).

A symmetry generator tau acts on the torus by t -> eps * t^A (A in GL_r(Z),
eps a vector of roots of unity) and on k by an automorphism sigma.  The
fixed-point condition f(tau t) = sigma(f(t)) reads, on coefficients,

    sigma(x_{A^T alpha}) = eps^alpha x_alpha.

For A = I each exponent is its own orbit and the fixed algebra is graded by
Z^r; in general it is graded only by the axes fixed by every A.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .ce import BilinearFormSym
from .errors import (
    NonCommutingAutomorphisms,
    NotAutomorphism,
    NotAutomorphismOnWindow,
    NotEquivariant,
    OrderViolation,
    ValidationError,
    WindowTooSmall,
)
from .exactalg import SparseMatrix, Vec, add_exp, box, in_box, kernel_basis, zero_exp
from .exactalg.laurent import mat_exp, transpose_int
from .exactalg.linalg import ZERO, dense_solve_matrix, identity, mat_mul
from .liealg import LieAlgebra, sl
from .mapalg import Cocycle2Map, MappingAlgebra, MappingElement, type1_cocycle


def _eps_power(eps: Sequence, a: Sequence[int]):
    out = Fraction(1)
    for e, k in zip(eps, a):
        if k:
            out = out * (e ** k)
    return out


def _mat_apply(M, u: dict) -> dict:
    out: dict = {}
    for j, c in u.items():
        for i in range(len(M)):
            if M[i][j]:
                out[i] = out.get(i, ZERO) + M[i][j] * c
    return {i: c for i, c in out.items() if c}


def _det_int(A) -> int:
    n = len(A)
    if n == 1:
        return A[0][0]
    return sum((-1) ** j * A[0][j] * _det_int([row[:j] + row[j + 1:] for row in A[1:]]) for j in range(n))


@dataclass
class DeltaGenerator:
    """tau: t -> eps * t^A on the torus, sigma on k."""

    A: list
    eps: tuple
    sigma: list
    label: str = ""

    def __post_init__(self):
        self.A = [list(map(int, row)) for row in self.A]
        self.eps = tuple(self.eps)
        if _det_int(self.A) not in (1, -1):
            raise ValidationError(f"lattice map of {self.label or 'generator'} is not in GL_r(Z)")
        self.At = transpose_int(self.A)

    @property
    def diagonal(self) -> bool:
        n = len(self.A)
        return all(self.A[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))

    def _inverse(self, k):
        inv = getattr(self, "_inv", None)
        if inv is None:
            inv = dense_solve_matrix(self.sigma, identity(k.dim))
            if inv is None:
                raise NotAutomorphism(f"sigma of {self.label or 'generator'} is not invertible")
            self._inv = inv
        return inv

    def exp_image(self, a) -> tuple:
        return mat_exp(self.At, a)

    def act(self, k: LieAlgebra, xi: MappingElement) -> MappingElement:
        """(tau.xi)(t) = sigma^{-1}(xi(tau t)); xi is fixed iff tau.xi = xi."""
        inv = self._inverse(k)
        terms: dict = {}
        for a, u in xi.terms.items():
            s = _eps_power(self.eps, a)
            b = self.exp_image(a)
            v = _mat_apply(inv, u)
            cur = terms.setdefault(b, {})
            for i, c in v.items():
                cur[i] = cur.get(i, ZERO) + c * s
        return MappingElement(xi.r, terms)


def fixed_axes(gens: Sequence[DeltaGenerator], r: int) -> list[int]:
    """Axes i with A e_i = e_i and e_i^T A = e_i^T for every generator."""
    out = []
    for i in range(r):
        if all(g.A[i][j] == (1 if i == j else 0) and g.A[j][i] == (1 if i == j else 0)
               for g in gens for j in range(r)):
            out.append(i)
    return out


def exponent_orbit(gens: Sequence[DeltaGenerator], a, cap: int = 64) -> list[tuple]:
    seen = [tuple(a)]
    frontier = [tuple(a)]
    while frontier:
        nxt = []
        for b in frontier:
            for g in gens:
                c = g.exp_image(b)
                if c not in seen:
                    seen.append(c)
                    nxt.append(c)
        if len(seen) > cap:
            raise ValidationError("exponent orbits are infinite; the lattice action must have finite order")
        frontier = nxt
    return sorted(seen)


@dataclass
class GradedBasisReport:
    """Per orbit (keyed by its largest exponent): a basis of fixed elements supported on the orbit."""

    r: int
    window: int
    components: dict = field(default_factory=dict)

    def dims(self) -> dict:
        return {a: len(b) for a, b in sorted(self.components.items())}

    def dim(self, a) -> int:
        return len(self.components.get(tuple(a), []))

    def basis(self) -> list:
        return [x for a in sorted(self.components) for x in self.components[a]]


@dataclass(eq=False)
class FixedPointAlgebra:
    """(k (x) Laurent)^Delta truncated to exponents in [-N, N]^r."""

    k: LieAlgebra
    r: int
    gens: list
    window: int
    report: GradedBasisReport = None
    label: str = ""

    def __post_init__(self):
        self.ambient = MappingAlgebra(self.k, self.r)
        if self.report is None:
            self.report = _solve_components(self.k, self.r, self.gens, self.window)

    def bracket(self, u, v):
        return self.ambient.bracket(u, v)

    def zero(self):
        return MappingElement.zero(self.r)

    @property
    def diagonal(self) -> bool:
        return all(g.diagonal for g in self.gens)

    def grading_axes(self) -> list[int]:
        return fixed_axes(self.gens, self.r)

    def is_fixed(self, xi: MappingElement) -> bool:
        return all(g.act(self.k, xi) == xi for g in self.gens)

    def fixed_failure(self, xi: MappingElement):
        for g in self.gens:
            if g.act(self.k, xi) != xi:
                return g.label
        return None

    def basis(self) -> list:
        return self.report.basis()

    def dims(self) -> dict:
        return self.report.dims()

    def closure_failure(self, N: int | None = None):
        """A window pair whose bracket leaves the fixed subalgebra."""
        B = self.basis() if N is None else [x for a, bs in self.report.components.items()
                                            if in_box(a, N) for x in bs]
        for i, x in enumerate(B):
            for y in B[i:]:
                z = self.bracket(x, y)
                if not self.is_fixed(z):
                    return x, y
        return None


def _orbit_constraints(k: LieAlgebra, gens, orbit: list) -> SparseMatrix:
    n = k.dim
    pos = {b: t for t, b in enumerate(orbit)}
    rows = []
    for g in gens:
        for b in orbit:
            c = g.exp_image(b)
            s = _eps_power(g.eps, b)
            # sigma x_c - s x_b = 0
            for i in range(n):
                row = {}
                for j in range(n):
                    if g.sigma[i][j]:
                        row[pos[c] * n + j] = row.get(pos[c] * n + j, ZERO) + g.sigma[i][j]
                row[pos[b] * n + i] = row.get(pos[b] * n + i, ZERO) - s
                row = {key: v for key, v in row.items() if v}
                if row:
                    rows.append(row)
    return SparseMatrix(len(rows), len(orbit) * n, dict(enumerate(rows)))


def _solve_components(k: LieAlgebra, r: int, gens, N: int) -> GradedBasisReport:
    rep = GradedBasisReport(r, N)
    done = set()
    n = k.dim
    for a in box(r, N):
        if a in done:
            continue
        orbit = exponent_orbit(gens, a)
        done.update(orbit)
        if not all(in_box(b, N) for b in orbit):
            continue
        M = _orbit_constraints(k, gens, orbit)
        basis = []
        for v in kernel_basis(M):
            terms = {}
            for t, b in enumerate(orbit):
                u = {i: v[t * n + i] for i in range(n) if v[t * n + i]}
                if u:
                    terms[b] = u
            basis.append(MappingElement(r, terms))
        rep.components[max(orbit)] = basis
    return rep


def _check_automorphisms(k: LieAlgebra, gens):
    for g in gens:
        if not k.is_automorphism(g.sigma):
            raise NotAutomorphism(f"sigma of {g.label or 'generator'} is not an automorphism of k",
                                  witness=g.label)


def fixed_point_algebra(k: LieAlgebra, gens: Sequence[DeltaGenerator], N: int, label: str = "",
                        require_commuting: bool = True) -> FixedPointAlgebra:
    _check_automorphisms(k, gens)
    if require_commuting:
        for a, b in combinations(gens, 2):
            if mat_mul(a.sigma, b.sigma) != mat_mul(b.sigma, a.sigma):
                raise NonCommutingAutomorphisms("automorphisms do not commute", witness=(a.label, b.label))
    return FixedPointAlgebra(k, len(gens[0].A) if gens else 1, list(gens), N, label=label)


# ---------------------------------------------------------------- multiloop specs


@dataclass
class MultiloopSpec:
    orders: tuple
    zetas: tuple
    sigmas: list
    require_primitive: bool = True

    @property
    def r(self) -> int:
        return len(self.orders)

    def generators(self) -> list[DeltaGenerator]:
        r = self.r
        out = []
        for i in range(r):
            eps = tuple(1 / self.zetas[i] if j == i else Fraction(1) for j in range(r))
            out.append(DeltaGenerator(identity(r), eps, self.sigmas[i], label=f"sigma{i + 1}"))
        return out

    def validate(self, k: LieAlgebra):
        if not (len(self.zetas) == len(self.sigmas) == self.r):
            raise ValidationError("orders, roots and automorphisms must have equal length")
        one = identity(k.dim)
        for i in range(self.r):
            m, z, s = self.orders[i], self.zetas[i], self.sigmas[i]
            if len(s) != k.dim or any(len(row) != k.dim for row in s):
                raise ValidationError(f"sigma{i + 1} has the wrong shape")
            if not k.is_automorphism(s):
                raise NotAutomorphism(f"sigma{i + 1} is not an automorphism", witness=f"sigma{i + 1}")
            P = one
            for _ in range(m):
                P = mat_mul(P, s)
            if P != [[Fraction(x) for x in row] for row in one]:
                raise OrderViolation(f"sigma{i + 1}^{m} != id", witness=f"sigma{i + 1}")
            if z ** m != 1:
                raise ValidationError(f"zeta{i + 1}^{m} != 1")
            if self.require_primitive and any(z ** d == 1 for d in range(1, m)):
                raise ValidationError(f"zeta{i + 1} is not a primitive {m}-th root of unity")
        for i, j in combinations(range(self.r), 2):
            a, b = self.sigmas[i], self.sigmas[j]
            if mat_mul(a, b) != mat_mul(b, a):
                raise NonCommutingAutomorphisms(f"sigma{i + 1} and sigma{j + 1} do not commute",
                                                witness=(f"sigma{i + 1}", f"sigma{j + 1}"))


def multiloop_build(k: LieAlgebra, spec: MultiloopSpec, N: int) -> FixedPointAlgebra:
    """component(alpha) = {x : sigma_i x = zeta_i^(-alpha_i) x for all i} (x) t^alpha."""
    spec.validate(k)
    return FixedPointAlgebra(k, spec.r, spec.generators(), N, label=f"M({k.label})")


def eigen_component(k: LieAlgebra, spec: MultiloopSpec, a) -> list:
    """Independent oracle: the simultaneous eigenspace as a kernel of stacked (sigma_i - zeta_i^-a_i)."""
    rows = []
    for i in range(spec.r):
        s = spec.sigmas[i]
        lam = spec.zetas[i] ** (-a[i])
        for p in range(k.dim):
            rows.append([s[p][q] - (lam if p == q else 0) for q in range(k.dim)])
    return kernel_basis(SparseMatrix.from_dense(rows))


@dataclass
class OuterLoopStep:
    """Automorphism of the previous graded algebra: x (x) t^a -> mu^a M x (x) t^a, of order m, with root zeta."""

    M: list
    mu: tuple
    order: int
    zeta: object


def iterated_loop(k: LieAlgebra, steps: Sequence[OuterLoopStep], N: int) -> FixedPointAlgebra:
    """L(L(k, s1), s2), ... : each step adds a variable and takes fixed points of the declared automorphism."""
    gens: list[DeltaGenerator] = []
    cur: FixedPointAlgebra | None = None
    for j, st in enumerate(steps):
        r = j + 1
        if len(st.mu) != j:
            raise ValidationError(f"step {j + 1} needs one multiplier per previous variable")
        if cur is not None:
            _check_outer_step(cur, st)
        elif not k.is_automorphism(st.M):
            raise NotAutomorphismOnWindow("first step is not an automorphism of k", witness=1)
        P = identity(k.dim)
        for _ in range(st.order):
            P = mat_mul(P, st.M)
        if P != [[Fraction(x) for x in row] for row in identity(k.dim)] or st.zeta ** st.order != 1:
            raise OrderViolation(f"step {j + 1} does not have order {st.order}", witness=j + 1)
        lifted = []
        for g in gens:
            A = identity(r)
            lifted.append(DeltaGenerator(A, tuple(g.eps) + (Fraction(1),), g.sigma, g.label))
        eps = tuple(1 / m for m in st.mu) + (1 / st.zeta,)
        lifted.append(DeltaGenerator(identity(r), eps, st.M, f"step{j + 1}"))
        gens = lifted
        cur = FixedPointAlgebra(k, r, gens, N, label=f"L^{r}({k.label})")
    if cur is None:
        raise ValidationError("iterated_loop needs at least one step")
    return cur


def _check_outer_step(prev: FixedPointAlgebra, st: OuterLoopStep):
    k = prev.k

    def apply(xi: MappingElement) -> MappingElement:
        terms = {}
        for a, u in xi.terms.items():
            s = _eps_power(st.mu, a)
            terms[a] = {i: c * s for i, c in _mat_apply(st.M, u).items()}
        return MappingElement(prev.r, terms)

    B = prev.basis()
    for x in B:
        if not prev.is_fixed(apply(x)):
            raise NotAutomorphismOnWindow("step does not preserve the previous algebra", witness=repr(x))
    for i, x in enumerate(B):
        for y in B[i:]:
            if apply(prev.bracket(x, y)) != prev.bracket(apply(x), apply(y)):
                raise NotAutomorphismOnWindow("step does not respect brackets", witness=(repr(x), repr(y)))
        z = x
        for _ in range(st.order):
            z = apply(z)
        if z != x:
            raise OrderViolation("step has the wrong order on the window", witness=repr(x))


# ---------------------------------------------------------------- Klein bottle


def transpose_negation(n: int) -> list:
    """Matrix of x -> -x^T on the basis of sl(n)."""
    k = sl(n)
    flat = [[a for row in m for a in row] for m in k.matrices]
    A = SparseMatrix.from_columns(flat, n * n)
    from .exactalg import solve

    cols = []
    for m in k.matrices:
        img = [[-m[j][i] for j in range(n)] for i in range(n)]
        res = solve(A, [a for row in img for a in row])
        cols.append(res.solution)
    return [[cols[j][i] for j in range(k.dim)] for i in range(k.dim)]


def klein_generators(n: int) -> list[DeltaGenerator]:
    """tau1(t) = (-t1, t2) with sigma1 = -x^T; tau2(t) = (t1^-1, -t2) with sigma2 = id."""
    s1 = transpose_negation(n)
    one = identity(sl(n).dim)
    return [
        DeltaGenerator([[1, 0], [0, 1]], (Fraction(-1), Fraction(1)), s1, "tau1"),
        DeltaGenerator([[-1, 0], [0, 1]], (Fraction(1), Fraction(-1)), one, "tau2"),
    ]


def klein_bottle_algebra(n: int, N: int) -> FixedPointAlgebra:
    if n < 2:
        raise ValidationError("the Klein bottle algebra needs n >= 2")
    k = sl(n)
    return fixed_point_algebra(k, klein_generators(n), N, label=f"Klein(sl({n}))")


# ---------------------------------------------------------------- centroid


def fixed_ring_dim(gens: Sequence[DeltaGenerator], r: int, support: list) -> int:
    """Dimension of Delta-fixed Laurent polynomials supported on ``support`` (closed under the lattice action)."""
    pos = {b: t for t, b in enumerate(support)}
    rows = []
    for g in gens:
        for b in support:
            c = g.exp_image(b)
            if c not in pos:
                raise ValidationError("support is not closed under the lattice action")
            row = {pos[c]: Fraction(1)}
            row[pos[b]] = row.get(pos[b], ZERO) - _eps_power(g.eps, b)
            row = {key: v for key, v in row.items() if v}
            if row:
                rows.append(row)
    M = SparseMatrix(len(rows), len(support), dict(enumerate(rows)))
    return len(kernel_basis(M))


@dataclass
class CentroidReport:
    method: str
    degrees: list
    dims: dict  # degree -> centroid dimension
    fixed_ring: dict  # degree -> Delta-fixed ring dimension
    full_ring: dict  # degree -> full Laurent ring dimension
    bases: dict = field(default_factory=dict)  # degree -> list of solution vectors
    width: int = 0

    def witness_degree(self):
        """A degree where the centroid matches the fixed ring but not the full ring."""
        for d in self.degrees:
            if self.dims[d] == self.fixed_ring[d] != self.full_ring[d]:
                return d
        return None

    def matches_fixed_ring(self) -> bool:
        return all(self.dims[d] == self.fixed_ring[d] for d in self.degrees)


def _graded_centroid_degree(alg: FixedPointAlgebra, delta, N: int):
    """Honest per-degree solve: phi_a : L_a -> L_{a+delta} for a in the window."""
    comps = {a: b for a, b in alg.report.components.items() if in_box(a, N)}
    n = alg.k.dim
    blocks = {}
    ncols = 0
    for a in sorted(comps):
        b = add_exp(a, delta)
        if b in comps and comps[a] and comps[b]:
            blocks[a] = (ncols, len(comps[a]), len(comps[b]))
            ncols += len(comps[a]) * len(comps[b])

    def phi_terms(a, i):
        """Sparse column contributions of phi(basis_i of L_a) as (col, MappingElement)."""
        if a not in blocks:
            return None
        off, da, db = blocks[a]
        tgt = comps[add_exp(a, delta)]
        return [(off + i * db + j, tgt[j]) for j in range(db)]

    def coords_rows(xi_terms_list):
        rows: dict = {}
        for col, elem, s in xi_terms_list:
            for e, u in elem.terms.items():
                for c, x in u.items():
                    key = (e, c)
                    row = rows.setdefault(key, {})
                    row[col] = row.get(col, ZERO) + x * s
        return [{c: v for c, v in row.items() if v} for row in rows.values()]

    owner = {e: a for a, bs in comps.items() for e in _support(bs)}
    solvers = {}

    def decompose(z: MappingElement):
        """Coordinates of z in the component bases as (component, index, coefficient)."""
        from .exactalg import solve

        out = []
        for a in sorted({owner.get(e) for e in z.terms}, key=lambda t: (t is None, t)):
            if a is None:
                return None
            bs = comps[a]
            orb = sorted(_support(bs))
            if a not in solvers:
                vecs = [[x.terms.get(e, {}).get(c, ZERO) for e in orb for c in range(n)] for x in bs]
                solvers[a] = SparseMatrix.from_columns(vecs, len(orb) * n)
            target = [z.terms.get(e, {}).get(c, ZERO) for e in orb for c in range(n)]
            res = solve(solvers[a], target)
            if not res:
                raise ValidationError("bracket leaves the fixed subalgebra")
            out.extend((a, i, x) for i, x in enumerate(res.solution) if x)
        return out

    constrained = set()
    rows = []
    keys = sorted(comps)
    for ia, a in enumerate(keys):
        for b in keys[ia:]:
            for i, x in enumerate(comps[a]):
                for j, y in enumerate(comps[b]):
                    z = alg.bracket(x, y)
                    parts = decompose(z)
                    if parts is None:
                        continue
                    # phi[x,y] - [phi x, y] = 0 and phi[x,y] - [x, phi y] = 0
                    lhs = []
                    ok = True
                    for c, m, s in parts:
                        pt = phi_terms(c, m)
                        if pt is None:
                            ok = False
                            break
                        lhs.extend((col, el, s) for col, el in pt)
                    if not ok:
                        continue
                    px, py = phi_terms(a, i), phi_terms(b, j)
                    if px is not None:
                        terms = lhs + [(col, alg.bracket(el, y), Fraction(-1)) for col, el in px]
                        rows.extend(coords_rows(terms))
                        constrained.add(a)
                    if py is not None:
                        terms = lhs + [(col, alg.bracket(x, el), Fraction(-1)) for col, el in py]
                        rows.extend(coords_rows(terms))
                        constrained.add(b)
    rows = [r for r in rows if r]
    M = SparseMatrix(len(rows), ncols, dict(enumerate(rows)))
    return M, blocks, constrained


def _support(bs) -> set:
    return {e for x in bs for e in x.terms}


def _shift_centroid_degree(alg: FixedPointAlgebra, delta_full, width: int, N: int):
    """Translation-invariant ansatz phi(x t^a) = sum_s P_s x t^(a + s), s over the shift support.

    Constraints: phi maps L into L, and phi[x, y] = [phi x, y] = [x, phi y].  Pairs with a
    low-degree first entry are imposed first; the kernel is then checked on every window
    pair and violated pairs are added until it is stable.
    """
    k = alg.k
    n = k.dim
    r = alg.r
    shifts = _shift_support(alg, delta_full, width)
    ncols = len(shifts) * n * n

    def phi_cols(xi: MappingElement):
        """phi(xi) = sum over (col, p, exponent, coeff) of coeff * unknown[col] * e_p t^exponent."""
        out = []
        for si, sh in enumerate(shifts):
            for a, u in xi.terms.items():
                e = add_exp(a, sh)
                for q, c in u.items():
                    for p in range(n):
                        out.append((si * n * n + p * n + q, p, e, c))
        return out

    def rows_of(parts):
        """parts: (col, MappingElement, scale); one row per (exponent, coordinate)."""
        rows: dict = {}
        for cidx, elem, sc in parts:
            for e, u in elem.terms.items():
                for c, x in u.items():
                    row = rows.setdefault((e, c), {})
                    row[cidx] = row.get(cidx, ZERO) + x * sc
        return [r_ for r_ in ({c: v for c, v in row.items() if v} for row in rows.values()) if r_]

    unit_cache: dict = {}

    def unit(p, e):
        key = (p, e)
        if key not in unit_cache:
            unit_cache[key] = MappingElement._raw(r, {e: {p: Fraction(1)}})
        return unit_cache[key]

    def mapped(cols, op, cache):
        out = []
        for cidx, p, e, c in cols:
            key = (p, e)
            if key not in cache:
                cache[key] = op(unit(p, e))
            out.append((cidx, cache[key], c))
        return out

    B = [x for a, bs in alg.report.components.items() if in_box(a, N) for x in bs]
    rows = []
    act_caches = [dict() for _ in alg.gens]
    for x in B:
        pc = phi_cols(x)
        plain = [(cidx, unit(p, e), c) for cidx, p, e, c in pc]
        for g, cache in zip(alg.gens, act_caches):
            moved = mapped(pc, lambda el, g=g: g.act(k, el), cache)
            rows.extend(rows_of(moved + [(cidx, el, -c) for cidx, el, c in plain]))

    def pair_rows(x, y):
        z = alg.bracket(x, y)
        pz = [(cidx, unit(p, e), c) for cidx, p, e, c in phi_cols(z)]
        cy: dict = {}
        cx: dict = {}
        left = mapped(phi_cols(x), lambda el: alg.bracket(el, y), cy)
        right = mapped(phi_cols(y), lambda el: alg.bracket(x, el), cx)
        out = rows_of(pz + [(cidx, el, -c) for cidx, el, c in left])
        out += rows_of(pz + [(cidx, el, -c) for cidx, el, c in right])
        return out

    def as_map(v):
        def phi(xi):
            terms: dict = {}
            for cidx, p, e, c in phi_cols(xi):
                if v[cidx]:
                    cur = terms.setdefault(e, {})
                    cur[p] = cur.get(p, ZERO) + v[cidx] * c
            return MappingElement(r, terms)
        return phi

    small = [x for x in B if all(abs(e) <= 1 for a in x.terms for e in a)]
    for x in small:
        for y in B:
            rows.extend(pair_rows(x, y))
    while True:
        M = SparseMatrix(len(rows), ncols, dict(enumerate(rows)))
        K = kernel_basis(M)
        bad = None
        maps = [as_map(v) for v in K]
        for i, x in enumerate(B):
            for y in B[i:]:
                z = alg.bracket(x, y)
                for phi in maps:
                    pz = phi(z)
                    if pz != alg.bracket(phi(x), y) or pz != alg.bracket(x, phi(y)):
                        bad = (x, y)
                        break
                if bad:
                    break
            if bad:
                break
        if bad is None:
            return K, shifts
        rows.extend(pair_rows(*bad))


def _shift_support(alg: FixedPointAlgebra, delta_full, width: int) -> list:
    fixed = alg.grading_axes()
    free = [i for i in range(alg.r) if i not in fixed]
    out = []
    for s in box(len(free), width):
        e = list(delta_full)
        for t, i in enumerate(free):
            e[i] = s[t]
        out.append(tuple(e))
    return out


def graded_centroid(alg: FixedPointAlgebra, N: int | None = None, degree_window: int = 1,
                    width: int = 2, method: str = "auto") -> CentroidReport:
    """Centroid dimensions per degree of the grading by the axes fixed under the lattice action.

    ``graded``: honest per-degree maps between the finite components (diagonal actions).
    ``shift``: translation-invariant operators with shifts of width ``width`` along the
    non-grading axes (needed when the lattice action mixes exponents).
    """
    N = alg.window if N is None else N
    if method == "auto":
        method = "graded" if alg.diagonal else "shift"
    fixed = alg.grading_axes()
    free = [i for i in range(alg.r) if i not in fixed]
    degrees = [tuple(d) for d in box(len(fixed), degree_window)]
    dims, fr, full, bases = {}, {}, {}, {}
    for d in degrees:
        delta = [0] * alg.r
        for t, i in enumerate(fixed):
            delta[i] = d[t]
        delta = tuple(delta)
        if method == "graded":
            if free:
                raise ValidationError("graded centroid needs a diagonal lattice action")
            M, blocks, constrained = _graded_centroid_degree(alg, delta, N)
            unconstrained = [a for a in blocks if a not in constrained]
            if not blocks or unconstrained:
                raise WindowTooSmall(f"degree {d} has unconstrained components", witness=unconstrained[:3])
            K = kernel_basis(M)
            support = [delta]
            full[d] = 1
        elif method == "shift":
            K, support = _shift_centroid_degree(alg, delta, width, N)
            full[d] = (2 * width + 1) ** len(free)
        else:
            raise ValidationError(f"unknown centroid method {method!r}")
        dims[d] = len(K)
        bases[d] = K
        fr[d] = fixed_ring_dim(alg.gens, alg.r, support)
    return CentroidReport(method, degrees, dims, fr, full, bases, width)


def multiplication_in_centroid(alg: FixedPointAlgebra, h: dict, N: int | None = None) -> bool:
    """Multiplication by a Laurent polynomial h (exponent -> scalar) maps L into L and commutes with brackets."""
    from .exactalg import LaurentPoly

    f = LaurentPoly(alg.r, h)
    B = alg.basis() if N is None else [x for a, bs in alg.report.components.items() if in_box(a, N) for x in bs]
    for x in B:
        if not alg.is_fixed(x.times_function(f)):
            return False
    for i, x in enumerate(B):
        for y in B[i:]:
            if alg.bracket(x, y).times_function(f) != alg.bracket(x.times_function(f), y):
                return False
    return True


# ---------------------------------------------------------------- gauge cocycle


def gauge_type1_on_multiloop(alg: FixedPointAlgebra, kappa: BilinearFormSym) -> Cocycle2Map:
    """The type I cocycle restricted to the fixed algebra; values are Delta-fixed reduced 1-forms."""
    for g in alg.gens:
        if not kappa.is_equivariant(g.sigma):
            raise NotEquivariant(f"kappa is not invariant under {g.label}", witness=g.label)
    base = type1_cocycle(alg.ambient, kappa)
    return Cocycle2Map(alg, base.target, base.dv, base.evaluate, None, "gauge-type1", {"kappa": kappa})


def is_delta_fixed_value(alg: FixedPointAlgebra, value) -> bool:
    return all(value.pullback(g.A, g.eps) == value for g in alg.gens)
