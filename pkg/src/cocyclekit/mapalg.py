"""Mapping algebras k (x) Laurent polynomials and their 2-cocycles.

Elements are finite sums x (x) t^alpha.  Cocycles are evaluators built from
finite data (an invariant form kappa, a 2-cocycle eta, or (beta_a, beta_s)
tables); every value is computed exactly on demand.

Value targets:
  "reduced1"  ReducedOneForm     (type I)
  "function"  TorusForm of degree 0
  "form1"     TorusForm of degree 1 (type III)
  "form2"     TorusForm of degree 2 (curvature)
  "scalar"    Vec
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .ce import (
    BilinearFormSym,
    CoboundaryResult,
    Cochain,
    cartan_exactness,
    cartan_map,
    ce_d,
    coboundary_solve,
    evaluate_d,
)
from .errors import (
    CouplingViolated,
    InconsistencyError,
    KappaNotExact,
    NotACocycle,
    NotInvariant,
    ValidationError,
)
from .exactalg import LaurentPoly, Vec, add_exp, box, zero_exp
from .exactalg.linalg import ZERO
from .liealg import LieAlgebra, trivial_module
from .torusforms import ReducedOneForm, TorusForm, derham_d, reduce_oneform, wedge


def _sp_add(acc: dict, u: dict, s=1):
    for k, c in u.items():
        v = acc.get(k, ZERO) + s * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


class MappingElement:
    """Finite sum of x (x) t^alpha; ``terms`` maps alpha to a sparse k-vector."""

    __slots__ = ("r", "terms")

    def __init__(self, r: int, terms: dict | None = None):
        self.r = r
        clean = {}
        for a, u in (terms or {}).items():
            if len(a) != r:
                raise ValidationError(f"exponent {a} has wrong length")
            u = {k: c for k, c in (u.items() if isinstance(u, dict) else enumerate(u)) if c}
            if u:
                clean[tuple(a)] = u
        self.terms = clean

    @classmethod
    def _raw(cls, r, terms):
        obj = cls.__new__(cls)
        obj.r, obj.terms = r, terms
        return obj

    @classmethod
    def zero(cls, r: int) -> "MappingElement":
        return cls._raw(r, {})

    @classmethod
    def monomial(cls, x, exp) -> "MappingElement":
        return cls(len(exp), {tuple(exp): x})

    def __add__(self, other):
        out = {a: dict(u) for a, u in self.terms.items()}
        for a, u in other.terms.items():
            cur = out.setdefault(a, {})
            _sp_add(cur, u)
            if not cur:
                del out[a]
        return MappingElement._raw(self.r, out)

    def __neg__(self):
        return MappingElement._raw(self.r, {a: {k: -c for k, c in u.items()} for a, u in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        if isinstance(s, (MappingElement, LaurentPoly)):
            return NotImplemented
        if not s:
            return MappingElement.zero(self.r)
        return MappingElement._raw(self.r, {a: {k: c * s for k, c in u.items()} for a, u in self.terms.items()})

    __rmul__ = __mul__

    def times_function(self, f: LaurentPoly) -> "MappingElement":
        out: dict = {}
        for a, u in self.terms.items():
            for b, c in f.terms.items():
                cur = out.setdefault(add_exp(a, b), {})
                _sp_add(cur, u, c)
        return MappingElement(self.r, out)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MappingElement):
            return self.r == other.r and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted((a, tuple(sorted(u.items()))) for a, u in self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{dict(sorted(u.items()))}*t^{a}" for a, u in sorted(self.terms.items()))

    def degrees(self) -> set:
        return set(self.terms)

    def coefficient(self, exp) -> dict:
        return dict(self.terms.get(tuple(exp), {}))

    def as_form(self, dim: int) -> TorusForm:
        """The element as a k-valued 0-form."""
        terms = {}
        for a, u in self.terms.items():
            v = [ZERO] * dim
            for k, c in u.items():
                v[k] = c
            terms[((), a)] = Vec(v)
        return TorusForm(0, self.r, dim, terms)


@dataclass(eq=False)
class MappingAlgebra:
    """g = k (x) k[t_1^{+-1}, .., t_r^{+-1}]."""

    k: LieAlgebra
    r: int

    def __post_init__(self):
        if self.r < 1:
            raise ValidationError("mapping algebras need r >= 1")

    @property
    def label(self):
        return f"{self.k.label}[t^{self.r}]"

    def element(self, x, exp) -> MappingElement:
        return MappingElement.monomial(x, exp)

    def basis_element(self, i: int, exp) -> MappingElement:
        return MappingElement._raw(self.r, {tuple(exp): {i: Fraction(1)}})

    def basis(self, N: int) -> list[MappingElement]:
        return [self.basis_element(i, a) for a in box(self.r, N) for i in range(self.k.dim)]

    def bracket(self, u: MappingElement, v: MappingElement) -> MappingElement:
        out: dict = {}
        for a, x in u.terms.items():
            for b, y in v.terms.items():
                z = self.k.bracket_sp(x, y)
                if z:
                    cur = out.setdefault(add_exp(a, b), {})
                    _sp_add(cur, z)
        return MappingElement(self.r, out)

    def zero(self) -> MappingElement:
        return MappingElement.zero(self.r)

    def act_vfield(self, X, u: MappingElement) -> MappingElement:
        """X.(x (x) f) = x (x) X(f)."""
        out: dict = {}
        for a, x in u.terms.items():
            Xf = X.apply(LaurentPoly(self.r, {a: Fraction(1)}))
            for b, c in Xf.terms.items():
                cur = out.setdefault(b, {})
                _sp_add(cur, x, c)
        return MappingElement(self.r, out)

    def random_basis_element(self, rng: random.Random, N: int) -> MappingElement:
        a = tuple(rng.randint(-N, N) for _ in range(self.r))
        return self.basis_element(rng.randrange(self.k.dim), a)

    def random_element(self, rng: random.Random, N: int, nterms: int = 3) -> MappingElement:
        out = MappingElement.zero(self.r)
        for _ in range(nterms):
            out = out + self.random_basis_element(rng, N) * Fraction(rng.randint(-3, 3))
        return out

    def random_triples(self, rng: random.Random, N: int, count: int) -> list[tuple]:
        return [tuple(self.random_basis_element(rng, N) for _ in range(3)) for _ in range(count)]


def _zero_value(target: str, r: int, dv: int):
    if target == "reduced1":
        return ReducedOneForm.zero(r, dv)
    if target == "function":
        return TorusForm.zero(0, r, dv)
    if target == "form1":
        return TorusForm.zero(1, r, dv)
    if target == "form2":
        return TorusForm.zero(2, r, dv)
    if target == "scalar":
        return Vec.zero(dv)
    raise ValidationError(f"unknown cocycle target {target!r}")


def value_lie_derivative(value, field):
    """Natural action of a vector field (log-frame components) on cocycle values."""
    if isinstance(value, Vec):
        return Vec.zero(len(value))
    return value.lie_derivative(field)


@dataclass(eq=False)
class Cocycle2Map:
    """Alternating bilinear map on ``domain`` with values of kind ``target``.

    ``evaluate(u, v)`` is the exact evaluator; ``act(u, value)`` is the module
    action on values (None for a trivial action).
    """

    domain: object
    target: str
    dv: int
    evaluate: Callable
    act: Callable | None = None
    label: str = ""
    data: dict = field(default_factory=dict)

    def __call__(self, u, v):
        return self.evaluate(u, v)

    def zero_value(self):
        return _zero_value(self.target, self.domain.r, self.dv)

    def d(self, a, b, c):
        return evaluate_d(self.evaluate, (a, b, c), self.domain.bracket, self.act)

    def closedness_failure(self, triples):
        for t in triples:
            val = self.d(*t)
            if val:
                return t, val
        return None

    def is_closed_on(self, triples) -> bool:
        return self.closedness_failure(triples) is None

    def antisymmetry_failure(self, pairs):
        for u, v in pairs:
            if self(u, v) + self(v, u):
                return u, v
        return None

    def compose(self, fn: Callable, target: str, dv: int | None = None, label: str = "") -> "Cocycle2Map":
        """Post-compose with a linear map on values (assumed equivariant, action dropped)."""
        ev = self.evaluate
        return Cocycle2Map(self.domain, target, self.dv if dv is None else dv,
                           lambda u, v: fn(ev(u, v)), None, label or self.label, dict(self.data))

    def __add__(self, other: "Cocycle2Map") -> "Cocycle2Map":
        if other.target != self.target or other.dv != self.dv:
            raise ValidationError("cannot add cocycles with different targets")
        f, g = self.evaluate, other.evaluate
        return Cocycle2Map(self.domain, self.target, self.dv, lambda u, v: f(u, v) + g(u, v), self.act,
                           f"{self.label}+{other.label}")

    def __mul__(self, s) -> "Cocycle2Map":
        f = self.evaluate
        return Cocycle2Map(self.domain, self.target, self.dv, lambda u, v: f(u, v) * s, self.act,
                           f"{s}*{self.label}")

    __rmul__ = __mul__

    def __sub__(self, other):
        return self + other * Fraction(-1)


def bilinear_cocycle(g: MappingAlgebra, target: str, dv: int, rule: Callable, label: str = "",
                     data: dict | None = None) -> Cocycle2Map:
    """Extend ``rule(x, alpha, y, beta)`` (x, y sparse k-vectors) bilinearly to mapping elements."""
    zero = _zero_value(target, g.r, dv)

    def ev(u: MappingElement, v: MappingElement):
        total = zero
        for a, x in u.terms.items():
            for b, y in v.terms.items():
                total = total + rule(x, a, y, b)
        return total

    return Cocycle2Map(g, target, dv, ev, None, label, data or {})


def _require_invariant(kappa: BilinearFormSym):
    bad = kappa.invariance_failure()
    if bad is not None:
        raise NotInvariant("kappa is not invariant", witness=tuple(kappa.algebra.names[i] for i in bad))


def _require_cocycle(eta: Cochain):
    if eta.p != 2:
        raise ValidationError("eta must be a 2-cochain")
    if not eta.module.trivial:
        raise ValidationError("eta must take values in a trivial module")
    if eta.algebra.dim >= 3:
        d = ce_d(eta)
        if d:
            t = min(d.values)
            raise NotACocycle("eta is not a cocycle", witness=tuple(eta.algebra.names[i] for i in t))


def type1_cocycle(g: MappingAlgebra, kappa: BilinearFormSym) -> Cocycle2Map:
    """omega_kappa(x t^a, y t^b) = kappa(x, y) [t^(a+b) sum_i b_i delta_i]."""
    _require_invariant(kappa)
    r, dv = g.r, kappa.vdim

    def rule(x, a, y, b):
        k = kappa.eval_sparse(x, y)
        if not k:
            return ReducedOneForm.zero(r, dv)
        c = add_exp(a, b)
        terms = {((i,), c): k * b[i] for i in range(r) if b[i]}
        return reduce_oneform(TorusForm(1, r, dv, terms))

    return bilinear_cocycle(g, "reduced1", dv, rule, "type1", {"kappa": kappa})


def type2_cocycle(g: MappingAlgebra, eta: Cochain) -> Cocycle2Map:
    """omega_eta(x t^a, y t^b) = eta(x, y) t^(a+b)."""
    _require_cocycle(eta)
    r, dv = g.r, eta.module.dim

    def rule(x, a, y, b):
        v = eta.eval_sparse([x, y])
        return TorusForm._raw(0, r, dv, {((), add_exp(a, b)): v} if v else {})

    return bilinear_cocycle(g, "function", dv, rule, "type2", {"eta": eta})


@dataclass
class MappingOneCochain:
    """Linear map on the mapping algebra given on monomials by ``rule(x, alpha)``."""

    domain: MappingAlgebra
    target: str
    dv: int
    rule: Callable

    def __call__(self, u: MappingElement):
        total = _zero_value(self.target, self.domain.r, self.dv)
        for a, x in u.terms.items():
            total = total + self.rule(x, a)
        return total

    def coboundary(self) -> Cocycle2Map:
        """d B (u, v) = -B([u, v]) for a trivial module."""
        g = self.domain
        return Cocycle2Map(g, self.target, self.dv, lambda u, v: -self(g.bracket(u, v)), None, "dB")


@dataclass
class TypeIIVariableReport:
    cocycle: Cocycle2Map
    is_coboundary: bool
    potential: MappingOneCochain | None = None
    obstruction: tuple | None = None  # (monomial, CoboundaryResult with certificate)


def type2_variable_cocycle(g: MappingAlgebra, table: dict) -> TypeIIVariableReport:
    """omega(x t^a, y t^b) = sum_gamma eta_gamma(x, y) t^(a+b+gamma) for eta_hat = sum eta_gamma t^gamma.

    omega is a coboundary iff every eta_gamma is one: restricting to constants
    and taking the t^gamma coefficient maps a potential of omega to one of
    eta_gamma, and conversely potentials assemble monomial by monomial.
    """
    if not table:
        raise ValidationError("empty table; pass at least one monomial")
    r = g.r
    dv = None
    for gam, eta in table.items():
        if len(gam) != r:
            raise ValidationError(f"monomial {gam} has wrong length")
        _require_cocycle(eta)
        if dv is None:
            dv = eta.module.dim
        elif eta.module.dim != dv:
            raise ValidationError("table values take values in different modules")
    items = sorted((tuple(k), v) for k, v in table.items())

    def rule(x, a, y, b):
        terms = {}
        for gam, eta in items:
            v = eta.eval_sparse([x, y])
            if v:
                terms[((), add_exp(add_exp(a, b), gam))] = v
        return TorusForm(0, r, dv, terms)

    omega = bilinear_cocycle(g, "function", dv, rule, "type2-variable", {"table": dict(items)})
    potentials = {}
    for gam, eta in items:
        res = coboundary_solve(eta)
        if not res.feasible:
            return TypeIIVariableReport(omega, False, obstruction=(gam, res))
        potentials[gam] = res.potential

    def brule(x, a):
        terms = {}
        for gam, beta in potentials.items():
            v = beta.eval_sparse([x])
            if v:
                terms[((), add_exp(a, gam))] = v
        return TorusForm(0, r, dv, terms)

    return TypeIIVariableReport(omega, True, potential=MappingOneCochain(g, "function", dv, brule))


def type3_cocycle(g: MappingAlgebra, kappa: BilinearFormSym, eta: Cochain | None = None) -> Cocycle2Map:
    """omega_{kappa,eta} = kappa(xi1, d xi2) - kappa(xi2, d xi1) - d(eta(xi1, xi2)).

    Requires d_k eta = Gamma(kappa); eta is solved for when omitted.
    """
    _require_invariant(kappa)
    k = kappa.algebra
    if eta is None:
        res = cartan_exactness(kappa)
        if not res.feasible:
            raise KappaNotExact("Gamma(kappa) is not a coboundary", witness=res.certificate)
        eta = res.potential
    else:
        if eta.p != 2 or eta.module.dim != kappa.vdim:
            raise ValidationError("eta must be a 2-cochain with the values of kappa")
        if k.dim >= 3 and ce_d(eta) != cartan_map(kappa):
            raise KappaNotExact("d eta differs from Gamma(kappa)")
    r, dv = g.r, kappa.vdim

    def rule(x, a, y, b):
        kv = kappa.eval_sparse(x, y)
        ev = eta.eval_sparse([x, y])
        c = add_exp(a, b)
        terms = {}
        for i in range(r):
            v = kv * (b[i] - a[i]) - ev * c[i]
            if v:
                terms[((i,), c)] = v
        return TorusForm._raw(1, r, dv, terms)

    return bilinear_cocycle(g, "form1", dv, rule, "type3", {"kappa": kappa, "eta": eta})


def curvature_cocycle(g, kappa: BilinearFormSym) -> Cocycle2Map:
    """kappa(d xi1, d xi2); on g x| V the vector-field components contribute 0."""
    _require_invariant(kappa)
    mg = g.g if isinstance(g, SemidirectVAlgebra) else g
    n, r, dv = kappa.algebra.dim, mg.r, kappa.vdim

    def part(u):
        return u.xi if isinstance(u, SDElement) else u

    def ev(u, v):
        a, b = part(u), part(v)
        if r < 2 or not a or not b:
            return TorusForm.zero(2, r, dv)
        return wedge(derham_d(a.as_form(n)), derham_d(b.as_form(n)), lambda x, y: kappa(x, y))

    act = _vfield_act if isinstance(g, SemidirectVAlgebra) else None
    return Cocycle2Map(g, "form2", dv, ev, act, "curvature", {"kappa": kappa})


# ---------------------------------------------------------------- pairs


@dataclass
class CocyclePair:
    """beta_a on monomial 1-forms t^gamma delta_i, beta_s on monomials t^gamma; zero elsewhere."""

    k: LieAlgebra
    r: int
    beta_a: dict = field(default_factory=dict)  # (gamma, i) -> BilinearFormSym
    beta_s: dict = field(default_factory=dict)  # gamma -> Cochain(2)
    dv: int = 1

    def __post_init__(self):
        self.beta_a = {(tuple(g), i): f for (g, i), f in self.beta_a.items()}
        self.beta_s = {tuple(g): c for g, c in self.beta_s.items()}
        for (gam, i), f in self.beta_a.items():
            if len(gam) != self.r or not 0 <= i < self.r:
                raise ValidationError(f"bad beta_a key {(gam, i)}")
            if f.vdim != self.dv:
                raise ValidationError("beta_a value has wrong dimension")
            _require_invariant(f)
        for gam, c in self.beta_s.items():
            if len(gam) != self.r or c.p != 2 or c.module.dim != self.dv:
                raise ValidationError(f"bad beta_s entry at {gam}")

    def monomials(self) -> list:
        return sorted({g for g, _ in self.beta_a} | set(self.beta_s))

    def a_of_df(self, gam) -> BilinearFormSym:
        """beta_a(d t^gamma) = sum_i gamma_i beta_a(t^gamma delta_i)."""
        out = BilinearFormSym(self.k, self.dv)
        for i in range(self.r):
            f = self.beta_a.get((gam, i))
            if f is not None and gam[i]:
                out = out + f * gam[i]
        return out

    def coupling_defect(self, gam) -> Cochain | None:
        """Gamma(beta_a(d f)) - d_k(beta_s(f)) for f = t^gamma (None when C^3 = 0)."""
        if self.k.dim < 3:
            return None
        lhs = cartan_map(self.a_of_df(gam))
        s = self.beta_s.get(gam)
        rhs = ce_d(s) if s is not None else Cochain.zero(3, self.k, lhs.module)
        return lhs - rhs

    def coupling_failure(self):
        for gam in self.monomials():
            d = self.coupling_defect(gam)
            if d:
                return gam, d
        return None


def pair_cocycle(pair: CocyclePair, check: bool = True) -> Cocycle2Map:
    """omega(f x, g y) = beta_a(f dg - g df)(x, y) - beta_s(fg)(x, y), scalar valued.

    With ``check`` the coupling is verified on every touched monomial; a
    violation raises CouplingViolated carrying an explicit triple on which
    d omega does not vanish.
    """
    g = MappingAlgebra(pair.k, pair.r)
    r, dv = pair.r, pair.dv
    A, S = pair.beta_a, pair.beta_s

    def rule(x, a, y, b):
        c = add_exp(a, b)
        total = Vec.zero(dv)
        for i in range(r):
            w = b[i] - a[i]
            f = A.get((c, i))
            if w and f is not None:
                total = total + f.eval_sparse(x, y) * w
        s = S.get(c)
        if s is not None:
            total = total - s.eval_sparse([x, y])
        return total

    omega = bilinear_cocycle(g, "scalar", dv, rule, "pair", {"pair": pair})
    if check:
        bad = pair.coupling_failure()
        if bad is not None:
            gam, defect = bad
            triple = coupling_witness(omega, gam, defect)
            raise CouplingViolated(f"coupling fails at monomial t^{gam}",
                                   witness={"monomial": gam, "triple": triple, "d_omega": omega.d(*triple)})
    return omega


def coupling_witness(omega: Cocycle2Map, gam, defect: Cochain) -> tuple:
    """(x t^gamma, x', x'') with d omega != 0, from a basis triple where the defect is nonzero."""
    g = omega.domain
    zero = zero_exp(g.r)
    for t in sorted(defect.values):
        trip = (g.basis_element(t[0], gam), g.basis_element(t[1], zero), g.basis_element(t[2], zero))
        if omega.d(*trip):
            return trip
    raise InconsistencyError("coupling defect does not produce a nonzero d omega")


def kac_moody_pair(k: LieAlgebra, kappa: BilinearFormSym, r: int = 1, axis: int = 0) -> CocyclePair:
    """beta_a = (1/2) kappa * (integral over the axis circle), beta_s = 0.

    The resulting pair cocycle equals the residue of the type I cocycle.
    """
    return CocyclePair(k, r, {(zero_exp(r), axis): kappa * Fraction(1, 2)}, {}, kappa.vdim)


def type4_pair(k: LieAlgebra, r: int, table: dict) -> CocyclePair:
    """Pairs (0, -beta_s) with beta_s(f) vanishing on [k, k] x k (type IV)."""
    from .liealg import derived_subalgebra

    D = derived_subalgebra(k)
    for gam, c in table.items():
        for u in D:
            su = {i: x for i, x in enumerate(u) if x}
            for j in range(k.dim):
                if c.eval_sparse([su, {j: Fraction(1)}]):
                    raise ValidationError(f"beta_s at {gam} does not vanish on [k,k] x k")
    dv = next(iter(table.values())).module.dim if table else 1
    return CocyclePair(k, r, {}, {g: c * Fraction(-1) for g, c in table.items()}, dv)


# ---------------------------------------------------------------- reductions


def reduction_residue(omega: Cocycle2Map, axis: int = 1) -> Cocycle2Map:
    """Compose a type I cocycle with the cycle integral over the given (1-based) axis."""
    if omega.target != "reduced1":
        raise ValidationError("residue reduction needs a reduced-1-form valued cocycle")
    if not 1 <= axis <= omega.domain.r:
        raise ValidationError("axis out of range")
    return omega.compose(lambda w: w.integral(axis - 1), "scalar", label=f"residue{axis}")


def evaluate_form0(w: TorusForm, point: Sequence) -> Vec:
    total = Vec.zero(w.dv)
    for (_, a), v in w.terms.items():
        s = Fraction(1)
        for p, k in zip(point, a):
            if k:
                s = s * (p ** k)
        total = total + v * s
    return total


def reduction_eval(omega: Cocycle2Map, point: Sequence | None = None) -> Cocycle2Map:
    """Compose a function-valued cocycle with evaluation at a point of the torus."""
    if omega.target != "function":
        raise ValidationError("evaluation reduction needs a function-valued cocycle")
    pt = list(point) if point is not None else [Fraction(1)] * omega.domain.r
    return omega.compose(lambda w: evaluate_form0(w, pt), "scalar", label="eval")


def restrict_to_constants(omega: Cocycle2Map) -> Cochain:
    """Scalar cocycle on the mapping algebra restricted to k (x) 1."""
    if omega.target != "scalar":
        raise ValidationError("restriction to constants needs a scalar cocycle")
    g = omega.domain
    k = g.k
    z = zero_exp(g.r)
    vals = {}
    for i, j in combinations(range(k.dim), 2):
        v = omega(g.basis_element(i, z), g.basis_element(j, z))
        if v:
            vals[(i, j)] = v
    return Cochain(2, k, trivial_module(k, omega.dv), vals)


# ---------------------------------------------------------------- extensions and vector fields


@dataclass(frozen=True)
class SDElement:
    """(xi, X) in g x| V(T^r)."""

    xi: MappingElement
    X: object  # VectorField

    def __add__(self, other):
        return SDElement(self.xi + other.xi, self.X + other.X)

    def __neg__(self):
        return SDElement(-self.xi, -self.X)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        return SDElement(self.xi * s, self.X * s)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.xi) or bool(self.X)


@dataclass(eq=False)
class SemidirectVAlgebra:
    """g x| V with [(xi, X), (eta, Y)] = ([xi, eta] + X.eta - Y.xi, [X, Y])."""

    g: MappingAlgebra

    @property
    def r(self):
        return self.g.r

    def bracket(self, u: SDElement, v: SDElement) -> SDElement:
        g = self.g
        xi = g.bracket(u.xi, v.xi) + g.act_vfield(u.X, v.xi) - g.act_vfield(v.X, u.xi)
        return SDElement(xi, u.X.bracket(v.X))

    def lift(self, xi: MappingElement) -> SDElement:
        from .vfields import VectorField

        return SDElement(xi, VectorField.zero(self.r))

    def lift_field(self, X) -> SDElement:
        return SDElement(MappingElement.zero(self.r), X)

    def basis(self, N: int) -> list[SDElement]:
        from .vfields import VectorField

        out = [self.lift(b) for b in self.g.basis(N)]
        for a in box(self.r, N):
            for i in range(self.r):
                out.append(self.lift_field(VectorField.monomial(self.r, i, a)))
        return out


def semidirect_with_vfields(g: MappingAlgebra) -> SemidirectVAlgebra:
    return SemidirectVAlgebra(g)


def _vfield_act(u, value):
    X = u.X if isinstance(u, SDElement) else None
    if X is None or not X:
        return value * 0 if isinstance(value, Vec) else value - value
    return value_lie_derivative(value, X.components)


def invariance_failure(omega: Cocycle2Map, X, pairs):
    """First pair violating L_X omega(xi1, xi2) = omega(X.xi1, xi2) + omega(xi1, X.xi2)."""
    g = omega.domain
    for u, v in pairs:
        lhs = value_lie_derivative(omega(u, v), X.components)
        rhs = omega(g.act_vfield(X, u), v) + omega(u, g.act_vfield(X, v))
        if lhs != rhs:
            return u, v
    return None


def invariance_check(omega: Cocycle2Map, X, pairs) -> bool:
    return invariance_failure(omega, X, pairs) is None


def extended_cocycle(omega: Cocycle2Map) -> Cocycle2Map:
    """omega~((xi, X), (eta, Y)) = omega(xi, eta) on g x| V, V acting on values by Lie derivative."""
    sd = SemidirectVAlgebra(omega.domain)
    ev = omega.evaluate
    return Cocycle2Map(sd, omega.target, omega.dv, lambda u, v: ev(u.xi, v.xi), _vfield_act,
                       f"ext({omega.label})", dict(omega.data))


@dataclass(eq=False)
class CentralExtension:
    """z (+)_omega g with bracket [(z1, u), (z2, v)] = (X_u.z2 - X_v.z1 + omega(u, v), [u, v]).

    The X-terms are present only when the base is g x| V and omega carries an action.
    """

    base: object
    omega: Cocycle2Map

    def bracket(self, a: tuple, b: tuple) -> tuple:
        (z1, u), (z2, v) = a, b
        z = self.omega(u, v)
        if self.omega.act is not None:
            z = z + self.omega.act(u, z2) - self.omega.act(v, z1)
        return z, self.base.bracket(u, v)

    def lift(self, u) -> tuple:
        return self.omega.zero_value(), u

    def central(self, z) -> tuple:
        return z, self.base.zero() if hasattr(self.base, "zero") else None

    def jacobiator(self, a, b, c) -> tuple:
        br = self.bracket
        t1 = br(br(a, b), c)
        t2 = br(br(b, c), a)
        t3 = br(br(c, a), b)
        return t1[0] + t2[0] + t3[0], t1[1] + t2[1] + t3[1]

    def jacobi_failure(self, triples):
        """First base triple whose lifts violate Jacobi."""
        for t in triples:
            z, x = self.jacobiator(*(self.lift(u) for u in t))
            if z or x:
                return t, z
        return None


def central_extension(base, omega: Cocycle2Map) -> CentralExtension:
    if isinstance(base, LieAlgebra):
        raise ValidationError("use ce.central_extension_algebra for finite-dimensional algebras")
    return CentralExtension(base, omega)


def type2_scalar_extension_check(g: MappingAlgebra, eta: Cochain, N: int):
    """Check that k^ (x) Laurent -> C(T, V) (+)_{omega_eta} g, (v + x) (x) f -> (v f, x (x) f)
    is a bracket isomorphism on the window; returns the first failing pair or None."""
    from .ce import central_extension_algebra

    omega = type2_cocycle(g, eta)
    ext = CentralExtension(g, omega)
    khat, bad = central_extension_algebra(eta)
    if bad is not None:
        raise NotACocycle("eta is not a cocycle")
    dv, r = eta.module.dim, g.r

    def phi(i, a):
        if i < dv:
            return TorusForm(0, r, dv, {((), a): Vec.unit(dv, i)}), MappingElement.zero(r)
        return TorusForm.zero(0, r, dv), g.basis_element(i - dv, a)

    def phi_sparse(u: dict, a):
        z, x = TorusForm.zero(0, r, dv), MappingElement.zero(r)
        for i, c in u.items():
            zi, xi = phi(i, a)
            z, x = z + zi * c, x + xi * c
        return z, x

    els = [(i, a) for a in box(r, N) for i in range(khat.dim)]
    for i, a in els:
        for j, b in els:
            lhs = phi_sparse(khat.bracket_sparse(i, j), add_exp(a, b))
            rhs = ext.bracket(phi(i, a), phi(j, b))
            if lhs[0] != rhs[0] or lhs[1] != rhs[1]:
                return (i, a), (j, b)
    return None
