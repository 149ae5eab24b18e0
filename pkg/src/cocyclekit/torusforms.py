"""Algebraic differential forms on the torus T^r in the log frame delta_i = dt_i / t_i.

Forms carry values in a coordinate space of dimension ``dv`` and are stored
as ``{(I, alpha): Vec}`` with I a strictly increasing tuple of 0-based axes.
Methods use 0-based axes; the module-level functions ``cycle_integral`` and
``laurent_partial`` follow the 1-based axis numbering of the documentation.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .errors import ValidationError
from .exactalg import LaurentPoly, Vec, add_exp, zero_exp
from .exactalg.laurent import mat_exp, transpose_int
from .exactalg.linalg import ZERO


def _insert_sign(i: int, I: tuple) -> tuple[int, tuple | None]:
    """delta_i ^ delta_I = sign * delta_{I u {i}}."""
    if i in I:
        return 0, None
    pos = sum(1 for j in I if j < i)
    return (1 if pos % 2 == 0 else -1), I[:pos] + (i,) + I[pos:]


def _merge_sign(I: tuple, J: tuple) -> tuple[int, tuple | None]:
    """delta_I ^ delta_J = sign * delta_{I u J}."""
    if set(I) & set(J):
        return 0, None
    seq = list(I) + list(J)
    sign = 1
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                sign = -sign
    return sign, tuple(sorted(seq))


class TorusForm:
    __slots__ = ("p", "r", "dv", "terms")

    def __init__(self, p: int, r: int, dv: int = 1, terms: dict | None = None):
        if p < 0 or (p > r and terms):
            raise ValidationError(f"form degree {p} out of range for r={r}")
        self.p, self.r, self.dv = p, r, dv
        clean = {}
        for (I, a), v in (terms or {}).items():
            I = tuple(I)
            if len(I) != p or list(I) != sorted(set(I)):
                raise ValidationError(f"index set {I} is not a sorted {p}-subset")
            if len(a) != r:
                raise ValidationError(f"exponent {a} has wrong length")
            v = v if isinstance(v, Vec) else Vec(v)
            if len(v) != dv:
                raise ValidationError("form value has wrong dimension")
            key = (I, tuple(a))
            if key in clean:
                v = clean[key] + v
            if v:
                clean[key] = v
            else:
                clean.pop(key, None)
        self.terms = clean

    @classmethod
    def _raw(cls, p, r, dv, terms):
        obj = cls.__new__(cls)
        obj.p, obj.r, obj.dv, obj.terms = p, r, dv, terms
        return obj

    @classmethod
    def zero(cls, p: int, r: int, dv: int = 1) -> "TorusForm":
        return cls._raw(p, r, dv, {})

    @classmethod
    def monomial(cls, I: Sequence[int], exp: Sequence[int], value=(Fraction(1),)) -> "TorusForm":
        value = Vec(value)
        if len(set(I)) != len(I):
            raise ValidationError("repeated axis in monomial form")
        s, st = _merge_sign(tuple(I), ())
        return cls(len(I), len(exp), len(value), {(st, tuple(exp)): value * s})

    @classmethod
    def function(cls, f: LaurentPoly | Sequence[LaurentPoly]) -> "TorusForm":
        polys = [f] if isinstance(f, LaurentPoly) else list(f)
        r, dv = polys[0].r, len(polys)
        terms: dict = {}
        for k, poly in enumerate(polys):
            for a, c in poly.terms.items():
                key = ((), a)
                cur = list(terms[key]) if key in terms else [ZERO] * dv
                cur[k] = c
                terms[key] = Vec(cur)
        return cls(0, r, dv, terms)

    def component(self, I: Sequence[int]) -> tuple:
        I = tuple(I)
        comps = [dict() for _ in range(self.dv)]
        for (J, a), v in self.terms.items():
            if J == I:
                for k, c in enumerate(v):
                    if c:
                        comps[k][a] = c
        return tuple(LaurentPoly(self.r, d) for d in comps)

    def as_function(self) -> LaurentPoly:
        if self.p != 0 or self.dv != 1:
            raise ValidationError("not a scalar function")
        return LaurentPoly(self.r, {a: v[0] for (_, a), v in self.terms.items()})

    def _check(self, other):
        if not isinstance(other, TorusForm) or (other.p, other.r, other.dv) != (self.p, self.r, self.dv):
            raise ValidationError("incompatible forms")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            if k in out:
                s = out[k] + v
                if s:
                    out[k] = s
                else:
                    del out[k]
            else:
                out[k] = v
        return TorusForm._raw(self.p, self.r, self.dv, out)

    __radd__ = __add__

    def __neg__(self):
        return TorusForm._raw(self.p, self.r, self.dv, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        if isinstance(s, (TorusForm, LaurentPoly)):
            return NotImplemented
        if not s:
            return TorusForm.zero(self.p, self.r, self.dv)
        return TorusForm._raw(self.p, self.r, self.dv, {k: v * s for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, TorusForm):
            return (self.p, self.r, self.dv) == (other.p, other.r, other.dv) and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.r, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return f"TorusForm(p={self.p}, 0)"
        parts = []
        for (I, a), v in sorted(self.terms.items()):
            dl = "^".join(f"d{i + 1}" for i in I)
            parts.append(f"{list(v.c) if self.dv > 1 else v[0]}*t^{a}" + (f" {dl}" if dl else ""))
        return "TorusForm(" + " + ".join(parts) + ")"

    def items(self):
        return sorted(self.terms.items())

    def degrees(self) -> set:
        return {a for (_, a) in self.terms}

    def degree_part(self, exp) -> "TorusForm":
        exp = tuple(exp)
        return TorusForm._raw(self.p, self.r, self.dv, {k: v for k, v in self.terms.items() if k[1] == exp})

    def times_function(self, f: LaurentPoly) -> "TorusForm":
        out: dict = {}
        for (I, a), v in self.terms.items():
            for b, c in f.terms.items():
                key = (I, add_exp(a, b))
                w = v * c
                out[key] = out[key] + w if key in out else w
        return TorusForm(self.p, self.r, self.dv, out)

    def apply_linear(self, M) -> "TorusForm":
        """Apply a (new_dv x dv) matrix to every value."""
        out = {}
        for k, v in self.terms.items():
            w = Vec(sum((row[j] * v[j] for j in range(self.dv)), ZERO) for row in M)
            if w:
                out[k] = w
        return TorusForm._raw(self.p, self.r, len(M), out)

    def d(self) -> "TorusForm":
        return derham_d(self)

    def contract(self, field: Sequence[LaurentPoly]) -> "TorusForm":
        """i_X for X = sum_i f_i d_i (the d_i dual to delta_i)."""
        if self.p == 0:
            return TorusForm.zero(0, self.r, self.dv)
        out: dict = {}
        for (I, a), v in self.terms.items():
            for pos, i in enumerate(I):
                f = field[i]
                if not f:
                    continue
                J = I[:pos] + I[pos + 1:]
                s = 1 if pos % 2 == 0 else -1
                for b, c in f.terms.items():
                    key = (J, add_exp(a, b))
                    w = v * (s * c)
                    out[key] = out[key] + w if key in out else w
        return TorusForm(self.p - 1, self.r, self.dv, out)

    def lie_derivative(self, field: Sequence[LaurentPoly]) -> "TorusForm":
        out = derham_d(self).contract(field) if self.p < self.r else TorusForm.zero(self.p, self.r, self.dv)
        if self.p > 0:
            out = out + derham_d(self.contract(field))
        return out

    def pullback(self, A, eps) -> "TorusForm":
        """Pull back along t -> eps * t^A; delta_i pulls back to sum_k A[i][k] delta_k."""
        At = transpose_int(A)
        out: dict = {}
        for (I, a), v in self.terms.items():
            scale = Fraction(1)
            for e, k in zip(eps, a):
                if k:
                    scale = scale * (e ** k)
            b = mat_exp(At, a)
            # expand delta_{i1} ^ ... ^ delta_{ip} with delta_i -> sum_k A[i][k] delta_k
            partial = {(): Fraction(1)}
            for i in I:
                nxt: dict = {}
                for J, c in partial.items():
                    for k in range(self.r):
                        if A[i][k]:
                            s, K = _merge_sign(J, (k,))
                            if s:
                                nxt[K] = nxt.get(K, 0) + c * s * A[i][k]
                partial = nxt
            for K, c in partial.items():
                if c:
                    key = (K, b)
                    w = v * (scale * c)
                    out[key] = out[key] + w if key in out else w
        return TorusForm(self.p, self.r, self.dv, out)

    def restrict_to_circle(self, i: int, basepoint: Sequence | None = None) -> "TorusForm":
        """Pull back along s -> (b_1, .., s, .., b_r) (axis i, 0-based) to a form on T^1."""
        base = list(basepoint) if basepoint is not None else [Fraction(1)] * self.r
        out: dict = {}
        for (I, a), v in self.terms.items():
            if any(j != i for j in I):
                continue
            scale = Fraction(1)
            for j, k in enumerate(a):
                if j != i and k:
                    scale = scale * (base[j] ** k)
            key = (I and (0,) or (), (a[i],))
            w = v * scale
            out[key] = out[key] + w if key in out else w
        return TorusForm(self.p, 1, self.dv, out)


def derham_d(w: TorusForm) -> TorusForm:
    if w.p >= w.r:
        raise ValidationError("derham_d needs p < r")
    out: dict = {}
    for (I, a), v in w.terms.items():
        for i in range(w.r):
            if a[i] == 0:
                continue
            s, J = _insert_sign(i, I)
            if not s:
                continue
            key = (J, a)
            val = v * (s * a[i])
            if key in out:
                val = out[key] + val
                if val:
                    out[key] = val
                else:
                    del out[key]
            else:
                out[key] = val
    return TorusForm._raw(w.p + 1, w.r, w.dv, out)


def d_function(f: LaurentPoly) -> TorusForm:
    return derham_d(TorusForm.function(f))


def wedge(a: TorusForm, b: TorusForm, pairing: Callable[[Vec, Vec], Vec] | None = None) -> TorusForm:
    """Exterior product with values combined by ``pairing`` (default: scalar times vector)."""
    if a.r != b.r:
        raise ValidationError("forms on different tori")
    if pairing is None:
        if a.dv == 1:
            pairing = lambda x, y: y * x[0]  # noqa: E731
        elif b.dv == 1:
            pairing = lambda x, y: x * y[0]  # noqa: E731
        else:
            raise ValidationError("need a pairing for vector-valued forms")
    if a.p + b.p > a.r:
        # degrees above r form the zero space
        return TorusForm.zero(a.p + b.p, a.r, len(pairing(Vec.zero(a.dv), Vec.zero(b.dv))))
    out: dict = {}
    dv = None
    for (I, x), v in a.terms.items():
        for (J, y), w in b.terms.items():
            s, K = _merge_sign(I, J)
            if not s:
                continue
            val = pairing(v, w)
            dv = len(val)
            key = (K, add_exp(x, y))
            val = val if s > 0 else -val
            out[key] = out[key] + val if key in out else val
    if dv is None:
        dv = len(pairing(Vec.zero(a.dv), Vec.zero(b.dv)))
    return TorusForm(a.p + b.p, a.r, dv, out)


def wedge_kappa(a: TorusForm, b: TorusForm, kappa) -> TorusForm:
    """a ^_kappa b for k-valued forms (values are coordinate vectors in k)."""
    if a.dv != kappa.algebra.dim or b.dv != kappa.algebra.dim:
        raise ValidationError("forms must take values in the algebra of kappa")
    return wedge(a, b, lambda x, y: kappa(x, y))


def pivot_axis(a: Sequence[int]) -> int | None:
    for i, k in enumerate(a):
        if k:
            return i
    return None


class ReducedOneForm:
    """Class of a 1-form modulo exact forms, held by its canonical representative.

    For each multidegree alpha != 0 the delta-component along the first axis
    with alpha_i != 0 is eliminated using d(t^alpha) = t^alpha sum_i alpha_i delta_i.
    """

    __slots__ = ("rep",)

    def __init__(self, rep: TorusForm):
        self.rep = rep

    @property
    def r(self):
        return self.rep.r

    @property
    def dv(self):
        return self.rep.dv

    @classmethod
    def zero(cls, r: int, dv: int = 1) -> "ReducedOneForm":
        return cls(TorusForm.zero(1, r, dv))

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return ReducedOneForm(self.rep + other.rep)

    __radd__ = __add__

    def __neg__(self):
        return ReducedOneForm(-self.rep)

    def __sub__(self, other):
        return ReducedOneForm(self.rep - other.rep)

    def __mul__(self, s):
        return ReducedOneForm(self.rep * s)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.rep)

    def __eq__(self, other):
        if isinstance(other, ReducedOneForm):
            return self.rep == other.rep
        if isinstance(other, int) and other == 0:
            return not self.rep
        return NotImplemented

    def __hash__(self):
        return hash(self.rep)

    def __repr__(self):
        return f"Reduced{self.rep!r}"

    def integral(self, i: int) -> Vec:
        """Constant-term integral over the i-th circle (0-based)."""
        return self.rep.terms.get(((i,), zero_exp(self.r)), Vec.zero(self.dv))

    def loop_integral(self, i: int, basepoint: Sequence | None = None) -> Vec:
        """Integral along the circle through ``basepoint`` in direction i (0-based)."""
        c = self.rep.restrict_to_circle(i, basepoint)
        return c.terms.get(((0,), (0,)), Vec.zero(self.dv))

    def d(self) -> TorusForm:
        return derham_d(self.rep)

    def lie_derivative(self, field) -> "ReducedOneForm":
        return reduce_oneform(self.rep.lie_derivative(field))

    def pullback(self, A, eps) -> "ReducedOneForm":
        return reduce_oneform(self.rep.pullback(A, eps))

    def degrees(self) -> set:
        return self.rep.degrees()


def reduce_oneform(w: TorusForm) -> ReducedOneForm:
    if w.p != 1:
        raise ValidationError("reduce_oneform needs a 1-form")
    out: dict = {}
    for ((i,), a), v in w.terms.items():
        p = pivot_axis(a)
        if p is None or i != p:
            key = ((i,), a)
            out[key] = out[key] + v if key in out else v
            continue
        for j in range(w.r):
            if j != p and a[j]:
                key = ((j,), a)
                val = v * Fraction(-a[j], a[p])
                out[key] = out[key] + val if key in out else val
    return ReducedOneForm(TorusForm(1, w.r, w.dv, out))


def reduced_basis(r: int, a: Sequence[int]) -> list[int]:
    """Axes spanning the reduced 1-forms in degree a."""
    p = pivot_axis(a)
    return [i for i in range(r) if i != p]


def cycle_integral(w: ReducedOneForm, i: int) -> Vec:
    """Public 1-based form: constant-term integral over the i-th fundamental circle."""
    if not 1 <= i <= w.r:
        raise ValidationError(f"axis {i} out of range for r={w.r}")
    return w.integral(i - 1)
