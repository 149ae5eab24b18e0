"""Multivariate Laurent polynomials with log-derivations d_i = t_i d/dt_i."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from ..errors import ValidationError

Exp = tuple  # multi-index in Z^r


def add_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def neg_exp(a: Exp) -> Exp:
    return tuple(-x for x in a)


def zero_exp(r: int) -> Exp:
    return (0,) * r


def unit_exp(r: int, i: int, k: int = 1) -> Exp:
    return tuple(k if j == i else 0 for j in range(r))


def mat_exp(A, a: Exp) -> Exp:
    """Integer matrix times exponent column."""
    return tuple(sum(A[i][k] * a[k] for k in range(len(a))) for i in range(len(A)))


def transpose_int(A):
    return [list(col) for col in zip(*A)]


def box(r: int, N: int) -> list[Exp]:
    """All exponents in [-N, N]^r, lexicographic."""
    out = [()]
    for _ in range(r):
        out = [e + (k,) for e in out for k in range(-N, N + 1)]
    return out


def in_box(a: Exp, N: int) -> bool:
    return all(abs(x) <= N for x in a)


class LaurentPoly:
    __slots__ = ("r", "terms")

    def __init__(self, r: int, terms: Mapping[Exp, object] | None = None):
        self.r = r
        clean = {}
        for a, c in (terms or {}).items():
            if len(a) != r:
                raise ValidationError(f"exponent {a} has wrong length for r={r}")
            if c:
                clean[tuple(a)] = c
        self.terms = clean

    @classmethod
    def monomial(cls, exp: Exp, coeff=Fraction(1)) -> "LaurentPoly":
        return cls(len(exp), {tuple(exp): coeff})

    @classmethod
    def constant(cls, r: int, c=Fraction(1)) -> "LaurentPoly":
        return cls(r, {zero_exp(r): c})

    @classmethod
    def zero(cls, r: int) -> "LaurentPoly":
        return cls(r)

    def _check(self, other: "LaurentPoly"):
        if other.r != self.r:
            raise ValidationError(f"Laurent polynomials in {self.r} and {other.r} variables")

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if other == 0:
                return self
            other = LaurentPoly.constant(self.r, other)
        self._check(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, 0) + c
        return LaurentPoly(self.r, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.r, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return LaurentPoly(self.r, {a: c * other for a, c in self.terms.items()})
        self._check(other)
        out: dict = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                e = add_exp(a, b)
                out[e] = out.get(e, 0) + c * d
        return LaurentPoly(self.r, out)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.r == other.r and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.r, tuple(sorted(self.terms.items()))))

    def items(self):
        """Terms in lexicographic exponent order."""
        return sorted(self.terms.items())

    def partial(self, i: int) -> "LaurentPoly":
        """t_i d/dt_i with a 0-based axis."""
        if not 0 <= i < self.r:
            raise ValidationError(f"axis {i} out of range for r={self.r}")
        return LaurentPoly(self.r, {a: a[i] * c for a, c in self.terms.items()})

    def coeff(self, exp: Exp):
        return self.terms.get(tuple(exp), Fraction(0))

    def constant_term(self):
        return self.coeff(zero_exp(self.r))

    def evaluate(self, point: Iterable):
        point = list(point)
        total = Fraction(0)
        for a, c in self.terms.items():
            v = c
            for x, k in zip(point, a):
                v = v * (x ** k)
            total = total + v
        return total

    def pullback(self, A, eps) -> "LaurentPoly":
        """Substitute t -> eps * t^A, i.e. (t^A)_i = prod_k t_k^{A[i][k]}."""
        At = transpose_int(A)
        out: dict = {}
        for a, c in self.terms.items():
            scale = c
            for e, k in zip(eps, a):
                if k:
                    scale = scale * (e ** k)
            b = mat_exp(At, a)
            out[b] = out.get(b, 0) + scale
        return LaurentPoly(self.r, out)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for a, c in self.items():
            mon = "*".join(f"t{i + 1}^{k}" for i, k in enumerate(a) if k)
            parts.append(f"{c}" + (f"*{mon}" if mon else ""))
        return " + ".join(parts)


def laurent_partial(f: LaurentPoly, i: int) -> LaurentPoly:
    """Public form with a 1-based axis as in the documentation."""
    return f.partial(i - 1)
