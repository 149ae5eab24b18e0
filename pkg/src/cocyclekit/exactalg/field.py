"""Rational and cyclotomic scalars.

Rational numbers are plain :class:`fractions.Fraction` objects.  Elements of
Q(zeta_m) with a non-rational part are :class:`Cyclo` instances; every
operation that produces a rational value demotes back to ``Fraction`` so
that equality and hashing agree across the two representations.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from ..errors import ValidationError


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1] // den[-1]
        out[k] = c
        for j, d in enumerate(den):
            num[k + j] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    p = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            p = _poly_divexact(p, list(cyclotomic_poly(d)))
    return tuple(p)


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


@lru_cache(maxsize=None)
def _reduction_table(m: int) -> tuple[tuple[Fraction, ...], ...]:
    # row k holds x^k mod Phi_m for 0 <= k <= 2(phi-1)
    phi = cyclotomic_poly(m)
    n = len(phi) - 1
    rows = []
    cur = [Fraction(0)] * n
    cur[0] = Fraction(1)
    for _ in range(max(2 * n - 1, 1)):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if top:
            for j in range(n):
                cur[j] -= top * phi[j]
    return tuple(rows)


class Cyclo:
    """Element of Q[x]/(Phi_m) with at least one non-constant coefficient."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        self.order = order
        self.coeffs = tuple(coeffs)

    @staticmethod
    def make(order: int, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if not any(coeffs[1:]):
            return coeffs[0] if coeffs else Fraction(0)
        return Cyclo(order, coeffs)

    def _lift(self, other):
        if isinstance(other, Cyclo):
            if other.order != self.order:
                raise ValidationError(f"mixing Q(zeta_{self.order}) and Q(zeta_{other.order})")
            return other.coeffs
        if isinstance(other, (int, Fraction)):
            return (Fraction(other),) + (Fraction(0),) * (len(self.coeffs) - 1)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Cyclo.make(self.order, (a + b for a, b in zip(self.coeffs, o)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Cyclo.make(self.order, (a - b for a, b in zip(self.coeffs, o)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Fraction(0)
            return Cyclo(self.order, tuple(a * other for a in self.coeffs))
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = len(self.coeffs)
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o):
                    if b:
                        prod[i + j] += a * b
        table = _reduction_table(self.order)
        out = [Fraction(0)] * n
        for k, c in enumerate(prod):
            if c:
                for j, t in enumerate(table[k]):
                    if t:
                        out[j] += c * t
        return Cyclo.make(self.order, out)

    __rmul__ = __mul__

    def inverse(self):
        # solve (self * y) = 1 as a dense linear system in the power basis
        n = len(self.coeffs)
        cols = []
        for j in range(n):
            basis = [Fraction(0)] * n
            basis[j] = Fraction(1)
            v = self * Cyclo(self.order, basis)
            vc = v.coeffs if isinstance(v, Cyclo) else (v,) + (Fraction(0),) * (n - 1)
            cols.append(vc)
        aug = [[cols[j][i] for j in range(n)] + [Fraction(int(i == 0))] for i in range(n)]
        for c in range(n):
            p = next(r for r in range(c, n) if aug[r][c])
            aug[c], aug[p] = aug[p], aug[c]
            inv = 1 / aug[c][c]
            aug[c] = [x * inv for x in aug[c]]
            for r in range(n):
                if r != c and aug[r][c]:
                    f = aug[r][c]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
        return Cyclo.make(self.order, (aug[i][n] for i in range(n)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclo(self.order, tuple(a / other for a in self.coeffs))
        if isinstance(other, Cyclo):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = Fraction(1), self
        while k:
            if k & 1:
                out = base * out
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return True  # rational values are always demoted to Fraction

    def __eq__(self, other):
        if isinstance(other, Cyclo):
            return self.order == other.order and self.coeffs == other.coeffs
        return False

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        return f"Cyclo[{self.order}](" + " + ".join(terms) + ")"


@dataclass(frozen=True)
class FieldSpec:
    kind: str = "rational"
    order: int = 1

    def __post_init__(self):
        if self.kind not in ("rational", "cyclotomic"):
            raise ValidationError(f"unknown field kind {self.kind!r}")
        if self.order < 1:
            raise ValidationError("cyclotomic order must be a positive integer")
        if self.kind == "rational" and self.order != 1:
            raise ValidationError("rational fields have order 1")


class Field:
    """Arithmetic context for Q(zeta_m); m = 1 is Q itself."""

    def __init__(self, order: int = 1):
        if order < 1:
            raise ValidationError("cyclotomic order must be a positive integer")
        self.order = order
        self.degree = len(cyclotomic_poly(order)) - 1
        self.zero = Fraction(0)
        self.one = Fraction(1)

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    @property
    def zeta(self):
        if self.order == 1:
            return Fraction(1)
        if self.order == 2:
            return Fraction(-1)
        return Cyclo(self.order, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2))

    def zeta_power(self, k: int):
        return self.zeta ** (k % self.order) if self.order > 2 else self.zeta ** k

    def __call__(self, value):
        if isinstance(value, Cyclo):
            if value.order != self.order:
                raise ValidationError(f"scalar from Q(zeta_{value.order}) in Q(zeta_{self.order})")
            return value
        if isinstance(value, (list, tuple)):
            if len(value) != self.degree:
                raise ValidationError(f"expected {self.degree} cyclotomic coefficients, got {len(value)}")
            return Cyclo.make(self.order, (parse_rational(c) for c in value))
        return parse_rational(value)

    def contains(self, value) -> bool:
        return not isinstance(value, Cyclo) or value.order == self.order

    def __eq__(self, other):
        return isinstance(other, Field) and other.order == self.order

    def __hash__(self):
        return hash(("Field", self.order))

    def __repr__(self):
        return "Field(Q)" if self.order == 1 else f"Field(Q(zeta_{self.order}))"

    @property
    def spec(self) -> FieldSpec:
        return FieldSpec("rational", 1) if self.order == 1 else FieldSpec("cyclotomic", self.order)


def field_make(spec: FieldSpec | None = None) -> Field:
    spec = spec or FieldSpec()
    return Field(spec.order)


def parse_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValidationError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad rational literal {value!r}") from exc
    raise ValidationError(f"cannot read {value!r} as an exact scalar")


def scalar_to_json(x):
    """Fractions become "a" or "a/b"; cyclotomic values become coefficient lists."""
    if isinstance(x, Cyclo):
        return [str(c) for c in x.coeffs]
    return str(Fraction(x))
