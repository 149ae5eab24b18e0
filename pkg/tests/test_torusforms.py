import random
from fractions import Fraction

import pytest

from cocyclekit.ce import killing_form
from cocyclekit.errors import ValidationError
from cocyclekit.exactalg import LaurentPoly, Vec
from cocyclekit.liealg import sl
from cocyclekit.torusforms import (ReducedOneForm, TorusForm, cycle_integral, d_function, derham_d,
                                   reduce_oneform, wedge, wedge_kappa)

F = Fraction


def mono(I, exp, c=1):
    return TorusForm.monomial(I, exp, (F(c),))


def random_poly(rng, r, n=4, N=3):
    return LaurentPoly(r, {tuple(rng.randint(-N, N) for _ in range(r)): F(rng.randint(-3, 3)) for _ in range(n)})


def test_d_of_t1t2():
    f = LaurentPoly(2, {(1, 1): F(1)})
    assert d_function(f) == mono((0,), (1, 1)) + mono((1,), (1, 1))


def test_d_of_t2_delta1():
    assert derham_d(mono((0,), (0, 1))) == mono((0, 1), (0, 1), -1)


def test_d_of_constant_is_zero():
    assert not d_function(LaurentPoly.constant(3, F(5)))


def test_d_squared_vanishes():
    rng = random.Random(0)
    for _ in range(20):
        f = random_poly(rng, 3)
        assert not derham_d(d_function(f))
        w = mono((rng.randrange(3),), tuple(rng.randint(-2, 2) for _ in range(3)))
        assert not derham_d(derham_d(w))


def test_reduce_kills_exact_forms():
    assert not reduce_oneform(d_function(LaurentPoly(2, {(3, 1): F(1)})))


def test_reduce_on_circle_keeps_constant_term():
    for m in range(-4, 5):
        red = reduce_oneform(mono((0,), (m,)))
        assert (red == ReducedOneForm(mono((0,), (0,)))) if m == 0 else not red


def test_reduce_in_degree_one_one():
    # t1 t2 (delta1 + delta2) is exact, so t1 t2 delta1 has delta2-component -1 after pivot elimination
    red = reduce_oneform(mono((0,), (1, 1)))
    assert red.rep == mono((1,), (1, 1), -1)
    assert not reduce_oneform(mono((0,), (1, 1)) + mono((1,), (1, 1)))


def test_cycle_integral_normalization():
    w = ReducedOneForm(mono((0,), (0, 0)))
    assert cycle_integral(w, 1) == (1,)
    assert cycle_integral(w, 2) == (0,)
    with pytest.raises(ValidationError):
        cycle_integral(w, 0)


def test_cycle_integral_of_exact_is_zero():
    rng = random.Random(1)
    for _ in range(10):
        red = reduce_oneform(d_function(random_poly(rng, 2)))
        assert cycle_integral(red, 1) == (0,) and cycle_integral(red, 2) == (0,)


def test_cycle_integral_on_circle_picks_constant_term():
    for m in range(-3, 4):
        assert cycle_integral(reduce_oneform(mono((0,), (m,))), 1) == (int(m == 0),)


def test_wedge_kappa_of_axis_forms():
    k = sl(2)
    K = killing_form(k)
    x, y = Vec((F(0), F(1), F(0))), Vec((F(0), F(0), F(1)))  # e, f
    a = TorusForm.monomial((0,), (1, 0), x)
    b = TorusForm.monomial((1,), (0, 1), y)
    assert wedge_kappa(a, b, K) == mono((0, 1), (1, 1), 4)


def test_wedge_kappa_of_a_form_with_itself():
    k = sl(2)
    K = killing_form(k)
    h = Vec((F(1), F(0), F(0)))
    single = TorusForm.monomial((0,), (2, 1), h)
    assert not wedge_kappa(single, single, K)
    mixed = single + TorusForm.monomial((1,), (0, 1), Vec((F(0), F(1), F(0))))
    assert not wedge_kappa(mixed, mixed, K)  # kappa symmetric, wedge alternating


def test_wedge_on_circle_vanishes():
    assert not wedge(mono((0,), (2,)), mono((0,), (-1,)))


def test_wedge_graded_commutativity():
    a, b = mono((0,), (1, 0)), mono((1,), (0, 2))
    assert wedge(a, b) == -wedge(b, a)


def test_leibniz_rule():
    rng = random.Random(2)
    for _ in range(10):
        f = TorusForm.function(random_poly(rng, 3))
        a = mono((rng.randrange(3),), (1, -1, 0))
        assert derham_d(wedge(f, a)) == wedge(derham_d(f), a) + wedge(f, derham_d(a))


def test_cartan_formula_for_forms():
    field = [LaurentPoly(2, {(1, 0): F(1)}), LaurentPoly(2, {(0, -1): F(2)})]
    w = mono((0,), (1, 2)) + mono((1,), (-1, 0), 3)
    lhs = w.lie_derivative(field)
    assert lhs == derham_d(w).contract(field) + derham_d(w.contract(field))


def test_reduced_forms_are_closed_under_lie_derivative():
    field = [LaurentPoly(1, {(2,): F(1)})]
    red = reduce_oneform(mono((0,), (0,)))
    # L_X delta = d(i_X delta) = d(t^2) is exact, so its class vanishes
    assert not red.lie_derivative(field)


def test_restrict_to_circle_reads_constant_coefficients():
    w = mono((1,), (3, 0), 2) + mono((0,), (0, 1))
    c = w.restrict_to_circle(1)
    assert c.terms == {((0,), (0,)): Vec((F(2),))}


def test_pullback_of_inversion():
    # t1 -> t1^{-1}: delta1 -> -delta1, t1 -> t1^{-1}
    w = mono((0,), (2, 0))
    assert w.pullback([[-1, 0], [0, 1]], (F(1), F(1))) == mono((0,), (-2, 0), -1)


def test_monomial_rejects_repeated_axis():
    with pytest.raises(ValidationError):
        TorusForm.monomial((0, 0), (0, 0))
