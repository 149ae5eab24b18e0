import random
from fractions import Fraction
from itertools import combinations

import pytest

from cocyclekit.ce import evaluate_d
from cocyclekit.errors import NotClosed, ValidationError
from cocyclekit.exactalg import LaurentPoly, Vec
from cocyclekit.mapalg import type1_cocycle
from cocyclekit.torusforms import TorusForm, derham_d, reduce_oneform
from cocyclekit.vfields import (VFieldAlgebra, VectorField, act_field, batch_independence, beta_cup_psibar1,
                                coboundary_of, constant_function_cocycle, crossed_hom_failure, crossed_hom_theta,
                                gl_mapping_algebra, kappa_trace, phi_k, psi2_cocycle, psi_k, psibar1_wedge_psi1,
                                psibar1_wedge_psi1_cocycle, psibar2_cocycle, psibar_k, pullback_cocycle,
                                transfer_cocycle, virasoro_cocycle, virasoro_shift_potential,
                                window_coboundary_cert, witt)

F = Fraction


def poly1(exp, c=1):
    return LaurentPoly(1, {(exp,): F(c)})


def test_witt_bracket():
    for m in range(-4, 5):
        for n in range(-4, 5):
            assert witt(m).bracket(witt(n)) == witt(m + n) * (n - m)


def test_vector_field_jacobi_on_window():
    B = VFieldAlgebra(2).basis(1)
    for X, Y, Z in combinations(B, 3):
        jac = X.bracket(Y).bracket(Z) + Y.bracket(Z).bracket(X) + Z.bracket(X).bracket(Y)
        assert not jac


def test_theta_of_witt_basis():
    for m in range(-3, 4):
        assert crossed_hom_theta(witt(m)) == [[poly1(m, -m)]]


def test_theta_of_constant_fields_vanishes():
    for i in range(2):
        th = crossed_hom_theta(VectorField.monomial(2, i, (0, 0)))
        assert all(not f for row in th for f in row)


def test_crossed_homomorphism_law():
    assert crossed_hom_failure(witt(2), witt(-3)) is None
    rng = random.Random(0)
    B = VFieldAlgebra(2).basis(2)
    for _ in range(40):
        assert crossed_hom_failure(rng.choice(B) + rng.choice(B), rng.choice(B)) is None


def test_psibar1_and_psi1_on_witt():
    for m in range(-3, 4):
        assert psibar_k(1, witt(m)) == poly1(m, -m)
        assert psi_k(1, witt(m)) == TorusForm.monomial((0,), (m,), (F(-m * m),))


def test_psibar2_on_witt_pairs():
    for m in range(-4, 5):
        val = psibar_k(2, witt(m), witt(-m))
        assert val.integral(0) == (2 * m ** 3,)


def test_d_of_psibar_is_psi():
    B = VFieldAlgebra(2).basis(2)
    for X in B:
        assert derham_d(TorusForm.function(psibar_k(1, X))) == psi_k(1, X)
    for X, Y in combinations(B[:20], 2):
        assert psibar_k(2, X, Y).d() == psi_k(2, X, Y)


def test_phi1_is_trace_and_closed():
    V = VFieldAlgebra(2)
    B = V.basis(1)
    for X in B:
        assert phi_k(1, X) == psibar_k(1, X)
    fn = lambda X: TorusForm.function(phi_k(1, X))  # noqa: E731
    for X, Y in combinations(B, 2):
        assert not evaluate_d(fn, (X, Y), V.bracket, act_field)


def test_phi2_alternating_and_closed_on_circle():
    V = VFieldAlgebra(1)
    B = V.basis(2)
    X, Y, Z = B[0], B[1], B[3]
    assert phi_k(2, X, Y, Z) == -phi_k(2, Y, X, Z)
    # on T^1 theta is 1x1, so the alternating sum of commuting products vanishes identically
    assert not phi_k(2, X, Y, Z)


def test_psi_cocycles_closed_on_window():
    V = VFieldAlgebra(2)
    triples = list(combinations(V.basis(1), 3))
    for w in (psibar2_cocycle(2), psi2_cocycle(2), psibar1_wedge_psi1_cocycle(2)):
        assert w.is_closed_on(triples)


def test_pullback_identities_on_witt():
    g = gl_mapping_algebra(1)
    w2 = pullback_cocycle(type1_cocycle(g, kappa_trace(1, "tr(xy)")))
    for m in range(-6, 7):
        for n in range(-6, 7):
            assert w2(witt(m), witt(n)) * 2 == psibar_k(2, witt(m), witt(n))
            # integral of theta* omega is m n^2 delta_{m+n,0}
            assert w2(witt(m), witt(n)).integral(0) == (m * n * n if m + n == 0 else 0,)


def test_pullback_of_trace_product_on_two_torus():
    g = gl_mapping_algebra(2)
    w1 = pullback_cocycle(type1_cocycle(g, kappa_trace(2, "tr(x)tr(y)")))
    B = VFieldAlgebra(2).basis(1)
    for X, Y in combinations(B, 2):
        assert w1(X, Y) * 2 == psibar1_wedge_psi1(X, Y)


def test_virasoro_values():
    vir = virasoro_cocycle()
    for m in range(-5, 6):
        assert vir(witt(m), witt(-m)) == (2 * m ** 3,)
    for n in range(-5, 6):
        if n:
            assert vir(witt(0), witt(n)) == (0,)


def test_virasoro_matches_pullback_integral():
    vir = virasoro_cocycle()
    pb = pullback_cocycle(type1_cocycle(gl_mapping_algebra(1), kappa_trace(1, "tr(xy)")))
    for m in range(-5, 6):
        for n in range(-5, 6):
            assert vir(witt(m), witt(n)) == pb(witt(m), witt(n)).integral(0) * 2


def test_virasoro_shift_to_classical_normal_form():
    W = VFieldAlgebra(1)
    shifted = virasoro_cocycle() + coboundary_of(virasoro_shift_potential(), W, None, "scalar", 1)
    for m in range(-5, 6):
        assert shifted(witt(m), witt(-m)) == (2 * (m ** 3 - m),)
    assert shifted.is_closed_on(list(combinations(W.basis(3), 3)))


def test_transfer_of_volume_form():
    vol = TorusForm.monomial((0, 1), (0, 0))
    w = transfer_cocycle(vol)
    B = VFieldAlgebra(2).basis(1)
    assert w.is_closed_on(list(combinations(B, 3)))
    X, Y = B[0], B[5]
    assert w(X, Y) == -w(Y, X)
    assert w(X, Y) == vol.contract(X.components).contract(Y.components)


def test_transfer_rejects_non_closed_form():
    with pytest.raises(NotClosed):
        transfer_cocycle(TorusForm.monomial((0, 1), (0, 0, 1)))


def test_transfer_of_exact_form_is_window_coboundary():
    w = derham_d(TorusForm.monomial((0,), (1, 1)))
    cert = window_coboundary_cert(transfer_cocycle(w), 1)
    assert cert.feasible


def test_window_cert_feasible_for_coboundary():
    W = VFieldAlgebra(1)
    beta = lambda X: TorusForm.function(X.components[0] * 3)  # noqa: E731
    dbeta = coboundary_of(beta, W, act_field, "function", 1)
    cert = window_coboundary_cert(dbeta, 2)
    assert cert.feasible and cert.status.startswith("feasible")


def test_window_cert_virasoro_infeasible():
    cert = window_coboundary_cert(virasoro_cocycle(), 3)
    assert not cert.feasible and cert.status == "infeasible"
    assert cert.info["y.w"] != 0


def test_batch_independence_of_two_function_classes():
    cert = batch_independence([beta_cup_psibar1(), constant_function_cocycle(virasoro_cocycle())], 3)
    assert cert.independent and cert.verify()


def test_batch_independence_detects_dependency():
    V1 = constant_function_cocycle(virasoro_cocycle())
    cert = batch_independence([V1, V1 * 2], 2)
    assert not cert.independent
    assert cert.dependency is not None and any(cert.dependency)


def test_psi_k_rejects_unsupported_degree():
    with pytest.raises(ValidationError):
        psi_k(3, witt(1), witt(2), witt(3))
