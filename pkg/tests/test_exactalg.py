from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cocyclekit.errors import ValidationError
from cocyclekit.exactalg import (Cyclo, Field, FieldSpec, LaurentPoly, SparseMatrix, Subspace, field_make,
                                 image_basis, kernel_basis, laurent_partial, left_kernel_basis, rank, solve,
                                 verify_certificate)
from cocyclekit.exactalg.field import cyclotomic_poly, euler_phi

F = Fraction


def test_rational_field_divides_exactly():
    Q = field_make()
    assert Q.is_rational
    assert Q("3/4") / Q("1/2") == F(3, 2)
    assert Q.zero + Q.one == 1


def test_zeta4_squared_is_minus_one():
    K = field_make(FieldSpec("cyclotomic", 4))
    z = K.zeta
    assert z * z == -1


def test_zeta3_relation():
    K = Field(3)
    z = K.zeta
    assert 1 + z + z * z == 0


def test_cyclotomic_degree_matches_phi():
    for m in range(1, 25):
        assert len(cyclotomic_poly(m)) - 1 == euler_phi(m)


def test_cyclotomic_inverse_and_powers():
    K = Field(5)
    z = K.zeta
    assert z ** 5 == 1
    assert all(z ** k != 1 for k in range(1, 5))
    x = 2 + 3 * z - z ** 3
    assert x * x.inverse() == 1


def test_rational_values_demoted_to_fraction():
    K = Field(6)
    z = K.zeta
    assert isinstance(z ** 3, Fraction)
    assert z ** 3 == -1


def test_bad_field_spec_rejected():
    with pytest.raises(ValidationError):
        FieldSpec("quaternion", 1)
    with pytest.raises(ValidationError):
        FieldSpec("rational", 3)


def test_field_parses_coefficient_lists():
    K = Field(4)
    assert K(["0", "1"]) == K.zeta
    with pytest.raises(ValidationError):
        K(["1", "2", "3"])


def test_partial_of_monomials():
    t1_cubed = LaurentPoly(2, {(3, 0): F(1)})
    # public axes are 1-based
    assert laurent_partial(t1_cubed, 1) == t1_cubed * 3
    assert laurent_partial(LaurentPoly.constant(2, F(7)), 1) == LaurentPoly.zero(2)
    f = LaurentPoly(2, {(2, -1): F(1)})
    assert laurent_partial(f, 2) == -f
    with pytest.raises(ValidationError):
        laurent_partial(f, 0)


def test_partial_is_a_derivation():
    f = LaurentPoly(2, {(1, 2): F(3), (-1, 0): F(1, 2)})
    g = LaurentPoly(2, {(0, -1): F(-2), (2, 2): F(1)})
    for i in range(2):
        assert (f * g).partial(i) == f.partial(i) * g + f * g.partial(i)


def test_zero_matrix_has_full_kernel():
    A = SparseMatrix.from_dense([[0, 0], [0, 0]])
    assert len(kernel_basis(A)) == 2
    assert image_basis(A) == []


def test_identity_has_trivial_kernel_and_full_image():
    A = SparseMatrix.from_dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert kernel_basis(A) == []
    assert len(image_basis(A)) == 3


def test_rank_one_inconsistency_certificate():
    A = SparseMatrix.from_dense([[1, 1], [2, 2]])
    res = solve(A, [F(1), F(3)])
    assert not res.feasible
    assert res.certificate == [F(-2), F(1)]
    assert verify_certificate(A, [F(1), F(3)], res.certificate)


def test_solve_returns_exact_solution():
    A = SparseMatrix.from_dense([[2, 1], [1, 3]])
    res = solve(A, [F(1), F(2)])
    assert res.feasible
    assert A.apply(res.solution) == [F(1), F(2)]


def test_left_kernel_annihilates():
    A = SparseMatrix.from_dense([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    for y in left_kernel_basis(A):
        assert not any(A.left_apply(y))
    assert rank(A) == 2


def test_subspace_quotient_coordinates():
    S = Subspace(3, [[1, 1, 0]])
    assert S.contains([2, 2, 0])
    assert not S.contains([1, 0, 0])
    assert S.quotient_coords([1, 1, 0]) == [0, 0]


small = st.integers(-4, 4)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_nullity(rows):
    A = SparseMatrix.from_dense(rows)
    K = kernel_basis(A)
    assert rank(A) + len(K) == 4
    for v in K:
        assert not any(A.apply(v))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4),
       st.lists(small, min_size=4, max_size=4))
def test_solve_is_sound_either_way(rows, b):
    A = SparseMatrix.from_dense(rows)
    b = [F(x) for x in b[:A.nrows]]
    res = solve(A, b)
    if res.feasible:
        assert A.apply(res.solution) == b
    else:
        assert verify_certificate(A, b, res.certificate)


def test_sympy_rank_agrees():
    sympy = pytest.importorskip("sympy")
    rows = [[1, 2, 0, -1], [0, 1, 1, 1], [1, 3, 1, 0], [2, 0, -4, -6]]
    assert rank(SparseMatrix.from_dense(rows)) == sympy.Matrix(rows).rank()
