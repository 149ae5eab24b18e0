from fractions import Fraction

import pytest

from cocyclekit.errors import (AntisymmetryViolation, JacobiViolation, NotADerivation, NotAHomomorphism,
                               NotAModule)
from cocyclekit.exactalg import Field, Subspace
from cocyclekit.liealg import (LieAlgebra, ModuleAction, SemidirectData, abelian, adjoint_module, aff1, center,
                               coadjoint_module, cotangent, derived_subalgebra, gl, heisenberg, is_perfect,
                               lie_from_structure, semidirect_sum, sl, standard_algebra)

F = Fraction
Q = Field()


def test_sl2_from_structure_constants():
    g = lie_from_structure(Q, ["h", "e", "f"], {("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}, ("e", "f"): {"h": 1}})
    assert g == sl(2)


def test_abelian_structure_is_valid():
    g = lie_from_structure(Q, ["x", "y", "z"], {})
    assert g.dim == 3 and not g.brackets


def test_jacobi_violation_reports_triple():
    with pytest.raises(JacobiViolation) as exc:
        lie_from_structure(Q, ["x", "y", "z"], {("x", "y"): {"z": 1}, ("x", "z"): {"y": 1}, ("y", "z"): {"y": 1}})
    assert exc.value.witness == ("x", "y", "z")


def test_jacobi_violation_by_hand_expansion():
    # [[x,y],z] + [[y,z],x] + [[z,x],y] = [z,z] + [y,x] - [y,y] = -z
    g = LieAlgebra(Q, ["x", "y", "z"], {(0, 1): [0, 0, 1], (0, 2): [0, 1, 0], (1, 2): [0, 1, 0]}, validate=False)
    x, y, z = (g.basis_vector(i) for i in range(3))
    jac = g.bracket(g.bracket(x, y), z) + g.bracket(g.bracket(y, z), x) + g.bracket(g.bracket(z, x), y)
    assert jac == (0, 0, -1)
    assert g.jacobi_failure() == (0, 1, 2)


def test_inconsistent_antisymmetry_rejected():
    with pytest.raises(AntisymmetryViolation):
        lie_from_structure(Q, ["x", "y"], {("x", "y"): {"y": 1}, ("y", "x"): {"y": 1}})
    with pytest.raises(AntisymmetryViolation):
        lie_from_structure(Q, ["x", "y"], {("x", "x"): {"y": 1}})


def test_standard_algebra_dimensions():
    assert standard_algebra("gl", 2).dim == 4
    assert standard_algebra("cotangent", aff1()).dim == 4
    s3 = standard_algebra("sl", 3)
    assert s3.dim == 8 and is_perfect(s3)


def test_sl2_perfect_and_centerless():
    g = sl(2)
    assert is_perfect(g)
    assert center(g) == []


def test_heisenberg_derived_equals_center():
    g = heisenberg()
    D = Subspace(3, derived_subalgebra(g))
    Z = Subspace(3, center(g))
    assert D.rank == 1 and D.equals(Z)
    assert D.contains([0, 0, 1])


def test_abelian_has_zero_derived_algebra():
    assert derived_subalgebra(abelian(4)) == []


def test_cotangent_brackets_follow_coadjoint_action():
    T = cotangent(aff1())
    assert T.names == ("a_x", "a_y", "x", "y")
    # (x.a_y)(y) = -a_y([x, y]) = -1, so [x, a_y] = -a_y
    xa = T.bracket(T.basis_vector(2), T.basis_vector(1))
    assert xa == (0, -1, 0, 0)


def test_semidirect_identity_action_gives_aff1():
    data = SemidirectData(abelian(1), abelian(1), ([[F(1)]],))
    h = semidirect_sum(data)
    # [n, x] = -S(x) n = -n, so x acts on n with weight 1, as in aff(1)
    assert h.bracket(h.basis_vector(1), h.basis_vector(0)) == (1, 0)
    assert is_perfect(h) is False and len(derived_subalgebra(h)) == 1


def test_semidirect_heisenberg_grading_is_lie():
    S = ([[F(1), 0, 0], [0, F(1), 0], [0, 0, F(2)]],)
    h = semidirect_sum(SemidirectData(heisenberg(), abelian(1), S))
    assert h.dim == 4 and h.jacobi_failure() is None
    assert not is_perfect(h)


def test_non_derivation_rejected():
    S = ([[F(1), 0, 0], [0, F(1), 0], [0, 0, F(1)]],)
    with pytest.raises(NotADerivation):
        semidirect_sum(SemidirectData(heisenberg(), abelian(1), S))


def test_non_homomorphism_rejected():
    S = tuple([[F(1)]] for _ in range(3))
    with pytest.raises(NotAHomomorphism):
        semidirect_sum(SemidirectData(abelian(1), sl(2), S))


def test_modules_satisfy_representation_law():
    for g in (sl(2), gl(2), heisenberg(), cotangent(aff1())):
        assert adjoint_module(g).failure() is None
        assert coadjoint_module(g).failure() is None


def test_bad_module_rejected():
    g = sl(2)
    rho = [[[F(1), 0], [0, F(1)]]] * 3
    with pytest.raises(NotAModule):
        ModuleAction(g, 2, rho)


def test_automorphism_check():
    g = sl(2)
    swap = [[F(-1), 0, 0], [0, 0, F(-1)], [0, F(-1), 0]]  # x -> -x^T
    assert g.is_automorphism(swap)
    assert not g.is_automorphism([[F(2), 0, 0], [0, F(1), 0], [0, 0, F(1)]])


def test_gl2_matrix_realization_matches_brackets():
    g = gl(2)
    from cocyclekit.exactalg.linalg import commutator
    for i in range(4):
        for j in range(4):
            c = commutator(g.matrices[i], g.matrices[j])
            v = g.bracket_basis(i, j)
            lin = [[sum(v[k] * g.matrices[k][r][s] for k in range(4)) for s in range(2)] for r in range(2)]
            assert lin == c
