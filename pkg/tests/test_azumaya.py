import numpy as np
import pytest

from hochlift.algebra import (
    Bimodule,
    ground_line,
    is_algebra_morphism,
    matrix_algebra,
    truncated_polynomial,
    twisted_bimodule,
)
from hochlift.azumaya import (
    azumaya_check,
    center_preserved,
    e_M_projection,
    is_central,
    nonconstant_degree_example,
    projection_report,
    restriction_injectivity_probe,
    separability_element,
)
from hochlift.coeff import PrimeField
from hochlift.errors import Infeasible, NotARingMorphism, NotDiagonal
from hochlift.liftkit import matrix_lift
from hochlift.samples import conjugation, inner_automorphisms


def test_mat2_separability_element_by_hand():
    # e = sum_i E_i1 (x) E_1i satisfies mu(e) = 1 and a e = e a
    A = matrix_algebra(PrimeField(3), 2)
    sep = separability_element(A)
    assert sep.verify()
    E = sep.envelope
    hand = A.ring.zeros((4, 4))
    hand[0, 0] = 1  # E11 (x) E11
    hand[2, 1] = 1  # E21 (x) E12
    assert np.array_equal(E.normal_form(hand.reshape(-1)), sep.vector)


@pytest.mark.parametrize("n,p", [(2, 2), (2, 5), (3, 3)])
def test_matrix_algebras_are_azumaya(n, p):
    rep = azumaya_check(matrix_algebra(PrimeField(p), n))
    assert rep.separable_over_center
    assert rep.center_dim == 1 and rep.rank_over_center == n * n


def test_dual_numbers_not_separable():
    A = truncated_polynomial(PrimeField(2), [2])
    with pytest.raises(Infeasible) as info:
        separability_element(A, ground_line(A))
    assert info.value.certificate is not None
    # over its own center (all of A) it is separable
    assert azumaya_check(A).separable_over_center


def test_commutative_algebra_separable_over_itself():
    # over Z = A the envelope is A itself and e = 1
    A = truncated_polynomial(PrimeField(2), [2])
    assert separability_element(A).verify()


def test_projection_on_twisted_bimodule():
    A = matrix_algebra(PrimeField(3), 2)
    sep = separability_element(A)
    f = conjugation(A, [1, 1, 0, 1])
    M = twisted_bimodule(A, f)
    rep = projection_report(sep, M)
    assert rep.idempotent and rep.z_linear and rep.image_is_invariants


def test_projection_requires_diagonal_module():
    A = truncated_polynomial(PrimeField(3), [2])
    sep = separability_element(A)
    M = twisted_bimodule(A, A.ring.asarray([[1, 0], [0, 2]]))  # x -> 2x
    assert is_algebra_morphism(A, M.twist)
    # x acts as 2x on both sides, so M is still Z-diagonal here
    assert e_M_projection(sep, M).shape == (2, 2)
    skew = Bimodule(A, M.left, M.right.copy())
    skew.right[1] = A.ring.zeros((2, 2))
    with pytest.raises(NotDiagonal):
        e_M_projection(sep, skew)


def test_counterexample_witness_by_hand():
    A, f, K = nonconstant_degree_example()
    check = center_preserved(A, f)
    assert not check.preserved
    # w in the first factor: index 0*2 + 1
    assert check.witness.tolist() == [0, 1, 0, 0, 0, 0, 0, 0, 0, 0]
    # its image is (w, diag(w, w^2)), not central
    assert check.image.tolist() == [0, 1, 0, 1, 0, 0, 0, 0, 1, 1]
    assert not is_central(A, check.image)


def test_inner_automorphisms_preserve_center(rng):
    for n, p in ((2, 3), (3, 2)):
        A = matrix_algebra(PrimeField(p), n)
        for f in inner_automorphisms(A, n, 3, rng):
            assert center_preserved(A, f).preserved


def test_center_preserved_rejects_non_morphisms():
    A = matrix_algebra(PrimeField(3), 2)
    with pytest.raises(NotARingMorphism):
        center_preserved(A, A.ring.zeros((4, 4)))


def test_restriction_probe_on_matrix_lift():
    L = matrix_lift(PrimeField(3), 2)
    f = conjugation(L.base, [1, 1, 0, 1])
    rep = restriction_injectivity_probe(L, f)
    assert rep.restricted_solvable and rep.global_solvable and rep.consistent
