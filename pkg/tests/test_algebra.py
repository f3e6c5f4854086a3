import numpy as np
import pytest

from hochlift.algebra import (
    Algebra,
    Subspace,
    apply,
    center,
    cyclic_group_algebra,
    direct_product,
    ground_algebra,
    is_algebra_morphism,
    matrix_algebra,
    regular_bimodule,
    restrict_endo,
    restrict_scalars,
    truncated_polynomial,
    twisted_bimodule,
)
from hochlift.coeff import DualNumbers, ExtensionField, PrimeField
from hochlift.errors import DimensionMismatch, NotASubalgebra, NotPreserved
from hochlift.formats import algebra_from_json, algebra_to_json, endo_from_json, endo_to_json
from hochlift.samples import conjugation, polynomial_endo


def test_matrix_algebra_matches_numpy(rng):
    p, n = 5, 3
    A = matrix_algebra(PrimeField(p), n)
    for _ in range(5):
        X, Y = rng.integers(0, p, (2, n, n))
        got = A.multiply(X.reshape(-1), Y.reshape(-1))
        assert np.array_equal(got, (X @ Y % p).reshape(-1))


def test_truncated_polynomial_matches_convolution(rng):
    p, N = 3, 5
    A = truncated_polynomial(PrimeField(p), [N])
    assert A.labels == ["1", "x", "x^2", "x^3", "x^4"]
    u, v = rng.integers(0, p, (2, N))
    assert np.array_equal(A.multiply(u, v), np.convolve(u, v)[:N] % p)


def test_two_variable_labels_and_extra_relations():
    A = truncated_polynomial(PrimeField(2), [2, 3], extra=[(1, 2)])
    assert A.labels == ["1", "y", "y^2", "x", "x*y"]
    x, y2 = A.basis_vector(3), A.basis_vector(2)
    assert not np.any(A.multiply(x, y2))


@pytest.mark.parametrize(
    "A,expected",
    [
        (matrix_algebra(PrimeField(3), 2), 1),
        (matrix_algebra(PrimeField(2), 3), 1),
        (truncated_polynomial(PrimeField(5), [2, 3]), 6),
        (cyclic_group_algebra(PrimeField(2), 4), 4),
        (direct_product(ground_algebra(PrimeField(3)), matrix_algebra(PrimeField(3), 2)), 2),
    ],
    ids=["mat2_f3", "mat3_f2", "poly_f5", "c4_f2", "k_x_mat2"],
)
def test_center_dimension(A, expected):
    assert center(A).dim == expected


def test_restriction_of_scalars():
    K = ExtensionField(2, [1, 1, 1])
    A = restrict_scalars(direct_product(ground_algebra(K), matrix_algebra(K, 2)))
    assert A.dim == 10
    rep = A.validate()
    assert rep.associative and rep.unital and not rep.commutative
    # center = F_4 x F_4 * I, dimension 4 over F_2
    assert center(A).dim == 4


def test_validate_detects_broken_table():
    A = truncated_polynomial(PrimeField(3), [3])
    T = A.table.copy()
    # x * x^2 = x^2 while x^2 * x stays 0, so (x x) x != x (x x)
    T[1, 2] = [0, 0, 1]
    bad = Algebra(A.ring, T, A.unit, A.labels)
    assert not bad.validate().associative


def test_inner_automorphism_is_conjugation(rng):
    F = PrimeField(3)
    A = matrix_algebra(F, 2)
    f = conjugation(A, [1, 1, 0, 1])
    assert is_algebra_morphism(A, f)
    U = np.array([[1, 1], [0, 1]])
    U_inv = np.array([[1, 2], [0, 1]])
    X = rng.integers(0, 3, (2, 2))
    assert np.array_equal(apply(F, f, X.reshape(-1)), (U @ X @ U_inv % 3).reshape(-1))


def test_polynomial_endo_and_failure():
    F = PrimeField(5)
    A = truncated_polynomial(F, [3])
    x = A.basis_vector(1)
    f = polynomial_endo(A, [A.multiply(x, x)])  # x -> x^2
    assert is_algebra_morphism(A, f)
    g = F.eye(3)
    g[2, 2] = 2  # linear, not multiplicative
    assert not is_algebra_morphism(A, g)
    with pytest.raises(DimensionMismatch):
        is_algebra_morphism(A, F.eye(2))


def test_twisted_bimodule_actions(rng):
    F = PrimeField(5)
    A = truncated_polynomial(F, [2, 2])
    x, y = A.basis_vector(2), A.basis_vector(1)
    f = polynomial_endo(A, [y, x])  # swap
    M = twisted_bimodule(A, f)
    assert M.check_axioms()
    a, m, b = rng.integers(0, 5, (3, 4))
    expect = A.multiply(A.multiply(apply(F, f, a), m), apply(F, f, b))
    assert np.array_equal(M.act_right(M.act_left(a, m), b), expect)


def test_restrict_endo_witness():
    F = PrimeField(3)
    A = truncated_polynomial(F, [3])
    B = Subspace(F, [[0, 1, 0]], 3)  # span of x
    f = polynomial_endo(A, [A.multiply(A.basis_vector(1), A.basis_vector(1))])
    with pytest.raises(NotPreserved) as info:
        restrict_endo(f, B)
    assert info.value.witness.tolist() == [0, 1, 0]
    with pytest.raises(NotASubalgebra):
        B.subalgebra(A)


def test_base_change_and_reduce():
    k = PrimeField(3)
    A = matrix_algebra(k, 2)
    R = DualNumbers(k)
    AR = A.base_change(R)
    assert AR.ring == R
    assert np.array_equal(AR.reduce().table, A.table)


def test_algebra_json_roundtrip():
    K = ExtensionField(2, [1, 1, 1])
    for A in (matrix_algebra(PrimeField(3), 2), truncated_polynomial(K, [2, 2])):
        B = algebra_from_json(algebra_to_json(A))
        assert B.ring == A.ring
        assert np.array_equal(B.table, A.table)
        assert np.array_equal(B.unit, A.unit)
    A = matrix_algebra(PrimeField(3), 2)
    f = conjugation(A, [1, 1, 0, 1])
    assert np.array_equal(endo_from_json(endo_to_json(A, f), A), f)


def test_regular_bimodule_invariants_are_center():
    A = matrix_algebra(PrimeField(2), 2)
    inv = regular_bimodule(A).invariants()
    Z = center(A)
    assert inv.dim == Z.dim == 1
    assert inv.contains(A.unit)
