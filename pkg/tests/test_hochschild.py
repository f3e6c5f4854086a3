import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hochlift import linalg
from hochlift.algebra import (
    cyclic_group_algebra,
    ground_algebra,
    matrix_algebra,
    regular_bimodule,
    truncated_polynomial,
    twisted_bimodule,
)
from hochlift.coeff import PrimeField
from hochlift.errors import DegreeOutOfRange, Infeasible, NotACocycle
from hochlift.hochschild import (
    Cochain,
    coboundary_solve,
    cochain_from_json,
    cochain_to_json,
    delta,
    delta_matrix,
    hh_dim,
    is_cocycle,
    is_symmetric,
    random_cochain,
)
from hochlift.samples import polynomial_endo, random_cocycle


def truncated_hh(n, p):
    # periodic resolution of k[x]/(x^n): maps alternate between 0 and n x^(n-1)
    if n % p == 0:
        return (n, n, n)
    return (n, n - 1, n - 1)


@pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (3, 3), (3, 2), (4, 2), (4, 5)])
def test_hh_of_truncated_polynomials(n, p):
    M = regular_bimodule(truncated_polynomial(PrimeField(p), [n]))
    assert tuple(hh_dim(M, k) for k in range(3)) == truncated_hh(n, p)


@pytest.mark.parametrize(
    "A,expected",
    [
        (ground_algebra(PrimeField(5)), (1, 0, 0)),
        (matrix_algebra(PrimeField(3), 2), (1, 0, 0)),  # Morita invariance
        (cyclic_group_algebra(PrimeField(5), 3), (3, 0, 0)),  # semisimple
        (cyclic_group_algebra(PrimeField(3), 3), (3, 3, 3)),  # k[x]/(x^3)
    ],
    ids=["ground", "mat2", "c3_f5", "c3_f3"],
)
def test_hh_known_values(A, expected):
    M = regular_bimodule(A)
    assert tuple(hh_dim(M, k) for k in range(3)) == expected


CASES = [
    regular_bimodule(matrix_algebra(PrimeField(2), 2)),
    regular_bimodule(truncated_polynomial(PrimeField(3), [2, 2])),
]


def _twisted():
    A = truncated_polynomial(PrimeField(5), [3])
    x = A.basis_vector(1)
    return twisted_bimodule(A, polynomial_endo(A, [A.multiply(x, x)]))


CASES.append(_twisted())


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CASES), st.integers(0, 1), st.integers(0, 2**32 - 1))
def test_delta_squares_to_zero(M, n, seed):
    c = random_cochain(M, n, np.random.default_rng(seed))
    assert delta(delta(c)).is_zero()


@pytest.mark.parametrize("M", CASES, ids=["mat2", "poly2", "twisted"])
def test_delta_matrix_agrees_with_delta(M, rng):
    for n in (0, 1, 2):
        c = random_cochain(M, n, rng)
        D = delta_matrix(M, n)
        flat = M.ring.einsum("ij,j->i", D, c.tensor.reshape(-1))
        assert np.array_equal(flat, delta(c).tensor.reshape(-1))


@pytest.mark.parametrize("M", CASES, ids=["mat2", "poly2", "twisted"])
def test_coboundaries_are_solved(M, rng):
    h = random_cochain(M, 1, rng)
    c = delta(h)
    g = coboundary_solve(c)
    assert delta(g) == c


def test_nontrivial_class_is_infeasible_with_certificate(rng):
    M = regular_bimodule(truncated_polynomial(PrimeField(2), [2]))
    B = delta_matrix(M, 1)
    for _ in range(20):
        c = random_cocycle(M, rng)
        b = c.tensor.reshape(-1)
        if linalg.rank(M.ring, np.concatenate([B, b[:, None]], axis=1)) > linalg.rank(M.ring, B):
            break
    with pytest.raises(Infeasible) as info:
        coboundary_solve(c)
    assert linalg.recheck_infeasible(M.ring, B, b, info.value)


def test_non_cocycle_rejected():
    M = regular_bimodule(truncated_polynomial(PrimeField(3), [3]))
    c = Cochain(M, 2, M.ring.zeros((3, 3, 3)))
    c.tensor[1, 1, 0] = 1
    assert not is_cocycle(c)
    with pytest.raises(NotACocycle):
        coboundary_solve(c)


def test_coboundaries_are_symmetric_on_commutative_algebras(rng):
    M = regular_bimodule(truncated_polynomial(PrimeField(5), [2, 3]))
    assert is_symmetric(delta(random_cochain(M, 1, rng)))


def test_cochain_json_roundtrip(rng):
    M = CASES[1]
    c = random_cochain(M, 2, rng)
    obj = cochain_to_json(c)
    assert obj["degree"] == 2
    assert all(any(e["val"]) for e in obj["tensor"])
    assert cochain_from_json(obj, M) == c


def test_degree_limits():
    M = CASES[0]
    with pytest.raises(DegreeOutOfRange):
        delta(random_cochain(M, 3, np.random.default_rng(0)))
    with pytest.raises(DegreeOutOfRange):
        hh_dim(M, 3)
