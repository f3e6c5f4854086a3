"""Named example corpus and seeded random instances for property checks."""
from __future__ import annotations

import numpy as np

from .algebra import (
    Algebra,
    cyclic_group_algebra,
    direct_product,
    ground_algebra,
    inner_automorphism,
    is_algebra_morphism,
    truncated_polynomial,
)
from .coeff import DualNumbers, PrimeField, ZpSquared
from .errors import DomainError
from .liftkit import FlatLift, log_symplectic_lift, matrix_lift, trivial_lift

PRIMES = (2, 3, 5)


# ---------------------------------------------------------------- named examples


def mat2_f3_lift() -> FlatLift:
    return matrix_lift(PrimeField(3), 2, ZpSquared(3))


def conjugation(A: Algebra, u) -> np.ndarray:
    """Conjugation by an invertible ``n x n`` matrix given row-major."""
    F = A.ring
    n = int(round(A.dim ** 0.5))
    u = F.asarray(u).reshape(n, n)
    u_inv = _matrix_inverse(F, u)
    if u_inv is None:
        raise DomainError("conjugating matrix is singular")
    return inner_automorphism(A, u.reshape(-1), u_inv.reshape(-1))


def logsymp_lift() -> FlatLift:
    return log_symplectic_lift(PrimeField(5), 2, 3)


def polynomial_endo(A: Algebra, images) -> np.ndarray:
    """Endomorphism of a truncated polynomial algebra from generator images.

    ``images`` are vectors; the basis monomial ``x^a y^b`` maps to
    ``images[0]^a images[1]^b``.
    """
    R = A.ring
    cols = []
    for label in A.labels:
        exps = _parse_monomial(label, len(images))
        v = A.unit.copy()
        for g, e in zip(images, exps):
            v = A.multiply(v, A.power(g, e))
        cols.append(v)
    return R.asarray(np.stack(cols, axis=1))


def _parse_monomial(label, nvars, names=("x", "y", "z", "w")):
    exps = [0] * nvars
    if label == "1":
        return exps
    for factor in label.split("*"):
        name, _, e = factor.partition("^")
        exps[names.index(name)] = int(e) if e else 1
    return exps


def y_to_ysq(A: Algebra) -> np.ndarray:
    """``x -> x, y -> y^2`` on ``k[x, y]/(x^N, y^M)``."""
    x = A.basis_vector(A.labels.index("x"))
    y = A.basis_vector(A.labels.index("y"))
    return polynomial_endo(A, [x, A.multiply(y, y)])


def f2_dual() -> Algebra:
    return truncated_polynomial(PrimeField(2), [2])


def inner_automorphisms(A: Algebra, n: int, count: int, rng: np.random.Generator):
    """Inner automorphisms of ``Mat_n`` by random invertible matrices."""
    F = A.ring
    out = []
    while len(out) < count:
        u = F.asarray(rng.integers(0, F.size, size=n * n))
        u_inv = _matrix_inverse(F, u.reshape(n, n))
        if u_inv is not None:
            out.append(inner_automorphism(A, u, u_inv.reshape(-1)))
    return out


def _matrix_inverse(F, M):
    from . import linalg

    n = M.shape[0]
    aug = np.concatenate([F.asarray(M), F.eye(n)], axis=1)
    R, piv = linalg.rref(F, aug)
    if piv[:n] != list(range(n)):
        return None
    return R[:, n:]


# ---------------------------------------------------------------- random instances


def _random_nilpotent_images(A, rng, nvars, tries=20):
    """Random generator images in the span of non-unit monomials that define
    an algebra endomorphism (identity if none found)."""
    F = A.ring
    gens = [A.basis_vector(A.labels.index(n)) for n in ("x", "y")[:nvars]]
    nonunit = [i for i, l in enumerate(A.labels) if l != "1"]
    for _ in range(tries):
        imgs = []
        for _ in range(nvars):
            v = F.zeros(A.dim)
            v[nonunit] = rng.integers(0, F.size, size=len(nonunit))
            imgs.append(v)
        f = polynomial_endo(A, imgs)
        if is_algebra_morphism(A, f):
            return f
    return polynomial_endo(A, gens)


def random_instance(rng: np.random.Generator, p: int | None = None):
    """A random ``(FlatLift, f)`` with ``dim A <= 6`` over ``F_p``."""
    p = p or int(rng.choice(PRIMES))
    k = PrimeField(p)
    family = int(rng.integers(0, 6))
    if family == 0:
        ring = ZpSquared(p) if rng.integers(0, 2) else DualNumbers(k)
        L = matrix_lift(k, 2, ring)
        f = inner_automorphisms(L.base, 2, 1, rng)[0]
        return L, f
    if family == 1:
        N = int(rng.integers(2, 7))
        A = truncated_polynomial(k, [N])
        L = trivial_lift(A, ZpSquared(p) if rng.integers(0, 2) else DualNumbers(k))
        return L, _random_nilpotent_images(A, rng, 1)
    if family == 2:
        N, M = [(2, 2), (2, 3), (3, 2)][int(rng.integers(0, 3))]
        L = log_symplectic_lift(k, N, M, ZpSquared(p) if rng.integers(0, 2) else DualNumbers(k))
        return L, _random_nilpotent_images(L.base, rng, 2)
    if family == 3:
        N, M = [(2, 2), (2, 3), (3, 2)][int(rng.integers(0, 3))]
        A = truncated_polynomial(k, [N, M])
        return trivial_lift(A), _random_nilpotent_images(A, rng, 2)
    if family == 4:
        n = int(rng.integers(2, 7))
        A = cyclic_group_algebra(k, n)
        units = [e for e in range(1, n) if np.gcd(e, n) == 1]
        e = int(rng.choice(units))
        f = k.zeros((n, n))
        for i in range(n):
            f[(i * e) % n, i] = 1
        return trivial_lift(A, ZpSquared(p) if rng.integers(0, 2) else DualNumbers(k)), f
    A = direct_product(ground_algebra(k), truncated_polynomial(k, [int(rng.integers(2, 5))]))
    L = trivial_lift(A)
    # swap-free endomorphisms: identity or projection onto the diagonal copy of k
    if rng.integers(0, 2):
        return L, k.eye(A.dim)
    f = k.zeros((A.dim, A.dim))
    f[0, 0] = 1
    f[1, 1] = 1
    return L, f


def flat_lift_corpus() -> dict:
    """Every flat lift referenced by the acceptance checks, by name."""
    corpus = {
        "mat2_f3": mat2_f3_lift(),
        "mat2_f3_dual": matrix_lift(PrimeField(3), 2, DualNumbers(PrimeField(3))),
        "mat2_f2": matrix_lift(PrimeField(2), 2),
        "logsymp_5_2_3": logsymp_lift(),
        "logsymp_5_2_3_zp2": log_symplectic_lift(PrimeField(5), 2, 3, ZpSquared(5)),
        "logsymp_3_3_3": log_symplectic_lift(PrimeField(3), 3, 3),
        "logsymp_2_2_2": log_symplectic_lift(PrimeField(2), 2, 2),
        "f3_x3_trivial": trivial_lift(truncated_polynomial(PrimeField(3), [3])),
        "c4_f5": trivial_lift(cyclic_group_algebra(PrimeField(5), 4), ZpSquared(5)),
    }
    return corpus


# ---------------------------------------------------------------- random cochains


def random_commutative_algebra(rng: np.random.Generator, p: int | None = None) -> Algebra:
    """A commutative algebra of dimension at most 4 over ``F_p``."""
    p = p or int(rng.choice(PRIMES))
    k = PrimeField(p)
    family = int(rng.integers(0, 4))
    if family == 0:
        return truncated_polynomial(k, [int(rng.integers(1, 5))])
    if family == 1:
        return truncated_polynomial(k, [2, 2])
    if family == 2:
        return cyclic_group_algebra(k, int(rng.integers(2, 5)))
    return direct_product(ground_algebra(k), truncated_polynomial(k, [int(rng.integers(1, 4))]))


def symmetry_matrix(M) -> np.ndarray:
    """Matrix of ``t -> t - t^T`` on flattened degree-2 tensors."""
    R, d, dm = M.ring, M.algebra.dim, M.dim
    n = d * d * dm
    eye = R.eye(n).reshape(d, d, dm, n)
    return R.sub(eye, eye.transpose(1, 0, 2, 3)).reshape(n, n)


def random_cocycle(M, rng: np.random.Generator, symmetric: bool = False):
    """Uniform random element of ``Z^2(A, M)`` (or its symmetric part)."""
    from . import linalg
    from .hochschild import Cochain, delta_matrix

    R = M.ring
    D = delta_matrix(M, 2)
    if symmetric:
        D = np.concatenate([D, symmetry_matrix(M)])
    K = linalg.kernel_basis(R, D)
    d, dm = M.algebra.dim, M.dim
    if len(K) == 0:
        return Cochain(M, 2, R.zeros((d, d, dm)))
    coeffs = R.asarray(rng.integers(0, R.size, size=len(K)))
    return Cochain(M, 2, R.einsum("r,rj->j", coeffs, K).reshape(d, d, dm))


def random_square_zero_case(rng: np.random.Generator):
    """``(Z, M, phi)`` with ``Z`` commutative, ``M`` diagonal, ``phi`` of degree 2.

    ``phi`` is a raw random cochain, a random cocycle or a random symmetric
    cocycle with equal probability so both sides of each equivalence occur.
    """
    from .algebra import regular_bimodule
    from .hochschild import random_cochain

    Z = random_commutative_algebra(rng)
    M = regular_bimodule(Z)
    kind = int(rng.integers(0, 3))
    if kind == 0:
        phi = random_cochain(M, 2, rng)
    else:
        phi = random_cocycle(M, rng, symmetric=kind == 2)
    return Z, M, phi
