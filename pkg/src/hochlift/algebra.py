"""Finite-dimensional associative algebras given by structure constants.

An :class:`Algebra` over a coefficient ring stores the dense tensor
``table[i, j, :]`` = coordinates of ``e_i * e_j``.  Linear maps between
algebras are plain matrices whose column ``j`` is the image of ``e_j``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .coeff import CoefficientRing, ExtensionField, Field, PrimeField, TruncationRing
from .errors import DimensionMismatch, DomainError, NotASubalgebra, NotPreserved

MAX_DIM = 32


@dataclass(frozen=True)
class ValidationReport:
    associative: bool
    unital: bool
    commutative: bool

    def as_dict(self):
        return {"associative": self.associative, "unital": self.unital, "commutative": self.commutative}


class Algebra:
    """Associative algebra with basis ``e_0 .. e_{dim-1}`` over ``ring``.

    ``unit`` may be ``None`` for structure tensors without a known identity;
    such algebras validate as non-unital.
    """

    def __init__(self, ring: CoefficientRing, table, unit=None, labels: Sequence[str] | None = None):
        self.ring = ring
        self.table = ring.asarray(table) % ring.size if ring.dtype is not object else ring.asarray(table)
        if self.table.ndim != 3 or len(set(self.table.shape)) != 1:
            raise DimensionMismatch("structure tensor must have shape (dim, dim, dim)")
        self.dim = self.table.shape[0]
        if self.dim > MAX_DIM:
            raise DomainError(f"dim {self.dim} exceeds the supported envelope of {MAX_DIM}")
        self.unit = None if unit is None else ring.asarray(unit)
        if self.unit is not None and self.unit.shape != (self.dim,):
            raise DimensionMismatch("unit vector has the wrong length")
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(self.dim)]

    def __repr__(self):
        return f"Algebra(dim={self.dim}, ring={self.ring!r})"

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.ring.zeros(self.dim)
        v[i] = 1
        return v

    def _check(self, *vs):
        for v in vs:
            if np.shape(v) != (self.dim,):
                raise DimensionMismatch(f"expected a vector of length {self.dim}, got shape {np.shape(v)}")

    def multiply(self, u, v) -> np.ndarray:
        self._check(u, v)
        R = self.ring
        return R.einsum("j,jk->k", v, R.einsum("i,ijk->jk", u, self.table))

    def commutator(self, u, v) -> np.ndarray:
        return self.ring.sub(self.multiply(u, v), self.multiply(v, u))

    def left_matrix(self, u) -> np.ndarray:
        """Matrix of ``m -> u*m``."""
        return self.ring.einsum("i,ijk->kj", u, self.table)

    def right_matrix(self, v) -> np.ndarray:
        """Matrix of ``m -> m*v``."""
        return self.ring.einsum("j,ijk->ki", v, self.table)

    def validate(self) -> ValidationReport:
        R, T = self.ring, self.table
        lhs = R.einsum("ijl,lkm->ijkm", T, T)
        rhs = R.einsum("jkl,ilm->ijkm", T, T)
        associative = bool(np.array_equal(lhs, rhs))
        unital = False
        if self.unit is not None:
            eye = R.eye(self.dim)
            unital = bool(
                np.array_equal(R.einsum("i,ijk->jk", self.unit, T), eye)
                and np.array_equal(R.einsum("j,ijk->ik", self.unit, T), eye)
            )
        commutative = bool(np.array_equal(T, T.transpose(1, 0, 2)))
        return ValidationReport(associative, unital, commutative)

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.transpose(1, 0, 2)))

    def reduce(self) -> "Algebra":
        """Reduction modulo ``eps`` of an algebra over a truncation ring."""
        R = self.ring
        if not isinstance(R, TruncationRing):
            raise DomainError("only algebras over a truncation ring can be reduced")
        unit = None if self.unit is None else R.reduce(self.unit)
        return Algebra(R.residue, R.reduce(self.table), unit, self.labels)

    def base_change(self, ring: TruncationRing) -> "Algebra":
        """Coefficientwise section into ``ring``; the naive lift of the table."""
        if ring.residue != self.ring:
            raise DomainError(f"{ring!r} does not reduce to {self.ring!r}")
        unit = None if self.unit is None else ring.section(self.unit)
        return Algebra(ring, ring.section(self.table), unit, self.labels)

    def opposite(self) -> "Algebra":
        return Algebra(self.ring, self.table.transpose(1, 0, 2), self.unit, self.labels)

    def power(self, u, e: int):
        result = self.unit.copy()
        for _ in range(e):
            result = self.multiply(result, u)
        return result


# ---------------------------------------------------------------- builders


def ground_algebra(ring: CoefficientRing) -> Algebra:
    return Algebra(ring, [[[1]]], [1], ["1"])


def matrix_algebra(ring: CoefficientRing, n: int) -> Algebra:
    """``Mat_n`` with matrix units ``E_ij`` at index ``i*n + j``."""
    d = n * n
    T = ring.zeros((d, d, d))
    for i, j, k in itertools.product(range(n), repeat=3):
        T[i * n + j, j * n + k, i * n + k] = 1
    unit = ring.zeros(d)
    for i in range(n):
        unit[i * n + i] = 1
    labels = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return Algebra(ring, T, unit, labels)


def matrix_to_vector(ring, mat) -> np.ndarray:
    return ring.asarray(mat).reshape(-1)


def truncated_polynomial(ring: CoefficientRing, bounds: Sequence[int], extra=(), names=None) -> Algebra:
    """``ring[x_1..x_r]`` modulo ``x_i^bounds[i]`` and the monomials in ``extra``.

    Basis: surviving monomials, ordered lexicographically by exponent vector.
    """
    names = names or (["x", "y", "z", "w"][: len(bounds)] if len(bounds) <= 4 else [f"x{i}" for i in range(len(bounds))])
    extra = [tuple(e) for e in extra]

    def killed(mono):
        return any(all(a >= b for a, b in zip(mono, g)) for g in extra)

    monos = [m for m in itertools.product(*(range(b) for b in bounds)) if not killed(m)]
    index = {m: i for i, m in enumerate(monos)}
    d = len(monos)
    T = ring.zeros((d, d, d))
    for a, ma in enumerate(monos):
        for b, mb in enumerate(monos):
            prod = tuple(x + y for x, y in zip(ma, mb))
            if prod in index:
                T[a, b, index[prod]] = 1
    unit = ring.zeros(d)
    unit[index[tuple(0 for _ in bounds)]] = 1
    return Algebra(ring, T, unit, [monomial_label(m, names) for m in monos])


def monomial_label(mono, names) -> str:
    parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, mono) if e]
    return "*".join(parts) or "1"


def monomial_index(A: Algebra, mono, names=("x", "y", "z", "w")) -> int:
    return A.labels.index(monomial_label(mono, names))


def direct_product(A: Algebra, B: Algebra) -> Algebra:
    if A.ring != B.ring:
        raise DomainError("factors must share a coefficient ring")
    R = A.ring
    d = A.dim + B.dim
    T = R.zeros((d, d, d))
    T[: A.dim, : A.dim, : A.dim] = A.table
    T[A.dim :, A.dim :, A.dim :] = B.table
    unit = None
    if A.unit is not None and B.unit is not None:
        unit = np.concatenate([A.unit, B.unit])
    labels = [f"({l},0)" for l in A.labels] + [f"(0,{l})" for l in B.labels]
    return Algebra(R, T, unit, labels)


def cyclic_group_algebra(ring: CoefficientRing, n: int) -> Algebra:
    T = ring.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            T[i, j, (i + j) % n] = 1
    unit = ring.zeros(n)
    unit[0] = 1
    return Algebra(ring, T, unit, [f"g^{i}" for i in range(n)])


def restrict_scalars(A: Algebra) -> Algebra:
    """View an algebra over ``F_{p^m}`` as an algebra over ``F_p``.

    Basis element ``w^s e_i`` sits at index ``i*m + s``.
    """
    K = A.ring
    if not isinstance(K, ExtensionField):
        raise DomainError("restriction of scalars needs an extension field")
    m, d = K.m, A.dim
    F = PrimeField(K.p)
    w = [K.from_coords([int(t == s) for t in range(m)]) for s in range(m)]
    T = F.zeros((d * m, d * m, d * m))
    for i, s, j, t in itertools.product(range(d), range(m), range(d), range(m)):
        scalar = int(K.mul(w[s], w[t]))
        for k in range(d):
            c = int(K.mul(scalar, A.table[i, j, k]))
            T[i * m + s, j * m + t, k * m : (k + 1) * m] = K.coords(c)
    unit = None
    if A.unit is not None:
        unit = np.concatenate([F.asarray(K.coords(c)) for c in A.unit])
    labels = [f"w^{s}*{l}" if s else l for l in A.labels for s in range(m)]
    return Algebra(F, T, unit, labels)


def scalars_to_prime_field(K: ExtensionField, vec) -> np.ndarray:
    """Coordinates of an ``F_{p^m}`` vector in the basis of :func:`restrict_scalars`."""
    return np.concatenate([np.asarray(K.coords(c), dtype=np.int64) for c in vec])


# ---------------------------------------------------------------- subspaces


class Subspace:
    """Span of independent vectors, kept in reduced row echelon form."""

    def __init__(self, field: Field, vectors, ambient: int):
        self.field = field
        self.ambient = ambient
        vectors = field.asarray(vectors).reshape(-1, ambient)
        if vectors.shape[0]:
            R, piv = linalg.rref(field, vectors)
            self.basis = R[: len(piv)]
            self.pivots = piv
        else:
            self.basis = field.zeros((0, ambient))
            self.pivots = []

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def embedding(self) -> np.ndarray:
        """``ambient x dim`` matrix whose columns are the basis vectors."""
        return self.basis.T.copy()

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of ``v`` in the echelon basis (valid only for ``v`` in span)."""
        return self.field.asarray(v)[..., self.pivots]

    def contains(self, v) -> bool:
        F = self.field
        v = F.asarray(v)
        recon = F.einsum("i,ij->j", self.coordinates(v), self.basis) if self.dim else F.zeros(self.ambient)
        return bool(np.array_equal(recon, v))

    def subalgebra(self, A: Algebra) -> Algebra:
        """Structure constants of the span, which must be a unital subalgebra."""
        F = A.ring
        T = F.zeros((self.dim, self.dim, self.dim))
        for a in range(self.dim):
            for b in range(self.dim):
                prod = A.multiply(self.basis[a], self.basis[b])
                if not self.contains(prod):
                    raise NotASubalgebra("subspace is not closed under multiplication")
                T[a, b] = self.coordinates(prod)
        if A.unit is None or not self.contains(A.unit):
            raise NotASubalgebra("subspace does not contain the unit")
        labels = [_vector_label(A, v) for v in self.basis]
        return Algebra(F, T, self.coordinates(A.unit), labels)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def _vector_label(A: Algebra, v) -> str:
    terms = [(c, l) for c, l in zip(v, A.labels) if c]
    if not terms:
        return "0"
    return " + ".join(l if c == 1 else f"{A.ring.element_to_json(c)}*{l}" for c, l in terms)


def center(A: Algebra) -> Subspace:
    """``{z : z e_i = e_i z for all i}`` as the kernel of stacked commutators."""
    F = A.ring
    if not isinstance(F, Field):
        raise DomainError("center is computed over a field")
    # column k: [e_k, e_i] for all i, stacked
    ops = F.sub(A.table, A.table.transpose(1, 0, 2))  # [k, i, :] = e_k e_i - e_i e_k
    M = ops.transpose(1, 2, 0).reshape(A.dim * A.dim, A.dim)
    return Subspace(F, linalg.kernel_basis(F, M), A.dim)


def span(A: Algebra, vectors) -> Subspace:
    return Subspace(A.ring, vectors, A.dim)


# ---------------------------------------------------------------- morphisms


def apply(ring: CoefficientRing, f, v) -> np.ndarray:
    return ring.einsum("ij,j->i", f, v)


def compose(ring: CoefficientRing, f, g) -> np.ndarray:
    """Matrix of ``f o g``."""
    return ring.einsum("ij,jk->ik", f, g)


def _check_square(A: Algebra, f):
    if np.shape(f) != (A.dim, A.dim):
        raise DimensionMismatch(f"endomorphism must be {A.dim}x{A.dim}, got {np.shape(f)}")


def multiplicativity_defect(A: Algebra, f) -> np.ndarray:
    """``D[i, j] = f(e_i) f(e_j) - f(e_i e_j)``."""
    R, T = A.ring, A.table
    f = R.asarray(f)
    img_prod = R.einsum("ijk,lk->ijl", T, f)
    tmp = R.einsum("ai,abk->ibk", f, T)
    prod_img = R.einsum("bj,ibk->ijk", f, tmp)
    return R.sub(prod_img, img_prod)


def is_algebra_morphism(A: Algebra, f) -> bool:
    """``f(1) = 1`` and ``f(e_i e_j) = f(e_i) f(e_j)`` for all basis pairs."""
    _check_square(A, f)
    if A.unit is None:
        return False
    if not np.array_equal(apply(A.ring, f, A.unit), A.unit):
        return False
    return not np.any(multiplicativity_defect(A, f))


def restrict_endo(f, B: Subspace) -> np.ndarray:
    """Induced map on ``B`` in its echelon basis; raises :class:`NotPreserved`."""
    F = B.field
    images = F.einsum("ij,kj->ki", f, B.basis)
    for b, img in zip(B.basis, images):
        if not B.contains(img):
            raise NotPreserved("map does not preserve the subspace", witness=b)
    return B.coordinates(images).T.copy()


def inner_automorphism(A: Algebra, u, u_inv) -> np.ndarray:
    """Matrix of ``x -> u x u^{-1}``."""
    R = A.ring
    cols = [A.multiply(A.multiply(u, A.basis_vector(j)), u_inv) for j in range(A.dim)]
    return R.asarray(np.stack(cols, axis=1))


# ---------------------------------------------------------------- bimodules


@dataclass
class Bimodule:
    """Bimodule over ``algebra`` with carrier ``(field)^dim``.

    ``left[i]`` and ``right[i]`` are the matrices of ``m -> e_i m`` and
    ``m -> m e_i``.  ``carrier``/``twist`` are set for twisted bimodules.
    """

    algebra: Algebra
    left: np.ndarray
    right: np.ndarray
    carrier: Algebra | None = None
    twist: np.ndarray | None = None

    @property
    def ring(self):
        return self.algebra.ring

    @property
    def dim(self) -> int:
        return self.left.shape[1]

    def act_left(self, a, m):
        R = self.ring
        return R.einsum("uv,v->u", R.einsum("i,iuv->uv", a, self.left), m)

    def act_right(self, m, b):
        R = self.ring
        return R.einsum("uv,v->u", R.einsum("i,iuv->uv", b, self.right), m)

    def restrict(self, B: Subspace) -> "Bimodule":
        """Restriction along the inclusion of the subalgebra ``B``."""
        R = self.ring
        sub = B.subalgebra(self.algebra)
        left = R.einsum("ki,iuv->kuv", B.basis, self.left)
        right = R.einsum("ki,iuv->kuv", B.basis, self.right)
        return Bimodule(sub, left, right, self.carrier, self.twist)

    def invariants(self) -> Subspace:
        """``M^A = {m : a m = m a for all a}``."""
        F = self.ring
        ops = F.sub(self.left, self.right).reshape(-1, self.dim)
        return Subspace(F, linalg.kernel_basis(F, ops), self.dim)

    def check_axioms(self) -> bool:
        """Associativity of both actions and their mutual commutation on basis elements."""
        R, T = self.ring, self.algebra.table
        L, Rt = self.left, self.right
        ok = np.array_equal(R.einsum("ijk,kuv->ijuv", T, L), R.einsum("iuw,jwv->ijuv", L, L))
        ok &= np.array_equal(R.einsum("ijk,kuv->ijuv", T, Rt), R.einsum("juw,iwv->ijuv", Rt, Rt))
        ok &= np.array_equal(R.einsum("iuw,jwv->ijuv", L, Rt), R.einsum("juw,iwv->ijuv", Rt, L))
        return bool(ok)


def twisted_bimodule(A: Algebra, f) -> Bimodule:
    """``A`` as an ``A``-bimodule via ``a . m . b = f(a) m f(b)``."""
    R = A.ring
    f = R.asarray(f)
    _check_square(A, f)
    left = R.einsum("ai,abk->ikb", f, A.table)
    right = R.einsum("bi,abk->ika", f, A.table)
    return Bimodule(A, left, right, carrier=A, twist=f)


def regular_bimodule(A: Algebra) -> Bimodule:
    return twisted_bimodule(A, A.ring.eye(A.dim))


def is_b_diagonal(M: Bimodule, B: Subspace) -> bool:
    """``b m = m b`` for every basis ``b`` of ``B`` (a subspace of ``M.algebra``)."""
    R = M.ring
    left = R.einsum("ki,iuv->kuv", B.basis, M.left)
    right = R.einsum("ki,iuv->kuv", B.basis, M.right)
    return bool(np.array_equal(left, right))


def whole_space(A: Algebra) -> Subspace:
    return Subspace(A.ring, A.ring.eye(A.dim), A.dim)


def ground_line(A: Algebra) -> Subspace:
    """``k * 1`` inside ``A``."""
    return Subspace(A.ring, A.unit[None, :], A.dim)
