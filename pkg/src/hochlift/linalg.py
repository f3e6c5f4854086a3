"""Dense Gaussian elimination over the finite fields of :mod:`hochlift.coeff`.

Matrices are 2-D numpy arrays of encoded field elements.  Nothing here works
over a truncation ring; callers split such problems into field solves.
"""
from __future__ import annotations

import numpy as np

from .coeff import Field
from .errors import DimensionMismatch, DomainError, Infeasible


def _check_field(F):
    if not isinstance(F, Field):
        raise DomainError(f"elimination needs a field, got {F!r}")


def rref(F: Field, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``M`` and its pivot columns."""
    _check_field(F)
    A = F.asarray(M).copy()
    if A.ndim != 2:
        raise DimensionMismatch("rref expects a 2-D matrix")
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        lead = A[r, c]
        if lead != 1:
            A[r, c:] = F.mul(A[r, c:], F.inv(lead))
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit, c:] = F.sub(A[hit, c:], F.mul(col[hit, None], A[r, c:][None, :]))
        pivots.append(c)
        r += 1
    return A, pivots


def rank(F: Field, M) -> int:
    M = F.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def kernel_basis(F: Field, M) -> np.ndarray:
    """Rows form a basis of ``{v : M v = 0}``; one vector per free column."""
    M = F.asarray(M)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return F.eye(cols)
    R, pivots = rref(F, M)
    free = [c for c in range(cols) if c not in set(pivots)]
    K = F.zeros((len(free), cols))
    for n, fc in enumerate(free):
        K[n, fc] = 1
        for r, pc in enumerate(pivots):
            K[n, pc] = F.neg(R[r, fc])
    return K


def left_certificate(F: Field, M, b) -> np.ndarray:
    """A vector ``y`` with ``y M = 0`` and ``y b = 1``; exists iff ``M x = b`` is
    inconsistent."""
    M, b = F.asarray(M), F.asarray(b)
    aug = np.concatenate([M, b[:, None]], axis=1).T
    rhs = F.zeros(aug.shape[0])
    rhs[-1] = 1
    return solve(F, aug, rhs, certify=False)


def solve(F: Field, M, b, certify: bool = True) -> np.ndarray:
    """One solution of ``M x = b`` with free variables set to zero.

    Raises :class:`Infeasible` carrying the inconsistent row of the reduced
    augmented matrix and, if ``certify``, a left certificate ``y``.
    """
    M, b = F.asarray(M), F.asarray(b)
    if M.ndim != 2 or b.ndim != 1 or b.shape[0] != M.shape[0]:
        raise DimensionMismatch(f"cannot solve {M.shape} system against rhs {b.shape}")
    rows, cols = M.shape
    aug = np.concatenate([M, b[:, None]], axis=1)
    R, pivots = rref(F, aug)
    if pivots and pivots[-1] == cols:
        row = len(pivots) - 1
        exc = Infeasible(row=row, certificate=R[row].copy())
        if certify:
            exc.left = left_certificate(F, M, b)
        raise exc
    x = F.zeros(cols)
    for r, c in enumerate(pivots):
        x[c] = R[r, cols]
    return x


def recheck_infeasible(F: Field, M, b, exc: Infeasible) -> bool:
    """Independently confirm an :class:`Infeasible` certificate.

    The reduced row must be zero on the coefficient part and nonzero on the
    right-hand side; the left certificate must kill ``M`` and pair to 1 with ``b``.
    """
    M, b = F.asarray(M), F.asarray(b)
    row = exc.certificate
    if row is None or np.any(row[:-1] != 0) or row[-1] == 0:
        return False
    y = getattr(exc, "left", None)
    if y is None:
        return True
    return bool(np.all(F.einsum("i,ij->j", y, M) == 0) and F.einsum("i,i->", y, b) == 1)
