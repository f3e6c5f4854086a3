"""Azumaya diagnostics: separability elements in ``A (x)_Z A^o``, the
projection ``e_M`` onto bimodule invariants, center preservation by ring
endomorphisms, and an empirical check that restriction to the center is
injective on ``HH^2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from . import linalg
from .algebra import (
    Algebra,
    Bimodule,
    Subspace,
    apply,
    center,
    direct_product,
    ground_algebra,
    is_b_diagonal,
    matrix_algebra,
    multiplicativity_defect,
    restrict_endo,
    restrict_scalars,
)
from .coeff import ExtensionField, Field
from .errors import (
    CenterNotPreserved,
    DomainError,
    Infeasible,
    NotARingMorphism,
    NotDiagonal,
    NotPreserved,
)
from .hochschild import coboundary_solve, restrict
from .liftkit import FlatLift, defect_cocycle


class Envelope:
    """``Lambda = A (x)_Z A^o`` as a quotient of ``A (x)_k A`` (flattened ``i*d + j``).

    Vectors are kept in normal form: reduced against the echelonized span of
    ``z a (x) b - a (x) z b``.
    """

    def __init__(self, A: Algebra, Z: Subspace):
        self.A, self.Z = A, Z
        F, d = A.ring, A.dim
        eye = F.eye(d)
        rels = []
        for z in Z.basis:
            Lz = A.left_matrix(z)
            # (z e_i) (x) e_j - e_i (x) (z e_j), all i, j
            rel = F.sub(np.einsum("ai,jb->ijab", Lz, eye), np.einsum("ia,bj->ijab", eye, Lz))
            rels.append(rel.reshape(d * d, d * d))
        rel_space = Subspace(F, np.concatenate(rels) if rels else F.zeros((0, d * d)), d * d)
        self.relations = rel_space
        pivots = set(rel_space.pivots)
        self.free = [c for c in range(d * d) if c not in pivots]

    @property
    def dim(self) -> int:
        return len(self.free)

    def normal_form(self, v) -> np.ndarray:
        F = self.A.ring
        v = F.asarray(v).reshape(-1)
        rel = self.relations
        if rel.dim == 0:
            return v
        return F.sub(v, F.einsum("r,rj->j", v[rel.pivots], rel.basis))

    def coords(self, v) -> np.ndarray:
        return self.normal_form(v)[self.free]

    def from_coords(self, c) -> np.ndarray:
        F = self.A.ring
        v = F.zeros(self.A.dim ** 2)
        v[self.free] = c
        return v

    def mu(self, v) -> np.ndarray:
        """``sum v_ij e_i e_j``; well defined on the quotient."""
        d = self.A.dim
        return self.A.ring.einsum("ij,ijk->k", self.A.ring.asarray(v).reshape(d, d), self.A.table)

    def act(self, a, v, b) -> np.ndarray:
        """``a (x_i (x) y_i) b = a x_i (x) y_i b`` on a vector of ``A (x) A``."""
        F, d = self.A.ring, self.A.dim
        Ma = self.A.left_matrix(a)
        Mb = self.A.right_matrix(b)
        V = F.asarray(v).reshape(d, d)
        return F.einsum("ij,kj->ik", F.matmul(Ma, V), Mb).reshape(-1)


@dataclass
class SeparabilityElement:
    envelope: Envelope
    vector: np.ndarray  # normal-form coordinates in A (x) A, flattened

    @property
    def matrix(self) -> np.ndarray:
        d = self.envelope.A.dim
        return self.vector.reshape(d, d)

    def terms(self):
        """``[(i, j, c)]`` with ``e = sum c e_i (x) e_j``."""
        return [(i, j, c) for (i, j), c in np.ndenumerate(self.matrix) if c]

    def verify(self) -> bool:
        E, A = self.envelope, self.envelope.A
        if not np.array_equal(E.mu(self.vector), A.unit):
            return False
        for a in range(A.dim):
            ea = A.basis_vector(a)
            diff = A.ring.sub(E.act(ea, self.vector, A.unit), E.act(A.unit, self.vector, ea))
            if np.any(E.normal_form(diff)):
                return False
        return True


def separability_element(A: Algebra, Z: Subspace | None = None) -> SeparabilityElement:
    """Solve ``mu(e) = 1`` and ``a e = e a`` inside ``A (x)_Z A^o``.

    Raises :class:`~hochlift.errors.Infeasible` if no such element exists.
    """
    Z = Z if Z is not None else center(A)
    F = A.ring
    E = Envelope(A, Z)
    n = E.dim
    cols = [E.from_coords(F.eye(n)[c]) for c in range(n)]
    blocks = [F.asarray(np.stack([E.mu(v) for v in cols], axis=1))]
    rhs = [A.unit]
    for a in range(A.dim):
        ea = A.basis_vector(a)
        block = np.stack(
            [E.coords(F.sub(E.act(ea, v, A.unit), E.act(A.unit, v, ea))) for v in cols], axis=1
        )
        blocks.append(F.asarray(block))
        rhs.append(F.zeros(n))
    x = linalg.solve(F, np.concatenate(blocks), np.concatenate(rhs))
    sep = SeparabilityElement(E, E.from_coords(x))
    if not sep.verify():
        raise RuntimeError("separability element failed re-verification")
    return sep


def e_M_projection(sep: SeparabilityElement, M: Bimodule) -> np.ndarray:
    """Matrix of ``m -> sum x_i m y_i`` on a bimodule over ``A``."""
    if not is_b_diagonal(M, sep.envelope.Z):
        raise NotDiagonal("M must be Z-diagonal for e_M to be well defined")
    return _projection(M.ring, sep.matrix, M)


def _projection(F, E, M: Bimodule):
    # P = sum_ij E[i, j] L_i R_j
    LR = F.einsum("iuw,jwv->ijuv", M.left, M.right)
    return F.einsum("ij,ijuv->uv", E, LR)


@dataclass
class ProjectionReport:
    idempotent: bool
    z_linear: bool
    image_dim: int
    invariants_dim: int
    image_is_invariants: bool


def projection_report(sep: SeparabilityElement, M: Bimodule) -> ProjectionReport:
    F = M.ring
    P = e_M_projection(sep, M)
    idem = np.array_equal(F.matmul(P, P), P)
    Lz = F.einsum("ki,iuv->kuv", sep.envelope.Z.basis, M.left)
    zlin = all(np.array_equal(F.matmul(P, L), F.matmul(L, P)) for L in Lz)
    image = Subspace(F, P.T, M.dim)
    inv = M.invariants()
    same = image.dim == inv.dim and all(inv.contains(v) for v in image.basis)
    return ProjectionReport(bool(idem), bool(zlin), image.dim, inv.dim, bool(same))


# ---------------------------------------------------------------- center preservation


@dataclass
class CenterCheck:
    preserved: bool
    witness: np.ndarray | None = None
    image: np.ndarray | None = None


def is_ring_morphism(A: Algebra, f) -> bool:
    """Unital and multiplicative; additivity is automatic for a matrix."""
    F = A.ring
    if np.shape(f) != (A.dim, A.dim) or A.unit is None:
        return False
    return np.array_equal(apply(F, f, A.unit), A.unit) and not np.any(multiplicativity_defect(A, f))


def center_preserved(A: Algebra, f) -> CenterCheck:
    """Whether ``f(Z) in Z``; otherwise a central basis vector with non-central image."""
    f = A.ring.asarray(f)
    if not is_ring_morphism(A, f):
        raise NotARingMorphism("f is not a unital multiplicative map")
    Z = center(A)
    try:
        restrict_endo(f, Z)
    except NotPreserved as exc:
        return CenterCheck(False, exc.witness, apply(A.ring, f, exc.witness))
    return CenterCheck(True)


def is_central(A: Algebra, v) -> bool:
    return all(not np.any(A.commutator(v, A.basis_vector(i))) for i in range(A.dim))


def nonconstant_degree_example() -> tuple[Algebra, np.ndarray, ExtensionField]:
    """``F_4 x Mat_2(F_4)`` over ``F_2`` with ``f(a, m) = (a, diag(a, a^2))``.

    A ring endomorphism that is only ``F_2``-linear and moves the central
    element ``(w, 0)`` off the center.  Basis index ``i*2 + s`` is ``w^s e_i``.
    """
    K = ExtensionField(2, [1, 1, 1])
    G = direct_product(ground_algebra(K), matrix_algebra(K, 2))
    A = restrict_scalars(G)
    m = K.m

    def image(vec):
        a = vec[0]
        return [a, a, 0, 0, K.frobenius(a)]

    f = A.ring.zeros((A.dim, A.dim))
    for col in range(A.dim):
        i, s = divmod(col, m)
        vec = [0] * G.dim
        vec[i] = K.from_coords([int(t == s) for t in range(m)])
        out = image(vec)
        f[:, col] = np.concatenate([K.coords(c) for c in out])
    return A, f, K


# ---------------------------------------------------------------- restriction probe


@dataclass
class ProbeReport:
    restricted_solvable: bool
    global_solvable: bool | None

    @property
    def consistent(self) -> bool:
        return not (self.restricted_solvable and self.global_solvable is False)


def restriction_injectivity_probe(L: FlatLift, f, ftilde=None) -> ProbeReport:
    """If ``C_f~`` restricted to ``Z`` is a coboundary, is ``C_f~`` one on ``A``?"""
    A = L.base
    Z = center(A)
    separability_element(A, Z)  # precondition; raises Infeasible otherwise
    f = A.ring.asarray(f)
    try:
        restrict_endo(f, Z)
    except NotPreserved as exc:
        raise CenterNotPreserved("f does not preserve the center", witness=exc.witness) from None
    C = defect_cocycle(L, f, ftilde)
    try:
        coboundary_solve(restrict(C, Z))
    except Infeasible:
        return ProbeReport(False, None)
    try:
        coboundary_solve(C)
    except Infeasible:
        return ProbeReport(True, False)
    return ProbeReport(True, True)


# ---------------------------------------------------------------- summary


@dataclass
class AzumayaReport:
    separable_over_center: bool
    center_dim: int
    dim: int
    rank_over_center: int | None

    def as_dict(self):
        return {
            "separable_over_center": self.separable_over_center,
            "center_dim": self.center_dim,
            "dim": self.dim,
            "rank_over_center": self.rank_over_center,
        }


def azumaya_check(A: Algebra) -> AzumayaReport:
    """Separability over the center plus the numeric rank condition
    ``dim A = n^2 dim Z``.  Local freeness is not tested."""
    if not isinstance(A.ring, Field):
        raise DomainError("Azumaya checks run over a field")
    Z = center(A)
    try:
        separability_element(A, Z)
        separable = True
    except Infeasible:
        separable = False
    rank = None
    if A.dim % Z.dim == 0:
        ratio = A.dim // Z.dim
        if isqrt(ratio) ** 2 == ratio:
            rank = ratio
    return AzumayaReport(separable, Z.dim, A.dim, rank)
