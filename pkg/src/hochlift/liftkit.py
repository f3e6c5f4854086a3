"""First-order flat lifts, the obstruction cocycle of an endomorphism, the
Poisson bracket on the center, and square-zero extensions.

A flat lift is given in basis-aligned form: the lifted algebra has the same
basis labels and its structure constants reduce to those of the base.  The
aligned basis ``e~_i`` is then an ``R``-basis of the lift.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    Algebra,
    Bimodule,
    Subspace,
    apply,
    center,
    is_algebra_morphism,
    is_b_diagonal,
    matrix_algebra,
    multiplicativity_defect,
    restrict_endo,
    truncated_polynomial,
    twisted_bimodule,
    whole_space,
)
from .coeff import DualNumbers, Field, PrimeField, TruncationRing, ZpSquared
from .errors import (
    CenterNotPreserved,
    DomainError,
    Infeasible,
    NotALift,
    NotALinearLift,
    NotAMorphism,
    NotAssociative,
    NotCentral,
    NotCommutative,
    NotDiagonal,
    NotPreserved,
)
from .hochschild import (
    Cochain,
    antisymmetrization,
    coboundary_solve,
    is_cocycle,
    is_symmetric,
    linear_map_cochain,
    restrict,
)


@dataclass
class FlatLift:
    base: Algebra
    lift: Algebra

    @property
    def ring(self) -> TruncationRing:
        return self.lift.ring

    @property
    def field(self) -> Field:
        return self.base.ring

    @property
    def dim(self) -> int:
        return self.base.dim


def make_flat_lift(base: Algebra, lift: Algebra) -> FlatLift:
    R = lift.ring
    if not isinstance(R, TruncationRing) or R.residue != base.ring:
        raise NotALift(f"{lift.ring!r} is not a truncation ring over {base.ring!r}")
    if lift.dim != base.dim:
        raise NotALift("lift and base have different dimensions")
    if not np.array_equal(R.reduce(lift.table), base.table):
        raise NotALift("structure constants do not reduce to those of the base")
    if base.unit is None or lift.unit is None or not np.array_equal(R.reduce(lift.unit), base.unit):
        raise NotALift("unit of the lift does not reduce to the unit of the base")
    report = lift.validate()
    if not report.associative:
        raise NotAssociative("lifted algebra is not associative over R")
    if not report.unital:
        raise NotAssociative("lifted unit is not a two-sided identity")
    return FlatLift(base, lift)


def matrix_lift(k: Field, n: int, ring: TruncationRing | None = None) -> FlatLift:
    ring = ring or default_ring(k)
    return make_flat_lift(matrix_algebra(k, n), matrix_algebra(ring, n))


def trivial_lift(A: Algebra, ring: TruncationRing | None = None) -> FlatLift:
    """``A (x)_k R`` through the coefficientwise section."""
    ring = ring or DualNumbers(A.ring)
    return make_flat_lift(A, A.base_change(ring))


def default_ring(k: Field) -> TruncationRing:
    return ZpSquared(k.p) if isinstance(k, PrimeField) else DualNumbers(k)


def log_symplectic_lift(k: Field, N: int, M: int, ring: TruncationRing | None = None) -> FlatLift:
    """Deformation of ``k[x, y]/(x^N, y^M)`` with bracket ``{x, y} = xy``.

    Product ``a * b = ab + eps * xy * d_x(a) * d_y(b)``, i.e. on monomials
    ``x^a y^b * x^c y^d = (1 + eps*a*d) x^(a+c) y^(b+d)``.  Its commutator is
    ``eps * xy * (d_x a d_y b - d_y a d_x b)``.
    """
    ring = ring or DualNumbers(k)
    base = truncated_polynomial(k, [N, M])
    monos = [(a, b) for a in range(N) for b in range(M)]
    index = {m: i for i, m in enumerate(monos)}
    d = len(monos)
    T = ring.zeros((d, d, d))
    for i, (a, b) in enumerate(monos):
        for j, (c, e) in enumerate(monos):
            target = (a + c, b + e)
            if target in index:
                T[i, j, index[target]] = ring.add(1, ring.iota(k.from_int(a * e)))
    lift = Algebra(ring, T, ring.section(base.unit), base.labels)
    return make_flat_lift(base, lift)


# ---------------------------------------------------------------- Poisson bracket


def _require_central(Z: Subspace, *vs):
    for v in vs:
        if not Z.contains(v):
            raise NotCentral("argument is not in the center")


def poisson_bracket(L: FlatLift, z, w, Z: Subspace | None = None) -> np.ndarray:
    """``{z, w} = pinv([z~, w~])`` for central ``z, w``."""
    Z = Z if Z is not None else center(L.base)
    _require_central(Z, z, w)
    R = L.ring
    comm = L.lift.commutator(R.section(z), R.section(w))
    return R.pinv(comm)


@dataclass
class PoissonCenter:
    center: Subspace
    algebra: Algebra  # the center with its own structure constants
    table: np.ndarray  # {b_i, b_j} = sum_k table[i, j, k] b_k

    def bracket(self, u, v):
        """Bracket of two vectors given in center coordinates."""
        F = self.algebra.ring
        return F.einsum("j,jk->k", v, F.einsum("i,ijk->jk", u, self.table))

    def check_axioms(self) -> dict:
        F, T, Zt = self.algebra.ring, self.table, self.algebra.table
        antisym = np.array_equal(T, F.neg(T.transpose(1, 0, 2))) and not np.any(
            T[np.arange(len(T)), np.arange(len(T))]
        )
        # {a, {b, c}} as a tensor [a, b, c, :]
        nested = F.einsum("bcl,alm->abcm", T, T)
        jacobi = F.add(F.add(nested, nested.transpose(1, 2, 0, 3)), nested.transpose(2, 0, 1, 3))
        # {a, bc} - {a, b} c - b {a, c}
        lhs = F.einsum("bcl,alm->abcm", Zt, T)
        t1 = F.einsum("abl,lcm->abcm", T, Zt)
        t2 = F.einsum("acl,blm->abcm", T, Zt)
        leibniz = F.sub(F.sub(lhs, t1), t2)
        return {
            "antisymmetry": bool(antisym),
            "jacobi": not np.any(jacobi),
            "leibniz": not np.any(leibniz),
        }


def poisson_center(L: FlatLift) -> PoissonCenter:
    Z = center(L.base)
    ZA = Z.subalgebra(L.base)
    r = Z.dim
    table = L.field.zeros((r, r, r))
    for i in range(r):
        for j in range(r):
            val = poisson_bracket(L, Z.basis[i], Z.basis[j], Z)
            if not Z.contains(val):
                raise NotCentral("Poisson bracket left the center")
            table[i, j] = Z.coordinates(val)
    return PoissonCenter(Z, ZA, table)


# ---------------------------------------------------------------- obstruction cocycle


def default_linear_lift(L: FlatLift, f) -> np.ndarray:
    return L.ring.section(L.field.asarray(f))


def random_linear_lift(L: FlatLift, f, rng: np.random.Generator) -> np.ndarray:
    R = L.ring
    noise = rng.integers(0, L.field.size, size=np.shape(f))
    return R.add(default_linear_lift(L, f), R.iota(noise))


def _check_pair(L: FlatLift, f, ftilde):
    if not is_algebra_morphism(L.base, f):
        raise NotAMorphism("f is not a unital algebra endomorphism")
    if np.shape(ftilde) != np.shape(f) or not np.array_equal(L.ring.reduce(ftilde), f):
        raise NotALinearLift("the linear lift does not reduce to f")


def defect_cocycle(L: FlatLift, f, ftilde=None) -> Cochain:
    """``C(e_i, e_j) = pinv(f~(e~_i) f~(e~_j) - f~(e~_i e~_j))`` in ``C^2(A, A_f)``."""
    f = L.field.asarray(f)
    ftilde = default_linear_lift(L, f) if ftilde is None else L.ring.asarray(ftilde)
    _check_pair(L, f, ftilde)
    D = multiplicativity_defect(L.lift, ftilde)
    return Cochain(twisted_bimodule(L.base, f), 2, L.ring.pinv(D))


def lift_difference(L: FlatLift, f, f1, f2) -> Cochain:
    """The 1-cochain ``h = pinv o (f~_2 - f~_1) o section``."""
    R = L.ring
    return linear_map_cochain(twisted_bimodule(L.base, f), R.pinv(R.sub(f2, f1)))


@dataclass
class LiftDecision:
    liftable: bool
    lift: np.ndarray | None = None
    correction: Cochain | None = None
    obstruction: Cochain | None = None
    infeasible: Infeasible | None = None


def decide_lift(L: FlatLift, f) -> LiftDecision:
    """Either a multiplicative lift ``f^ = f~ - iota(h pi)`` or the obstruction cocycle."""
    R = L.ring
    f = L.field.asarray(f)
    ftilde = default_linear_lift(L, f)
    C = defect_cocycle(L, f, ftilde)
    try:
        h = coboundary_solve(C)
    except Infeasible as exc:
        return LiftDecision(False, obstruction=C, infeasible=exc)
    fhat = R.sub(ftilde, R.iota(h.tensor.T))
    if not is_algebra_morphism(L.lift, fhat):
        raise RuntimeError("corrected lift failed re-verification over R")
    return LiftDecision(True, lift=fhat, correction=h)


@dataclass
class AntisymReport:
    identity_holds: bool
    cocycle_symmetric: bool
    bracket_preserved: bool
    lhs: np.ndarray  # c(x_i, x_j) - c(x_j, x_i), shape (r, r, dim A)
    rhs: np.ndarray  # {f x_i, f x_j} - f{x_i, x_j}
    mismatches: list = field(default_factory=list)


def antisym_check(L: FlatLift, f, ftilde=None) -> AntisymReport:
    """Compare the antisymmetrised restricted cocycle with the bracket defect."""
    F = L.field
    f = F.asarray(f)
    Z = center(L.base)
    try:
        restrict_endo(f, Z)
    except NotPreserved as exc:
        raise CenterNotPreserved("f does not map the center into itself", witness=exc.witness) from None
    C = defect_cocycle(L, f, ftilde)
    c = restrict(C, Z)
    lhs = antisymmetrization(c)
    r = Z.dim
    rhs = F.zeros((r, r, L.dim))
    for i in range(r):
        for j in range(r):
            x, y = Z.basis[i], Z.basis[j]
            fx, fy = apply(F, f, x), apply(F, f, y)
            rhs[i, j] = F.sub(poisson_bracket(L, fx, fy, Z), apply(F, f, poisson_bracket(L, x, y, Z)))
    mismatches = [(i, j) for i in range(r) for j in range(r) if not np.array_equal(lhs[i, j], rhs[i, j])]
    return AntisymReport(
        identity_holds=not mismatches,
        cocycle_symmetric=not np.any(lhs),
        bracket_preserved=not np.any(rhs),
        lhs=lhs,
        rhs=rhs,
        mismatches=mismatches,
    )


def symmetric_restriction(L: FlatLift, f, ftilde=None) -> Cochain:
    """``C_f~`` restricted to the center (requires ``f(Z) in Z``)."""
    Z = center(L.base)
    try:
        restrict_endo(L.field.asarray(f), Z)
    except NotPreserved as exc:
        raise CenterNotPreserved("f does not map the center into itself", witness=exc.witness) from None
    return restrict(defect_cocycle(L, f, ftilde), Z)


# ---------------------------------------------------------------- square-zero extensions


def build_square_zero_extension(Z: Algebra, M: Bimodule, phi: Cochain) -> Algebra:
    """``E = Z + M`` with ``(a, m)(b, n) = (ab, an + mb + phi(a, b))``."""
    if not Z.is_commutative():
        raise NotCommutative("Z must be commutative")
    if M.algebra is not Z and not np.array_equal(M.algebra.table, Z.table):
        raise DomainError("bimodule is not over Z")
    if not is_b_diagonal(M, whole_space(Z)):
        raise NotDiagonal("M is not a diagonal Z-bimodule")
    if phi.degree != 2 or phi.tensor.shape != (Z.dim, Z.dim, M.dim):
        raise DomainError("phi must be a degree-2 cochain on Z with values in M")
    k = Z.ring
    dz, dm = Z.dim, M.dim
    d = dz + dm
    T = k.zeros((d, d, d))
    T[:dz, :dz, :dz] = Z.table
    T[:dz, :dz, dz:] = phi.tensor
    # e_i * m_v = (L_i m)_u,  m_v * e_j = (R_j m)_u
    T[:dz, dz:, dz:] = M.left.transpose(0, 2, 1)
    T[dz:, :dz, dz:] = M.right.transpose(2, 0, 1)
    unit = np.concatenate([Z.unit, k.neg(phi.evaluate(Z.unit, Z.unit))])
    labels = list(Z.labels) + [f"m{u}" for u in range(dm)]
    return Algebra(k, T, unit, labels)


def symmetric_coboundary_check(Z: Algebra, M: Bimodule, phi: Cochain) -> Cochain:
    """Solve ``delta h = phi`` for a symmetric cocycle on a commutative ``Z``.

    The returned ``h`` gives ``eta = -h`` with
    ``phi(a, b) = eta(ab) - a eta(b) - eta(a) b``.  Raises
    :class:`~hochlift.errors.Infeasible` when ``phi`` is not a coboundary.
    """
    if not Z.is_commutative():
        raise NotCommutative("Z must be commutative")
    if not is_b_diagonal(M, whole_space(Z)):
        raise NotDiagonal("M is not a diagonal Z-bimodule")
    h = coboundary_solve(phi)  # raises NotACocycle first
    if not is_symmetric(phi):
        raise DomainError("phi is not symmetric")
    return h


def eta_relation_holds(phi: Cochain, h: Cochain) -> bool:
    """Check ``phi(a, b) = eta(ab) - a eta(b) - eta(a) b`` with ``eta = -h``."""
    M = phi.module
    k = M.ring
    eta = k.neg(h.tensor)  # eta[j] = eta(e_j)
    T = M.algebra.table
    term_ab = k.einsum("abk,ku->abu", T, eta)
    term_a = k.einsum("auv,bv->abu", M.left, eta)
    term_b = k.einsum("buv,av->abu", M.right, eta)
    rhs = k.sub(k.sub(term_ab, term_a), term_b)
    return bool(np.array_equal(rhs, phi.tensor))


__all__ = [
    "FlatLift",
    "make_flat_lift",
    "matrix_lift",
    "trivial_lift",
    "log_symplectic_lift",
    "poisson_bracket",
    "PoissonCenter",
    "poisson_center",
    "default_linear_lift",
    "random_linear_lift",
    "defect_cocycle",
    "lift_difference",
    "LiftDecision",
    "decide_lift",
    "AntisymReport",
    "antisym_check",
    "symmetric_restriction",
    "build_square_zero_extension",
    "symmetric_coboundary_check",
    "eta_relation_holds",
    "is_cocycle",
]
