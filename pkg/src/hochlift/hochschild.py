"""Hochschild cochains ``C^n(A/k, M)`` for ``n <= 3``.

A degree-``n`` cochain is a dense tensor of shape ``(dim A,)*n + (dim M,)``:
``tensor[i_1, ..., i_n]`` is the value on ``e_{i_1} (x) ... (x) e_{i_n}``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import Bimodule, Subspace
from .errors import DegreeOutOfRange, DimensionMismatch, DomainError, NotACocycle

MAX_DEGREE = 3
MAX_DIM_DEGREE3 = 16
# largest differential matrix we are willing to materialise
MAX_MATRIX_ENTRIES = 1 << 25

_IDX = "abcd"


@dataclass
class Cochain:
    module: Bimodule
    degree: int
    tensor: np.ndarray

    def __post_init__(self):
        if not 0 <= self.degree <= MAX_DEGREE:
            raise DegreeOutOfRange(f"degree {self.degree} not in 0..{MAX_DEGREE}")
        expected = (self.module.algebra.dim,) * self.degree + (self.module.dim,)
        self.tensor = self.module.ring.asarray(self.tensor)
        if self.tensor.shape != expected:
            raise DimensionMismatch(f"cochain tensor has shape {self.tensor.shape}, expected {expected}")

    @property
    def ring(self):
        return self.module.ring

    def is_zero(self) -> bool:
        return not np.any(self.tensor)

    def __add__(self, other: "Cochain") -> "Cochain":
        return Cochain(self.module, self.degree, self.ring.add(self.tensor, other.tensor))

    def __sub__(self, other: "Cochain") -> "Cochain":
        return Cochain(self.module, self.degree, self.ring.sub(self.tensor, other.tensor))

    def __neg__(self) -> "Cochain":
        return Cochain(self.module, self.degree, self.ring.neg(self.tensor))

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.degree == other.degree
            and np.array_equal(self.tensor, other.tensor)
        )

    def evaluate(self, *vectors) -> np.ndarray:
        """Multilinear evaluation on algebra vectors."""
        if len(vectors) != self.degree:
            raise DimensionMismatch(f"degree-{self.degree} cochain takes {self.degree} arguments")
        R, t = self.ring, self.tensor
        for v in vectors:
            t = _contract_first(R, v, t)
        return t


def _contract_first(R, v, t):
    flat = t.reshape(t.shape[0], -1)
    return R.einsum("i,ij->j", v, flat).reshape(t.shape[1:])


def zero_cochain(M: Bimodule, n: int) -> Cochain:
    return Cochain(M, n, M.ring.zeros((M.algebra.dim,) * n + (M.dim,)))


def random_cochain(M: Bimodule, n: int, rng: np.random.Generator) -> Cochain:
    shape = (M.algebra.dim,) * n + (M.dim,)
    return Cochain(M, n, M.ring.asarray(rng.integers(0, M.ring.size, size=shape)))


def _delta_tensor(M: Bimodule, n: int, t: np.ndarray) -> np.ndarray:
    """Apply the Hochschild differential to ``t`` of shape ``(d,)*n + (dm, batch)``.

    (delta c)(a_1..a_{n+1}) = a_1 c(a_2..) + sum_i (-1)^i c(.., a_i a_{i+1}, ..)
                               + (-1)^(n+1) c(a_1..a_n) a_{n+1}
    """
    R = M.ring
    T = M.algebra.table
    idx = _IDX[: n + 1]
    out = R.einsum(f"{idx[0]}uv,{idx[1:]}vz->{idx}uz", M.left, t)
    for i in range(1, n + 1):
        pre, a, b, post = idx[: i - 1], idx[i - 1], idx[i], idx[i + 1 :]
        term = R.einsum(f"{a}{b}k,{pre}k{post}uz->{idx}uz", T, t)
        out = R.sub(out, term) if i % 2 else R.add(out, term)
    last = R.einsum(f"{idx[n]}uv,{idx[:n]}vz->{idx}uz", M.right, t)
    return R.sub(out, last) if n % 2 == 0 else R.add(out, last)


def _check_budget(M: Bimodule, n: int):
    d = M.algebra.dim
    if n >= 2 and d > MAX_DIM_DEGREE3:
        raise DomainError(f"degree-3 cochains are capped at algebra dim {MAX_DIM_DEGREE3}, got {d}")


def delta(c: Cochain) -> Cochain:
    if c.degree > 2:
        raise DegreeOutOfRange("delta is implemented for degrees 0, 1, 2")
    _check_budget(c.module, c.degree)
    out = _delta_tensor(c.module, c.degree, c.tensor[..., None])[..., 0]
    return Cochain(c.module, c.degree + 1, out)


def delta_matrix(M: Bimodule, n: int) -> np.ndarray:
    """Matrix of ``delta^n`` with respect to the flattened tensor coordinates."""
    if not 0 <= n <= 2:
        raise DegreeOutOfRange("delta is implemented for degrees 0, 1, 2")
    _check_budget(M, n)
    d, dm = M.algebra.dim, M.dim
    src = d**n * dm
    if d ** (n + 1) * dm * src > MAX_MATRIX_ENTRIES:
        raise DomainError(f"delta^{n} matrix for dim {d} exceeds the memory budget")
    basis = M.ring.eye(src).reshape((d,) * n + (dm, src))
    return _delta_tensor(M, n, basis).reshape(d ** (n + 1) * dm, src)


def is_cocycle(c: Cochain) -> bool:
    return delta(c).is_zero()


def coboundary_solve(c: Cochain) -> Cochain:
    """A degree-1 ``h`` with ``delta(h) = c`` (free variables zero).

    Raises :class:`NotACocycle` if ``c`` is not closed and
    :class:`~hochlift.errors.Infeasible` if it is not a coboundary.
    """
    if c.degree != 2:
        raise DegreeOutOfRange("coboundary_solve takes a degree-2 cochain")
    if not is_cocycle(c):
        raise NotACocycle("cochain is not a cocycle")
    M = c.module
    D = delta_matrix(M, 1)
    x = linalg.solve(M.ring, D, c.tensor.reshape(-1))
    h = Cochain(M, 1, x.reshape(M.algebra.dim, M.dim))
    assert delta(h) == c
    return h


def cochain_rank(M: Bimodule, n: int) -> int:
    if n < 0:
        return 0
    return linalg.rank(M.ring, delta_matrix(M, n))


def hh_dim(M: Bimodule, n: int) -> int:
    """``dim HH^n(A, M) = dim ker delta^n - rank delta^{n-1}``."""
    if not 0 <= n <= 2:
        raise DegreeOutOfRange("hh_dim supports n = 0, 1, 2")
    d, dm = M.algebra.dim, M.dim
    cn = d**n * dm
    return cn - cochain_rank(M, n) - cochain_rank(M, n - 1)


def restrict(c: Cochain, B: Subspace) -> Cochain:
    """Evaluate ``c`` on tuples of ``B``-basis vectors; ``M`` restricted to ``B``."""
    R = c.ring
    sub_module = c.module.restrict(B)
    t = c.tensor
    for axis in range(c.degree):
        t = np.moveaxis(_tensordot_ring(R, B.basis, t, axis), 0, axis)
    return Cochain(sub_module, c.degree, t)


def _tensordot_ring(R, basis, t, axis):
    moved = np.moveaxis(t, axis, 0)
    flat = moved.reshape(moved.shape[0], -1)
    return R.einsum("ki,ij->kj", basis, flat).reshape((basis.shape[0],) + moved.shape[1:])


def antisymmetrization(c: Cochain) -> np.ndarray:
    """``c(x, y) - c(y, x)`` as a tensor."""
    if c.degree != 2:
        raise DegreeOutOfRange("antisymmetrization needs degree 2")
    return c.ring.sub(c.tensor, c.tensor.transpose(1, 0, 2))


def is_symmetric(c: Cochain) -> bool:
    return not np.any(antisymmetrization(c))


def linear_map_cochain(M: Bimodule, h) -> Cochain:
    """Degree-1 cochain from a ``dim M x dim A`` matrix (column j = h(e_j))."""
    return Cochain(M, 1, M.ring.asarray(h).T.copy())


def cochain_to_json(c: Cochain) -> dict:
    R = c.ring
    entries = []
    if c.degree == 0:
        items = [((), c.tensor)]
    else:
        items = (
            (idx, c.tensor[idx])
            for idx in itertools.product(range(c.module.algebra.dim), repeat=c.degree)
        )
    for idx, val in items:
        if np.any(val):
            entries.append({"idx": list(idx), "val": [R.element_to_json(x) for x in val]})
    return {"degree": c.degree, "tensor": entries}


def cochain_from_json(obj: dict, M: Bimodule) -> Cochain:
    n = int(obj["degree"])
    c = zero_cochain(M, n)
    for entry in obj.get("tensor", []):
        idx = tuple(int(i) for i in entry["idx"])
        if len(idx) != n:
            raise DimensionMismatch(f"index {idx} does not match degree {n}")
        val = [M.ring.element_from_json(x) for x in entry["val"]]
        if len(val) != M.dim:
            raise DimensionMismatch(f"value at {idx} must have length {M.dim}")
        c.tensor[idx] = val
    return c
