"""Exact coefficient rings: prime and extension fields, and the two
first-order truncation rings ``Z/p^2`` and ``F_q[t]/(t^2)``.

Every ring here is a free ``Z/N``-module of rank ``r`` with a commutative
multiplication given by an integer structure tensor.  Elements are stored as
plain integers in ``[0, N**r)`` (base-``N`` digits are the coordinates), so
arrays of elements are ordinary numpy integer arrays and equality is
bit-exact.

The truncation rings share one encoding trick: with residue field of size
``q`` an element is ``a0 + q*a1`` where ``a0`` is its reduction and ``a1``
its ``eps``-part.  Reduction, ``iota`` and ``pinv`` are then ``x % q``,
``a * q`` and ``x // q`` for both families.
"""
from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np

from .errors import DomainError

_LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_mod(a, b, p):
    """Remainder of ``a`` by monic ``b`` over F_p (coefficient lists, low to high)."""
    a = [c % p for c in a]
    while len(a) >= len(b):
        lead = a[-1]
        if lead:
            shift = len(a) - len(b)
            for k, c in enumerate(b):
                a[shift + k] = (a[shift + k] - lead * c) % p
        a.pop()
    return a


def is_irreducible(modulus, p: int) -> bool:
    """Exhaustive factor search; fine for the degrees used here (m <= 4)."""
    m = len(modulus) - 1
    if m < 1 or modulus[-1] % p != 1:
        return False
    for deg in range(1, m // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            g = list(tail) + [1]
            if not any(_poly_mod(modulus, g, p)):
                return False
    return True


class CoefficientRing:
    """Finite commutative ring ``(Z/N)^r`` with multiplication tensor ``S``.

    Subclasses fix ``N``, ``r`` and ``S``.  All elementwise operations accept
    numpy arrays (or Python ints) of encoded elements and broadcast.
    """

    N: int
    r: int

    def __init__(self, N: int, S: np.ndarray):
        self.N = N
        self.S = np.asarray(S, dtype=np.int64)
        self.r = self.S.shape[0]
        self.size = N ** self.r
        # int64 is safe while N^2 times any contraction length stays far below 2^63
        self.dtype = np.int64 if N < 2**20 and self.size < 2**40 else object
        self._pow = np.array([N**k for k in range(self.r)], dtype=self.dtype)

    zero = 0
    one = 1

    # -- encoding -------------------------------------------------------
    def asarray(self, x) -> np.ndarray:
        return np.asarray(x, dtype=self.dtype)

    def _decode(self, a):
        a = self.asarray(a)
        return (a[..., None] // self._pow) % self.N

    def _encode(self, d):
        return (d % self.N * self._pow).sum(axis=-1)

    def from_int(self, k):
        """Image of an integer under ``Z -> ring``."""
        return self.asarray(k) % self.N

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=self.dtype)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64).astype(self.dtype)

    def elements(self):
        return range(self.size)

    # -- arithmetic -----------------------------------------------------
    def add(self, a, b):
        if self.r == 1:
            return (self.asarray(a) + b) % self.N
        return self._encode(self._decode(a) + self._decode(b))

    def neg(self, a):
        if self.r == 1:
            return (-self.asarray(a)) % self.N
        return self._encode(-self._decode(a))

    def sub(self, a, b):
        if self.r == 1:
            return (self.asarray(a) - b) % self.N
        return self._encode(self._decode(a) - self._decode(b))

    def mul(self, a, b):
        if self.r == 1:
            return (self.asarray(a) * b) % self.N
        da, db = self._decode(a), self._decode(b)
        prod = np.einsum("...i,...j,ijk->...k", da, db, self.S.astype(self.dtype))
        return self._encode(prod)

    def sum(self, a, axis=None):
        if self.r == 1:
            return self.asarray(a).sum(axis=axis) % self.N
        d = self._decode(a)
        if axis is None:
            d = d.reshape(-1, self.r)
            axis = 0
        elif axis < 0:
            axis -= 1
        return self._encode(d.sum(axis=axis))

    def einsum(self, subscripts: str, *operands):
        """``np.einsum`` over the ring for one or two operands."""
        ops = [self.asarray(o) for o in operands]
        if self.r == 1:
            return np.einsum(subscripts, *ops) % self.N
        inputs, out = subscripts.replace(" ", "").split("->")
        terms = inputs.split(",")
        used = set(subscripts)
        free = [c for c in _LETTERS if c not in used]
        if len(ops) == 1:
            u = free[0]
            d = np.einsum(f"{terms[0]}{u}->{out}{u}", self._decode(ops[0]))
            return self._encode(d)
        u, v = free[0], free[1]
        pair = np.einsum(
            f"{terms[0]}{u},{terms[1]}{v}->{out}{u}{v}", self._decode(ops[0]), self._decode(ops[1])
        )
        d = np.tensordot(pair % self.N, self.S.astype(self.dtype), axes=([-2, -1], [0, 1]))
        return self._encode(d)

    def matmul(self, a, b):
        a, b = self.asarray(a), self.asarray(b)
        if b.ndim == 1:
            return self.einsum("ij,j->i", a, b)
        return self.einsum("ij,jk->ik", a, b)

    # -- serialisation --------------------------------------------------
    def element_to_json(self, x):
        return int(x)

    def element_from_json(self, obj):
        x = int(obj)
        if not 0 <= x < self.size:
            raise DomainError(f"element {obj!r} out of range for {self}")
        return x

    def descriptor(self) -> dict:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, CoefficientRing) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(repr(self.descriptor()))

    @property
    def is_field(self) -> bool:
        return False


class Field(CoefficientRing):
    p: int
    m: int

    @property
    def is_field(self) -> bool:
        return True

    @property
    def characteristic(self) -> int:
        return self.p

    def inv(self, x) -> int:
        x = int(x)
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inverses[x]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, x, e: int) -> int:
        result, base = 1, int(x)
        while e:
            if e & 1:
                result = int(self.mul(result, base))
            base = int(self.mul(base, base))
            e >>= 1
        return result

    @cached_property
    def _inverses(self):
        q = self.size
        return {x: self.power(x, q - 2) for x in range(1, q)}


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        self.p, self.m = p, 1
        super().__init__(p, [[[1]]])

    def inv(self, x) -> int:
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def descriptor(self):
        return {"field": {"p": self.p, "m": 1}}

    def __repr__(self):
        return f"F_{self.p}"


class ExtensionField(Field):
    """``F_p[w]/(modulus)`` in the power basis ``1, w, ..., w^(m-1)``."""

    def __init__(self, p: int, modulus):
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        modulus = [int(c) % p for c in modulus]
        m = len(modulus) - 1
        if not 1 <= m <= 4:
            raise DomainError("extension degree must be between 1 and 4")
        if not is_irreducible(modulus, p):
            raise DomainError(f"{modulus} is not a monic irreducible polynomial over F_{p}")
        self.p, self.m, self.modulus = p, m, tuple(modulus)
        # w^k reduced, for k < 2m - 1
        powers = []
        for k in range(2 * m - 1):
            mono = [0] * k + [1]
            red = _poly_mod(mono, list(modulus), p) if k >= m else mono
            powers.append(red + [0] * (m - len(red)))
        S = np.zeros((m, m, m), dtype=np.int64)
        for i in range(m):
            for j in range(m):
                S[i, j] = powers[i + j]
        super().__init__(p, S)

    def coords(self, x):
        return [int(c) for c in self._decode(x)]

    def from_coords(self, coords):
        return int(self._encode(np.asarray(coords, dtype=self.dtype)))

    def frobenius(self, x):
        return self.power(x, self.p)

    def element_to_json(self, x):
        return self.coords(x)

    def element_from_json(self, obj):
        if isinstance(obj, int):
            return super().element_from_json(obj)
        if len(obj) != self.m:
            raise DomainError(f"expected {self.m} coordinates, got {obj!r}")
        return self.from_coords([int(c) % self.p for c in obj])

    def descriptor(self):
        return {"field": {"p": self.p, "m": self.m, "modulus": list(self.modulus)}}

    def __repr__(self):
        return f"F_{self.p}^{self.m}"


def make_field(p: int, m: int = 1, modulus=None) -> Field:
    if m == 1 and modulus is None:
        return PrimeField(p)
    if modulus is None:
        raise DomainError("extension fields need an explicit irreducible modulus")
    return ExtensionField(p, modulus)


class TruncationRing(CoefficientRing):
    """Local ring with maximal ideal ``eps*R``, ``eps^2 = 0`` and residue
    field ``self.residue``."""

    residue: Field

    @property
    def q(self) -> int:
        return self.residue.size

    def reduce(self, x):
        """Reduction ``R -> k``."""
        return self.asarray(x) % self.q

    def iota(self, a):
        """``k -> eps*R``, ``a -> eps * (any lift of a)``."""
        return self.asarray(a) * self.q

    def pinv(self, x):
        """Inverse of ``iota`` on ``eps*R``; raises on elements outside it."""
        x = self.asarray(x)
        if np.any(x % self.q != 0):
            raise DomainError("pinv is only defined on eps*R")
        return x // self.q

    def section(self, a):
        """Canonical set-theoretic lift ``k -> R`` (least representative /
        constant part).  Additive only up to ``eps*R``."""
        return np.array(self.asarray(a), copy=True)

    @property
    def eps(self) -> int:
        return self.q


class ZpSquared(TruncationRing):
    """``Z/p^2``, i.e. length-two Witt vectors over ``F_p``."""

    def __init__(self, p: int):
        self.residue = PrimeField(p)
        self.p = p
        super().__init__(p * p, [[[1]]])

    def descriptor(self):
        return {"ring": {"kind": "zp2", "p": self.p}}

    def __repr__(self):
        return f"Z/{self.p}^2"


class DualNumbers(TruncationRing):
    """``k[t]/(t^2)`` over a finite field ``k``."""

    def __init__(self, field: Field):
        self.residue = field
        self.p = field.p
        m = field.m
        S = np.zeros((2 * m, 2 * m, 2 * m), dtype=np.int64)
        S[:m, :m, :m] = field.S
        S[:m, m:, m:] = field.S
        S[m:, :m, m:] = field.S
        super().__init__(field.p, S)

    def parts(self, x):
        x = int(x)
        return x % self.q, x // self.q

    def element_to_json(self, x):
        a0, a1 = self.parts(x)
        return [self.residue.element_to_json(a0), self.residue.element_to_json(a1)]

    def element_from_json(self, obj):
        if isinstance(obj, int):
            return super().element_from_json(obj)
        a0, a1 = (self.residue.element_from_json(c) for c in obj)
        return a0 + self.q * a1

    def descriptor(self):
        return {"ring": {"kind": "dual", "field": self.residue.descriptor()["field"]}}

    def __repr__(self):
        return f"{self.residue!r}[t]/t^2"


def ring_from_json(obj: dict) -> CoefficientRing:
    if "field" in obj:
        f = obj["field"]
        return make_field(int(f["p"]), int(f.get("m", 1)), f.get("modulus"))
    if "ring" in obj:
        r = obj["ring"]
        kind = r.get("kind")
        if kind == "zp2":
            return ZpSquared(int(r["p"]))
        if kind == "dual":
            return DualNumbers(ring_from_json({"field": r["field"]}))
        raise DomainError(f"unknown ring kind {kind!r}")
    raise DomainError("ring descriptor needs a 'field' or 'ring' key")


def ring_to_json(ring: CoefficientRing) -> dict:
    return ring.descriptor()
