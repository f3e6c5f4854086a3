"""Weyl algebras ``A_n`` over ``F_p`` and ``Z/p^2`` in normal order.

An element is a sparse map from monomials ``x^alpha d^beta`` (all ``x``'s to
the left) to coefficients in ``Z/N`` with ``N = p`` or ``p^2``.  Products use

    d^b x^a = sum_k k! C(a, k) C(b, k) x^(a-k) d^(b-k)

per generator pair.  Over ``F_p`` the center is the polynomial ring in
``X_i = x_i^p`` and ``D_i = d_i^p``; its Poisson bracket comes from the lift
to ``Z/p^2``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial

from . import linalg
from .coeff import PrimeField, is_prime
from .errors import DomainError, Infeasible, MismatchedSignature, NotAnEndo, NotCentral


@lru_cache(maxsize=None)
def _reorder(b: int, a: int, N: int) -> tuple:
    """Terms ``(k, coeff)`` of ``d^b x^a`` with nonzero coefficient mod ``N``."""
    out = []
    for k in range(min(a, b) + 1):
        c = factorial(k) * comb(a, k) * comb(b, k) % N
        if c:
            out.append((k, c))
    return tuple(out)


def _deglex(mono):
    alpha, beta = mono
    return (sum(alpha) + sum(beta), alpha + beta)


class WeylElem:
    __slots__ = ("n", "p", "N", "terms")

    def __init__(self, n: int, p: int, terms=None, N: int | None = None):
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        self.n, self.p = n, p
        self.N = N or p
        if self.N not in (p, p * p):
            raise DomainError("coefficients must live in F_p or Z/p^2")
        self.terms = {}
        for mono, c in (terms or {}).items():
            alpha, beta = (tuple(int(e) for e in part) for part in mono)
            if len(alpha) != n or len(beta) != n or min(alpha + beta, default=0) < 0:
                raise DomainError(f"bad monomial {mono!r} for n = {n}")
            c %= self.N
            if c:
                self.terms[(alpha, beta)] = (self.terms.get((alpha, beta), 0) + c) % self.N
        self.terms = {m: c for m, c in self.terms.items() if c}

    # -- constructors ---------------------------------------------------
    @classmethod
    def _raw(cls, n, p, N, terms):
        obj = cls.__new__(cls)
        obj.n, obj.p, obj.N, obj.terms = n, p, N, terms
        return obj

    @classmethod
    def const(cls, c: int, n: int, p: int, N: int | None = None) -> "WeylElem":
        zero = (0,) * n
        return cls(n, p, {(zero, zero): c}, N)

    @classmethod
    def monomial(cls, alpha, beta, n: int, p: int, c: int = 1, N: int | None = None) -> "WeylElem":
        return cls(n, p, {(tuple(alpha), tuple(beta)): c}, N)

    @classmethod
    def x(cls, i: int, n: int, p: int, N: int | None = None) -> "WeylElem":
        e = tuple(int(k == i) for k in range(n))
        return cls.monomial(e, (0,) * n, n, p, 1, N)

    @classmethod
    def d(cls, i: int, n: int, p: int, N: int | None = None) -> "WeylElem":
        e = tuple(int(k == i) for k in range(n))
        return cls.monomial((0,) * n, e, n, p, 1, N)

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: "WeylElem"):
        if (self.n, self.p, self.N) != (other.n, other.p, other.N):
            raise MismatchedSignature("operands live in different Weyl algebras")

    def _coerce(self, other):
        if isinstance(other, int):
            return WeylElem.const(other, self.n, self.p, self.N)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = (terms.get(m, 0) + c) % self.N
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
        return WeylElem._raw(self.n, self.p, self.N, terms)

    __radd__ = __add__

    def __neg__(self):
        return WeylElem._raw(self.n, self.p, self.N, {m: (-c) % self.N for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c: int) -> "WeylElem":
        return WeylElem(self.n, self.p, {m: v * c for m, v in self.terms.items()}, self.N)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        N, n = self.N, self.n
        acc: dict = {}
        for (alpha, beta), c1 in self.terms.items():
            for (gamma, delta), c2 in other.terms.items():
                c12 = c1 * c2 % N
                per_pair = [_reorder(beta[i], gamma[i], N) for i in range(n)]
                for choice in itertools.product(*per_pair):
                    coeff = c12
                    for _, c in choice:
                        coeff = coeff * c % N
                    if not coeff:
                        continue
                    ks = [k for k, _ in choice]
                    mono = (
                        tuple(alpha[i] + gamma[i] - ks[i] for i in range(n)),
                        tuple(beta[i] + delta[i] - ks[i] for i in range(n)),
                    )
                    acc[mono] = (acc.get(mono, 0) + coeff) % N
        return WeylElem._raw(self.n, self.p, N, {m: c for m, c in acc.items() if c})

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        result = WeylElem.const(1, self.n, self.p, self.N)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = WeylElem.const(other, self.n, self.p, self.N)
        if not isinstance(other, WeylElem):
            return NotImplemented
        return (self.n, self.p, self.N) == (other.n, other.p, other.N) and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.p, self.N, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((_deglex(m)[0] for m in self.terms), default=-1)

    # -- change of coefficients -----------------------------------------
    def reduce(self) -> "WeylElem":
        return WeylElem(self.n, self.p, dict(self.terms), self.p)

    def embed(self) -> "WeylElem":
        """Least-representative lift of an ``F_p`` element to ``Z/p^2``."""
        if self.N != self.p:
            raise DomainError("embed expects an element over F_p")
        return WeylElem._raw(self.n, self.p, self.p**2, dict(self.terms))

    def iota(self) -> "WeylElem":
        """``p * (lift)`` as an element over ``Z/p^2``."""
        return self.embed().scale(self.p)

    def pinv(self) -> "WeylElem":
        if self.N != self.p**2:
            raise DomainError("pinv expects an element over Z/p^2")
        if any(c % self.p for c in self.terms.values()):
            raise DomainError("element is not divisible by p")
        return WeylElem(self.n, self.p, {m: c // self.p for m, c in self.terms.items()}, self.p)

    # -- printing / JSON ------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: _deglex(mc[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (alpha, beta), c in self.sorted_terms():
            factors = []
            for i, e in enumerate(alpha):
                name = "x" if self.n == 1 else f"x{i + 1}"
                if e:
                    factors.append(name if e == 1 else f"{name}^{e}")
            for i, e in enumerate(beta):
                name = "d" if self.n == 1 else f"d{i + 1}"
                if e:
                    factors.append(name if e == 1 else f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "ring": "fp" if self.N == self.p else "zp2",
            "terms": [{"x": list(a), "d": list(b), "c": c} for (a, b), c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "WeylElem":
        n, p = int(obj["n"]), int(obj["p"])
        N = p * p if obj.get("ring", "fp") == "zp2" else p
        terms: dict = {}
        for t in obj.get("terms", []):
            key = (tuple(t["x"]), tuple(t["d"]))
            terms[key] = terms.get(key, 0) + int(t["c"])
        return cls(n, p, terms, N)


def commutator(a: WeylElem, b: WeylElem) -> WeylElem:
    return a * b - b * a


# ---------------------------------------------------------------- endomorphisms


@dataclass
class WeylEndo:
    images_x: list
    images_d: list

    def __post_init__(self):
        imgs = self.images
        if len(self.images_x) != len(self.images_d) or not imgs:
            raise DomainError("need one image per generator")
        n, p, N = imgs[0].n, imgs[0].p, imgs[0].N
        if len(self.images_x) != n:
            raise DomainError(f"A_{n} needs {n} images of x and of d")
        for g in imgs:
            if (g.n, g.p, g.N) != (n, p, N):
                raise MismatchedSignature("generator images live in different Weyl algebras")

    @property
    def images(self) -> list:
        return list(self.images_x) + list(self.images_d)

    @property
    def n(self) -> int:
        return self.images_x[0].n

    @property
    def p(self) -> int:
        return self.images_x[0].p

    @property
    def N(self) -> int:
        return self.images_x[0].N

    @classmethod
    def identity(cls, n: int, p: int, N: int | None = None) -> "WeylEndo":
        return cls([WeylElem.x(i, n, p, N) for i in range(n)], [WeylElem.d(i, n, p, N) for i in range(n)])

    def __call__(self, w: WeylElem) -> WeylElem:
        """Image of an arbitrary element (substitute generator images)."""
        result = WeylElem.const(0, self.n, self.p, self.N)
        for (alpha, beta), c in w.terms.items():
            term = WeylElem.const(c, self.n, self.p, self.N)
            for i, e in enumerate(alpha):
                term = term * self.images_x[i] ** e
            for i, e in enumerate(beta):
                term = term * self.images_d[i] ** e
            result = result + term
        return result

    def to_json(self) -> dict:
        return {"images_x": [g.to_json() for g in self.images_x], "images_d": [g.to_json() for g in self.images_d]}

    @classmethod
    def from_json(cls, obj: dict) -> "WeylEndo":
        return cls(
            [WeylElem.from_json(g) for g in obj["images_x"]],
            [WeylElem.from_json(g) for g in obj["images_d"]],
        )


def _relation_pairs(n: int):
    """``(a, b, target)`` over generator indices ``x_1..x_n, d_1..d_n`` with
    ``[g_a, g_b] = target``; ``[x_i, d_j] = -delta_ij``."""
    for a in range(2 * n):
        for b in range(a + 1, 2 * n):
            target = -1 if (a < n <= b and b - n == a) else 0
            yield a, b, target


def relation_residuals(f: WeylEndo) -> list:
    """Failing relations ``(a, b, [f g_a, f g_b] - target)``."""
    imgs = f.images
    bad = []
    for a, b, t in _relation_pairs(f.n):
        r = commutator(imgs[a], imgs[b]) - t
        if not r.is_zero():
            bad.append((a, b, r))
    return bad


def is_weyl_endo(f: WeylEndo) -> bool:
    return not relation_residuals(f)


def generator_name(k: int, n: int) -> str:
    base = "x" if k < n else "d"
    i = k % n
    return base if n == 1 else f"{base}{i + 1}"


# ---------------------------------------------------------------- the center


class CenterPoly:
    """Commutative polynomial in ``X_1..X_n, D_1..D_n`` over ``F_p``."""

    __slots__ = ("n", "p", "terms")

    def __init__(self, n: int, p: int, terms=None):
        self.n, self.p = n, p
        self.terms = {}
        for m, c in (terms or {}).items():
            c %= p
            if c:
                self.terms[m] = (self.terms.get(m, 0) + c) % p
        self.terms = {m: c for m, c in self.terms.items() if c}

    @classmethod
    def const(cls, c, n, p):
        return cls(n, p, {((0,) * n, (0,) * n): c})

    @classmethod
    def generator(cls, k: int, n: int, p: int) -> "CenterPoly":
        e = [0] * (2 * n)
        e[k] = 1
        return cls(n, p, {(tuple(e[:n]), tuple(e[n:])): 1})

    def __add__(self, other):
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return CenterPoly(self.n, self.p, t)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return CenterPoly(self.n, self.p, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        acc: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                m = (tuple(x + y for x, y in zip(a1, a2)), tuple(x + y for x, y in zip(b1, b2)))
                acc[m] = acc.get(m, 0) + c1 * c2
        return CenterPoly(self.n, self.p, acc)

    def partial(self, k: int) -> "CenterPoly":
        """Derivative in the ``k``-th variable of ``X_1..X_n, D_1..D_n``."""
        acc = {}
        for (a, b), c in self.terms.items():
            e = list(a + b)
            if e[k]:
                coeff = c * e[k]
                e[k] -= 1
                acc[(tuple(e[: self.n]), tuple(e[self.n :]))] = coeff
        return CenterPoly(self.n, self.p, acc)

    def __eq__(self, other):
        return isinstance(other, CenterPoly) and (self.n, self.p, self.terms) == (other.n, other.p, other.terms)

    def __hash__(self):
        return hash((self.n, self.p, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def evaluate(self) -> WeylElem:
        """Back to ``A_n(F_p)``: ``X^a D^b -> x^(pa) d^(pb)``."""
        p = self.p
        return WeylElem(
            self.n,
            p,
            {(tuple(p * e for e in a), tuple(p * e for e in b)): c for (a, b), c in self.terms.items()},
        )

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items(), key=lambda mc: _deglex(mc[0])):
            factors = []
            for k, e in enumerate(a + b):
                if e:
                    name = ("X" if k < self.n else "D") + ("" if self.n == 1 else str(k % self.n + 1))
                    factors.append(name if e == 1 else f"{name}^{e}")
            mono = "*".join(factors)
            parts.append((mono if c == 1 else f"{c}*{mono}") if mono else str(c))
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self):
        return [{"X": list(a), "D": list(b), "c": c} for (a, b), c in sorted(self.terms.items(), key=lambda mc: _deglex(mc[0]))]


def central_rewrite(w: WeylElem) -> CenterPoly:
    """``x^(pa) d^(pb) -> X^a D^b``; raises :class:`NotCentral` otherwise."""
    if w.N != w.p:
        raise DomainError("central_rewrite works over F_p")
    p = w.p
    terms = {}
    for (alpha, beta), c in w.terms.items():
        if any(e % p for e in alpha + beta):
            raise NotCentral(f"monomial x^{list(alpha)} d^{list(beta)} has an exponent not divisible by {p}")
        terms[(tuple(e // p for e in alpha), tuple(e // p for e in beta))] = c
    return CenterPoly(w.n, p, terms)


@lru_cache(maxsize=None)
def bracket_constants(p: int, n: int) -> tuple:
    """``B[u][v] = {u, v}`` for ``u, v`` in ``X_1..X_n, D_1..D_n``.

    Computed as ``pinv([u~, v~])`` with ``u~ = x_i^p`` or ``d_i^p`` in
    ``A_n(Z/p^2)``; every value must be a constant.
    """
    N = p * p
    gens = [WeylElem.x(i, n, p, N) ** p for i in range(n)] + [WeylElem.d(i, n, p, N) ** p for i in range(n)]
    zero = ((0,) * n, (0,) * n)
    B = [[0] * (2 * n) for _ in range(2 * n)]
    for a in range(2 * n):
        for b in range(2 * n):
            val = commutator(gens[a], gens[b]).pinv()
            if any(m != zero for m in val.terms):
                raise NotCentral(f"bracket of generators {a}, {b} is not constant: {val}")
            B[a][b] = val.terms.get(zero, 0)
    return tuple(tuple(row) for row in B)


def center_bracket(F: CenterPoly, G: CenterPoly) -> CenterPoly:
    """``{F, G} = sum_uv B[u][v] dF/du dG/dv``."""
    n, p = F.n, F.p
    B = bracket_constants(p, n)
    out = CenterPoly(n, p)
    for u in range(2 * n):
        dF = F.partial(u)
        if dF.is_zero():
            continue
        for v in range(2 * n):
            if B[u][v]:
                out = out + (dF * G.partial(v)).scale(B[u][v])
    return out


@dataclass
class PoissonReport:
    preserved: bool
    center_images: list  # F(X_1..X_n, D_1..D_n)
    mismatches: list = field(default_factory=list)  # (u, v, {F u, F v}, expected)


def restrict_to_center(f: WeylEndo) -> list:
    """``F(u) = f(g)^p`` rewritten in the center variables."""
    return [central_rewrite(g**f.p) for g in f.images]


def poisson_preserves(f: WeylEndo) -> PoissonReport:
    if f.N != f.p:
        raise DomainError("poisson_preserves expects an endomorphism over F_p")
    if not is_weyl_endo(f):
        raise NotAnEndo("generator images violate the Weyl relations")
    n, p = f.n, f.p
    images = restrict_to_center(f)
    B = bracket_constants(p, n)
    mismatches = []
    for u in range(2 * n):
        for v in range(u + 1, 2 * n):
            got = center_bracket(images[u], images[v])
            expected = CenterPoly.const(B[u][v], n, p)
            if got != expected:
                mismatches.append((u, v, got, expected))
    return PoissonReport(not mismatches, images, mismatches)


def decide_weyl_lift(f: WeylEndo) -> bool:
    """Liftable to ``A_n(Z/p^2)`` iff the induced map on the center is Poisson."""
    return poisson_preserves(f).preserved


# ---------------------------------------------------------------- explicit lifts


def _monomials(n: int, bound: int):
    out = []
    for total in range(bound + 1):
        for e in itertools.product(range(total + 1), repeat=2 * n):
            if sum(e) == total:
                out.append((tuple(e[:n]), tuple(e[n:])))
    return out


def search_lift(f: WeylEndo, degree_bound: int) -> WeylEndo | None:
    """Lift with images ``embed(f g) + p * c_g``, ``deg c_g <= degree_bound``.

    The relations over ``Z/p^2`` are linear over ``F_p`` in the corrections.
    Returns ``None`` when no lift of this shape exists; that is not a proof
    of non-liftability.
    """
    if f.N != f.p:
        raise DomainError("search_lift expects an endomorphism over F_p")
    if not is_weyl_endo(f):
        raise NotAnEndo("generator images violate the Weyl relations")
    n, p = f.n, f.p
    F = PrimeField(p)
    g = f.images
    G = [x.embed() for x in g]
    monos = _monomials(n, degree_bound)
    nm = len(monos)
    pairs = list(_relation_pairs(n))
    rows: dict = {}
    entries = []  # (row key, column, value)
    rhs: dict = {}

    def row_of(key):
        if key not in rows:
            rows[key] = len(rows)
        return rows[key]

    for pi, (a, b, t) in enumerate(pairs):
        resid = (commutator(G[a], G[b]) - t).pinv()
        for mono, c in resid.terms.items():
            rhs[row_of((pi, mono))] = (-c) % p
        for slot, other, sign in ((a, g[b], 1), (b, g[a], -1)):
            # [c_a, g_b] for the slot a; [g_a, c_b] = -[c_b, g_a] for slot b
            for mi, (alpha, beta) in enumerate(monos):
                unit = WeylElem._raw(n, p, p, {(alpha, beta): 1})
                for mono, c in commutator(unit, other).terms.items():
                    entries.append((row_of((pi, mono)), slot * nm + mi, (sign * c) % p))
    M = F.zeros((len(rows), 2 * n * nm))
    for r, col, v in entries:
        M[r, col] = (M[r, col] + v) % p
    b = F.zeros(len(rows))
    for r, v in rhs.items():
        b[r] = v
    try:
        x = linalg.solve(F, M, b, certify=False)
    except Infeasible:
        return None
    lifted = []
    for k in range(2 * n):
        coeffs = x[k * nm : (k + 1) * nm]
        corr = WeylElem(n, p, {monos[i]: int(c) for i, c in enumerate(coeffs) if c}, p)
        lifted.append(G[k] + corr.iota())
    result = WeylEndo(lifted[:n], lifted[n:])
    if not is_weyl_endo(result) or any(l.reduce() != x for l, x in zip(lifted, g)):
        raise RuntimeError("lift search produced images that fail re-verification")
    return result


# ---------------------------------------------------------------- named examples


def p2_example() -> WeylEndo:
    """``x -> x``, ``d -> d + x^3 d^4`` on ``A_1(F_2)``."""
    x = WeylElem.x(0, 1, 2)
    d = WeylElem.d(0, 1, 2)
    return WeylEndo([x], [d + WeylElem.monomial((3,), (4,), 1, 2)])


def triangular_example(p: int) -> WeylEndo:
    """``x -> x``, ``d -> d + x``."""
    x = WeylElem.x(0, 1, p)
    return WeylEndo([x], [WeylElem.d(0, 1, p) + x])

