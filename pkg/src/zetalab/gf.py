"""Finite-field arithmetic engine.

F_{p^k} is realized as F_p[x] / (h(x)) with h monic irreducible of degree k,
found by brute-force search in a fixed ordering so every run builds the same
field.  Elements are encoded as integers in 0 .. p^k - 1 (base-p digits =
polynomial coefficients, constant term first).  Multiplication goes through
exp/log tables over a fixed generator, which keeps bulk evaluation over the
whole field vectorizable with numpy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# -- dense polynomial arithmetic over F_p (coefficient lists, low degree first)


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a, b, mod, p):
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    return _poly_rem(res, mod, p)


def _poly_rem(a, mod, p):
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], -1, p)
    while len(a) - 1 >= dm and a:
        if a[-1] == 0:
            a.pop()
            continue
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(mod):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
    return _poly_trim(a)


def _poly_powmod(base, e, mod, p):
    result = [1]
    base = _poly_rem(base, mod, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a = _poly_rem(a, b, p)
        a, b = b, a
    return a


def _is_irreducible(f, p):
    """Monic f of degree k >= 1 irreducible over F_p (x^{p^d} gcd test)."""
    k = len(f) - 1
    if k == 1:
        return True
    x = [0, 1]
    xq = _poly_powmod(x, p ** k, f, p)
    diff = _poly_trim([(xq[i] if i < len(xq) else 0) - (x[i] if i < len(x) else 0) for i in range(max(len(xq), 2))])
    if any(c % p for c in diff):
        return False
    for ell in prime_factors(k):
        d = k // ell
        xd = _poly_powmod(x, p ** d, f, p)
        diff = [(xd[i] if i < len(xd) else 0) - (x[i] if i < len(x) else 0) for i in range(max(len(xd), 2))]
        diff = _poly_trim([c % p for c in diff])
        g = _poly_gcd(f, diff, p)
        if len(g) - 1 >= 1:
            return False
    return True


def find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree k in the base-p encoding order."""
    if k == 1:
        return (0, 1)
    for enc in range(1, p ** k):
        coeffs = []
        e = enc
        for _ in range(k):
            coeffs.append(e % p)
            e //= p
        f = coeffs + [1]
        if f[0] == 0:
            continue
        if _is_irreducible(f, p):
            return tuple(f)
    raise DomainError(f"no irreducible of degree {k} over F_{p}")  # unreachable


class GF:
    """The field F_{p^k} with exp/log multiplication tables."""

    def __init__(self, p: int, k: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        if k < 1:
            raise DomainError("extension degree must be >= 1")
        if modulus is None:
            modulus = find_irreducible(p, k)
        else:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] == 0:
                raise DomainError(f"modulus must be monic-compatible of degree {k}")
            if not _is_irreducible(list(modulus), p):
                raise DomainError("modulus is not irreducible over F_p")
        self.p = p
        self.k = k
        self.order = p ** k
        self.modulus = modulus
        self.generator = self._find_generator()
        self._build_tables()

    # -- index <-> polynomial encoding

    def to_poly(self, idx: int) -> list[int]:
        coeffs = []
        for _ in range(self.k):
            coeffs.append(idx % self.p)
            idx //= self.p
        return coeffs

    def from_poly(self, coeffs) -> int:
        coeffs = _poly_rem(list(coeffs), list(self.modulus), self.p)
        idx = 0
        for c in reversed(coeffs):
            idx = idx * self.p + (c % self.p)
        return idx

    def _mul_raw(self, a: int, b: int) -> int:
        return self.from_poly(_poly_mulmod(self.to_poly(a), self.to_poly(b), list(self.modulus), self.p))

    def _pow_raw(self, a: int, e: int) -> int:
        return self.from_poly(_poly_powmod(self.to_poly(a), e, list(self.modulus), self.p))

    def _find_generator(self) -> int:
        n1 = self.order - 1
        if n1 == 1:
            return 1
        factors = prime_factors(n1)
        for cand in range(2, self.order):
            if all(self._pow_raw(cand, n1 // ell) != 1 for ell in factors):
                return cand
        raise DomainError("no generator found")  # unreachable for a true field

    def _build_tables(self):
        n = self.order
        exp = np.empty(n - 1, dtype=np.int64)
        cur = 1
        for i in range(n - 1):
            exp[i] = cur
            cur = self._mul_raw(cur, self.generator)
        log = np.full(n, -1, dtype=np.int64)
        log[exp] = np.arange(n - 1, dtype=np.int64)
        self.exp = exp
        self.log = log

    # -- scalar ops on element indices

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        res, pk = 0, 1
        for _ in range(self.k):
            res += ((a + b) % self.p) * pk
            a //= self.p
            b //= self.p
            pk *= self.p
        return res

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        res, pk = 0, 1
        for _ in range(self.k):
            res += ((-a) % self.p) * pk
            a //= self.p
            pk *= self.p
        return res

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(int(self.log[a]) + int(self.log[b])) % (self.order - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return int(self.exp[(-int(self.log[a])) % (self.order - 1)])

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        return int(self.exp[(int(self.log[a]) * e) % (self.order - 1)])

    def scalar(self, c: int) -> int:
        """Image of the integer c under Z -> F_p -> F_{p^k}."""
        return c % self.p

    # -- vectorized ops on numpy int64 index arrays

    def add_vec(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        res = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        pk = 1
        aa, bb = a, b
        for _ in range(self.k):
            res += ((aa + bb) % self.p) * pk
            aa = aa // self.p
            bb = bb // self.p
            pk *= self.p
        return res

    def mul_vec(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        zero = (a == 0) | (b == 0)
        la = self.log[np.where(a == 0, 1, a)]
        lb = self.log[np.where(b == 0, 1, b)]
        out = self.exp[(la + lb) % (self.order - 1)]
        return np.where(zero, 0, out)

    def pow_vec(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        la = self.log[np.where(a == 0, 1, a)]
        out = self.exp[(la * e) % (self.order - 1)]
        return np.where(a == 0, 0, out)

    def elements(self):
        return np.arange(self.order, dtype=np.int64)

    def __repr__(self):
        return f"GF({self.p}^{self.k})"


_FIELD_CACHE: dict[tuple[int, int], GF] = {}


def field(p: int, k: int = 1) -> GF:
    """Cached field with the canonical (search-order) modulus."""
    key = (p, k)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = GF(p, k)
    return _FIELD_CACHE[key]


def embedding_root(base: GF, ext: GF) -> int:
    """Smallest-index root of base.modulus inside ext (fixes the embedding)."""
    if ext.p != base.p or ext.k % base.k != 0:
        raise DomainError(f"{ext} is not an extension of {base}")
    if base.k == 1:
        return 1  # constants embed as themselves; root of x - 0 unused
    els = ext.elements()
    acc = np.zeros_like(els)
    for c in reversed(base.modulus):
        acc = ext.add_vec(ext.mul_vec(acc, els), np.int64(c % ext.p))
    roots = np.nonzero(acc == 0)[0]
    if roots.size == 0:
        raise DomainError("modulus has no root in the extension")
    return int(roots[0])


def embed(base: GF, ext: GF, idx: int, root: int | None = None) -> int:
    """Image of a base-field element inside ext via the canonical root."""
    if base.k == 1:
        return idx
    if root is None:
        root = embedding_root(base, ext)
    acc = 0
    for c in reversed(base.to_poly(idx)):
        acc = ext.add(ext.mul(acc, root), c)
    return acc


@dataclass(frozen=True)
class FqElement:
    """A residue-polynomial element of a finite field."""

    field: GF
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.field.order:
            raise DomainError(f"index {self.index} outside field of order {self.field.order}")

    @classmethod
    def from_coeffs(cls, field: GF, coeffs) -> "FqElement":
        return cls(field, field.from_poly(coeffs))

    @property
    def coeffs(self) -> list[int]:
        return self.field.to_poly(self.index)

    def __add__(self, other):
        return FqElement(self.field, self.field.add(self.index, other.index))

    def __sub__(self, other):
        return FqElement(self.field, self.field.sub(self.index, other.index))

    def __mul__(self, other):
        return FqElement(self.field, self.field.mul(self.index, other.index))

    def __neg__(self):
        return FqElement(self.field, self.field.neg(self.index))

    def __pow__(self, e: int):
        return FqElement(self.field, self.field.pow(self.index, e))

    def inverse(self) -> "FqElement":
        return FqElement(self.field, self.field.inv(self.index))

    def __bool__(self):
        return self.index != 0
