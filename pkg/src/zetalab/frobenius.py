"""Finite-support functions on the multiplicative lattice p^Z and the
intersection calculus they generate: discrete Mellin transforms, convolution,
the weight-(-1) involution, pairings of transform divisors with the diagonal
(spectral and geometric routes), and the fundamental positivity inequality.

Function values are exact rationals; floating point enters only when a Mellin
transform is evaluated.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .curves import CurveZetaData, PointCounts
from .errors import DomainError, LengthError, NumericsError, PrimeMismatchError
from .gf import is_prime

_IMAG_TOL = 1e-9


@dataclass(frozen=True)
class FiniteSupportFn:
    """f: p^Z -> Q with finite support; values[n] is f(p^n)."""

    p: int
    values: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"{self.p} is not prime")
        cleaned = tuple(sorted((n, Fraction(v)) for n, v in self.values if v != 0))
        if len({n for n, _ in cleaned}) != len(cleaned):
            raise DomainError("duplicate support point")
        object.__setattr__(self, "values", cleaned)

    @classmethod
    def from_map(cls, p: int, mapping) -> "FiniteSupportFn":
        return cls(p, tuple((int(n), Fraction(v)) for n, v in mapping.items()))

    @classmethod
    def delta(cls, p: int, n: int, c=1) -> "FiniteSupportFn":
        return cls(p, ((n, Fraction(c)),))

    def value(self, n: int) -> Fraction:
        for m, v in self.values:
            if m == n:
                return v
        return Fraction(0)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self.values)

    def __add__(self, other: "FiniteSupportFn") -> "FiniteSupportFn":
        if other.p != self.p:
            raise PrimeMismatchError(f"p mismatch: {self.p} vs {other.p}")
        out = dict(self.values)
        for n, v in other.values:
            out[n] = out.get(n, Fraction(0)) + v
        return FiniteSupportFn(self.p, tuple(out.items()))

    def scale(self, c) -> "FiniteSupportFn":
        c = Fraction(c)
        return FiniteSupportFn(self.p, tuple((n, c * v) for n, v in self.values))


def finite_support_from_json(p: int, mapping: dict) -> FiniteSupportFn:
    """CLI/service wire format: {"n": value}, rationals as "num/den" strings."""
    vals = {}
    for key, raw in mapping.items():
        n = int(key)
        if isinstance(raw, str):
            v = Fraction(raw)
        elif isinstance(raw, int):
            v = Fraction(raw)
        else:
            v = Fraction(raw).limit_denominator(10 ** 12)
        vals[n] = v
    return FiniteSupportFn.from_map(p, vals)


def mellin_fq(f: FiniteSupportFn, s: complex) -> complex:
    """fhat(s) = sum f(p^n) p^(n s); an exact finite sum in floating point."""
    s = complex(s)
    lp = math.log(f.p)
    return sum(float(v) * cmath.exp(n * s * lp) for n, v in f.values)


def convolve(f: FiniteSupportFn, g: FiniteSupportFn) -> FiniteSupportFn:
    """(f * g)(p^n) = sum_m f(p^m) g(p^(n-m)), exactly."""
    if f.p != g.p:
        raise PrimeMismatchError(f"p mismatch: {f.p} vs {g.p}")
    out: dict[int, Fraction] = {}
    for m, fv in f.values:
        for k, gv in g.values:
            out[m + k] = out.get(m + k, Fraction(0)) + fv * gv
    return FiniteSupportFn(f.p, tuple(out.items()))


def involute(g: FiniteSupportFn) -> FiniteSupportFn:
    """g*(p^n) = g(p^(-n)) p^(-n); satisfies Mellin(g*)(s) = Mellin(g)(1-s)."""
    out = tuple((-n, v * Fraction(g.p) ** n) for n, v in g.values)
    return FiniteSupportFn(g.p, out)


@dataclass(frozen=True)
class CurveSpectrum:
    """Frobenius eigenvalues of a curve over F_p and their principal zeros."""

    p: int
    genus: int
    alphas: tuple[complex, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"{self.p} is not prime (this calculus requires q = p)")
        if len(self.alphas) != 2 * self.genus:
            raise DomainError("need exactly 2g eigenvalues")

    @property
    def principal_zeros(self) -> tuple[complex, ...]:
        """s_i with p^(s_i) = alpha_i, principal branch."""
        lp = math.log(self.p)
        return tuple(cmath.log(a) / lp for a in self.alphas)


def spectrum_from_zeta(z: CurveZetaData) -> CurveSpectrum:
    if not is_prime(z.q):
        raise DomainError(f"q = {z.q} is not prime; the lattice calculus needs a prime base")
    return CurveSpectrum(z.q, z.g, z.alphas)


def _hat_at_eigenvalue(f: FiniteSupportFn, alpha: complex) -> complex:
    """fhat at the zero s with p^s = alpha, evaluated as sum f(p^n) alpha^n."""
    return sum(float(v) * alpha ** n for n, v in f.values)


def _real_part(value: complex, what: str) -> float:
    if abs(value.imag) > _IMAG_TOL * max(1.0, abs(value.real)):
        raise NumericsError(f"{what} has imaginary residue {value.imag}")
    return value.real


def diag_pairing_spectral(f: FiniteSupportFn, spec: CurveSpectrum) -> float:
    """fhat(0) + fhat(1) - sum over the 2g principal zeros of fhat.

    fhat is periodic with period 2*pi*i/log(p), so each zero is counted once
    through its eigenvalue: fhat(s_i) = sum f(p^n) alpha_i^n.
    """
    if f.p != spec.p:
        raise PrimeMismatchError(f"p mismatch: {f.p} vs {spec.p}")
    at0 = sum(float(v) for _, v in f.values)
    at1 = sum(float(v) * float(f.p) ** n for n, v in f.values)
    zero_sum = sum(_hat_at_eigenvalue(f, a) for a in spec.alphas)
    return _real_part(at0 + at1 - zero_sum, "spectral diagonal pairing")


def diag_pairing_geometric(f: FiniteSupportFn, counts: PointCounts, g: int) -> float:
    """sum f(p^n) c_n with c_0 = 2 - 2g, c_n = N_n, c_(-n) = p^(-n) N_n (n > 0).

    The weights are the intersection numbers of the Frobenius-correspondence
    divisors with the diagonal: fixed points of the n-th power Frobenius for
    n > 0, the transpose scaling for n < 0, and the diagonal self-intersection
    at n = 0.
    """
    if counts.q != f.p:
        raise PrimeMismatchError(f"counts over q = {counts.q}, function over p = {f.p}")
    need = max((abs(n) for n, _ in f.values), default=0)
    if need > len(counts):
        raise LengthError(f"need counts through N_{need}, have {len(counts)}")
    total = Fraction(0)
    for n, v in f.values:
        if n == 0:
            c = Fraction(2 - 2 * g)
        elif n > 0:
            c = Fraction(counts.n(n))
        else:
            c = Fraction(counts.n(-n), f.p ** (-n))
        total += v * c
    return float(total)


def pairing(f: FiniteSupportFn, g: FiniteSupportFn, spec: CurveSpectrum) -> float:
    """<fhat(A), ghat(A)> = <(f * g*)-hat(A), Diag>."""
    return diag_pairing_spectral(convolve(f, involute(g)), spec)


@dataclass(frozen=True)
class FundamentalInequalityReport:
    lhs: float                 # fhat(0) * fhat(1)
    rhs: float                 # (1/2) <fhat(A), fhat(A)>
    slack: float               # lhs - rhs, must be >= -tol
    q_form: float              # sum fhat(s_i) fhat(1 - s_i), must be >= -tol
    identity_residual: float   # |2*slack - q_form|
    tol: float
    passed: bool


def fundamental_inequality_check(
    f: FiniteSupportFn, spec: CurveSpectrum, tol: float = 1e-9
) -> FundamentalInequalityReport:
    """Check fhat(0) fhat(1) >= (1/2) <fhat(A), fhat(A)> and the equivalent
    positivity of Q(f) = sum fhat(s) fhat(1-s) over the curve's zeros."""
    if f.p != spec.p:
        raise PrimeMismatchError(f"p mismatch: {f.p} vs {spec.p}")
    at0 = sum(float(v) for _, v in f.values)
    at1 = sum(float(v) * float(f.p) ** n for n, v in f.values)
    lhs = at0 * at1
    rhs = 0.5 * pairing(f, f, spec)
    slack = lhs - rhs
    q_raw = 0j
    for a in spec.alphas:
        q_raw += _hat_at_eigenvalue(f, a) * _hat_at_eigenvalue(f, spec.p / a)
    q_form = _real_part(q_raw, "fundamental-inequality quadratic form")
    identity_residual = abs(2.0 * slack - q_form)
    passed = slack >= -tol and q_form >= -tol and identity_residual <= tol * max(1.0, abs(q_form))
    return FundamentalInequalityReport(lhs, rhs, slack, q_form, identity_residual, tol, passed)
