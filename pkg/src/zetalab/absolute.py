"""Zeta functions attached to exponential counting functions N(u) = sum of
m(alpha) u^alpha: the two-variable closed form Z_N(w; s) = sum m(alpha)
(s-alpha)^(-w), its defining integral as an independent quadrature oracle,
the w-derivative normalization zeta_N(s) = exp(d/dw Z|_{w=0}) with closed
form prod (s-alpha)^(-m(alpha)), direct-sum/product rules, the generating
function limit (x -> 1), and the smoothed zero-sum counting distribution
together with its closed constant at u = 1 and its Mellin-side consistency
check against the completed zeta.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

from .errors import BranchError, ConvergenceError, DomainError, PoleError, QuadratureError
from .special import CONSTANTS, log_deriv_completed_zeta
from .zeros import ZeroTable

_MERGE_TOL = 1e-9


@dataclass(frozen=True)
class ExponentSum:
    """N(u) = sum m(alpha) u^alpha with distinct real exponents; chi = N(1)."""

    terms: tuple[tuple[float, int], ...]
    chi: int

    def __post_init__(self):
        cleaned = tuple(sorted((float(a), int(m)) for a, m in self.terms if m != 0))
        alphas = [a for a, _ in cleaned]
        for x, y in zip(alphas, alphas[1:]):
            if y - x < _MERGE_TOL:
                raise DomainError(f"exponents {x} and {y} are not distinct")
        object.__setattr__(self, "terms", cleaned)
        if self.chi != sum(m for _, m in cleaned):
            raise DomainError(f"chi = {self.chi} does not match sum of multiplicities")

    @classmethod
    def from_terms(cls, terms) -> "ExponentSum":
        terms = tuple((float(a), int(m)) for a, m in terms)
        return cls(terms, sum(m for _, m in terms if m != 0))

    @property
    def max_alpha(self) -> float:
        return max((a for a, _ in self.terms), default=0.0)

    def value(self, u: float) -> float:
        return sum(m * u ** a for a, m in self.terms)

    def value_log(self, t):
        """N(e^t), vectorized."""
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for a, m in self.terms:
            out += m * np.exp(a * t)
        return out


CATALOG = {
    "point": ExponentSum.from_terms([(0, 1)]),
    "Gm": ExponentSum.from_terms([(1, 1), (0, -1)]),
    "A1": ExponentSum.from_terms([(1, 1)]),
    "P1": ExponentSum.from_terms([(1, 1), (0, 1)]),
    "SL2": ExponentSum.from_terms([(3, 1), (1, -1)]),
}


def exponent_sum_from_json(spec) -> ExponentSum:
    """Wire format: a catalog name or [{"alpha": 3, "m": 1}, ...]."""
    if isinstance(spec, str):
        if spec not in CATALOG:
            raise DomainError(f"unknown counting function {spec!r}; choices: {', '.join(CATALOG)}")
        return CATALOG[spec]
    return ExponentSum.from_terms([(item["alpha"], item["m"]) for item in spec])


def _principal_power(base: complex, expo: complex) -> complex:
    return cmath.exp(expo * cmath.log(base))


def zN_closed(N: ExponentSum, w: complex, s: complex) -> complex:
    """Z_N(w; s) = sum m(alpha) (s - alpha)^(-w), principal branches."""
    w = complex(w)
    s = complex(s)
    if w == 0:
        return complex(N.chi)
    w_is_integer = w.imag == 0.0 and w.real == round(w.real)
    total = 0.0 + 0.0j
    for a, m in N.terms:
        d = s - a
        if d == 0:
            raise PoleError(f"s = {s} collides with exponent {a}")
        if not w_is_integer and d.imag == 0.0 and d.real < 0.0:
            raise BranchError(f"s - {a} = {d} on the negative real axis with non-integer w")
        total += m * _principal_power(d, -w)
    return total


def zetaN_closed(N: ExponentSum, s: complex) -> complex:
    """zeta_N(s) = prod (s - alpha)^(-m(alpha))."""
    s = complex(s)
    total = 1.0 + 0.0j
    for a, m in N.terms:
        d = s - a
        if d == 0:
            if m > 0:
                raise PoleError(f"s = {s} is a pole of order {m}")
            return 0.0 + 0.0j
        total *= _principal_power(d, -m)
    return total


@lru_cache(maxsize=64)
def _jacobi_rule(n: int, beta: float):
    x, w = roots_jacobi(n, 0.0, beta)
    return x, w


def zN_integral_oracle(N: ExponentSum, w: float, s: float,
                       target: float = 1e-8, max_doublings: int = 8) -> float:
    """Quadrature of (1/Gamma(w)) * integral over (1, inf) of
    N(u) u^(-s) (log u)^(w-1) du/u, for real w in (0, 1] and real s.

    On the log axis the integrand is N(e^t) e^(-st) t^(w-1); the endpoint
    weight t^(w-1) is absorbed by a Gauss-Jacobi rule on [0, 1], the smooth
    remainder integrated by composite Gauss-Legendre out to where the
    exponential decay kills it.
    """
    if not 0.0 < w <= 1.0:
        raise DomainError("w must lie in (0, 1]")
    gap = s - N.max_alpha
    if gap < 0.5:
        raise ConvergenceError(f"s = {s} too close to max exponent {N.max_alpha} (gap {gap})")
    weight_sum = sum(abs(m) for _, m in N.terms) or 1.0
    t_max = 1.0 + (-math.log(1e-18 / weight_sum)) / gap

    def integrand(t):
        return N.value_log(t) * np.exp(-s * t)

    def level(n: int) -> float:
        xj, wj = _jacobi_rule(n, w - 1.0)
        head_nodes = (xj + 1.0) / 2.0
        head = (0.5 ** w) * float(wj @ integrand(head_nodes))
        panels = max(4, int(math.ceil(t_max - 1.0))) * max(1, n // 24)
        x, wl = np.polynomial.legendre.leggauss(24)
        edges = np.linspace(1.0, t_max, panels + 1)
        half = np.diff(edges) / 2.0
        mid = (edges[:-1] + edges[1:]) / 2.0
        nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        weights = (half[:, None] * wl[None, :]).ravel()
        tail = float(weights @ (integrand(nodes) * nodes ** (w - 1.0)))
        return head + tail

    n = 24
    prev = level(n)
    for _ in range(max_doublings):
        n *= 2
        cur = level(n)
        if abs(cur - prev) <= target:
            gamma_w = math.gamma(w)
            return cur / gamma_w
        prev = cur
    raise QuadratureError(f"integral oracle did not stabilize to {target}")


def zetaN_via_wderiv(N: ExponentSum, s: complex, h: float = 1e-5) -> complex:
    """exp of the w-derivative of Z_N at w = 0, by Richardson-extrapolated
    central differences; matches the closed product."""

    def diff(step: float) -> complex:
        return (zN_closed(N, step, s) - zN_closed(N, -step, s)) / (2.0 * step)

    d1 = diff(h)
    d2 = diff(h / 2.0)
    return cmath.exp((4.0 * d2 - d1) / 3.0)


@dataclass(frozen=True)
class LogDerivRelationReport:
    z_at_one: complex
    partial_fractions: complex
    numeric_log_deriv: complex
    residual_analytic: float
    residual_numeric: float
    passed: bool


def log_deriv_relation_check(N: ExponentSum, s: complex, h: float = 1e-6,
                             tol_analytic: float = 1e-8, tol_numeric: float = 1e-5) -> LogDerivRelationReport:
    """Z_N(1; s) must equal -zeta_N'(s)/zeta_N(s), i.e. sum m(alpha)/(s-alpha)."""
    s = complex(s)
    z1 = zN_closed(N, 1.0, s)
    pf = sum(m / (s - a) for a, m in N.terms)
    zp = (zetaN_closed(N, s + h) - zetaN_closed(N, s - h)) / (2.0 * h)
    numeric = -zp / zetaN_closed(N, s)
    ra = abs(z1 - pf)
    rn = abs(z1 - numeric)
    scale = max(1.0, abs(z1))
    return LogDerivRelationReport(z1, pf, numeric, ra, rn,
                                  bool(ra <= tol_analytic * scale and rn <= tol_numeric * scale))


def oplus(N: ExponentSum, M: ExponentSum) -> ExponentSum:
    """(N + M)(u): merge terms, summing multiplicities, dropping zeros."""
    merged: list[tuple[float, int]] = []
    for a, m in sorted(list(N.terms) + list(M.terms)):
        if merged and a - merged[-1][0] < _MERGE_TOL:
            merged[-1] = (merged[-1][0], merged[-1][1] + m)
        else:
            merged.append((a, m))
    return ExponentSum.from_terms(merged)


def otimes(N: ExponentSum, M: ExponentSum) -> ExponentSum:
    """(N * M)(u): all pairwise exponent sums with multiplied multiplicities."""
    pairs = [(a + b, n * m) for a, n in N.terms for b, m in M.terms]
    merged: list[tuple[float, int]] = []
    for a, m in sorted(pairs):
        if merged and a - merged[-1][0] < _MERGE_TOL:
            merged[-1] = (merged[-1][0], merged[-1][1] + m)
        else:
            merged.append((a, m))
    return ExponentSum.from_terms(merged)


@dataclass(frozen=True)
class GeneratingLimitReport:
    x_values: tuple[float, ...]
    values: tuple[float, ...]
    errors: tuple[float, ...]
    closed_value: float
    passed: bool


def generating_limit(N: ExponentSum, s: float, x_sequence,
                     series_tol: float = 1e-15) -> GeneratingLimitReport:
    """Evaluate Z(x, x^(-s)) (x-1)^chi along x decreasing to 1, where
    Z(x, T) = exp(sum over r >= 1 of N(x^r) T^r / r), and check linear-in-(x-1)
    convergence to the closed zeta value.

    The r-series is summed term by term to a geometric tail bound below
    series_tol; it converges iff x^(alpha - s) < 1 for every exponent.
    """
    xs = [float(x) for x in x_sequence]
    if not xs or any(not 1.0 < x <= 2.0 for x in xs):
        raise DomainError("x values must lie in (1, 2]")
    if any(b >= a for a, b in zip(xs, xs[1:])) and len(xs) > 1:
        if not all(b < a for a, b in zip(xs, xs[1:])):
            raise DomainError("x values must decrease toward 1")
    closed = zetaN_closed(N, s)
    closed_val = closed.real
    values, errors = [], []
    for x in xs:
        lx = math.log(x)
        ratios = [(m, math.exp((a - s) * lx)) for a, m in N.terms]
        if any(z >= 1.0 for _, z in ratios):
            raise ConvergenceError(f"series ratio >= 1 at x = {x} (need s > every exponent)")
        acc = 0.0
        r = 0
        block = 256
        while True:
            rs = np.arange(r + 1, r + block + 1, dtype=float)
            term = np.zeros_like(rs)
            for m, z in ratios:
                term += m * z ** rs
            acc += float(np.sum(term / rs))
            r += block
            bound = sum(abs(m) * z ** (r + 1) / ((r + 1) * (1.0 - z)) for m, z in ratios)
            if bound < series_tol * max(1.0, abs(acc)):
                break
            if r > 10_000_000:
                raise ConvergenceError("generating series converges too slowly")
        val = math.exp(acc) * (x - 1.0) ** N.chi
        values.append(val)
        errors.append(abs(val - closed_val))
    nonincreasing = all(e2 <= e1 + 1e-15 for e1, e2 in zip(errors, errors[1:]))
    first_rate = errors[0] / (xs[0] - 1.0)
    linear_ok = errors[-1] <= max(3.0 * first_rate * (xs[-1] - 1.0), 1e-12)
    return GeneratingLimitReport(tuple(xs), tuple(values), tuple(errors),
                                 closed_val, bool(nonincreasing and linear_ok))


@dataclass(frozen=True)
class IntegralLemmaReport:
    limit_route: float
    quadrature_route: float
    analytic_route: float
    max_deviation: float
    passed: bool


def integral_lemma_check(N: ExponentSum, s: float, tol: float = 1e-6) -> IntegralLemmaReport:
    """Three routes to the integral of N(u) u^(-s) du/u over (1, inf):

    1. the x -> 1 limit of F(x, s) = d/ds sum N(x^r) x^(-rs)/r (geometric
       closed form per exponent, Richardson-extrapolated in x - 1),
    2. direct quadrature on the log axis,
    3. the partial-fraction value sum m(alpha)/(s - alpha), which is also
       -d/ds log zeta_N(s).
    """
    gap = s - N.max_alpha
    if gap < 0.5:
        raise ConvergenceError(f"s = {s} too close to max exponent (gap {gap})")

    def F(x: float) -> float:
        lx = math.log(x)
        total = 0.0
        for a, m in N.terms:
            z = math.exp((a - s) * lx)
            total += m * lx * z / (1.0 - z)
        return total

    hs = [0.004 / 2 ** k for k in range(5)]
    samples = [F(1.0 + h) for h in hs]
    # Neville extrapolation to h = 0
    for level in range(1, len(hs)):
        for i in range(len(hs) - level):
            samples[i] = samples[i + 1] + (samples[i + 1] - samples[i]) * hs[i + level] / (hs[i] - hs[i + level])
    limit_route = samples[0]

    weight_sum = sum(abs(m) for _, m in N.terms) or 1.0
    t_max = (-math.log(1e-18 / weight_sum)) / gap

    def level_quad(panels: int) -> float:
        x, wl = np.polynomial.legendre.leggauss(24)
        edges = np.linspace(0.0, t_max, panels + 1)
        half = np.diff(edges) / 2.0
        mid = (edges[:-1] + edges[1:]) / 2.0
        nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        weights = (half[:, None] * wl[None, :]).ravel()
        return float(weights @ (N.value_log(nodes) * np.exp(-s * nodes)))

    panels = max(8, int(t_max))
    prev = level_quad(panels)
    for _ in range(8):
        panels *= 2
        cur = level_quad(panels)
        if abs(cur - prev) <= 1e-10 * max(1.0, abs(cur)):
            break
        prev = cur
    quadrature_route = cur

    analytic_route = sum(m / (s - a) for a, m in N.terms)
    dev = max(abs(limit_route - quadrature_route),
              abs(limit_route - analytic_route),
              abs(quadrature_route - analytic_route))
    return IntegralLemmaReport(limit_route, quadrature_route, analytic_route,
                               dev, bool(dev <= tol * max(1.0, abs(analytic_route))))


# -- the counting distribution of the compactified integer spectrum -------------


@dataclass(frozen=True)
class CountingDistribution:
    """Smoothed zero-sum counting function u + 1 - sum over zero pairs of
    ord * exp(-lambda*gamma) * 2 Re(u^rho)."""

    zero_table: ZeroTable
    pair_cutoff: int
    smoothing: float

    def __post_init__(self):
        if not 0 <= self.pair_cutoff <= len(self.zero_table):
            raise DomainError("pair cutoff exceeds the zero table")
        if self.smoothing < 0:
            raise DomainError("smoothing must be nonnegative")


def cc_counting(dist: CountingDistribution, u: float) -> float:
    if u <= 1.0:
        raise DomainError("the counting distribution is evaluated for u > 1")
    total = u + 1.0
    lu = math.log(u)
    ru = math.sqrt(u)
    terms = []
    for g, m in zip(dist.zero_table.ordinates[: dist.pair_cutoff],
                    dist.zero_table.multiplicities[: dist.pair_cutoff]):
        terms.append(m * math.exp(-dist.smoothing * g) * 2.0 * ru * math.cos(g * lu))
    return total - math.fsum(terms)


@dataclass(frozen=True)
class CCValueBracket:
    partial_sum: float
    tail_bound: float

    @property
    def upper(self) -> float:
        return self.partial_sum + self.tail_bound

    def contains(self, value: float) -> bool:
        return self.partial_sum <= value <= self.upper


def cc_value_at_one(table: ZeroTable, K: int) -> CCValueBracket:
    """Partial sum of 2 Re(1/(rho+1)) = 3/(9/4 + gamma^2) over the first K
    zero pairs, plus an analytic tail bound from the zero-counting density
    (1/2pi) log(gamma/2pi) with a fluctuation margin."""
    if not 0 <= K <= len(table):
        raise DomainError("K exceeds the table")
    gammas = table.ordinates[:K]
    mults = table.multiplicities[:K]
    partial = math.fsum(m * 3.0 / (2.25 + g * g) for g, m in zip(gammas, mults))
    if K == 0:
        return CCValueBracket(0.0, math.inf)
    gK = gammas[-1]
    tail = (3.0 / (2.0 * math.pi)) * (math.log(gK / (2.0 * math.pi)) + 1.0) / gK + 6.0 / (gK * gK)
    return CCValueBracket(partial, tail)


def cc_closed_constant() -> float:
    """1/2 + gamma/2 + log(4 pi)/2 - zeta'(-1)/zeta(-1), from the frozen constants."""
    return (0.5 + CONSTANTS.euler_gamma / 2.0 + CONSTANTS.log_4pi_half
            - CONSTANTS.zeta_prime_ratio_at_minus1)


@dataclass(frozen=True)
class CCIntegralReport:
    integral_side: float
    log_deriv_side: float
    deviation: float
    tol: float
    passed: bool


def cc_integral_check(dist: CountingDistribution, s: float, U: float,
                      tol: float | None = None) -> CCIntegralReport:
    """Compare -integral over (1, U) of N_smoothed(u) u^(-s-1) du (power terms
    integrated in closed form) against the logarithmic derivative of the
    completed zeta at s.

    The tolerance is intentionally loose: truncating the zero sum and Abel
    smoothing bias the integral side at any desk-scale cutoff, and that bias
    scales like (s - 1/2) (each zero pair contributes 2(s-1/2)/((s-1/2)^2 +
    gamma^2)).  The default tolerance is 0.05 at s = 2, scaled linearly in
    s - 1/2 elsewhere.
    """
    if s <= 1.0:
        raise DomainError("need s > 1")
    if U <= 1.0:
        raise DomainError("need U > 1")
    if tol is None:
        tol = 0.05 * (s - 0.5) / 1.5
    base = -((1.0 - U ** (1.0 - s)) / (s - 1.0) + (1.0 - U ** (-s)) / s)
    zero_terms = []
    for g, m in zip(dist.zero_table.ordinates[: dist.pair_cutoff],
                    dist.zero_table.multiplicities[: dist.pair_cutoff]):
        rho = complex(0.5, g)
        contrib = (1.0 - U ** (rho - s)) / (s - rho)
        zero_terms.append(m * math.exp(-dist.smoothing * g) * 2.0 * contrib.real)
    integral_side = base + math.fsum(zero_terms)
    log_deriv_side = log_deriv_completed_zeta(s).real
    dev = abs(integral_side - log_deriv_side)
    return CCIntegralReport(integral_side, log_deriv_side, dev, tol, bool(dev <= tol))
