"""Plane projective curves over finite fields: exhaustive point counting,
reconstruction of the rational zeta function from counts, and checks of the
three classical properties (rationality is implicit in the construction; the
functional equation and the eigenvalue-modulus statement are verified
numerically, the point-count asymptotic bound exactly).

Counting is exhaustive over normalized representatives of the projective
plane, vectorized over the extension field's index tables, and guarded by a
hard enumeration budget.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import gf
from .errors import (
    BudgetError,
    DomainError,
    LengthError,
    NonIntegralError,
    NumericsError,
    ParseError,
    PoleError,
)

ENUMERATION_BUDGET = 10 ** 8


@dataclass(frozen=True)
class PlaneCurve:
    """Homogeneous trivariate polynomial over F_q, as exponents -> element index."""

    field: gf.GF
    degree: int
    coeffs: tuple[tuple[tuple[int, int, int], int], ...]

    def __post_init__(self):
        if self.degree < 1:
            raise DomainError("degree must be positive")
        cleaned = []
        seen = set()
        for (i, j, k), c in self.coeffs:
            if i < 0 or j < 0 or k < 0 or i + j + k != self.degree:
                raise DomainError(f"monomial x^{i} y^{j} z^{k} is not homogeneous of degree {self.degree}")
            if (i, j, k) in seen:
                raise DomainError(f"duplicate monomial ({i},{j},{k})")
            seen.add((i, j, k))
            if not 0 <= c < self.field.order:
                raise DomainError("coefficient outside the field")
            if c != 0:
                cleaned.append(((i, j, k), c))
        if not cleaned:
            raise DomainError("curve polynomial is identically zero")
        object.__setattr__(self, "coeffs", tuple(sorted(cleaned)))

    @property
    def q(self) -> int:
        return self.field.order

    @classmethod
    def from_integer_coeffs(cls, field: gf.GF, degree: int, coeffs: dict) -> "PlaneCurve":
        items = tuple((exps, field.scalar(c)) for exps, c in coeffs.items())
        return cls(field, degree, items)


@dataclass(frozen=True)
class PointCounts:
    """N_m = |X(F_{q^m})| for m = 1..len(counts)."""

    q: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if any(n < 0 for n in self.counts):
            raise DomainError("point counts must be nonnegative")

    def __len__(self):
        return len(self.counts)

    def n(self, m: int) -> int:
        return self.counts[m - 1]


def genus_smooth_plane(degree: int) -> int:
    return (degree - 1) * (degree - 2) // 2


_TOKEN = re.compile(r"\s*([xyz]|\d+|\^|\*|\+|-)")


def parse_curve(text: str) -> PlaneCurve:
    """Parse e.g. "y^2*z - x^3 - x*z^2 mod 3" into a PlaneCurve over F_p.

    Grammar: sum of terms; a term is an optional integer coefficient and
    '*'-separated variable powers among x, y, z; 'mod p' with p prime closes
    the expression.  The polynomial must be homogeneous.
    """
    if "mod" not in text:
        raise ParseError("missing 'mod p' suffix")
    poly_text, _, mod_text = text.rpartition("mod")
    try:
        p = int(mod_text.strip())
    except ValueError:
        raise ParseError(f"bad modulus {mod_text.strip()!r}") from None
    if not gf.is_prime(p):
        raise ParseError(f"modulus {p} is not prime")

    pos = 0
    tokens = []
    while pos < len(poly_text):
        m = _TOKEN.match(poly_text, pos)
        if not m:
            if poly_text[pos:].strip():
                raise ParseError(f"unexpected character {poly_text[pos:].strip()[0]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()

    terms: dict[tuple[int, int, int], int] = {}
    idx = 0

    def parse_term(sign: int):
        nonlocal idx
        coeff = sign
        exps = {"x": 0, "y": 0, "z": 0}
        saw_factor = False
        expect_factor = True
        while idx < len(tokens):
            t = tokens[idx]
            if t in "+-":
                break
            if t == "*":
                if expect_factor:
                    raise ParseError("misplaced '*'")
                idx += 1
                expect_factor = True
                continue
            if not expect_factor:
                raise ParseError(f"missing operator before {t!r}")
            if t.isdigit():
                coeff *= int(t)
                idx += 1
            elif t in "xyz":
                var = t
                idx += 1
                e = 1
                if idx < len(tokens) and tokens[idx] == "^":
                    idx += 1
                    if idx >= len(tokens) or not tokens[idx].isdigit():
                        raise ParseError(f"bad exponent after {var}^")
                    e = int(tokens[idx])
                    idx += 1
                exps[var] += e
            elif t == "^":
                raise ParseError("'^' without a base variable")
            else:
                raise ParseError(f"unexpected token {t!r}")
            saw_factor = True
            expect_factor = False
        if not saw_factor:
            raise ParseError("empty term")
        key = (exps["x"], exps["y"], exps["z"])
        terms[key] = terms.get(key, 0) + coeff

    sign = 1
    if idx < len(tokens) and tokens[idx] in "+-":
        sign = -1 if tokens[idx] == "-" else 1
        idx += 1
    parse_term(sign)
    while idx < len(tokens):
        t = tokens[idx]
        if t not in "+-":
            raise ParseError(f"expected '+' or '-', got {t!r}")
        idx += 1
        parse_term(-1 if t == "-" else 1)

    terms = {k: v % p for k, v in terms.items() if v % p}
    if not terms:
        raise ParseError("polynomial is zero mod p")
    degrees = {sum(k) for k in terms}
    if len(degrees) != 1:
        raise ParseError(f"polynomial is not homogeneous (degrees {sorted(degrees)})")
    field = gf.field(p)
    return PlaneCurve(field, degrees.pop(), tuple(terms.items()))


# -- exhaustive enumeration ---------------------------------------------------


def _extension_and_embedded(curve: PlaneCurve, m: int):
    base = curve.field
    ext = gf.field(base.p, base.k * m) if m > 1 or base.k > 1 else base
    if ext is base:
        emb = dict((idx, idx) for _, idx in curve.coeffs)
    else:
        root = gf.embedding_root(base, ext) if base.k > 1 else None
        emb = {idx: gf.embed(base, ext, idx, root) for _, idx in curve.coeffs}
    terms = tuple((exps, emb[idx]) for exps, idx in curve.coeffs)
    return ext, terms


def _common_zero_count(ext: gf.GF, polys, block_rows: int = None) -> int:
    """Number of projective points (normalized reps) killing every poly.

    polys: list of term tuples ((i, j, k), coeff_index) over ext.
    """
    n = ext.order
    if block_rows is None:
        block_rows = max(1, (1 << 21) // n)
    els = ext.elements()

    def poly_exps(poly, which):
        return sorted({exps[which] for exps, _ in poly})

    # chart x = 1: all (y, z)
    z_pows = {e: ext.pow_vec(els, e) for poly in polys for e in poly_exps(poly, 2)}
    y_pows = {e: ext.pow_vec(els, e) for poly in polys for e in poly_exps(poly, 1)}
    total = 0
    for start in range(0, n, block_rows):
        stop = min(start + block_rows, n)
        mask = None
        for poly in polys:
            acc = np.zeros((stop - start, n), dtype=np.int64)
            for (i, j, k), c in poly:
                term = ext.mul_vec(y_pows[j][start:stop, None], z_pows[k][None, :])
                acc = ext.add_vec(acc, ext.mul_vec(np.int64(c), term))
            pm = acc == 0
            mask = pm if mask is None else (mask & pm)
            if not mask.any():
                break
        total += int(mask.sum())

    # chart x = 0, y = 1: terms with i == 0
    mask = None
    for poly in polys:
        acc = np.zeros(n, dtype=np.int64)
        for (i, j, k), c in poly:
            if i == 0:
                acc = ext.add_vec(acc, ext.mul_vec(np.int64(c), z_pows[k]))
        pm = acc == 0
        mask = pm if mask is None else (mask & pm)
    total += int(mask.sum())

    # chart x = 0, y = 0, z = 1: the z^d coefficient alone
    point_vanishes_all = True
    for poly in polys:
        val = 0
        for (i, j, k), c in poly:
            if i == 0 and j == 0:
                val = ext.add(val, c)
        if val != 0:
            point_vanishes_all = False
            break
    if point_vanishes_all:
        total += 1
    return total


def count_points(curve: PlaneCurve, m: int, budget: int = ENUMERATION_BUDGET) -> int:
    """|X(F_{q^m})| by exhaustive enumeration of P^2 over F_{q^m}."""
    if m < 1:
        raise DomainError("m must be >= 1")
    if curve.q ** (2 * m) > budget:
        raise BudgetError(f"q^(2m) = {curve.q ** (2 * m)} exceeds budget {budget}")
    ext, terms = _extension_and_embedded(curve, m)
    return _common_zero_count(ext, [terms])


def _partial_terms(curve: PlaneCurve, which: int):
    """Terms of the partial derivative with respect to coordinate `which`."""
    out = []
    p = curve.field.p
    for (i, j, k), c in curve.coeffs:
        e = (i, j, k)[which]
        if e == 0 or e % p == 0:
            continue
        cc = curve.field.mul(curve.field.scalar(e), c)
        if cc == 0:
            continue
        exps = list((i, j, k))
        exps[which] -= 1
        out.append((tuple(exps), cc))
    return out


def is_smooth(curve: PlaneCurve, budget: int = ENUMERATION_BUDGET) -> bool:
    """True iff no projective point over the extensions annihilates the curve
    and all three partials.

    Singular points of a degree-d plane curve live in extensions of degree at
    most (d-1)^2; extensions past the enumeration budget are skipped with a
    warning (never reached for the desk-scale curves this library targets).
    """
    polys = [list(curve.coeffs)]
    for which in range(3):
        polys.append(_partial_terms(curve, which))
    # a vanishing partial is identically zero: drop it (it kills no condition)
    polys = [p for p in polys if p]
    max_m = max(1, (curve.degree - 1) ** 2)
    for m in range(1, max_m + 1):
        if curve.q ** (2 * m) > budget:
            warnings.warn(
                f"smoothness verified only through extension degree {m - 1} (budget)",
                stacklevel=2,
            )
            break
        ext, _ = _extension_and_embedded(curve, m)
        base = curve.field
        root = gf.embedding_root(base, ext) if base.k > 1 and ext is not base else None
        embedded = []
        for poly in polys:
            embedded.append(
                [(exps, idx if ext is base else gf.embed(base, ext, idx, root)) for exps, idx in poly]
            )
        if _common_zero_count(ext, embedded) > 0:
            return False
    return True


def count_points_range(curve: PlaneCurve, max_m: int, budget: int = ENUMERATION_BUDGET) -> PointCounts:
    return PointCounts(curve.q, tuple(count_points(curve, m, budget) for m in range(1, max_m + 1)))


# -- zeta data from counts ----------------------------------------------------


def _trim_poly(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_deriv(c: list[Fraction]) -> list[Fraction]:
    return [j * c[j] for j in range(1, len(c))]


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    while len(a) >= len(b) and a:
        if a[-1] == 0:
            a.pop()
            continue
        k = len(a) - len(b)
        coef = a[-1] * inv
        q[k] = coef
        for i in range(len(b)):
            a[k + i] -= coef * b[i]
        a.pop()
    return _trim_poly(q), _trim_poly(a)


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _trim_poly(list(a)), _trim_poly(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _trim_poly([x - y for x, y in zip(a, b)])


def _roots_with_multiplicity(coeffs_desc) -> list[complex]:
    """Roots of an exact rational polynomial, repeated by multiplicity.

    Yun's square-free decomposition keeps each numpy eigenvalue solve on a
    simple-root factor, so repeated eigenvalues (supersingular curves, powers
    of isogeny factors) do not lose accuracy to root clustering.
    """
    a = _trim_poly([Fraction(c) for c in reversed(list(coeffs_desc))])
    roots: list[complex] = []
    da = _poly_deriv(a)
    g = _poly_gcd(a, da)
    c, _ = _poly_divmod(a, g)
    d0, _ = _poly_divmod(da, g)
    d = _poly_sub(d0, _poly_deriv(c))
    mult = 1
    while len(c) > 1:
        f = _poly_gcd(c, d)
        if len(f) > 1:
            factor_desc = np.array([float(x) for x in reversed(f)])
            for r in np.roots(factor_desc):
                roots.extend([complex(r)] * mult)
        c, _ = _poly_divmod(c, f)
        df, _ = _poly_divmod(d, f)
        d = _poly_sub(df, _poly_deriv(c))
        mult += 1
    return roots


@dataclass(frozen=True)
class CurveZetaData:
    """q, genus, integer numerator coefficients of P_1, and its inverse roots."""

    q: int
    g: int
    numerator_coeffs: tuple[int, ...]
    alphas: tuple[complex, ...]

    @property
    def chi(self) -> int:
        return 2 - 2 * self.g

    def numerator_at(self, t: complex) -> complex:
        acc = 0j
        for c in reversed(self.numerator_coeffs):
            acc = acc * t + c
        return acc

    def zeta_at(self, t: complex) -> complex:
        """Z(X, t) = P_1(t) / ((1 - t)(1 - q t))."""
        if abs(t - 1.0) < 1e-12 or abs(t - 1.0 / self.q) < 1e-12:
            raise PoleError(f"t = {t} is a pole of the zeta function")
        return self.numerator_at(t) / ((1.0 - t) * (1.0 - self.q * t))


def zeta_from_counts(counts: PointCounts, g: int) -> CurveZetaData:
    """Rebuild P_1 and its inverse roots from N_1..N_k via Newton's identities.

    Power sums p_n = q^n + 1 - N_n determine the elementary symmetric
    functions of the inverse roots exactly (rational arithmetic); the
    numerator coefficients must come out integral, and any extra counts must
    satisfy the degree-2g linear recurrence, otherwise the (counts, genus)
    pair is inconsistent.
    """
    if g < 0:
        raise DomainError("genus must be nonnegative")
    if len(counts) < 2 * g:
        raise LengthError(f"need at least {2 * g} counts for genus {g}, got {len(counts)}")
    q = counts.q
    psums = [Fraction(q) ** n + 1 - counts.n(n) for n in range(1, len(counts) + 1)]

    es = [Fraction(1)]
    for j in range(1, 2 * g + 1):
        acc = Fraction(0)
        for i in range(1, j + 1):
            acc += (-1) ** (i - 1) * es[j - i] * psums[i - 1]
        es.append(acc / j)

    coeffs = []
    for j, e in enumerate(es):
        c = (-1) ** j * e
        if c.denominator != 1:
            raise NonIntegralError(f"numerator coefficient {j} is {c}, not an integer")
        coeffs.append(int(c))

    # counts beyond 2g must follow the recurrence the first 2g induce
    for n in range(2 * g + 1, len(counts) + 1):
        predicted = sum((-1) ** (i - 1) * es[i] * psums[n - i - 1] for i in range(1, 2 * g + 1))
        if psums[n - 1] != predicted:
            raise NonIntegralError(
                f"count N_{n} inconsistent with genus {g}: power sum {psums[n - 1]} != {predicted}"
            )

    if g == 0:
        alphas: tuple[complex, ...] = ()
    else:
        alphas = tuple(sorted(_roots_with_multiplicity(coeffs), key=lambda a: (a.real, a.imag)))

    data = CurveZetaData(q, g, tuple(coeffs), alphas)
    _validate_zeta_data(data)
    return data


def _validate_zeta_data(z: CurveZetaData, tol: float = 1e-9):
    if len(z.alphas) != 2 * z.g or len(z.numerator_coeffs) != 2 * z.g + 1:
        raise DomainError("inconsistent genus / coefficient / root counts")
    if z.g == 0:
        return
    # product of (1 - alpha t) must reproduce the integer coefficients
    poly = np.array([1.0 + 0j])
    for a in z.alphas:
        poly = np.convolve(poly, np.array([1.0, -a]))
    scale = max(1.0, max(abs(c) for c in z.numerator_coeffs))
    if max(abs(poly[j] - z.numerator_coeffs[j]) for j in range(2 * z.g + 1)) > tol * scale:
        raise NumericsError("roots do not reproduce the numerator coefficients")
    # closure of the root multiset under alpha -> q/alpha
    for a in z.alphas:
        target = z.q / a
        if min(abs(target - b) for b in z.alphas) > tol * max(1.0, abs(target)):
            raise NumericsError("root multiset not closed under alpha -> q/alpha")


# -- checks -------------------------------------------------------------------


@dataclass(frozen=True)
class RHReport:
    q: int
    tol: float
    moduli: tuple[float, ...]
    deviations: tuple[float, ...]
    passed: bool


def weil_rh_check(z: CurveZetaData, tol: float = 1e-10) -> RHReport:
    """Check | |alpha_i| - sqrt(q) | <= tol for every inverse root."""
    sq = math.sqrt(z.q)
    moduli = tuple(abs(a) for a in z.alphas)
    devs = tuple(abs(m - sq) for m in moduli)
    return RHReport(z.q, tol, moduli, devs, all(d <= tol for d in devs))


@dataclass(frozen=True)
class FunctionalEquationReport:
    sign: int
    chi: int
    residuals: tuple[float, ...]
    max_residual: float
    tol: float
    passed: bool


def functional_equation_check(
    z: CurveZetaData, samples, tol: float = 1e-9
) -> FunctionalEquationReport:
    """Check Z(1/(q t)) = sign * q^(chi/2) * t^chi * Z(t) on the samples.

    The sign is solved from the first sample, rounded to +-1, then held fixed.
    """
    samples = [complex(t) for t in samples]
    if not samples:
        raise DomainError("need at least one sample")
    chi = z.chi
    sign = 0
    residuals = []
    scale_max = 0.0
    for t in samples:
        if min(abs(t), abs(t - 1.0), abs(t - 1.0 / z.q)) < 1e-9:
            raise PoleError(f"sample t = {t} hits a pole of the identity")
        lhs = z.zeta_at(1.0 / (z.q * t))
        rhs_core = z.q ** (chi / 2.0) * t ** chi * z.zeta_at(t)
        if sign == 0:
            raw = lhs / rhs_core
            sign = 1 if abs(raw - 1.0) <= abs(raw + 1.0) else -1
        residual = abs(lhs - sign * rhs_core)
        residuals.append(residual)
        scale_max = max(scale_max, abs(lhs))
    max_res = max(residuals)
    return FunctionalEquationReport(
        sign, chi, tuple(residuals), max_res, tol, max_res <= tol * max(1.0, scale_max)
    )


def lefschetz_count(z: CurveZetaData, m: int, imag_tol: float = 1e-9) -> float:
    """1 - sum(alpha_i^m) + q^m; agrees with |X(F_{q^m})| for honest data."""
    if m < 1:
        raise DomainError("m must be >= 1")
    val = 1.0 + z.q ** m - sum(a ** m for a in z.alphas)
    if abs(val.imag) > imag_tol * max(1.0, abs(val.real)):
        raise NumericsError(f"Lefschetz count has imaginary residue {val.imag}")
    return val.real


@dataclass(frozen=True)
class AsymptoticReport:
    g: int
    deviations: tuple[float, ...]
    bounds: tuple[float, ...]
    passed: bool


def asymptotic_check(z: CurveZetaData, counts: PointCounts, slack: float = 1e-9) -> AsymptoticReport:
    """Check |N_n - q^n - 1| <= 2g * q^(n/2) (+ slack) for every count."""
    devs, bounds = [], []
    for n in range(1, len(counts) + 1):
        devs.append(abs(counts.n(n) - z.q ** n - 1))
        bounds.append(2 * z.g * z.q ** (n / 2.0) + slack)
    passed = all(d <= b for d, b in zip(devs, bounds))
    return AsymptoticReport(z.g, tuple(devs), tuple(bounds), passed)


# -- pipeline -----------------------------------------------------------------


@dataclass(frozen=True)
class CurveReport:
    q: int
    degree: int
    genus: int
    counts: PointCounts
    zeta: CurveZetaData
    rh: RHReport
    functional_equation: FunctionalEquationReport
    lefschetz: tuple[float, ...]
    lefschetz_matches: bool
    asymptotic: AsymptoticReport

    @property
    def passed(self) -> bool:
        return (
            self.rh.passed
            and self.functional_equation.passed
            and self.lefschetz_matches
            and self.asymptotic.passed
        )


def curve_report(
    curve: PlaneCurve,
    genus: int | None = None,
    max_m: int = 3,
    budget: int = ENUMERATION_BUDGET,
    rh_tol: float = 1e-10,
    fe_tol: float = 1e-9,
) -> CurveReport:
    """Count, rebuild the zeta data, and run every check on one curve."""
    if not is_smooth(curve, budget):
        raise DomainError("curve is singular; only smooth curves are supported")
    if genus is None:
        genus = genus_smooth_plane(curve.degree)
    max_m = max(max_m, 2 * genus)
    counts = count_points_range(curve, max_m, budget)
    z = zeta_from_counts(counts, genus)
    rh = weil_rh_check(z, rh_tol)
    fe = functional_equation_check(z, [0.1 + 0.0j, 0.2 + 0.1j, -0.3 + 0.05j], fe_tol)
    lef = tuple(lefschetz_count(z, m) for m in range(1, len(counts) + 1))
    matches = all(abs(lef[m - 1] - counts.n(m)) <= 1e-6 for m in range(1, len(counts) + 1))
    asym = asymptotic_check(z, counts)
    return CurveReport(curve.q, curve.degree, genus, counts, z, rh, fe, lef, matches, asym)
