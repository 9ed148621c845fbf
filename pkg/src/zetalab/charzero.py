"""The characteristic-0 side of the explicit formula: smooth rapidly-decaying
test functions on the positive reals, their Mellin transforms by adaptive
Gauss-Legendre quadrature on the log axis, multiplicative convolution, the
zero-sum functional W, an independent contour-integral oracle for W through
the argument principle, and the positivity quadratic form.

Test functions carry a numpy-vectorized evaluator and a log-axis support
interval outside which |f| <= 1e-16; the catalog provides compact bumps
(exactly supported) and log-Gaussians (rapid decay, closed-form transforms
for oracle use).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import (
    ContourError,
    DomainError,
    NumericsError,
    ParseError,
    QuadratureError,
    TruncationWarning,
)
from .quadrature import adaptive_line_integral, composite_gl, kahan_sum, refine_until_stable
from .special import log_deriv_completed_zeta
from .zeros import ZeroTable, default_zero_table

_DECAY_BOUND = 1e-16


@dataclass(frozen=True)
class TestFunction:
    """Smooth f: (0, inf) -> R with |f(e^t)| <= 1e-16 outside log_support."""

    evaluator: Callable
    log_support: tuple[float, float]
    smoothness_class: str
    name: str = ""
    mellin_closed: Callable[[complex], complex] | None = field(default=None, compare=False)

    def __post_init__(self):
        a, b = self.log_support
        if not a < b:
            raise DomainError("log_support must be a nonempty interval")
        for t in (a, b):
            val = np.asarray(self.evaluator(math.exp(t))).reshape(-1)[0]
            if abs(float(val)) > _DECAY_BOUND:
                raise DomainError(f"decay bound violated at log-axis point {t}")

    def __call__(self, x):
        return self.evaluator(x)

    def on_log_axis(self, t):
        return self.evaluator(np.exp(np.asarray(t, dtype=float)))


# -- catalog -------------------------------------------------------------------


def _log_gaussian_support(width: float) -> float:
    # |f(e^t) e^{2|t|}| <= 1e-20 at the boundary keeps weighted tails harmless
    return width * width + width * math.sqrt(width * width + 46.0)


def log_gaussian(width: float = 1.0) -> TestFunction:
    """f(x) = exp(-(log x / width)^2); Mellin transform width*sqrt(pi)*exp(width^2 s^2/4)."""
    if width <= 0:
        raise DomainError("width must be positive")
    w2 = width * width

    def evaluator(x):
        t = np.log(np.asarray(x, dtype=float))
        return np.exp(-(t * t) / w2)

    bound = _log_gaussian_support(width)
    return TestFunction(
        evaluator,
        (-bound, bound),
        "log-gaussian",
        name=f"log-gaussian width={width:g}",
        mellin_closed=lambda s: width * math.sqrt(math.pi) * np.exp(w2 * np.asarray(s) ** 2 / 4.0),
    )


def log_gaussian_symmetric(width: float = 1.0) -> TestFunction:
    """x^(-1/2) exp(-(log x / width)^2): a fixed point of the involution."""
    if width <= 0:
        raise DomainError("width must be positive")
    w2 = width * width

    def evaluator(x):
        t = np.log(np.asarray(x, dtype=float))
        return np.exp(-(t * t) / w2 - 0.5 * t)

    bound = _log_gaussian_support(width) + 1.0
    return TestFunction(
        evaluator,
        (-bound, bound),
        "log-gaussian",
        name=f"log-gaussian-symmetric width={width:g}",
        mellin_closed=lambda s: width * math.sqrt(math.pi) * np.exp(w2 * (np.asarray(s) - 0.5) ** 2 / 4.0),
    )


def bump(center: float = 0.0, halfwidth: float = 1.0) -> TestFunction:
    """exp(-1/(1-u^2)) with u = (log x - center)/halfwidth inside |u| < 1, else 0."""
    if halfwidth <= 0:
        raise DomainError("halfwidth must be positive")

    def evaluator(x):
        t = np.log(np.asarray(x, dtype=float))
        u = (t - center) / halfwidth
        out = np.zeros_like(u)
        inside = np.abs(u) < 1.0
        v = 1.0 - u[inside] ** 2
        out[inside] = np.exp(-1.0 / v)
        return out

    return TestFunction(
        evaluator,
        (center - halfwidth, center + halfwidth),
        "compact-bump",
        name=f"bump center={center:g} halfwidth={halfwidth:g}",
    )


_CATALOG = {
    "log-gaussian": (log_gaussian, ("width",)),
    "log-gaussian-symmetric": (log_gaussian_symmetric, ("width",)),
    "bump": (bump, ("center", "halfwidth")),
}


def catalog_names() -> tuple[str, ...]:
    return tuple(_CATALOG)


def test_function_from_spec(spec: str) -> TestFunction:
    """Parse a catalog spec like "log-gaussian width=0.5" or "bump center=0 halfwidth=1"."""
    parts = spec.split()
    if not parts:
        raise ParseError("empty test-function spec")
    name = parts[0]
    if name not in _CATALOG:
        raise ParseError(f"unknown test function {name!r}; choices: {', '.join(_CATALOG)}")
    ctor, allowed = _CATALOG[name]
    kwargs = {}
    for item in parts[1:]:
        if "=" not in item:
            raise ParseError(f"bad parameter {item!r} (expected key=value)")
        key, _, raw = item.partition("=")
        if key not in allowed:
            raise ParseError(f"unknown parameter {key!r} for {name} (allowed: {', '.join(allowed)})")
        try:
            kwargs[key] = float(raw)
        except ValueError:
            raise ParseError(f"bad numeric value {raw!r} for {key}") from None
    return ctor(**kwargs)


def default_suite() -> tuple[TestFunction, ...]:
    """Five catalog functions used by the verification suite."""
    return (
        log_gaussian(0.2),
        log_gaussian(0.35),
        log_gaussian_symmetric(0.25),
        bump(0.0, 1.0),
        bump(0.5, 1.5),
    )


# -- Mellin transform ----------------------------------------------------------


def mellin0_batch(f: TestFunction, svals, target: float = 1e-10) -> np.ndarray:
    """Mellin transform integral f(x) x^s dx/x at every s in svals.

    The integral is taken on the log axis over f's support with a composite
    Gauss-Legendre grid shared by the whole batch; the grid is doubled until
    two levels agree within target (max-abs over the batch).
    """
    svals = np.atleast_1d(np.asarray(svals, dtype=complex))
    a, b = f.log_support
    max_im = max(1.0, float(np.max(np.abs(svals.imag))))
    initial = max(8, int(math.ceil((b - a) * (0.5 + max_im / 5.0))))

    def level(panels):
        nodes, weights = composite_gl(a, b, panels)
        fv = f.on_log_axis(nodes)
        kernel = np.exp(nodes[:, None] * svals[None, :])
        return (weights * fv) @ kernel

    vals, _ = refine_until_stable(level, initial, target)
    return vals


def mellin0(f: TestFunction, s: complex, target: float = 1e-10) -> complex:
    return complex(mellin0_batch(f, [s], target)[0])


def involute0(f: TestFunction) -> TestFunction:
    """f*(x) = f(1/x)/x; Mellin(f*)(s) = Mellin(f)(1-s)."""

    def evaluator(x):
        x = np.asarray(x, dtype=float)
        return f.evaluator(1.0 / x) / x

    a, b = f.log_support
    closed = None
    if f.mellin_closed is not None:
        closed = lambda s: f.mellin_closed(1.0 - np.asarray(s))
    return TestFunction(
        evaluator,
        (-b, -a),
        f.smoothness_class,
        name=f"involute({f.name})",
        mellin_closed=closed,
    )


def convolve0(f: TestFunction, g: TestFunction, target: float = 1e-10) -> TestFunction:
    """Multiplicative convolution (f ⊛ g)(x) = integral f(y) g(x/y) dy/y.

    On the log axis this is additive convolution; the returned evaluator
    integrates over f's support on a grid frozen once two refinement levels
    agree at probe points within target.  Mellin transforms multiply.
    """
    af, bf = f.log_support
    ag, bg = g.log_support

    def make_evaluator(panels):
        nodes, weights = composite_gl(af, bf, panels)
        fv = f.on_log_axis(nodes) * weights

        def evaluator(x):
            t = np.log(np.asarray(x, dtype=float))
            scalar = t.ndim == 0
            t = np.atleast_1d(t)
            gv = g.on_log_axis(t[:, None] - nodes[None, :])
            out = gv @ fv
            return float(out[0]) if scalar else out

        return evaluator

    probes = np.exp(np.linspace(af + ag, bf + bg, 33))
    panels = max(8, int(math.ceil((bf - af) * 4)))
    coarse = make_evaluator(panels)(probes)
    for _ in range(12):
        fine = make_evaluator(panels * 2)(probes)
        if float(np.max(np.abs(fine - coarse))) <= target:
            break
        coarse = fine
        panels *= 2
    else:
        raise QuadratureError(f"convolution grid did not stabilize to {target}")
    evaluator = make_evaluator(panels * 2)

    closed = None
    if f.mellin_closed is not None and g.mellin_closed is not None:
        closed = lambda s: f.mellin_closed(s) * g.mellin_closed(s)
    return TestFunction(
        evaluator,
        (af + ag, bf + bg),
        "convolution",
        name=f"({f.name}) ⊛ ({g.name})",
        mellin_closed=closed,
    )


def linear_combination(terms) -> TestFunction:
    """a1*f1 + a2*f2 + ...; support hull, transforms combine linearly."""
    terms = [(float(c), f) for c, f in terms]
    if not terms:
        raise DomainError("need at least one term")

    def evaluator(x):
        return sum(c * f.evaluator(x) for c, f in terms)

    a = min(f.log_support[0] for _, f in terms)
    b = max(f.log_support[1] for _, f in terms)
    closed = None
    if all(f.mellin_closed is not None for _, f in terms):
        closed = lambda s: sum(c * f.mellin_closed(s) for c, f in terms)
    return TestFunction(
        evaluator, (a, b), "combination",
        name=" + ".join(f"{c:g}*({f.name})" for c, f in terms),
        mellin_closed=closed,
    )


# -- the explicit-formula functional and its oracle -----------------------------


def _real_part(value: complex, what: str, tol: float = 1e-7) -> float:
    value = complex(value)
    if abs(value.imag) > tol * max(1.0, abs(value.real)):
        raise NumericsError(f"{what} has imaginary residue {value.imag}")
    return value.real


@dataclass(frozen=True)
class WeilValue:
    value: float
    T: float
    zeros_used: int
    at0: float
    at1: float


def weil_functional(f: TestFunction, table: ZeroTable, T: float,
                    target: float = 1e-10) -> WeilValue:
    """W_T(f) = fhat(0) + fhat(1) - sum over zeros with |gamma| <= T of fhat(rho)."""
    if table.ordinates and T > table.max_ordinate:
        warnings.warn(
            f"cutoff T={T} exceeds the table's largest ordinate {table.max_ordinate}",
            TruncationWarning,
            stacklevel=2,
        )
    gammas = [g for g in table.ordinates if g <= T]
    mults = list(table.multiplicities[: len(gammas)])
    svals = [0.0 + 0.0j, 1.0 + 0.0j]
    for g in gammas:
        svals.append(complex(0.5, g))
        svals.append(complex(0.5, -g))
    hat = mellin0_batch(f, svals, target)
    at0 = _real_part(hat[0], "Mellin transform at 0")
    at1 = _real_part(hat[1], "Mellin transform at 1")
    pair_terms = [m * (hat[2 + 2 * i] + hat[3 + 2 * i]) for i, m in enumerate(mults)]
    zero_sum = _real_part(kahan_sum(pair_terms), "zero sum")
    return WeilValue(at0 + at1 - zero_sum, T, len(gammas), at0, at1)


def weil_contour_oracle(f: TestFunction, T: float, target: float = 1e-6,
                        guard: float = 0.1, table: ZeroTable | None = None) -> float:
    """-(1/2*pi*i) * contour integral of fhat(s) dlog of the completed zeta
    over the rectangle [-1, 2] x [-T, T], counterclockwise.

    By the argument principle this reproduces fhat(0) + fhat(1) minus the sum
    of fhat over zeros inside, i.e. the truncated W; the two routes check each
    other.  Raises ContourError when the horizontal edges come within `guard`
    of a tabulated zero ordinate.
    """
    if T <= 0.5:
        raise DomainError("T must exceed 0.5 so the poles at 0 and 1 are enclosed")
    known = table if table is not None else default_zero_table()
    if known.ordinates:
        nearest = min(abs(g - T) for g in known.ordinates)
        if nearest < guard:
            raise ContourError(f"contour at height {T} passes within {nearest:.4g} of a zero")
    if T > known.max_ordinate:
        warnings.warn("contour height beyond the guard table; near-zero edges undetected", stacklevel=2)

    def gbatch(svals):
        hat = mellin0_batch(f, svals, target=target / 100.0)
        ld = np.array([log_deriv_completed_zeta(complex(s)) for s in svals])
        return hat * ld

    corners = [
        complex(-1.0, -T),
        complex(2.0, -T),
        complex(2.0, T),
        complex(-1.0, T),
        complex(-1.0, -T),
    ]
    total = 0.0 + 0.0j
    for z0, z1 in zip(corners[:-1], corners[1:]):
        panels = max(8, int(abs(z1 - z0)))
        total += adaptive_line_integral(gbatch, z0, z1, target / 4.0, initial_panels=panels)
    value = -total / (2.0j * math.pi)
    return _real_part(value, "contour integral", tol=1e-5)


@dataclass(frozen=True)
class FundamentalInequality0Report:
    q_form: float              # truncated sum of fhat(rho) fhat(1-rho) over pairs
    lhs: float                 # fhat(0) fhat(1)
    w_convolution: float       # W_T(f ⊛ f*)
    slack: float               # lhs - w_convolution / 2
    identity_residual: float   # |2*slack - q_form|
    T: float
    zeros_used: int
    passed: bool


def fundamental_inequality0(f: TestFunction, table: ZeroTable, T: float,
                            target: float = 1e-10, q_tol: float = 1e-10,
                            identity_tol: float = 1e-5) -> FundamentalInequality0Report:
    """Positivity of Q_T(f) = sum over gamma <= T of ord * [fhat(rho) fhat(1-rho)
    + conjugate term], plus the product bound fhat(0) fhat(1) >= W(f ⊛ f*)/2 at
    matched truncation."""
    gammas = [g for g in table.ordinates if g <= T]
    mults = list(table.multiplicities[: len(gammas)])
    svals = [0.0 + 0.0j, 1.0 + 0.0j]
    for g in gammas:
        svals.append(complex(0.5, g))    # rho
        svals.append(complex(0.5, -g))   # 1 - rho on the line, and the conjugate zero
    hat = mellin0_batch(f, svals, target)
    terms = []
    for i, m in enumerate(mults):
        up, down = hat[2 + 2 * i], hat[3 + 2 * i]
        terms.append(m * (up * down + down * up))
    q_form = _real_part(kahan_sum(terms), "quadratic form")
    lhs = _real_part(hat[0], "Mellin at 0") * _real_part(hat[1], "Mellin at 1")
    conv = convolve0(f, involute0(f), target=max(target, 1e-10))
    w_conv = weil_functional(conv, table, T, target).value
    slack = lhs - 0.5 * w_conv
    identity_residual = abs(2.0 * slack - q_form)
    passed = bool(q_form >= -q_tol and identity_residual <= identity_tol * max(1.0, abs(q_form)))
    return FundamentalInequality0Report(
        q_form, lhs, w_conv, slack, identity_residual, T, len(gammas), passed
    )
