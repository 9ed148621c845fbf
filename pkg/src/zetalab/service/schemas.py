"""Request/response models for the zetalab service.

Complex numbers travel as [re, im] pairs; exact rationals as "num/den"
strings; zero tables as the raw table text so the service stays stateless.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

ComplexPair = tuple[float, float]


# -- curve pipeline --


class CurveZetaRequest(BaseModel):
    curve: str = Field(description='homogeneous polynomial, e.g. "y^2*z - x^3 - x*z^2 mod 3"')
    genus: int | None = Field(default=None, ge=0)
    max_m: int = Field(default=3, ge=1, le=12)
    rh_tol: float = Field(default=1e-10, gt=0)
    fe_tol: float = Field(default=1e-9, gt=0)


class RHResult(BaseModel):
    identity: str = "eigenvalue moduli |alpha| = sqrt(q)"
    moduli: list[float]
    deviations: list[float]
    passed: bool


class FunctionalEquationResult(BaseModel):
    identity: str = "Z(1/(q t)) = sign * q^(chi/2) * t^chi * Z(t)"
    sign: int
    chi: int
    max_residual: float
    passed: bool


class LefschetzResult(BaseModel):
    identity: str = "1 - sum(alpha^m) + q^m = |X(F_{q^m})|"
    values: list[float]
    matches_counts: bool


class AsymptoticResult(BaseModel):
    identity: str = "|N_n - q^n - 1| <= 2g q^(n/2)"
    deviations: list[float]
    bounds: list[float]
    passed: bool


class CurveZetaResponse(BaseModel):
    q: int
    degree: int
    genus: int
    counts: list[int]
    numerator_coeffs: list[int]
    alphas: list[ComplexPair]
    alpha_moduli: list[float]
    rh: RHResult
    functional_equation: FunctionalEquationResult
    lefschetz: LefschetzResult
    asymptotic: AsymptoticResult
    passed: bool


# -- explicit formula, function field --


class RandomSuiteSpec(BaseModel):
    count: int = Field(default=100, ge=1, le=10000)
    support: int = Field(default=3, ge=0, le=6)
    seed: int = 0


class FunctionFieldExplicitRequest(BaseModel):
    curve: str
    genus: int | None = Field(default=None, ge=0)
    f: dict[str, str | int | float] | None = Field(
        default=None, description='finite-support function, {"n": rational}'
    )
    random_suite: RandomSuiteSpec | None = None
    tol: float = Field(default=1e-9, gt=0)


class FunctionFieldExplicitResponse(BaseModel):
    identity: str = "geometric diagonal pairing = fhat(0) + fhat(1) - sum over curve zeros"
    geometric: float | None = None
    spectral: float | None = None
    residual: float | None = None
    fundamental_inequality: FunctionFieldInequalityResult | None = None
    suite: SuiteSummary | None = None
    passed: bool


class FunctionFieldInequalityResult(BaseModel):
    identity: str = "fhat(0) fhat(1) >= (1/2) <fhat(A), fhat(A)>"
    lhs: float
    rhs: float
    slack: float
    q_form: float
    identity_residual: float
    passed: bool


class SuiteSummary(BaseModel):
    count: int
    seed: int
    max_residual: float
    min_slack: float
    min_q_form: float
    passed: bool


# -- explicit formula, characteristic 0 --


class Char0ExplicitRequest(BaseModel):
    test_function: str = Field(description='catalog spec, e.g. "log-gaussian width=0.3"')
    T: float = Field(default=100.0, gt=0)
    target: float = Field(default=1e-10, ge=1e-14, le=1e-4)
    contour_target: float = Field(default=1e-6, ge=1e-12, le=1e-2)
    tol: float = Field(default=1e-4, gt=0)
    include_fundamental: bool = True
    zeros_content: str | None = None


class Char0InequalityResult(BaseModel):
    identity: str = "sum over zeros of fhat(rho) fhat(1-rho) >= 0"
    q_form: float
    lhs: float
    w_convolution: float
    slack: float
    identity_residual: float
    passed: bool


class Char0ExplicitResponse(BaseModel):
    identity: str = "zero-sum W(f) = contour integral of -fhat dlog(completed zeta)/(2 pi i)"
    zero_sum: float
    contour: float
    residual: float
    T: float
    zeros_used: int
    fundamental_inequality: Char0InequalityResult | None = None
    passed: bool


# -- absolute zeta --


class TermSpec(BaseModel):
    alpha: float
    m: int


class AbsClosedRequest(BaseModel):
    counting_function: str | list[TermSpec]
    w: ComplexPair | float = 1.0
    s: ComplexPair | float


class AbsClosedResponse(BaseModel):
    z_value: ComplexPair
    zeta_value: ComplexPair
    # null when s - alpha crosses the branch cut and the w-derivative
    # normalization has no principal value
    zeta_via_wderiv: ComplexPair | None
    normalization_residual: float | None


class AbsIntegralRequest(BaseModel):
    counting_function: str | list[TermSpec]
    w: float = Field(gt=0, le=1)
    s: float
    target: float = Field(default=1e-8, ge=1e-14, le=1e-4)


class AbsIntegralResponse(BaseModel):
    identity: str = "quadrature of the weighted integral = closed power sum"
    oracle: float
    closed: float
    abs_error: float
    passed: bool


class AbsLimitRequest(BaseModel):
    counting_function: str | list[TermSpec]
    s: float
    x_values: list[float] = Field(default=[1.1, 1.01, 1.001])


class AbsLimitResponse(BaseModel):
    identity: str = "Z(x, x^-s)(x-1)^chi -> zeta_N(s) as x -> 1"
    x_values: list[float]
    values: list[float]
    errors: list[float]
    closed_value: float
    passed: bool


class CCConstantRequest(BaseModel):
    K: int = Field(default=100, ge=0)
    zeros_content: str | None = None


class CCConstantResponse(BaseModel):
    identity: str = "sum of 2 Re(1/(rho+1)) = 1/2 + gamma/2 + log(4 pi)/2 - zeta'(-1)/zeta(-1)"
    partial_sum: float
    tail_bound: float | None
    closed_constant: float
    bracket_contains: bool
    bracket_width: float | None


class CCCheckRequest(BaseModel):
    s: float = 2.0
    U: float = 1000.0
    K: int = Field(default=100, ge=0)
    smoothing: float = Field(default=0.01, ge=0)
    tol: float | None = Field(default=None, gt=0)
    zeros_content: str | None = None


class CCCheckResponse(BaseModel):
    identity: str = "-integral of N_C(u) u^(-s-1) du = dlog of the completed zeta"
    integral_side: float
    log_deriv_side: float
    deviation: float
    tol: float
    passed: bool


class PlotDataRequest(BaseModel):
    what: Literal["zeta", "counting"]
    counting_function: str | list[TermSpec] | None = None
    start: float
    stop: float
    points: int = Field(default=101, ge=2, le=100001)
    K: int = Field(default=100, ge=0)
    smoothing: float = Field(default=0.05, ge=0)


class PlotDataResponse(BaseModel):
    columns: tuple[str, str]
    rows: list[tuple[float, float]]


# -- zeros --


class ZerosVerifyRequest(BaseModel):
    zeros_content: str | None = Field(default=None, description="table text; bundled table when omitted")
    tol: float = Field(default=1e-6, gt=0)


class ZerosVerifyResponse(BaseModel):
    count: int
    failures: list[float]
    passed: bool


class ZerosInfoResponse(BaseModel):
    count: int
    smallest: float | None
    largest: float | None
    source: str


# -- categories --


class CategoryZetaRequest(BaseModel):
    s: ComplexPair | float = 2.0
    norm_bound: int = Field(default=100, ge=2)
    csv: str | None = Field(default=None, description='"norm,count" lines; abelian-group simples when omitted')


class CategoryZetaResponse(BaseModel):
    identity: str = "Euler product over simple-object norms"
    value: ComplexPair
    factor_count: int
    norm_bound: int
    tail_log_bound: float | None


# -- misc --


class CatalogResponse(BaseModel):
    counting_functions: list[str]
    test_functions: list[str]


class HealthResponse(BaseModel):
    status: str
    version: str


class ErrorPayload(BaseModel):
    error_kind: Literal["input", "budget", "numerics", "internal"]
    message: str


FunctionFieldExplicitResponse.model_rebuild()
