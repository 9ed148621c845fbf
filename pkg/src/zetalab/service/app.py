"""The zetalab FastAPI service: stateless endpoints over the core library.

Check failures are ordinary 200 responses with passed=false; malformed or
out-of-domain inputs map to 400 with an error_kind of "input", enumeration
overruns to 400 with "budget", and internal numerical contradictions to 500.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__, absolute, categories, charzero, curves, frobenius, zeros
from ..errors import BranchError, BudgetError, NumericsError, QuadratureError, ZetalabError
from . import schemas as sch


def _pair(z: complex) -> tuple[float, float]:
    z = complex(z)
    return (z.real, z.imag)


def _unpair(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    return complex(v[0], v[1])


def _counting_function(spec) -> absolute.ExponentSum:
    if isinstance(spec, str):
        return absolute.exponent_sum_from_json(spec)
    return absolute.ExponentSum.from_terms([(t.alpha, t.m) for t in spec])


def _zero_table(content: str | None) -> zeros.ZeroTable:
    if content is None:
        return zeros.default_zero_table()
    return zeros.parse_zero_table(content, source_id="request")


def _curve_pipeline(text: str, genus: int | None, max_m: int,
                    rh_tol: float = 1e-10, fe_tol: float = 1e-9) -> curves.CurveReport:
    curve = curves.parse_curve(text)
    return curves.curve_report(curve, genus=genus, max_m=max_m, rh_tol=rh_tol, fe_tol=fe_tol)


def create_app() -> FastAPI:
    app = FastAPI(
        title="zetalab",
        version=__version__,
        description="Zeta-function verification service: curves over finite fields, "
        "explicit formulas, absolute zeta functions, and category zeta functions.",
    )

    @app.exception_handler(ZetalabError)
    async def _zetalab_error(_: Request, exc: ZetalabError):
        if isinstance(exc, BudgetError):
            kind, status = "budget", 400
        elif isinstance(exc, (NumericsError, QuadratureError)):
            kind, status = "numerics", 500
        else:
            kind, status = "input", 400
        payload = sch.ErrorPayload(error_kind=kind, message=str(exc))
        return JSONResponse(status_code=status, content=payload.model_dump())

    @app.exception_handler(ZeroDivisionError)
    async def _division_error(_: Request, exc: ZeroDivisionError):
        payload = sch.ErrorPayload(error_kind="input", message=f"division by zero: {exc}")
        return JSONResponse(status_code=400, content=payload.model_dump())

    @app.get("/health", response_model=sch.HealthResponse)
    def health():
        return sch.HealthResponse(status="ok", version=__version__)

    @app.get("/catalog", response_model=sch.CatalogResponse)
    def catalog():
        return sch.CatalogResponse(
            counting_functions=sorted(absolute.CATALOG),
            test_functions=list(charzero.catalog_names()),
        )

    @app.post("/curve/zeta", response_model=sch.CurveZetaResponse)
    def curve_zeta(req: sch.CurveZetaRequest):
        rep = _curve_pipeline(req.curve, req.genus, req.max_m, req.rh_tol, req.fe_tol)
        return sch.CurveZetaResponse(
            q=rep.q,
            degree=rep.degree,
            genus=rep.genus,
            counts=list(rep.counts.counts),
            numerator_coeffs=list(rep.zeta.numerator_coeffs),
            alphas=[_pair(a) for a in rep.zeta.alphas],
            alpha_moduli=list(rep.rh.moduli),
            rh=sch.RHResult(
                moduli=list(rep.rh.moduli),
                deviations=list(rep.rh.deviations),
                passed=rep.rh.passed,
            ),
            functional_equation=sch.FunctionalEquationResult(
                sign=rep.functional_equation.sign,
                chi=rep.functional_equation.chi,
                max_residual=rep.functional_equation.max_residual,
                passed=rep.functional_equation.passed,
            ),
            lefschetz=sch.LefschetzResult(
                values=list(rep.lefschetz), matches_counts=rep.lefschetz_matches
            ),
            asymptotic=sch.AsymptoticResult(
                deviations=list(rep.asymptotic.deviations),
                bounds=list(rep.asymptotic.bounds),
                passed=rep.asymptotic.passed,
            ),
            passed=rep.passed,
        )

    @app.post("/explicit-formula/function-field", response_model=sch.FunctionFieldExplicitResponse)
    def function_field_explicit(req: sch.FunctionFieldExplicitRequest):
        if (req.f is None) == (req.random_suite is None):
            raise ZetalabError("provide exactly one of f and random_suite")
        if req.f is not None:
            support = max((abs(int(k)) for k in req.f), default=0)
        else:
            support = req.random_suite.support
        rep = _curve_pipeline(req.curve, req.genus, max_m=max(3, support))
        spec = frobenius.spectrum_from_zeta(rep.zeta)

        def run_one(fn: frobenius.FiniteSupportFn):
            geo = frobenius.diag_pairing_geometric(fn, rep.counts, spec.genus)
            spectral = frobenius.diag_pairing_spectral(fn, spec)
            fi = frobenius.fundamental_inequality_check(fn, spec, tol=req.tol)
            return geo, spectral, fi

        if req.f is not None:
            fn = frobenius.finite_support_from_json(spec.p, req.f)
            geo, spectral, fi = run_one(fn)
            residual = abs(geo - spectral)
            passed = residual <= req.tol * max(1.0, abs(geo)) and fi.passed
            return sch.FunctionFieldExplicitResponse(
                geometric=geo,
                spectral=spectral,
                residual=residual,
                fundamental_inequality=sch.FunctionFieldInequalityResult(
                    lhs=fi.lhs,
                    rhs=fi.rhs,
                    slack=fi.slack,
                    q_form=fi.q_form,
                    identity_residual=fi.identity_residual,
                    passed=fi.passed,
                ),
                passed=passed,
            )

        rng = random.Random(req.random_suite.seed)
        max_res, min_slack, min_q = 0.0, float("inf"), float("inf")
        for _ in range(req.random_suite.count):
            vals = {}
            for n in range(-req.random_suite.support, req.random_suite.support + 1):
                if rng.random() < 0.6:
                    vals[n] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            if not vals:
                vals[0] = Fraction(1)
            geo, spectral, fi = run_one(frobenius.FiniteSupportFn.from_map(spec.p, vals))
            max_res = max(max_res, abs(geo - spectral))
            min_slack = min(min_slack, fi.slack)
            min_q = min(min_q, fi.q_form)
        passed = max_res <= req.tol and min_slack >= -req.tol and min_q >= -req.tol
        return sch.FunctionFieldExplicitResponse(
            suite=sch.SuiteSummary(
                count=req.random_suite.count,
                seed=req.random_suite.seed,
                max_residual=max_res,
                min_slack=min_slack,
                min_q_form=min_q,
                passed=passed,
            ),
            passed=passed,
        )

    @app.post("/explicit-formula/char0", response_model=sch.Char0ExplicitResponse)
    def char0_explicit(req: sch.Char0ExplicitRequest):
        table = _zero_table(req.zeros_content)
        f = charzero.test_function_from_spec(req.test_function)
        w = charzero.weil_functional(f, table, req.T, target=req.target)
        contour = charzero.weil_contour_oracle(
            f, req.T, target=req.contour_target, table=table
        )
        residual = abs(w.value - contour)
        fi_result = None
        passed = residual <= req.tol
        if req.include_fundamental:
            fi = charzero.fundamental_inequality0(f, table, req.T, target=req.target)
            fi_result = sch.Char0InequalityResult(
                q_form=fi.q_form,
                lhs=fi.lhs,
                w_convolution=fi.w_convolution,
                slack=fi.slack,
                identity_residual=fi.identity_residual,
                passed=fi.passed,
            )
            passed = passed and fi.passed
        return sch.Char0ExplicitResponse(
            zero_sum=w.value,
            contour=contour,
            residual=residual,
            T=req.T,
            zeros_used=w.zeros_used,
            fundamental_inequality=fi_result,
            passed=passed,
        )

    @app.post("/abszeta/closed", response_model=sch.AbsClosedResponse)
    def abszeta_closed(req: sch.AbsClosedRequest):
        N = _counting_function(req.counting_function)
        w = _unpair(req.w)
        s = _unpair(req.s)
        z = absolute.zN_closed(N, w, s)
        zeta = absolute.zetaN_closed(N, s)
        try:
            via = absolute.zetaN_via_wderiv(N, s)
            via_pair, residual = _pair(via), abs(via - zeta)
        except BranchError:
            via_pair, residual = None, None
        return sch.AbsClosedResponse(
            z_value=_pair(z),
            zeta_value=_pair(zeta),
            zeta_via_wderiv=via_pair,
            normalization_residual=residual,
        )

    @app.post("/abszeta/integral", response_model=sch.AbsIntegralResponse)
    def abszeta_integral(req: sch.AbsIntegralRequest):
        N = _counting_function(req.counting_function)
        oracle = absolute.zN_integral_oracle(N, req.w, req.s, target=req.target)
        closed = absolute.zN_closed(N, req.w, req.s).real
        err = abs(oracle - closed)
        return sch.AbsIntegralResponse(
            oracle=oracle, closed=closed, abs_error=err,
            passed=bool(err <= 1e-6 * max(1.0, abs(closed))),
        )

    @app.post("/abszeta/limit", response_model=sch.AbsLimitResponse)
    def abszeta_limit(req: sch.AbsLimitRequest):
        N = _counting_function(req.counting_function)
        rep = absolute.generating_limit(N, req.s, req.x_values)
        return sch.AbsLimitResponse(
            x_values=list(rep.x_values),
            values=list(rep.values),
            errors=list(rep.errors),
            closed_value=rep.closed_value,
            passed=rep.passed,
        )

    @app.post("/abszeta/cc-constant", response_model=sch.CCConstantResponse)
    def abszeta_cc_constant(req: sch.CCConstantRequest):
        table = _zero_table(req.zeros_content)
        bracket = absolute.cc_value_at_one(table, req.K)
        const = absolute.cc_closed_constant()
        finite_tail = None if bracket.tail_bound == float("inf") else bracket.tail_bound
        return sch.CCConstantResponse(
            partial_sum=bracket.partial_sum,
            tail_bound=finite_tail,
            closed_constant=const,
            bracket_contains=bracket.contains(const),
            bracket_width=finite_tail,
        )

    @app.post("/abszeta/cc-check", response_model=sch.CCCheckResponse)
    def abszeta_cc_check(req: sch.CCCheckRequest):
        table = _zero_table(req.zeros_content)
        dist = absolute.CountingDistribution(table, req.K, req.smoothing)
        rep = absolute.cc_integral_check(dist, req.s, req.U, tol=req.tol)
        return sch.CCCheckResponse(
            integral_side=rep.integral_side,
            log_deriv_side=rep.log_deriv_side,
            deviation=rep.deviation,
            tol=rep.tol,
            passed=rep.passed,
        )

    @app.post("/abszeta/plot-data", response_model=sch.PlotDataResponse)
    def abszeta_plot_data(req: sch.PlotDataRequest):
        xs = np.linspace(req.start, req.stop, req.points)
        if req.what == "zeta":
            if req.counting_function is None:
                raise ZetalabError("plot-data for zeta needs a counting function")
            N = _counting_function(req.counting_function)
            rows = [(float(x), absolute.zetaN_closed(N, float(x)).real) for x in xs]
            return sch.PlotDataResponse(columns=("s", "zeta"), rows=rows)
        table = zeros.default_zero_table()
        dist = absolute.CountingDistribution(table, req.K, req.smoothing)
        rows = [(float(x), absolute.cc_counting(dist, float(x))) for x in xs]
        return sch.PlotDataResponse(columns=("u", "count"), rows=rows)

    @app.post("/zeros/verify", response_model=sch.ZerosVerifyResponse)
    def zeros_verify(req: sch.ZerosVerifyRequest):
        table = _zero_table(req.zeros_content)
        failures = [g for g in table.ordinates if not zeros.verify_zero(g, tol=req.tol)]
        return sch.ZerosVerifyResponse(
            count=len(table), failures=failures, passed=not failures
        )

    @app.post("/zeros/info", response_model=sch.ZerosInfoResponse)
    def zeros_info(req: sch.ZerosVerifyRequest):
        table = _zero_table(req.zeros_content)
        return sch.ZerosInfoResponse(
            count=len(table),
            smallest=table.ordinates[0] if table.ordinates else None,
            largest=table.ordinates[-1] if table.ordinates else None,
            source=table.source_id,
        )

    @app.post("/category/zeta", response_model=sch.CategoryZetaResponse)
    def category_zeta(req: sch.CategoryZetaRequest):
        s = _unpair(req.s)
        if req.csv is not None:
            spec = categories.simples_from_csv(req.csv)
        else:
            spec = categories.abelian_group_simples(req.norm_bound)
        out = categories.category_zeta(spec, s, req.norm_bound)
        return sch.CategoryZetaResponse(
            value=_pair(out.value),
            factor_count=len(out.factors),
            norm_bound=out.norm_bound,
            tail_log_bound=out.tail_log_bound,
        )

    return app
