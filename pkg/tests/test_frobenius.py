"""The lattice calculus on p^Z and its explicit-formula identity.

The central check: geometric and spectral diagonal pairings agree for every
finite-support function against honestly counted curves.
"""

import cmath
import math
import random
from fractions import Fraction

import pytest

from zetalab import curves, frobenius
from zetalab.errors import LengthError, PrimeMismatchError
from zetalab.frobenius import FiniteSupportFn

E3 = curves.parse_curve("y^2*z - x^3 - x*z^2 mod 3")
E5 = curves.parse_curve("y^2*z - x^3 - x*z^2 - z^3 mod 5")


@pytest.fixture(scope="module")
def elliptic3():
    counts = curves.count_points_range(E3, 3)
    z = curves.zeta_from_counts(counts, 1)
    return counts, frobenius.spectrum_from_zeta(z)


@pytest.fixture(scope="module")
def elliptic5():
    counts = curves.count_points_range(E5, 3)
    z = curves.zeta_from_counts(counts, 1)
    return counts, frobenius.spectrum_from_zeta(z)


def random_fn(rng, p, max_support=3):
    vals = {}
    for n in range(-max_support, max_support + 1):
        if rng.random() < 0.6:
            vals[n] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    if not vals:
        vals[0] = Fraction(1)
    return FiniteSupportFn.from_map(p, vals)


def test_mellin_of_deltas():
    d0 = FiniteSupportFn.delta(3, 0)
    assert frobenius.mellin_fq(d0, 2.5 + 1j) == pytest.approx(1.0)
    d1 = FiniteSupportFn.delta(3, 1)
    s = 0.7 + 0.3j
    assert frobenius.mellin_fq(d1, s) == pytest.approx(cmath.exp(s * math.log(3)))
    f = FiniteSupportFn.from_map(3, {0: 1, 1: 2})
    assert frobenius.mellin_fq(f, 1.0) == pytest.approx(7.0)


def test_convolution_identities():
    p = 3
    da, db = FiniteSupportFn.delta(p, 2), FiniteSupportFn.delta(p, -1)
    assert frobenius.convolve(da, db).values == FiniteSupportFn.delta(p, 1).values
    f = FiniteSupportFn.from_map(p, {-1: Fraction(2, 3), 2: 5})
    assert frobenius.convolve(f, FiniteSupportFn.delta(p, 0)).values == f.values
    a = FiniteSupportFn.from_map(p, {0: 1, 1: 1})
    b = FiniteSupportFn.from_map(p, {0: 1, 1: -1})
    assert frobenius.convolve(a, b).values == FiniteSupportFn.from_map(p, {0: 1, 2: -1}).values


def test_convolution_prime_mismatch():
    with pytest.raises(PrimeMismatchError):
        frobenius.convolve(FiniteSupportFn.delta(3, 0), FiniteSupportFn.delta(5, 0))


def test_mellin_multiplicativity():
    rng = random.Random(2)
    for _ in range(20):
        f, g = random_fn(rng, 3), random_fn(rng, 3)
        s = complex(rng.uniform(-1, 2), rng.uniform(-3, 3))
        lhs = frobenius.mellin_fq(frobenius.convolve(f, g), s)
        rhs = frobenius.mellin_fq(f, s) * frobenius.mellin_fq(g, s)
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


def test_involution_values():
    g = FiniteSupportFn.delta(3, 1)
    gs = frobenius.involute(g)
    assert gs.values == ((-1, Fraction(3)),)
    s = 0.4 + 1.1j
    assert frobenius.mellin_fq(gs, s) == pytest.approx(3 ** (1 - s))
    d0 = FiniteSupportFn.delta(3, 0)
    assert frobenius.involute(d0).values == d0.values
    h = FiniteSupportFn.from_map(3, {1: 2, -2: 1})
    assert frobenius.involute(frobenius.involute(h)).values == h.values


def test_involution_mellin_reflection_random():
    rng = random.Random(17)
    for _ in range(50):
        g = random_fn(rng, 5)
        s = complex(rng.uniform(-1, 2), rng.uniform(-4, 4))
        lhs = frobenius.mellin_fq(frobenius.involute(g), s)
        rhs = frobenius.mellin_fq(g, 1 - s)
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


def test_mellin_periodicity():
    rng = random.Random(3)
    for _ in range(20):
        f = random_fn(rng, 7)
        s = complex(rng.uniform(-1, 2), rng.uniform(-3, 3))
        period = 2 * math.pi * 1j / math.log(7)
        lhs = frobenius.mellin_fq(f, s + period)
        rhs = frobenius.mellin_fq(f, s)
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


def test_spectral_pairing_examples(elliptic3):
    counts, spec = elliptic3
    d0 = FiniteSupportFn.delta(3, 0)
    assert frobenius.diag_pairing_spectral(d0, spec) == pytest.approx(0.0, abs=1e-12)
    d1 = FiniteSupportFn.delta(3, 1)
    assert frobenius.diag_pairing_spectral(d1, spec) == pytest.approx(4.0)
    dm1 = FiniteSupportFn.delta(3, -1)
    assert frobenius.diag_pairing_spectral(dm1, spec) == pytest.approx(4.0 / 3.0)


def test_geometric_pairing_examples(elliptic3):
    counts, _ = elliptic3
    assert frobenius.diag_pairing_geometric(FiniteSupportFn.delta(3, 1), counts, 1) == pytest.approx(4.0)
    assert frobenius.diag_pairing_geometric(FiniteSupportFn.delta(3, 0), counts, 1) == pytest.approx(0.0)
    assert frobenius.diag_pairing_geometric(FiniteSupportFn.delta(3, -2), counts, 1) == pytest.approx(16.0 / 9.0)


def test_geometric_pairing_needs_counts(elliptic3):
    counts, _ = elliptic3
    with pytest.raises(LengthError):
        frobenius.diag_pairing_geometric(FiniteSupportFn.delta(3, 4), counts, 1)


def test_explicit_formula_identity(elliptic3, elliptic5):
    rng = random.Random(99)
    for counts, spec in (elliptic3, elliptic5):
        for _ in range(60):
            f = random_fn(rng, spec.p)
            geo = frobenius.diag_pairing_geometric(f, counts, spec.genus)
            spectral = frobenius.diag_pairing_spectral(f, spec)
            assert abs(geo - spectral) <= 1e-9 * max(1.0, abs(geo))


def test_pairing_examples(elliptic3):
    _, spec = elliptic3
    d0 = FiniteSupportFn.delta(3, 0)
    assert frobenius.pairing(d0, d0, spec) == pytest.approx(0.0, abs=1e-12)
    d1 = FiniteSupportFn.delta(3, 1)
    # (d1)* = 3 d_(-1), so d1 * (d1)* = 3 d_0 and the pairing is 3 (2 - 2g) = 0
    assert frobenius.pairing(d1, d1, spec) == pytest.approx(0.0, abs=1e-12)


def test_pairing_symmetry(elliptic5):
    _, spec = elliptic5
    rng = random.Random(41)
    for _ in range(25):
        f, g = random_fn(rng, 5), random_fn(rng, 5)
        assert frobenius.pairing(f, g, spec) == pytest.approx(frobenius.pairing(g, f, spec), abs=1e-9)


def test_fundamental_inequality_delta0(elliptic3):
    _, spec = elliptic3
    rep = frobenius.fundamental_inequality_check(FiniteSupportFn.delta(3, 0), spec)
    assert rep.passed
    assert rep.slack == pytest.approx(spec.genus)
    assert rep.q_form == pytest.approx(2 * spec.genus)


def test_fundamental_inequality_delta1(elliptic3):
    _, spec = elliptic3
    rep = frobenius.fundamental_inequality_check(FiniteSupportFn.delta(3, 1), spec)
    assert rep.passed
    assert rep.lhs == pytest.approx(3.0)
    assert rep.rhs == pytest.approx(0.0, abs=1e-12)
    assert rep.q_form == pytest.approx(6.0)


def test_fundamental_inequality_random(elliptic3, elliptic5):
    rng = random.Random(1234)
    for _, spec in (elliptic3, elliptic5):
        for _ in range(50):
            rep = frobenius.fundamental_inequality_check(random_fn(rng, spec.p), spec)
            assert rep.passed
            assert rep.slack >= -1e-9
            assert rep.q_form >= -1e-9


def test_spectrum_requires_prime_base():
    data = curves.zeta_from_counts(curves.PointCounts(4, (5, 17)), 0)
    with pytest.raises(Exception):
        frobenius.spectrum_from_zeta(data)


def test_principal_zeros_invert_eigenvalues(elliptic3, elliptic5):
    for _, spec in (elliptic3, elliptic5):
        for s_i, alpha in zip(spec.principal_zeros, spec.alphas):
            assert abs(spec.p ** s_i - alpha) <= 1e-10 * abs(alpha)
            assert s_i.real == pytest.approx(0.5, abs=1e-10)


@pytest.mark.filterwarnings("ignore:smoothness verified")
def test_explicit_formula_genus_three():
    quartic = curves.parse_curve("x^4 + y^4 + z^4 mod 3")
    rep = curves.curve_report(quartic, max_m=6, budget=10 ** 7)
    spec = frobenius.spectrum_from_zeta(rep.zeta)
    assert spec.genus == 3
    rng = random.Random(64)
    for _ in range(40):
        f = random_fn(rng, 3)
        geo = frobenius.diag_pairing_geometric(f, rep.counts, 3)
        spectral = frobenius.diag_pairing_spectral(f, spec)
        assert abs(geo - spectral) <= 1e-9 * max(1.0, abs(geo))
        fi = frobenius.fundamental_inequality_check(f, spec)
        assert fi.passed


def test_json_wire_format():
    f = frobenius.finite_support_from_json(3, {"1": "1/2", "-2": 3})
    assert f.value(1) == Fraction(1, 2)
    assert f.value(-2) == 3
    with pytest.raises(ZeroDivisionError):
        frobenius.finite_support_from_json(3, {"1": "1/0"})
