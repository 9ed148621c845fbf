"""Special-function kernels against closed forms and an mpmath oracle."""

import cmath
import math
import random

import mpmath as mp
import pytest

from zetalab import special
from zetalab.errors import DomainError, PoleError

mp.mp.dps = 30


def _mpc(z):
    return mp.mpc(z.real, z.imag)


def test_gamma_closed_values():
    assert abs(special.gamma(1) - 1.0) <= 1e-14
    assert abs(special.gamma(0.5) - math.sqrt(math.pi)) <= 1e-12
    assert abs(special.gamma(5) - 24.0) <= 24.0 * 1e-12


def test_gamma_pole():
    for z in (0.0, -1.0, -7.0):
        with pytest.raises(PoleError):
            special.gamma(z)


def test_gamma_vs_mpmath_grid():
    rng = random.Random(11)
    for _ in range(60):
        z = complex(rng.uniform(-49, 49), rng.uniform(-49, 49))
        if abs(z) > 50 or (z.imag == 0 and z.real <= 0):
            continue
        ref = complex(mp.gamma(_mpc(z)))
        got = special.gamma(z)
        assert abs(got - ref) <= 1e-12 * abs(ref)


def test_gamma_reflection_identity():
    rng = random.Random(5)
    for _ in range(40):
        z = complex(rng.uniform(-8, 8), rng.uniform(-8, 8))
        if abs(z - round(z.real)) < 1e-2 and abs(z.imag) < 1e-2:
            continue
        lhs = special.gamma(z) * special.gamma(1 - z) * cmath.sin(math.pi * z) / math.pi
        assert abs(lhs - 1.0) <= 1e-10


def test_zeta_closed_values():
    assert abs(special.riemann_zeta(2) - math.pi ** 2 / 6) <= 1e-12
    # continuation values, frozen from a high-precision Euler-Maclaurin run
    assert abs(special.riemann_zeta(0) - (-0.5)) <= 1e-12
    assert abs(special.riemann_zeta(-1) - (-1.0 / 12.0)) <= 1e-12


def test_zeta_pole():
    with pytest.raises(PoleError):
        special.riemann_zeta(1.0)


def test_zeta_vs_mpmath_high_imag():
    rng = random.Random(23)
    for _ in range(40):
        s = complex(rng.uniform(-2, 3), rng.uniform(-200, 200))
        ref = complex(mp.zeta(_mpc(s)))
        got = special.riemann_zeta(s)
        assert abs(got - ref) <= 1e-10 * max(1.0, abs(ref))


def test_zeta_derivative_vs_mpmath():
    rng = random.Random(7)
    for _ in range(25):
        s = complex(rng.uniform(-2, 3), rng.uniform(-100, 100))
        _, zp = special.riemann_zeta_with_deriv(s)
        ref = complex(mp.zeta(_mpc(s), derivative=1))
        assert abs(zp - ref) <= 1e-9 * max(1.0, abs(ref))


def test_completed_zeta_at_two():
    assert abs(special.completed_zeta(2) - math.pi / 6) <= 1e-12


def test_completed_zeta_functional_equation_spot():
    s = 0.3 + 2j
    assert abs(special.completed_zeta(s) - special.completed_zeta(1 - s)) <= 1e-10


def test_completed_zeta_real_on_symmetry_point():
    assert abs(special.completed_zeta(0.5).imag) <= 1e-12


def test_completed_zeta_poles():
    for s in (0.0, 1.0):
        with pytest.raises(PoleError):
            special.completed_zeta(s)


def test_completed_zeta_functional_equation_strip():
    rng = random.Random(101)
    checked = 0
    while checked < 100:
        s = complex(rng.uniform(-2, 3), rng.uniform(-50, 50))
        if abs(s) < 1e-2 or abs(s - 1) < 1e-2:
            continue
        lhs = special.completed_zeta(s)
        rhs = special.completed_zeta(1 - s)
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))
        checked += 1


def test_hurwitz_reduces_to_riemann():
    for s in (3.0, 2.0 + 1.5j, -0.5 + 4j):
        assert abs(special.hurwitz_zeta(s, 1.0) - special.riemann_zeta(s)) <= 1e-10


def test_hurwitz_half_integer_and_shift():
    assert abs(special.hurwitz_zeta(2, 0.5) - math.pi ** 2 / 2) <= 1e-10
    assert abs(special.hurwitz_zeta(2, 2.0) - (special.riemann_zeta(2) - 1.0)) <= 1e-12


def test_hurwitz_domain_and_pole():
    with pytest.raises(DomainError):
        special.hurwitz_zeta(2, -1.0)
    with pytest.raises(PoleError):
        special.hurwitz_zeta(1.0, 0.5)


def test_hurwitz_vs_mpmath():
    rng = random.Random(31)
    for _ in range(25):
        s = complex(rng.uniform(1.2, 4), rng.uniform(-40, 40))
        r = rng.uniform(0.1, 3.0)
        ref = complex(mp.zeta(_mpc(s), mp.mpf(r)))
        assert abs(special.hurwitz_zeta(s, r) - ref) <= 1e-10 * max(1.0, abs(ref))


def test_log_deriv_completed_zeta_finite_difference():
    h = 1e-5
    fd = (cmath.log(special.completed_zeta(2 + h)) - cmath.log(special.completed_zeta(2 - h))) / (2 * h)
    assert abs(special.log_deriv_completed_zeta(2) - fd) <= 1e-7


def test_log_deriv_completed_zeta_real_on_axis():
    assert abs(special.log_deriv_completed_zeta(0.5).imag) <= 1e-10


def test_log_deriv_completed_zeta_termwise_at_ten():
    # independent evaluation of each factor
    ref = (-math.log(math.pi) / 2
           + complex(mp.digamma(5)) / 2
           + complex(mp.zeta(10, derivative=1)) / complex(mp.zeta(10)))
    assert abs(special.log_deriv_completed_zeta(10) - ref) <= 1e-10 * abs(ref)


def test_log_deriv_pole_guard_near_zero():
    with pytest.raises(PoleError):
        special.log_deriv_completed_zeta(complex(0.5, 14.134725141734694))


def test_euler_gamma_vs_gamma_derivative():
    h = 1e-6
    # gamma'(1) via central difference equals -euler_gamma
    d = (special.gamma(1 + h).real - special.gamma(1 - h).real) / (2 * h)
    assert abs(special.CONSTANTS.euler_gamma - (-d)) <= 1e-8


def test_constants_vs_mpmath():
    assert abs(special.CONSTANTS.euler_gamma - float(mp.euler)) <= 1e-15
    assert abs(special.CONSTANTS.log_4pi_half - float(mp.log(4 * mp.pi) / 2)) <= 1e-15
    ref = float(mp.zeta(-1, derivative=1) / mp.zeta(-1))
    assert abs(special.CONSTANTS.zeta_prime_ratio_at_minus1 - ref) <= 1e-14


def test_zeta_prime_ratio_reproducible_in_repo():
    z, zp = special.riemann_zeta_with_deriv(-1)
    assert abs(zp / z - special.CONSTANTS.zeta_prime_ratio_at_minus1) <= 1e-10
