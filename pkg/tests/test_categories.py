"""Category zeta: truncated Euler products over simple-object norms."""

import cmath
import math

import pytest

from zetalab import categories as cat
from zetalab.errors import DomainError, ParseError


def test_empty_spec_gives_one():
    spec = cat.SimpleObjectSpec(())
    assert cat.category_zeta(spec, 2.0, 10).value == 1.0


def test_abelian_simples_small_bounds():
    assert [n for n, _ in cat.abelian_group_simples(10).items] == [2, 3, 5, 7]
    assert [n for n, _ in cat.abelian_group_simples(2).items] == [2]


def test_abelian_simples_prime_count():
    assert len(cat.abelian_group_simples(10 ** 4).items) == 1229


def test_four_factor_product():
    spec = cat.abelian_group_simples(10)
    got = cat.category_zeta(spec, 2.0, 10).value
    want = (4 / 3) * (9 / 8) * (25 / 24) * (49 / 48)
    assert got == pytest.approx(want, abs=1e-12)
    assert got == pytest.approx(1.59505, abs=1e-5)


def test_truncated_product_approaches_zeta2():
    spec = cat.abelian_group_simples(10 ** 4)
    out = cat.category_zeta(spec, 2.0, 10 ** 4)
    assert abs(out.value - math.pi ** 2 / 6) <= 2e-4
    assert out.tail_log_bound is not None
    assert abs(cmath.log(math.pi ** 2 / 6) - cmath.log(out.value)) <= out.tail_log_bound


def test_factor_list_bit_identical_to_euler_product():
    spec = cat.abelian_group_simples(1000)
    out = cat.category_zeta(spec, 2.0, 1000)
    independent = [1.0 / (1.0 - complex(p) ** (-2.0)) for p in cat.sieve_primes(1000)]
    assert len(out.factors) == len(independent)
    assert all(a == b for a, b in zip(out.factors, independent))


def test_monotone_truncation():
    spec = cat.abelian_group_simples(500)
    vals = [cat.category_zeta(spec, 1.5, b).value.real for b in (10, 50, 200, 500)]
    assert all(v2 > v1 for v1, v2 in zip(vals, vals[1:]))


def test_log_linearity():
    spec = cat.SimpleObjectSpec(((2, 1), (3, 2), (5, 1)))
    s = 1.7 + 0.4j
    out = cat.category_zeta(spec, s, 10)
    log_sum = sum(count * -cmath.log(1 - norm ** (-s)) for norm, count in spec.items)
    assert abs(cmath.log(out.value) - log_sum) <= 1e-12


def test_class_count_repeats_factor():
    spec = cat.SimpleObjectSpec(((2, 3),))
    out = cat.category_zeta(spec, 2.0, 5)
    assert len(out.factors) == 3
    assert out.value == pytest.approx((4 / 3) ** 3)


def test_norm_below_two_rejected():
    with pytest.raises(DomainError):
        cat.SimpleObjectSpec(((1, 1),))
    with pytest.raises(DomainError):
        cat.SimpleObjectSpec(((5, 1), (3, 1)))  # decreasing


def test_csv_parsing():
    spec = cat.simples_from_csv("norm,count\n2,1\n3,2\n")
    assert spec.items == ((2, 1), (3, 2))
    with pytest.raises(ParseError) as exc:
        cat.simples_from_csv("2,1\nbogus\n")
    assert exc.value.line == 2
