"""Finite-field engine sanity: table arithmetic, extensions, embeddings."""

import numpy as np
import pytest

from zetalab import gf
from zetalab.errors import DomainError


def test_prime_field_arithmetic():
    F = gf.field(7)
    assert F.add(5, 4) == 2
    assert F.mul(3, 5) == 1
    assert F.inv(3) == 5
    assert F.pow(3, 6) == 1


def test_every_nonzero_element_invertible():
    for p, k in [(2, 1), (3, 2), (5, 1), (2, 4)]:
        F = gf.field(p, k)
        for a in range(1, F.order):
            assert F.mul(a, F.inv(a)) == 1


def test_field_axioms_sampled():
    F = gf.field(3, 3)
    rng = np.random.default_rng(4)
    idx = rng.integers(0, F.order, size=(40, 3))
    for a, b, c in idx:
        a, b, c = int(a), int(b), int(c)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(a, b) == F.mul(b, a)
        assert F.add(a, F.neg(a)) == 0


def test_frobenius_fixes_prime_subfield():
    F = gf.field(5, 2)
    for c in range(5):
        assert F.pow(c, 5) == c


def test_vec_ops_match_scalar():
    F = gf.field(2, 3)
    a = F.elements()
    b = np.roll(a, 3)
    mv = F.mul_vec(a, b)
    av = F.add_vec(a, b)
    for i in range(F.order):
        assert int(mv[i]) == F.mul(int(a[i]), int(b[i]))
        assert int(av[i]) == F.add(int(a[i]), int(b[i]))
    p3 = F.pow_vec(a, 3)
    for i in range(F.order):
        assert int(p3[i]) == F.pow(int(a[i]), 3)


def test_modulus_is_deterministic():
    assert gf.GF(2, 3).modulus == gf.GF(2, 3).modulus
    assert gf.find_irreducible(2, 2) == (1, 1, 1)  # x^2 + x + 1


def test_irreducible_modulus_validated():
    with pytest.raises(DomainError):
        gf.GF(2, 2, modulus=(0, 0, 1))  # x^2 is reducible


def test_embedding_respects_arithmetic():
    base = gf.field(3, 2)
    ext = gf.field(3, 4)
    root = gf.embedding_root(base, ext)
    for a in range(base.order):
        for b in (1, 2, 5, 7):
            ia = gf.embed(base, ext, a, root)
            ib = gf.embed(base, ext, b, root)
            assert gf.embed(base, ext, base.mul(a, b), root) == ext.mul(ia, ib)
            assert gf.embed(base, ext, base.add(a, b), root) == ext.add(ia, ib)


def test_fq_element_wrapper():
    F = gf.field(3)
    a = gf.FqElement(F, 2)
    b = gf.FqElement(F, 2)
    assert (a * b).index == 1
    assert (a + b).index == 1
    assert (-a).index == 1
    assert (a ** 2).index == 1
    assert a.inverse().index == 2
    with pytest.raises(DomainError):
        gf.FqElement(F, 5)


def test_nonprime_p_rejected():
    with pytest.raises(DomainError):
        gf.GF(6)
