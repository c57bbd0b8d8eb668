import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import primerange

from model.exceptions import DivisionByZero, NonResidue, ParameterError, PreconditionError
from model.fields import (
    FqElement,
    fq_inv,
    fq_pow,
    frobenius,
    golden_root,
    is_admissible,
    legendre,
    omega_root,
    require_admissible,
    sqrt_mod_p,
)

from conftest import ACCEPTANCE_PRIMES, REJECTED_PRIMES

TRIALS = 1000
ODD_PRIMES = [int(q) for q in primerange(3, 101)]


def random_element(rng, p):
    return FqElement(rng.randrange(p), rng.randrange(p), p)


@pytest.mark.parametrize("p", ACCEPTANCE_PRIMES)
def test_admissible_primes_accepted(p):
    assert is_admissible(p)
    assert require_admissible(p) == p


@pytest.mark.parametrize("p", REJECTED_PRIMES + (1, 27, 0, -7))
def test_inadmissible_inputs_rejected(p):
    assert not is_admissible(p)
    with pytest.raises(PreconditionError):
        require_admissible(p)


def test_legendre_known_values():
    assert legendre(5, 7) == -1
    assert legendre(2, 7) == 1
    assert legendre(14, 7) == 0
    assert legendre(-3, 7) == 1
    assert legendre(-3, 17) == -1


@pytest.mark.parametrize("modulus", [2, 9, 1, 15])
def test_legendre_needs_odd_prime(modulus):
    with pytest.raises(ParameterError):
        legendre(3, modulus)


@pytest.mark.parametrize("p", ACCEPTANCE_PRIMES)
def test_five_is_a_nonresidue(p):
    assert legendre(5, p) == -1


@pytest.mark.parametrize("p", ODD_PRIMES)
def test_legendre_multiplicative(p):
    for m in range(1, p):
        for n in range(1, p):
            assert legendre(m * n, p) == legendre(m, p) * legendre(n, p)


def test_quadratic_reciprocity():
    for p in ODD_PRIMES:
        for q in ODD_PRIMES:
            if p == q:
                continue
            sign = -1 if ((p - 1) // 2) * ((q - 1) // 2) % 2 else 1
            assert legendre(q, p) * legendre(p, q) == sign, (p, q)


@pytest.mark.parametrize("p", [3, 7, 13, 17, 41, 73, 97, 113])
def test_sqrt_mod_p_is_canonical(p):
    for n in range(p):
        if legendre(n, p) == -1:
            with pytest.raises(NonResidue):
                sqrt_mod_p(n, p)
            continue
        r = sqrt_mod_p(n, p)
        assert r * r % p == n
        assert r <= p - r


def test_sqrt_of_nonresidue_five():
    with pytest.raises(NonResidue):
        sqrt_mod_p(5, 7)


def test_roots_at_seven():
    assert golden_root(7) == FqElement(3, 4, 7)
    assert omega_root(7) == FqElement(4, 0, 7)
    d = -2 * (golden_root(7) - omega_root(7))
    assert d == FqElement(2, 6, 7)


@pytest.mark.parametrize("p", ACCEPTANCE_PRIMES)
@pytest.mark.parametrize("conjugate", [False, True])
def test_roots_satisfy_their_quadratics(p, conjugate):
    a = golden_root(p, conjugate=conjugate)
    b = omega_root(p, conjugate=conjugate)
    assert (a * a + a - 1).is_zero()
    assert (b * b + b + 1).is_zero()
    assert (a - b) * (a + b + 1) == FqElement.from_int(2, p)
    assert not a.is_in_prime_field()
    assert b.is_in_prime_field() == (p % 3 == 1)


@pytest.mark.parametrize("p", ACCEPTANCE_PRIMES)
def test_conjugate_roots_are_the_other_roots(p):
    assert golden_root(p, conjugate=True) == -1 - golden_root(p)
    assert omega_root(p, conjugate=True) == -1 - omega_root(p)


@pytest.mark.parametrize("p", ACCEPTANCE_PRIMES)
def test_field_axioms_and_frobenius(p):
    rng = random.Random(p)
    one, zero = FqElement.one(p), FqElement.zero(p)
    for _ in range(TRIALS):
        e, f, h = (random_element(rng, p) for _ in range(3))
        assert (e + f) + h == e + (f + h)
        assert (e * f) * h == e * (f * h)
        assert e * f == f * e
        assert e * (f + h) == e * f + e * h
        assert e + zero == e and e * one == e
        assert e - e == zero
        if not e.is_zero():
            assert e * fq_inv(e) == one
        assert frobenius(frobenius(e)) == e
        assert frobenius(e * f) == frobenius(e) * frobenius(f)
        assert frobenius(e + f) == frobenius(e) + frobenius(f)
        assert frobenius(e) == e**p


@pytest.mark.parametrize("p", ACCEPTANCE_PRIMES)
def test_frobenius_fixes_exactly_the_prime_field(p):
    for c0 in range(p):
        for c1 in range(p):
            e = FqElement(c0, c1, p)
            assert (frobenius(e) == e) == e.is_in_prime_field()


@settings(max_examples=200)
@given(st.sampled_from(ACCEPTANCE_PRIMES), st.integers(), st.integers(), st.integers(), st.integers())
def test_division_undoes_multiplication(p, a0, a1, b0, b1):
    e, f = FqElement(a0, a1, p), FqElement(b0, b1, p)
    if f.is_zero():
        return
    assert (e * f) / f == e
    assert f.norm() != 0


@given(st.sampled_from(ACCEPTANCE_PRIMES), st.integers(0, 50), st.integers(0, 50))
def test_power_laws(p, m, n):
    e = FqElement(2, 3, p)
    assert fq_pow(e, m) * fq_pow(e, n) == fq_pow(e, m + n)
    assert e ** (-m) * e**m == FqElement.one(p)


def test_zero_has_no_inverse():
    with pytest.raises(DivisionByZero):
        fq_inv(FqElement.zero(7))
    with pytest.raises(ZeroDivisionError):
        FqElement.one(7) / 0


def test_mixed_characteristics_rejected():
    with pytest.raises(ParameterError):
        FqElement.one(7) + FqElement.one(13)


def test_negative_exponent_rejected_by_fq_pow():
    with pytest.raises(ParameterError):
        fq_pow(FqElement.one(7), -1)


def test_json_form():
    assert FqElement(-1, 9, 7).to_json() == [6, 2]
