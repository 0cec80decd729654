import math

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from zprimdec.numth import FpField, PrimeFactorization, factorize, gcd, is_prime, lcm, xgcd


@pytest.mark.parametrize(
    "a, b, expected",
    [(0, 0, 0), (12, 18, 6), (2 * 3 * 5 * 13 * 17 * 181, 181, 181)],
)
def test_gcd_examples(a, b, expected):
    assert gcd(a, b) == expected


@pytest.mark.parametrize("a, b, expected", [(2, 3, 6), (4, 6, 12), (0, 5, 0)])
def test_lcm_examples(a, b, expected):
    assert lcm(a, b) == expected


@given(st.integers(-10**12, 10**12), st.integers(-10**12, 10**12))
def test_gcd_lcm_product(a, b):
    assert lcm(a, b) * gcd(a, b) == abs(a * b)


@given(st.integers(-10**9, 10**9), st.integers(-10**9, 10**9))
def test_xgcd_bezout(a, b):
    g, s, t = xgcd(a, b)
    assert g == gcd(a, b) >= 0
    assert s * a + t * b == g


def test_is_prime_examples():
    assert is_prime(181)  # a factor of 2*3*5*13*17*181
    assert not is_prime(1)
    n = 2**64 + 13
    # independent oracle for the expected value
    assert is_prime(n) == sympy.isprime(n)


@given(st.integers(0, 10**6))
def test_is_prime_against_oracle(n):
    assert is_prime(n) == sympy.isprime(n)


def test_is_prime_large():
    for n in (2**89 - 1, 2**89 + 1, 10**30 + 57, 10**30 + 56):
        assert is_prime(n) == sympy.isprime(n)


def test_factorize_examples():
    n = 2 * 3**2 * 5 * 7**3 * 11 * 13 * 17 * 19 * 23
    f = factorize(n)
    assert f.factors == ((2, 1), (3, 2), (5, 1), (7, 3), (11, 1), (13, 1), (17, 1), (19, 1), (23, 1))
    assert factorize(4).factors == ((2, 2),)
    p = 10**9 + 7
    assert sympy.isprime(p)  # trial-division-style oracle
    assert factorize(p).factors == ((p, 1),)


def test_factorize_rejects_small():
    with pytest.raises(ValueError):
        factorize(1)
    with pytest.raises(ValueError):
        factorize(0)


@given(st.integers(2, 10**9))
def test_factorize_recomposition(n):
    f = factorize(n)
    assert f.recompose() == n
    primes = f.primes()
    assert list(primes) == sorted(set(primes))
    for p in primes:
        assert is_prime(p)


def test_factorize_semiprime():
    n = 1000003 * 999983
    f = factorize(n)
    assert f.factors == ((999983, 1), (1000003, 1))
    assert f.certified


def test_fp_field_axioms_exhaustive():
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        F = FpField(p)
        for a in range(p):
            for b in range(p):
                for c in range(p):
                    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
                    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        for a in range(1, p):
            assert F.mul(a, F.inv(a)) == 1


def test_fp_field_requires_prime():
    with pytest.raises(ValueError):
        FpField(6)


def test_prime_factorization_dataclass():
    f = PrimeFactorization(12, ((2, 2), (3, 1)))
    assert f.recompose() == 12
    assert f.primes() == (2, 3)
