"""Integer arithmetic helpers: gcd/lcm, primality testing, factorization.

Everything here works on plain Python ints (arbitrary precision).  Primality
is deterministic below the Miller-Rabin bound 3.317e24 and Baillie-PSW-style
above it; factorization is trial division followed by Brent's variant of
Pollard rho, which is plenty for the constants that show up in ideal
generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm, isqrt
import random

__all__ = [
    "gcd",
    "lcm",
    "xgcd",
    "is_prime",
    "factorize",
    "PrimeFactorization",
    "FpField",
]

# Deterministic Miller-Rabin witnesses for n < 3.317e24 (Sorenson & Webster).
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_LIMIT = 10**6
_small_primes_cache: list[int] | None = None


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, s, t) with g = gcd(a, b) >= 0 and s*a + t*b = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _small_primes() -> list[int]:
    global _small_primes_cache
    if _small_primes_cache is None:
        sieve = bytearray([1]) * _TRIAL_LIMIT
        sieve[0] = sieve[1] = 0
        for i in range(2, isqrt(_TRIAL_LIMIT) + 1):
            if sieve[i]:
                sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
        _small_primes_cache = [i for i in range(_TRIAL_LIMIT) if sieve[i]]
    return _small_primes_cache


def _miller_rabin(n: int, base: int) -> bool:
    """True if n passes the strong pseudoprime test to the given base."""
    if base % n == 0:
        return True
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _lucas_strong_probable_prime(n: int) -> bool:
    """Strong Lucas test with Selfridge parameters (the PSW companion test)."""
    # Find D = 5, -7, 9, ... with Jacobi(D, n) = -1.
    d = 5
    while True:
        j = _jacobi(d, n)
        if j == 0:
            return n == abs(d)
        if j == -1:
            break
        d = -(d + 2) if d > 0 else -(d - 2)
    p, q = 1, (1 - d) // 4
    # Strong test: n + 1 = k * 2^s with k odd.
    k = n + 1
    s = 0
    while k % 2 == 0:
        k //= 2
        s += 1
    u, v, qk = _lucas_uv(k, p, q, n)
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        if v == 0:
            return True
        qk = qk * qk % n
    return False


def _jacobi(a: int, n: int) -> int:
    assert n > 0 and n % 2 == 1
    a %= n
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _lucas_uv(k: int, p: int, q: int, n: int) -> tuple[int, int, int]:
    """Lucas sequence terms (U_k, V_k, Q^k) mod n by binary chain."""
    disc = p * p - 4 * q
    inv2 = pow(2, -1, n)
    u, v, qk = 1, p % n, q % n
    for bit in bin(k)[3:]:
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (p * u + v) * inv2 % n, (disc * u + p * v) * inv2 % n
            qk = qk * q % n
    return u, v, qk


def is_prime(n: int, extra_rounds: int = 40, seed: int = 0) -> bool:
    """Primality test; deterministic for n below ~3.3e24.

    Beyond that bound we use Baillie-PSW (base-2 Miller-Rabin plus a strong
    Lucas test) with `extra_rounds` further randomized Miller-Rabin rounds.
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < _MR_DETERMINISTIC_BOUND:
        return all(_miller_rabin(n, b) for b in _MR_BASES)
    if not _miller_rabin(n, 2):
        return False
    if not _lucas_strong_probable_prime(n):
        return False
    rng = random.Random(seed ^ (n & 0xFFFFFFFF))
    return all(_miller_rabin(n, rng.randrange(2, n - 1)) for _ in range(extra_rounds))


@dataclass(frozen=True)
class PrimeFactorization:
    """Sorted prime factorization n = prod(p_i ** e_i).

    `certified` is False when any factor's primality rests on probabilistic
    testing (inputs beyond the deterministic Miller-Rabin range).
    """

    n: int
    factors: tuple[tuple[int, int], ...]
    certified: bool = True

    def recompose(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


def _brent_rho(n: int, seed: int) -> int:
    """Brent's cycle variant of Pollard rho; returns a nontrivial factor of composite odd n."""
    rng = random.Random(seed)
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int, seed: int = 0) -> PrimeFactorization:
    """Prime factorization of n >= 2, sorted by prime."""
    if n <= 1:
        raise ValueError(f"factorize requires n >= 2, got {n}")
    remaining = n
    counts: dict[int, int] = {}
    for p in _small_primes():
        if p * p > remaining:
            break
        while remaining % p == 0:
            counts[p] = counts.get(p, 0) + 1
            remaining //= p
    certified = True

    def split(m: int, depth: int) -> None:
        nonlocal certified
        if m == 1:
            return
        if is_prime(m):
            if m >= _MR_DETERMINISTIC_BOUND:
                certified = False
            counts[m] = counts.get(m, 0) + 1
            return
        root = isqrt(m)
        if root * root == m:
            split(root, depth + 1)
            split(root, depth + 1)
            return
        d = _brent_rho(m, seed + depth)
        split(d, depth + 1)
        split(m // d, depth + 1)

    split(remaining, 0)
    factors = tuple(sorted(counts.items()))
    result = PrimeFactorization(n, factors, certified)
    assert result.recompose() == n
    return result


@dataclass(frozen=True)
class FpField:
    """Arithmetic of the prime field F_p on int residues in [0, p)."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    def normalize(self, a: int) -> int:
        return a % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def pow(self, a: int, e: int) -> int:
        return pow(a, e, self.p)
