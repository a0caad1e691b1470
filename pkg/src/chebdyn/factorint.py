"""Integer factorization, primality, totient and p-adic valuations.

Factorization is deterministic: trial division by all primes up to 10^6,
then Brent's cycle-finding rho with a fixed parameter sequence. This is
enough for the resultant-sized integers appearing at desk scale, and the
fixed schedule keeps every report reproducible.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError

TRIAL_LIMIT = 10 ** 6

# strong-pseudoprime bases making Miller-Rabin deterministic below 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_BOUND = 3317044064679887385961981


@lru_cache(maxsize=1)
def _small_primes() -> np.ndarray:
    sieve = np.ones(TRIAL_LIMIT + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(TRIAL_LIMIT ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return np.nonzero(sieve)[0]


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    if n <= TRIAL_LIMIT:
        ps = _small_primes()
        return [int(p) for p in ps[ps <= n]]
    raise DomainError(f"prime table capped at {TRIAL_LIMIT}")


def is_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases; deterministic for n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """A nontrivial factor of odd composite n, deterministic schedule."""
    if n % 2 == 0:
        return 2
    # fixed (c, y0) schedule: reproducible runs
    for c in range(1, 64):
        y, m = 2 + c, 128
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
                k += m
                g = math.gcd(q, n)
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed on {n}")  # pragma: no cover


def factorize(n: int) -> list[int]:
    """Prime factors of n with multiplicity, ascending. Sign is dropped.

    Raises DomainError for n = 0.
    """
    if n == 0:
        raise DomainError("cannot factor 0")
    n = abs(n)
    out: list[int] = []
    if n == 1:
        return out
    for p in _small_primes():
        p = int(p)
        if p * p > n:
            break
        while n % p == 0:
            out.append(p)
            n //= p
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out.append(m)
            continue
        d = _brent_rho(m)
        stack.append(d)
        stack.append(m // d)
    out.sort()
    return out


def factor_counts(n: int) -> dict[int, int]:
    """Factorization of |n| as a prime -> multiplicity map."""
    counts: dict[int, int] = {}
    for p in factorize(n):
        counts[p] = counts.get(p, 0) + 1
    return counts


@lru_cache(maxsize=1 << 17)
def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError("totient needs n >= 1")
    result = n
    for p in set(factorize(n)) if n > 1 else ():
        result = result // p * (p - 1)
    return result


def padic_valuation(q, p: int):
    """v_p(q) for a rational q, with v_p(0) = +infinity."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    q = Fraction(q)
    if q == 0:
        return math.inf
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def strip_primes(n: int, primes) -> int:
    """|n| with all factors of the given primes removed."""
    n = abs(n)
    if n == 0:
        return 0
    for p in primes:
        while n % p == 0:
            n //= p
    return n


def smallest_prime_factor(n: int) -> int:
    """Smallest prime factor of |n| > 1 (full factorization fallback)."""
    n = abs(n)
    if n <= 1:
        raise DomainError("need |n| > 1")
    for p in _small_primes():
        p = int(p)
        if p * p > n:
            return n
        if n % p == 0:
            return p
    return min(factorize(n))
