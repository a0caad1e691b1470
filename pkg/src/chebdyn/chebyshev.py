"""Chebyshev maps and exact enumeration of their preperiodic Galois orbits.

The normalization used throughout is the monic family on [-2, 2]:

    T_1 = x,  T_2 = x^2 - 2,  T_{k+1} = x T_k - T_{k-1},

so T_k(w + 1/w) = w^k + w^{-k}. The finite preperiodic points of T_d
(d >= 2) are exactly the values zeta + 1/zeta over roots of unity zeta;
the Galois orbit over Q of the order-N point is cut out by the monic
integer polynomial psi_N with psi_N(2 cos(2 pi a / N)) = 0 for gcd(a,N)=1.

psi_N is computed exactly from the N-th cyclotomic polynomial: writing
Phi_N(z)/z^m = d_0 + sum_k d_k (z^k + z^-k) with m = phi(N)/2, the
symmetric coefficients d_k are pushed through z^k + z^-k = T_k(z + 1/z).
No floating point enters the coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

from .errors import DomainError
from .factorint import euler_phi
from .intpoly import IntPoly
from .numerics import ApproxReal, cos_two_pi

# ---------------------------------------------------------------------------
# cyclotomic polynomials (numpy int64, exact: coefficients stay tiny)
# ---------------------------------------------------------------------------

_SPF_LIMIT = 1 << 14
_SPF: np.ndarray | None = None


def _spf_table(limit: int) -> np.ndarray:
    global _SPF, _SPF_LIMIT
    if _SPF is None or limit >= _SPF_LIMIT:
        while _SPF_LIMIT <= limit:
            _SPF_LIMIT *= 2
        spf = np.zeros(_SPF_LIMIT + 1, dtype=np.int64)
        for i in range(2, _SPF_LIMIT + 1):
            if spf[i] == 0:
                sl = spf[i::i]
                sl[sl == 0] = i
        _SPF = spf
    return _SPF


def distinct_primes(n: int) -> list[int]:
    spf = _spf_table(n)
    out = []
    while n > 1:
        p = int(spf[n])
        out.append(p)
        while n % p == 0:
            n //= p
    return out


def radical(n: int) -> int:
    r = 1
    for p in distinct_primes(n):
        r *= p
    return r


@lru_cache(maxsize=None)
def _cyclotomic_squarefree(m: int) -> np.ndarray:
    """Coefficients of Phi_m for squarefree m, exact in int64."""
    if m == 1:
        return np.array([-1, 1], dtype=np.int64)
    primes = distinct_primes(m)
    plus, minus = [], []
    for r in range(len(primes) + 1):
        for sub in combinations(primes, r):
            d = math.prod(sub)
            (plus if r % 2 == 0 else minus).append(m // d)
    f = np.zeros(sum(plus) + 1, dtype=np.int64)
    f[0] = 1
    ln = 1
    for d in plus:
        # f *= (x^d - 1)
        g = np.zeros(ln + d, dtype=np.int64)
        g[d : d + ln] = f[:ln]
        g[:ln] -= f[:ln]
        f, ln = g, ln + d
    for d in minus:
        # f /= (x^d - 1); each residue chain solves h_i = h_{i-d} - g_i
        rows = -(-ln // d)
        pad = np.zeros(rows * d, dtype=np.int64)
        pad[:ln] = f[:ln]
        f = -np.cumsum(pad.reshape(rows, d), axis=0).ravel()
        ln -= d
    return f[:ln].copy()


def cyclotomic_coeffs(n: int) -> list[int]:
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise DomainError("cyclotomic index must be positive")
    r = radical(n)
    q = n // r
    c = _cyclotomic_squarefree(r)
    if q == 1:
        return [int(x) for x in c]
    out = [0] * ((len(c) - 1) * q + 1)
    for j, x in enumerate(c):
        out[j * q] = int(x)
    return out


def symmetric_coeffs(n: int) -> tuple[int, dict[int, int]]:
    """(m, {k: d_k}) with Phi_n(z)/z^m = d_0 + sum_{k>=1} d_k (z^k + z^-k).

    Only meaningful for n >= 3 (Phi_n palindromic of even degree 2m).
    """
    if n < 3:
        raise DomainError("symmetric form needs n >= 3")
    r = radical(n)
    q = n // r
    c = _cyclotomic_squarefree(r)
    m = (len(c) - 1) * q // 2
    dk: dict[int, int] = {}
    for j, x in enumerate(c):
        k = j * q - m
        if k >= 0 and x:
            dk[k] = int(x)
    return m, dk


# ---------------------------------------------------------------------------
# Chebyshev polynomials and evaluation
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def cheb_poly(n: int) -> IntPoly:
    """T_n as an integer polynomial (T_1 = x, T_2 = x^2 - 2)."""
    if n < 1:
        raise DomainError("Chebyshev index must be >= 1")
    if n == 1:
        return IntPoly.of(0, 1)
    prev, cur = (2,), (0, 1)  # T_0 = 2, T_1 = x
    for _ in range(n - 1):
        new = [0] + list(cur)
        for i, c in enumerate(prev):
            new[i] -= c
        prev, cur = cur, tuple(new)
    return IntPoly(cur)


def cheb_eval(n: int, z):
    """T_n(z) by the three-term recurrence; exact for int/Fraction z."""
    if n < 1:
        raise DomainError("Chebyshev index must be >= 1")
    if n == 1:
        return z
    prev = 2 + 0 * z
    cur = z
    for _ in range(n - 1):
        prev, cur = cur, z * cur - prev
    return cur


@dataclass(frozen=True)
class ChebMap:
    """The degree-d Chebyshev dynamical system, d >= 2."""

    degree: int

    def __post_init__(self):
        if self.degree < 2:
            raise DomainError("a Chebyshev dynamical system needs degree >= 2")

    @property
    def poly(self) -> IntPoly:
        return cheb_poly(self.degree)

    def __call__(self, z):
        return cheb_eval(self.degree, z)

    def lower_coeff_sum(self) -> int:
        """sum |c_j| over the non-leading coefficients of T_d."""
        return sum(abs(c) for c in self.poly.coeffs[:-1])


# ---------------------------------------------------------------------------
# preperiodic orbits
# ---------------------------------------------------------------------------


def orbit_size(n: int) -> int:
    """Size of the Galois orbit over Q of the order-n preperiodic point."""
    if n < 1:
        raise DomainError("order must be positive")
    if n <= 2:
        return 1
    return euler_phi(n) // 2


def coprime_residues_half(n: int) -> list[int]:
    """a with gcd(a, n) = 1 and 1 <= a <= n/2 (a = 1 for n <= 2)."""
    if n <= 2:
        return [1]
    return [a for a in range(1, n // 2 + 1) if math.gcd(a, n) == 1]


_PK_CACHE: list[list[int]] = [[2], [0, 1]]


def _pk(k: int) -> list[int]:
    """Coefficients of T_k with the T_0 = 2 convention (exact ints)."""
    while len(_PK_CACHE) <= k:
        prev2, prev = _PK_CACHE[-2], _PK_CACHE[-1]
        new = [0] + prev
        for i, c in enumerate(prev2):
            new[i] -= c
        _PK_CACHE.append(new)
    return _PK_CACHE[k]


@lru_cache(maxsize=None)
def halved_minpoly(n: int) -> IntPoly:
    """Monic minimal polynomial of 2 cos(2 pi / n) over Q, exact."""
    if n == 1:
        return IntPoly.of(-2, 1)
    if n == 2:
        return IntPoly.of(2, 1)
    m, dk = symmetric_coeffs(n)
    out = [0] * (m + 1)
    for k, e in dk.items():
        if k == 0:
            out[0] += e
        else:
            pk = _pk(k)
            for i in range(k, -1, -1):
                c = pk[i]
                if c:
                    out[i] += e * c
    return IntPoly.from_coeffs(out)


@dataclass(frozen=True)
class PreperiodicOrbit:
    """The Galois orbit over Q of zeta_N + 1/zeta_N.

    conjugates[i] approximates 2 cos(2 pi a_values[i] / order); every
    conjugate lies in [-2, 2].
    """

    order: int
    minpoly: IntPoly
    size: int
    a_values: tuple[int, ...]
    conjugates: tuple[ApproxReal, ...]

    def conjugate_mp(self, i: int, prec: int = 64):
        """High-precision conjugate value (mpf) for escalation paths."""
        return cos_two_pi(self.a_values[i], self.order, prec)

    def conjugates_array(self) -> np.ndarray:
        return np.array([c.value for c in self.conjugates], dtype=np.float64)


@lru_cache(maxsize=None)
def preperiodic_orbit(n: int) -> PreperiodicOrbit:
    """Construct the order-n orbit: exact minimal polynomial plus conjugates."""
    if n < 1:
        raise DomainError("order must be positive")
    poly = halved_minpoly(n)
    a_vals = tuple(coprime_residues_half(n))
    if n == 1:
        conj = (ApproxReal(2.0, 0.0),)
        a_vals = (1,)
    elif n == 2:
        conj = (ApproxReal(-2.0, 0.0),)
    else:
        conj = tuple(
            ApproxReal(2 * math.cos(2 * math.pi * a / n), 4e-16) for a in a_vals
        )
    size = orbit_size(n)
    assert poly.degree == size
    return PreperiodicOrbit(n, poly, size, a_vals, conj)


# rational preperiodic points and their orders
_RATIONAL_PREPERIODIC = {
    Fraction(2): 1,
    Fraction(-2): 2,
    Fraction(-1): 3,
    Fraction(0): 4,
    Fraction(1): 6,
}


def is_preperiodic_rational(x) -> bool:
    """True exactly for x in {-2, -1, 0, 1, 2}."""
    return Fraction(x) in _RATIONAL_PREPERIODIC


def rational_preperiodic_order(x) -> int | None:
    return _RATIONAL_PREPERIODIC.get(Fraction(x))


def is_preperiodic_dynamic(x, max_steps: int = 64) -> bool:
    """Bounded-orbit detection under T_2 with exact rational arithmetic.

    Cross-checks the closed preperiodic classification: a rational point is
    preperiodic iff its exact T_2-orbit revisits a value.
    """
    x = Fraction(x)
    seen = {x}
    for _ in range(max_steps):
        x = x * x - 2
        if x in seen:
            return True
        if x.denominator > 1 and x.denominator.bit_length() > 256:
            return False  # heights blow up: denominator q -> q^2 each step
        if abs(x) > 2:
            return False  # escapes the invariant interval, so wanders
        seen.add(x)
    return False


def preperiodic_order_of_minpoly(f: IntPoly, search_bound: int | None = None) -> int | None:
    """If f is (up to sign) some psi_N, return N, else None.

    phi(N)/2 = deg f forces phi(N) = 2 deg f, and phi(N) >= sqrt(N/2), so the
    search window is finite.
    """
    if f.is_zero:
        return None
    f = f.primitive()
    if f.leading < 0:
        f = -f
    d = f.degree
    if d == 1:
        q = Fraction(-f.coeffs[0], f.coeffs[1])
        return rational_preperiodic_order(q) if q.denominator == 1 else None
    bound = search_bound or (8 * d * d + 16)
    for n in range(3, bound + 1):
        if orbit_size(n) == d and halved_minpoly(n) == f:
            return n
    return None


# ---------------------------------------------------------------------------
# fast exact orbit pairings (no minimal-polynomial expansion)
# ---------------------------------------------------------------------------


def orbit_value(n: int, beta: Fraction) -> int:
    """s^m psi_n(r/s) for beta = r/s in lowest terms, exact.

    Runs off the symmetric cyclotomic coefficients through the integer
    recurrence Q_{k+1} = r Q_k - s^2 Q_{k-1} (Q_k = s^k T_k(beta)), so the
    cost is linear in the orbit size.
    """
    beta = Fraction(beta)
    r, s = beta.numerator, beta.denominator
    if n == 1:
        return r - 2 * s
    if n == 2:
        return r + 2 * s
    m, dk = symmetric_coeffs(n)
    s2 = s * s
    q_prev, q_cur = 2, r
    spow = [1] * (m + 1)
    for i in range(1, m + 1):
        spow[i] = spow[i - 1] * s
    total = dk.get(0, 0) * spow[m]
    if 1 in dk:
        total += dk[1] * spow[m - 1] * q_cur
    for k in range(2, m + 1):
        q_prev, q_cur = q_cur, r * q_cur - s2 * q_prev
        e = dk.get(k)
        if e:
            total += e * spow[m - k] * q_cur
    return total


def orbit_norm_quadratic(n: int, f: IntPoly) -> int:
    """res(psi_n, f) for an irreducible quadratic f = a x^2 + b x + c, exact.

    Evaluates a^m psi_n(beta) = U + V beta in Z[beta] by the linear
    recurrence for a^k T_k(beta), then takes the quadratic norm. Matches
    the resultant convention res(psi, f) = a^deg(psi) psi(beta) psi(beta').
    """
    if f.degree != 2:
        raise DomainError("quadratic norm path needs a degree-2 polynomial")
    c, b, a = f.coeffs
    if n <= 2:
        # psi = x - 2: a(beta - 2)(beta' - 2) = c + 2b + 4a, and the mirror for x + 2
        return c + 2 * b + 4 * a if n == 1 else c - 2 * b + 4 * a
    m, dk = symmetric_coeffs(n)
    a2 = a * a
    u_prev, v_prev = 2, 0  # T_0 = 2
    u_cur, v_cur = 0, a  # a T_1(beta) = a beta
    apow = [1] * (m + 1)
    for i in range(1, m + 1):
        apow[i] = apow[i - 1] * a
    big_u = dk.get(0, 0) * apow[m]
    big_v = 0
    if 1 in dk:
        big_u += dk[1] * apow[m - 1] * u_cur
        big_v += dk[1] * apow[m - 1] * v_cur
    for k in range(2, m + 1):
        # a beta (u + v beta) = -v c + (a u - v b) beta
        nu = -v_cur * c - a2 * u_prev
        nv = a * u_cur - v_cur * b - a2 * v_prev
        u_prev, v_prev, u_cur, v_cur = u_cur, v_cur, nu, nv
        e = dk.get(k)
        if e:
            big_u += e * apow[m - k] * u_cur
            big_v += e * apow[m - k] * v_cur
    # (U + V beta)(U + V beta') = (a U^2 - b U V + c V^2)/a with U + V beta
    # equal to a^m psi(beta), so res = a^m psi(beta) psi(beta') needs /a^{m+1}
    num = a * big_u * big_u - b * big_u * big_v + c * big_v * big_v
    val, rem = divmod(num, apow[m] * a)
    if rem:
        raise ArithmeticError("norm recurrence lost exactness")  # pragma: no cover
    return val


# ---------------------------------------------------------------------------
# exact verification helpers for the minimal polynomials
# ---------------------------------------------------------------------------


def minpoly_conjugate_residuals(n: int) -> np.ndarray:
    """|psi_n| at each conjugate, evaluated through the symmetric form.

    Writing psi_n(x) = d_0 + sum d_k T_k(x) and T_k(2 cos t) = 2 cos(k t)
    keeps every term O(1), so the residual is a faithful float measure of
    the construction instead of a catastrophic cancellation artifact.
    """
    if n == 1:
        return np.array([abs(float(halved_minpoly(1)(2)))])
    if n == 2:
        return np.array([abs(float(halved_minpoly(2)(-2)))])
    m, dk = symmetric_coeffs(n)
    ks = np.array([k for k in dk if k > 0], dtype=np.float64)
    es = np.array([dk[k] for k in dk if k > 0], dtype=np.float64)
    a = np.array(coprime_residues_half(n), dtype=np.float64)
    vals = 2.0 * np.cos(np.outer(a, ks) * (2 * np.pi / n)) @ es
    return np.abs(vals + dk.get(0, 0))


def minpoly_spot_checks(n: int) -> bool:
    """Exact integer agreement of psi_n and its symmetric form at x in {0,±1,±2}.

    T_k at these points is periodic with exact integer values, so both sides
    are computed in pure integer arithmetic; this pins the basis conversion.
    """
    poly = halved_minpoly(n)
    if n <= 2:
        return poly(2 if n == 1 else -2) == 0
    m, dk = symmetric_coeffs(n)
    # T_k(0), T_k(1), T_k(-1), T_k(2), T_k(-2) are periodic integer sequences
    patterns = {
        0: [2, 0, -2, 0],
        1: [2, 1, -1, -2, -1, 1],
        -1: [2, -1, -1, 2, -1, -1],
        2: [2, 2],
        -2: [2, -2],
    }
    for x, pat in patterns.items():
        rhs = 0
        for k, e in dk.items():
            tk = pat[k % len(pat)]
            rhs += e * (tk if k else 1)  # d_0 multiplies 1, not T_0 = 2
        if poly(x) != rhs:
            return False
    return True


_IDENTITY_PRIME = 2147483647


def minpoly_identity_mod(n: int, p: int = _IDENTITY_PRIME) -> bool:
    """Check z^m psi_n(z + 1/z) == Phi_n(z) modulo p (vectorized).

    A Horner pass multiplying by (z^2 + 1) per step rebuilds the left side
    as a Laurent numerator; equality mod a 31-bit prime is a sharp
    consistency check between the monomial coefficients and the cyclotomic
    source (exact equality over Z is covered separately for moderate n).
    """
    if n <= 2:
        return True
    b = halved_minpoly(n).coeffs
    m = len(b) - 1
    bm = np.array([x % p for x in b], dtype=np.int64)
    h = np.zeros(2 * m + 1, dtype=np.int64)
    h[0] = bm[m]
    ln = 1
    for j in range(m - 1, -1, -1):
        new = np.zeros(ln + 2, dtype=np.int64)
        new[:ln] = h[:ln]
        new[2 : 2 + ln] += h[:ln]
        new[m - j] += bm[j]
        new %= p
        h[: ln + 2] = new
        ln += 2
    phi = np.zeros(2 * m + 1, dtype=np.int64)
    r = radical(n)
    q = n // r
    c = _cyclotomic_squarefree(r)
    phi[:: q][: len(c)] = c
    return bool(np.array_equal(h, phi % p))


def minpoly_identity_exact(n: int) -> bool:
    """Exact integer identity z^m psi_n(z + 1/z) == Phi_n(z) (big integers)."""
    if n <= 2:
        return True
    b = halved_minpoly(n).coeffs
    m = len(b) - 1
    h = [0] * (2 * m + 1)
    h[0] = b[m]
    ln = 1
    for j in range(m - 1, -1, -1):
        new = [0] * (ln + 2)
        for i in range(ln):
            new[i] += h[i]
            new[i + 2] += h[i]
        new[m - j] += b[j]
        for i in range(ln + 2):
            h[i] = new[i]
        ln += 2
    return h == cyclotomic_coeffs(n)
