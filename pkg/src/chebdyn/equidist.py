"""The equilibrium measure on [-2, 2], logarithmic potentials, orbit-averaged
proximity, and the pairing-style convergence diagnostics.

The canonical measure of the Chebyshev system at the real place is
dmu = (1/pi) dx / sqrt(4 - x^2) on [-2, 2]; under x = 2 cos(t) it becomes
the uniform measure (1/pi) dt on [0, pi], which is how every integral here
is computed. Finite-place measures contribute nothing to the proximity
integrals (the system has good reduction everywhere); every report states
this convention.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath as mp
import numpy as np

from .algebraic import AlgebraicNumber
from .chebyshev import (
    PreperiodicOrbit,
    cheb_eval,
    is_preperiodic_rational,
    orbit_value,
    preperiodic_orbit,
)
from .errors import DomainError, PreperiodicInputError
from .factorint import padic_valuation
from .heights import (
    HeightValue,
    canonical_height,
    orbit_generator_height,
    weil_height_rational,
)
from .integrality import (
    ARCH,
    Place,
    arch_proximity,
    newton_polygon_valuations,
    orbit_shift_poly,
)

#: finite-place proximity integrals vanish by good reduction
FINITE_PLACE_INTEGRAL = 0.0


def equilibrium_potential(beta) -> float:
    """The logarithmic potential int log|x - beta| dmu(x), in closed form.

    Writing beta = w + 1/w with |w| >= 1 the value is log|w|; it vanishes
    exactly on the support [-2, 2]. Validated against adaptive quadrature
    of the defining integral in the test suite.
    """
    if isinstance(beta, AlgebraicNumber):
        beta = complex(beta.embedding.value)
    z = complex(beta)
    if z.imag == 0 and -2.0 <= z.real <= 2.0:
        return 0.0
    disc = cmath.sqrt(z * z - 4)
    w = (z + disc) / 2
    if abs(w) < 1:
        w = (z - disc) / 2
    return math.log(abs(w))


def quadrature_potential(beta, prec_digits: int = 25) -> float:
    """Direct adaptive quadrature of (1/pi) int_0^pi log|2cos t - beta| dt.

    Independent oracle for equilibrium_potential; splits at the interior
    singularity when beta lies on the support.
    """
    z = complex(beta)
    with mp.workdps(prec_digits):
        zz = mp.mpc(z)

        def f(t):
            return mp.log(abs(2 * mp.cos(t) - zz))

        points = [0, mp.pi]
        if z.imag == 0 and -2 < z.real < 2:
            points = [0, mp.acos(mp.mpf(z.real) / 2), mp.pi]
        val = mp.quad(f, points) / mp.pi
        return float(val)


@lru_cache(maxsize=1)
def log_plus_integral() -> float:
    """kappa = int log+ |x| dmu(x) = (2/pi) int_0^{pi/3} log(2 cos t) dt.

    Computed once by adaptive quadrature to well below 1e-10 and cached.
    """
    with mp.workdps(40):
        val = 2 / mp.pi * mp.quad(lambda t: mp.log(2 * mp.cos(t)), [0, mp.pi / 3])
        return float(val)


def lambda_integral(beta, place: Place = ARCH) -> float:
    """int lambda_{x,v}(beta) dmu_v(x) for the canonical measure at v.

    At the real place this assembles to log+|beta| + kappa - potential(beta);
    at finite places the canonical measure sits at the integral points and
    the integral vanishes by good reduction.
    """
    if not place.is_archimedean:
        return FINITE_PLACE_INTEGRAL
    if isinstance(beta, AlgebraicNumber):
        b = complex(beta.embedding.value)
    else:
        b = complex(Fraction(beta)) if isinstance(beta, (int, Fraction)) else complex(beta)
    log_plus = math.log(abs(b)) if abs(b) > 1 else 0.0
    return log_plus + log_plus_integral() - equilibrium_potential(b)


# ---------------------------------------------------------------------------
# orbit averages of the local proximity
# ---------------------------------------------------------------------------


def _arch_average_float(orbit: PreperiodicOrbit, b: float) -> tuple[float, float]:
    """(average, smallest gap) over conjugates, vectorized float64."""
    x = orbit.conjugates_array()
    gaps = np.abs(x - b)
    lam = -np.log(gaps / (np.maximum(np.abs(x), 1.0) * max(abs(b), 1.0)))
    return float(lam.mean()), float(gaps.min())


def _arch_average_mp(orbit: PreperiodicOrbit, beta: Fraction, prec: int) -> float:
    r, s = beta.numerator, beta.denominator
    with mp.workprec(prec):
        denom_b = mp.mpf(max(abs(r), s))
        total = mp.mpf(0)
        for i in range(orbit.size):
            c = orbit.conjugate_mp(i, prec)
            total += -mp.log(abs(c * s - r) / (max(abs(c), 1) * denom_b))
        return float(total / orbit.size)


def orbit_lambda_average(orbit: PreperiodicOrbit, beta, place: Place = ARCH, prec: int | None = None) -> float:
    """(1/|P|) sum over conjugates of lambda_{sigma(alpha), v}(beta).

    Archimedean: numeric average over the closed-form conjugates (mpmath
    escalation when beta crowds one of them). Finite p: exact via the
    positive Newton-polygon valuations of the cleared psi_N(beta - x),
    times log(p)/|P|; primes dividing the denominator of beta contribute
    nothing (chordal distance 1 there).
    """
    if isinstance(beta, AlgebraicNumber) and beta.is_rational:
        beta = beta.as_fraction()
    if place.is_archimedean:
        if isinstance(beta, AlgebraicNumber):
            b = beta.embedding.value
            if b.imag == 0:
                b = b.real
            avg, gap = _arch_average_float(orbit, b)
            if gap < 1e-7:
                raise DomainError("algebraic beta too close to a conjugate for the float path")
            return avg
        beta = Fraction(beta)
        if orbit_value(orbit.order, beta) == 0:
            raise PreperiodicInputError("beta is a conjugate of the orbit")
        avg, gap = _arch_average_float(orbit, float(beta))
        if prec is None and gap > 1e-6:
            return avg
        return _arch_average_mp(orbit, beta, prec or 128)
    p = place.p
    if isinstance(beta, AlgebraicNumber):
        raise DomainError("finite-place orbit averages take a rational beta")
    beta = Fraction(beta)
    if padic_valuation(beta, p) < 0:
        return 0.0
    f_val = orbit_value(orbit.order, beta)
    if f_val == 0:
        raise PreperiodicInputError("beta is a conjugate of the orbit")
    if f_val % p:
        return 0.0
    vals = newton_polygon_valuations(orbit_shift_poly(orbit, beta), p)
    pos = sum(v for v in vals if v is not math.inf and v > 0)
    return float(pos) * math.log(p) / orbit.size


@dataclass(frozen=True)
class LambdaIdentity:
    """Both sides of the exact all-places proximity identity.

    Summing the orbit-averaged lambda over the real place and every meeting
    prime (denominator primes contribute zero) must equal
    h(beta) + h(alpha): the product formula in local coordinates.
    """

    orbit_order: int
    beta: str
    lhs: float
    rhs: float
    gap: float
    arch_average: float
    finite_total: float


def total_lambda_identity_check(orbit: PreperiodicOrbit, beta, prec: int = 96) -> LambdaIdentity:
    """Assemble sum_v orbit-average lambda_v against h(beta) + h(alpha).

    The finite part is summed exactly over all primes at once: by unique
    factorization, sum_p (log p) v_p(F) = log|F| for the pairing value F,
    which already accounts for every meeting prime and gives denominator
    primes their zero contribution.
    """
    beta = beta.as_fraction() if isinstance(beta, AlgebraicNumber) else Fraction(beta)
    f_val = orbit_value(orbit.order, beta)
    if f_val == 0:
        raise PreperiodicInputError("beta is a conjugate of the orbit")
    arch = _arch_average_mp(orbit, beta, prec)
    with mp.workprec(prec):
        finite = float(mp.log(abs(mp.mpf(f_val))) / orbit.size) if abs(f_val) > 1 else 0.0
    lhs = arch + finite
    rhs = weil_height_rational(beta).value + orbit_generator_height(orbit, prec).value
    return LambdaIdentity(
        orbit_order=orbit.order,
        beta=str(beta),
        lhs=lhs,
        rhs=rhs,
        gap=abs(lhs - rhs),
        arch_average=arch,
        finite_total=finite,
    )


# ---------------------------------------------------------------------------
# discrepancy records and pairing estimates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DecayConstants:
    """Constants (C, delta, A) for the quantitative decay bound."""

    c: float = 1.0
    delta: float = 0.25
    a: float = 1.0

    def __post_init__(self):
        if not 0 < self.delta < 0.5:
            raise DomainError("delta must lie in (0, 1/2)")
        if self.a <= 0 or self.c <= 0:
            raise DomainError("constants must be positive")


@dataclass(frozen=True)
class DiscrepancyRecord:
    orbit_order: int
    orbit_size: int
    place: str
    orbit_average: float
    integral_value: float
    discrepancy: float
    bound_rhs: float | None
    hypothesis_holds: bool | None


def discrepancy(
    orbit: PreperiodicOrbit,
    beta,
    place: Place = ARCH,
    constants: DecayConstants | None = None,
) -> DiscrepancyRecord:
    """|orbit average - integral| of lambda at one place, with the decay
    bound C |P|^(-delta) sqrt(log|P|) A (h(beta) + log+|beta|_v + 1) and the
    max-proximity hypothesis A (h(beta)+1) |P|^(1/2-delta) when constants
    are supplied."""
    avg = orbit_lambda_average(orbit, beta, place)
    integral = lambda_integral(beta, place)
    disc = abs(avg - integral)
    bound = None
    hyp = None
    if constants is not None:
        beta_q = beta.as_fraction() if isinstance(beta, AlgebraicNumber) else Fraction(beta)
        h = weil_height_rational(beta_q).value
        size = orbit.size
        if place.is_archimedean:
            log_plus_v = math.log(abs(float(beta_q))) if abs(beta_q) > 1 else 0.0
            prox = arch_proximity(orbit, beta_q)
        else:
            v = padic_valuation(beta_q, place.p)
            log_plus_v = -v * math.log(place.p) if v < 0 else 0.0
            vals = [
                x
                for x in newton_polygon_valuations(orbit_shift_poly(orbit, beta_q), place.p)
                if x is not math.inf
            ]
            prox = float(max(vals)) * math.log(place.p) if vals else 0.0
        bound = (
            constants.c
            * size ** (-constants.delta)
            * math.sqrt(math.log(size))
            * constants.a
            * (h + log_plus_v + 1)
        ) if size > 1 else None
        hyp = prox < constants.a * (h + 1) * size ** (0.5 - constants.delta)
    return DiscrepancyRecord(
        orbit_order=orbit.order,
        orbit_size=orbit.size,
        place=str(place),
        orbit_average=avg,
        integral_value=integral,
        discrepancy=disc,
        bound_rhs=bound,
        hypothesis_holds=hyp,
    )


def discrepancy_scan(beta, orders, place: Place = ARCH) -> list[DiscrepancyRecord]:
    """Discrepancy records for a batch of orbit orders (no bound constants)."""
    return [discrepancy(preperiodic_orbit(n), beta, place) for n in orders]


def conjugates_fast(n: int) -> np.ndarray:
    """Conjugate values 2 cos(2 pi a / n), gcd(a,n)=1, without building the
    orbit object (no minimal polynomial; used by large scans)."""
    if n == 1:
        return np.array([2.0])
    if n == 2:
        return np.array([-2.0])
    a = np.arange(1, n // 2 + 1)
    a = a[np.gcd(a, n) == 1]
    return 2.0 * np.cos(2.0 * np.pi * a / n)


def arch_discrepancy_fast(beta, n: int) -> DiscrepancyRecord:
    """Archimedean discrepancy record via the closed-form conjugates only."""
    b = float(Fraction(beta)) if isinstance(beta, (int, Fraction)) else float(beta)
    x = conjugates_fast(n)
    lam = -np.log(np.abs(x - b) / (np.maximum(np.abs(x), 1.0) * max(abs(b), 1.0)))
    avg = float(lam.mean())
    integral = lambda_integral(beta, ARCH)
    return DiscrepancyRecord(
        orbit_order=n,
        orbit_size=int(x.size),
        place="inf",
        orbit_average=avg,
        integral_value=integral,
        discrepancy=abs(avg - integral),
        bound_rhs=None,
        hypothesis_holds=None,
    )


def fitted_slope(sizes, discrepancies) -> float:
    """Least-squares slope of log(discrepancy) against log(orbit size).

    Zero discrepancies (exact-vanishing rows) are left out of the fit; with
    fewer than two usable rows the slope is reported as 0.
    """
    xs = np.asarray(sizes, dtype=float)
    ys = np.asarray(discrepancies, dtype=float)
    keep = ys > 0
    if keep.sum() < 2:
        return 0.0
    return float(np.polyfit(np.log(xs[keep]), np.log(ys[keep]), 1)[0])


@dataclass(frozen=True)
class PairingEstimate:
    """Convergence of per-orbit total proximity toward its height-pairing limit.

    ``limit_prediction`` = h_phi(beta) + int lambda dmu at the real place
    (finite places integrate to zero by good reduction). ``totals`` carries
    (order, size, total, gap); the empirical rate constant rescales the gap
    by the pairing convergence shape sqrt-size shape.
    """

    beta: str
    limit_prediction: float
    canonical_height: HeightValue
    totals: tuple[tuple[int, int, float, float], ...]
    empirical_rate_constant: float


def az_pairing_estimate(beta, n_max: int, min_size: int = 1, tol: float = 1e-10) -> PairingEstimate:
    """Per-orbit total lambda sums against the pairing limit, for N <= n_max.

    beta must be rational and non-preperiodic here: the scan relies on the
    exact integer pairing values.
    """
    beta = beta.as_fraction() if isinstance(beta, AlgebraicNumber) else Fraction(beta)
    if is_preperiodic_rational(beta):
        raise PreperiodicInputError(f"{beta} is preperiodic")
    h_phi = canonical_height(beta, 2, tol)
    limit = h_phi.value + lambda_integral(beta, ARCH)
    rows = []
    rate = 0.0
    bf = float(beta)
    for n in range(1, n_max + 1):
        x = conjugates_fast(n)
        size = int(x.size)
        if size < min_size:
            continue
        f_val = orbit_value(n, beta)
        if f_val == 0:
            continue
        lam = -np.log(np.abs(x - bf) / (np.maximum(np.abs(x), 1.0) * max(abs(bf), 1.0)))
        arch = float(lam.mean())
        finite = math.log(abs(f_val)) / size if abs(f_val) > 1 else 0.0
        total = arch + finite
        gap = abs(total - limit)
        rows.append((n, size, total, gap))
        if size > 1:
            shape = (1 + math.log(math.sqrt(size))) / math.sqrt(size)
            rate = max(rate, gap / shape)
    return PairingEstimate(
        beta=str(beta),
        limit_prediction=limit,
        canonical_height=h_phi,
        totals=tuple(rows),
        empirical_rate_constant=rate,
    )


def measure_invariance_gap(d: int, monomial_degree: int, prec_digits: int = 25) -> float:
    """|int f(T_d(x)) dmu - int f dmu| for f = x^k: the invariance witness."""
    with mp.workdps(prec_digits):
        def lhs(t):
            return cheb_eval(d, 2 * mp.cos(t)) ** monomial_degree

        def rhs(t):
            return (2 * mp.cos(t)) ** monomial_degree

        a = mp.quad(lhs, [0, mp.pi]) / mp.pi
        b = mp.quad(rhs, [0, mp.pi]) / mp.pi
        return float(abs(a - b))
