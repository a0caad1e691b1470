"""Places of Q, chordal metrics, local proximity, and exact S-integrality.

Every per-place quantity uses the plain absolute value of the place (the
ordinary one at infinity, |p|_p = 1/p at a finite prime); number-field
normalization weights are absorbed by averaging over the Galois orbit.

The finite-place analysis runs on two independent exact routes that the
test suite plays against each other:

  * resultant route: the primes meeting the orbit of zeta_N + 1/zeta_N at
    beta = r/s are the prime divisors of F = s^m psi_N(r/s);
  * Newton-polygon route: the p-adic valuations of beta - sigma(alpha) are
    the root valuations of the denominator-cleared psi_N(beta - x), read
    off the lower convex hull of (i, v_p(coefficient_i)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp
import numpy as np

from .algebraic import AlgebraicNumber
from .chebyshev import (
    PreperiodicOrbit,
    is_preperiodic_rational,
    orbit_value,
    preperiodic_orbit,
)
from .errors import CoincidentPointsError, DomainError, PrecisionError, PreperiodicInputError
from .factorint import factor_counts, is_prime, padic_valuation, strip_primes
from .intpoly import IntPoly, resultant
from .numerics import precision_ladder


class _Infinity:
    """The point at infinity of the projective line."""

    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q: the archimedean one (p is None) or a finite prime p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise DomainError(f"{self.p} is not prime")

    @property
    def is_archimedean(self) -> bool:
        return self.p is None

    def __str__(self) -> str:
        return "inf" if self.p is None else str(self.p)


ARCH = Place(None)


@dataclass(frozen=True)
class PlaceSet:
    """A finite set of places that must contain the archimedean place."""

    places: frozenset[Place]

    def __post_init__(self):
        if ARCH not in self.places:
            raise DomainError("a place set must contain the archimedean place")

    @staticmethod
    def of(*primes: int) -> "PlaceSet":
        return PlaceSet(frozenset({ARCH, *(Place(p) for p in primes)}))

    @staticmethod
    def parse(text: str) -> "PlaceSet":
        toks = [t.strip() for t in text.split(",") if t.strip()]
        if "inf" not in toks:
            raise DomainError('the place list must contain "inf"')
        primes = []
        for t in toks:
            if t == "inf":
                continue
            try:
                p = int(t)
            except ValueError:
                raise DomainError(f"bad place token {t!r}") from None
            primes.append(p)
        return PlaceSet.of(*primes)

    @property
    def finite_primes(self) -> tuple[int, ...]:
        return tuple(sorted(pl.p for pl in self.places if pl.p is not None))

    def __contains__(self, place: Place) -> bool:
        return place in self.places

    def __str__(self) -> str:
        return ",".join(["inf", *map(str, self.finite_primes)])


# ---------------------------------------------------------------------------
# chordal metric and local proximity
# ---------------------------------------------------------------------------


def _projective_coords(x):
    if isinstance(x, _Infinity):
        return (1, 0)
    if isinstance(x, (int, Fraction)):
        q = Fraction(x)
        return (q.numerator, q.denominator)
    raise DomainError(f"exact projective coordinates needed, got {x!r}")


def chordal_distance(x, y, place: Place = ARCH):
    """The v-adic chordal distance on the projective line:

    delta_v(x, y) = |x1 y2 - y1 x2|_v / (max(|x1|,|x2|)_v max(|y1|,|y2|)_v).

    At a finite place the inputs must be exact (Fraction or INFINITY), the
    value is an exact Fraction, and the ultrametric inequality pins it to
    [0, 1]. At the real place floats/complex are accepted; there the
    max-norm formula can reach 2 (opposite-sign points near unit modulus),
    the price of the normalization that makes the all-places proximity
    identity close exactly.
    """
    if place.is_archimedean:
        def coords(z):
            if isinstance(z, _Infinity):
                return (1.0, 0.0)
            if isinstance(z, (int, Fraction)):
                return (float(z), 1.0)
            value = getattr(z, "value", z)  # ApproxReal / ApproxComplex
            return (complex(value) if isinstance(value, complex) else float(value), 1.0)

        x1, x2 = coords(x)
        y1, y2 = coords(y)
        num = abs(x1 * y2 - y1 * x2)
        den = max(abs(x1), abs(x2)) * max(abs(y1), abs(y2))
        return num / den
    p = place.p
    x1, x2 = _projective_coords(x)
    y1, y2 = _projective_coords(y)
    cross = x1 * y2 - y1 * x2
    if cross == 0:
        return Fraction(0)
    vx = min(padic_valuation(x1, p) if x1 else math.inf, padic_valuation(x2, p) if x2 else math.inf)
    vy = min(padic_valuation(y1, p) if y1 else math.inf, padic_valuation(y2, p) if y2 else math.inf)
    v = padic_valuation(cross, p) - vx - vy
    return Fraction(1, p**v) if v >= 0 else Fraction(p ** (-v))


def local_lambda(x, y, place: Place = ARCH) -> float:
    """The local proximity lambda_{x,v}(y) = -log delta_v(x, y).

    Nonnegative at every finite place; at the real place it is bounded
    below by -log 2 (see chordal_distance). Coincident points have
    infinite proximity and are rejected.
    """
    delta = chordal_distance(x, y, place)
    if delta == 0:
        raise CoincidentPointsError(f"{x} and {y} coincide at {place}")
    if isinstance(delta, Fraction):
        return float(math.log(delta.denominator) - math.log(delta.numerator))
    return -math.log(delta)


# ---------------------------------------------------------------------------
# meeting primes and S-integrality
# ---------------------------------------------------------------------------


def _check_not_conjugate_rational(orbit: PreperiodicOrbit, beta: Fraction) -> int:
    f_val = orbit_value(orbit.order, beta)
    if f_val == 0:
        raise PreperiodicInputError(
            f"{beta} is a conjugate of the order-{orbit.order} orbit"
        )
    return f_val


def meeting_primes(orbit: PreperiodicOrbit, beta) -> dict[int, int]:
    """Primes p where some conjugate pair (sigma(alpha), beta) becomes
    p-adically close, with the total valuation of the pairing as weight.

    For rational beta = r/s this is the factorization support of
    F = s^m psi_N(r/s); primes dividing s sit at chordal distance 1 and do
    not appear. For algebraic beta it is the support of res(psi_N, f_beta)
    away from the primes dividing lead(f_beta) (there the orbit is integral
    while |beta|_w > 1, so the chordal distance is 1).
    """
    if isinstance(beta, AlgebraicNumber) and not beta.is_rational:
        if beta.preperiodic_order() == orbit.order:
            raise PreperiodicInputError("beta lies in the orbit itself")
        res = resultant(orbit.minpoly, beta.minpoly)
        if res == 0:
            raise PreperiodicInputError("beta shares a conjugate with the orbit")
        counts = factor_counts(res)
        for p in factor_counts(beta.leading):
            counts.pop(p, None)
        return counts
    beta = beta.as_fraction() if isinstance(beta, AlgebraicNumber) else Fraction(beta)
    f_val = _check_not_conjugate_rational(orbit, beta)
    return factor_counts(f_val)


@dataclass(frozen=True)
class SIntegralityReport:
    orbit_order: int
    beta: str
    meeting_primes: dict[int, int]
    is_s_integral: bool
    witness: int | None
    place_set: str


def is_s_integral(orbit: PreperiodicOrbit, beta, places: PlaceSet) -> SIntegralityReport:
    """Decide whether the orbit is S-integral relative to beta, exactly.

    The verdict only needs divisibility by the finite primes of S, so it is
    computed by stripping them from the exact pairing value; the witness is
    a prime factor of what remains.
    """
    meets = meeting_primes(orbit, beta)
    outside = {p: e for p, e in meets.items() if p not in set(places.finite_primes)}
    witness = min(outside) if outside else None
    return SIntegralityReport(
        orbit_order=orbit.order,
        beta=str(beta),
        meeting_primes=meets,
        is_s_integral=not outside,
        witness=witness,
        place_set=str(places),
    )


def pairing_value(order: int, beta) -> int:
    """Exact integer pairing of the order-N orbit against beta.

    s^m psi_N(r/s) for rational beta, res(psi_N, f_beta) for algebraic
    beta. Fast: linear in the orbit size, no polynomial expansion.
    """
    from .chebyshev import orbit_norm_quadratic

    if isinstance(beta, AlgebraicNumber) and not beta.is_rational:
        if beta.degree == 2:
            return orbit_norm_quadratic(order, beta.minpoly)
        return resultant(preperiodic_orbit(order).minpoly, beta.minpoly)
    beta = beta.as_fraction() if isinstance(beta, AlgebraicNumber) else Fraction(beta)
    return orbit_value(order, beta)


def s_integral_verdict(order: int, beta, places: PlaceSet, lead_primes=()) -> bool:
    """Fast exact S-integrality check without factorization."""
    v = pairing_value(order, beta)
    if v == 0:
        raise PreperiodicInputError("beta lies in the orbit")
    return strip_primes(v, set(places.finite_primes) | set(lead_primes)) == 1


# ---------------------------------------------------------------------------
# Newton polygons
# ---------------------------------------------------------------------------


def newton_polygon_valuations(g: IntPoly, p: int) -> list:
    """Multiset of p-adic valuations of the roots of g (ascending).

    Valuations are the negated slopes of the lower convex hull of
    (i, v_p(c_i)); zero roots contribute +infinity entries.
    """
    if g.is_zero:
        raise DomainError("Newton polygon of the zero polynomial")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    coeffs = list(g.coeffs)
    zeros = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        zeros += 1
    pts = []
    for i, c in enumerate(coeffs):
        if c:
            pts.append((i, padic_valuation(c, p)))
    # lower convex hull, left to right (monotone chain)
    hull: list[tuple[int, int]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    vals: list = [math.inf] * zeros
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = Fraction(y2 - y1, x2 - x1)
        vals.extend([-slope] * (x2 - x1))
    vals.sort(key=lambda v: (v is math.inf, v))
    return vals


def orbit_shift_poly(orbit: PreperiodicOrbit, beta: Fraction) -> IntPoly:
    """Denominator-cleared psi_N(beta - x); its roots are beta - sigma(alpha)."""
    beta = Fraction(beta)
    return orbit.minpoly.shifted_scaled_arg(beta.numerator, beta.denominator)


def root_of_unity_valuation(m: int, p: int):
    """v_p(1 - zeta_m): +inf at m=1, 1/((p-1) p^(n-1)) at m = p^n, else 0."""
    if m < 1:
        raise DomainError("order must be positive")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if m == 1:
        return math.inf
    n = 0
    while m % p == 0:
        m //= p
        n += 1
    if m == 1 and n >= 1:
        return Fraction(1, (p - 1) * p ** (n - 1))
    return Fraction(0)


# ---------------------------------------------------------------------------
# near-orbit scan at one finite place (at most one orbit can be p-adically
# very close to a fixed beta)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NearOrbitReport:
    """Orbits N <= n_max carrying a point p-adically closer to beta than the
    two-factor root-of-unity barrier 2/(p-1).

    Why 2/(p-1) and strict: for distinct preperiodic points written through
    roots of unity, alpha_1 - alpha_2 factors as a product of TWO cyclotomic
    differences, each of p-adic size at least p^(-1/(p-1)); so two points
    with v_p(beta - alpha_i) strictly above 2/(p-1) would force
    |alpha_1 - alpha_2|_p below the product floor p^(-2/(p-1)), which is
    impossible. At most one flagged point is therefore a theorem. The
    single-factor level 1/(p-1) does NOT separate points: v = 1/13 at p = 3
    has both -2 and 1 above it, and whenever an orbit meets beta the
    order-pN relatives land at exactly 1/(p-1). Orbits whose best point
    falls in [1/(p-1), 2/(p-1)] are reported as ``near_misses``.
    """

    beta: str
    p: int
    n_max: int
    threshold: Fraction  # 2/(p-1), strict
    single_factor_level: Fraction  # 1/(p-1), informational
    flagged: tuple[tuple[int, Fraction], ...]  # (orbit order, max root valuation)
    near_misses: tuple[tuple[int, Fraction], ...]
    flagged_point_count: int
    at_most_one: bool
    #: Galois-orbit size bound p log(p)/eps from the local counting argument
    orbit_size_constant: float = field(default=0.0)


def near_orbit_scan(beta, p: int, n_max: int, eps: float = 0.5) -> NearOrbitReport:
    """Scan orbits N <= n_max for points with v_p(beta - alpha) > 2/(p-1).

    Only orbits whose pairing value is divisible by p can carry a positive
    valuation, so the Newton polygon is computed for those alone.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    beta = Fraction(beta)
    if is_preperiodic_rational(beta):
        raise PreperiodicInputError(f"{beta} is preperiodic")
    threshold = Fraction(2, p - 1)
    single = Fraction(1, p - 1)
    flagged = []
    near = []
    point_count = 0
    for n in range(1, n_max + 1):
        f_val = orbit_value(n, beta)
        if f_val % p:
            continue
        orbit = preperiodic_orbit(n)
        vals = [v for v in newton_polygon_valuations(orbit_shift_poly(orbit, beta), p) if v is not math.inf]
        top = max(vals)
        if top > threshold:
            flagged.append((n, top))
            point_count += sum(1 for v in vals if v > threshold)
        elif top >= single:
            near.append((n, top))
    return NearOrbitReport(
        beta=str(beta),
        p=p,
        n_max=n_max,
        threshold=threshold,
        single_factor_level=single,
        flagged=tuple(flagged),
        near_misses=tuple(near),
        flagged_point_count=point_count,
        at_most_one=point_count <= 1,
        orbit_size_constant=p * math.log(p) / eps,
    )


# ---------------------------------------------------------------------------
# archimedean proximity
# ---------------------------------------------------------------------------


def arch_proximity(orbit: PreperiodicOrbit, beta) -> float:
    """max over conjugates of -log|sigma(alpha) - beta| at the real place.

    Escalates the conjugate precision when beta sits inside the float
    uncertainty of a conjugate; a genuine coincidence raises.
    """
    if isinstance(beta, AlgebraicNumber):
        if beta.preperiodic_order() == orbit.order:
            raise PreperiodicInputError("beta is a conjugate of the orbit")
        b, berr = complex(beta.embedding.value), beta.embedding.error_bound
    else:
        beta = Fraction(beta)
        _check_not_conjugate_rational(orbit, beta)
        b, berr = complex(beta), abs(float(beta)) * 2e-16
    vals = orbit.conjugates_array()
    gaps = np.abs(vals - b)
    i = int(np.argmin(gaps))
    if gaps[i] > 1e-6 + 8 * berr:
        return float(-math.log(gaps[i]))
    # conjugate too close for float64: recompute that gap at high precision
    for prec in precision_ladder(128):
        c = orbit.conjugate_mp(i, prec)
        with mp.workprec(prec):
            gap = abs(c - mp.mpc(b))
            tolerance = mp.mpf(2) ** (8 - prec) + berr
            if gap > 4 * tolerance:
                return float(-mp.log(gap))
    raise PrecisionError(
        f"beta is numerically indistinguishable from a conjugate of orbit {orbit.order}",
        best=None,
    )
