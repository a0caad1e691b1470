"""Command-line harness: orbit reports, height computations, S-integrality
sweeps, equidistribution scans, two-log bounds, and the uniform-count
experiment.

Exit codes: 0 when every emitted check passes, 2 when any check fails,
1 on a usage error (malformed beta, bad place list, unknown flags).

beta grammar: "p/q" (or "p") for rationals; "poly:c0,c1,...,cd@k" for an
algebraic number by minimal-polynomial coefficients (lowest degree first)
with embedding index k in the deterministic root order (default 0).
"""

from __future__ import annotations

import argparse
import math
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from .algebraic import AlgebraicNumber, algebraic_number
from .baker import convergent_scan, proximity_bound_check
from .chebyshev import (
    cheb_eval,
    cheb_poly,
    is_preperiodic_rational,
    minpoly_conjugate_residuals,
    minpoly_identity_mod,
    minpoly_spot_checks,
    orbit_size,
    preperiodic_orbit,
)
from .equidist import (
    arch_discrepancy_fast,
    discrepancy,
    fitted_slope,
    lambda_integral,
    log_plus_integral,
)
from .errors import ChebdynError, DomainError
from .factorint import euler_phi, factor_counts, is_prime, strip_primes
from .heights import (
    canonical_height,
    dobrowolski_floor,
    weil_height_algebraic,
    weil_height_rational,
)
from .integrality import ARCH, Place, PlaceSet, is_s_integral, near_orbit_scan, pairing_value
from .reports import all_checks_pass, build_report, make_check, write_csv, write_json

DEFAULT_SIZE_CONSTANT = 2.0  # threshold c in the size cutoff c * D^12

USAGE_ERROR = 1
CHECK_FAILURE = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit(2); the contract wants 1
        raise UsageError(message)


def parse_beta(text: str):
    """See the module docstring for the accepted grammar."""
    text = text.strip()
    if text.startswith("poly:"):
        body = text[5:]
        index = 0
        if "@" in body:
            body, idx_text = body.rsplit("@", 1)
            try:
                index = int(idx_text)
            except ValueError:
                raise UsageError(f"bad embedding index {idx_text!r}") from None
        try:
            coeffs = [int(t) for t in body.split(",")]
        except ValueError:
            raise UsageError(f"bad coefficient list {body!r}") from None
        try:
            return algebraic_number(coeffs, index)
        except ChebdynError as exc:
            raise UsageError(str(exc)) from None
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed beta {text!r}") from None


def parse_places(text: str) -> PlaceSet:
    try:
        ps = PlaceSet.parse(text)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    for p in ps.finite_primes:
        if not is_prime(p):
            raise UsageError(f"{p} is not prime")
    return ps


def _beta_height(beta):
    if isinstance(beta, AlgebraicNumber):
        return weil_height_algebraic(beta)
    return weil_height_rational(beta)


def _beta_degree(beta) -> int:
    return beta.degree if isinstance(beta, AlgebraicNumber) else 1


def _beta_label(beta) -> str:
    if isinstance(beta, AlgebraicNumber):
        return f"poly:{','.join(map(str, beta.minpoly.coeffs))}@{beta.index}"
    return str(beta)


def _emit(report, args, csv_payload=None):
    text = write_json(report, args.output)
    if args.output is None:
        sys.stdout.write(text)
    if csv_payload is not None and getattr(args, "csv", None):
        header, rows = csv_payload
        write_csv(header, rows, args.csv)
    return 0 if all_checks_pass(report) else CHECK_FAILURE


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_orbit(args):
    n = args.N
    orbit = preperiodic_orbit(n)
    residual = float(minpoly_conjugate_residuals(n).max())
    checks = [
        make_check("minpoly-monic", orbit.minpoly.is_monic, orbit.minpoly.coeffs[-1], 1),
        make_check("degree-equals-orbit-size", orbit.minpoly.degree == orbit.size, orbit.minpoly.degree, orbit.size),
        make_check("conjugate-residual", residual <= 1e-9, residual, 1e-9),
        make_check("integer-point-consistency", minpoly_spot_checks(n), None, None),
        make_check("palindromic-identity-mod-p", minpoly_identity_mod(n), None, None),
        make_check(
            "conjugates-in-julia-interval",
            all(abs(c.value) <= 2 + 1e-12 for c in orbit.conjugates),
            max(abs(c.value) for c in orbit.conjugates),
            2,
        ),
    ]
    results = {
        "order": n,
        "size": orbit.size,
        "eulerPhi": euler_phi(n),
        "minpoly": list(orbit.minpoly.coeffs),
        "conjugates": [c.value for c in orbit.conjugates],
        "conjugateErrorBounds": [c.error_bound for c in orbit.conjugates],
    }
    report = build_report("chebdyn orbit", {"N": n}, results, checks)
    return _emit(report, args)


def cmd_cheb(args):
    poly = cheb_poly(args.n)
    results = {"n": args.n, "coeffs": list(poly.coeffs)}
    checks = []
    if args.at is not None:
        z = parse_beta(args.at)
        if isinstance(z, AlgebraicNumber):
            raise UsageError("cheb evaluation expects a rational point")
        val = cheb_eval(args.n, z)
        results["point"] = str(z)
        results["value"] = str(val)
        # composition cross-check through any nontrivial factor split
        for m in range(2, args.n):
            if args.n % m == 0:
                other = cheb_eval(args.n // m, cheb_eval(m, z))
                checks.append(make_check("composition-identity", other == val, str(other), str(val)))
                break
    report = build_report("chebdyn cheb", {"n": args.n, "at": args.at}, results, checks)
    return _emit(report, args)


def cmd_height(args):
    beta = parse_beta(args.beta)
    h = _beta_height(beta)
    results = {
        "beta": _beta_label(beta),
        "degree": _beta_degree(beta),
        "height": h.value,
        "errorBound": h.error_bound,
        "method": h.method,
    }
    report = build_report("chebdyn height", {"beta": args.beta}, results, [])
    return _emit(report, args)


def cmd_canonical_height(args):
    beta = parse_beta(args.beta)
    h_phi = canonical_height(beta, args.d, args.tol)
    h = _beta_height(beta)
    results = {
        "beta": _beta_label(beta),
        "degree": args.d,
        "canonicalHeight": h_phi.value,
        "errorBound": h_phi.error_bound,
        "method": h_phi.method,
        "weilHeight": h.value,
        "heightGap": h.value - h_phi.value,
    }
    checks = [
        make_check("canonical-height-nonnegative", h_phi.value >= -args.tol, h_phi.value, 0.0)
    ]
    report = build_report(
        "chebdyn canonical-height",
        {"beta": args.beta, "d": args.d, "tol": args.tol},
        results,
        checks,
    )
    return _emit(report, args)


def cmd_sintegral(args):
    beta = parse_beta(args.beta)
    places = parse_places(args.S)
    orbit = preperiodic_orbit(args.N)
    rep = is_s_integral(orbit, beta, places)
    results = {
        "orbit": args.N,
        "beta": _beta_label(beta),
        "S": str(places),
        "isSIntegral": rep.is_s_integral,
        "meetingPrimes": {str(p): e for p, e in sorted(rep.meeting_primes.items())},
        "witness": rep.witness,
    }
    checks = [
        make_check(
            "meeting-primes-inside-S-iff-integral",
            rep.is_s_integral == all(p in places.finite_primes for p in rep.meeting_primes),
            None,
            None,
        )
    ]
    report = build_report(
        "chebdyn sintegral", {"beta": args.beta, "N": args.N, "S": args.S}, results, checks
    )
    return _emit(report, args)


def _scan_orbits(beta, places, n_max, size_threshold):
    lead_primes = ()
    if isinstance(beta, AlgebraicNumber) and not beta.is_rational:
        lead_primes = tuple(factor_counts(beta.leading))
    s_fin = set(places.finite_primes)
    rows = []
    exceptional = 0
    for n in range(1, n_max + 1):
        val = pairing_value(n, beta)
        if val == 0:
            continue
        if strip_primes(val, s_fin | set(lead_primes)) != 1:
            continue
        size = orbit_size(n)
        meets = {}
        v = abs(val)
        for p in sorted(s_fin):
            e = 0
            while v % p == 0:
                v //= p
                e += 1
            if e:
                meets[p] = e
        rows.append((n, size, meets))
        if size > size_threshold:
            exceptional += 1
    return rows, exceptional


def cmd_scan(args):
    beta = parse_beta(args.beta)
    places = parse_places(args.S)
    if isinstance(beta, AlgebraicNumber):
        preper = beta.is_preperiodic
    else:
        preper = is_preperiodic_rational(beta)
    if preper:
        raise UsageError(f"beta {args.beta} is preperiodic; the scan needs a wandering point")
    degree = _beta_degree(beta)
    threshold = args.size_constant * degree**12
    rows, exceptional = _scan_orbits(beta, places, args.Nmax, threshold)
    s_fin = places.finite_primes
    stabilization = max((n for n, _, _ in rows), default=0)
    results = {
        "beta": _beta_label(beta),
        "S": str(places),
        "Nmax": args.Nmax,
        "sizeThreshold": threshold,
        "sizeConstant": args.size_constant,
        "sIntegralOrbits": [
            {"N": n, "size": size, "meetingPrimes": {str(p): e for p, e in m.items()}}
            for n, size, m in rows
        ],
        "exceptionalCount": exceptional,
        "stabilizationPoint": stabilization,
        "maxObservedOrbitSize": max((size for _, size, _ in rows), default=0),
    }
    checks = [
        make_check(
            "exceptional-orbits-at-most-Sfin",
            exceptional <= len(s_fin),
            exceptional,
            len(s_fin),
        )
    ]
    report = build_report(
        "chebdyn scan",
        {
            "beta": args.beta,
            "S": args.S,
            "Nmax": args.Nmax,
            "sizeConstant": args.size_constant,
        },
        results,
        checks,
    )
    csv_rows = [(n, size, ";".join(f"{p}^{e}" for p, e in m.items())) for n, size, m in rows]
    return _emit(report, args, (["N", "orbit_size", "meeting_primes_in_S"], csv_rows))


def cmd_equidist(args):
    beta = parse_beta(args.beta)
    if isinstance(beta, AlgebraicNumber):
        raise UsageError("equidistribution scans take a rational beta")
    if is_preperiodic_rational(beta):
        raise UsageError("beta is preperiodic")
    place = ARCH if args.place == "inf" else Place(int(args.place))
    orders = range(1, args.Nmax + 1)
    if args.primes_only:
        orders = [n for n in orders if is_prime(n) and n >= args.Nmin]
    else:
        orders = [n for n in orders if n >= args.Nmin]
    rows = []
    for n in orders:
        if place.is_archimedean:
            rec = arch_discrepancy_fast(beta, n)
            rows.append((rec.orbit_order, rec.orbit_size, rec.discrepancy))
            continue
        # finite place: both the average and the integral vanish unless the
        # orbit meets beta at p, so the minimal polynomial is only built then
        val = pairing_value(n, beta)
        if val == 0:
            continue
        if val % place.p or beta.denominator % place.p == 0:
            rows.append((n, orbit_size(n), 0.0))
            continue
        rec = discrepancy(preperiodic_orbit(n), beta, place)
        rows.append((rec.orbit_order, rec.orbit_size, rec.discrepancy))
    sizes = [size for _, size, _ in rows if size > 1]
    discs = [d for _, size, d in rows if size > 1]
    slope = fitted_slope(sizes, discs) if len(sizes) > 4 else 0.0
    h_phi = canonical_height(beta, 2, 1e-10)
    results = {
        "beta": str(beta),
        "place": str(place),
        "Nmax": args.Nmax,
        "rows": len(rows),
        "fittedSlope": slope,
        "finalDiscrepancy": rows[-1][2] if rows else None,
        "logPlusIntegral": log_plus_integral(),
        "lambdaIntegral": lambda_integral(beta, place),
        "azLimitPrediction": h_phi.value + lambda_integral(beta, ARCH),
        "canonicalHeight": h_phi.value,
        "finitePlaceMeasureConvention": "canonical measure integrals vanish at finite places (good reduction)",
    }
    checks = []
    if args.slope_bound is not None:
        checks.append(make_check("fitted-slope", slope <= args.slope_bound, slope, args.slope_bound))
    report = build_report(
        "chebdyn equidist",
        {
            "beta": args.beta,
            "place": args.place,
            "Nmax": args.Nmax,
            "primesOnly": args.primes_only,
        },
        results,
        checks,
    )
    return _emit(report, args, (["N", "orbit_size", "discrepancy"], rows))


def cmd_baker(args):
    beta = parse_beta(args.beta)
    if not isinstance(beta, AlgebraicNumber):
        raise UsageError("the two-log scan needs an algebraic beta on the unit circle (poly:...)")
    scan = convergent_scan(beta, args.Nmax, args.eps, args.ceps)
    results = {
        "beta": _beta_label(beta),
        "eps": args.eps,
        "cEpsUsed": scan.c_eps,
        "explicitConstant": scan.explicit_constant,
        "calibratedConstant": scan.calibrated_constant,
        "convergents": len(scan.records),
        "truncated": scan.truncated,
    }
    checks = [
        make_check("no-gap-violations", scan.violations == 0, scan.violations, 0),
        make_check(
            "calibrated-below-explicit",
            scan.calibrated_constant <= scan.explicit_constant,
            scan.calibrated_constant,
            scan.explicit_constant,
        ),
    ]
    if args.prox_Nmax:
        prox = proximity_bound_check(beta, args.prox_Nmax, args.prox_eps, args.prox_ceps)
        results["proximity"] = {
            "Nmax": args.prox_Nmax,
            "eps": prox.eps,
            "cEps": prox.c_eps,
            "violations": prox.violations,
            "sandwichChecked": prox.sandwich_ok is not None,
            "sandwichOk": prox.sandwich_ok,
        }
        checks.append(
            make_check("orbit-proximity-bound", prox.violations == 0, prox.violations, 0)
        )
    report = build_report(
        "chebdyn baker",
        {"beta": args.beta, "eps": args.eps, "ceps": args.ceps, "Nmax": args.Nmax},
        results,
        checks,
    )
    csv_rows = [(r.a, r.n, r.lhs, r.rhs, r.status) for r in scan.records]
    return _emit(report, args, (["a", "N", "lhs", "rhs", "status"], csv_rows))


def cmd_cor33(args):
    beta = parse_beta(args.beta)
    if isinstance(beta, AlgebraicNumber):
        raise UsageError("the near-orbit scan takes a rational beta")
    rep = near_orbit_scan(beta, args.p, args.Nmax, args.eps)
    results = {
        "beta": str(beta),
        "p": args.p,
        "Nmax": args.Nmax,
        "threshold": str(rep.threshold),
        "singleFactorLevel": str(rep.single_factor_level),
        "flagged": [{"N": n, "maxValuation": str(v)} for n, v in rep.flagged],
        "nearMisses": [{"N": n, "maxValuation": str(v)} for n, v in rep.near_misses],
        "flaggedPointCount": rep.flagged_point_count,
        "orbitSizeConstant": rep.orbit_size_constant,
        "eps": args.eps,
    }
    checks = [
        make_check("at-most-one-flagged-point", rep.at_most_one, rep.flagged_point_count, 1)
    ]
    report = build_report(
        "chebdyn cor33",
        {"beta": args.beta, "p": args.p, "Nmax": args.Nmax, "eps": args.eps},
        results,
        checks,
    )
    return _emit(report, args)


@dataclass
class _SampledBeta:
    label: str
    value: object
    degree: int
    height: float


def _sample_betas(rng: random.Random, trials: int, height_cap: float, degree_cap: int):
    """Deterministic mixed sample of rational and quadratic wandering points."""
    out: list[_SampledBeta] = []
    bound = max(3, int(math.exp(height_cap)))
    while len(out) < trials:
        want_quadratic = degree_cap >= 2 and rng.random() < 0.5
        if not want_quadratic:
            num = rng.randint(-bound, bound)
            den = rng.randint(1, bound)
            q = Fraction(num, den)
            if is_preperiodic_rational(q) or q == 0:
                continue
            if weil_height_rational(q).value > height_cap + 1e-9:
                continue
            out.append(_SampledBeta(str(q), q, 1, weil_height_rational(q).value))
        else:
            a = rng.randint(1, 6)
            b = rng.randint(-12, 12)
            c = rng.randint(-12, 12)
            disc = b * b - 4 * a * c
            if disc == 0 or math.gcd(math.gcd(a, b), c) != 1:
                continue
            root = round(math.isqrt(abs(disc)) if disc > 0 else -1)
            if disc > 0 and root * root == disc:
                continue  # reducible
            try:
                beta = algebraic_number([c, b, a], 0)
            except ChebdynError:
                continue
            if beta.is_preperiodic:
                continue
            h = weil_height_algebraic(beta).value
            if h > height_cap + 1e-9:
                continue
            out.append(_SampledBeta(f"poly:{c},{b},{a}@0", beta, 2, h))
    return out


def cmd_theorem2(args):
    places = parse_places(args.S)
    s_fin = places.finite_primes
    rng = random.Random(args.seed)
    betas = _sample_betas(rng, args.trials, args.height_cap, args.Dcap)
    per_beta = []
    worst = 0
    for sb in betas:
        threshold = args.size_constant * sb.degree**12
        rows, exceptional = _scan_orbits(sb.value, places, args.Nmax, threshold)
        worst = max(worst, exceptional)
        per_beta.append(
            {
                "beta": sb.label,
                "degree": sb.degree,
                "height": sb.height,
                "sIntegralOrbits": len(rows),
                "exceptionalCount": exceptional,
                "threshold": threshold,
                "maxOrbitSize": max((size for _, size, _ in rows), default=0),
            }
        )
    curve = [
        {"D": d, "sizeThreshold": args.size_constant * d**12}
        for d in range(1, args.Dcap + 1)
    ]
    results = {
        "S": str(places),
        "trials": args.trials,
        "seed": args.seed,
        "Nmax": args.Nmax,
        "heightCap": args.height_cap,
        "sizeConstant": args.size_constant,
        "thresholdCurve": curve,
        "dobrowolskiC": args.dobrowolski_c,
        "dobrowolskiFloorD2": dobrowolski_floor(2, args.dobrowolski_c),
        "perBeta": per_beta,
        "worstExceptionalCount": worst,
        "maxObservedOrbitSizeOverall": max((b["maxOrbitSize"] for b in per_beta), default=0),
    }
    checks = [
        make_check(
            "exceptional-count-at-most-Sfin-for-every-beta",
            worst <= len(s_fin),
            worst,
            len(s_fin),
        )
    ]
    report = build_report(
        "chebdyn theorem2",
        {
            "S": args.S,
            "Dcap": args.Dcap,
            "heightCap": args.height_cap,
            "Nmax": args.Nmax,
            "trials": args.trials,
            "seed": args.seed,
            "sizeConstant": args.size_constant,
            "dobrowolskiC": args.dobrowolski_c,
        },
        results,
        checks,
    )
    csv_rows = [
        (b["beta"], b["degree"], b["height"], b["sIntegralOrbits"], b["exceptionalCount"])
        for b in per_beta
    ]
    return _emit(
        report, args, (["beta", "degree", "height", "s_integral_orbits", "exceptional_count"], csv_rows)
    )


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="chebdyn", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--output", help="write the JSON report here (default: stdout)")
        p.add_argument("--csv", help="write the CSV table here (where applicable)")

    p = sub.add_parser("orbit", help="exact preperiodic orbit data for one order N")
    p.add_argument("--N", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("cheb", help="Chebyshev polynomial coefficients and exact evaluation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--at", help="rational point to evaluate at")
    common(p)
    p.set_defaults(func=cmd_cheb)

    p = sub.add_parser("height", help="Weil height of a rational or algebraic number")
    p.add_argument("--beta", required=True)
    common(p)
    p.set_defaults(func=cmd_height)

    p = sub.add_parser("canonical-height", help="canonical height by iteration, with the h vs h_phi gap")
    p.add_argument("--beta", required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--tol", type=float, default=1e-9)
    common(p)
    p.set_defaults(func=cmd_canonical_height)

    p = sub.add_parser("sintegral", help="exact S-integrality verdict for one orbit")
    p.add_argument("--beta", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--S", required=True, help='comma list of places, e.g. "inf,2,3"')
    common(p)
    p.set_defaults(func=cmd_sintegral)

    p = sub.add_parser("scan", help="sweep orbits N <= Nmax for S-integrality")
    p.add_argument("--beta", required=True)
    p.add_argument("--S", required=True)
    p.add_argument("--Nmax", type=int, required=True)
    p.add_argument("--size-constant", type=float, default=DEFAULT_SIZE_CONSTANT,
                   help="c in the exceptional-orbit size cutoff c*D^12")
    common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("equidist", help="orbit-average vs integral discrepancies")
    p.add_argument("--beta", required=True)
    p.add_argument("--Nmax", type=int, required=True)
    p.add_argument("--Nmin", type=int, default=1)
    p.add_argument("--place", default="inf")
    p.add_argument("--primes-only", action="store_true")
    p.add_argument("--slope-bound", type=float, default=None,
                   help="emit a pass/fail check on the fitted log-log slope")
    common(p)
    p.set_defaults(func=cmd_equidist)

    p = sub.add_parser("baker", help="two-log lower bound along CF convergents of the angle")
    p.add_argument("--beta", required=True, help="poly:... algebraic point on the unit circle")
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--ceps", type=float, default=None,
                   help="override the assembled explicit constant")
    p.add_argument("--Nmax", type=int, default=10000)
    p.add_argument("--prox-Nmax", type=int, default=0,
                   help="also check the per-orbit proximity bound up to this order")
    p.add_argument("--prox-eps", type=float, default=0.5)
    p.add_argument("--prox-ceps", type=float, default=4.0)
    common(p)
    p.set_defaults(func=cmd_baker)

    p = sub.add_parser("cor33", help="p-adically near orbits scan (at most one expected)")
    p.add_argument("--beta", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--Nmax", type=int, required=True)
    p.add_argument("--eps", type=float, default=0.5)
    common(p)
    p.set_defaults(func=cmd_cor33)

    p = sub.add_parser("theorem2", help="seeded uniform-count experiment over sampled beta")
    p.add_argument("--S", required=True)
    p.add_argument("--Dcap", type=int, default=2)
    p.add_argument("--height-cap", type=float, default=math.log(100))
    p.add_argument("--Nmax", type=int, default=2000)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--size-constant", type=float, default=DEFAULT_SIZE_CONSTANT)
    p.add_argument("--dobrowolski-c", type=float, default=0.25)
    common(p)
    p.set_defaults(func=cmd_theorem2)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except ChebdynError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
