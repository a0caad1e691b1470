"""Certified complex root approximation for integer polynomials.

Roots are located by simultaneous iteration (mpmath's polyroots) at a
working precision that doubles on failure; each approximation is then
wrapped in an a posteriori inclusion disc of radius

    n * |f(z)| / |f'(z)|

inflated by a rigorous Horner rounding-error term. If the n discs are
pairwise disjoint, each contains exactly one root, so the radii are
honest error bounds.
"""

from __future__ import annotations

import mpmath as mp

from .errors import DomainError, PrecisionError
from .intpoly import IntPoly, resultant
from .numerics import ApproxComplex, FLOAT_EPS, precision_ladder


def _horner_with_error(coeffs_high, z, prec):
    """(value, rigorous bound on the evaluation rounding error)."""
    n = len(coeffs_high) - 1
    acc = mp.mpc(coeffs_high[0])
    mag = mp.mpf(abs(coeffs_high[0]))
    az = abs(z)
    for c in coeffs_high[1:]:
        acc = acc * z + c
        mag = mag * az + abs(c)
    # standard Horner bound: |fl(p(z)) - p(z)| <= gamma_{2n} * sum |c_i||z|^i
    u = mp.mpf(2) ** (1 - prec)
    gamma = (2 * n + 2) * u
    return acc, mag * gamma


def is_squarefree(f: IntPoly) -> bool:
    if f.is_zero:
        return False
    if f.degree <= 1:
        return True
    return resultant(f, f.derivative()) != 0


def complex_roots(f: IntPoly, precision: float = 1e-12) -> list[ApproxComplex]:
    """All complex roots of a squarefree f, each with error_bound <= precision.

    Output order is deterministic: ascending real part, then imaginary part.
    Raises DomainError for zero/constant/non-squarefree input, and
    PrecisionError (carrying the best achieved bound) if the precision
    ceiling is hit first.
    """
    if f.is_zero:
        raise DomainError("zero polynomial has no well-defined root set")
    if f.degree == 0:
        return []
    if not is_squarefree(f):
        raise DomainError("polynomial must be squarefree (separate the square part first)")

    n = f.degree
    coeffs_high = list(reversed(f.coeffs))
    best: list[ApproxComplex] | None = None
    best_bound = mp.inf
    for prec in precision_ladder(64):
        with mp.workprec(prec):
            try:
                roots = mp.polyroots(coeffs_high, maxsteps=120, extraprec=prec // 2)
            except mp.libmp.NoConvergence:
                continue
            deriv_high = [c * (n - i) for i, c in enumerate(coeffs_high[:-1])]
            radii = []
            ok = True
            for z in roots:
                fz, err_f = _horner_with_error(coeffs_high, z, prec)
                fpz, err_fp = _horner_with_error(deriv_high, z, prec)
                denom = abs(fpz) - err_fp
                if denom <= 0:
                    ok = False
                    break
                radii.append(n * (abs(fz) + err_f) / denom)
            if not ok:
                continue
            disjoint = all(
                abs(roots[i] - roots[j]) > radii[i] + radii[j]
                for i in range(n)
                for j in range(i + 1, n)
            )
            if not disjoint:
                continue
            out = []
            for z, r in zip(roots, radii):
                zc = complex(z)
                bound = float(r) + (abs(zc) + 1.0) * FLOAT_EPS
                out.append(ApproxComplex(zc, bound))
            out.sort(key=lambda a: (a.real, a.imag))
            worst = max(a.error_bound for a in out)
            if worst <= precision:
                return out
            if worst < best_bound:
                best, best_bound = out, worst
    raise PrecisionError(
        f"could not certify roots to {precision:g} within the precision ceiling",
        best=best,
    )


def real_root_intervals(f: IntPoly, precision: float = 1e-12):
    """(value, radius, is_real) triples; real roots are certified as real.

    With real coefficients the non-real roots come in conjugate pairs, so a
    certified disc meeting the real axis must contain a real root.
    """
    out = []
    for a in complex_roots(f, precision):
        is_real = abs(a.imag) <= a.error_bound
        out.append((a, is_real))
    return out
