import math
import random
from fractions import Fraction

import pytest
import sympy

from chebdyn import (
    DomainError,
    IntPoly,
    cheb_eval,
    cheb_poly,
    cyclotomic_coeffs,
    euler_phi,
    is_preperiodic_rational,
    orbit_size,
    orbit_value,
    preperiodic_orbit,
    resultant,
)
from chebdyn.chebyshev import (
    ChebMap,
    halved_minpoly,
    is_preperiodic_dynamic,
    minpoly_identity_exact,
    minpoly_identity_mod,
    orbit_norm_quadratic,
    preperiodic_order_of_minpoly,
)


def test_cheb_poly_examples():
    assert cheb_poly(1).coeffs == (0, 1)
    assert cheb_poly(2).coeffs == (-2, 0, 1)
    assert cheb_poly(4).coeffs == (2, 0, -4, 0, 1)  # recurrence applied twice


def test_cheb_eval_examples():
    assert cheb_eval(2, 3) == 7
    assert cheb_eval(3, 1) == -2  # matches 2cos(3*pi/3)
    assert cheb_eval(6, 5) == 12098  # = T_2(T_3(5)) = T_2(110)


def test_cheb_domain():
    with pytest.raises(DomainError):
        cheb_poly(0)
    with pytest.raises(DomainError):
        ChebMap(1)


def test_composition_identity_exact():
    rng = random.Random(2024)
    for _ in range(500):
        m = rng.randint(1, 12)
        n = rng.randint(1, max(1, 12 // m))
        z = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
        assert cheb_eval(m * n, z) == cheb_eval(m, cheb_eval(n, z))


def test_trig_identity():
    rng = random.Random(55)
    for _ in range(1000):
        n = rng.randint(1, 24)
        theta = rng.uniform(0, 2 * math.pi)
        val = cheb_eval(n, 2 * math.cos(theta))
        assert abs(val - 2 * math.cos(n * theta)) <= 1e-10 * n * n + 1e-12


def test_cyclotomic_against_sympy():
    x = sympy.Symbol("x")
    for n in list(range(1, 130)) + [105, 385, 512, 729, 1000]:
        mine = cyclotomic_coeffs(n)
        ref = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
        assert mine == [int(c) for c in ref], n


def test_orbit_examples():
    o1 = preperiodic_orbit(1)
    assert o1.minpoly.coeffs == (-2, 1) and o1.size == 1
    assert o1.conjugates[0].value == 2.0
    o4 = preperiodic_orbit(4)
    assert o4.minpoly.coeffs == (0, 1)
    assert len(o4.conjugates) == 1 and abs(o4.conjugates[0].value) < 1e-15
    o5 = preperiodic_orbit(5)
    assert o5.minpoly.coeffs == (-1, 1, 1)
    assert [round(c.value, 4) for c in o5.conjugates] == [0.618, -1.618]
    assert preperiodic_orbit(7).minpoly.coeffs == (-1, -2, 1, 1)


def test_orbit_size_examples():
    assert orbit_size(1) == 1
    assert orbit_size(5) == 2  # phi(5)/2
    assert orbit_size(12) == 2  # phi(12)/2
    for n in range(3, 1001):
        assert orbit_size(n) == euler_phi(n) // 2


def test_minpoly_against_sympy():
    x = sympy.Symbol("x")
    for n in range(1, 41):
        ref = sympy.minimal_polynomial(2 * sympy.cos(2 * sympy.pi / n), x)
        mine = halved_minpoly(n)
        assert [int(c) for c in sympy.Poly(ref, x).all_coeffs()[::-1]] == list(mine.coeffs), n


def test_minpoly_identity_exact_moderate():
    for n in range(1, 201):
        assert minpoly_identity_exact(n), n


def test_minpoly_identity_mod_random_orders():
    rng = random.Random(71)
    for n in rng.sample(range(201, 1001), 60):
        assert minpoly_identity_mod(n), n


def test_orbit_closure_under_dynamics():
    # T_d sends the order-N point to the point of order N/gcd(N, d)
    rng = random.Random(77)
    for _ in range(60):
        n = rng.randint(3, 120)
        d = rng.randint(2, 6)
        target = preperiodic_orbit(n // math.gcd(n, d))
        targets = [c.value for c in target.conjugates]
        for c in preperiodic_orbit(n).conjugates:
            image = cheb_eval(d, c.value)
            assert min(abs(image - t) for t in targets) < 1e-9


def test_preperiodic_rational_classification():
    assert is_preperiodic_rational(2)
    assert is_preperiodic_rational(1)  # N = 6: 2cos(pi/3) = 1
    assert not is_preperiodic_rational(3)  # outside the Julia interval
    for v in (-2, -1, 0, 1, 2):
        assert is_preperiodic_rational(v)
        assert is_preperiodic_dynamic(v)
    rng = random.Random(303)
    for _ in range(200):
        q = Fraction(rng.randint(-60, 60), rng.randint(1, 40))
        assert is_preperiodic_rational(q) == is_preperiodic_dynamic(q)


def test_preperiodic_order_of_minpoly():
    assert preperiodic_order_of_minpoly(halved_minpoly(30)) == 30
    assert preperiodic_order_of_minpoly(IntPoly.of(-2, 1)) == 1
    assert preperiodic_order_of_minpoly(IntPoly.of(-1, 1, 1)) == 5
    assert preperiodic_order_of_minpoly(IntPoly.of(-2, 0, 1)) == 8  # sqrt(2)
    assert preperiodic_order_of_minpoly(IntPoly.of(-2, -2, 1)) is None  # 1+sqrt(3)
    assert preperiodic_order_of_minpoly(IntPoly.of(-3, 1)) is None


def test_orbit_value_matches_minpoly_evaluation():
    rng = random.Random(88)
    for _ in range(250):
        n = rng.randint(1, 80)
        q = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        expected = halved_minpoly(n).eval_homogeneous(q.numerator, q.denominator)
        assert orbit_value(n, q) == expected


def test_orbit_norm_quadratic_matches_resultant():
    rng = random.Random(91)
    tried = 0
    while tried < 120:
        a = rng.randint(1, 7)
        b = rng.randint(-9, 9)
        c = rng.randint(-9, 9)
        f = IntPoly.of(c, b, a)
        if f.degree != 2 or b * b - 4 * a * c == 0:
            continue
        n = rng.randint(1, 40)
        assert orbit_norm_quadratic(n, f) == resultant(halved_minpoly(n), f)
        tried += 1


def test_conjugates_inside_julia_interval():
    for n in range(1, 301):
        assert all(abs(c.value) <= 2 + 1e-12 for c in preperiodic_orbit(n).conjugates)
