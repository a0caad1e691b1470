import math
import random
from fractions import Fraction

import pytest

from chebdyn import (
    BakerInstance,
    DomainError,
    PreperiodicInputError,
    algebraic_number,
    angle_rational_gap,
    assembled_constant,
    baker_lower_bound,
    certified_angle,
    convergent_scan,
    proximity_bound_check,
)

#: palindromic quadratics a x^2 + b x + a with |b| < 2a: both roots on |z| = 1
UNIT_CIRCLE_POINTS = [
    (5, -6, 5),
    (13, -10, 13),
    (25, -14, 25),
    (17, -16, 17),
    (29, -4, 29),
]


def test_baker_bound_example():
    inst = BakerInstance(d1=2, log_a1=0.5, log_a2=0.5, b1=1, b2=-3)
    assert baker_lower_bound(inst) == -21600 * 16 * 0.25 * 100


def test_baker_bound_doubling_log_a2():
    # with log B below 10 the bound is linear in log A2
    a = BakerInstance(d1=2, log_a1=0.5, log_a2=0.5, b1=1, b2=-2)
    b = BakerInstance(d1=2, log_a1=0.5, log_a2=1.0, b1=1, b2=-2)
    assert math.log(a.big_b) < 10 and math.log(b.big_b) < 10
    assert abs(baker_lower_bound(b) - 2 * baker_lower_bound(a)) < 1e-6


def test_baker_bound_monotonicity():
    rng = random.Random(2)
    for _ in range(300):
        d1 = rng.randint(1, 6)
        la1 = 1 / d1 + rng.random() * 3
        la2 = 1 / d1 + rng.random() * 3
        b1 = rng.choice([1, -1]) * rng.randint(1, 10**6)
        b2 = rng.choice([1, -1]) * rng.randint(1, 10**6)
        base = baker_lower_bound(BakerInstance(d1, la1, la2, b1, b2))
        assert baker_lower_bound(BakerInstance(d1 + 1, la1, la2, b1, b2)) <= base + 1e-9
        assert baker_lower_bound(BakerInstance(d1, la1 * 1.5, la2, b1, b2)) <= base + 1e-9
        assert baker_lower_bound(BakerInstance(d1, la1, la2 * 1.5, b1, b2)) <= base + 1e-9


def test_baker_instance_validation():
    with pytest.raises(DomainError):
        BakerInstance(d1=2, log_a1=0.1, log_a2=0.5, b1=1, b2=1)  # log A1 < 1/D1
    with pytest.raises(DomainError):
        BakerInstance(d1=2, log_a1=0.5, log_a2=0.5, b1=0, b2=1)


def test_certified_angle():
    beta = algebraic_number([5, -6, 5], 1)  # (3+4i)/5
    theta, err = certified_angle(beta)
    assert abs(float(theta) - math.atan2(4, 3) / (2 * math.pi)) < 1e-12
    assert err < 1e-20


def test_certified_angle_rejects_roots_of_unity_and_off_circle():
    with pytest.raises(DomainError):
        certified_angle(algebraic_number([1, 1, 1]))  # zeta_3: zero height
    with pytest.raises(DomainError):
        certified_angle(algebraic_number([-2, 0, 1]))  # sqrt(2): |z| != 1


def test_angle_gap_examples():
    beta = algebraic_number([5, -6, 5], 1)
    theta0 = math.atan2(4, 3) / (2 * math.pi)
    rec = angle_rational_gap(beta, 1, 7, eps=0.1, c_eps=1.0)
    assert abs(rec.lhs - math.log(abs(1 / 7 - theta0))) < 1e-9
    assert rec.lhs == pytest.approx(-5.3546, abs=2e-4)
    assert rec.status == "holds"
    # the linear-form identity: lhs = log|a log1 - N log beta| - log(2 pi N)
    assert abs(rec.linear_form_log - (rec.lhs + math.log(2 * math.pi * 7))) < 1e-12

    far = angle_rational_gap(beta, 1, 2, eps=0.1, c_eps=1.0)
    assert far.lhs == pytest.approx(math.log(abs(0.5 - theta0)), abs=1e-9)
    assert far.status == "holds"


def test_angle_gap_validation():
    beta = algebraic_number([5, -6, 5], 1)
    with pytest.raises(DomainError):
        angle_rational_gap(beta, 1, 1, 0.1, 1.0)
    with pytest.raises(DomainError):
        angle_rational_gap(beta, 2, 4, 0.1, 1.0)


def test_convergent_scan_one_point():
    beta = algebraic_number([5, -6, 5], 1)
    scan = convergent_scan(beta, 10**4, eps=0.1)
    assert scan.violations == 0
    assert len(scan.records) >= 7
    assert scan.calibrated_constant <= scan.explicit_constant
    assert not scan.truncated
    assert (1, 7) in [(r.a, r.n) for r in scan.records]


def test_assembled_constant_grows_with_small_eps():
    beta = algebraic_number([5, -6, 5], 1)
    assert assembled_constant(beta, 0.05) > assembled_constant(beta, 0.5)


def test_proximity_check_beta_3():
    pc = proximity_bound_check(3, 30, eps=0.5, c_eps=1.0)
    assert pc.violations == 0
    assert pc.sandwich_ok is True
    # |beta| > 2: every proximity is at most -log(|beta| - 2) = 0
    assert all(r.proximity <= 0 + 1e-12 for r in pc.records)


def test_proximity_constant_one_counterexample():
    # the order-24 orbit crowds beta = 1/2 (2cos(5 pi/12) = 0.5176...):
    # proximity 4.04 exceeds (h+1) sqrt(4) = 3.39, so C_eps = 1 is not a
    # valid uniform constant; the shape needs the calibrated constant below
    pc = proximity_bound_check(Fraction(1, 2), 24, eps=0.5, c_eps=1.0)
    bad = [r for r in pc.records if not r.ok]
    assert [r.orbit_order for r in bad] == [24]


def test_proximity_check_seeded_with_calibrated_constant():
    rng = random.Random(1009)
    worst = 0.0
    betas = []
    while len(betas) < 25:
        q = Fraction(rng.randint(-100, 100), rng.randint(1, 100))
        if q in (0,) or abs(q) > 100:
            continue
        from chebdyn import is_preperiodic_rational, weil_height_rational

        if is_preperiodic_rational(q) or weil_height_rational(q).value > math.log(100):
            continue
        betas.append(q)
    for q in betas:
        pc = proximity_bound_check(q, 120, eps=0.5, c_eps=4.0)
        assert pc.violations == 0, q
        if pc.sandwich_ok is not None:
            assert pc.sandwich_ok


def test_proximity_rejects_preperiodic():
    with pytest.raises(PreperiodicInputError):
        proximity_bound_check(1, 10)
