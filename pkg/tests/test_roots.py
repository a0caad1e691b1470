import math
import random

import pytest

from chebdyn import DomainError, IntPoly, complex_roots
from chebdyn.errors import PrecisionError
from chebdyn.roots import is_squarefree


def test_quadratic_formula_oracle():
    roots = complex_roots(IntPoly.of(-1, 1, 1), 1e-12)
    golden = (math.sqrt(5) - 1) / 2
    assert abs(roots[0].value - (-golden - 1)) <= roots[0].error_bound + 1e-15
    assert abs(roots[1].value - golden) <= roots[1].error_bound + 1e-15
    assert all(r.error_bound <= 1e-12 for r in roots)


def test_linear_and_gaussian():
    (r,) = complex_roots(IntPoly.of(-2, 1))
    assert r.value == 2.0
    ri, rj = complex_roots(IntPoly.of(1, 0, 1))
    assert abs(ri.value - (-1j)) < 1e-14
    assert abs(rj.value - 1j) < 1e-14


def test_order_is_deterministic():
    roots = complex_roots(IntPoly.of(-6, 11, -6, 1))  # roots 1, 2, 3
    assert [round(r.value.real) for r in roots] == [1, 2, 3]


def test_residual_certification():
    rng = random.Random(113)
    for _ in range(60):
        coeffs = [rng.randint(-9, 9) for _ in range(rng.randint(2, 5))]
        coeffs.append(rng.choice([1, 2, 3, -1]))
        f = IntPoly.from_coeffs(coeffs)
        if f.degree < 1 or not is_squarefree(f):
            continue
        roots = complex_roots(f, 1e-12)
        assert len(roots) == f.degree
        for r in roots:
            # |f| is Lipschitz near the root with constant sum |c_i| (1+|z|)^(d-1)
            lip = sum(abs(c) for c in f.coeffs) * (1 + abs(r.value)) ** (f.degree - 1)
            assert abs(f(r.value)) <= 2 * lip * r.error_bound + 1e-10


def test_rejects_non_squarefree_and_zero():
    with pytest.raises(DomainError):
        complex_roots(IntPoly.of(1, 2, 1))  # (x+1)^2
    with pytest.raises(DomainError):
        complex_roots(IntPoly.of())


def test_precision_ceiling_failure_carries_best(monkeypatch):
    monkeypatch.setenv("CHEB_PRECISION_BITS", "64")
    with pytest.raises(PrecisionError) as err:
        complex_roots(IntPoly.of(-1, 1, 1), 1e-40)
    assert err.value.best is not None  # best achieved approximation preserved
