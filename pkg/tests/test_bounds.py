import math

import numpy as np
import pytest

from varietybounds.bounds import (
    OnVarietyError,
    axis_bounds,
    bound_report,
    coefficient_gamma,
    gamma,
    sep_lower,
    sep_upper,
    univariate_sep_upper,
)
from varietybounds.parser import parse
from varietybounds.polynomial import (
    BivariatePoly,
    Direction2,
    IdenticallyZeroError,
    Point2,
    UnivariatePoly,
    evaluate,
    partial,
    restrict_to_line,
    rotate_unitary,
    unitary_matrix,
)
from varietybounds.sampling import disk, random_instances, random_poly, random_univariate

from conftest import rel_err

SQRT2 = math.sqrt(2)
LN2 = math.log(2)


def naive_gamma(f, p):
    """gamma via one explicit differentiation per (i, k-i)."""
    f0 = evaluate(f, p)
    best = 0.0
    for k in range(1, f.degree + 1):
        for i in range(k + 1):
            v = abs(evaluate(partial(f, i, k - i), p) / f0)
            best = max(best, v ** (1.0 / k))
    return best


def test_gamma_circle_origin(circle):
    assert gamma(circle, Point2(0, 0)) == pytest.approx(SQRT2, rel=1e-15)


def test_gamma_line():
    assert gamma(parse("x"), Point2(1, 0)) == 1.0


def test_gamma_circle_off_center(circle):
    # hand/sympy value: max(8/24, sqrt(2/24)) = 1/3
    p = Point2(3, 4)
    assert gamma(circle, p) == pytest.approx(1 / 3, rel=1e-14)
    assert gamma(circle, p) == pytest.approx(naive_gamma(circle, p), rel=1e-12)


def test_gamma_matches_naive(rng):
    for f, p in random_instances(rng, 100, 8):
        assert rel_err(gamma(f, p), naive_gamma(f, p)) < 1e-10


def test_gamma_errors(circle):
    with pytest.raises(OnVarietyError):
        gamma(circle, Point2(1, 0))
    with pytest.raises(IdenticallyZeroError):
        gamma(parse("0"), Point2(0, 0))
    assert gamma(parse("5"), Point2(1, 2)) == 0.0


def test_sep_lower_examples(circle):
    assert sep_lower(circle, Point2(0, 0)) == pytest.approx(LN2 / 2, rel=1e-14)
    assert sep_lower(parse("x"), Point2(1, 0)) == pytest.approx(LN2 / SQRT2, rel=1e-15)
    assert sep_lower(parse("5"), Point2(0, 0)) == math.inf
    with pytest.raises(OnVarietyError):
        sep_lower(circle, Point2(0, 1))


def test_sep_upper_examples(circle):
    assert sep_upper(circle, Point2(0, 0)) == pytest.approx(2 * SQRT2, rel=1e-14)
    assert sep_upper(parse("x"), Point2(1, 0)) == 2.0
    assert sep_upper(parse("5"), Point2(0, 0)) == math.inf


def test_report_invariants(rng):
    for f, p in random_instances(rng, 100, 8):
        r = bound_report(f, p)
        assert r.gamma == max(row.max_ratio for row in r.per_order)
        assert r.lower >= r.lower_coarse
        assert r.lower <= r.upper
        assert r.upper / r.lower == pytest.approx(2 * f.degree * SQRT2 / LN2, rel=1e-14)
        assert [row.k for row in r.per_order] == list(range(1, f.degree + 1))


def test_scale_invariance(rng):
    for f, p in random_instances(rng, 50, 6):
        c = complex(*rng.normal(size=2)) * 10 ** rng.uniform(-5, 5)
        g = BivariatePoly(f.coeffs * c)
        a, b = bound_report(f, p), bound_report(g, p)
        assert rel_err(a.gamma, b.gamma) < 1e-12
        assert rel_err(a.lower, b.lower) < 1e-12
        assert rel_err(a.upper, b.upper) < 1e-12


def test_high_degree_no_overflow():
    f = parse("x^100 + y^100 - 1")
    r = bound_report(f, Point2(0.5, 0.5))
    assert math.isfinite(r.gamma) and r.gamma > 0
    assert r.lower < r.upper


def test_univariate_examples():
    g = UnivariatePoly([-1, 0, 1])
    # (C(2,1) 1! 8/6, sqrt(C(2,2) 2! 8/2)) = (8/3, sqrt 8)
    assert univariate_sep_upper(g, 3) == pytest.approx(8 / 3, rel=1e-15)
    assert univariate_sep_upper(g, 3, form="paper") == pytest.approx(8 / 3, rel=1e-15)
    # the circle-axis sanity gate: t^2 - 1 at 0 has true distance exactly 1
    assert univariate_sep_upper(g, 0) == 1.0
    assert univariate_sep_upper(g, 0, form="paper") == pytest.approx(SQRT2)
    a = 0.3 - 1.7j
    for z in (0, 2j, 5 - 5j):
        assert univariate_sep_upper(UnivariatePoly([-a, 1]), z) == pytest.approx(abs(z - a), rel=1e-12)
    with pytest.raises(OnVarietyError):
        univariate_sep_upper(g, 1)
    with pytest.raises(ValueError):
        univariate_sep_upper(g, 0, form="other")


def test_univariate_bounds_roots(rng):
    for _ in range(200):
        g = random_univariate(rng, int(rng.integers(1, 11)))
        z = complex(disk(rng, 2.0))
        true = min(abs(z - r) for r in np.roots(g.coeffs[::-1]))
        sharp = univariate_sep_upper(g, z)
        assert sharp >= true * (1 - 1e-9)
        assert univariate_sep_upper(g, z, form="paper") >= sharp * (1 - 1e-12)


def test_axis_bounds_examples(circle):
    assert axis_bounds(circle, Point2(0, 0)) == (1.0, 1.0)
    assert axis_bounds(parse("x*y - 1"), Point2(0, 0)) == (math.inf, math.inf)
    assert axis_bounds(parse("x - 2"), Point2(0, 5)) == (2.0, math.inf)
    with pytest.raises(OnVarietyError):
        axis_bounds(circle, Point2(1, 0))


def test_axis_bounds_are_upper_bounds(rng):
    for f, p in random_instances(rng, 50, 6):
        ax, ay = axis_bounds(f, p)
        # nearest root on the horizontal and vertical lines, by companion eigenvalues
        for u, b in (((1, 0), ax), ((0, 1), ay)):
            g = restrict_to_line(f, p, Direction2(*u))
            if g.degree == 0:
                assert b == math.inf
                continue
            true = min(abs(r) for r in np.roots(g.coeffs[::-1]))
            assert b >= true * (1 - 1e-9)


def test_coefficient_gamma_examples(circle):
    assert coefficient_gamma(circle) == pytest.approx(SQRT2, rel=1e-15)
    assert coefficient_gamma(parse("1 + x*y")) == 1.0
    with pytest.raises(ValueError):
        coefficient_gamma(parse("x + y"))


def test_two_form_gamma_identity(rng):
    for _ in range(200):
        f = random_poly(rng, int(rng.integers(1, 9)))
        assert rel_err(coefficient_gamma(f), gamma(f, Point2(0, 0))) <= 1e-12


def test_bounds_rotation_consistent(rng):
    """After a unitary change of coordinates the bounds still bracket each other's sep."""
    for f, p in random_instances(rng, 30, 6):
        th, ps = rng.uniform(-math.pi, math.pi, 2)
        F = rotate_unitary(f, th, ps)
        q = Point2(*(unitary_matrix(th, ps).conj().T @ np.array([p.x, p.y])))
        assert rel_err(evaluate(F, q), evaluate(f, p)) < 1e-10
        a, b = bound_report(f, p), bound_report(F, q)
        # both brackets contain the same distance, so they must overlap
        assert a.lower <= b.upper and b.lower <= a.upper
