"""Random test instances: polynomials with coefficients in the unit disk."""

from __future__ import annotations

import numpy as np

from .polynomial import BivariatePoly, Point2, UnivariatePoly, evaluate


def disk(rng: np.random.Generator, radius: float = 1.0, size=None):
    """Uniform samples from the complex disk of the given radius."""
    r = radius * np.sqrt(rng.random(size))
    t = 2 * np.pi * rng.random(size)
    return r * np.exp(1j * t)


def random_poly(rng: np.random.Generator, degree: int) -> BivariatePoly:
    a = np.zeros((degree + 1, degree + 1), dtype=complex)
    for k in range(degree + 1):
        for i in range(k + 1):
            a[i, k - i] = disk(rng)
    return BivariatePoly(a)


def random_univariate(rng: np.random.Generator, degree: int) -> UnivariatePoly:
    return UnivariatePoly(disk(rng, size=degree + 1))


def random_point(rng: np.random.Generator, radius: float = 2.0) -> Point2:
    x, y = disk(rng, radius, size=2)
    return Point2(complex(x), complex(y))


def random_instances(rng: np.random.Generator, n: int, max_degree: int,
                     radius: float = 2.0, reject_below: float = 1e-8):
    """Yield ``n`` pairs ``(f, p)`` with degree uniform in ``[1, max_degree]``.

    Points where ``|f(p)| < reject_below`` are redrawn.
    """
    for _ in range(n):
        f = random_poly(rng, int(rng.integers(1, max_degree + 1)))
        while True:
            p = random_point(rng, radius)
            if abs(evaluate(f, p)) >= reject_below:
                break
        yield f, p
