"""Dense bivariate and univariate polynomials over the complex numbers.

Coefficients are stored in a square ``(D+1, D+1)`` complex array ``a`` where
``a[i, j]`` multiplies ``x**i * y**j``; entries with ``i + j > D`` are always
zero.  Every object is immutable after construction.

The main entry points are :func:`taylor_shift` (recentering at a point, the
workhorse behind all derivative evaluations), :func:`restrict_to_line` and
:func:`rotate_unitary`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

MAX_DEGREE = 120

# i! for 0 <= i <= MAX_DEGREE, finite in double precision.
FACTORIALS = np.array([float(math.factorial(i)) for i in range(MAX_DEGREE + 1)])
LOG_FACTORIALS = np.array([math.lgamma(i + 1) for i in range(MAX_DEGREE + 1)])


class DegreeOverflowError(ValueError):
    """Raised when a polynomial exceeds :data:`MAX_DEGREE`."""


class IdenticallyZeroError(ValueError):
    """Raised by operations that are undefined for the zero polynomial."""


def _check_finite(value: complex, what: str) -> complex:
    value = complex(value)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ValueError(f"{what} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class Point2:
    """A point of C^2."""

    x: complex
    y: complex

    def __post_init__(self):
        object.__setattr__(self, "x", _check_finite(self.x, "x"))
        object.__setattr__(self, "y", _check_finite(self.y, "y"))

    def __iter__(self):
        yield self.x
        yield self.y

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)

    def norm(self) -> float:
        return math.hypot(abs(self.x), abs(self.y))


@dataclass(frozen=True)
class Direction2:
    """A unit vector of C^2 (Hermitian norm 1 within 1e-12)."""

    x: complex
    y: complex

    def __post_init__(self):
        x = _check_finite(self.x, "x")
        y = _check_finite(self.y, "y")
        n = math.hypot(abs(x), abs(y))
        if abs(n - 1.0) > 1e-12:
            raise ValueError(f"direction must have unit norm, got {n!r}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def normalized(cls, x: complex, y: complex) -> "Direction2":
        n = math.hypot(abs(x), abs(y))
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(complex(x) / n, complex(y) / n)

    def __iter__(self):
        yield self.x
        yield self.y


def _horner(coeffs: np.ndarray, z):
    """Evaluate ascending ``coeffs`` at ``z`` along the first axis."""
    acc = coeffs[-1]
    for c in coeffs[-2::-1]:
        acc = acc * z + c
    return acc


def _shift_1d(a: np.ndarray, c: complex, axis: int) -> None:
    """In-place Horner Taylor shift ``t -> t + c`` along ``axis`` of a 2-D array."""
    n = a.shape[axis] - 1
    if c == 0 or n <= 0:
        return
    if axis == 0:
        for i in range(n):
            for k in range(n - 1, i - 1, -1):
                a[k, :] += c * a[k + 1, :]
    else:
        for i in range(n):
            for k in range(n - 1, i - 1, -1):
                a[:, k] += c * a[:, k + 1]


@dataclass(frozen=True, eq=False)
class UnivariatePoly:
    """Polynomial in one variable; ``coeffs[k]`` multiplies ``t**k``.

    Trailing (high-order) exact zeros are trimmed on construction, so the
    leading coefficient is nonzero unless the polynomial is zero.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else c[:1] * 0
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs.size == 1 and self.coeffs[0] == 0

    def __call__(self, z: complex) -> complex:
        return complex(_horner(self.coeffs, complex(z)))

    def __eq__(self, other):
        if not isinstance(other, UnivariatePoly):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __repr__(self):
        return f"UnivariatePoly({self.coeffs.tolist()!r})"

    def derivative(self, k: int = 1) -> "UnivariatePoly":
        c = self.coeffs
        for _ in range(k):
            if c.size <= 1:
                return UnivariatePoly([0])
            c = c[1:] * np.arange(1, c.size)
        return UnivariatePoly(c)

    def shift(self, z: complex) -> "UnivariatePoly":
        """Return ``t -> g(z + t)``; coefficient k equals ``g^(k)(z) / k!``."""
        a = self.coeffs.copy().reshape(-1, 1)
        _shift_1d(a, complex(z), axis=0)
        return UnivariatePoly(a[:, 0])


@dataclass(frozen=True, eq=False)
class BivariatePoly:
    """Dense bivariate polynomial, normalized to its exact total degree."""

    coeffs: np.ndarray

    def __post_init__(self):
        a = np.array(self.coeffs, dtype=complex)
        if a.ndim != 2:
            raise ValueError("coefficient grid must be two-dimensional")
        if not np.all(np.isfinite(a)):
            raise ValueError("coefficients must be finite")
        ii, jj = np.nonzero(a)
        degree = int((ii + jj).max()) if ii.size else 0
        if degree > MAX_DEGREE:
            raise DegreeOverflowError(f"total degree {degree} exceeds {MAX_DEGREE}")
        grid = np.zeros((degree + 1, degree + 1), dtype=complex)
        rows = min(a.shape[0], degree + 1)
        cols = min(a.shape[1], degree + 1)
        grid[:rows, :cols] = a[:rows, :cols]
        grid.setflags(write=False)
        object.__setattr__(self, "coeffs", grid)

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, int], complex]) -> "BivariatePoly":
        """Build from ``{(i, j): coefficient}`` with ``i`` the power of x."""
        if not terms:
            return cls(np.zeros((1, 1)))
        n = max(i + j for i, j in terms) + 1
        if n - 1 > MAX_DEGREE:
            raise DegreeOverflowError(f"total degree {n - 1} exceeds {MAX_DEGREE}")
        a = np.zeros((n, n), dtype=complex)
        for (i, j), c in terms.items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in term {(i, j)}")
            a[i, j] += c
        return cls(a)

    @classmethod
    def constant(cls, c: complex) -> "BivariatePoly":
        return cls(np.array([[c]], dtype=complex))

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0, 0] == 0

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.coeffs.imag == 0))

    def terms(self) -> dict[tuple[int, int], complex]:
        """Nonzero coefficients keyed by ``(i, j)``, ordered by degree then i descending."""
        out = {}
        for k in range(self.degree, -1, -1):
            for i in range(k, -1, -1):
                c = self.coeffs[i, k - i]
                if c != 0:
                    out[(i, k - i)] = complex(c)
        return out

    def max_abs_coeff(self) -> float:
        return float(np.abs(self.coeffs).max())

    def __call__(self, p: Point2 | Iterable[complex]) -> complex:
        return evaluate(self, p)

    def __eq__(self, other):
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __repr__(self):
        return f"BivariatePoly({self.terms()!r})"


def total_degree(f: BivariatePoly) -> int:
    return f.degree


def evaluate(f: BivariatePoly, p: Point2 | Iterable[complex]) -> complex:
    """Evaluate ``f`` at ``p`` by Horner in y for each x-coefficient, then Horner in x."""
    x, y = p
    col = _horner(f.coeffs.T, complex(y))  # col[i] = sum_j a[i, j] y^j
    return complex(_horner(col, complex(x)))


def partial(f: BivariatePoly, i: int, j: int) -> BivariatePoly:
    """The mixed partial derivative d^(i+j) f / dx^i dy^j by direct differentiation."""
    if i < 0 or j < 0:
        raise ValueError("derivative orders must be nonnegative")
    n = f.degree + 1
    if i >= n or j >= n:
        return BivariatePoly.constant(0)
    a = f.coeffs[i:, j:]
    # falling factorials (r+i)!/r! and (s+j)!/s!
    rx = FACTORIALS[i:n] / FACTORIALS[: n - i]
    ry = FACTORIALS[j:n] / FACTORIALS[: n - j]
    return BivariatePoly(a * rx[:, None] * ry[None, :])


def taylor_shift(f: BivariatePoly, p: Point2 | Iterable[complex]) -> BivariatePoly:
    """Return ``g`` with ``g(x, y) = f(p_x + x, p_y + y)``.

    Horner shifts are run along x for all columns at once, then along y,
    which costs O(D^3) and avoids the cancellation of binomial expansion.
    """
    px, py = p
    a = f.coeffs.copy()
    _shift_1d(a, complex(px), axis=0)
    _shift_1d(a, complex(py), axis=1)
    return BivariatePoly(a)


def shifted_coeffs(f: BivariatePoly, p: Point2 | Iterable[complex]) -> np.ndarray:
    """Taylor coefficients at ``p`` on the full ``(D+1, D+1)`` grid of ``f``."""
    px, py = p
    a = f.coeffs.copy()
    _shift_1d(a, complex(px), axis=0)
    _shift_1d(a, complex(py), axis=1)
    return a


def eval_all_partials(f: BivariatePoly, p: Point2 | Iterable[complex]) -> dict[tuple[int, int], complex]:
    """Map ``(i, j)`` to ``d^(i+j) f / dx^i dy^j`` at ``p`` for every ``i + j <= D``."""
    b = shifted_coeffs(f, p)
    D = f.degree
    return {
        (i, k - i): complex(b[i, k - i] * FACTORIALS[i] * FACTORIALS[k - i])
        for k in range(D + 1)
        for i in range(k + 1)
    }


def line_coefficients(f: BivariatePoly, p: Point2 | Iterable[complex], ux, uy) -> np.ndarray:
    """Coefficients of ``t -> f(p + t u)`` for a batch of directions.

    ``ux`` and ``uy`` are broadcastable arrays of direction components; the
    result has shape ``(*batch, D+1)`` with column k the coefficient of t^k.
    """
    b = shifted_coeffs(f, p)
    D = f.degree
    ux = np.asarray(ux, dtype=complex)
    uy = np.asarray(uy, dtype=complex)
    ux, uy = np.broadcast_arrays(ux, uy)
    powx = ux[..., None] ** np.arange(D + 1)
    powy = uy[..., None] ** np.arange(D + 1)
    out = np.zeros(ux.shape + (D + 1,), dtype=complex)
    for k in range(D + 1):
        i = np.arange(k + 1)
        out[..., k] = (b[i, k - i] * powx[..., i] * powy[..., k - i]).sum(axis=-1)
    return out


def restrict_to_line(f: BivariatePoly, p: Point2 | Iterable[complex], u: Direction2) -> UnivariatePoly:
    """The univariate polynomial ``t -> f(p + t u)``."""
    return UnivariatePoly(line_coefficients(f, p, u.x, u.y))


def unitary_matrix(theta: float, psi: float) -> np.ndarray:
    """The 2x2 unitary change of coordinates ``(x, y) = U (X, Y)``."""
    return np.array(
        [
            [cmath.exp(1j * theta), cmath.exp(-1j * psi)],
            [cmath.exp(1j * psi), -cmath.exp(-1j * theta)],
        ]
    ) / math.sqrt(2.0)


def substitute_linear(f: BivariatePoly, m: np.ndarray) -> BivariatePoly:
    """Return ``F(X, Y) = f(m[0,0] X + m[0,1] Y, m[1,0] X + m[1,1] Y)``.

    Each ``x^i y^j`` becomes a homogeneous form of degree ``i + j``, held as a
    vector over ``X^r Y^(n-r)`` so products reduce to 1-D convolutions.
    """
    D = f.degree
    # homogeneous powers: vector index r is the exponent of X
    xform = np.array([m[0, 1], m[0, 0]], dtype=complex)
    yform = np.array([m[1, 1], m[1, 0]], dtype=complex)
    xpow = [np.ones(1, dtype=complex)]
    ypow = [np.ones(1, dtype=complex)]
    for _ in range(D):
        xpow.append(np.convolve(xpow[-1], xform))
        ypow.append(np.convolve(ypow[-1], yform))
    out = np.zeros((D + 1, D + 1), dtype=complex)
    for n in range(D + 1):
        acc = np.zeros(n + 1, dtype=complex)
        for i in range(n + 1):
            c = f.coeffs[i, n - i]
            if c != 0:
                acc += c * np.convolve(xpow[i], ypow[n - i])
        r = np.arange(n + 1)
        out[r, n - r] = acc
    return BivariatePoly(out)


def rotate_unitary(f: BivariatePoly, theta: float, psi: float) -> BivariatePoly:
    """``F(X, Y) = f(U(X, Y))`` for the unitary matrix of :func:`unitary_matrix`.

    ``U(theta, psi)`` is inverted by ``U(-theta, psi)``, so
    ``rotate_unitary(rotate_unitary(f, t, s), -t, s)`` recovers ``f``.
    """
    return substitute_linear(f, unitary_matrix(theta, psi))
