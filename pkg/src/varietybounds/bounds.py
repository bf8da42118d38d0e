"""Two-sided bounds on the distance from a point to the zero set of f.

All bounds are driven by one scalar,

    gamma_f(p) = max_{1<=k<=D} max_{0<=i<=k} |f_{i,k-i}(p) / f(p)|^(1/k),

where ``f_{i,k-i}`` is the order-k partial with i derivatives in x.  With
``sep(p)`` the Euclidean distance from ``p`` to ``{f = 0}`` in C^2::

    ln(2) / (sqrt(2) * gamma)  <=  sep(p)  <  2 * D / gamma

The left side is certified: the Taylor expansion at ``p`` is dominated by
its constant term on the whole open ball of that radius.

k-th roots are taken in log space so high degrees do not overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .polynomial import (
    LOG_FACTORIALS,
    BivariatePoly,
    Direction2,
    IdenticallyZeroError,
    Point2,
    UnivariatePoly,
    restrict_to_line,
    shifted_coeffs,
)

LN2 = math.log(2.0)
LOWER_CONSTANT = LN2 / math.sqrt(2.0)
COARSE_CONSTANT = 1.0 / 3.0

# |f(p)| at or below this is treated as a zero of f (underflow guard).
ON_VARIETY_THRESHOLD = 1e-300


class OnVarietyError(ValueError):
    """The query point is (numerically) a zero of f."""


@dataclass(frozen=True)
class OrderRow:
    k: int
    max_ratio: float  # max_i |f_{i,k-i}(p)/f(p)|^(1/k)
    argmax_i: int


@dataclass(frozen=True)
class BoundReport:
    """Distance bounds at one point, with per-order diagnostics."""

    gamma: float
    lower: float
    lower_coarse: float
    upper: float
    degree: int
    value_at_p: complex
    per_order: list[OrderRow] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "lower": self.lower,
            "lower_coarse": self.lower_coarse,
            "upper": self.upper,
            "degree": self.degree,
            "value_at_p": self.value_at_p,
            "per_order": [
                {"k": r.k, "max_ratio": r.max_ratio, "argmax_i": r.argmax_i}
                for r in self.per_order
            ],
        }


def _check_point(f: BivariatePoly, value: complex) -> None:
    if f.is_zero:
        raise IdenticallyZeroError("f is identically zero")
    if abs(value) <= ON_VARIETY_THRESHOLD:
        raise OnVarietyError("f vanishes at the query point")


def _order_rows(f: BivariatePoly, p: Point2) -> tuple[complex, list[OrderRow]]:
    b = shifted_coeffs(f, p)
    f0 = complex(b[0, 0])
    _check_point(f, f0)
    log_f0 = math.log(abs(f0))
    rows = []
    with np.errstate(divide="ignore"):
        logabs = np.log(np.abs(b))
    for k in range(1, f.degree + 1):
        i = np.arange(k + 1)
        # log |f_{i,k-i}(p)| = log |b_{i,k-i}| + log i! + log (k-i)!
        logs = logabs[i, k - i] + LOG_FACTORIALS[i] + LOG_FACTORIALS[k - i]
        best = int(np.argmax(logs))
        if np.isneginf(logs[best]):
            rows.append(OrderRow(k, 0.0, best))
        else:
            rows.append(OrderRow(k, math.exp((logs[best] - log_f0) / k), best))
    return f0, rows


def gamma(f: BivariatePoly, p: Point2) -> float:
    """gamma_f(p); 0 for a nonzero constant.  Raises :class:`OnVarietyError` if f(p) = 0."""
    _, rows = _order_rows(f, p)
    return max((r.max_ratio for r in rows), default=0.0)


def bound_report(f: BivariatePoly, p: Point2) -> BoundReport:
    f0, rows = _order_rows(f, p)
    g = max((r.max_ratio for r in rows), default=0.0)
    if g == 0.0:
        lower = coarse = upper = math.inf
    else:
        lower = LOWER_CONSTANT / g
        coarse = COARSE_CONSTANT / g
        upper = 2.0 * f.degree / g
    return BoundReport(
        gamma=g,
        lower=lower,
        lower_coarse=coarse,
        upper=upper,
        degree=f.degree,
        value_at_p=f0,
        per_order=rows,
    )


def sep_lower(f: BivariatePoly, p: Point2) -> float:
    """Certified radius ``ln2 / (sqrt(2) gamma)`` of a zero-free ball around ``p``.

    Returns ``inf`` for a nonzero constant.
    """
    return bound_report(f, p).lower


def sep_upper(f: BivariatePoly, p: Point2) -> float:
    """Strict upper bound ``2 D / gamma`` on the distance to the zero set.

    For every order k the max ratio is below ``2D / sep``; inverting the
    largest one gives the tightest of these.
    """
    return bound_report(f, p).upper


def univariate_sep_upper(g: UnivariatePoly, z: complex, form: str = "sharp") -> float:
    """Upper bound on the distance from ``z`` to the nearest root of ``g``.

    ``form="sharp"`` uses ``min_k (C(d,k) k! |g(z)/g^(k)(z)|)^(1/k)``, which
    follows from counting the C(d,k) terms of g^(k)/g = k! e_k(1/(z - root)).
    ``form="paper"`` uses the looser ``min_k d |g(z)/g^(k)(z)|^(1/k)``;
    since ``k! C(d,k) <= d^k`` the sharp form is never larger.
    Orders with ``g^(k)(z) = 0`` are skipped.
    """
    if form not in ("sharp", "paper"):
        raise ValueError(f"unknown form {form!r}")
    if g.is_zero:
        raise IdenticallyZeroError("g is identically zero")
    d = g.degree
    if d == 0:
        return math.inf
    c = g.shift(z).coeffs  # c[k] = g^(k)(z) / k!
    c0 = abs(c[0])
    if c0 <= ON_VARIETY_THRESHOLD:
        raise OnVarietyError("g vanishes at z")
    log_c0 = math.log(c0)
    best = math.inf
    for k in range(1, d + 1):
        ck = abs(c[k]) if k < c.size else 0.0
        if ck == 0.0:
            continue
        if form == "sharp":
            log_binom = LOG_FACTORIALS[d] - LOG_FACTORIALS[k] - LOG_FACTORIALS[d - k]
            val = math.exp((log_binom + log_c0 - math.log(ck)) / k)
        else:
            val = d * math.exp((log_c0 - math.log(ck) - LOG_FACTORIALS[k]) / k)
        best = min(best, val)
    return best


def axis_bounds(f: BivariatePoly, p: Point2, form: str = "sharp") -> tuple[float, float]:
    """Univariate bounds along the horizontal line ``y = p_y`` and vertical line ``x = p_x``.

    Returns ``(along_x, along_y)``; a direction where the restriction is a
    nonzero constant never meets the curve and gives ``inf``.
    """
    if f.is_zero:
        raise IdenticallyZeroError("f is identically zero")
    out = []
    for u in (Direction2(1, 0), Direction2(0, 1)):
        g = restrict_to_line(f, p, u)
        if abs(g.coeffs[0]) <= ON_VARIETY_THRESHOLD:
            raise OnVarietyError("f vanishes at the query point")
        out.append(univariate_sep_upper(g, 0.0, form=form))
    return out[0], out[1]


def coefficient_gamma(f: BivariatePoly) -> float:
    """gamma at the origin read straight from the coefficients.

    ``max_k max_i (k!/C(k,i) |a_{i,k-i} / a_{0,0}|)^(1/k)``, using
    ``k!/C(k,i) = i! (k-i)!``.
    """
    if f.is_zero:
        raise IdenticallyZeroError("f is identically zero")
    a = f.coeffs
    a00 = abs(a[0, 0])
    if a00 == 0.0:
        raise ValueError("constant coefficient is zero")
    best = 0.0
    for k in range(1, f.degree + 1):
        for i in range(k + 1):
            c = abs(a[i, k - i])
            if c == 0.0:
                continue
            w = math.factorial(k) / math.comb(k, i)
            best = max(best, (w * c / a00) ** (1.0 / k))
    return best
