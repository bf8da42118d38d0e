"""Brute-force reference for the true distance to the zero set.

Every complex line through ``p`` meets ``{f = 0}`` in the roots of a
univariate polynomial, and the nearest zero lies on one of those lines.
:func:`sep_estimate` sweeps unit directions

    u(alpha, phi) = (cos(alpha), sin(alpha) e^{i phi})

(a global phase does not change the line, so it is fixed to 0), solves each
restriction with a simultaneous Weierstrass iteration, and keeps the
smallest root modulus.  The result can only over-estimate the true
distance; it converges to it as the grid refines.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from math import comb

import numpy as np

from .bounds import ON_VARIETY_THRESHOLD, OnVarietyError
from .polynomial import (
    BivariatePoly,
    Direction2,
    IdenticallyZeroError,
    Point2,
    UnivariatePoly,
    eval_all_partials,
    evaluate,
    line_coefficients,
    partial,
    restrict_to_line,
    rotate_unitary,
    unitary_matrix,
)

MAX_ITERATIONS = 500
TOLERANCE = 1e-12
# irrational angular offset for the initial circle
_START_ANGLE = 0.5 * (math.sqrt(5.0) - 1.0)


class NotConvergedWarning(RuntimeWarning):
    pass


class EmptyVarietyError(ValueError):
    """A nonzero constant has no zeros to measure distance to."""


@dataclass(frozen=True)
class RootSet:
    roots: list[complex]
    residuals: list[float]
    converged: bool
    iterations: int = 0


@dataclass(frozen=True)
class SamplingPlan:
    n_alpha: int = 64
    n_phi: int = 64
    n_beta: int = 1
    rounds: int = 3
    shrink: float = 0.2

    def __post_init__(self):
        if min(self.n_alpha, self.n_phi, self.n_beta) < 1:
            raise ValueError("grid counts must be >= 1")
        if self.rounds < 0:
            raise ValueError("refinement rounds must be >= 0")
        if not 0.0 < self.shrink < 1.0:
            raise ValueError("shrink factor must lie in (0, 1)")


@dataclass(frozen=True)
class DistanceEstimate:
    value: float
    witness: Point2
    direction: Direction2
    directions_sampled: int
    refined: bool
    unconverged_lines: int = 0
    history: tuple[float, ...] = ()

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "witness": {"x": self.witness.x, "y": self.witness.y},
            "direction": {"x": self.direction.x, "y": self.direction.y},
            "directions_sampled": self.directions_sampled,
            "refined": self.refined,
            "unconverged_lines": self.unconverged_lines,
            "history": list(self.history),
        }


def _weierstrass(coeffs: np.ndarray, max_iter: int = MAX_ITERATIONS, tol: float = TOLERANCE):
    """Simultaneous root iteration on a batch of same-degree polynomials.

    ``coeffs`` has shape ``(n, d+1)``, ascending, with nonzero leading
    column and ``d >= 1``.  Returns ``(roots, converged, iterations)``.
    """
    n, m = coeffs.shape
    d = m - 1
    monic = coeffs / coeffs[:, -1:]
    radius = 1.0 + np.abs(monic[:, :-1]).max(axis=1)
    angles = 2.0 * np.pi * np.arange(d) / d + _START_ANGLE
    z = radius[:, None] * np.exp(1j * angles)[None, :]
    active = np.ones(n, dtype=bool)
    idx = np.arange(n)
    it = 0
    for it in range(1, max_iter + 1):
        za = z[idx]
        ca = monic[idx]
        val = np.ones_like(za)
        for c in range(d - 1, -1, -1):
            val = val * za + ca[:, c : c + 1]
        den = np.ones_like(za)
        for s in range(1, d):
            den *= za - np.roll(za, s, axis=1)
        step = val / den
        bad = ~np.isfinite(step)
        if bad.any():
            step[bad] = 0.0
        z[idx] = za - step
        scale = np.maximum(1.0, np.abs(za))
        done = (np.abs(step) <= tol * scale).all(axis=1) & ~bad.any(axis=1)
        if done.any():
            active[idx[done]] = False
            idx = idx[~done]
            if idx.size == 0:
                break
    return z, ~active, it


def _residuals(coeffs: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """|g(r)| / sum_k |a_k| |r|^k, a backward-error style residual."""
    val = np.full(roots.shape, coeffs[-1], dtype=complex)
    mag = np.full(roots.shape, abs(coeffs[-1]))
    ar = np.abs(roots)
    for c in coeffs[-2::-1]:
        val = val * roots + c
        mag = mag * ar + abs(c)
    return np.abs(val) / mag


def roots(g: UnivariatePoly) -> RootSet:
    """All complex roots of ``g`` with multiplicity.

    Zero trailing coefficients become explicit zero roots; the remaining
    factor is solved by Weierstrass (Durand-Kerner) iteration started on a
    circle of radius ``1 + max |a_k / a_d|``.
    """
    if g.is_zero:
        raise IdenticallyZeroError("g is identically zero")
    c = g.coeffs
    nz = int(np.flatnonzero(c)[0])
    zeros = [0j] * nz
    c = c[nz:]
    if c.size == 1:
        return RootSet(zeros, [0.0] * nz, True)
    z, conv, it = _weierstrass(c[None, :])
    if not conv[0]:
        warnings.warn(f"root iteration stopped after {it} steps", NotConvergedWarning, stacklevel=2)
    found = z[0]
    res = _residuals(c, found)
    return RootSet(
        zeros + [complex(r) for r in found],
        [0.0] * nz + [float(r) for r in res],
        bool(conv[0]),
        it,
    )


def _min_root_moduli(coeffs: np.ndarray):
    """Smallest root modulus (and that root) for each row of line coefficients.

    Rows are grouped by effective degree after trimming exact zero leading
    coefficients; degree-0 rows give ``inf``.
    """
    n, m = coeffs.shape
    best = np.full(n, np.inf)
    best_root = np.zeros(n, dtype=complex)
    unconverged = 0
    nonzero = coeffs != 0
    # effective degree = index of last nonzero coefficient
    eff = np.where(nonzero.any(axis=1), m - 1 - np.argmax(nonzero[:, ::-1], axis=1), 0)
    for d in np.unique(eff):
        if d == 0:
            continue
        rows = np.flatnonzero(eff == d)
        z, conv, _ = _weierstrass(coeffs[rows, : d + 1])
        unconverged += int((~conv).sum())
        mod = np.abs(z)
        j = np.argmin(mod, axis=1)
        best[rows] = mod[np.arange(rows.size), j]
        best_root[rows] = z[np.arange(rows.size), j]
    return best, best_root, unconverged


def line_distance(f: BivariatePoly, p: Point2, u: Direction2) -> float:
    """Distance from ``p`` to the nearest zero of ``f`` on the line ``p + t u``."""
    g = restrict_to_line(f, p, u)
    if abs(g.coeffs[0]) <= ON_VARIETY_THRESHOLD:
        raise OnVarietyError("f vanishes at the query point")
    if g.degree == 0:
        return math.inf
    return min(abs(r) for r in roots(g).roots)


def _directions(alpha: np.ndarray, beta: np.ndarray, phi: np.ndarray):
    ux = np.cos(alpha) * np.exp(1j * beta)
    uy = np.sin(alpha) * np.exp(1j * phi)
    return ux, uy


def sep_estimate(f: BivariatePoly, p: Point2, plan: SamplingPlan | None = None) -> DistanceEstimate:
    """Estimate the distance from ``p`` to ``{f = 0}`` from above by a direction sweep.

    A coarse ``n_alpha x n_beta x n_phi`` grid over ``alpha in [0, pi/2]``
    and ``beta, phi in [0, 2 pi)`` is followed by ``rounds`` local grids
    around the incumbent, each with steps scaled by ``shrink``.  Ties go to
    the first direction in grid order, so the result does not depend on
    evaluation order.
    """
    plan = plan or SamplingPlan()
    if f.is_zero:
        raise IdenticallyZeroError("f is identically zero")
    if f.degree == 0:
        raise EmptyVarietyError("a nonzero constant has no zeros")
    if abs(evaluate(f, p)) <= ON_VARIETY_THRESHOLD:
        raise OnVarietyError("f vanishes at the query point")

    a_step = (np.pi / 2) / max(plan.n_alpha - 1, 1)
    b_step = 2 * np.pi / plan.n_beta
    f_step = 2 * np.pi / plan.n_phi
    alpha = np.arange(plan.n_alpha) * a_step
    beta = np.arange(plan.n_beta) * b_step
    phi = np.arange(plan.n_phi) * f_step
    A, B, F = np.meshgrid(alpha, beta, phi, indexing="ij")

    def sweep(A, B, F):
        ux, uy = _directions(A.ravel(), B.ravel(), F.ravel())
        coeffs = line_coefficients(f, p, ux, uy)
        dist, root, unconv = _min_root_moduli(coeffs)
        j = int(np.argmin(dist))
        return dist[j], root[j], ux[j], uy[j], (A.ravel()[j], B.ravel()[j], F.ravel()[j]), dist.size, unconv

    value, t, ux, uy, angles, sampled, unconverged = sweep(A, B, F)
    history = [float(value)]

    half = int(round(2.0 / plan.shrink))
    offsets = np.arange(-half, half + 1)
    for _ in range(plan.rounds):
        a_step *= plan.shrink
        f_step *= plan.shrink
        b_step *= plan.shrink
        a0, b0, f0 = angles
        la = a0 + offsets * a_step
        lf = f0 + offsets * f_step
        lb = b0 + (offsets * b_step if plan.n_beta > 1 else np.zeros(1))
        A, B, F = np.meshgrid(la, lb, lf, indexing="ij")
        cand = sweep(A, B, F)
        sampled += cand[5]
        unconverged += cand[6]
        if cand[0] < value:
            value, t, ux, uy, angles = cand[:5]
        history.append(float(value))

    if not math.isfinite(value):
        raise EmptyVarietyError("no sampled line meets the zero set")
    direction = Direction2.normalized(complex(ux), complex(uy))
    witness = Point2(p.x + t * ux, p.y + t * uy)
    return DistanceEstimate(
        value=float(value),
        witness=witness,
        direction=direction,
        directions_sampled=int(sampled),
        refined=plan.rounds > 0,
        unconverged_lines=unconverged,
        history=tuple(history),
    )


def chain_rule_check(f: BivariatePoly, theta: float, psi: float, k: int, q: Point2) -> float:
    """Relative residual of the chain rule for ``F = f o U`` at ``q``.

    Compares the k-th pure X-derivative of ``F`` (by substitution, then
    differentiation) against ``sum_i C(k,i) f_{i,k-i}(U q) a^i b^(k-i)`` with
    ``a = e^{i theta}/sqrt2`` and ``b = e^{i psi}/sqrt2`` (Taylor-shift path).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    F = rotate_unitary(f, theta, psi)
    lhs = evaluate(partial(F, k, 0), q)
    u = unitary_matrix(theta, psi)
    uq = Point2(*(u @ np.array([q.x, q.y])))
    table = eval_all_partials(f, uq)
    a = u[0, 0]
    b = u[1, 0]
    rhs = 0j
    for i in range(k + 1):
        rhs += comb(k, i) * table.get((i, k - i), 0j) * a**i * b ** (k - i)
    return abs(lhs - rhs) / (abs(lhs) + abs(rhs) + 1.0)
