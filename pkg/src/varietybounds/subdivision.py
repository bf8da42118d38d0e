"""Quadtree exclusion of real-plane boxes using the certified distance lower bound.

A square box is discarded when the zero-free ball around its center is
wider than its half-diagonal.  Real zeros are zeros in C^2, so the box then
contains no point of the real curve.  Boxes are only evaluated at their
center; no inclusion test is made, so undecided boxes are simply boxes the
predicate could not clear before ``max_depth``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .bounds import ON_VARIETY_THRESHOLD, sep_lower
from .polynomial import BivariatePoly, IdenticallyZeroError, Point2, evaluate

MAX_DEPTH = 24

EXCLUDED = "excluded"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class BoxRegion:
    center: tuple[float, float]
    half_width: float
    depth: int = 0

    def __post_init__(self):
        if not self.half_width > 0:
            raise ValueError("half_width must be positive")

    @property
    def half_diagonal(self) -> float:
        return self.half_width * math.sqrt(2.0)

    def children(self) -> list["BoxRegion"]:
        """Quadrants in NW, NE, SW, SE order (y grows upward)."""
        cx, cy = self.center
        h = self.half_width / 2
        d = self.depth + 1
        return [
            BoxRegion((cx - h, cy + h), h, d),
            BoxRegion((cx + h, cy + h), h, d),
            BoxRegion((cx - h, cy - h), h, d),
            BoxRegion((cx + h, cy - h), h, d),
        ]

    def bounds(self) -> tuple[float, float, float, float]:
        cx, cy = self.center
        h = self.half_width
        return cx - h, cy - h, cx + h, cy + h


@dataclass
class SubdivisionOutcome:
    """Leaves of the quadtree in depth-first order."""

    leaves: list[tuple[str, BoxRegion]] = field(default_factory=list)
    predicate_evaluations: int = 0

    @property
    def excluded(self) -> list[BoxRegion]:
        return [b for s, b in self.leaves if s == EXCLUDED]

    @property
    def undecided(self) -> list[BoxRegion]:
        return [b for s, b in self.leaves if s == UNDECIDED]

    @property
    def per_depth_counts(self) -> dict[int, tuple[int, int]]:
        counts = Counter((b.depth, s) for s, b in self.leaves)
        depths = sorted({b.depth for _, b in self.leaves})
        return {d: (counts[(d, EXCLUDED)], counts[(d, UNDECIDED)]) for d in depths}

    def to_dict(self) -> dict:
        return {
            "excluded": len(self.excluded),
            "undecided": len(self.undecided),
            "predicate_evaluations": self.predicate_evaluations,
            "per_depth_counts": {
                str(d): {"excluded": e, "undecided": u}
                for d, (e, u) in self.per_depth_counts.items()
            },
        }


def exclusion_test(f: BivariatePoly, box: BoxRegion) -> bool:
    """True when the closed box provably contains no real zero of ``f``."""
    if f.is_zero:
        raise IdenticallyZeroError("f is identically zero")
    if not f.is_real:
        raise ValueError("exclusion test needs real coefficients")
    c = Point2(*box.center)
    if abs(evaluate(f, c)) <= ON_VARIETY_THRESHOLD:
        return False
    return sep_lower(f, c) > box.half_diagonal


def subdivide(f: BivariatePoly, root: BoxRegion, max_depth: int) -> SubdivisionOutcome:
    if f.is_zero:
        raise IdenticallyZeroError("f is identically zero")
    if not 0 <= max_depth <= MAX_DEPTH:
        raise ValueError(f"max_depth must lie in [0, {MAX_DEPTH}]")
    out = SubdivisionOutcome()
    stack = [root]
    while stack:
        box = stack.pop()
        out.predicate_evaluations += 1
        if exclusion_test(f, box):
            out.leaves.append((EXCLUDED, box))
        elif box.depth - root.depth >= max_depth:
            out.leaves.append((UNDECIDED, box))
        else:
            stack.extend(reversed(box.children()))
    return out


def render(outcome: SubdivisionOutcome, root: BoxRegion, size: int = 512, outline: bool = True) -> str:
    """SVG with one ``rect`` per leaf, in the outcome's depth-first order."""
    x0, _, _, y1 = root.bounds()
    scale = size / (2 * root.half_width)
    fills = {EXCLUDED: "#cfe3f5", UNDECIDED: "#d9412b"}
    stroke = ' stroke="#4a4a4a" stroke-width="0.25"' if outline else ""
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
    ]
    for status, b in outcome.leaves:
        bx0, _, _, by1 = b.bounds()
        w = 2 * b.half_width * scale
        lines.append(
            f'<rect class="{status}" x="{(bx0 - x0) * scale:.6f}" y="{(y1 - by1) * scale:.6f}" '
            f'width="{w:.6f}" height="{w:.6f}" fill="{fills[status]}"{stroke}/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def box_list(outcome: SubdivisionOutcome) -> str:
    """Plain-text leaves: ``status depth center_x center_y half_width``."""
    rows = []
    for status, b in outcome.leaves:
        cx, cy = b.center
        rows.append(f"{status} {b.depth} {cx:.17g} {cy:.17g} {b.half_width:.17g}")
    return "\n".join(rows) + ("\n" if rows else "")
