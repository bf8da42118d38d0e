"""Certified bounds on the distance from a point to the zero set of a bivariate polynomial."""

from .bounds import (
    BoundReport,
    OnVarietyError,
    axis_bounds,
    bound_report,
    coefficient_gamma,
    gamma,
    sep_lower,
    sep_upper,
    univariate_sep_upper,
)
from .oracle import DistanceEstimate, RootSet, SamplingPlan, chain_rule_check, line_distance, roots, sep_estimate
from .parser import PolySyntaxError, parse, parse_poly, pretty
from .polynomial import (
    BivariatePoly,
    Direction2,
    IdenticallyZeroError,
    Point2,
    UnivariatePoly,
    eval_all_partials,
    evaluate,
    partial,
    restrict_to_line,
    rotate_unitary,
    taylor_shift,
    total_degree,
)
from .subdivision import BoxRegion, SubdivisionOutcome, exclusion_test, render, subdivide

__version__ = "0.1.0"
