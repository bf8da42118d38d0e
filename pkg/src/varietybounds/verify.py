"""Check certified bounds against the brute-force distance estimate."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import bound_report
from .oracle import SamplingPlan, sep_estimate
from .polynomial import BivariatePoly, Point2
from .sampling import random_instances

DEFAULT_DELTA = 0.05
LOWER_SLACK = 1e-9


@dataclass(frozen=True)
class SandwichVerdict:
    lower: float
    estimate: float
    upper: float
    delta: float

    @property
    def lower_ok(self) -> bool:
        return self.lower <= self.estimate + LOWER_SLACK

    @property
    def upper_ok(self) -> bool:
        return self.estimate <= self.upper * (1.0 + self.delta)

    @property
    def passed(self) -> bool:
        return self.lower_ok and self.upper_ok

    def to_dict(self) -> dict:
        return {
            "verdict": "PASS" if self.passed else "FAIL",
            "lower": self.lower,
            "estimate": self.estimate,
            "upper": self.upper,
            "delta": self.delta,
        }


def check_sandwich(f: BivariatePoly, p: Point2, plan: SamplingPlan | None = None,
                   delta: float = DEFAULT_DELTA) -> SandwichVerdict:
    rep = bound_report(f, p)
    est = sep_estimate(f, p, plan)
    return SandwichVerdict(rep.lower, est.value, rep.upper, delta)


@dataclass
class BatchSummary:
    instances: int
    failures: list[dict]
    max_estimate_over_upper: float
    min_estimate_over_lower: float

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "verdict": "PASS" if self.passed else "FAIL",
            "instances": self.instances,
            "violations": len(self.failures),
            "max_estimate_over_upper": self.max_estimate_over_upper,
            "min_estimate_over_lower": self.min_estimate_over_lower,
            "failures": self.failures,
        }


def random_batch(n: int, max_degree: int, seed: int, plan: SamplingPlan | None = None,
                 delta: float = DEFAULT_DELTA) -> BatchSummary:
    rng = np.random.default_rng(seed)
    failures = []
    hi = 0.0
    lo = float("inf")
    for idx, (f, p) in enumerate(random_instances(rng, n, max_degree)):
        v = check_sandwich(f, p, plan, delta)
        hi = max(hi, v.estimate / v.upper)
        lo = min(lo, v.estimate / v.lower)
        if not v.passed:
            failures.append({"index": idx, "degree": f.degree, **v.to_dict()})
    return BatchSummary(n, failures, hi, lo)
