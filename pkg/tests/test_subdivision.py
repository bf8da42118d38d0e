import math

import numpy as np
import pytest

from varietybounds.bounds import sep_lower
from varietybounds.parser import parse
from varietybounds.polynomial import Point2
from varietybounds.subdivision import (
    EXCLUDED,
    BoxRegion,
    box_list,
    exclusion_test,
    render,
    subdivide,
)

ROOT = BoxRegion((0.0, 0.0), 2.0)
CURVES = {
    "circle": "x^2 + y^2 - 1",
    "ellipse": "0.25*x^2 + y^2 - 1",
    "lemniscate": "x^4 - x^2 + y^2",
    "lines": "x*y",
}


def sign_change_or_zero(f, box, n=32):
    x0, y0, x1, y1 = box.bounds()
    X, Y = np.meshgrid(np.linspace(x0, x1, n), np.linspace(y0, y1, n))
    a = f.coeffs.real
    vals = np.zeros_like(X)
    for i in range(a.shape[0]):
        for j in range(a.shape[1] - i):
            if a[i, j]:
                vals += a[i, j] * X**i * Y**j
    return bool(np.any(np.abs(vals) <= 1e-12) or (vals.min() < 0 < vals.max()))


def test_exclusion_examples(circle):
    # sep_lower(circle, (3, 3)) = ln2/sqrt2 * 17/6, about 1.3887
    assert sep_lower(circle, Point2(3, 3)) == pytest.approx(1.3886990365804418, rel=1e-14)
    assert exclusion_test(circle, BoxRegion((3.0, 3.0), 0.5))
    assert not exclusion_test(circle, BoxRegion((1.0, 0.0), 0.01))
    assert not exclusion_test(circle, BoxRegion((0.0, 0.0), 0.5))
    assert exclusion_test(circle, BoxRegion((0.0, 0.0), 0.24))


def test_exclusion_requires_real():
    with pytest.raises(ValueError):
        exclusion_test(parse("x - i"), BoxRegion((0.0, 0.0), 1.0))


def test_constant_single_box():
    out = subdivide(parse("1"), ROOT, 8)
    assert out.leaves == [(EXCLUDED, ROOT)]
    assert out.per_depth_counts == {0: (1, 0)}


def test_max_depth_guard(circle):
    with pytest.raises(ValueError):
        subdivide(circle, ROOT, 25)


@pytest.mark.parametrize("name", sorted(CURVES))
def test_tiling_and_soundness(name):
    f = parse(CURVES[name])
    out = subdivide(f, ROOT, 7)
    area = sum((2 * b.half_width) ** 2 for _, b in out.leaves)
    assert area == pytest.approx(16.0, rel=1e-9)
    for b in out.excluded:
        assert not sign_change_or_zero(f, b)
    for _, b in out.leaves:
        assert b.half_width == ROOT.half_width / 2**b.depth
    assert out.predicate_evaluations == (4 * len(out.leaves) - 1) // 3


def test_circle_undecided_near_curve(circle):
    out = subdivide(circle, ROOT, 8)
    tol = 4 * math.sqrt(2) / 2**8
    assert all(abs(math.hypot(*b.center) - 1) <= tol for b in out.undecided)
    assert all(b.depth == 8 for b in out.undecided)


def test_lines_cluster_on_axes():
    out = subdivide(parse("x*y"), BoxRegion((0.0, 0.0), 1.0), 6)
    hw = 1.0 / 2**6
    for b in out.undecided:
        assert min(abs(b.center[0]), abs(b.center[1])) <= hw * 1.0001
    for sx in (-1, 1):
        for sy in (-1, 1):
            assert any(b.center[0] * sx > 0 and b.center[1] * sy > 0 for b in out.excluded)


def test_depth_monotonicity(circle):
    prev_area = None
    prev_excluded = None
    for m in range(2, 8):
        out = subdivide(circle, ROOT, m)
        und = sum((2 * b.half_width) ** 2 for b in out.undecided)
        if prev_area is not None:
            assert und <= prev_area + 1e-12
            # every box excluded at depth m-1 is still excluded at depth m
            assert prev_excluded <= set(out.excluded)
        prev_area = und
        prev_excluded = set(out.excluded)


def test_canonical_order(circle):
    out = subdivide(circle, ROOT, 3)
    # depth-first NW, NE, SW, SE: the first leaf lies in the north-west corner
    first = out.leaves[0][1]
    assert first.center[0] < 0 and first.center[1] > 0


def test_render_counts_and_reproducible(circle):
    out = subdivide(circle, ROOT, 8)
    svg = render(out, ROOT)
    assert svg.count("<rect") == len(out.leaves)
    assert svg.count('class="undecided"') == len(out.undecided)
    assert svg == render(subdivide(circle, ROOT, 8), ROOT)


def test_render_one_box():
    out = subdivide(parse("1"), ROOT, 4)
    svg = render(out, ROOT)
    assert svg.count("<rect") == 1 and 'class="undecided"' not in svg


def test_box_list_format(circle):
    out = subdivide(circle, ROOT, 2)
    lines = box_list(out).splitlines()
    assert len(lines) == len(out.leaves)
    status, depth, cx, cy, hw = lines[0].split()
    assert status in ("excluded", "undecided")
    b = out.leaves[0][1]
    assert (int(depth), float(cx), float(cy), float(hw)) == (b.depth, *b.center, b.half_width)
