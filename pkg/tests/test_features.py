import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shapexml.codes import CurveCode
from shapexml.contour import Contour, resample
from shapexml.corner import CornerSet
from shapexml.errors import InsufficientCorners, InvalidTriangle, ZeroChord
from shapexml.features import (
    CurveFeatures,
    CurveSegment,
    QuantizerConfig,
    analyze_shape,
    curve_features,
    describe_shape,
    coarsen,
    heron_area,
    quantize,
    segment_contour,
    total_turning,
)
from shapexml.synthetic import (
    bulged_square,
    circle_contour,
    ellipse_points,
    polygon_contour,
    rasterize,
    regular_polygon,
    transform_points,
)


# ---------------------------------------------------------------- heron


def test_heron_345():
    assert abs(heron_area(3, 4, 5) - 6.0) < 1e-12


def test_heron_degenerate():
    assert heron_area(2, 1, 1) == 0.0


def test_heron_equilateral():
    assert math.isclose(heron_area(1, 1, 1), math.sqrt(3) / 4)


def test_heron_invalid():
    with pytest.raises(InvalidTriangle):
        heron_area(5, 1, 1)


def test_heron_against_cross_product():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        p, q, r = rng.uniform(-10, 10, size=(3, 2))
        a, b, c = np.linalg.norm(q - r), np.linalg.norm(p - r), np.linalg.norm(p - q)
        u, v = q - p, r - p
        oracle = 0.5 * abs(u[0] * v[1] - u[1] * v[0])
        assert abs(heron_area(a, b, c) - oracle) < 1e-9


# ---------------------------------------------------------------- segmentation


def test_square_segments_are_sides(square_contour):
    n = len(square_contour)
    cs = CornerSet(square_contour, (0, 64, 128, 192))
    segs = segment_contour(cs)
    assert len(segs) == 4
    assert [len(s.points) for s in segs] == [65] * 4
    assert segs[-1].end == 0 and n == 256


def test_two_corners_on_circle():
    c = circle_contour(n=200)
    segs = segment_contour(CornerSet(c, (30, 130)))
    assert sum(len(s.points) for s in segs) == len(c) + 2


def test_zero_corners():
    with pytest.raises(InsufficientCorners):
        segment_contour(CornerSet(circle_contour(n=64), ()))


# ---------------------------------------------------------------- features


def test_square_side(square_contour):
    seg = segment_contour(CornerSet(square_contour, (0, 64, 128, 192)))[0]
    f = curve_features(seg, square_contour.perimeter)
    assert f.kind == "R"
    assert math.isclose(f.chord_len, 0.25)
    assert f.dg == 0 and f.area == 0 and f.beta == 0


def test_semicircle():
    c = circle_contour(radius=7.0, n=512)
    for seg in segment_contour(CornerSet(c, (0, 256))):
        f = curve_features(seg, c.perimeter)
        assert f.kind == "CV"
        assert math.isclose(f.dg, 0.5, abs_tol=1e-9)
        assert abs(f.beta - math.pi) < 1e-2
        # triangle on the diameter with the apex on the circle: r^2
        assert math.isclose(f.area, 49.0 / c.perimeter**2, rel_tol=1e-6)


def test_quarter_circle():
    c = circle_contour(radius=3.0, n=512)
    seg = segment_contour(CornerSet(c, (0, 128)))[0]
    f = curve_features(seg, c.perimeter)
    # analytic arc: sagitta over chord, tangent turn of a quarter turn
    assert abs(f.dg - (1 - 1 / math.sqrt(2)) / math.sqrt(2)) < 1e-2
    assert abs(f.beta - math.pi / 2) < 1e-2
    assert f.kind == "CV"


def test_inward_arc_is_concave():
    t = np.linspace(0, -np.pi, 101)  # from (1,0) down through (0,-1) to (-1,0)
    seg = CurveSegment(0, 100, np.column_stack([np.cos(t), np.sin(t)]))
    assert curve_features(seg, 20.0).kind == "CC"


def test_zero_chord():
    seg = CurveSegment(0, 0, np.array([[0.0, 0.0], [1.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ZeroChord):
        curve_features(seg, 10.0)


def test_total_turning_of_arcs():
    for frac in (0.1, 0.25, 0.5):
        t = np.linspace(0, 2 * np.pi * frac, 33)
        assert math.isclose(total_turning(np.column_stack([np.cos(t), np.sin(t)])), 2 * np.pi * frac)
    assert total_turning(np.array([[0.0, 0.0], [1.0, 0.0]])) == 0.0


# ---------------------------------------------------------------- quantize


def _feat(**kw):
    base = dict(area=0.01, chord_len=0.2, dg=0.3, beta=1.0, kind="CV")
    base.update(kw)
    return CurveFeatures(**base)


@pytest.mark.parametrize("beta, b", [(0.0, 0), (math.pi, 4), (math.pi / 2, 2), (0.1, 1), (2.0, 3)])
def test_beta_bins(beta, b):
    assert quantize(_feat(beta=beta)).b == b


def test_zero_bins():
    code = quantize(_feat(area=0.0, dg=0.0))
    assert (code.a, code.d) == (0, 0)


def test_bulge_code_from_features():
    # large area, medium chord, beta in the second quarter, large degree
    code = quantize(_feat(area=0.006, chord_len=0.2, beta=1.4, dg=0.2))
    assert str(code) == "A2L2B2D2"


def test_line_code_only_has_length():
    code = quantize(CurveFeatures(0.0, 0.5, 0.0, 0.0, "R"))
    assert code == CurveCode("R", 0, 3, 0, 0)
    assert str(code) == "A0L3B0D0"


@settings(max_examples=200)
@given(
    x=st.floats(0, 1, allow_nan=False),
    y=st.floats(0, 1, allow_nan=False),
    which=st.sampled_from(["area", "chord_len", "dg"]),
)
def test_quantizer_monotone(x, y, which):
    lo, hi = sorted((x, y))
    attr = {"area": "a", "chord_len": "l", "dg": "d"}[which]
    assert getattr(quantize(_feat(**{which: lo})), attr) <= getattr(quantize(_feat(**{which: hi})), attr)


@settings(max_examples=200)
@given(x=st.floats(0, math.pi), y=st.floats(0, math.pi))
def test_beta_monotone(x, y):
    lo, hi = sorted((x, y))
    assert quantize(_feat(beta=lo)).b <= quantize(_feat(beta=hi)).b


def test_quantizer_file(tmp_path):
    p = tmp_path / "q.cfg"
    p.write_text("# bins\nl_edges = 0.05, 0.15\nzero_eps=1e-4\n")
    q = QuantizerConfig.from_file(p)
    assert q.l_edges == (0.05, 0.15) and q.zero_eps == 1e-4 and q.a_edges == QuantizerConfig().a_edges
    p.write_text("bogus = 1\n")
    with pytest.raises(ValueError):
        QuantizerConfig.from_file(p)
    with pytest.raises(ValueError):
        QuantizerConfig(l_edges=(0.3, 0.1))


# ---------------------------------------------------------------- describe


def test_describe_square(square_contour):
    d = describe_shape(square_contour, name="sq")
    assert d.np == 256 and d.nc == 4
    assert {c.kind for c in d.curves} == {"R"}
    assert len({str(c) for c in d.curves}) == 1


def test_describe_bulge_code():
    d = describe_shape(resample(Contour(bulged_square()), 256))
    assert "A2L2B2D2" in d.symbol_strings()
    assert [c.kind for c in d.curves].count("CV") == 1


def test_describe_circle_raises():
    with pytest.raises(InsufficientCorners):
        describe_shape(circle_contour(n=256))


def test_describe_circle_fallback():
    d = describe_shape(circle_contour(n=256), closed_fallback=True)
    assert [str(c) for c in d.curves] == ["A2L3B4D2", "A2L3B4D2"]
    assert {c.kind for c in d.curves} == {"CV"}


def test_curves_start_at_lowest_corner(pentagon_contour):
    rolled = Contour(np.roll(pentagon_contour.points, -30, axis=0))
    corners, segs, _, _ = analyze_shape(rolled)
    assert segs[0].start == min(corners.indices)


def _random_outline(rng):
    kind = rng.integers(0, 3)
    if kind == 0:
        verts = regular_polygon(int(rng.integers(3, 8)), 40.0)
        return verts + rng.uniform(-3, 3, size=verts.shape)
    if kind == 1:
        return bulged_square(60.0, rng.uniform(40, 120))
    return ellipse_points(40, rng.uniform(15, 35), 400)


def _cyclic_equal(a, b):
    return len(a) == len(b) and any(a == b[r:] + b[:r] for r in range(max(len(b), 1)))


@settings(max_examples=30, deadline=None)
@given(
    seed=st.integers(0, 10_000),
    angle=st.floats(0, 2 * math.pi),
    scale=st.floats(0.1, 10),
    dx=st.floats(-1000, 1000),
    dy=st.floats(-1000, 1000),
)
def test_describe_invariant_to_similarity(seed, angle, scale, dx, dy):
    pts = _random_outline(np.random.default_rng(seed))
    base = describe_shape(resample(Contour(pts), 256), closed_fallback=True)
    moved = describe_shape(
        resample(Contour(transform_points(pts, angle, scale, (dx, dy))), 256), closed_fallback=True
    )
    sa = [(c.kind, str(c)) for c in base.curves]
    sb = [(c.kind, str(c)) for c in moved.curves]
    assert _cyclic_equal(sa, sb)


def test_orientation_flip_swaps_kinds():
    pts = bulged_square()
    c = resample(Contour(pts), 256)
    _, segs, _, _ = analyze_shape(c)
    # feed the clockwise point order straight to the feature code
    flipped = [CurveSegment(s.end, s.start, s.points[::-1]) for s in segs]
    kinds = [curve_features(s, c.perimeter).kind for s in segs]
    flipped_kinds = [curve_features(s, c.perimeter).kind for s in flipped]
    swap = {"CV": "CC", "CC": "CV", "R": "R"}
    assert flipped_kinds == [swap[k] for k in kinds]


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_feature_ranges(seed):
    rng = np.random.default_rng(seed)
    c = resample(Contour(_random_outline(rng)), 256)
    _, _, feats, _ = analyze_shape(c, closed_fallback=True)
    for f in feats:
        assert f.area >= 0 and f.dg >= 0 and 0 <= f.beta <= math.pi
        assert (f.dg == 0) == (f.kind == "R")
        if f.kind == "R":
            assert f.area == 0


def test_coarsen_keeps_ends_and_arc():
    t = np.linspace(0, np.pi, 201)
    pts = np.column_stack([np.cos(t), np.sin(t)])
    out = coarsen(pts, np.pi / 20)
    assert len(out) == 21
    assert (out[0] == pts[0]).all() and (out[-1] == pts[-1]).all()
    assert coarsen(pts, 0) is pts


def test_raster_arc_turning():
    # a bulge turning 85 degrees lands in B2 after going through pixels
    from shapexml.contour import trace_outer_contour

    outline = transform_points(bulged_square(100, 85), offset=(60, 40))
    c = resample(trace_outer_contour(rasterize(outline, (220, 220))), 256)
    _, _, feats, codes = analyze_shape(c)
    arcs = [(f, code) for f, code in zip(feats, codes) if f.kind == "CV"]
    assert len(arcs) == 1
    assert abs(math.degrees(arcs[0][0].beta) - 85) < 10
    assert arcs[0][1].b == 2
