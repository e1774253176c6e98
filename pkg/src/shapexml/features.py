"""Curve segmentation, per-curve geometry and quantization into symbols."""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .codes import CurveCode
from .contour import Contour
from .corner import CornerParams, CornerSet, detect_corners
from .descriptor import ShapeDescriptor
from .errors import InsufficientCorners, InvalidTriangle, ZeroChord


@dataclass(frozen=True)
class CurveSegment:
    start: int
    end: int
    points: np.ndarray


@dataclass(frozen=True)
class CurveFeatures:
    area: float
    chord_len: float
    dg: float
    beta: float
    kind: str


@dataclass(frozen=True)
class QuantizerConfig:
    """Bin edges for the area, length and degree features.

    The first edge of ``a_edges`` and ``d_edges`` separates the zero bin.
    ``line_eps`` is the degree below which a curve counts as a straight line.
    ``beta_step`` is the spacing, as a fraction of the perimeter, at which a
    curve is sampled before its turning is summed; pixel staircases would
    otherwise add up to a half turn on any raster arc. Zero uses every point.
    """

    a_edges: tuple[float, float] = (1e-3, 5e-3)
    l_edges: tuple[float, float] = (0.1, 0.3)
    d_edges: tuple[float, float] = (1e-3, 0.15)
    zero_eps: float = 1e-3
    line_eps: float = 0.05
    beta_step: float = 0.025

    def __post_init__(self):
        for name in ("a_edges", "l_edges", "d_edges"):
            e = tuple(float(v) for v in getattr(self, name))
            if len(e) != 2 or not 0 < e[0] < e[1]:
                raise ValueError(f"{name} must be two ascending positive values, got {e}")
            object.__setattr__(self, name, e)
        if not self.zero_eps > 0 or not self.line_eps > 0:
            raise ValueError("zero_eps and line_eps must be positive")
        if not self.beta_step >= 0:
            raise ValueError("beta_step must be non-negative")

    @classmethod
    def from_file(cls, path) -> "QuantizerConfig":
        """Read ``key = value`` lines; edges are comma separated pairs."""
        parser = configparser.ConfigParser()
        parser.read_string("[quantizer]\n" + Path(path).read_text())
        known = {f.name for f in fields(cls)}
        kwargs = {}
        for key, raw in parser["quantizer"].items():
            if key not in known:
                raise ValueError(f"unknown quantizer key {key!r}")
            if key.endswith("_edges"):
                kwargs[key] = tuple(float(v) for v in raw.split(","))
            else:
                kwargs[key] = float(raw)
        return cls(**kwargs)


def segment_contour(corners: CornerSet) -> list[CurveSegment]:
    """Cut the contour at every corner; neighbouring segments share endpoints."""
    idx = list(corners.indices)
    if len(idx) < 2:
        raise InsufficientCorners(f"need >= 2 corners to segment, got {len(idx)}")
    pts = corners.contour.points
    n = len(pts)
    segs = []
    for k, start in enumerate(idx):
        end = idx[(k + 1) % len(idx)]
        span = (end - start) % n
        sel = (start + np.arange(span + 1)) % n
        segs.append(CurveSegment(start, end, pts[sel]))
    return segs


def heron_area(a: float, b: float, c: float, tol: float = 1e-9) -> float:
    s = (a + b + c) / 2.0
    rad = s * (s - a) * (s - b) * (s - c)
    scale = max(a, b, c, 1.0)
    if min(s - a, s - b, s - c) < -tol * scale:
        raise InvalidTriangle(f"sides {a}, {b}, {c} violate the triangle inequality")
    return math.sqrt(max(rad, 0.0))


def total_turning(points: np.ndarray) -> float:
    """Unsigned tangent rotation along an open polyline.

    Interior vertices contribute their exterior angle; each endpoint adds
    half of its neighbouring vertex's angle, which makes uniformly sampled
    circular arcs come out exact.
    """
    edges = np.diff(points, axis=0)
    if len(edges) < 2:
        return 0.0
    e1, e2 = edges[:-1], edges[1:]
    cross = e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0]
    dot = np.sum(e1 * e2, axis=1)
    turns = np.abs(np.arctan2(cross, dot))
    return float(turns.sum() + 0.5 * (turns[0] + turns[-1]))


def coarsen(points: np.ndarray, spacing: float) -> np.ndarray:
    """Keep roughly one point per ``spacing`` of arc length, both ends included."""
    length = float(np.sum(np.hypot(*np.diff(points, axis=0).T)))
    if spacing <= 0 or len(points) < 3:
        return points
    m = min(len(points) - 1, max(2, int(round(length / spacing))))
    return points[np.round(np.linspace(0, len(points) - 1, m + 1)).astype(int)]


def curve_features(
    seg: CurveSegment, perimeter: float, line_eps: float = 0.05, beta_step: float = 0.025
) -> CurveFeatures:
    pts = seg.points
    p0, p1 = pts[0], pts[-1]
    chord_vec = p1 - p0
    chord = float(np.hypot(*chord_vec))
    if chord <= 1e-12 * max(perimeter, 1.0):
        raise ZeroChord(f"segment {seg.start}->{seg.end} has coincident endpoints")
    rel = pts - p0
    cross = (chord_vec[0] * rel[:, 1] - chord_vec[1] * rel[:, 0]) / chord
    k = int(np.argmax(np.abs(cross)))
    d = abs(float(cross[k]))
    dg = d / chord
    l_norm = chord / perimeter
    if dg < line_eps:
        return CurveFeatures(area=0.0, chord_len=l_norm, dg=0.0, beta=0.0, kind="R")
    apex = pts[k]
    area = heron_area(
        float(np.hypot(*(apex - p0))), float(np.hypot(*(p1 - apex))), chord
    ) / perimeter**2
    beta = min(total_turning(coarsen(pts, beta_step * perimeter)), math.pi)
    # on a CCW contour an outward bulge has the apex to the right of the chord
    kind = "CV" if cross[k] < 0 else "CC"
    return CurveFeatures(area=area, chord_len=l_norm, dg=dg, beta=beta, kind=kind)


def _bin(value: float, edges, first: int = 0) -> int:
    return first + int(np.searchsorted(edges, value, side="right"))


def quantize(f: CurveFeatures, q: QuantizerConfig = QuantizerConfig()) -> CurveCode:
    l_bin = _bin(f.chord_len, q.l_edges, first=1)
    if f.kind == "R":
        return CurveCode("R", l=l_bin)
    a_bin = _bin(f.area, q.a_edges)
    d_bin = _bin(f.dg, q.d_edges)
    if f.beta < q.zero_eps:
        b_bin = 0
    else:
        b_bin = min(4, max(1, math.ceil(f.beta / (math.pi / 4) - 1e-12)))
    return CurveCode(f.kind, a_bin, l_bin, b_bin, d_bin)


def split_closed(c: Contour, corners: CornerSet) -> CornerSet:
    """Two cut points for a contour with fewer than two corners.

    The anchor is the single corner if there is one, otherwise the point
    farthest from the centroid; the partner sits half the perimeter away.
    """
    pts = c.points
    if len(corners.indices) == 1:
        anchor = corners.indices[0]
    else:
        dist = np.linalg.norm(pts - pts.mean(axis=0), axis=1)
        anchor = int(np.argmax(dist))
    s = c.arc_positions()
    target = (s[anchor] + c.perimeter / 2.0) % c.perimeter
    gap = np.abs(s - target)
    partner = int(np.argmin(np.minimum(gap, c.perimeter - gap)))
    return CornerSet(c, tuple(sorted({anchor, partner})))


def analyze_shape(
    c: Contour,
    params: CornerParams = CornerParams(),
    q: QuantizerConfig = QuantizerConfig(),
    closed_fallback: bool = False,
):
    """Corners, segments, features and codes for one contour."""
    corners = detect_corners(c, params)
    if len(corners) < 2:
        if not closed_fallback:
            raise InsufficientCorners(
                f"found {len(corners)} corner(s); describe the shape as a closed curve instead"
            )
        corners = split_closed(c, corners)
    segments = segment_contour(corners)
    feats = [curve_features(seg, c.perimeter, q.line_eps, q.beta_step) for seg in segments]
    codes = [quantize(f, q) for f in feats]
    return corners, segments, feats, codes


def describe_shape(
    c: Contour,
    params: CornerParams = CornerParams(),
    q: QuantizerConfig = QuantizerConfig(),
    name: str = "",
    closed_fallback: bool = False,
) -> ShapeDescriptor:
    """Full contour-to-descriptor pipeline.

    With fewer than two corners this raises :class:`InsufficientCorners`
    unless ``closed_fallback`` is set, in which case the outline is cut in
    two halves (see :func:`split_closed`).
    """
    _, _, _, codes = analyze_shape(c, params, q, closed_fallback)
    return ShapeDescriptor(name=name, np=len(c), curves=tuple(codes))
