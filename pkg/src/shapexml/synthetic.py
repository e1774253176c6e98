"""Synthetic shapes for tests, demos and the desk-scale benchmark corpus."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np
from skimage.draw import polygon as fill_polygon

from .contour import BinaryImage, Contour, resample
from .corner import CornerParams
from .descriptor import ShapeDescriptor, write_descriptor
from .features import QuantizerConfig, describe_shape


def regular_polygon(n_sides: int, radius: float = 50.0, center=(0.0, 0.0), phase: float = 0.0) -> np.ndarray:
    t = phase + np.arange(n_sides) * 2 * np.pi / n_sides
    return np.column_stack([np.cos(t), np.sin(t)]) * radius + np.asarray(center, dtype=float)


def polygon_contour(vertices, samples_per_edge: int = 64) -> Contour:
    """Closed polygon resampled uniformly, starting at the first vertex."""
    v = np.asarray(vertices, dtype=float)
    return resample(Contour(v), samples_per_edge * len(v))


def ellipse_points(rx: float, ry: float, n: int = 720, center=(0.0, 0.0), phase: float = 0.0) -> np.ndarray:
    t = np.arange(n) * 2 * np.pi / n
    x, y = rx * np.cos(t), ry * np.sin(t)
    c, s = math.cos(phase), math.sin(phase)
    return np.column_stack([c * x - s * y, s * x + c * y]) + np.asarray(center, dtype=float)


def circle_contour(radius: float = 50.0, n: int = 512, center=(0.0, 0.0)) -> Contour:
    return Contour(ellipse_points(radius, radius, n, center))


def bulged_square(side: float = 100.0, turn_deg: float = 85.0, arc_points: int = 200) -> np.ndarray:
    """Square whose top side is replaced by an outward circular arc.

    ``turn_deg`` is the tangent rotation along the arc.
    """
    half = math.radians(turn_deg) / 2
    r = side / (2 * math.sin(half))
    cy = side - r * math.cos(half)  # arc centre below the top edge
    # arc from the top-right corner to the top-left corner, counter-clockwise
    t = np.linspace(math.pi / 2 - half, math.pi / 2 + half, arc_points)
    arc = np.column_stack([side / 2 + r * np.cos(t), cy + r * np.sin(t)])
    return np.vstack([[0.0, 0.0], [side, 0.0], arc[:-1], [[0.0, side]]])


def transform_points(points, angle: float = 0.0, scale: float = 1.0, offset=(0.0, 0.0)) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    rot = np.array([[c, -s], [s, c]]) * scale
    return np.asarray(points, dtype=float) @ rot.T + np.asarray(offset, dtype=float)


def rasterize(points, shape: tuple[int, int]) -> BinaryImage:
    """Fill a polygon given in ``(x, y)`` into a ``(rows, cols)`` image."""
    p = np.asarray(points, dtype=float)
    mask = np.zeros(shape, dtype=bool)
    rr, cc = fill_polygon(p[:, 1], p[:, 0], shape=shape)
    mask[rr, cc] = True
    return BinaryImage(mask)


def jittered_shape(kind: str, rng: np.random.Generator, jitter: float = 0.02, radius: float = 50.0) -> np.ndarray:
    """One random instance of ``square``, ``triangle`` or ``circle``.

    Polygon vertices move independently by up to ``jitter * radius`` along
    each axis. Circles have no vertices, so their two radii vary by up to
    ``jitter`` instead. Every instance also gets a random rotation, scale
    and position.
    """
    angle = rng.uniform(0, 2 * np.pi)
    scale = rng.uniform(0.5, 2.0)
    offset = rng.uniform(-100, 100, size=2)
    if kind == "circle":
        rx, ry = radius * (1 + rng.uniform(-jitter, jitter, size=2))
        pts = ellipse_points(rx, ry)
    else:
        n_sides = {"triangle": 3, "square": 4}[kind]
        pts = regular_polygon(n_sides, radius)
        pts = pts + rng.uniform(-jitter, jitter, size=pts.shape) * radius
    return transform_points(pts, angle, scale, offset)


CORPUS_CLASSES = ("circle", "square", "triangle")


def make_corpus(
    per_class: int = 10,
    seed: int = 42,
    jitter: float = 0.02,
    n_points: int = 256,
    params: CornerParams = CornerParams(),
    q: QuantizerConfig = QuantizerConfig(),
) -> dict[str, ShapeDescriptor]:
    """Descriptors named ``<class>-<id>`` for the three-class benchmark corpus."""
    rng = np.random.default_rng(seed)
    out = {}
    for kind in CORPUS_CLASSES:
        for i in range(per_class):
            name = f"{kind}-{i:02d}"
            c = resample(Contour(jittered_shape(kind, rng, jitter)), n_points)
            out[name] = describe_shape(c, params, q, name=name, closed_fallback=True)
    return out


def write_corpus(directory, descriptors: dict[str, ShapeDescriptor]) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    return [write_descriptor(d, directory / f"{name}.xml") for name, d in descriptors.items()]
