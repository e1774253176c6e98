"""Two-pass corner detector based on inscribed triangles.

A point ``p`` is a candidate when some triangle ``(p-, p, p+)`` with both arm
arc lengths inside ``[d_min, d_max] * perimeter`` has an opening angle at
``p`` no larger than ``alpha_max``. The second pass keeps candidates that are
sharper than every other candidate nearby.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .contour import Contour
from .errors import ContourTooShort


@dataclass(frozen=True)
class CornerParams:
    d_min: float = 0.03
    d_max: float = 0.07
    alpha_max: float = math.radians(150.0)
    nms_radius: float | None = None  # defaults to d_max

    def __post_init__(self):
        if self.nms_radius is None:
            object.__setattr__(self, "nms_radius", self.d_max)
        if not 0 < self.d_min < self.d_max < 0.5:
            raise ValueError(f"need 0 < d_min < d_max < 0.5, got {self.d_min}, {self.d_max}")
        if not 0 < self.alpha_max < math.pi:
            raise ValueError(f"alpha_max must lie in (0, pi), got {self.alpha_max}")
        if not self.nms_radius > 0:
            raise ValueError("nms_radius must be positive")


@dataclass(frozen=True)
class CornerCandidate:
    index: int
    alpha: float

    @property
    def sharpness(self) -> float:
        return math.pi - self.alpha


@dataclass(frozen=True)
class CornerSet:
    contour: Contour
    indices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.indices)

    def points(self) -> np.ndarray:
        return self.contour.points[list(self.indices)]


def opening_angle(p, p_minus, p_plus):
    """Angle at ``p`` by the law of cosines. Broadcasts over leading axes."""
    p, p_minus, p_plus = (np.asarray(v, dtype=float) for v in (p, p_minus, p_plus))
    a2 = np.sum((p - p_plus) ** 2, axis=-1)
    b2 = np.sum((p - p_minus) ** 2, axis=-1)
    c2 = np.sum((p_minus - p_plus) ** 2, axis=-1)
    with np.errstate(invalid="ignore", divide="ignore"):
        cos = (a2 + b2 - c2) / (2.0 * np.sqrt(a2 * b2))
    return np.arccos(np.clip(cos, -1.0, 1.0))


def candidate_pass(c: Contour, params: CornerParams = CornerParams()) -> list[CornerCandidate]:
    """First pass: the best (smallest) opening angle per point, kept if <= alpha_max."""
    n = len(c)
    if n < 8:
        raise ContourTooShort(f"corner detection needs >= 8 points, got {n}")
    pts = c.points
    P = c.perimeter
    s = c.arc_positions()
    tol = 1e-9 * P
    lo, hi = params.d_min * P - tol, params.d_max * P + tol
    ks = np.arange(1, n)

    out = []
    for i in range(n):
        fwd_arc = (s[(i + ks) % n] - s[i]) % P
        bwd_arc = (s[i] - s[(i - ks) % n]) % P
        fwd = ks[(fwd_arc >= lo) & (fwd_arc <= hi)]
        bwd = ks[(bwd_arc >= lo) & (bwd_arc <= hi)]
        if len(fwd) == 0 or len(bwd) == 0:
            continue
        p_plus = pts[(i + fwd) % n]
        p_minus = pts[(i - bwd) % n]
        alpha = opening_angle(pts[i], p_minus[:, None, :], p_plus[None, :, :])
        best = float(np.nanmin(alpha))
        if best <= params.alpha_max:
            out.append(CornerCandidate(i, best))
    return out


def nms_pass(
    candidates: list[CornerCandidate], c: Contour, params: CornerParams = CornerParams()
) -> CornerSet:
    """Second pass: keep candidates strictly sharper than all neighbours in range.

    Equal sharpness inside one window keeps the lower contour index.
    """
    if not candidates:
        return CornerSet(c, ())
    s = c.arc_positions()
    P = c.perimeter
    radius = params.nms_radius * P
    idx = np.array([cd.index for cd in candidates])
    sharp = np.array([cd.sharpness for cd in candidates])
    pos = s[idx]
    keep = []
    for j in range(len(candidates)):
        gap = np.abs(pos - pos[j])
        gap = np.minimum(gap, P - gap)
        near = gap <= radius
        near[j] = False
        beats = (sharp[near] > sharp[j]) | ((sharp[near] == sharp[j]) & (idx[near] < idx[j]))
        if not beats.any():
            keep.append(int(idx[j]))
    return CornerSet(c, tuple(sorted(keep)))


def detect_corners(c: Contour, params: CornerParams = CornerParams()) -> CornerSet:
    return nms_pass(candidate_pass(c, params), c, params)
