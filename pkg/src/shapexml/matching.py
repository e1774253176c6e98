"""Global count filter and weighted edit distance between symbol strings."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .codes import parse_symbol, tokenize
from .descriptor import ShapeDescriptor
from .errors import EmptyDescriptor

MODES = ("per-curve-best", "concatenated")


@dataclass(frozen=True)
class GlobalSignature:
    n_points: int | None
    n_curves: int
    n_convex: int
    n_concave: int
    n_lines: int


def global_signature(d: ShapeDescriptor) -> GlobalSignature:
    kinds = [c.kind for c in d.curves]
    return GlobalSignature(
        n_points=d.np,
        n_curves=len(kinds),
        n_convex=kinds.count("CV"),
        n_concave=kinds.count("CC"),
        n_lines=kinds.count("R"),
    )


def global_filter(a: GlobalSignature, b: GlobalSignature, tol: int = 1) -> bool:
    return (
        abs(a.n_curves - b.n_curves) <= tol
        and abs(a.n_convex - b.n_convex) <= tol
        and abs(a.n_concave - b.n_concave) <= tol
        and abs(a.n_lines - b.n_lines) <= tol
    )


@dataclass(frozen=True)
class CostModel:
    gap_w: float = 2.0
    intra_step: float = 0.5
    cross_class: float = 2.0

    def __post_init__(self):
        if not self.gap_w > 0:
            raise ValueError("gap_w must be positive")
        if not 0 < self.intra_step <= self.cross_class <= 2 * self.gap_w:
            raise ValueError("need 0 < intra_step <= cross_class <= 2 * gap_w")


@lru_cache(maxsize=4096)
def symbol_cost(s1: str, s2: str, cm: CostModel = CostModel()) -> float:
    if s1 == s2:
        return 0.0
    c1, b1 = parse_symbol(s1)
    c2, b2 = parse_symbol(s2)
    if c1 == c2:
        return cm.intra_step * abs(b1 - b2)
    return cm.cross_class


def _symbols(s) -> list[str]:
    return tokenize(s) if isinstance(s, str) else list(s)


def edit_distance(s, t, cm: CostModel = CostModel()) -> tuple[float, np.ndarray]:
    """Weighted Levenshtein distance and the full ``(m+1, n+1)`` score matrix.

    ``s`` and ``t`` are symbol strings (``"A2L2B2D2"``) or token sequences.
    Rows follow ``s``, columns follow ``t``.
    """
    s, t = _symbols(s), _symbols(t)
    m, n = len(s), len(t)
    D = np.zeros((m + 1, n + 1))
    D[:, 0] = np.arange(m + 1) * cm.gap_w
    D[0, :] = np.arange(n + 1) * cm.gap_w
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            D[i, j] = min(
                D[i - 1, j - 1] + symbol_cost(s[i - 1], t[j - 1], cm),
                D[i - 1, j] + cm.gap_w,
                D[i, j - 1] + cm.gap_w,
            )
    return float(D[m, n]), D


@dataclass(frozen=True)
class MatchResult:
    global_pass: bool
    curve_scores: np.ndarray
    shape_distance: float


def curve_score_matrix(a: ShapeDescriptor, b: ShapeDescriptor, cm: CostModel = CostModel()) -> np.ndarray:
    out = np.empty((a.nc, b.nc))
    for i, ca in enumerate(a.curves):
        for j, cb in enumerate(b.curves):
            out[i, j] = edit_distance(ca.symbols, cb.symbols, cm)[0]
    return out


def _concat(curves: Sequence) -> list[str]:
    return [sym for c in curves for sym in c.symbols]


def best_rotation(a: ShapeDescriptor, b: ShapeDescriptor, cm: CostModel = CostModel()) -> tuple[int, float]:
    """Cyclic shift of ``b``'s curve list minimizing the concatenated distance."""
    sa = _concat(a.curves)
    best = (0, float("inf"))
    for r in range(b.nc):
        score = edit_distance(sa, _concat(b.curves[r:] + b.curves[:r]), cm)[0]
        if score < best[1]:
            best = (r, score)
    return best


def shape_distance(
    a: ShapeDescriptor,
    b: ShapeDescriptor,
    cm: CostModel = CostModel(),
    mode: str = "per-curve-best",
    tol: int = 1,
) -> MatchResult:
    """Compare two descriptors.

    ``per-curve-best`` averages, for each curve, its best match in the other
    shape, in both directions, then takes the mean of the two directions.
    ``concatenated`` aligns the full symbol strings, trying every cyclic
    start of either curve list.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; choose from {MODES}")
    if a.nc == 0 or b.nc == 0:
        raise EmptyDescriptor("cannot match a descriptor without curves")
    scores = curve_score_matrix(a, b, cm)
    if mode == "per-curve-best":
        dist = 0.5 * (scores.min(axis=1).mean() + scores.min(axis=0).mean())
    else:
        dist = min(best_rotation(a, b, cm)[1], best_rotation(b, a, cm)[1])
    passed = global_filter(global_signature(a), global_signature(b), tol)
    return MatchResult(global_pass=passed, curve_scores=scores, shape_distance=float(dist))
