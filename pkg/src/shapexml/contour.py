"""Binary image ingestion, outer boundary tracing and arc-length resampling."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .errors import (
    DegenerateShape,
    EmptyImage,
    MalformedHeader,
    TooFewPoints,
    TruncatedData,
    UnsupportedFormat,
)

DEFAULT_RESAMPLE = 256
DEFAULT_THRESHOLD = 128


@dataclass(frozen=True)
class BinaryImage:
    """Boolean raster, ``pixels[row, col]`` is True for foreground."""

    pixels: np.ndarray

    def __post_init__(self):
        px = np.array(self.pixels, dtype=bool)
        if px.ndim != 2 or px.shape[0] < 1 or px.shape[1] < 1:
            raise ValueError(f"expected a non-empty 2-D grid, got shape {px.shape}")
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


def _cyclic_perimeter(points: np.ndarray) -> float:
    return float(np.linalg.norm(np.roll(points, -1, axis=0) - points, axis=1).sum())


def signed_area(points) -> float:
    """Shoelace area; positive for counter-clockwise order in (x, y)."""
    p = np.asarray(points, dtype=float)
    q = np.roll(p, -1, axis=0)
    return 0.5 * float(np.sum(p[:, 0] * q[:, 1] - q[:, 0] * p[:, 1]))


@dataclass(frozen=True)
class Contour:
    """Closed, counter-clockwise point cycle.

    Repeated consecutive points are dropped and clockwise input is reversed
    (keeping the first point), so every instance is canonical.
    """

    points: np.ndarray
    perimeter: float = field(init=False)

    def __post_init__(self):
        p = np.array(self.points, dtype=float)
        if p.ndim != 2 or p.shape[1] != 2:
            raise ValueError(f"expected (n, 2) points, got shape {p.shape}")
        if not np.all(np.isfinite(p)):
            raise ValueError("contour points must be finite")
        # drop consecutive duplicates, including the wrap-around pair
        keep = np.any(p != np.roll(p, 1, axis=0), axis=1)
        if len(p) and not keep.any():
            keep[0] = True
        p = p[keep]
        if len(p) < 3:
            raise DegenerateShape(f"contour needs >= 3 distinct points, got {len(p)}")
        if signed_area(p) < 0:
            p = np.concatenate([p[:1], p[:0:-1]])
        p.setflags(write=False)
        object.__setattr__(self, "points", p)
        object.__setattr__(self, "perimeter", _cyclic_perimeter(p))

    @classmethod
    def from_points(cls, points) -> "Contour":
        return cls(points)

    def __len__(self) -> int:
        return len(self.points)

    def arc_positions(self) -> np.ndarray:
        """Cumulative arc length at each point, starting from 0."""
        seg = np.linalg.norm(np.diff(self.points, axis=0), axis=1)
        return np.concatenate([[0.0], np.cumsum(seg)])

    def transformed(self, matrix=None, offset=(0.0, 0.0)) -> "Contour":
        m = np.eye(2) if matrix is None else np.asarray(matrix, dtype=float)
        return Contour.from_points(self.points @ m.T + np.asarray(offset, dtype=float))


# ---------------------------------------------------------------- netpbm

_FORMATS = {b"P1", b"P2", b"P4", b"P5"}


def _read_header(data: bytes, count: int):
    """Read ``count`` whitespace separated header tokens after the magic number.

    Returns the tokens and the offset just past the single whitespace byte
    that terminates the last token.
    """
    pos = 2
    tokens = []
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos : pos + 1].isspace():
            pos += 1
        if pos < n and data[pos : pos + 1] == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise MalformedHeader("header ended early")
        tok = data[start:pos]
        if not tok.isdigit():
            raise MalformedHeader(f"non-numeric header field {tok!r}")
        tokens.append(int(tok))
    if pos < n:
        if not data[pos : pos + 1].isspace():
            raise MalformedHeader("missing whitespace after header")
        pos += 1
    return tokens, pos


def load_binary_image(source, threshold: int = DEFAULT_THRESHOLD) -> BinaryImage:
    """Decode a PBM (P1/P4) or PGM (P2/P5) byte stream.

    ``source`` may be bytes or a binary file object. For PGM, a pixel is
    foreground when its value, scaled to 0..255, is below ``threshold``.
    """
    data = source if isinstance(source, (bytes, bytearray)) else source.read()
    data = bytes(data)
    magic = data[:2]
    if magic not in _FORMATS:
        if magic[:1] == b"P" and magic[1:2].isdigit():
            raise UnsupportedFormat(f"netpbm variant {magic.decode()} is not supported")
        raise UnsupportedFormat("not a PBM/PGM stream")
    if not 0 <= threshold <= 255:
        raise ValueError("threshold must lie in [0, 255]")

    is_pbm = magic in (b"P1", b"P4")
    (w, h, *rest), offset = _read_header(data, 2 if is_pbm else 3)
    if w < 1 or h < 1:
        raise MalformedHeader(f"bad dimensions {w}x{h}")
    body = data[offset:]

    if magic == b"P1":
        # P1 digits need not be separated
        digits = re.findall(rb"[01]", re.sub(rb"#[^\n\r]*", b"", body))
        if re.search(rb"[^01\s]", re.sub(rb"#[^\n\r]*", b"", body)):
            raise MalformedHeader("P1 raster contains characters other than 0/1")
        if len(digits) < w * h:
            raise TruncatedData(f"expected {w * h} pixels, found {len(digits)}")
        px = np.array([d == b"1" for d in digits[: w * h]], dtype=bool).reshape(h, w)
    elif magic == b"P4":
        row_bytes = (w + 7) // 8
        if len(body) < row_bytes * h:
            raise TruncatedData(f"expected {row_bytes * h} bytes, found {len(body)}")
        raw = np.frombuffer(body[: row_bytes * h], dtype=np.uint8).reshape(h, row_bytes)
        px = np.unpackbits(raw, axis=1)[:, :w].astype(bool)
    else:
        maxval = rest[0]
        if not 0 < maxval < 65536:
            raise MalformedHeader(f"bad maxval {maxval}")
        if magic == b"P2":
            vals = re.sub(rb"#[^\n\r]*", b"", body).split()
            if len(vals) < w * h:
                raise TruncatedData(f"expected {w * h} samples, found {len(vals)}")
            try:
                arr = np.array([int(v) for v in vals[: w * h]], dtype=np.int64)
            except ValueError as exc:
                raise MalformedHeader(f"non-numeric sample: {exc}") from None
        else:
            dtype = np.dtype(">u2") if maxval > 255 else np.dtype(np.uint8)
            need = w * h * dtype.itemsize
            if len(body) < need:
                raise TruncatedData(f"expected {need} bytes, found {len(body)}")
            arr = np.frombuffer(body[:need], dtype=dtype).astype(np.int64)
        scaled = arr.reshape(h, w) * (255.0 / maxval)
        px = scaled < threshold
    return BinaryImage(px)


def write_pbm(img: BinaryImage) -> bytes:
    """Encode as plain (P1) PBM."""
    rows = [" ".join("1" if v else "0" for v in row) for row in img.pixels]
    return f"P1\n{img.width} {img.height}\n".encode() + "\n".join(rows).encode() + b"\n"


# ---------------------------------------------------------------- tracing

# clockwise on screen (rows grow downward), starting west
_MOORE = [(0, -1), (-1, -1), (-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1)]
_MOORE_INDEX = {d: i for i, d in enumerate(_MOORE)}

_EIGHT = np.ones((3, 3), dtype=bool)


def boundary_mask(mask: np.ndarray) -> np.ndarray:
    """Foreground pixels with a 4-neighbour in the background (or off-image)."""
    padded = np.pad(mask, 1, constant_values=False)
    interior = (
        padded[:-2, 1:-1] & padded[2:, 1:-1] & padded[1:-1, :-2] & padded[1:-1, 2:]
    )
    return mask & ~interior


def largest_component(img: BinaryImage) -> np.ndarray:
    """Mask of the 8-connected component with most pixels.

    Ties go to the component whose first pixel in row-major order comes first.
    """
    labels, n = ndimage.label(img.pixels, structure=_EIGHT)
    if n == 0:
        raise EmptyImage("image has no foreground pixels")
    sizes = np.bincount(labels.ravel())[1:]
    best = np.flatnonzero(sizes == sizes.max()) + 1
    if len(best) > 1:
        flat = labels.ravel()
        firsts = [np.argmax(flat == lab) for lab in best]
        best = [best[int(np.argmin(firsts))]]
    return labels == best[0]


def _moore_trace(mask: np.ndarray) -> list[tuple[int, int]]:
    obj = np.pad(mask, 1, constant_values=False)
    rows, cols = np.nonzero(obj)
    start = (int(rows[0]), int(cols[0]))
    # the west neighbour of the first row-major pixel is background
    p, back = start, 0
    path = [start]
    first_move = None
    limit = 4 * int(mask.sum()) + 16
    for _ in range(limit):
        for k in range(1, 9):
            d = (back + k) % 8
            q = (p[0] + _MOORE[d][0], p[1] + _MOORE[d][1])
            if obj[q]:
                break
        else:
            break  # isolated pixel
        # Jacob's criterion: the state after a move depends only on (p, d),
        # so leaving the start the same way again closes the cycle
        if first_move is None:
            first_move = d
        elif p == start and d == first_move:
            break
        prev = (p[0] + _MOORE[(d - 1) % 8][0], p[1] + _MOORE[(d - 1) % 8][1])
        back = _MOORE_INDEX[(prev[0] - q[0], prev[1] - q[1])]
        p = q
        path.append(p)
    if len(path) > 1 and path[-1] == start:
        path.pop()
    return [(r - 1, c - 1) for r, c in path]


def trace_outer_contour(img: BinaryImage) -> Contour:
    """Moore-neighbour trace of the largest component's outer boundary.

    Points are ``(x, y) = (column, row)`` pixel centres. Holes are ignored.
    """
    comp = largest_component(img)
    n_boundary = int(boundary_mask(comp).sum())
    if n_boundary < 3:
        raise DegenerateShape(f"largest component has only {n_boundary} boundary pixels")
    path = _moore_trace(comp)
    pts = np.array([(c, r) for r, c in path], dtype=float)
    return Contour.from_points(pts)


# ---------------------------------------------------------------- resampling


def resample(c: Contour, n: int = DEFAULT_RESAMPLE) -> Contour:
    """``n`` points equally spaced by arc length, starting at ``c``'s first point."""
    if n < 8:
        raise TooFewPoints(f"resample count must be >= 8, got {n}")
    closed = np.vstack([c.points, c.points[:1]])
    s = np.concatenate([[0.0], np.cumsum(np.linalg.norm(np.diff(closed, axis=0), axis=1))])
    targets = np.arange(n) * (s[-1] / n)
    x = np.interp(targets, s, closed[:, 0])
    y = np.interp(targets, s, closed[:, 1])
    return Contour.from_points(np.column_stack([x, y]))
