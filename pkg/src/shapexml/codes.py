"""Symbol alphabet and the per-curve code built from it."""

from __future__ import annotations

import re
from dataclasses import dataclass

KINDS = ("CV", "CC", "R")

# feature class letter -> allowed bin numbers
BINS = {
    "A": range(0, 3),
    "L": range(1, 4),
    "B": range(0, 5),
    "D": range(0, 3),
}

SYMBOLS = tuple(f"{cls}{b}" for cls, bins in BINS.items() for b in bins)

_TOKEN = re.compile(r"([ALBD])(\d)")


def parse_symbol(token: str) -> tuple[str, int]:
    m = _TOKEN.fullmatch(token)
    if not m or int(m.group(2)) not in BINS[m.group(1)]:
        raise ValueError(f"not a symbol of the alphabet: {token!r}")
    return m.group(1), int(m.group(2))


def tokenize(text: str) -> list[str]:
    """Split ``"A2L2B2D2"`` into ``["A2", "L2", "B2", "D2"]``, validating each token."""
    tokens = []
    pos = 0
    for m in _TOKEN.finditer(text):
        if m.start() != pos:
            break
        tokens.append(m.group(0))
        pos = m.end()
    if pos != len(text):
        raise ValueError(f"not a symbol string: {text!r}")
    for t in tokens:
        parse_symbol(t)
    return tokens


@dataclass(frozen=True)
class CurveCode:
    """Quantized description of one curve.

    Bin numbers are stored as they appear in the symbols (``l`` runs 1..3,
    the others start at 0). Straight lines (kind ``R``) only carry a length
    bin; their area, angle and degree bins are fixed at zero.
    """

    kind: str
    a: int = 0
    l: int = 1  # noqa: E741
    b: int = 0
    d: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown curve kind {self.kind!r}")
        for cls, v in zip("ALBD", (self.a, self.l, self.b, self.d)):
            if v not in BINS[cls]:
                raise ValueError(f"{cls}{v} is outside the alphabet")
        if self.kind == "R" and (self.a, self.b, self.d) != (0, 0, 0):
            raise ValueError("a straight line code carries only a length bin")

    @property
    def symbols(self) -> tuple[str, str, str, str]:
        return (f"A{self.a}", f"L{self.l}", f"B{self.b}", f"D{self.d}")

    def __str__(self) -> str:
        return "".join(self.symbols)

    @classmethod
    def from_string(cls, kind: str, text: str) -> "CurveCode":
        toks = tokenize(text)
        if [t[0] for t in toks] != list("ALBD"):
            raise ValueError(f"expected A, L, B, D symbols in order, got {text!r}")
        a, l, b, d = (int(t[1]) for t in toks)  # noqa: E741
        return cls(kind, a, l, b, d)
