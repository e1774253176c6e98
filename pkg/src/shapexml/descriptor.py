"""Shape descriptors and their XML file format.

One file holds one shape::

    <?xml version="1.0" encoding="ISO-8859-1" ?>
    <SHAPE>
      <Name>...</Name>
      <NP>256</NP>
      <NC>1</NC>
      <C Number="1">
        <TYPE>CV</TYPE>
        <A>A2</A>
        <l>L2</l>
        <beta>B2</beta>
        <Dg>D2</Dg>
      </C>
    </SHAPE>

The writer always produces exactly this layout, so equal descriptors give
equal bytes. The reader also accepts ``Ai``/``li``/``beta_i``/``Dgi`` tag
spellings, optional ``NP``/``NC`` and unknown extra elements.
"""

from __future__ import annotations

import os
import re
import tempfile
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape

from .codes import KINDS, CurveCode, parse_symbol
from .errors import EncodingError, SchemaError, XmlSyntaxError

ENCODING = "ISO-8859-1"
XML_DECLARATION = f'<?xml version="1.0" encoding="{ENCODING}" ?>'

# feature class -> (canonical tag, accepted aliases)
_TAGS = {
    "A": ("A", ("A", "Ai")),
    "L": ("l", ("l", "li")),
    "B": ("beta", ("beta", "beta_i")),
    "D": ("Dg", ("Dg", "Dgi")),
}

_ACCEPTED_ENCODINGS = {"iso-8859-1", "latin-1", "latin1", "iso8859-1", "utf-8", "utf8", "us-ascii", "ascii"}


@dataclass(frozen=True)
class ShapeDescriptor:
    name: str
    np: int | None
    curves: tuple[CurveCode, ...]

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(self.curves))
        try:
            self.name.encode(ENCODING)
        except UnicodeEncodeError:
            raise EncodingError(f"shape name {self.name!r} is not representable in {ENCODING}") from None
        # XML cannot carry these verbatim (\r is normalized away on parse)
        if re.search(r"[\x00-\x08\x0b-\x1f\x7f]", self.name):
            raise ValueError(f"shape name {self.name!r} contains control characters")
        if self.np is not None and self.np < 0:
            raise ValueError("np must be non-negative")

    @property
    def nc(self) -> int:
        return len(self.curves)

    def symbol_strings(self) -> list[str]:
        return [str(c) for c in self.curves]


def to_xml(d: ShapeDescriptor) -> bytes:
    lines = [XML_DECLARATION, "<SHAPE>", f"  <Name>{escape(d.name)}</Name>"]
    if d.np is not None:
        lines.append(f"  <NP>{d.np}</NP>")
    lines.append(f"  <NC>{d.nc}</NC>")
    for k, code in enumerate(d.curves, start=1):
        lines.append(f'  <C Number="{k}">')
        lines.append(f"    <TYPE>{code.kind}</TYPE>")
        for cls, sym in zip("ALBD", code.symbols):
            tag = _TAGS[cls][0]
            lines.append(f"    <{tag}>{sym}</{tag}>")
        lines.append("  </C>")
    lines.append("</SHAPE>")
    return ("\n".join(lines) + "\n").encode(ENCODING)


def _declared_encoding(data: bytes) -> str | None:
    m = re.match(rb'\s*<\?xml[^>]*encoding\s*=\s*["\']([A-Za-z0-9._-]+)["\']', data)
    return m.group(1).decode("ascii").lower() if m else None


def _int_text(el, what: str) -> int:
    text = (el.text or "").strip()
    if not text.isdigit():
        raise SchemaError(f"{what} must be a non-negative integer, got {text!r}")
    return int(text)


def _parse_curve(c: ET.Element, expected: int) -> CurveCode:
    number = c.get("Number", "").strip()
    if not number.isdigit() or int(number) != expected:
        raise SchemaError(f"curve Number {number!r} out of sequence, expected {expected}")
    type_el = c.find("TYPE")
    if type_el is None:
        raise SchemaError(f"curve {expected} has no TYPE")
    kind = (type_el.text or "").strip()
    if kind not in KINDS:
        raise SchemaError(f"curve {expected}: bad TYPE {kind!r}")
    bins = {}
    for cls, (_, aliases) in _TAGS.items():
        found = [el for tag in aliases for el in c.findall(tag)]
        if len(found) > 1:
            raise SchemaError(f"curve {expected}: repeated {cls} element")
        if not found:
            if kind == "R" and cls != "L":
                bins[cls] = 0
                continue
            raise SchemaError(f"curve {expected}: missing {cls} element")
        token = (found[0].text or "").strip()
        try:
            got_cls, value = parse_symbol(token)
        except ValueError:
            raise SchemaError(f"curve {expected}: bad symbol {token!r}") from None
        if got_cls != cls:
            raise SchemaError(f"curve {expected}: {token!r} in the {cls} slot")
        bins[cls] = value
    try:
        return CurveCode(kind, bins["A"], bins["L"], bins["B"], bins["D"])
    except ValueError as exc:
        raise SchemaError(f"curve {expected}: {exc}") from None


def from_xml(data: bytes) -> ShapeDescriptor:
    if isinstance(data, str):
        raise TypeError("from_xml expects bytes")
    enc = _declared_encoding(data)
    if enc is not None and enc not in _ACCEPTED_ENCODINGS:
        raise EncodingError(f"unsupported encoding {enc!r}")
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise XmlSyntaxError(str(exc)) from None
    except (LookupError, UnicodeError) as exc:
        raise EncodingError(str(exc)) from None
    if root.tag != "SHAPE":
        raise SchemaError(f"root element must be SHAPE, got {root.tag!r}")

    name_el = root.find("Name")
    name = "" if name_el is None or name_el.text is None else name_el.text
    np_el = root.find("NP")
    n_points = None if np_el is None else _int_text(np_el, "NP")
    curves = tuple(_parse_curve(c, k) for k, c in enumerate(root.findall("C"), start=1))
    nc_el = root.find("NC")
    if nc_el is not None and _int_text(nc_el, "NC") != len(curves):
        raise SchemaError(f"NC says {nc_el.text.strip()} but file has {len(curves)} curves")
    try:
        return ShapeDescriptor(name=name, np=n_points, curves=curves)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def sanitize_filename(name: str) -> str:
    safe = re.sub(r"[^A-Za-z0-9._-]+", "_", name).strip("._")
    return safe or "shape"


def atomic_write(path, data: bytes) -> None:
    """Write via a temporary file in the same directory and rename into place."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_descriptor(d: ShapeDescriptor, path) -> Path:
    """Persist ``d``; a directory ``path`` gets ``<sanitized name>.xml`` inside it."""
    path = Path(path)
    if path.is_dir():
        path = path / f"{sanitize_filename(d.name)}.xml"
    atomic_write(path, to_xml(d))
    return path


def read_descriptor(path) -> ShapeDescriptor:
    return from_xml(Path(path).read_bytes())
