import numpy as np
import pytest

from shapexml.codes import CurveCode
from shapexml.contour import BinaryImage
from shapexml.descriptor import ShapeDescriptor
from shapexml.synthetic import polygon_contour, regular_polygon

REFERENCE_LISTING = b"""<?xml version="1.0" encoding="ISO-8859-1" ?>
<SHAPE>
<Name>Exemple d'un descripteur XML</Name>
<C Number="1">
<TYPE>CV</TYPE>
<A>A2</A>
<l>L2</l>
<beta>B2</beta>
<Dg>D2</Dg>
</C>
</SHAPE>
"""


@pytest.fixture
def square_image():
    px = np.zeros((10, 10), dtype=bool)
    px[3:7, 2:6] = True
    return BinaryImage(px)


@pytest.fixture
def square_contour():
    return polygon_contour(regular_polygon(4, 50.0, phase=np.pi / 4), 64)


@pytest.fixture
def pentagon_contour():
    return polygon_contour(regular_polygon(5, 50.0), 64)


@pytest.fixture
def worked_example():
    """Single-curve shapes a, b, c of the classic three-shape comparison."""

    def one(name, text):
        return ShapeDescriptor(name, None, (CurveCode.from_string("CV", text),))

    return {
        "a": one("a", "A1L2B2D1"),
        "b": one("b", "A2L2B2D2"),
        "c": one("c", "A0L2B0D0"),
    }
