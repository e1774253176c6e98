"""Exception types raised across the toolkit."""


class ShapeXmlError(Exception):
    """Base class for every error raised by shapexml."""


# image / contour
class MalformedHeader(ShapeXmlError):
    pass


class TruncatedData(ShapeXmlError):
    pass


class UnsupportedFormat(ShapeXmlError):
    pass


class EmptyImage(ShapeXmlError):
    pass


class DegenerateShape(ShapeXmlError):
    pass


class TooFewPoints(ShapeXmlError):
    pass


# corners / features
class ContourTooShort(ShapeXmlError):
    pass


class InsufficientCorners(ShapeXmlError):
    pass


class InvalidTriangle(ShapeXmlError):
    pass


class ZeroChord(ShapeXmlError):
    pass


# xml
class XmlSyntaxError(ShapeXmlError):
    pass


class SchemaError(ShapeXmlError):
    pass


class EncodingError(ShapeXmlError):
    pass


# matching / retrieval
class EmptyDescriptor(ShapeXmlError):
    pass


class DirectoryUnreadable(ShapeXmlError):
    pass


class AllFilesInvalid(ShapeXmlError):
    pass


class EmptyStore(ShapeXmlError):
    pass


class InsufficientClassMembers(ShapeXmlError):
    pass
