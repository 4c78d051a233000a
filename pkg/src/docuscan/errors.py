"""Exception types shared across the toolkit."""


class ScanError(Exception):
    """Base class for all docuscan errors."""


class NoDocumentError(ScanError):
    """No document-sized contour was found in the input image."""


class CornerOrderingError(ScanError):
    """The four points cannot be unambiguously assigned to corners;
    the user should re-click."""


class GeometryError(ScanError):
    """Degenerate geometry: collinear corners, singular homography, etc."""


class ImageFormatError(ScanError):
    """Unsupported or corrupt image file."""
