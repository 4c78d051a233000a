"""Planar geometry for document rectification.

Covers the chain from raw contour points to a warped top-down view:
convex hull (monotone chain), minimum-area enclosing rectangle (caliper
sweep over hull edges), corner-role assignment for arbitrarily ordered
click points, 4-point homography estimation (DLT, solved by Gaussian
elimination with partial pivoting) and inverse-mapped bilinear warping.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import CornerOrderingError, GeometryError
from .raster import AnyRaster, BinaryRaster, GrayRaster, Raster, clamp_u8


class Point(NamedTuple):
    x: float
    y: float


PointLike = Sequence[float]


def _as_points(points) -> np.ndarray:
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) point sequence, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError("points must be finite")
    return arr


@dataclass(frozen=True)
class Quad:
    """Four corners in the fixed role order top-left, top-right,
    bottom-left, bottom-right."""

    tl: Point
    tr: Point
    bl: Point
    br: Point

    def __post_init__(self):
        pts = [Point(*p) for p in (self.tl, self.tr, self.bl, self.br)]
        for name, p in zip(("tl", "tr", "bl", "br"), pts):
            object.__setattr__(self, name, p)
        for i in range(4):
            for j in range(i + 1, 4):
                if pts[i] == pts[j]:
                    raise GeometryError(f"quad corners must be distinct, got {pts}")
        # no three corners collinear: every corner triple spans a real triangle
        for skip in range(4):
            tri = [p for k, p in enumerate(pts) if k != skip]
            d = ((tri[1].x - tri[0].x) * (tri[2].y - tri[0].y)
                 - (tri[2].x - tri[0].x) * (tri[1].y - tri[0].y))
            if abs(d) < 1e-9:
                raise GeometryError(f"three quad corners are collinear: {tri}")

    def as_array(self) -> np.ndarray:
        return np.array([self.tl, self.tr, self.bl, self.br], dtype=np.float64)


def convex_hull(points) -> list[Point]:
    """Hull vertices in counter-clockwise order (positive shoelace sum),
    collinear interior vertices dropped. Degenerate inputs collapse to
    the two extreme points (or one, if all points coincide)."""
    arr = _as_points(points)
    pts = sorted({(float(x), float(y)) for x, y in arr})
    if len(pts) == 1:
        return [Point(*pts[0])]

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[tuple[float, float]] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:  # all collinear: keep the two extremes
        hull = [pts[0], pts[-1]]
    return [Point(*p) for p in hull]


def min_area_rect(points) -> np.ndarray:
    """Corners of the minimum-area enclosing rectangle, as a (4, 2) array
    in boundary cycle order (no role assignment; see order_corners).

    One side of the optimal rectangle is collinear with a hull edge, so
    the hull edges are swept as candidate orientations.
    """
    hull = convex_hull(points)
    if len(hull) < 3:
        raise GeometryError("min_area_rect needs at least 3 non-collinear points")
    hp = np.array(hull, dtype=np.float64)
    n = len(hp)

    best_area = math.inf
    best: np.ndarray | None = None
    for i in range(n):
        ex, ey = hp[(i + 1) % n] - hp[i]
        norm = math.hypot(ex, ey)
        ux, uy = ex / norm, ey / norm
        # rotate hull into the edge frame; enclosing box is axis-aligned there
        proj_u = hp[:, 0] * ux + hp[:, 1] * uy
        proj_v = -hp[:, 0] * uy + hp[:, 1] * ux
        u0, u1 = proj_u.min(), proj_u.max()
        v0, v1 = proj_v.min(), proj_v.max()
        area = (u1 - u0) * (v1 - v0)
        if area < best_area:
            best_area = area
            box_uv = np.array([[u0, v0], [u1, v0], [u1, v1], [u0, v1]])
            back = np.array([[ux, uy], [-uy, ux]])  # rows are the frame axes
            best = box_uv @ back
    assert best is not None
    return best


def order_corners(points) -> Quad:
    """Assign four arbitrarily ordered points to corner roles.

    tl minimizes x+y, br maximizes it; tr minimizes y-x, bl maximizes it.
    The result is invariant under input permutation. Exact ties or a
    point claiming two roles mean the classification is ambiguous and
    the caller should ask for fresh clicks.
    """
    arr = _as_points(points)
    if arr.shape[0] != 4:
        raise ValueError(f"corner ordering needs exactly 4 points, got {arr.shape[0]}")
    sums = arr[:, 0] + arr[:, 1]
    diffs = arr[:, 1] - arr[:, 0]

    roles = {}
    for role, values, pick in (("tl", sums, "min"), ("br", sums, "max"),
                               ("tr", diffs, "min"), ("bl", diffs, "max")):
        extreme = values.min() if pick == "min" else values.max()
        hits = np.flatnonzero(values == extreme)
        if len(hits) > 1:
            raise CornerOrderingError(f"ambiguous {role} corner, re-click corners")
        roles[role] = int(hits[0])
    if len(set(roles.values())) != 4:
        raise CornerOrderingError("a point fits two corner roles, re-click corners")
    return Quad(tl=Point(*arr[roles["tl"]]), tr=Point(*arr[roles["tr"]]),
                bl=Point(*arr[roles["bl"]]), br=Point(*arr[roles["br"]]))


@dataclass(frozen=True)
class Homography:
    """3x3 projective map, normalized so h[2, 2] = 1."""

    h: np.ndarray

    def __post_init__(self):
        arr = np.array(self.h, dtype=np.float64, copy=True)
        if arr.shape != (3, 3):
            raise ValueError(f"homography must be 3x3, got {arr.shape}")
        if abs(arr[2, 2]) < 1e-300:
            raise GeometryError("homography has zero scale")
        arr /= arr[2, 2]
        if abs(np.linalg.det(arr)) <= 1e-12:
            raise GeometryError("homography is singular")
        arr.setflags(write=False)
        object.__setattr__(self, "h", arr)

    @classmethod
    def identity(cls) -> "Homography":
        return cls(np.eye(3))

    def inverse(self) -> "Homography":
        return Homography(np.linalg.inv(self.h))

    def apply(self, points) -> np.ndarray:
        """Map (n, 2) points through the homography with perspective division."""
        arr = _as_points(points)
        hom = np.hstack([arr, np.ones((arr.shape[0], 1))])
        mapped = hom @ self.h.T
        return mapped[:, :2] / mapped[:, 2:3]


def _solve_linear(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Gaussian elimination with partial pivoting."""
    n = a.shape[0]
    m = np.hstack([a.astype(np.float64), b.reshape(n, 1).astype(np.float64)])
    for col in range(n):
        pivot = col + int(np.argmax(np.abs(m[col:, col])))
        if abs(m[pivot, col]) < 1e-12:
            raise GeometryError("singular system: degenerate quad")
        if pivot != col:
            m[[col, pivot]] = m[[pivot, col]]
        m[col] /= m[col, col]
        for row in range(col + 1, n):
            m[row] -= m[row, col] * m[col]
    x = np.zeros(n)
    for row in range(n - 1, -1, -1):
        x[row] = m[row, n] - m[row, row + 1:n] @ x[row + 1:]
    return x


def compute_homography(src: Quad, dst: Quad) -> Homography:
    """Homography mapping each src corner onto its dst counterpart (DLT
    on the exactly determined 8x8 system, h33 fixed to 1)."""
    s = src.as_array()
    d = dst.as_array()
    a = np.zeros((8, 8))
    b = np.zeros(8)
    for i in range(4):
        x, y = s[i]
        u, v = d[i]
        a[2 * i] = [x, y, 1, 0, 0, 0, -x * u, -y * u]
        a[2 * i + 1] = [0, 0, 0, x, y, 1, -x * v, -y * v]
        b[2 * i] = u
        b[2 * i + 1] = v
    coeffs = _solve_linear(a, b)
    h = np.append(coeffs, 1.0).reshape(3, 3)
    return Homography(h)


def warp_perspective(img: AnyRaster, h: Homography, out_w: int, out_h: int) -> AnyRaster:
    """Resample through the inverse map with bilinear interpolation.

    ``h`` maps source to destination; each output pixel is sampled at
    h^-1(p). Samples landing outside the source are black. Coordinates
    within 1e-7 of the integer lattice are snapped so that integral
    maps (identity, translation) reproduce input samples exactly.
    """
    hinv = h.inverse().h
    xs, ys = np.meshgrid(np.arange(out_w, dtype=np.float64),
                         np.arange(out_h, dtype=np.float64))
    denom = hinv[2, 0] * xs + hinv[2, 1] * ys + hinv[2, 2]
    sx = (hinv[0, 0] * xs + hinv[0, 1] * ys + hinv[0, 2]) / denom
    sy = (hinv[1, 0] * xs + hinv[1, 1] * ys + hinv[1, 2]) / denom

    for coord in (sx, sy):
        snapped = np.rint(coord)
        near = np.abs(coord - snapped) < 1e-7
        coord[near] = snapped[near]

    in_h, in_w = img.px.shape[:2]
    valid = (sx >= 0) & (sx <= in_w - 1) & (sy >= 0) & (sy <= in_h - 1)
    sx = np.where(valid, sx, 0.0)
    sy = np.where(valid, sy, 0.0)

    x0 = np.floor(sx).astype(np.int64)
    y0 = np.floor(sy).astype(np.int64)
    fx = sx - x0
    fy = sy - y0
    x1 = np.minimum(x0 + 1, in_w - 1)
    y1 = np.minimum(y0 + 1, in_h - 1)

    def sample(plane: np.ndarray) -> np.ndarray:
        p = plane.astype(np.float64)
        val = ((1 - fx) * (1 - fy) * p[y0, x0] + fx * (1 - fy) * p[y0, x1]
               + (1 - fx) * fy * p[y1, x0] + fx * fy * p[y1, x1])
        return clamp_u8(np.where(valid, val, 0.0))

    if isinstance(img, Raster):
        planes = [sample(img.px[:, :, ch]) for ch in range(3)]
        return Raster(np.stack(planes, axis=-1))
    return GrayRaster(sample(img.px))


def output_size_for(q: Quad) -> tuple[int, int]:
    """Pixel dimensions of the rectified image for a source quad.

    Edge lengths count gaps between corner pixels, so the pixel span is
    the rounded length plus one; a quad whose corners are the image
    corners maps back onto an identically sized image.
    """
    def dist(a: Point, b: Point) -> float:
        return math.hypot(a.x - b.x, a.y - b.y)

    out_w = int(round(max(dist(q.tr, q.tl), dist(q.br, q.bl)))) + 1
    out_h = int(round(max(dist(q.bl, q.tl), dist(q.br, q.tr)))) + 1
    return max(out_w, 1), max(out_h, 1)


def rect_quad(w: int, h: int) -> Quad:
    """Destination quad covering a w x h pixel grid corner to corner."""
    return Quad(tl=Point(0.0, 0.0), tr=Point(float(w - 1), 0.0),
                bl=Point(0.0, float(h - 1)), br=Point(float(w - 1), float(h - 1)))
