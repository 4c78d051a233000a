"""External contour tracing over 8-connected white regions.

Components are located with run-length labeling (row runs merged by
union-find), then each component's outer boundary is walked with
Moore-neighbor tracing from its topmost-leftmost pixel. Holes are not
traced; components touching the frame are traced clipped.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NoDocumentError
from .raster import BinaryRaster

# neighbor offsets in clockwise screen order (y grows downward)
_DIRS = ((1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1))


@dataclass(frozen=True)
class Contour:
    """Closed boundary polygon; points are (x, y) pixel coordinates in
    counter-clockwise order (positive shoelace sum)."""

    points: np.ndarray

    def __post_init__(self):
        arr = np.array(self.points, dtype=np.int64, copy=True)
        if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 1:
            raise ValueError(f"contour needs an (n, 2) point array, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "points", arr)

    def __len__(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class ContourSet:
    contours: list[Contour]
    areas: list[float]
    area_by_index: dict[int, float] = field(default_factory=dict)

    def __post_init__(self):
        if not self.area_by_index:
            object.__setattr__(self, "area_by_index", dict(enumerate(self.areas)))

    def __len__(self) -> int:
        return len(self.contours)


def contour_area(c: Contour) -> float:
    """Absolute shoelace area; exact on integer points (doubled sum is integer)."""
    pts = c.points
    x = pts[:, 0]
    y = pts[:, 1]
    doubled = np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)
    return abs(int(doubled)) / 2.0


def _signed_doubled_area(pts: list[tuple[int, int]]) -> int:
    s = 0
    n = len(pts)
    for i in range(n):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return s


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _row_runs(mask: np.ndarray):
    """White runs per row as parallel arrays (row, x_start, x_end inclusive)."""
    h, w = mask.shape
    padded = np.zeros((h, w + 2), dtype=np.int8)
    padded[:, 1:-1] = mask
    diff = np.diff(padded, axis=1)
    sy, sx = np.nonzero(diff == 1)
    _, ex = np.nonzero(diff == -1)
    return sy, sx, ex - 1


def _component_starts(mask: np.ndarray) -> list[tuple[int, int]]:
    """Topmost-leftmost pixel of every 8-connected white component,
    in raster-scan order."""
    h, _ = mask.shape
    run_y, run_x0, run_x1 = _row_runs(mask)
    n = len(run_y)
    if n == 0:
        return []
    uf = _UnionFind(n)
    row_ptr = np.searchsorted(run_y, np.arange(h + 1))
    for y in range(1, h):
        a, a_end = row_ptr[y - 1], row_ptr[y]
        b, b_end = row_ptr[y], row_ptr[y + 1]
        while a < a_end and b < b_end:
            # 8-adjacent when the intervals overlap after widening by one
            if run_x0[a] <= run_x1[b] + 1 and run_x1[a] >= run_x0[b] - 1:
                uf.union(a, b)
            if run_x1[a] <= run_x1[b]:
                a += 1
            else:
                b += 1
    starts: dict[int, tuple[int, int]] = {}
    for i in range(n):
        root = uf.find(i)
        if root not in starts:
            starts[root] = (int(run_x0[i]), int(run_y[i]))
    return list(starts.values())


def _trace_border(flat: bytes, stride: int, start: tuple[int, int]) -> list[tuple[int, int]]:
    """Moore-neighbor walk around one component, clockwise on screen.

    ``flat`` is the zero-padded mask as bytes; ``start`` must be the
    component's topmost-leftmost pixel (its W/NW/N/NE neighbors are
    background), so the walk is seeded as if entered from the west.
    """
    sx, sy = start
    offsets = [dy * stride + dx for dx, dy in _DIRS]

    def step(idx: int, prev_dir: int):
        d = (prev_dir + 1) % 8
        for _ in range(8):
            nidx = idx + offsets[d]
            if flat[nidx]:
                return nidx, (d + 4) % 8
            d = (d + 1) % 8
        return None

    start_idx = (sy + 1) * stride + (sx + 1)
    first = step(start_idx, 4)
    if first is None:
        return [start]

    # walk one full cycle of the deterministic (position, backtrack) state
    anchor = first
    cycle = []
    state = anchor
    limit = 4 * len(flat) + 8
    while True:
        cycle.append(state[0])
        state = step(*state)
        if state == anchor:
            break
        limit -= 1
        if limit <= 0:
            raise RuntimeError("border trace failed to close")

    pts = [((idx % stride) - 1, (idx // stride) - 1) for idx in cycle]
    if _signed_doubled_area(pts) < 0:
        pts.reverse()
    pivot = pts.index((sx, sy))
    return pts[pivot:] + pts[:pivot]


def find_external_contours(img: BinaryRaster) -> ContourSet:
    """One outer contour per 8-connected white component."""
    mask = (img.px == 255)
    h, w = mask.shape
    padded = np.zeros((h + 2, w + 2), dtype=np.uint8)
    padded[1:-1, 1:-1] = mask
    flat = padded.tobytes()
    stride = w + 2

    contours = []
    for start in _component_starts(mask.astype(np.int8)):
        pts = _trace_border(flat, stride, start)
        contours.append(Contour(np.array(pts, dtype=np.int64)))
    areas = [contour_area(c) for c in contours]
    return ContourSet(contours=contours, areas=areas)


def largest_contour(s: ContourSet) -> tuple[int, Contour]:
    """Index and contour of the maximum area; ties go to the smallest index."""
    if len(s) == 0:
        raise NoDocumentError("no document found")
    idx = int(np.argmax(s.areas))
    return idx, s.contours[idx]
