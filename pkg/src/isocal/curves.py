"""Oriented closed polygonal curves in the plane.

Everything downstream treats a curve as a polygon: smooth boundaries enter as
fine polygons, which turns every integral in the package into a finite sum
with a controllable deficit.  Orientation is never declared by the caller; it
is derived from the signed area (positive area = counterclockwise = interior
on the left of travel).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

# Single documented constant for "is this point on the boundary".
BOUNDARY_TOL_FACTOR = 1e-9
# Consecutive vertices closer than this fraction of the diameter are degenerate.
VERTEX_SEP_FACTOR = 1e-12


class CurveError(ValueError):
    """Invalid or degenerate curve input."""


class PointOnBoundaryError(CurveError):
    """Query point lies on (or numerically on) the curve."""


class OrientationError(CurveError):
    """Curve has the wrong orientation for the requested operation."""


@dataclass(frozen=True)
class Point2:
    """A point of the plane."""

    x1: float
    x2: float

    def __post_init__(self):
        if not (math.isfinite(self.x1) and math.isfinite(self.x2)):
            raise ValueError("point coordinates must be finite")

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2])


@dataclass(frozen=True)
class UnitVector2:
    """A unit vector of the plane; the norm is enforced to 1e-12."""

    u1: float
    u2: float

    def __post_init__(self):
        n = math.hypot(self.u1, self.u2)
        if abs(n - 1.0) > 1e-12:
            raise ValueError(f"not a unit vector: |u| = {n!r}")

    def as_array(self) -> np.ndarray:
        return np.array([self.u1, self.u2])


def _vec2(p) -> np.ndarray:
    """Coerce Point2 / UnitVector2 / sequence to a float array of shape (2,)."""
    if hasattr(p, "as_array"):
        return p.as_array()
    a = np.asarray(p, dtype=float)
    if a.shape != (2,):
        raise ValueError(f"expected a 2-vector, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class BoundaryNode:
    """Arc-length quadrature node: midpoint of a sub-edge with its tangent."""

    point: Point2
    tangent: UnitVector2
    weight: float

    def __post_init__(self):
        if self.weight <= 0:
            raise ValueError("quadrature weight must be positive")


@dataclass(frozen=True, eq=False)
class ClosedCurve:
    """Oriented closed polyline, at least 3 vertices, no repeated neighbours.

    The vertex array is copied and frozen; instances are immutable and safe
    to share across threads.
    """

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2:
            raise CurveError(f"vertices must have shape (n, 2), got {v.shape}")
        if len(v) < 3:
            raise CurveError("a closed curve needs at least 3 vertices")
        if not np.all(np.isfinite(v)):
            raise CurveError("vertices must be finite")
        diam = float(np.hypot(*(v.max(axis=0) - v.min(axis=0))))
        if diam == 0.0:
            raise CurveError("all vertices coincide")
        gaps = np.hypot(*(np.roll(v, -1, axis=0) - v).T)
        if gaps.min() <= VERTEX_SEP_FACTOR * diam:
            raise CurveError("consecutive vertices coincide (degenerate edge)")
        v.flags.writeable = False
        object.__setattr__(self, "vertices", v)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @cached_property
    def diameter(self) -> float:
        """Diagonal of the bounding box; the scale for all tolerances."""
        v = self.vertices
        return float(np.hypot(*(v.max(axis=0) - v.min(axis=0))))

    @cached_property
    def orientation(self) -> int:
        """+1 for positive (counterclockwise) orientation, -1 otherwise."""
        return 1 if signed_area(self) > 0 else -1

    @cached_property
    def is_simple(self) -> bool:
        """True if no two non-adjacent edges intersect (exact predicates)."""
        return _polygon_is_simple(self.vertices)

    def reversed(self) -> "ClosedCurve":
        return ClosedCurve(self.vertices[::-1])


def reverse(curve: ClosedCurve) -> ClosedCurve:
    """Same polygon traversed the other way round."""
    return curve.reversed()


def regular_polygon(n: int, radius: float = 1.0, center=(0.0, 0.0),
                    phase: float = 0.0) -> ClosedCurve:
    """Regular n-gon inscribed in the circle of given radius, CCW."""
    if n < 3:
        raise CurveError("need at least 3 vertices")
    th = phase + 2.0 * np.pi * (np.arange(n) + 0.5) / n
    c = _vec2(center)
    return ClosedCurve(np.c_[c[0] + radius * np.cos(th), c[1] + radius * np.sin(th)])


def perimeter(curve: ClosedCurve) -> float:
    """Sum of edge lengths; strictly positive for a valid curve."""
    v = curve.vertices
    return math.fsum(np.hypot(*(np.roll(v, -1, axis=0) - v).T))


def signed_area(curve: ClosedCurve) -> float:
    """Shoelace sum; positive iff the interior lies left of travel."""
    v = curve.vertices
    x, y = v[:, 0], v[:, 1]
    return 0.5 * math.fsum(x * np.roll(y, -1) - np.roll(x, -1) * y)


def boundary_node_arrays(curve: ClosedCurve, refinement: int = 1):
    """Quadrature nodes as plain arrays.

    Returns (points, tangents, weights, edge_ids, sub_starts, sub_ends); the
    nodes are midpoints of each edge subdivided `refinement` times, tangents
    are the (constant) edge directions, weights the sub-edge lengths.
    """
    if refinement < 1:
        raise ValueError("refinement must be >= 1")
    v = curve.vertices
    n = len(v)
    a = np.repeat(v, refinement, axis=0)
    e = np.repeat(np.roll(v, -1, axis=0) - v, refinement, axis=0)
    k = np.tile(np.arange(refinement, dtype=float), n)
    sub_starts = a + e * (k / refinement)[:, None]
    sub_ends = a + e * ((k + 1) / refinement)[:, None]
    points = 0.5 * (sub_starts + sub_ends)
    lengths = np.hypot(e[:, 0], e[:, 1])
    tangents = e / lengths[:, None]
    weights = lengths / refinement
    edge_ids = np.repeat(np.arange(n), refinement)
    return points, tangents, weights, edge_ids, sub_starts, sub_ends


def boundary_nodes(curve: ClosedCurve, refinement: int = 1) -> list[BoundaryNode]:
    """BoundaryNode list; weights sum to the perimeter up to rounding."""
    pts, tan, wts, _, _, _ = boundary_node_arrays(curve, refinement)
    return [
        BoundaryNode(Point2(*p), UnitVector2(*t), float(w))
        for p, t, w in zip(pts, tan, wts)
    ]


def distance_to_boundary(curve: ClosedCurve, x) -> float:
    """Euclidean distance from x to the polygon boundary."""
    p = _vec2(x)
    v = curve.vertices
    a = v
    b = np.roll(v, -1, axis=0)
    e = b - a
    ee = np.einsum("ij,ij->i", e, e)
    t = np.clip(np.einsum("ij,ij->i", p[None, :] - a, e) / ee, 0.0, 1.0)
    proj = a + t[:, None] * e
    return float(np.min(np.hypot(*(proj - p).T)))


def _require_off_boundary(curve: ClosedCurve, x) -> np.ndarray:
    p = _vec2(x)
    if distance_to_boundary(curve, p) <= BOUNDARY_TOL_FACTOR * curve.diameter:
        raise PointOnBoundaryError(f"point {p.tolist()} lies on the curve")
    return p


def winding_number(curve: ClosedCurve, x) -> int:
    """Signed number of turns of (y - x) as y traverses the curve.

    Computed as the sum of exact per-edge subtended angles; each edge that
    does not contain x subtends strictly less than pi, so the per-edge
    increment is unambiguous.
    """
    p = _require_off_boundary(curve, x)
    d = curve.vertices - p
    ang = np.arctan2(d[:, 1], d[:, 0])
    inc = np.diff(np.r_[ang, ang[:1]])
    inc = (inc + np.pi) % (2.0 * np.pi) - np.pi
    return int(round(math.fsum(inc) / (2.0 * np.pi)))


def contains(curve: ClosedCurve, x) -> bool:
    """Point membership for the region enclosed by the curve."""
    return winding_number(curve, x) != 0


def ensure_simple(curve: ClosedCurve) -> None:
    """Raise CurveError unless the polygon is simple (O(n^2) exact check)."""
    if not curve.is_simple:
        raise CurveError("curve is self-intersecting")


def ensure_positive(curve: ClosedCurve) -> None:
    """Raise OrientationError unless positively oriented (area > 0)."""
    if curve.orientation < 0:
        raise OrientationError(
            "curve is negatively oriented (signed area "
            f"{signed_area(curve):.6g}); reverse it explicitly"
        )


# ---------------------------------------------------------------------------
# exact orientation predicate and simplicity test


def _orient_exact(ax, ay, bx, by, cx, cy) -> int:
    """Sign of det(b - a, c - a), exactly.

    Fast float path with an error-bound filter; falls back to rational
    arithmetic when the float result is not certain.
    """
    detl = (bx - ax) * (cy - ay)
    detr = (by - ay) * (cx - ax)
    det = detl - detr
    errbound = 3.3306690738754716e-16 * (abs(detl) + abs(detr))
    if det > errbound:
        return 1
    if det < -errbound:
        return -1
    d = (Fraction(bx) - Fraction(ax)) * (Fraction(cy) - Fraction(ay)) - (
        Fraction(by) - Fraction(ay)
    ) * (Fraction(cx) - Fraction(ax))
    return (d > 0) - (d < 0)


def _on_segment(ax, ay, bx, by, px, py) -> bool:
    """Assuming p collinear with segment ab: does p lie on it (inclusive)?"""
    return (
        min(ax, bx) <= px <= max(ax, bx)
        and min(ay, by) <= py <= max(ay, by)
    )


def _segments_intersect(a, b, c, d) -> bool:
    """Closed-segment intersection with exact orientation signs."""
    o1 = _orient_exact(a[0], a[1], b[0], b[1], c[0], c[1])
    o2 = _orient_exact(a[0], a[1], b[0], b[1], d[0], d[1])
    o3 = _orient_exact(c[0], c[1], d[0], d[1], a[0], a[1])
    o4 = _orient_exact(c[0], c[1], d[0], d[1], b[0], b[1])
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and _on_segment(a[0], a[1], b[0], b[1], c[0], c[1]):
        return True
    if o2 == 0 and _on_segment(a[0], a[1], b[0], b[1], d[0], d[1]):
        return True
    if o3 == 0 and _on_segment(c[0], c[1], d[0], d[1], a[0], a[1]):
        return True
    if o4 == 0 and _on_segment(c[0], c[1], d[0], d[1], b[0], b[1]):
        return True
    return False


def _polygon_is_simple(v: np.ndarray) -> bool:
    n = len(v)
    a = v
    b = np.roll(v, -1, axis=0)
    # adjacent edges: reject collinear backtracking through the shared vertex
    for i in range(n):
        j = (i + 1) % n
        if _orient_exact(*v[i], *v[j], *v[(j + 1) % n]) == 0:
            back = (v[(j + 1) % n] - v[j]) @ (v[i] - v[j])
            if back > 0:
                return False
    # non-adjacent pairs: float prefilter, exact confirmation
    ex = b - a
    for i in range(n - 2):
        js = np.arange(i + 2, n if i > 0 else n - 1)
        if len(js) == 0:
            continue
        ca = a[js] - a[i]
        cb = b[js] - a[i]
        o1 = ex[i, 0] * ca[:, 1] - ex[i, 1] * ca[:, 0]
        o2 = ex[i, 0] * cb[:, 1] - ex[i, 1] * cb[:, 0]
        da = a[i] - a[js]
        db = b[i] - a[js]
        o3 = ex[js, 0] * da[:, 1] - ex[js, 1] * da[:, 0]
        o4 = ex[js, 0] * db[:, 1] - ex[js, 1] * db[:, 0]
        scale = np.abs(o1) + np.abs(o2) + np.abs(o3) + np.abs(o4) + 1e-300
        guard = (1e-12 * scale) ** 2
        candidates = js[(o1 * o2 <= guard) & (o3 * o4 <= guard)]
        for j in candidates:
            if _segments_intersect(a[i], b[i], a[j], b[j]):
                return False
    return True
