"""Hyperbolic metric utilities on the open unit disk.

Two coordinate charts share the disk: the conformal (Poincare) chart, where
geodesics are circular arcs orthogonal to the boundary, and the projective
(Beltrami-Klein) chart, where geodesics are straight chords and distances
come from cross ratios of the chord endpoints.  An upper half-plane
embedding is included as an independent cross-check route.

All coordinates are binary64 and every function is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi

# Points this close to the boundary are rejected: distances blow up there and
# the log/arccosh evaluations lose their conditioning.
BOUNDARY_MARGIN = 1e-12

# Below this Euclidean separation a chord direction is not trustworthy.
MIN_CHORD_SEPARATION = 1e-12

# Minimum twice-signed-area accepted for a triangle.
AREA_EPS = 1e-10

# Slack allowed on the metric triangle inequality of side lengths.
SIDE_SLACK = 1e-10


class GeometryError(ValueError):
    """Invalid geometric input."""


class OutsideDiskError(GeometryError):
    """Point not strictly inside the unit disk."""


class DegenerateChordError(GeometryError):
    """Chord construction from (nearly) coincident points."""


class DegenerateTriangleError(GeometryError):
    """Triangle with (nearly) collinear vertices."""


@dataclass(frozen=True)
class DiskPoint:
    """A point strictly inside the unit disk (either model, per context)."""

    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not (self.x * self.x + self.y * self.y < 1.0 - BOUNDARY_MARGIN):
            raise OutsideDiskError(
                f"point ({self.x!r}, {self.y!r}) is not strictly inside the unit disk"
            )

    @property
    def xy(self) -> tuple[float, float]:
        return (self.x, self.y)

    def norm2(self) -> float:
        return self.x * self.x + self.y * self.y


def as_point(p) -> DiskPoint:
    """Coerce a DiskPoint or coordinate pair to DiskPoint."""
    if isinstance(p, DiskPoint):
        return p
    x, y = p
    return DiskPoint(x, y)


def wrap_turns(x: float) -> float:
    """Reduce an angle in turns to [0, 1)."""
    r = x % 1.0
    return r if r < 1.0 else 0.0


@dataclass(frozen=True)
class BoundaryPoint:
    """A point of the unit circle, stored as an angle in turns in [0, 1)."""

    angle: float

    def __post_init__(self):
        object.__setattr__(self, "angle", wrap_turns(float(self.angle)))

    @property
    def xy(self) -> tuple[float, float]:
        a = TWO_PI * self.angle
        return (math.cos(a), math.sin(a))

    @property
    def x(self) -> float:
        return math.cos(TWO_PI * self.angle)

    @property
    def y(self) -> float:
        return math.sin(TWO_PI * self.angle)


@dataclass(frozen=True)
class Triangle:
    """Non-degenerate triangle in the disk, the billiard obstacle.

    Vertices are stored counterclockwise starting from the lexicographically
    smallest one, so any relabeling of the same three points produces an
    identical value.
    """

    p: DiskPoint
    q: DiskPoint
    r: DiskPoint

    def __post_init__(self):
        p, q, r = as_point(self.p), as_point(self.q), as_point(self.r)
        area2 = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
        if area2 < 0.0:
            q, r = r, q
            area2 = -area2
        if area2 <= AREA_EPS:
            raise DegenerateTriangleError(
                "degenerate triangle: vertices are (nearly) collinear"
            )
        verts = [p, q, r]
        start = min(range(3), key=lambda i: (verts[i].x, verts[i].y))
        verts = verts[start:] + verts[:start]
        object.__setattr__(self, "p", verts[0])
        object.__setattr__(self, "q", verts[1])
        object.__setattr__(self, "r", verts[2])

    @property
    def vertices(self) -> tuple[DiskPoint, DiskPoint, DiskPoint]:
        return (self.p, self.q, self.r)

    def signed_area2(self) -> float:
        p, q, r = self.p, self.q, self.r
        return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)


@dataclass(frozen=True)
class SideLengths:
    """Hyperbolic side lengths of a triangle.

    alpha = d(Q,R), beta = d(R,P), gamma = d(P,Q); gamma is the side the
    perpendicular foot is dropped onto.
    """

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        a, b, g = float(self.alpha), float(self.beta), float(self.gamma)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)
        object.__setattr__(self, "gamma", g)
        if a < 0.0 or b < 0.0 or g <= 0.0:
            raise GeometryError(f"invalid side lengths ({a}, {b}, {g})")
        if a > b + g + SIDE_SLACK or b > a + g + SIDE_SLACK or g > a + b + SIDE_SLACK:
            raise GeometryError(
                f"side lengths ({a}, {b}, {g}) violate the triangle inequality"
            )


def _arccosh(z: float) -> float:
    # z >= 1 in exact arithmetic; rounding of near-equal points can push it
    # a few ulps below, which the clamp absorbs.
    if z < 1.0:
        z = 1.0
    return math.log(z + math.sqrt(z * z - 1.0))


def poincare_distance(p: DiskPoint, q: DiskPoint) -> float:
    """Geodesic distance in the conformal model.

    arccosh(1 + 2|p-q|^2 / ((1-|p|^2)(1-|q|^2)))
    """
    p, q = as_point(p), as_point(q)
    d2 = (p.x - q.x) ** 2 + (p.y - q.y) ** 2
    if d2 == 0.0:
        return 0.0
    z = 1.0 + 2.0 * d2 / ((1.0 - p.norm2()) * (1.0 - q.norm2()))
    return _arccosh(z)


def tangent_gap(d: float) -> float:
    """log((e^d + 1)/(e^d - 1)) = log coth(d/2), strictly decreasing, involutive.

    Evaluated as log1p(2/expm1(d)), which keeps full relative precision at
    both ends of the range (the plain quotient loses the involution beyond
    d of about 15).
    """
    if d <= 0.0:
        raise GeometryError(f"tangent_gap requires a positive distance, got {d!r}")
    return math.log1p(2.0 / math.expm1(d))


def to_klein(p: DiskPoint) -> DiskPoint:
    """Conformal-to-projective change of chart; fixes the origin and rays."""
    p = as_point(p)
    s = 1.0 + p.norm2()
    return DiskPoint(2.0 * p.x / s, 2.0 * p.y / s)


def from_klein(p: DiskPoint) -> DiskPoint:
    """Projective-to-conformal change of chart, inverse of to_klein."""
    p = as_point(p)
    x, y = _from_klein_xy(p.x, p.y)
    return DiskPoint(x, y)


def _from_klein_xy(x: float, y: float) -> tuple[float, float]:
    # Raw formula; also valid on the closed disk (boundary maps to itself).
    s = 1.0 + math.sqrt(max(1.0 - x * x - y * y, 0.0))
    return (x / s, y / s)


def _chord_endpoints_xy(p: DiskPoint, q: DiskPoint):
    """Unit-circle intersections of line pq; first endpoint nearest to p."""
    dx, dy = q.x - p.x, q.y - p.y
    a = dx * dx + dy * dy
    if a <= MIN_CHORD_SEPARATION * MIN_CHORD_SEPARATION:
        raise DegenerateChordError(
            "chord endpoints undefined: points are (nearly) coincident"
        )
    b = 2.0 * (p.x * dx + p.y * dy)
    c = p.norm2() - 1.0
    disc = math.sqrt(b * b - 4.0 * a * c)
    # stable quadratic: c < 0 guarantees one root each side of t = 0
    if b >= 0.0:
        t1 = (-b - disc) / (2.0 * a)
        t2 = (2.0 * c) / (-b - disc)
    else:
        t1 = (2.0 * c) / (-b + disc)
        t2 = (-b + disc) / (2.0 * a)
    tneg, tpos = (t1, t2) if t1 < t2 else (t2, t1)
    eneg = (p.x + tneg * dx, p.y + tneg * dy)
    epos = (p.x + tpos * dx, p.y + tpos * dy)
    # |endpoint - p| = |t| * |q - p|; ties go to the t < 0 side
    if abs(tneg) <= tpos:
        return eneg, epos
    return epos, eneg


def klein_chord_endpoints(p: DiskPoint, q: DiskPoint) -> tuple[BoundaryPoint, BoundaryPoint]:
    """Boundary endpoints of the projective-model geodesic through p and q.

    The first endpoint is the one nearer to p (Euclidean).
    """
    p, q = as_point(p), as_point(q)
    (x1, y1), (x2, y2) = _chord_endpoints_xy(p, q)
    a1 = wrap_turns(math.atan2(y1, x1) / TWO_PI)
    a2 = wrap_turns(math.atan2(y2, x2) / TWO_PI)
    return (BoundaryPoint(a1), BoundaryPoint(a2))


def klein_distance(p: DiskPoint, q: DiskPoint) -> float:
    """Projective-model distance via the endpoint cross ratio.

    0.5 * |log(|v1 q| |v2 p| / (|v1 p| |v2 q|))| with v1, v2 the chord
    endpoints.  Equal points give 0; separations below the chord guard fall
    back to the conformal route, which stays defined there.
    """
    p, q = as_point(p), as_point(q)
    dx, dy = q.x - p.x, q.y - p.y
    sep2 = dx * dx + dy * dy
    if sep2 == 0.0:
        return 0.0
    if sep2 <= MIN_CHORD_SEPARATION * MIN_CHORD_SEPARATION:
        return poincare_distance(from_klein(p), from_klein(q))
    v1, v2 = _chord_endpoints_xy(p, q)
    a = math.hypot(v1[0] - q.x, v1[1] - q.y) * math.hypot(v2[0] - p.x, v2[1] - p.y)
    b = math.hypot(v1[0] - p.x, v1[1] - p.y) * math.hypot(v2[0] - q.x, v2[1] - q.y)
    return 0.5 * abs(math.log(a / b))


def klein_tangent_gap(p: DiskPoint, q: DiskPoint) -> float:
    """tangent_gap of the projective-model distance between p and q."""
    return tangent_gap(klein_distance(p, q))


def foot_distance(sides: SideLengths) -> float:
    """Length of the perpendicular from the apex down to the gamma side line.

    From the law of cosines and the right-triangle rule,
    sinh(h)^2 = (cosh b - cosh(a-g)) (cosh(a+g) - cosh b) / sinh(g)^2.
    This equals the minimum distance from the apex over the whole line.
    """
    a, b, g = sides.alpha, sides.beta, sides.gamma
    num = (math.cosh(b) - math.cosh(a - g)) * (math.cosh(a + g) - math.cosh(b))
    if num < 0.0:
        num = 0.0  # rounding dust at the degenerate margins
    return math.asinh(math.sqrt(num) / math.sinh(g))


def _check_not_collinear(p: DiskPoint, q: DiskPoint, r: DiskPoint) -> None:
    area2 = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    if abs(area2) <= AREA_EPS:
        raise DegenerateTriangleError(
            "degenerate triangle: vertices are (nearly) collinear"
        )


def delta(p: DiskPoint, q: DiskPoint, r: DiskPoint) -> float:
    """Projective-model distance from r to the geodesic line through p, q."""
    p, q, r = as_point(p), as_point(q), as_point(r)
    _check_not_collinear(p, q, r)
    sides = SideLengths(
        alpha=klein_distance(q, r),
        beta=klein_distance(r, p),
        gamma=klein_distance(p, q),
    )
    return foot_distance(sides)


def omega(r: DiskPoint, p: DiskPoint, q: DiskPoint) -> float:
    """Ratio of the three foot distances to the three tangent gaps.

    Symmetric in all three vertices; compares to 1 exactly when each
    per-side foot distance compares the same way to its gap.
    """
    r, p, q = as_point(r), as_point(p), as_point(q)
    num = delta(p, q, r) + delta(r, p, q) + delta(q, r, p)
    den = (
        klein_tangent_gap(p, q)
        + klein_tangent_gap(r, p)
        + klein_tangent_gap(q, r)
    )
    return num / den


def to_half_plane(p: DiskPoint) -> tuple[float, float]:
    """Map a conformal-disk point to the upper half plane via w = i(1+z)/(1-z)."""
    p = as_point(p)
    z = complex(p.x, p.y)
    w = (1j * z + 1j) / (1.0 - z)
    return (w.real, w.imag)


def half_plane_distance(a: tuple[float, float], b: tuple[float, float]) -> float:
    """Hyperbolic distance in the upper half plane (metric ds = |dz|/y)."""
    (x1, y1), (x2, y2) = a, b
    if y1 <= 0.0 or y2 <= 0.0:
        raise GeometryError("half-plane points need positive second coordinate")
    z = 1.0 + ((x1 - x2) ** 2 + (y1 - y2) ** 2) / (2.0 * y1 * y2)
    return _arccosh(z)
