"""Counting and constructing inscribed triangles that circumscribe an obstacle.

For an obstacle triangle in the projective disk, the number m of triangles
inscribed in the unit circle whose sides all touch the obstacle is 0, 1 or 2.
The boundary locus of the third vertex, for a fixed chord pair, is an
ellipse tangent to the unit circle at the chord endpoints; the same locus
arises as the envelope of the family of third-side lines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .hypgeom import (
    TWO_PI,
    BoundaryPoint,
    DegenerateChordError,
    DiskPoint,
    GeometryError,
    Triangle,
    as_point,
    delta,
    klein_chord_endpoints,
    klein_distance,
    klein_tangent_gap,
    omega,
    poincare_distance,
    to_klein,
    wrap_turns,
)

# Width of the "exactly one inscribed triangle" band on the classification
# margin.  The one-triangle set has measure zero; the band makes the
# classifier total.
DEFAULT_BAND = 1e-9

# Runtime sanity tolerances for ellipse invariants.
TANGENCY_TOL = 1e-9
CONTAINMENT_TOL = 1e-10


@dataclass(frozen=True)
class InscribedCount:
    """Three-way count with the signed margin that produced it.

    m = 1 only when |margin| <= boundary_band; m = 0 iff margin is below the
    band and m = 2 iff it is above.  The margin is the foot-minus-gap value
    for the side routes and an equivalent signed quantity for the others.
    """

    m: int
    margin: float
    boundary_band: float

    def __post_init__(self):
        band = self.boundary_band
        if band < 0.0:
            raise GeometryError("boundary band must be nonnegative")
        expected = 1 if abs(self.margin) <= band else (0 if self.margin < 0.0 else 2)
        if self.m != expected:
            raise GeometryError(
                f"inconsistent count m={self.m} for margin={self.margin!r}, band={band!r}"
            )


def _classify(margin: float, band: float) -> InscribedCount:
    m = 1 if abs(margin) <= band else (0 if margin < 0.0 else 2)
    return InscribedCount(m=m, margin=margin, boundary_band=band)


@dataclass(frozen=True)
class ChordFrame:
    """Orthonormal frame attached to a chord of the unit circle.

    t1, t2 are the chord endpoints with t1 - t2 in (0, 1/2] turns; t3 is the
    arc midpoint with t3 - t2 in (0, 1/2]; t4 = t3 + 1/4.  u is the chord's
    coordinate along t3 (common to every chord point), nonnegative under
    this convention except for rounding at a diameter.
    """

    t1: BoundaryPoint
    t2: BoundaryPoint
    t3: BoundaryPoint
    t4: BoundaryPoint
    u: float

    def to_frame(self, x: float, y: float) -> tuple[float, float]:
        """Coordinates of a Euclidean point in the {t3, t4} basis."""
        c3, s3 = self.t3.xy
        return (x * c3 + y * s3, -x * s3 + y * c3)

    def from_frame(self, x1: float, x2: float) -> tuple[float, float]:
        """Euclidean point from {t3, t4} coordinates."""
        c3, s3 = self.t3.xy
        return (x1 * c3 - x2 * s3, x1 * s3 + x2 * c3)


def chord_frame(p: DiskPoint, q: DiskPoint) -> ChordFrame:
    """Frame of the chord through p and q, fixed by the turn conventions."""
    p, q = as_point(p), as_point(q)
    e1, e2 = klein_chord_endpoints(p, q)
    a1, a2 = e1.angle, e2.angle
    pairs = []
    if 0.0 < wrap_turns(a1 - a2) <= 0.5:
        pairs.append((a1, a2))
    if 0.0 < wrap_turns(a2 - a1) <= 0.5:
        pairs.append((a2, a1))
    frames = []
    for t1, t2 in pairs:
        half = wrap_turns((t1 + t2) / 2.0)
        for t3 in (half, wrap_turns(half + 0.5)):
            if 0.0 < wrap_turns(t3 - t2) <= 0.5:
                frames.append((t1, t2, t3))
    if not frames:
        raise GeometryError("chord frame construction failed")
    # A diameter admits both labelings; keep the one with the smaller t3.
    frames.sort(key=lambda f: f[2])
    t1, t2, t3 = frames[0]
    c3 = math.cos(TWO_PI * t3)
    s3 = math.sin(TWO_PI * t3)
    u = 0.5 * ((p.x + q.x) * c3 + (p.y + q.y) * s3)
    return ChordFrame(
        t1=BoundaryPoint(t1),
        t2=BoundaryPoint(t2),
        t3=BoundaryPoint(t3),
        t4=BoundaryPoint(t3 + 0.25),
        u=u,
    )


@dataclass(frozen=True)
class TangencyEllipse:
    """Ellipse tangent to the unit circle at the chord endpoints.

    In frame coordinates the locus is ((x1 - c)/a)^2 + (x2/b)^2 = 1 with
    semi-axis a along t3, b along t4 and center offset c along t3.
    """

    frame: ChordFrame
    a: float
    b: float
    c: float

    def __post_init__(self):
        if self.a <= 0.0 or not (0.0 < self.b <= 1.0 + CONTAINMENT_TOL):
            raise GeometryError(f"invalid ellipse axes a={self.a!r}, b={self.b!r}")
        if abs(self.c) + self.a > 1.0 + CONTAINMENT_TOL:
            raise GeometryError("ellipse is not contained in the closed disk")
        for t in (self.frame.t1, self.frame.t2):
            if abs(self.quadratic_form(*t.xy) - 1.0) > TANGENCY_TOL:
                raise GeometryError("ellipse misses a chord endpoint")

    def quadratic_form(self, x: float, y: float) -> float:
        """((x1 - c)/a)^2 + (x2/b)^2 at a Euclidean point; 1 on the locus."""
        x1, x2 = self.frame.to_frame(x, y)
        return ((x1 - self.c) / self.a) ** 2 + (x2 / self.b) ** 2

    def point_at(self, tau: float) -> tuple[float, float]:
        """Euclidean point of the locus at parameter tau (radians)."""
        return self.frame.from_frame(
            self.c + self.a * math.cos(tau), self.b * math.sin(tau)
        )

    @property
    def center_xy(self) -> tuple[float, float]:
        return self.frame.from_frame(self.c, 0.0)


def _frame_side_coords(frame: ChordFrame, p: DiskPoint, q: DiskPoint):
    _, pp = frame.to_frame(p.x, p.y)
    _, qq = frame.to_frame(q.x, q.y)
    return frame.u, pp, qq


def tangency_ellipse(p: DiskPoint, q: DiskPoint) -> TangencyEllipse:
    """Tangency ellipse of the chord pair, by the rational coefficient route."""
    p, q = as_point(p), as_point(q)
    frame = chord_frame(p, q)
    u, pp, qq = _frame_side_coords(frame, p, q)
    u2 = u * u
    den = (
        pp * pp * (qq * qq + u2)
        - 2.0 * pp * qq
        + (qq * qq - 2.0) * u2
        + u2 * u2
        + 1.0
    )
    f1 = pp * pp + u2 - 1.0
    f2 = qq * qq + u2 - 1.0
    f3 = pp * qq + u2 - 1.0
    a = math.sqrt(f1 * f2) * abs(f3) / den
    b = abs(f3) / math.sqrt(den)
    c = u * (pp - qq) ** 2 / den
    return TangencyEllipse(frame=frame, a=a, b=b, c=c)


def tangency_ellipse_via_gap(p: DiskPoint, q: DiskPoint) -> TangencyEllipse:
    """Same ellipse via k = exp of the chord's hyperbolic length."""
    p, q = as_point(p), as_point(q)
    frame = chord_frame(p, q)
    u = frame.u
    k = math.exp(klein_distance(p, q))
    k2 = k * k
    s2 = 1.0 - u * u
    n = (k2 + 2.0 * k * u + 1.0) * (k2 - 2.0 * k * u + 1.0)
    a = 2.0 * k * (k2 + 1.0) * s2 / n
    b = (k2 + 1.0) * math.sqrt(s2) / math.sqrt(n)
    c = (k2 - 1.0) ** 2 * u / n
    return TangencyEllipse(frame=frame, a=a, b=b, c=c)


def count_inscribed(t: Triangle, band: float = DEFAULT_BAND) -> InscribedCount:
    """Count by comparing the foot distance with the chord's tangent gap.

    The margin is evaluated on the stored canonical side, so any relabeling
    of the same triangle yields an identical result.
    """
    margin = delta(t.p, t.q, t.r) - klein_tangent_gap(t.p, t.q)
    return _classify(margin, band)


def count_inscribed_via_omega(t: Triangle, band: float = DEFAULT_BAND) -> InscribedCount:
    """Count via the symmetric three-side ratio; margin is omega - 1."""
    return _classify(omega(t.r, t.p, t.q) - 1.0, band)


def classify_via_ellipse(t: Triangle, band: float = DEFAULT_BAND) -> InscribedCount:
    """Count by locating the third vertex against the tangency ellipse.

    The margin is the quadratic-form residual scaled by its local gradient
    norm, i.e. an approximate signed Euclidean distance from the locus.
    """
    ell = tangency_ellipse(t.p, t.q)
    x1, x2 = ell.frame.to_frame(t.r.x, t.r.y)
    value = ((x1 - ell.c) / ell.a) ** 2 + (x2 / ell.b) ** 2 - 1.0
    grad = math.hypot(2.0 * (x1 - ell.c) / ell.a**2, 2.0 * x2 / ell.b**2)
    margin = value / grad if grad > 1e-12 else -1.0
    return _classify(margin, band)


def envelope_line(p: DiskPoint, q: DiskPoint, theta: float) -> tuple[float, float, float]:
    """Third-side line cut by the tangents from the circle point at angle theta.

    theta is the Euclidean angle (radians) of the pivot vertex on the unit
    circle; the returned (A, B, C) describe A x + B y + C = 0 in Euclidean
    coordinates.  Over all theta the lines envelope the tangency ellipse.
    """
    p, q = as_point(p), as_point(q)
    frame = chord_frame(p, q)
    u, pp, qq = _frame_side_coords(frame, p, q)
    th = theta - TWO_PI * frame.t3.angle
    ax, ay, a0 = _envelope_coeffs_frame(u, pp, qq, th)
    c3, s3 = frame.t3.xy
    return (ax * c3 - ay * s3, ax * s3 + ay * c3, a0)


def _envelope_coeffs_frame(u, pp, qq, th):
    c, s = math.cos(th), math.sin(th)
    su = pp + qq
    ax = (u * u + 1.0 - pp * qq) * c + su * u * s - 2.0 * u
    ay = su * u * c + (1.0 + pp * qq - u * u) * s - su
    a0 = -2.0 * u * c - su * s + pp * qq + u * u + 1.0
    return ax, ay, a0


def envelope_point(p: DiskPoint, q: DiskPoint, theta: float) -> tuple[float, float]:
    """Euclidean contact point of the theta line with the envelope.

    Solves the line equation together with its theta derivative; degenerates
    at the two chord-endpoint angles, where the family closes.
    """
    p, q = as_point(p), as_point(q)
    frame = chord_frame(p, q)
    u, pp, qq = _frame_side_coords(frame, p, q)
    th = theta - TWO_PI * frame.t3.angle
    c, s = math.cos(th), math.sin(th)
    e1 = u * u + 1.0 - pp * qq
    e2 = (pp + qq) * u
    e3 = 1.0 + pp * qq - u * u
    a11 = e1 * c + e2 * s - 2.0 * u
    a12 = e2 * c + e3 * s - (pp + qq)
    b1 = -(-2.0 * u * c - (pp + qq) * s + (pp * qq + u * u + 1.0))
    a21 = -e1 * s + e2 * c
    a22 = -e2 * s + e3 * c
    b2 = -(2.0 * u * s - (pp + qq) * c)
    det = a11 * a22 - a12 * a21
    if det == 0.0:
        raise GeometryError("envelope contact point is singular at this angle")
    x1 = (b1 * a22 - b2 * a12) / det
    x2 = (a11 * b2 - a21 * b1) / det
    return frame.from_frame(x1, x2)


@dataclass(frozen=True)
class ArcCircle:
    """Full circle carrying one of the two conformal-model boundary arcs."""

    center: tuple[float, float]
    radius: float


def poincare_arcs(p: DiskPoint, q: DiskPoint) -> tuple[ArcCircle, ArcCircle]:
    """Circles of the one-triangle locus for conformal-model points p, q.

    Both circles pass through the chord endpoints; the first carries the arc
    nearer to t3.  The projective image of either circle is the tangency
    ellipse of the corresponding chord.
    """
    p, q = as_point(p), as_point(q)
    d = poincare_distance(p, q)
    if d == 0.0:
        raise DegenerateChordError("arc construction from coincident points")
    frame = chord_frame(to_klein(p), to_klein(q))
    u = frame.u
    k = math.exp(d)
    m = k * k - 1.0
    s = math.sqrt(max(1.0 - u * u, 0.0))
    c3x, c3y = frame.t3.xy
    arcs = []
    for sign in (-1.0, +1.0):
        a = m / (u * m + sign * 2.0 * k * s)
        radius = math.sqrt((a - u) ** 2 + 1.0 - u * u)
        arcs.append(ArcCircle(center=(a * c3x, a * c3y), radius=radius))
    return (arcs[0], arcs[1])


@dataclass(frozen=True)
class InscribedTriangle:
    """Inscribed triangle touching the obstacle on all three sides.

    tangential marks orbits recovered from a grazing double root, whose
    vertex angles carry a widened tolerance (about 1e-8 turns instead of
    1e-13).
    """

    vertices: tuple[BoundaryPoint, BoundaryPoint, BoundaryPoint]
    tangential: bool


def construct_inscribed_triangles(t: Triangle) -> list[InscribedTriangle]:
    """All inscribed triangles circumscribing t, from the period-3 orbits."""
    from .circlemap import find_period3_orbits  # deferred: avoids an import cycle

    out = []
    for orbit in find_period3_orbits(t):
        verts = tuple(BoundaryPoint(a) for a in orbit.angles)
        out.append(InscribedTriangle(vertices=verts, tangential=orbit.tangential))
    return out
