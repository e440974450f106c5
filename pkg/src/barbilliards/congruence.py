"""Congruence sweeps: when does every placement of a shape force rotation 1/3?

The size of a Euclidean triangle is measured by kappa, the radius of its
minimum enclosing circle (circumradius when acute, half the longest side
otherwise).  For a fixed similarity class, mu is the infimum kappa at which
every congruent copy inside the disk admits an inscribed circumscribing
triangle, hence has rotation number exactly 1/3.  mu is bracketed by
bisection over the scale with a sampled placement search at each scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .hypgeom import (
    BOUNDARY_MARGIN,
    DegenerateTriangleError,
    DiskPoint,
    GeometryError,
    Triangle,
)
from .inscribed import DEFAULT_BAND, count_inscribed

RIGHT_ANGLE_TOL = 1e-12     # relative tolerance in c^2 vs a^2 + b^2
EQUILATERAL_TOL = 1e-9      # relative side-ratio tolerance
ROTATION_SAMPLES = 36       # rotation sweep for non-equilateral shapes
SCALE_FLOOR = 1e-6          # bisection gives up below this scale


class MuConvergenceError(GeometryError):
    """Scale bisection failed to bracket; carries the partial bracket."""

    def __init__(self, message: str, lower: float, upper: float):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


def _euclidean_sides(t: Triangle) -> tuple[float, float, float]:
    p, q, r = t.vertices
    return (
        math.hypot(q.x - r.x, q.y - r.y),
        math.hypot(r.x - p.x, r.y - p.y),
        math.hypot(p.x - q.x, p.y - q.y),
    )


@dataclass(frozen=True)
class TriangleShape:
    """Similarity class: side ratios sorted descending, largest = 1."""

    ratios: tuple[float, float, float]
    kind: str  # "acute" | "right" | "obtuse"

    def __post_init__(self):
        a, b, c = sorted(self.ratios, reverse=True)
        if not (0.0 < c <= b <= a) or c + b <= a:
            raise DegenerateTriangleError(f"side ratios {self.ratios} are degenerate")
        object.__setattr__(self, "ratios", (a / a, b / a, c / a))
        if self.kind not in ("acute", "right", "obtuse"):
            raise GeometryError(f"unknown shape kind {self.kind!r}")

    @classmethod
    def from_sides(cls, a: float, b: float, c: float) -> "TriangleShape":
        s = sorted((float(a), float(b), float(c)), reverse=True)
        gap = s[0] * s[0] - (s[1] * s[1] + s[2] * s[2])
        if abs(gap) <= RIGHT_ANGLE_TOL * s[0] * s[0]:
            kind = "right"
        elif gap > 0.0:
            kind = "obtuse"
        else:
            kind = "acute"
        return cls(ratios=tuple(s), kind=kind)

    @classmethod
    def from_triangle(cls, t: Triangle) -> "TriangleShape":
        return cls.from_sides(*_euclidean_sides(t))

    @property
    def is_equilateral(self) -> bool:
        return self.ratios[0] - self.ratios[2] <= EQUILATERAL_TOL


def kappa(t: Triangle) -> float:
    """Radius of the minimum enclosing circle.

    Circumradius for acute triangles, half the longest side otherwise;
    scale-equivariant.
    """
    a, b, c = _euclidean_sides(t)
    shape = TriangleShape.from_sides(a, b, c)
    if shape.kind == "acute":
        return a * b * c / (2.0 * abs(t.signed_area2()))
    return max(a, b, c) / 2.0


def scale_about(x, lam: float, center=(0.0, 0.0)):
    """Dilation by lam about center; lam must be positive."""
    if lam <= 0.0:
        raise GeometryError(f"scale factor must be positive, got {lam!r}")
    cx, cy = center
    return (lam * (x[0] - cx) + cx, lam * (x[1] - cy) + cy)


def translate(x, tau):
    """Componentwise translation."""
    return (x[0] + tau[0], x[1] + tau[1])


def _admissible_from_vertices(verts, grid: int):
    """Grid sample of translations keeping every vertex strictly in the disk."""
    if grid < 1:
        raise ValueError("grid must be positive")
    limit2 = 1.0 - BOUNDARY_MARGIN  # squared-norm bound accepted by DiskPoint

    def admissible(tx, ty):
        return all((v[0] + tx) ** 2 + (v[1] + ty) ** 2 < limit2 for v in verts)

    los = [max(-v[0] - 1.0 for v in verts), max(-v[1] - 1.0 for v in verts)]
    his = [min(-v[0] + 1.0 for v in verts), min(-v[1] + 1.0 for v in verts)]
    # the identity placement leads the list when it qualifies
    out = [(0.0, 0.0)] if admissible(0.0, 0.0) else []
    for iy in range(grid):
        ty = los[1] + (his[1] - los[1]) * (iy + 0.5) / grid
        for ix in range(grid):
            tx = los[0] + (his[0] - los[0]) * (ix + 0.5) / grid
            if admissible(tx, ty):
                out.append((tx, ty))
    return out


def admissible_translations(t: Triangle, grid: int) -> list[tuple[float, float]]:
    """Translations of t whose image still lies strictly inside the disk."""
    return _admissible_from_vertices([v.xy for v in t.vertices], grid)


@dataclass(frozen=True)
class InvarianceReport:
    """Outcome of classifying every sampled congruent placement."""

    all_one_third: bool
    min_margin: float
    worst_translation: tuple[float, float]
    worst_rotation: float
    placements: int


def _rotate_vertices(verts, angle: float, center):
    c, s = math.cos(angle), math.sin(angle)
    cx, cy = center
    return [
        (cx + c * (x - cx) - s * (y - cy), cy + s * (x - cx) + c * (y - cy))
        for x, y in verts
    ]


def _enclosing_center(t: Triangle) -> tuple[float, float]:
    shape = TriangleShape.from_triangle(t)
    p, q, r = t.vertices
    if shape.kind != "acute":
        # midpoint of the longest side
        pairs = [(q, r), (r, p), (p, q)]
        sides = _euclidean_sides(t)
        u, v = pairs[max(range(3), key=sides.__getitem__)]
        return (0.5 * (u.x + v.x), 0.5 * (u.y + v.y))
    # circumcenter
    ax, ay, bx, by, cx, cy = p.x, p.y, q.x, q.y, r.x, r.y
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay)
          + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx)
          + (cx * cx + cy * cy) * (bx - ax)) / d
    return (ux, uy)


def _placement_margins(verts, translations, band):
    """(min margin, argmin translation, all m >= 1) over the translations."""
    best = math.inf
    best_tau = (0.0, 0.0)
    all_ok = True
    for tau in translations:
        tri = Triangle(
            DiskPoint(verts[0][0] + tau[0], verts[0][1] + tau[1]),
            DiskPoint(verts[1][0] + tau[0], verts[1][1] + tau[1]),
            DiskPoint(verts[2][0] + tau[0], verts[2][1] + tau[1]),
        )
        count = count_inscribed(tri, band)
        if count.m == 0:
            all_ok = False
        if count.margin < best:
            best = count.margin
            best_tau = tau
    return best, best_tau, all_ok


def _translation_grid(verts, target: int):
    """Smallest centered grid giving at least `target` admissible samples."""
    grid = max(2, math.isqrt(target))
    taus = _admissible_from_vertices(verts, grid)
    rounds = 0
    while len(taus) < target and rounds < 8:
        grid = int(grid * 1.5) + 1
        taus = _admissible_from_vertices(verts, grid)
        rounds += 1
    return taus, grid


def congruence_invariance_report(
    t: Triangle, samples: int, band: float = DEFAULT_BAND
) -> InvarianceReport:
    """Classify sampled congruent copies of t inside the disk.

    Rotating a copy about the origin is a symmetry of the whole system, so
    rotations only matter relative to the translation; the sweep still
    samples them explicitly for non-equilateral shapes, while the
    equilateral case reduces to translations alone.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    shape = TriangleShape.from_triangle(t)
    if shape.is_equilateral:
        angles = (0.0,)
    else:
        angles = tuple(
            2.0 * math.pi * i / ROTATION_SAMPLES for i in range(ROTATION_SAMPLES)
        )
    per_rot = max(1, samples // len(angles))
    center = _enclosing_center(t)
    base = [v.xy for v in t.vertices]

    total = 0
    min_margin = math.inf
    worst_tau = (0.0, 0.0)
    worst_rot = 0.0
    all_ok = True
    for angle in angles:
        verts = _rotate_vertices(base, angle, center)
        taus, _ = _translation_grid(verts, per_rot)
        if not taus:
            continue
        margin, tau, ok = _placement_margins(verts, taus, band)
        total += len(taus)
        all_ok = all_ok and ok
        if margin < min_margin:
            min_margin = margin
            worst_tau = tau
            worst_rot = angle
    if total == 0:
        raise GeometryError("no admissible placement of the triangle in the disk")
    return InvarianceReport(
        all_one_third=all_ok,
        min_margin=min_margin,
        worst_translation=worst_tau,
        worst_rotation=worst_rot,
        placements=total,
    )


def shape_vertices(shape: TriangleShape) -> list[tuple[float, float]]:
    """A realization of the shape with kappa = 1, enclosing center at 0."""
    a, b, c = shape.ratios  # a >= b >= c, a = 1
    # place the longest side on the x axis: A = (0,0), B = (a,0)
    x = (b * b + a * a - c * c) / (2.0 * a)
    y = math.sqrt(max(b * b - x * x, 0.0))
    verts = [(0.0, 0.0), (a, 0.0), (x, y)]
    if shape.kind == "acute":
        # circumcenter of A=(0,0), B=(a,0), C=(x,y)
        ux = a / 2.0
        uy = (x * x + y * y - x * a) / (2.0 * y)
        center = (ux, uy)
        radius = math.hypot(ux, uy)
    else:
        center = (a / 2.0, 0.0)
        radius = a / 2.0
    return [
        ((vx - center[0]) / radius, (vy - center[1]) / radius) for vx, vy in verts
    ]


def centered_representative(shape: TriangleShape, scale: float) -> Triangle:
    """The centered copy of the shape with kappa = scale."""
    if not (0.0 < scale < 1.0):
        raise GeometryError(f"scale must be in (0, 1), got {scale!r}")
    verts = [(scale * x, scale * y) for x, y in shape_vertices(shape)]
    return Triangle(DiskPoint(*verts[0]), DiskPoint(*verts[1]), DiskPoint(*verts[2]))


@dataclass(frozen=True)
class MuEstimate:
    """Sampled bracket around the critical scale; never a certificate."""

    lower: float
    upper: float
    samples: int
    grid_resolution: float

    def __post_init__(self):
        if not (0.0 < self.lower <= self.upper < 1.0):
            raise GeometryError(
                f"bracket [{self.lower}, {self.upper}] escapes (0, 1)"
            )


def mu_estimate(
    shape: TriangleShape,
    tol: float,
    translation_samples: int = 200,
    band: float = DEFAULT_BAND,
    max_iter: int = 200,
) -> MuEstimate:
    """Bracket the critical kappa for the shape by scale bisection.

    At each candidate scale the centered copy is checked first (it realizes
    the infimum for symmetric shapes), then a fixed-density sweep of
    congruent placements looks for any copy with no inscribed triangle.
    The bracket is honest only with respect to the sampled placements.
    """
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")

    def violated(scale: float) -> bool:
        tri = centered_representative(shape, scale)
        if count_inscribed(tri, band).m == 0:
            return True
        report = congruence_invariance_report(tri, translation_samples, band)
        return not report.all_one_third

    lo = 0.05
    it = 0
    while not violated(lo):
        lo /= 2.0
        it += 1
        if lo < SCALE_FLOOR or it > max_iter:
            raise MuConvergenceError("no violating scale found", lo, 1.0)
    hi = 0.95
    it = 0
    while violated(hi):
        hi = 0.5 * (hi + 1.0)
        it += 1
        if 1.0 - hi < 1e-9 or it > max_iter:
            raise MuConvergenceError("no non-violating scale found", lo, hi)
    if lo >= hi:
        raise MuConvergenceError("initial bracket is inverted", lo, hi)

    it = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if violated(mid):
            lo = mid
        else:
            hi = mid
        it += 1
        if it > max_iter:
            raise MuConvergenceError("bisection exceeded the iteration cap", lo, hi)

    # report the translation-grid spacing used at the final scale
    tri = centered_representative(shape, hi)
    _, grid = _translation_grid([v.xy for v in tri.vertices], translation_samples)
    return MuEstimate(
        lower=lo,
        upper=hi,
        samples=translation_samples,
        grid_resolution=2.0 / grid,
    )
