"""Shared samplers, reference data, and independent oracles for the tests.

Oracles here deliberately avoid the library code paths they are used to
check: the foot-minimizer discretizes the chord and measures through the
conformal conversion, the count oracle reduces to a half-plane discriminant
via Moebius maps, and the map oracle intersects lines with the circle.
"""

import math

import numpy as np

from barbilliards import DiskPoint, GeometryError, Triangle

SQRT3 = math.sqrt(3.0)
LOG_SQRT5 = 0.5 * math.log(5.0)
GOLDEN_GAP_DISTANCE = math.log((math.sqrt(5.0) + 1.0) / (math.sqrt(5.0) - 1.0))
LN2 = math.log(2.0)
LN3 = math.log(3.0)

# the centered equilateral with circumradius 1/2: the boundary configuration
# where the foot distance equals the tangent gap exactly
REF_P = (-0.25, SQRT3 / 4.0)
REF_Q = (-0.25, -SQRT3 / 4.0)
REF_R = (0.5, 0.0)


def ref_triangle() -> Triangle:
    return Triangle(DiskPoint(*REF_P), DiskPoint(*REF_Q), DiskPoint(*REF_R))


def centered_equilateral(c: float) -> Triangle:
    """Equilateral with circumcenter at the origin and circumradius c."""
    return Triangle(
        DiskPoint(c, 0.0),
        DiskPoint(-c / 2.0, c * SQRT3 / 2.0),
        DiskPoint(-c / 2.0, -c * SQRT3 / 2.0),
    )


def eq_margin_closed(c: float) -> float:
    """Closed-form foot-minus-gap margin of the centered equilateral.

    Both terms are collinear cross ratios along an axis through the origin:
    delta = 0.5 log((2+c)(1+c) / ((1-c)(2-c))), gap = log(sqrt(4-c^2)/(sqrt(3) c)).
    """
    d = 0.5 * math.log((2.0 + c) * (1.0 + c) / ((1.0 - c) * (2.0 - c)))
    g = math.log(math.sqrt(4.0 - c * c) / (SQRT3 * c))
    return d - g


def random_disk_point(rng, rmax=0.95):
    r = rmax * math.sqrt(rng.uniform())
    a = rng.uniform(0.0, 2.0 * math.pi)
    return (r * math.cos(a), r * math.sin(a))


def random_triangle(rng, rmax=0.95, min_area2=1e-3) -> Triangle:
    while True:
        pts = [random_disk_point(rng, rmax) for _ in range(3)]
        try:
            t = Triangle(DiskPoint(*pts[0]), DiskPoint(*pts[1]), DiskPoint(*pts[2]))
        except GeometryError:
            continue
        if abs(t.signed_area2()) >= min_area2:
            return t


def random_triangle_where(rng, pred, rmax=0.95, min_area2=1e-3) -> Triangle:
    while True:
        t = random_triangle(rng, rmax, min_area2)
        if pred(t):
            return t


def circ_dist(a: float, b: float) -> float:
    d = abs(a - b) % 1.0
    return min(d, 1.0 - d)


# ---------------------------------------------------------------------------
# independent oracles

def chord_endpoints_oracle(p, q):
    """Both circle intersections of line pq (plain quadratic, numpy-free)."""
    px, py = p
    qx, qy = q
    dx, dy = qx - px, qy - py
    a = dx * dx + dy * dy
    b = 2.0 * (px * dx + py * dy)
    c = px * px + py * py - 1.0
    disc = math.sqrt(b * b - 4.0 * a * c)
    if b >= 0.0:
        t1, t2 = (-b - disc) / (2.0 * a), (2.0 * c) / (-b - disc)
    else:
        t1, t2 = (2.0 * c) / (-b + disc), (-b + disc) / (2.0 * a)
    return (
        (px + t1 * dx, py + t1 * dy),
        (px + t2 * dx, py + t2 * dy),
    )


def _conformal_distance_xy(ax, ay, bx, by):
    """Distance between projective-chart points via conversion + arccosh."""
    sa = 1.0 + math.sqrt(max(1.0 - ax * ax - ay * ay, 0.0))
    sb = 1.0 + math.sqrt(max(1.0 - bx * bx - by * by, 0.0))
    ax, ay, bx, by = ax / sa, ay / sa, bx / sb, by / sb
    d2 = (ax - bx) ** 2 + (ay - by) ** 2
    z = 1.0 + 2.0 * d2 / ((1.0 - ax * ax - ay * ay) * (1.0 - bx * bx - by * by))
    return math.acosh(max(z, 1.0))


def min_line_distance_oracle(p, q, r, samples=10_000):
    """Minimum distance from r to the geodesic line pq.

    Grid over the chord (numpy, through the conformal conversion) plus a
    golden-section refinement around the best grid point.
    """
    (v1x, v1y), (v2x, v2y) = chord_endpoints_oracle(p, q)
    ts = np.linspace(1e-12, 1.0 - 1e-12, samples)
    xs = v1x + ts * (v2x - v1x)
    ys = v1y + ts * (v2y - v1y)
    s = 1.0 + np.sqrt(np.maximum(1.0 - xs * xs - ys * ys, 0.0))
    cx, cy = xs / s, ys / s
    rx, ry = r
    sr = 1.0 + math.sqrt(max(1.0 - rx * rx - ry * ry, 0.0))
    rx, ry = rx / sr, ry / sr
    d2 = (cx - rx) ** 2 + (cy - ry) ** 2
    z = 1.0 + 2.0 * d2 / ((1.0 - cx * cx - cy * cy) * (1.0 - rx * rx - ry * ry))
    best = int(np.argmin(z))

    def f(t):
        return _conformal_distance_xy(
            v1x + t * (v2x - v1x), v1y + t * (v2y - v1y), r[0], r[1]
        )

    lo = ts[max(best - 1, 0)]
    hi = ts[min(best + 1, samples - 1)]
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c1 = b - inv_phi * (b - a)
    d1 = a + inv_phi * (b - a)
    fc, fd = f(c1), f(d1)
    while b - a > 1e-13:
        if fc < fd:
            b, d1, fd = d1, c1, fc
            c1 = b - inv_phi * (b - a)
            fc = f(c1)
        else:
            a, c1, fc = c1, d1, fd
            d1 = a + inv_phi * (b - a)
            fd = f(d1)
    return min(fc, fd)


def halfplane_count_oracle(t: Triangle) -> float:
    """Discriminant of the tangent-circle condition in the half plane.

    Negative: no inscribed circumscribing triangle; positive: two.
    """

    def disk_to_halfplane(v):
        x, y = v.xy
        s = 1.0 + math.sqrt(max(1.0 - x * x - y * y, 0.0))
        z = complex(x / s, y / s)
        return (1j * z + 1j) / (1.0 - z)

    zp, zq, zr = (disk_to_halfplane(v) for v in t.vertices)
    if abs(zp.real - zq.real) < 1e-13:
        shift = zp.real
        wp, wq, wr = zp - shift, zq - shift, zr - shift
    else:
        c = (abs(zp) ** 2 - abs(zq) ** 2) / (2.0 * (zp.real - zq.real))
        rad = abs(zp - c)
        e1, e2 = c - rad, c + rad
        wp = (zp - e2) / (zp - e1)
        wq = (zq - e2) / (zq - e1)
        wr = (zr - e2) / (zr - e1)
    s = wp.imag
    wp, wq, wr = wp / s, wq / s, wr / s
    k = wq.imag
    if k < 1.0:
        wp, wq, wr = -1.0 / wp, -1.0 / wq, -1.0 / wr
        s = wp.imag
        wp, wq, wr = wp / s, wq / s, wr / s
        k = wq.imag
    u, v = abs(wr.real), wr.imag
    return (k * k - 1.0) ** 2 * u * u - 4.0 * k * k * v * v


def second_intersection_oracle(t: Triangle, v_turns: float) -> float:
    """Map image by explicit line-circle intersection (independent route)."""
    alpha = 2.0 * math.pi * v_turns
    vx, vy = math.cos(alpha), math.sin(alpha)
    best = None
    for w in t.vertices:
        dx, dy = w.x - vx, w.y - vy
        a = dx * dx + dy * dy
        b = 2.0 * (vx * dx + vy * dy)
        tt = -b / a  # second root; the first is t = 0 at v itself
        zx, zy = vx + tt * dx, vy + tt * dy
        ang = (math.atan2(zy, zx) / (2.0 * math.pi)) % 1.0
        ccw = (ang - v_turns) % 1.0
        if best is None or ccw < best[0]:
            best = (ccw, ang)
    return best[1]


def line_signed_distances(a, b, points):
    """Signed distances of points from the line through a and b."""
    ax, ay = a
    bx, by = b
    nx, ny = -(by - ay), bx - ax
    norm = math.hypot(nx, ny)
    return [((px - ax) * nx + (py - ay) * ny) / norm for px, py in points]


def inscribed_touch_error(t: Triangle, angles) -> tuple[float, float]:
    """How well an inscribed triple wraps the obstacle.

    Returns (touch, inside): `touch` is the largest over the three sides of
    the distance from the side line to the nearest obstacle vertex; `inside`
    is the worst signed-distance violation of the obstacle lying on the
    inner side of every side line (0 when clean).
    """
    pts = [
        (math.cos(2.0 * math.pi * a), math.sin(2.0 * math.pi * a)) for a in angles
    ]
    obstacle = [v.xy for v in t.vertices]
    touch = 0.0
    violation = 0.0
    for i in range(3):
        a, b = pts[i], pts[(i + 1) % 3]
        opposite = pts[(i + 2) % 3]
        side = line_signed_distances(a, b, [opposite])[0]
        dists = line_signed_distances(a, b, obstacle)
        touch = max(touch, min(abs(d) for d in dists))
        for d in dists:
            if d * side < 0.0:
                violation = max(violation, abs(d))
    return touch, violation
