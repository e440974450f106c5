"""The tangent-line circle map around a triangular obstacle.

From a circle point v, the two support lines of the obstacle meet the
circle again at two points; the map sends v to the one nearer in the
counterclockwise direction.  The angle bookkeeping reduces to: image angle
= v + 2*r where r in (0, pi) is the smallest direction angle from v to a
vertex, measured from the counterclockwise tangent of the circle at v.

Angles live on R/Z in turns; the lift adds the advance without wrapping.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .hypgeom import GeometryError, Triangle, wrap_turns
from .inscribed import DEFAULT_BAND, count_inscribed

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi

SCAN_SAMPLES = 720          # grid for locating period-3 roots
BISECT_WIDTH = 1e-14        # bisection stops below this bracket width
ROOT_RESIDUAL = 1e-12       # required |g| at refined transversal roots
TANGENTIAL_GMIN = 1e-9      # |min g| below this counts as a grazing double root
MINIMA_THRESH = 1e-4        # grid minima above this are not refined
MERGE_TOL = 1e-6            # circular distance merging duplicate roots


def advance(t: Triangle, v: float) -> float:
    """Counterclockwise advance of the tangent map at angle v, in turns."""
    alpha = TWO_PI * wrap_turns(v)
    vx, vy = math.cos(alpha), math.sin(alpha)
    best = TWO_PI
    for w in t.vertices:
        rel = (math.atan2(w.y - vy, w.x - vx) - alpha) % TWO_PI
        if rel < best:
            best = rel
    return (best - HALF_PI) / math.pi


def psi(t: Triangle, v: float) -> float:
    """One step of the tangent map on the circle (turns in [0, 1))."""
    v = wrap_turns(v)
    return wrap_turns(v + advance(t, v))


def psi_lift(t: Triangle, x: float) -> float:
    """The increasing lift with value in (x, x+1); commutes with x -> x+1."""
    n = math.floor(x)
    f = x - n
    return (f + advance(t, f)) + n


def supporting_vertices(t: Triangle, v: float) -> tuple[int, int]:
    """Indices of the two vertices hit by the support lines from angle v.

    First the vertex whose line realizes the map image, then the other
    extreme of the direction cone.
    """
    alpha = TWO_PI * wrap_turns(v)
    vx, vy = math.cos(alpha), math.sin(alpha)
    rels = [
        (math.atan2(w.y - vy, w.x - vx) - alpha) % TWO_PI for w in t.vertices
    ]
    lo = min(range(3), key=rels.__getitem__)
    hi = max(range(3), key=rels.__getitem__)
    return (lo, hi)


def iterate_orbit(t: Triangle, v0: float, n: int) -> list[float]:
    """[v0, psi(v0), ..., psi^n(v0)]; deterministic, length n + 1."""
    if n < 0:
        raise ValueError("orbit length must be nonnegative")
    out = [wrap_turns(v0)]
    for _ in range(n):
        out.append(psi(t, out[-1]))
    return out


# ---------------------------------------------------------------------------
# vectorized core (same arithmetic as `advance`, broadcast over angles
# and/or triangles)

def _verts_array(triangles) -> np.ndarray:
    return np.array(
        [[(v.x, v.y) for v in t.vertices] for t in triangles], dtype=float
    )


def advance_batch(verts: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Advance in turns for angle array x against vertices (..., 3, 2)."""
    theta = TWO_PI * (np.asarray(x, dtype=float) % 1.0)
    vx = np.cos(theta)
    vy = np.sin(theta)
    dx = verts[..., 0] - vx[..., None]
    dy = verts[..., 1] - vy[..., None]
    rel = (np.arctan2(dy, dx) - theta[..., None]) % TWO_PI
    return (rel.min(axis=-1) - HALF_PI) / math.pi


def lift_batch(verts: np.ndarray, x: np.ndarray, steps: int = 1) -> np.ndarray:
    y = np.asarray(x, dtype=float).copy()
    for _ in range(steps):
        y = y + advance_batch(verts, y)
    return y


@dataclass(frozen=True)
class RotationEstimate:
    """Birkhoff average of the lift from 0, with the monotone-lift bound."""

    value: float
    error_bound: float
    exact_one_third: bool
    iterations: int

    def __post_init__(self):
        if self.exact_one_third and abs(self.value - 1.0 / 3.0) > self.error_bound:
            raise GeometryError("estimate contradicts the exact-1/3 flag")


def rotation_number(t: Triangle, n: int = 100_000, band: float = DEFAULT_BAND) -> RotationEstimate:
    """Estimate the rotation number as lift^n(0)/n.

    The error bound 1/n is the standard monotone-lift inequality.  When the
    obstacle admits an inscribed circumscribing triangle (m >= 1) the
    rotation number is exactly 1/3 and the flag says so.
    """
    if n < 1:
        raise ValueError("iteration count must be positive")
    x = 0.0
    adv = advance
    for _ in range(n):
        x += adv(t, x % 1.0)
    exact = count_inscribed(t, band).m >= 1
    return RotationEstimate(
        value=(x / n) % 1.0,
        error_bound=1.0 / n,
        exact_one_third=exact,
        iterations=n,
    )


def rotation_number_batch(triangles, n: int) -> np.ndarray:
    """lift^n(0)/n for many triangles at once; matches rotation_number."""
    if n < 1:
        raise ValueError("iteration count must be positive")
    verts = _verts_array(triangles)
    x = np.zeros(len(verts))
    for _ in range(n):
        x += advance_batch(verts, x)
    return (x / n) % 1.0


# ---------------------------------------------------------------------------
# period-3 orbits: roots of g(x) = lift^3(x) - x - 1 on [0, 1)

@dataclass(frozen=True)
class PeriodicOrbit:
    """A period-3 orbit as a sorted triple of angles in turns.

    residual is the largest |g| over the members; tangential marks grazing
    double roots (the one-orbit boundary case), located only to about 1e-8.
    """

    angles: tuple[float, float, float]
    tangential: bool
    residual: float


def _g_scalar(t: Triangle, x: float) -> float:
    y = x
    for _ in range(3):
        y = psi_lift(t, y)
    return y - x - 1.0


def _bisect_root(t: Triangle, a: float, b: float, ga: float) -> float:
    gb = _g_scalar(t, b)
    while b - a > BISECT_WIDTH:
        m = 0.5 * (a + b)
        gm = _g_scalar(t, m)
        if gm == 0.0:
            return m
        if (gm > 0.0) == (ga > 0.0):
            a, ga = m, gm
        else:
            b, gb = m, gm
    # one secant step pushes |g| down to the evaluation noise even where the
    # cube of the map is steep
    if gb != ga:
        x = a - ga * (b - a) / (gb - ga)
        if a <= x <= b:
            return x
    return 0.5 * (a + b)


def _refine_minimum(t: Triangle, a: float, b: float) -> tuple[float, float]:
    # golden-section search; the quadratic floor of g limits the location
    # of a grazing root to roughly sqrt(eps)
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    gc, gd = _g_scalar(t, c), _g_scalar(t, d)
    while b - a > 1e-12:
        if gc < gd:
            b, d, gd = d, c, gc
            c = b - inv_phi * (b - a)
            gc = _g_scalar(t, c)
        else:
            a, c, gc = c, d, gd
            d = a + inv_phi * (b - a)
            gd = _g_scalar(t, d)
    xm = 0.5 * (a + b)
    return xm, _g_scalar(t, xm)


def _circ_dist(a: float, b: float) -> float:
    d = abs(a - b) % 1.0
    return min(d, 1.0 - d)


def _is_tangential(t: Triangle, x: float, h: float = 1e-7) -> bool:
    # a transversal root changes sign across x; a grazing one does not
    gl, gr = _g_scalar(t, x - h), _g_scalar(t, x + h)
    if abs(gl) <= 1e-14 or abs(gr) <= 1e-14:
        return True
    return (gl > 0.0) == (gr > 0.0)


def _polish_root(t: Triangle, x: float, h: float = 1e-9) -> float:
    # Newton with a central-difference slope; mapping a refined root around
    # the orbit multiplies its error by the step derivative, and this takes
    # the residual back down to the evaluation noise
    for _ in range(2):
        g0 = _g_scalar(t, x)
        if abs(g0) <= 1e-14:
            break
        slope = (_g_scalar(t, x + h) - _g_scalar(t, x - h)) / (2.0 * h)
        if slope == 0.0:
            break
        x -= g0 / slope
    return x


def find_period3_orbits(t: Triangle) -> list[PeriodicOrbit]:
    """All period-3 orbits, grouped from the roots of g on [0, 1).

    A 720-sample scan brackets transversal roots for bisection; grid minima
    near zero are refined to catch grazing double roots, which are returned
    as a single orbit with the tangential flag set.
    """
    verts = _verts_array([t])[0]
    xs = np.arange(SCAN_SAMPLES) / SCAN_SAMPLES
    g = lift_batch(verts, xs, steps=3) - xs - 1.0

    roots: list[float] = []
    tangential: list[float] = []
    step = 1.0 / SCAN_SAMPLES

    for i in range(SCAN_SAMPLES):
        ga, gb = g[i], g[(i + 1) % SCAN_SAMPLES]
        if ga == 0.0:
            roots.append(float(xs[i]))
        elif ga * gb < 0.0:
            roots.append(wrap_turns(_bisect_root(t, float(xs[i]), float(xs[i]) + step, float(ga))))

    for i in range(SCAN_SAMPLES):
        gm = g[i]
        if gm >= MINIMA_THRESH or gm > g[i - 1] or gm > g[(i + 1) % SCAN_SAMPLES]:
            continue
        xm, gmin = _refine_minimum(t, float(xs[i]) - step, float(xs[i]) + step)
        xm = wrap_turns(xm)
        if any(_circ_dist(xm, r) < 2.0 * step for r in roots):
            continue  # the dip was already resolved by sign changes
        if gmin < -TANGENTIAL_GMIN:
            # a shallow dip below zero hides two nearby transversal roots
            lo, hi = xm - step, xm + step
            glo, ghi = _g_scalar(t, lo), _g_scalar(t, hi)
            if glo > 0.0:
                roots.append(wrap_turns(_bisect_root(t, lo, xm, glo)))
            if ghi > 0.0:
                roots.append(wrap_turns(_bisect_root(t, xm, hi, gmin)))
        elif abs(gmin) <= TANGENTIAL_GMIN:
            tangential.append(xm)

    # merge duplicates (noise near a grazing zero can produce spurious
    # crossings a few 1e-8 apart)
    merged: list[tuple[float, bool]] = []
    for x, flag in sorted(
        [(r, False) for r in roots] + [(x, True) for x in tangential]
    ):
        if merged and _circ_dist(merged[-1][0], x) < MERGE_TOL:
            merged[-1] = (merged[-1][0], merged[-1][1] or flag)
            continue
        merged.append((x, flag))
    if len(merged) > 1 and _circ_dist(merged[0][0], merged[-1][0]) < MERGE_TOL:
        merged[0] = (merged[0][0], merged[0][1] or merged[-1][1])
        merged.pop()

    orbits: list[PeriodicOrbit] = []
    remaining = merged
    while remaining:
        x0, flag = remaining[0]
        grazing = flag or _is_tangential(t, x0)
        members = [x0]
        for _ in range(2):
            m = psi(t, members[-1])
            if not grazing:
                m = _polish_root(t, m)
            members.append(m)
        keep = []
        for x, f in remaining:
            if any(_circ_dist(x, m) < 1e-4 for m in members):
                grazing = grazing or f
            else:
                keep.append((x, f))
        remaining = keep
        residual = max(abs(_g_scalar(t, m)) for m in members)
        orbits.append(
            PeriodicOrbit(
                angles=tuple(sorted(wrap_turns(m) for m in members)),
                tangential=grazing,
                residual=residual,
            )
        )
    orbits.sort(key=lambda o: o.angles[0])
    return orbits


class DynamicsCase(enum.Enum):
    BOUNDARY = "boundary"
    INTERIOR = "interior"
    HIGH_ROTATION = "high_rotation"


@dataclass(frozen=True)
class Basin:
    """Counterclockwise arc (start, end] or (start, end) whose forward
    cube-orbits converge to target."""

    start: float
    end: float
    target: float


@dataclass(frozen=True)
class DynamicsReport:
    case: DynamicsCase
    attractor: tuple[float, float, float] | None
    repeller: tuple[float, float, float] | None
    basins: tuple[Basin, ...]

    def __post_init__(self):
        if self.case is DynamicsCase.INTERIOR:
            ok = self.attractor is not None and self.repeller is not None
        elif self.case is DynamicsCase.BOUNDARY:
            ok = self.attractor is not None and self.repeller is None
        else:
            ok = self.attractor is None and self.repeller is None
        if not ok:
            raise GeometryError("inconsistent dynamics report")


def classify_dynamics(t: Triangle) -> DynamicsReport:
    """Attractor/repeller structure of the cube of the map.

    No orbit: the rotation number exceeds 1/3 and nothing is periodic.  One
    grazing orbit: semi-stable, every forward cube-orbit converges to it
    one-sidedly.  Two orbits: the transversal signs of g sort them into an
    attractor and a repeller, and the basins are the open arcs between
    repeller points.
    """
    orbits = find_period3_orbits(t)
    if not orbits:
        return DynamicsReport(DynamicsCase.HIGH_ROTATION, None, None, ())

    if len(orbits) == 1:
        angles = orbits[0].angles
        basins = tuple(
            Basin(start=angles[j - 1], end=angles[j], target=angles[j])
            for j in range(3)
        )
        return DynamicsReport(DynamicsCase.BOUNDARY, angles, None, basins)

    if len(orbits) != 2:
        raise GeometryError(f"unexpected number of period-3 orbits: {len(orbits)}")

    sep = min(
        _circ_dist(a, b) for a in orbits[0].angles for b in orbits[1].angles
    )
    h = max(1e-9, min(1e-6, 0.1 * sep))
    labeled = {}
    for orbit in orbits:
        x = orbit.angles[0]
        left, right = _g_scalar(t, x - h), _g_scalar(t, x + h)
        if left > 0.0 > right:
            labeled["attractor"] = orbit
        elif left < 0.0 < right:
            labeled["repeller"] = orbit
    if set(labeled) != {"attractor", "repeller"}:
        raise GeometryError("could not sort the two orbits into attractor/repeller")

    att = labeled["attractor"].angles
    rep = labeled["repeller"].angles
    basins = []
    for j in range(3):
        lo = rep[j]
        hi = rep[(j + 1) % 3]
        target = next(a for a in att if wrap_turns(a - lo) < wrap_turns(hi - lo))
        basins.append(Basin(start=lo, end=hi, target=target))
    return DynamicsReport(DynamicsCase.INTERIOR, att, rep, tuple(basins))
