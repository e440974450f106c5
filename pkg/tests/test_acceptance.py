"""Acceptance suite: every criterion at its stated tolerance.

Each test prints one `criterion NN PASS/FAIL` line (visible with -s) and
enforces its runtime bound where one is stated.
"""

import math
import time

import numpy as np

from barbilliards import (
    DiskPoint,
    Triangle,
    chord_frame,
    classify_via_ellipse,
    congruence_invariance_report,
    count_inscribed,
    count_inscribed_via_omega,
    delta,
    find_period3_orbits,
    from_klein,
    half_plane_distance,
    klein_distance,
    klein_tangent_gap,
    poincare_arcs,
    poincare_distance,
    rotation_number,
    rotation_number_batch,
    tangency_ellipse,
    to_half_plane,
    wrap_turns,
)
from barbilliards.circlemap import _verts_array, classify_dynamics, lift_batch
from barbilliards.cli import main as cli_main
from helpers import (
    LOG_SQRT5,
    REF_P,
    REF_Q,
    REF_R,
    centered_equilateral,
    circ_dist,
    eq_margin_closed,
    min_line_distance_oracle,
    random_disk_point,
    random_triangle,
    random_triangle_where,
)

ONE_THIRD = 1.0 / 3.0


def _report(num: int, ok: bool, detail: str, elapsed: float):
    status = "PASS" if ok else "FAIL"
    print(f"criterion {num:02d} {status} ({elapsed:7.2f}s)  {detail}")
    assert ok, f"criterion {num}: {detail}"


def test_criterion_01_reference_golden_values():
    t0 = time.perf_counter()
    p, q, r = DiskPoint(*REF_P), DiskPoint(*REF_Q), DiskPoint(*REF_R)
    d = delta(p, q, r)
    gap = klein_tangent_gap(p, q)
    count = count_inscribed(Triangle(p, q, r))
    est = rotation_number(Triangle(p, q, r), 50_000)
    elapsed = time.perf_counter() - t0
    ok = (
        abs(d - LOG_SQRT5) <= 1e-12
        and abs(gap - LOG_SQRT5) <= 1e-12
        and count.m == 1
        and est.exact_one_third
        and elapsed < 1.0
    )
    _report(
        1,
        ok,
        f"delta={d!r} gap={gap!r} m={count.m} exact_third={est.exact_one_third}",
        elapsed,
    )


def test_criterion_02_ellipse_golden_values():
    t0 = time.perf_counter()
    ell = tangency_ellipse(DiskPoint(*REF_P), DiskPoint(*REF_Q))
    cx, cy = ell.center_xy
    qf = ell.quadratic_form(0.5, 0.0)
    ok = (
        abs(ell.a - 9.0 / 14.0) <= 1e-12
        and abs(ell.b - math.sqrt(27.0 / 28.0)) <= 1e-12
        and abs(cx - (-1.0 / 7.0)) <= 1e-12
        and abs(cy) <= 1e-12
        and abs(qf - 1.0) <= 1e-12
    )
    _report(
        2,
        ok,
        f"a={ell.a!r} b={ell.b!r} center=({cx!r},{cy!r}) qf(R)={qf!r}",
        time.perf_counter() - t0,
    )


def test_criterion_03_classifier_triple_agreement():
    t0 = time.perf_counter()
    rng = np.random.default_rng(103)
    disagreements = 0
    n = 10_000
    for _ in range(n):
        t = random_triangle_where(
            rng, lambda t: abs(count_inscribed(t).margin) > 1e-6
        )
        m = count_inscribed(t).m
        if count_inscribed_via_omega(t).m != m:
            disagreements += 1
        elif classify_via_ellipse(t).m != m:
            disagreements += 1
        elif len(find_period3_orbits(t)) != m:
            disagreements += 1
    elapsed = time.perf_counter() - t0
    ok = disagreements == 0 and elapsed < 60.0
    _report(3, ok, f"{n} triangles, {disagreements} disagreements", elapsed)


def test_criterion_04_rotation_number_bounds():
    t0 = time.perf_counter()
    rng = np.random.default_rng(104)
    n = 100_000
    tris = [random_triangle(rng) for _ in range(1000)]
    estimates = rotation_number_batch(tris, n)
    low, high = ONE_THIRD - 2.0 / n, 0.5
    in_bounds = bool(np.all(estimates >= low) and np.all(estimates < high))
    flags_ok = True
    third_ok = True
    for t, est in zip(tris, estimates):
        exact = count_inscribed(t).m >= 1
        if exact and abs(est - ONE_THIRD) > 1.0 / n:
            third_ok = False
    for t in tris[:20]:
        est = rotation_number(t, 2000)
        if est.exact_one_third != (count_inscribed(t).m >= 1):
            flags_ok = False
    scalar_ok = all(
        abs(rotation_number(t, 2000).value - b) <= 1e-12
        for t, b in zip(tris[:3], rotation_number_batch(tris[:3], 2000))
    )
    elapsed = time.perf_counter() - t0
    ok = in_bounds and flags_ok and third_ok and scalar_ok and elapsed < 120.0
    _report(
        4,
        ok,
        f"1000 triangles at n={n}: range [{estimates.min():.6f}, "
        f"{estimates.max():.6f}], flags_ok={flags_ok}",
        elapsed,
    )


def test_criterion_05_dynamics():
    t0 = time.perf_counter()
    rng = np.random.default_rng(105)
    tri_count, start_count = 50, 100
    ok = True
    detail = ""
    for i in range(tri_count):
        t = random_triangle_where(rng, lambda t: count_inscribed(t).margin > 0.05)
        orbits = find_period3_orbits(t)
        if len(orbits) != 2:
            ok, detail = False, f"triangle {i}: {len(orbits)} orbits"
            break
        report = classify_dynamics(t)
        att = np.array(report.attractor)
        rep = np.array(report.repeller)
        verts = _verts_array([t])[0]

        starts = rng.uniform(0.0, 1.0, start_count)
        # keep starts clear of the repeller points (measure zero anyway)
        for r in rep:
            starts = np.where(np.abs(starts - r) < 1e-7, starts + 1e-6, starts)
        targets = np.empty(start_count)
        for j, s in enumerate(starts):
            basin = next(
                b
                for b in report.basins
                if wrap_turns(s - b.start) < wrap_turns(b.end - b.start)
            )
            targets[j] = basin.target
        x = starts.copy()
        converged_at = np.full(start_count, -1, dtype=int)
        for step in range(1, 10_001):
            x = lift_batch(verts, x, steps=3) % 1.0
            d = np.abs(x - targets)
            d = np.minimum(d, 1.0 - d)
            newly = (converged_at < 0) & (d <= 1e-8)
            converged_at[newly] = step
            if np.all(converged_at > 0):
                break
        if not np.all(converged_at > 0):
            ok, detail = False, f"triangle {i}: {int(np.sum(converged_at < 0))} starts unconverged"
            break

        # basin boundaries sit within 1e-6 of the repeller points: probes on
        # either side converge to the attractors of the adjacent basins
        for r in rep:
            for sign in (-1.0, 1.0):
                probe = wrap_turns(r + sign * 5e-7)
                basin = next(
                    b
                    for b in report.basins
                    if wrap_turns(probe - b.start) < wrap_turns(b.end - b.start)
                )
                y = probe
                for _ in range(10_000):
                    y = float(lift_batch(verts, np.array([y]), steps=3)[0]) % 1.0
                    if circ_dist(y, basin.target) <= 1e-8:
                        break
                if circ_dist(y, basin.target) > 1e-8:
                    ok, detail = False, f"triangle {i}: boundary probe missed its target"
                    break
            if not ok:
                break
        if not ok:
            break
    elapsed = time.perf_counter() - t0
    if ok:
        detail = f"{tri_count} triangles x {start_count} starts converged"
    _report(5, ok, detail, elapsed)


def test_criterion_06_model_consistency():
    t0 = time.perf_counter()
    rng = np.random.default_rng(106)
    worst_klein = 0.0
    for _ in range(10_000):
        p = DiskPoint(*random_disk_point(rng))
        q = DiskPoint(*random_disk_point(rng))
        direct = klein_distance(p, q)
        via = poincare_distance(from_klein(p), from_klein(q))
        worst_klein = max(worst_klein, abs(direct - via))
    worst_half = 0.0
    for _ in range(1000):
        p = DiskPoint(*random_disk_point(rng))
        q = DiskPoint(*random_disk_point(rng))
        d1 = poincare_distance(p, q)
        d2 = half_plane_distance(to_half_plane(p), to_half_plane(q))
        worst_half = max(worst_half, abs(d1 - d2))
    elapsed = time.perf_counter() - t0
    ok = worst_klein <= 1e-10 and worst_half <= 1e-10
    _report(
        6, ok, f"cross-ratio gap {worst_klein:.2e}, half-plane gap {worst_half:.2e}", elapsed
    )


def test_criterion_07_foot_formula_vs_minimizer():
    t0 = time.perf_counter()
    rng = np.random.default_rng(107)
    worst = 0.0
    for _ in range(1000):
        t = random_triangle(rng)
        got = delta(t.p, t.q, t.r)
        want = min_line_distance_oracle(t.p.xy, t.q.xy, t.r.xy)
        worst = max(worst, abs(got - want))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-8
    _report(7, ok, f"1000 triangles, worst foot gap {worst:.2e}", elapsed)


def _envelope_residuals(p: DiskPoint, q: DiskPoint, n_theta: int) -> float:
    """Worst ellipse residual of the envelope contact points (vectorized)."""
    frame = chord_frame(p, q)
    u = frame.u
    _, pp = frame.to_frame(p.x, p.y)
    _, qq = frame.to_frame(q.x, q.y)
    ell = tangency_ellipse(p, q)
    thetas = 2.0 * math.pi * (np.arange(n_theta) / n_theta)
    # nudge samples off the two closure angles, where the solve is singular
    for singular in (frame.t1.angle, frame.t2.angle):
        near = np.abs((thetas / (2 * math.pi) - singular + 0.5) % 1.0 - 0.5) < 1e-4
        thetas[near] += 3e-4
    th = thetas - 2.0 * math.pi * frame.t3.angle
    c, s = np.cos(th), np.sin(th)
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
    x1 = (b1 * a22 - b2 * a12) / det
    x2 = (a11 * b2 - a21 * b1) / det
    qf = ((x1 - ell.c) / ell.a) ** 2 + (x2 / ell.b) ** 2
    return float(np.max(np.abs(qf - 1.0)))


def test_criterion_08_envelope_matches_ellipse():
    t0 = time.perf_counter()
    rng = np.random.default_rng(108)
    worst = 0.0
    chords = 0
    while chords < 1000:
        p = DiskPoint(*random_disk_point(rng))
        q = DiskPoint(*random_disk_point(rng))
        if math.hypot(p.x - q.x, p.y - q.y) < 1e-3:
            continue
        chords += 1
        worst = max(worst, _envelope_residuals(p, q, 360))
    from barbilliards import envelope_line

    ax, ay, a0 = envelope_line(DiskPoint(*REF_P), DiskPoint(*REF_Q), 0.0)
    scale = math.hypot(ax, ay)
    line_err = max(abs(ay) / scale, abs(ax * (-11.0 / 14.0) + a0) / scale)
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-8 and line_err <= 1e-12
    _report(
        8,
        ok,
        f"1000 chords x 360 angles, worst residual {worst:.2e}, "
        f"reference line error {line_err:.2e}",
        elapsed,
    )


def test_criterion_09_arc_correspondence():
    t0 = time.perf_counter()
    # pinned case: a diameter chord whose endpoints sit at distance ln 3
    h = 2.0 - math.sqrt(3.0)
    c1, c2 = poincare_arcs(DiskPoint(0.0, h), DiskPoint(0.0, -h))
    pinned_ok = (
        abs(math.hypot(*c1.center) - 4.0 / 3.0) <= 1e-12
        and abs(c1.radius - 5.0 / 3.0) <= 1e-12
    )
    rng = np.random.default_rng(109)
    worst = 0.0
    chords = 0
    while chords < 100:
        p = DiskPoint(*random_disk_point(rng, rmax=0.85))
        q = DiskPoint(*random_disk_point(rng, rmax=0.85))
        if math.hypot(p.x - q.x, p.y - q.y) < 1e-2:
            continue
        chords += 1
        a1, a2 = poincare_arcs(p, q)
        from barbilliards import to_klein

        ell = tangency_ellipse(to_klein(p), to_klein(q))
        for i in range(100):
            ex, ey = ell.point_at(2.0 * math.pi * (i + 0.5) / 100.0)
            if ex * ex + ey * ey >= 1.0 - 1e-9:
                continue
            z = from_klein(DiskPoint(ex, ey))
            e1 = abs(math.hypot(z.x - a1.center[0], z.y - a1.center[1]) - a1.radius)
            e2 = abs(math.hypot(z.x - a2.center[0], z.y - a2.center[1]) - a2.radius)
            worst = max(worst, min(e1, e2))
    elapsed = time.perf_counter() - t0
    ok = pinned_ok and worst <= 1e-8
    _report(
        9,
        ok,
        f"pinned arcs ok={pinned_ok}, worst membership residual {worst:.2e}",
        elapsed,
    )


def test_criterion_10_critical_scale():
    t0 = time.perf_counter()
    # (a) the centered-equilateral margin crosses zero at circumradius 1/2
    lo, hi = 0.1, 0.9
    flo = eq_margin_closed(lo)
    assert flo < 0.0
    lo_n, hi_n = lo, hi
    while hi_n - lo_n > 1e-9:
        mid = 0.5 * (lo_n + hi_n)
        if count_inscribed(centered_equilateral(mid)).margin < 0.0:
            lo_n = mid
        else:
            hi_n = mid
    crossing = 0.5 * (lo_n + hi_n)
    crossing_ok = abs(crossing - 0.5) <= 1e-6

    # (b) the CLI scale search brackets 1/2 at tolerance 1e-4
    import io
    from contextlib import redirect_stdout

    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli_main(
            [
                "mu",
                "--json",
                "--tol",
                "1e-4",
                "-t",
                "-0.25,0.4330127018922193:-0.25,-0.4330127018922193:0.5,0",
            ]
        )
    import json

    doc = json.loads(buf.getvalue())
    cli_ok = code == 0 and doc["lower"] <= 0.5 <= doc["upper"] and (
        doc["upper"] - doc["lower"] <= 1e-4
    )

    # (c) every sampled translation of the critical copy keeps an inscribed
    # triangle
    report = congruence_invariance_report(centered_equilateral(0.5), 1000)
    translations_ok = report.all_one_third and report.placements >= 1000

    elapsed = time.perf_counter() - t0
    ok = crossing_ok and cli_ok and translations_ok and elapsed < 120.0
    _report(
        10,
        ok,
        f"crossing={crossing:.8f}, bracket=[{doc['lower']:.6f},{doc['upper']:.6f}], "
        f"placements={report.placements} all_ok={report.all_one_third}",
        elapsed,
    )
