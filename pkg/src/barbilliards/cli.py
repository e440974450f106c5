"""Command line front end: classify, rotation, orbit, ellipse, inscribed, sweep, mu.

The only module with I/O.  Exit codes: 0 success, 2 parse error, 3 invalid
geometry, 4 I/O failure.  JSON and CSV serialize floats with repr, which
round-trips binary64 exactly; human tables print 7 decimals.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor

from .circlemap import (
    classify_dynamics,
    find_period3_orbits,
    iterate_orbit,
    rotation_number,
    rotation_number_batch,
)
from .congruence import TriangleShape, mu_estimate
from .hypgeom import (
    AREA_EPS,
    BOUNDARY_MARGIN,
    DiskPoint,
    GeometryError,
    Triangle,
    delta,
    klein_tangent_gap,
    omega,
)
from .inscribed import DEFAULT_BAND, count_inscribed, tangency_ellipse
from . import svg

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_GEOMETRY = 3
EXIT_IO = 4

ONE_THIRD = 1.0 / 3.0

log = logging.getLogger("barbilliards")


class SpecParseError(ValueError):
    """Unparseable textual spec; carries the failing position."""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _parse_float(text: str, offset: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise SpecParseError(f"expected a number, got {text!r}", offset) from None


def _parse_pair(chunk: str, offset: int) -> tuple[float, float]:
    parts = chunk.split(",")
    if len(parts) != 2:
        raise SpecParseError(
            f"expected 'x,y', got {chunk!r}", offset
        )
    x = _parse_float(parts[0].strip(), offset)
    y = _parse_float(parts[1].strip(), offset + len(parts[0]) + 1)
    return (x, y)


def parse_point_list(text: str, n: int) -> list[tuple[float, float]]:
    """Parse 'x,y:x,y:...' with n points, reporting failure positions."""
    chunks = text.split(":")
    if len(chunks) != n:
        raise SpecParseError(
            f"expected {n} colon-separated points, got {len(chunks)}", 0
        )
    out = []
    offset = 0
    for chunk in chunks:
        out.append(_parse_pair(chunk.strip(), offset))
        offset += len(chunk) + 1
    return out


def parse_triangle_spec(text: str) -> Triangle:
    """'px,py:qx,qy:rx,ry' or JSON {"P":[x,y],"Q":[x,y],"R":[x,y]}."""
    text = text.strip()
    if text.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise SpecParseError(f"bad JSON triangle: {e.msg}", e.pos) from None
        try:
            pts = [tuple(map(float, doc[key])) for key in ("P", "Q", "R")]
        except (KeyError, TypeError, ValueError) as e:
            raise SpecParseError(f"bad JSON triangle document: {e}", 0) from None
        if any(len(doc[key]) != 2 for key in ("P", "Q", "R")):
            raise SpecParseError("each vertex needs exactly two coordinates", 0)
    else:
        pts = parse_point_list(text, 3)
    return Triangle(DiskPoint(*pts[0]), DiskPoint(*pts[1]), DiskPoint(*pts[2]))


def parse_chord_spec(text: str) -> tuple[DiskPoint, DiskPoint]:
    pts = parse_point_list(text.strip(), 2)
    return (DiskPoint(*pts[0]), DiskPoint(*pts[1]))


def _write_text(path: str, content: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(content)


def _print_json(doc) -> None:
    print(json.dumps(doc, indent=2))


# ---------------------------------------------------------------------------
# subcommands

def cmd_classify(args) -> int:
    tri = parse_triangle_spec(args.triangle)
    band = args.band
    count = count_inscribed(tri, band)
    w = omega(tri.r, tri.p, tri.q)
    sides = []
    labels = (("p", "q", "r"), ("q", "r", "p"), ("r", "p", "q"))
    for la, lb, lc in labels:
        a, b, c = (getattr(tri, la), getattr(tri, lb), getattr(tri, lc))
        d = delta(a, b, c)
        gap = klein_tangent_gap(a, b)
        sides.append({"side": la + lb, "delta": d, "gap": gap, "margin": d - gap})
    ell = tangency_ellipse(tri.p, tri.q)
    doc = {
        "triangle": {"p": list(tri.p.xy), "q": list(tri.q.xy), "r": list(tri.r.xy)},
        "band": band,
        "m": count.m,
        "margin": count.margin,
        "omega": w,
        "sides": sides,
        "ellipse": {
            "a": ell.a,
            "b": ell.b,
            "c": ell.c,
            "t3_turns": ell.frame.t3.angle,
            "center": list(ell.center_xy),
        },
    }
    if args.json:
        _print_json(doc)
        return EXIT_OK
    print("vertices (counterclockwise, canonical order):")
    for name in ("p", "q", "r"):
        x, y = getattr(tri, name).xy
        print(f"  {name} = ({x:.7f}, {y:.7f})")
    print("side   delta      gap        margin")
    for side in sides:
        print(
            f"  {side['side']}   {side['delta']:.7f}  {side['gap']:.7f}  "
            f"{side['margin']:+.7f}"
        )
    print(f"omega = {w:.7f}")
    print(f"m = {count.m}  (band {band:g})")
    cx, cy = ell.center_xy
    print(
        f"ellipse: a = {ell.a:.7f}, b = {ell.b:.7f}, c = {ell.c:.7f}, "
        f"t3 = {ell.frame.t3.angle:.7f} turns, center = ({cx:.7f}, {cy:.7f})"
    )
    return EXIT_OK


def cmd_rotation(args) -> int:
    tri = parse_triangle_spec(args.triangle)
    est = rotation_number(tri, args.iters)
    if args.json:
        _print_json(
            {
                "value": est.value,
                "error_bound": est.error_bound,
                "exact_one_third": est.exact_one_third,
                "iterations": est.iterations,
            }
        )
        return EXIT_OK
    print(f"rotation number = {est.value:.7f} +- {est.error_bound:.2e}")
    print(f"exact 1/3: {'yes' if est.exact_one_third else 'no'}")
    return EXIT_OK


def cmd_orbit(args) -> int:
    tri = parse_triangle_spec(args.triangle)
    orbit = iterate_orbit(tri, args.start, args.steps)
    if args.svg:
        _write_text(args.svg, svg.scene(triangle=tri, orbit=orbit))
    if args.json:
        _print_json({"start": args.start, "steps": args.steps, "orbit": orbit})
        return EXIT_OK
    for i, a in enumerate(orbit):
        print(f"{i:4d}  {a:.7f}")
    return EXIT_OK


def cmd_ellipse(args) -> int:
    p, q = parse_chord_spec(args.chord)
    ell = tangency_ellipse(p, q)
    if args.svg:
        _write_text(args.svg, svg.scene(ellipse=ell, chord=(p, q)))
    doc = {
        "a": ell.a,
        "b": ell.b,
        "c": ell.c,
        "t3_turns": ell.frame.t3.angle,
        "t1_turns": ell.frame.t1.angle,
        "t2_turns": ell.frame.t2.angle,
        "u": ell.frame.u,
        "center": list(ell.center_xy),
    }
    if args.json:
        _print_json(doc)
        return EXIT_OK
    cx, cy = ell.center_xy
    print(
        f"a = {ell.a:.7f}, b = {ell.b:.7f}, c = {ell.c:.7f}, "
        f"t3 = {ell.frame.t3.angle:.7f} turns, center = ({cx:.7f}, {cy:.7f})"
    )
    return EXIT_OK


def cmd_inscribed(args) -> int:
    tri = parse_triangle_spec(args.triangle)
    count = count_inscribed(tri, args.band)
    orbits = find_period3_orbits(tri)
    triples = [list(o.angles) for o in orbits]
    if args.svg:
        _write_text(args.svg, svg.scene(triangle=tri, inscribed=triples))
    if args.json:
        _print_json(
            {
                "m": count.m,
                "margin": count.margin,
                "triangles": triples,
                "tangential": [o.tangential for o in orbits],
            }
        )
        return EXIT_OK
    print(f"m = {count.m} (margin {count.margin:+.7f})")
    for i, o in enumerate(orbits):
        tag = " (tangential)" if o.tangential else ""
        angles = ", ".join(f"{a:.7f}" for a in o.angles)
        print(f"  triangle {i + 1}: angles [{angles}] turns{tag}")
    return EXIT_OK


def _sweep_rows(p, q, grid, band, workers):
    """Classify every grid cell; returns rows plus the skipped-cell count."""
    coords = [-1.0 + 2.0 * i / (grid - 1) for i in range(grid)]
    gap = klein_tangent_gap(p, q)
    px, py = p.xy
    qx, qy = q.xy

    def one_row(iy):
        ry = coords[iy]
        cells = []
        for rx in coords:
            if rx * rx + ry * ry >= 1.0 - BOUNDARY_MARGIN:
                cells.append(None)
                continue
            cross = (qx - px) * (ry - py) - (qy - py) * (rx - px)
            if abs(cross) <= AREA_EPS:
                cells.append(None)
                continue
            margin = delta(p, q, DiskPoint(rx, ry)) - gap
            m = 1 if abs(margin) <= band else (0 if margin < 0.0 else 2)
            cells.append((rx, ry, margin, m))
        return cells

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            per_row = list(ex.map(one_row, range(grid)))
    else:
        per_row = [one_row(iy) for iy in range(grid)]

    rows = []
    skipped = 0
    for cells in per_row:
        for cell in cells:
            if cell is None:
                skipped += 1
            else:
                rows.append(cell)
    return rows, skipped


def cmd_sweep(args) -> int:
    p, q = parse_chord_spec(args.chord)
    if args.grid < 2:
        raise SpecParseError("grid must be at least 2", 0)
    cap = os.environ.get("BARBILLIARDS_THREADS", "1")
    try:
        workers = max(1, min(int(cap), os.cpu_count() or 1))
    except ValueError:
        workers = 1
    rows, skipped = _sweep_rows(p, q, args.grid, args.band, workers)
    if skipped:
        log.info(
            "sweep: skipped %d of %d cells (outside the disk or collinear "
            "with the chord)",
            skipped,
            args.grid * args.grid,
        )

    # rotation numbers: exact 1/3 whenever an inscribed triangle exists,
    # batch-estimated otherwise
    rhos = [ONE_THIRD] * len(rows)
    zero_idx = [i for i, row in enumerate(rows) if row[3] == 0]
    if zero_idx:
        tris = [
            Triangle(p, q, DiskPoint(rows[i][0], rows[i][1])) for i in zero_idx
        ]
        for i, value in zip(zero_idx, rotation_number_batch(tris, args.iters)):
            rhos[i] = float(value)

    lines = ["rx,ry,margin,m,rho"]
    for row, rho in zip(rows, rhos):
        rx, ry, margin, m = row
        lines.append(f"{rx!r},{ry!r},{margin!r},{m},{rho!r}")
    _write_text(args.csv, "\n".join(lines) + "\n")

    if args.png:
        from .figures import render_sweep_png

        render_sweep_png(
            args.png,
            [r[0] for r in rows],
            [r[1] for r in rows],
            [r[3] for r in rows],
            chord=(p, q),
            ellipse=tangency_ellipse(p, q),
        )
    return EXIT_OK


def cmd_mu(args) -> int:
    tri = parse_triangle_spec(args.triangle)
    shape = TriangleShape.from_triangle(tri)
    est = mu_estimate(shape, args.tol)
    if args.json:
        _print_json(
            {
                "shape": list(shape.ratios),
                "kind": shape.kind,
                "lower": est.lower,
                "upper": est.upper,
                "samples": est.samples,
                "grid_resolution": est.grid_resolution,
            }
        )
        return EXIT_OK
    print(
        f"critical-scale bracket: [{est.lower:.7f}, {est.upper:.7f}] "
        f"(width {est.upper - est.lower:.2e}, {est.samples} placements per scale)"
    )
    return EXIT_OK


def cmd_dynamics(args) -> int:
    tri = parse_triangle_spec(args.triangle)
    report = classify_dynamics(tri)
    doc = {
        "case": report.case.value,
        "attractor": list(report.attractor) if report.attractor else None,
        "repeller": list(report.repeller) if report.repeller else None,
        "basins": [[b.start, b.end, b.target] for b in report.basins],
    }
    if args.json:
        _print_json(doc)
        return EXIT_OK
    print(f"case: {report.case.value}")
    if report.attractor:
        print("attractor:", ", ".join(f"{a:.7f}" for a in report.attractor))
    if report.repeller:
        print("repeller: ", ", ".join(f"{a:.7f}" for a in report.repeller))
    return EXIT_OK


# let option values like "-0.25,0.43:..." parse as values, not flags
_COORDINATE_TOKEN = re.compile(r"^-\.?\d[\d.,:eE+-]*$")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="barbilliards",
        description="Tangent-line billiards around a triangular obstacle "
        "in the unit disk.",
    )
    parser._negative_number_matcher = _COORDINATE_TOKEN
    subparsers = parser.add_subparsers(dest="command", required=True)

    class sub:
        @staticmethod
        def add_parser(name, **kwargs):
            sp = subparsers.add_parser(name, **kwargs)
            sp._negative_number_matcher = _COORDINATE_TOKEN
            return sp

    def add_triangle(sp):
        sp.add_argument(
            "-t",
            "--triangle",
            required=True,
            help="'px,py:qx,qy:rx,ry' or JSON {\"P\":[x,y],\"Q\":...,\"R\":...}",
        )

    sp = sub.add_parser("classify", help="count inscribed circumscribing triangles")
    add_triangle(sp)
    sp.add_argument("--band", type=float, default=DEFAULT_BAND)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("rotation", help="estimate the rotation number")
    add_triangle(sp)
    sp.add_argument("--iters", type=int, default=100_000)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_rotation)

    sp = sub.add_parser("orbit", help="iterate the tangent map")
    add_triangle(sp)
    sp.add_argument("--start", type=float, default=0.0, help="start angle in turns")
    sp.add_argument("--steps", type=int, default=100)
    sp.add_argument("--svg", help="write the orbit scene to this SVG path")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("ellipse", help="tangency ellipse of a chord pair")
    sp.add_argument("--chord", required=True, help="'px,py:qx,qy'")
    sp.add_argument("--svg", help="write the ellipse scene to this SVG path")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_ellipse)

    sp = sub.add_parser("inscribed", help="construct the inscribed triangles")
    add_triangle(sp)
    sp.add_argument("--band", type=float, default=DEFAULT_BAND)
    sp.add_argument("--svg", help="write the scene to this SVG path")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_inscribed)

    sp = sub.add_parser("sweep", help="classification grid over third vertices")
    sp.add_argument("--chord", required=True, help="'px,py:qx,qy'")
    sp.add_argument("--grid", type=int, default=201)
    sp.add_argument("--csv", required=True, help="output CSV path")
    sp.add_argument("--band", type=float, default=DEFAULT_BAND)
    sp.add_argument("--iters", type=int, default=1000, help="rotation steps for m=0 cells")
    sp.add_argument("--png", help="also render a matplotlib figure to this path")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("mu", help="bracket the critical congruence scale")
    add_triangle(sp)
    sp.add_argument("--tol", type=float, default=1e-4)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_mu)

    sp = sub.add_parser("dynamics", help="attractor/repeller structure")
    add_triangle(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_dynamics)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SpecParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except GeometryError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_GEOMETRY
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_GEOMETRY
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
