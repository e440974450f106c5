"""Tangent-line billiards around a triangular obstacle in the unit disk."""

from .hypgeom import (
    AREA_EPS,
    BOUNDARY_MARGIN,
    BoundaryPoint,
    DegenerateChordError,
    DegenerateTriangleError,
    DiskPoint,
    GeometryError,
    OutsideDiskError,
    SideLengths,
    Triangle,
    delta,
    foot_distance,
    from_klein,
    half_plane_distance,
    klein_chord_endpoints,
    klein_distance,
    klein_tangent_gap,
    omega,
    poincare_distance,
    tangent_gap,
    to_half_plane,
    to_klein,
    wrap_turns,
)
from .inscribed import (
    DEFAULT_BAND,
    ArcCircle,
    ChordFrame,
    InscribedCount,
    InscribedTriangle,
    TangencyEllipse,
    chord_frame,
    classify_via_ellipse,
    construct_inscribed_triangles,
    count_inscribed,
    count_inscribed_via_omega,
    envelope_line,
    envelope_point,
    poincare_arcs,
    tangency_ellipse,
    tangency_ellipse_via_gap,
)
from .circlemap import (
    Basin,
    DynamicsCase,
    DynamicsReport,
    PeriodicOrbit,
    RotationEstimate,
    advance,
    classify_dynamics,
    find_period3_orbits,
    iterate_orbit,
    psi,
    psi_lift,
    rotation_number,
    rotation_number_batch,
    supporting_vertices,
)
from .congruence import (
    InvarianceReport,
    MuConvergenceError,
    MuEstimate,
    TriangleShape,
    admissible_translations,
    centered_representative,
    congruence_invariance_report,
    kappa,
    mu_estimate,
    scale_about,
    translate,
)

__version__ = "0.1.0"
