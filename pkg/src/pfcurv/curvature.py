"""Curvature of piecewise-flat manifolds from deficit angles.

All curvature lives on codimension-2 hinges: the deficit angle is what a
vector picks up under parallel transport around the hinge, and dividing
by the dual area gives a sectional curvature.  Coarser quantities (Ricci
on edges of either lattice, scalars on vertices) are hybrid-volume
weighted averages of the hinge values.

Orientation convention: a hinge plane carries two orientations, and
summing over both doubles the integrated Riemann and Ricci values.  The
functions here default to the single-orientation values, which make the
volume-weighted sums over any lattice telescope to the same action:

    sum_h Rbar_h V_h = sum_lambda Rbar_lambda V_lambda
                     = sum_l Rbar_l V_l = S.

Passing ``both_orientations=True`` sums the two orientations and returns
the doubled values instead.  Scalar curvatures are genuine double traces,
carry d(d-1) with no extra factor, and have no orientation switch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .complex import Hinge, SimplexId
from .errors import BoundaryElement, BoundaryHinge, ZeroMeasureElement
from .geometry import MetricComplex

TWO_PI = 2.0 * math.pi


def _hinge(m: MetricComplex, h) -> Hinge:
    if isinstance(h, Hinge):
        return h
    if h.dim != m.dim - 2:
        raise ValueError(f"hinges have dimension {m.dim - 2}, got {h.dim}")
    return m.complex.hinges()[h.index]


def deficit(m: MetricComplex, h, *, allow_boundary: bool = False) -> float:
    """Deficit angle 2*pi - sum of dihedral angles around a hinge.

    Boundary hinges have no full angle to compare against; with
    ``allow_boundary`` they get the exterior-angle convention
    pi - sum of angles, otherwise they raise :class:`BoundaryHinge`.
    """
    hg = _hinge(m, h)
    total = sum(m.dihedral_angle(hg.simplex, t) for t in hg.star)
    if hg.is_boundary:
        if not allow_boundary:
            raise BoundaryHinge(
                f"hinge {m.complex.simplex(hg.simplex)} lies on the boundary"
            )
        return math.pi - total
    return TWO_PI - total


def sectional(m: MetricComplex, h) -> float:
    """Sectional curvature of the hinge plane: deficit over dual area."""
    hg = _hinge(m, h)
    astar = m.dual_volume(hg.simplex)
    if astar == 0:
        raise ZeroMeasureElement(
            f"hinge {m.complex.simplex(hg.simplex)} has zero dual area"
        )
    return deficit(m, hg) / astar

def riemann_hinge(
    m: MetricComplex, h, *, normalized: bool = False, both_orientations: bool = False
) -> float:
    """The one nonzero Riemann eigenvalue carried by a hinge.

    The eigenvector is the area form of the (hinge, dual polygon) plane;
    unnormalized values carry the eigenvalue multiplicity C(d, 2) of the
    continuum round sphere, normalized ones are the bare sectional value.
    """
    k = sectional(m, h)
    if not normalized:
        k *= math.comb(m.dim, 2)
    if both_orientations:
        k *= 2.0
    return k


def _interior_hinges_within(m: MetricComplex, sp: SimplexId) -> list[Hinge]:
    c = m.complex
    hs = c.hinges()
    return [
        hs[x.index]
        for x in c.faces(sp, m.dim - 2)
        if not hs[x.index].is_boundary
    ]


def ricci_dual_edge(
    m: MetricComplex, face, *, normalized: bool = False, both_orientations: bool = False
) -> float:
    """Ricci curvature along the dual edge of an interior codim-1 face.

    The dual edge crosses the dual polygons of the hinges of its face;
    their sectional curvatures are averaged with shared hybrid volume
    weights V_{h, face} / V_face.  Dimension >= 3 (in dimension 2 dual
    edges pair with edges, not with hinge data).
    """
    d = m.dim
    if d < 3:
        raise ValueError("dual-edge Ricci needs dimension >= 3")
    f = face if isinstance(face, SimplexId) else SimplexId(d - 1, face)
    if f.dim != d - 1:
        raise ValueError(f"expected a {d - 1}-face")
    if m.complex.is_boundary[f.dim][f.index]:
        raise BoundaryElement(
            f"face {m.complex.simplex(f)} lies on the boundary; its dual "
            "edge is clipped"
        )
    num = 0.0
    den = 0.0
    for hg in _interior_hinges_within(m, f):
        w = m.shared_hybrid_volume(hg.simplex, f)
        num += sectional(m, hg) * w
        den += w
    if den == 0:
        raise ZeroMeasureElement(f"face {m.complex.simplex(f)} has zero weight")
    value = math.comb(d, 2) * num / den
    if both_orientations:
        value *= 2.0
    return value / d if normalized else value


def ricci_simplicial_edge(
    m: MetricComplex, edge, *, normalized: bool = False, both_orientations: bool = False
) -> float:
    """Ricci curvature along an interior simplicial edge.

    Deficits and dual areas of the hinges containing the edge are
    averaged separately with restricted hinge-area weights A_{h,edge}:

        Rbar = C(d,2) <deficit> / <dual area>

    In dimension 3 the only hinge containing an edge is the edge itself
    and the general average collapses to the closed form
    Rbar = C(3,2) deficit / dual area.
    """
    d = m.dim
    if d < 3:
        raise ValueError("edge Ricci needs dimension >= 3")
    ell = edge if isinstance(edge, SimplexId) else SimplexId(1, edge)
    if m.complex.is_boundary[1][ell.index]:
        raise BoundaryElement(
            f"edge {m.complex.simplex(ell)} lies on the boundary"
        )
    hs = m.complex.hinges()
    num = 0.0
    den = 0.0
    wsum = 0.0
    for x in m.complex.cofaces(ell, d - 2):
        hg = hs[x.index]
        w = m.restricted_hinge_area(hg.simplex, ell)
        num += deficit(m, hg) * w
        den += m.dual_volume(hg.simplex) * w
        wsum += w
    if den == 0:
        raise ZeroMeasureElement(
            f"edge {m.complex.simplex(ell)} sees zero average dual area"
        )
    value = math.comb(d, 2) * num / den
    if both_orientations:
        value *= 2.0
    return value / d if normalized else value


def scalar_vertex(m: MetricComplex, v, *, lattice: str = "simplicial") -> float:
    """Scalar curvature at a vertex of either lattice.

    Simplicial: d(d-1) times the ratio of the restricted-measure-weighted
    averages of deficit and dual area over the hinges at an interior
    vertex (in dimension 2 the vertex is its own hinge with unit weight).
    Dual: the hybrid-volume average of the hinge scalars d(d-1) deficit /
    dual area over the hinges of the top cell that is the dual vertex.
    """
    d = m.dim
    c = m.complex
    if lattice == "simplicial":
        vid = v if isinstance(v, SimplexId) else SimplexId(0, v)
        if c.is_boundary[0][vid.index]:
            raise BoundaryElement(f"vertex {c.simplex(vid)} lies on the boundary")
        hs = c.hinges()
        num = 0.0
        den = 0.0
        for x in c.cofaces(vid, d - 2):
            hg = hs[x.index]
            w = m.restricted_measure(hg.simplex, vid)
            num += deficit(m, hg) * w
            den += m.dual_volume(hg.simplex) * w
        if den == 0:
            raise ZeroMeasureElement(
                f"vertex {c.simplex(vid)} sees zero average dual area"
            )
        return d * (d - 1) * num / den
    if lattice == "dual":
        tid = v if isinstance(v, SimplexId) else SimplexId(d, v)
        if tid.dim != d:
            raise ValueError("dual vertices are top cells")
        num = 0.0
        den = 0.0
        for hg in _interior_hinges_within(m, tid):
            w = m.shared_hybrid_volume(hg.simplex, tid)
            astar = m.dual_volume(hg.simplex)
            if astar == 0:
                raise ZeroMeasureElement(
                    f"hinge {c.simplex(hg.simplex)} has zero dual area"
                )
            num += d * (d - 1) * (deficit(m, hg) / astar) * w
            den += w
        if den == 0:
            return 0.0  # no interior hinge reaches this cell
        return num / den
    raise ValueError(f"unknown lattice {lattice!r}")


def regge_action(
    m: MetricComplex, *, prefactor: float = 1.0, include_boundary: bool = False
) -> float:
    """Total action sum_h deficit_h |h| over interior hinges.

    With ``include_boundary`` the boundary hinges contribute their
    exterior angles pi - sum of dihedral angles times their areas.  The
    optional prefactor multiplies the sum (default 1); deficits are scale
    invariant, so S scales like length**(d-2).
    """
    total = 0.0
    for hg in m.complex.hinges():
        if hg.is_boundary and not include_boundary:
            continue
        total += deficit(m, hg, allow_boundary=True) * m.simplex_volume(hg.simplex)
    return prefactor * total


@dataclass(frozen=True)
class CurvatureReport:
    """All curvature data of one mesh in array form.

    Boundary elements hold nan in columns that are undefined for them
    and are flagged in the matching boolean arrays; ratios that are
    indeterminate because a dual measure vanishes (flat non-well-centered
    meshes) are nan as well.  ``metadata`` records the conventions
    (orientation factor, boundary handling).
    """

    dim: int
    hinge_deficit: np.ndarray
    hinge_sectional: np.ndarray
    hinge_riemann: np.ndarray
    hinge_riemann_normalized: np.ndarray
    hinge_area: np.ndarray
    hinge_dual_area: np.ndarray
    hinge_is_boundary: np.ndarray
    dual_edge_ricci: np.ndarray | None
    dual_edge_ricci_normalized: np.ndarray | None
    face_is_boundary: np.ndarray | None
    edge_ricci: np.ndarray | None
    edge_ricci_normalized: np.ndarray | None
    edge_is_boundary: np.ndarray | None
    vertex_scalar: np.ndarray
    vertex_is_boundary: np.ndarray
    dual_vertex_scalar: np.ndarray
    action: float
    metadata: dict = field(default_factory=dict)

    def target_columns(self, at: str) -> dict[str, np.ndarray]:
        """Column arrays for one reporting target, ready to serialize."""
        if at == "hinges":
            return {
                "deficit": self.hinge_deficit,
                "sectional": self.hinge_sectional,
                "riemann": self.hinge_riemann,
                "riemann_normalized": self.hinge_riemann_normalized,
                "area": self.hinge_area,
                "dual_area": self.hinge_dual_area,
                "is_boundary": self.hinge_is_boundary,
            }
        if at == "dual-edges":
            if self.dual_edge_ricci is None:
                raise ValueError("dual-edge Ricci is undefined in dimension 2")
            return {
                "ricci": self.dual_edge_ricci,
                "ricci_normalized": self.dual_edge_ricci_normalized,
                "is_boundary": self.face_is_boundary,
            }
        if at == "edges":
            if self.edge_ricci is None:
                raise ValueError("edge Ricci is undefined in dimension 2")
            return {
                "ricci": self.edge_ricci,
                "ricci_normalized": self.edge_ricci_normalized,
                "is_boundary": self.edge_is_boundary,
            }
        if at == "vertices":
            return {
                "scalar": self.vertex_scalar,
                "is_boundary": self.vertex_is_boundary,
            }
        if at == "dual-vertices":
            return {"scalar": self.dual_vertex_scalar}
        raise ValueError(f"unknown target {at!r}")


def curvature_report(m: MetricComplex) -> CurvatureReport:
    """Evaluate every curvature quantity on its natural support."""
    d = m.dim
    c = m.complex
    hs = c.hinges()
    nh = len(hs)
    dfc = np.empty(nh)
    sec = np.full(nh, np.nan)
    bar = np.full(nh, np.nan)
    nrm = np.full(nh, np.nan)
    hb = np.array([h.is_boundary for h in hs])
    for i, hg in enumerate(hs):
        dfc[i] = deficit(m, hg, allow_boundary=True)
        if not hg.is_boundary:
            astar = m.dual_volume(hg.simplex)
            if astar != 0:
                sec[i] = dfc[i] / astar
                bar[i] = math.comb(d, 2) * sec[i]
                nrm[i] = sec[i]
    if d >= 3:
        nf = c.n_simplices(d - 1)
        fb = m.complex.is_boundary[d - 1].copy()
        dric = np.full(nf, np.nan)
        dricn = np.full(nf, np.nan)
        for i in range(nf):
            if not fb[i]:
                try:
                    dric[i] = ricci_dual_edge(m, i)
                    dricn[i] = ricci_dual_edge(m, i, normalized=True)
                except ZeroMeasureElement:
                    pass  # indeterminate on zero dual measures; stays nan
        ne = c.n_simplices(1)
        eb = m.complex.is_boundary[1].copy()
        eric = np.full(ne, np.nan)
        ericn = np.full(ne, np.nan)
        for i in range(ne):
            if not eb[i]:
                try:
                    eric[i] = ricci_simplicial_edge(m, i)
                    ericn[i] = ricci_simplicial_edge(m, i, normalized=True)
                except ZeroMeasureElement:
                    pass
    else:
        dric = dricn = fb = eric = ericn = eb = None
    nv = c.n_simplices(0)
    vb = m.complex.is_boundary[0].copy()
    vs = np.full(nv, np.nan)
    for i in range(nv):
        if not vb[i]:
            try:
                vs[i] = scalar_vertex(m, i)
            except ZeroMeasureElement:
                pass
    dvs = np.full(c.n_simplices(d), np.nan)
    for t in range(c.n_simplices(d)):
        try:
            dvs[t] = scalar_vertex(m, t, lattice="dual")
        except ZeroMeasureElement:
            pass
    return CurvatureReport(
        dim=d,
        hinge_deficit=dfc,
        hinge_sectional=sec,
        hinge_riemann=bar,
        hinge_riemann_normalized=nrm,
        hinge_area=m.volumes[d - 2].copy(),
        hinge_dual_area=m.dual_volumes[d - 2].copy(),
        hinge_is_boundary=hb,
        dual_edge_ricci=dric,
        dual_edge_ricci_normalized=dricn,
        face_is_boundary=fb,
        edge_ricci=eric,
        edge_ricci_normalized=ericn,
        edge_is_boundary=eb,
        vertex_scalar=vs,
        vertex_is_boundary=vb,
        dual_vertex_scalar=dvs,
        action=regge_action(m),
        metadata={
            "orientation_factor": 2.0,
            "orientation_note": (
                "values use one orientation per hinge plane; multiply "
                "Riemann/Ricci by orientation_factor for the sum over "
                "both orientations"
            ),
            "boundary": "boundary elements excluded (nan) and flagged",
        },
    )
