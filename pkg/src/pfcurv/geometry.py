"""Metric geometry of a simplicial complex from squared edge lengths.

All geometric quantities are functions of the squared edge lengths alone.
Simplexes are embedded locally through the Gram matrix

    G_ij = (l2[0,i] + l2[0,j] - l2[i,j]) / 2

whose Cholesky factor gives coordinates with vertex 0 at the origin.
Circumcenters are solved in barycentric form from the bordered
Cayley-Menger system, so every derived quantity (elevations, dual cells,
hybrid volumes) is intrinsic and needs no global embedding.

The dual complex is circumcentric: the dual cell of a k-simplex s is made
of the simplexes spanned by the circumcenters along ascending chains
s = t_k < t_{k+1} < ... < t_d.  Consecutive circumcenter offsets are
mutually orthogonal, so each chain contributes the signed product of its
elevations divided by (d-k)!.  Chains leaving the complex at a boundary
simply do not exist, which clips dual cells at the boundary.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .complex import SimplexId, SimplicialComplex
from .errors import (
    DegenerateSimplex,
    NonWellCenteredWarning,
    NotIncident,
    ZeroMeasureElement,
)

DEGENERACY_TOL = 1e-12
ZERO_MEASURE_TOL = 1e-300


@dataclass(frozen=True)
class HybridVolumeTable:
    """Per-dimension element measures and hybrid volumes.

    ``measures[k]`` holds |s| for every k-simplex, ``dual_measures[k]``
    the signed dual volume |*s|, and ``volumes[k]`` the hybrid volume
    V_s = |s| |*s| / C(d, k).  For every k the volumes sum to the total
    volume of the complex.
    """

    measures: list[np.ndarray]
    dual_measures: list[np.ndarray]
    volumes: list[np.ndarray]

    def total(self, k: int) -> float:
        return float(self.volumes[k].sum())


class MetricComplex:
    """A simplicial complex equipped with squared edge lengths.

    Parameters
    ----------
    complex : SimplicialComplex
        The combinatorial structure.
    edge_lengths_sq : array_like
        Squared length per edge, indexed like the 1-skeleton.

    All per-simplex caches (volumes, circumcenters, elevations, dual
    volumes) are computed once at construction and are immutable.
    Construction raises :class:`DegenerateSimplex` if any simplex of any
    dimension fails to have positive volume, and emits
    :class:`NonWellCenteredWarning` when some net dual volume is zero or
    negative.
    """

    def __init__(self, complex: SimplicialComplex, edge_lengths_sq):
        self.complex = complex
        d = complex.dim
        l2 = np.asarray(edge_lengths_sq, dtype=np.float64)
        if l2.shape != (complex.n_simplices(1),):
            raise ValueError(
                f"expected {complex.n_simplices(1)} squared lengths, got {l2.shape}"
            )
        if not (l2 > 0).all():
            raise ValueError("squared edge lengths must be positive")
        self.edge_lengths_sq = l2
        self.coordinates: np.ndarray | None = None  # oracle/serialization aid
        self._chain_cache: dict[tuple[int, int, int, int], float] = {}
        self._build_caches()

    # -- cache construction ---------------------------------------------

    def _build_caches(self) -> None:
        c = self.complex
        d = c.dim
        n0 = c.n_simplices(0)
        self._dist2: list[np.ndarray | None] = [None] * (d + 1)
        self.volumes: list[np.ndarray] = [np.ones(n0)]
        self.barycentric: list[np.ndarray] = [np.ones((n0, 1))]
        self.circumradius_sq: list[np.ndarray] = [np.zeros(n0)]
        self._coords: list[np.ndarray] = [np.zeros((n0, 1, 0))]
        self._elev: list[np.ndarray | None] = [None]

        edge_index = c.index[1]
        for k in range(1, d + 1):
            verts = c.simplices[k]
            n = verts.shape[0]
            D2 = np.zeros((n, k + 1, k + 1))
            for p, q in itertools.combinations(range(k + 1), 2):
                ids = [edge_index[(int(a), int(b))] for a, b in zip(verts[:, p], verts[:, q])]
                D2[:, p, q] = D2[:, q, p] = self.edge_lengths_sq[ids]
            self._dist2[k] = D2

            # bordered Cayley-Menger matrix: determinant gives the volume,
            # the solve gives circumcenter barycentrics and circumradius
            B = np.zeros((n, k + 2, k + 2))
            B[:, 0, 1:] = 1.0
            B[:, 1:, 0] = 1.0
            B[:, 1:, 1:] = D2
            det = np.linalg.det(B)
            vol_sq = ((-1.0) ** (k + 1)) * det / (2.0**k * math.factorial(k) ** 2)
            scale = D2.max(axis=(1, 2))
            bad = vol_sq <= DEGENERACY_TOL * scale**k
            if bad.any():
                i = int(np.argmax(bad))
                raise DegenerateSimplex(
                    f"{k}-simplex {tuple(verts[i])} has non-positive volume "
                    f"(vol^2 = {vol_sq[i]:.3e})"
                )
            rhs = np.zeros((n, k + 2))
            rhs[:, 0] = 1.0
            sol = np.linalg.solve(B, rhs[..., None])[..., 0]
            self.circumradius_sq.append(-sol[:, 0] / 2.0)
            self.barycentric.append(sol[:, 1:])
            self.volumes.append(np.sqrt(vol_sq))

            # local embedding: Gram Cholesky, vertex 0 at the origin
            G = (D2[:, :1, 1:] + D2[:, 1:, :1] - D2[:, 1:, 1:]) / 2.0
            try:
                L = np.linalg.cholesky(G)
            except np.linalg.LinAlgError:
                i = self._first_non_spd(G)
                raise DegenerateSimplex(
                    f"{k}-simplex {tuple(verts[i])} has a non-positive-definite "
                    "Gram matrix"
                ) from None
            coords = np.zeros((n, k + 1, k))
            coords[:, 1:, :] = L
            self._coords.append(coords)

            # elevations over each facet, sign toward the opposite vertex
            center = np.einsum("nj,njc->nc", self.barycentric[k], coords)
            elev = np.empty((n, k + 1))
            for j in range(k + 1):
                keep = [i for i in range(k + 1) if i != j]
                X = coords[:, keep, :]
                bf = self.barycentric[k - 1][c.facets[k][:, j]]
                cs = np.einsum("nj,njc->nc", bf, X)
                e = center - cs
                w = coords[:, j, :]
                dot = ((w - cs) * e).sum(axis=1)
                elev[:, j] = np.sign(dot) * np.linalg.norm(e, axis=1)
            self._elev.append(elev)

        # ascending chain factors: U[k][s] = sum over chains s < ... < top
        # of the product of elevations; |*s| = U[k][s] / (d-k)!
        U: list[np.ndarray] = [np.zeros(0)] * (d + 1)
        U[d] = np.ones(c.n_simplices(d))
        for k in range(d - 1, -1, -1):
            u = np.zeros(c.n_simplices(k))
            contrib = self._elev[k + 1] * U[k + 1][:, None]
            np.add.at(u, c.facets[k + 1].ravel(), contrib.ravel())
            U[k] = u
        self._up = U
        self.dual_volumes: list[np.ndarray] = [
            U[k] / math.factorial(d - k) for k in range(d)
        ]
        self.dual_volumes.append(np.ones(c.n_simplices(d)))

        # descending chain factors: D[k][s] = sum over chains v < ... < s;
        # numerically D[k] = k! |s|, which the flag-sum route relies on
        Dn: list[np.ndarray] = [np.ones(n0)]
        for k in range(1, d + 1):
            Dn.append((Dn[k - 1][c.facets[k]] * self._elev[k]).sum(axis=1))
        self._down = Dn

        flat = np.concatenate([self.dual_volumes[k] for k in range(d)])
        n_bad = int((flat <= 0).sum())
        if n_bad:
            warnings.warn(
                f"{n_bad} dual volumes are zero or negative; "
                "the mesh is not well-centered",
                NonWellCenteredWarning,
                stacklevel=2,
            )

    @staticmethod
    def _first_non_spd(G: np.ndarray) -> int:
        for i in range(G.shape[0]):
            try:
                np.linalg.cholesky(G[i])
            except np.linalg.LinAlgError:
                return i
        return 0

    # -- basic queries ---------------------------------------------------

    @property
    def dim(self) -> int:
        return self.complex.dim

    def edge_length_sq(self, u: int, v: int) -> float:
        return float(self.edge_lengths_sq[self.complex.id_of((u, v)).index])

    def embed_simplex(self, s: SimplexId) -> np.ndarray:
        """Coordinates of the vertices of ``s`` in R^k, vertex 0 at the
        origin, reproducing all pairwise squared lengths."""
        return self._coords[s.dim][s.index].copy()

    def simplex_volume(self, s: SimplexId) -> float:
        """Unsigned k-volume of ``s`` (1 for vertices)."""
        return float(self.volumes[s.dim][s.index])

    def circumcenter(self, s: SimplexId) -> tuple[np.ndarray, float]:
        """Barycentric circumcenter coordinates and squared circumradius."""
        return (
            self.barycentric[s.dim][s.index].copy(),
            float(self.circumradius_sq[s.dim][s.index]),
        )

    def elevation(self, s: SimplexId, t: SimplexId) -> float:
        """Signed distance from circumcenter(s) to circumcenter(t) for a
        facet s of t, positive toward the vertex of t opposite s."""
        if t.dim != s.dim + 1:
            raise NotIncident(f"elevation needs dim(t) = dim(s) + 1, got {s} in {t}")
        facets = self.complex.facets[t.dim][t.index]
        pos = np.nonzero(facets == s.index)[0]
        if pos.size == 0:
            raise NotIncident(f"{s} is not a facet of {t}")
        return float(self._elev[t.dim][t.index, pos[0]])

    def dual_volume(self, s: SimplexId) -> float:
        """Signed (d-k)-volume of the circumcentric dual cell of ``s``.

        Sums (1/(d-k)!) times the signed elevation product over all
        ascending chains from ``s`` to a top cell; 1 for top cells.
        """
        return float(self.dual_volumes[s.dim][s.index])

    # -- hybrid volumes --------------------------------------------------

    def irreducible_cell_volume(self, chain) -> float:
        """Signed volume of the hybrid cell of one full flag.

        ``chain`` lists incident simplexes of dimensions 0..d.  The value
        is the product of the d consecutive elevations divided by d!,
        negative when the flag reaches outside its simplexes.
        """
        c = self.complex
        d = c.dim
        ids = list(chain)
        if [s.dim for s in ids] != list(range(d + 1)):
            raise ValueError("chain must contain one simplex of each dimension 0..d")
        prod = 1.0
        for s, t in zip(ids, ids[1:]):
            if not set(c.simplex(s)) <= set(c.simplex(t)):
                raise NotIncident(f"{s} not a face of {t}")
            prod *= self.elevation(s, t)
        return prod / math.factorial(d)

    def hybrid_volume(self, s: SimplexId) -> float:
        """V_s = |s| |*s| / C(d, k), the hybrid-cell volume of ``s``."""
        d = self.dim
        return (
            self.simplex_volume(s)
            * self.dual_volume(s)
            / math.comb(d, s.dim)
        )

    def hybrid_volume_from_flags(self, s: SimplexId) -> float:
        """Same V_s accumulated as a signed sum over all flags through
        ``s``; equals :meth:`hybrid_volume` up to roundoff."""
        return (
            self._down[s.dim][s.index]
            * self._up[s.dim][s.index]
            / math.factorial(self.dim)
        )

    def _chain_sum(self, k: int, i: int, kp: int, ip: int) -> float:
        """Sum over chains of simplexes from (k, i) up to (kp, ip) of the
        product of elevations along the chain."""
        if k == kp:
            return 1.0 if i == ip else 0.0
        key = (k, i, kp, ip)
        hit = self._chain_cache.get(key)
        if hit is not None:
            return hit
        c = self.complex
        target = set(c.simplex_tuples[kp][ip])
        total = 0.0
        for t, j in c.cofacets[k][i]:
            if set(c.simplex_tuples[k + 1][t]) <= target:
                total += self._elev[k + 1][t, j] * self._chain_sum(k + 1, t, kp, ip)
        self._chain_cache[key] = total
        return total

    def shared_hybrid_volume(self, s: SimplexId, sp: SimplexId) -> float:
        """Signed volume V_{s sp} shared by the hybrid cells of two
        incident simplexes: the sum over flags through both."""
        if s.dim > sp.dim:
            s, sp = sp, s
        c = self.complex
        if s == sp:
            return self.hybrid_volume_from_flags(s)
        if not set(c.simplex(s)) <= set(c.simplex(sp)):
            raise NotIncident(f"{s} and {sp} are not incident")
        return (
            self._down[s.dim][s.index]
            * self._chain_sum(s.dim, s.index, sp.dim, sp.index)
            * self._up[sp.dim][sp.index]
            / math.factorial(self.dim)
        )

    def restricted_measure(self, h: SimplexId, s: SimplexId) -> float:
        """Hybrid measure of ``s`` inside ``h`` treated as a complex of its
        own dimension (the in-hinge analogue of :meth:`hybrid_volume`)."""
        c = self.complex
        if s.dim > h.dim or not set(c.simplex(s)) <= set(c.simplex(h)):
            raise NotIncident(f"{s} is not a face of {h}")
        q, p = h.dim, s.dim
        m = self._chain_sum(p, s.index, q, h.index)
        return (
            self.simplex_volume(s) * m / (math.factorial(q - p) * math.comb(q, p))
        )

    def restricted_hinge_area(self, h: SimplexId, edge: SimplexId) -> float:
        """Portion A_{h,edge} of the hinge area |h| attributed to one of
        its edges; the portions over the edges of h sum to |h|.

        Defined for dimension >= 3 (in dimension 3 the hinge is the edge
        and the value is its length).
        """
        if self.dim < 3:
            raise ValueError("restricted hinge areas need dimension >= 3")
        if h.dim != self.dim - 2 or edge.dim != 1:
            raise ValueError("expected a hinge and one of its edges")
        return self.restricted_measure(h, edge)

    def hybrid_table(self) -> HybridVolumeTable:
        d = self.dim
        return HybridVolumeTable(
            measures=[self.volumes[k].copy() for k in range(d + 1)],
            dual_measures=[self.dual_volumes[k].copy() for k in range(d + 1)],
            volumes=[
                self.volumes[k] * self.dual_volumes[k] / math.comb(d, k)
                for k in range(d + 1)
            ],
        )

    def moment_arm(self, s: SimplexId, sp: SimplexId) -> float:
        """Moment arm magnitude between ``s`` and the dual element of
        ``sp`` (which must contain ``s``):

            |m| = C(d,k) C(d-k,p) V_{s sp} / (|s| |*sp|)

        with k = dim(s) and p = d - dim(sp).  Reduces to the distance
        between the two circumcenters for consecutive dimensions and to 1
        for an element paired with its own dual.
        """
        c = self.complex
        if not set(c.simplex(s)) <= set(c.simplex(sp)):
            raise NotIncident(f"dual partner {sp} does not contain {s}")
        d = self.dim
        k, p = s.dim, d - sp.dim
        dual = self.dual_volume(sp)
        if abs(dual) <= ZERO_MEASURE_TOL:
            raise ZeroMeasureElement(f"dual element of {sp} has zero measure")
        v = self.shared_hybrid_volume(s, sp)
        return abs(
            math.comb(d, k) * math.comb(d - k, p) * v / (self.simplex_volume(s) * dual)
        )

    # -- angles ----------------------------------------------------------

    def dihedral_angle(self, h: SimplexId, top: SimplexId) -> float:
        """Interior dihedral angle of a top cell at one of its hinges,
        measured in the plane orthogonal to the hinge; in (0, pi)."""
        c = self.complex
        d = self.dim
        if h.dim != d - 2 or top.dim != d:
            raise ValueError("expected a hinge and a top cell")
        tv = c.simplex(top)
        hv = set(c.simplex(h))
        if not hv <= set(tv):
            raise NotIncident(f"{h} is not a face of {top}")
        X = self._coords[d][top.index]
        hpos = [i for i, v in enumerate(tv) if v in hv]
        a, b = (i for i, v in enumerate(tv) if v not in hv)
        base = X[hpos[0]]
        u = X[a] - base
        v = X[b] - base
        if len(hpos) > 1:
            E = (X[hpos[1:]] - base).T
            Q, _ = np.linalg.qr(E)
            u = u - Q @ (Q.T @ u)
            v = v - Q @ (Q.T @ v)
        cosang = np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v))
        return float(np.arccos(np.clip(cosang, -1.0, 1.0)))

    def well_centered_fraction(self) -> float:
        """Fraction of simplexes of dimension >= 2 that contain their own
        circumcenter (all barycentric coordinates nonnegative)."""
        good = 0
        total = 0
        for k in range(2, self.dim + 1):
            b = self.barycentric[k]
            good += int((b >= 0).all(axis=1).sum())
            total += b.shape[0]
        return good / total if total else 1.0
