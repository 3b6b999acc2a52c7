"""Self-check suites: structural identities any valid mesh must satisfy.

Each check compares two independently computed quantities and reports
the worst relative residual against a fixed tolerance.  The CLI `check`
subcommand prints the results; the test suite reuses them directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .complex import SimplexId
from .curvature import (
    deficit,
    regge_action,
    ricci_dual_edge,
    ricci_simplicial_edge,
    riemann_hinge,
)
from .dec import DUAL, SIMPLICIAL, Cochain, coderivative, exterior_derivative, hodge, l2_inner_product, transfer_density
from .errors import ZeroMeasureElement
from .geometry import MetricComplex


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol


def _rel(diff: np.ndarray, scale: float) -> float:
    return float(np.max(np.abs(diff))) / max(scale, 1e-300)


def volume_checks(m: MetricComplex) -> list[CheckResult]:
    d = m.dim
    out = []
    total = float(m.volumes[d].sum())
    for k in range(d + 1):
        hyb = m.volumes[k] * m.dual_volumes[k] / math.comb(d, k)
        out.append(
            CheckResult(f"volume partition k={k}", abs(hyb.sum() - total) / total, 1e-9)
        )
        flags = np.array(
            [m.hybrid_volume_from_flags(SimplexId(k, i)) for i in range(len(hyb))]
        )
        out.append(
            CheckResult(
                f"hybrid two-path k={k}",
                _rel(hyb - flags, float(np.abs(hyb).max())),
                1e-10,
            )
        )
    # elevation magnitude against the circumradius Pythagoras relation
    worst = 0.0
    for k in range(1, d + 1):
        r2 = m.circumradius_sq[k][:, None] - m.circumradius_sq[k - 1][m.complex.facets[k]]
        diff = m._elev[k] ** 2 - r2
        worst = max(worst, _rel(diff, float(m.circumradius_sq[k].max())))
    out.append(CheckResult("elevation pythagoras", worst, 1e-10))
    if d >= 3:
        hs = m.complex
        worst = 0.0
        for h in range(hs.n_simplices(d - 2)):
            hid = SimplexId(d - 2, h)
            parts = sum(
                m.restricted_hinge_area(hid, e) for e in hs.faces(hid, 1)
            )
            area = m.simplex_volume(hid)
            worst = max(worst, abs(parts - area) / area)
        out.append(CheckResult("hinge area partition", worst, 1e-12))
        worst = 0.0
        scale = float(np.abs(m.volumes[1] * m.dual_volumes[1]).max()) / d
        for i in range(hs.n_simplices(1)):
            ell = SimplexId(1, i)
            v_l = m.hybrid_volume(ell)
            acc = sum(
                m.restricted_hinge_area(x, ell) * m.dual_volume(x) / math.comb(d, 2)
                for x in hs.cofaces(ell, d - 2)
            )
            worst = max(worst, abs(v_l - acc) / max(scale, 1e-300))
        out.append(CheckResult("edge volume decomposition", worst, 1e-10))
    return out


def dec_checks(m: MetricComplex, *, seed: int = 0, samples: int = 20) -> list[CheckResult]:
    d = m.dim
    c = m.complex
    rng = np.random.default_rng(seed)
    out = []
    for lattice in (SIMPLICIAL, DUAL):
        worst = 0
        for k in range(d - 1):
            kp = k if lattice == SIMPLICIAL else d - k
            n = c.n_simplices(kp)
            w = Cochain(m, lattice, k, rng.integers(-9, 10, size=n))
            dd = exterior_derivative(exterior_derivative(w))
            worst = max(worst, int(np.abs(dd.values).max()) if dd.values.size else 0)
        out.append(CheckResult(f"d after d vanishes ({lattice})", float(worst), 0.0))
    try:
        worst = 0.0
        for lattice in (SIMPLICIAL, DUAL):
            for k in range(d):
                kp = k if lattice == SIMPLICIAL else d - k
                n1 = c.n_simplices(kp)
                n2 = c.n_simplices(kp + 1 if lattice == SIMPLICIAL else kp - 1)
                for _ in range(samples):
                    a = Cochain(m, lattice, k, rng.standard_normal(n1))
                    b = Cochain(m, lattice, k + 1, rng.standard_normal(n2))
                    lhs = l2_inner_product(exterior_derivative(a), b)
                    rhs = l2_inner_product(a, coderivative(b))
                    scale = max(abs(lhs), abs(rhs), 1.0)
                    worst = max(worst, abs(lhs - rhs) / scale)
        out.append(CheckResult("measured adjointness", worst, 1e-10))
    except ZeroMeasureElement:
        pass  # zero dual measures block densities; nothing to check
    try:
        worst = 0.0
        dens_worst = 0.0
        for k in range(d + 1):
            n = c.n_simplices(k)
            w = Cochain(m, SIMPLICIAL, k, rng.standard_normal(n))
            star = hodge(w)
            back = hodge(star)
            scale = float(np.abs(w.values).max())
            worst = max(worst, _rel(back.values - w.values, scale))
            dens_worst = max(
                dens_worst,
                _rel(star.densities() - w.densities(), float(np.abs(w.densities()).max())),
            )
        out.append(CheckResult("hodge round trip", worst, 1e-13))
        out.append(CheckResult("hodge density preservation", dens_worst, 1e-13))
    except ZeroMeasureElement:
        pass
    try:
        n = c.n_simplices(d - 1)
        w = Cochain(m, DUAL, 1, rng.standard_normal(n))
        t = transfer_density(w, SIMPLICIAL)
        tot_in = float((w.densities() * w.hybrid_volumes()).sum())
        tot_out = float((t.densities() * t.hybrid_volumes()).sum())
        out.append(
            CheckResult(
                "transfer measure conservation",
                abs(tot_in - tot_out) / max(abs(tot_in), 1e-300),
                1e-12,
            )
        )
    except ZeroMeasureElement:
        pass
    return out


def curvature_checks(m: MetricComplex) -> list[CheckResult]:
    d = m.dim
    c = m.complex
    out = []
    hs = c.hinges()
    closed = not any(h.is_boundary for h in hs)
    interior = [h for h in hs if not h.is_boundary]
    if d == 2 and closed:
        total = sum(deficit(m, h) for h in hs)
        target = 2.0 * math.pi * c.euler_characteristic()
        out.append(CheckResult("gauss-bonnet", abs(total - target), 1e-9))
    if interior:
        ratio_worst = 0.0
        used = 0
        for h in interior:
            try:
                rb = riemann_hinge(m, h)
                rn = riemann_hinge(m, h, normalized=True)
            except ZeroMeasureElement:
                continue  # flat non-well-centered hinge; ratio undefined
            if rn != 0:
                ratio_worst = max(ratio_worst, abs(rb / rn - math.comb(d, 2)))
                used += 1
            if used == 10:
                break
        out.append(CheckResult("riemann normalization ratio", ratio_worst, 1e-12))
    if d >= 3 and closed:
        S = regge_action(m)
        s_h = sum(
            riemann_hinge(m, h) * m.hybrid_volume(h.simplex) for h in hs
        )
        s_lam = sum(
            ricci_dual_edge(m, i) * m.hybrid_volume(SimplexId(d - 1, i))
            for i in range(c.n_simplices(d - 1))
        )
        s_l = sum(
            ricci_simplicial_edge(m, i) * m.hybrid_volume(SimplexId(1, i))
            for i in range(c.n_simplices(1))
        )
        scale = max(abs(S), 1e-300)
        worst = max(abs(s_h - S), abs(s_lam - S), abs(s_l - S)) / scale
        out.append(CheckResult("action conservation across lattices", worst, 1e-10))
    # scale covariance: double the lengths, deficits invariant, S ~ s**(d-2)
    m2 = MetricComplex(c, 4.0 * m.edge_lengths_sq)
    worst = 0.0
    for h in interior:
        worst = max(worst, abs(deficit(m, h) - deficit(m2, h)))
    out.append(CheckResult("deficit scale invariance", worst, 1e-12))
    S1 = regge_action(m)
    S2 = regge_action(m2)
    if abs(S1) > 1e-9:
        out.append(
            CheckResult(
                "action scale covariance",
                abs(S2 - 2.0 ** (d - 2) * S1) / abs(S1),
                1e-10,
            )
        )
    return out


SUITES = {
    "volumes": volume_checks,
    "dec": dec_checks,
    "curvature": curvature_checks,
}


def run_suite(m: MetricComplex, name: str) -> list[CheckResult]:
    if name == "all":
        out = []
        for fn in SUITES.values():
            out.extend(fn(m))
        return out
    return SUITES[name](m)
