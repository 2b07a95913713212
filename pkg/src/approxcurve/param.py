"""Rational parametrization from the pencil, plus checks on the output curve.

Dividing S1(x, t) = Res_y(H(x, y, 1), f) by the base polynomial A1(x) leaves a
quotient that is linear in x. Its two coefficients depend only on the top two
x-coefficients of S1, so those are all that is computed. They are the constant
and linear coefficients in z of Res_y(H(1, y, z), F(1, y, z)), sampled on a
small z-circle where the interpolation is well conditioned.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from .numeric import PrecisionContext, univar_roots
from .pencil import (MAX_RESAMPLES, XYZ, Pencil, PencilError, delta_perturb,
                     fix_infinity, infinite_points, random_delta, restrict_to_pencil,
                     simple_points)
from .polycore import Poly, PolyError, homogenize, proper_degree, resultant_info, trim
from .singular import Cluster, SingularAnalysis, analyze

log = logging.getLogger(__name__)

CONTENT_TOL = 1e-6
MATCH_TOL = 1e-6


class ParamError(RuntimeError):
    pass


@dataclass
class RationalParam:
    """x = p1(t)/q(t), y = p2(t)/q(t); coefficient arrays ascending in t."""

    p1: np.ndarray
    p2: np.ndarray
    q: np.ndarray
    degree: int
    pencil: Pencil
    lam: complex
    lam_spread: float
    simple_points: List[Tuple[complex, complex]]
    attempts: int = 1
    diagnostics: Dict[str, float] = field(default_factory=dict)

    @property
    def delta(self):
        return self.pencil.delta

    @property
    def rho(self):
        return self.pencil.rho

    def __call__(self, t):
        t = np.asarray(t, dtype=complex)
        q = np.polyval(self.q[::-1], t)
        return np.polyval(self.p1[::-1], t) / q, np.polyval(self.p2[::-1], t) / q

    def to_json(self) -> dict:
        def arr(c):
            return [float(v.real) for v in c]
        return {"p1": arr(self.p1), "p2": arr(self.p2), "q": arr(self.q),
                "delta": list(self.delta) if self.delta else None,
                "rho": list(self.rho) if self.rho else None,
                "degree": self.degree}


@dataclass
class ParamResult:
    analysis: SingularAnalysis
    param: Optional[RationalParam]

    @property
    def rational(self) -> bool:
        return bool(self.analysis.report and self.analysis.report.rational)


# -- assumptions --------------------------------------------------------------

def check_assumptions(f: Poly) -> None:
    """Reject inputs through (1:0:0) or (0:1:0), or singular at infinity."""
    d = int(f.degree())
    norm = f.inf_norm()
    if abs(f.coeff((d, 0))) <= 1e-12 * norm:
        raise ParamError("curve passes through (1:0:0); apply an affine orthogonal "
                         "change of coordinates first")
    if abs(f.coeff((0, d))) <= 1e-12 * norm:
        raise ParamError("curve passes through (0:1:0); apply an affine orthogonal "
                         "change of coordinates first")
    F = homogenize(f, d)
    slopes = infinite_points(F)
    grads = [F.diff(v) for v in XYZ]
    for s in slopes:
        pt = {"x": 1.0, "y": s, "z": 0.0}
        g = max(abs(G.evaluate(pt)) for G in grads)
        if g <= 1e-10 * norm * (1 + abs(s)) ** d:
            raise ParamError("curve has a singular point at infinity; apply an affine "
                             "orthogonal change of coordinates first")


# -- base polynomials and resultant stage --------------------------------------

def base_polys(clusters: Sequence[Cluster], simple: Sequence[Tuple[complex, complex]],
               d: int) -> Tuple[np.ndarray, np.ndarray]:
    """Roots (with repetition) of A1(x) and A2(y)."""
    xs: List[complex] = []
    ys: List[complex] = []
    for c in clusters:
        r = c.multiplicity
        P = c.representative.coords
        xs += [P[0]] * (r * (r - 1))
        ys += [P[1]] * (r * (r - 1))
    for P in simple:
        xs.append(P[0])
        ys.append(P[1])
    want = d * (d - 2) - 1
    if len(xs) != want:
        raise ParamError(f"base polynomial degree {len(xs)}, expected {want}")
    return np.array(xs, dtype=complex), np.array(ys, dtype=complex)


@dataclass
class Tops:
    """Top two coefficients of S_i in its variable, as polynomials in t."""

    lead: np.ndarray
    sub: np.ndarray


def _pad(c: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros(n, dtype=complex)
    out[:min(n, len(c))] = c[:n]
    return out


def resultant_tops(F: Poly, pencil: Pencil, direction: str, zradius: float) -> Tops:
    """Leading and next x-coefficient (or y-coefficient) of the resultant in t.

    ``direction`` 'x' eliminates y and returns the coefficients of S1(x, t),
    'y' eliminates x for S2(y, t).
    """
    d = pencil.degree
    H = pencil.symbolic()
    if direction == "x":
        fixed, elim = "x", "y"
    else:
        fixed, elim = "y", "x"
    G = H.substitute({fixed: 1.0})
    Fz = F.with_vars(XYZ).substitute({fixed: 1.0})
    info = resultant_info(G, Fz, elim, {"z": zradius, "t": 1.0})
    coeffs = info.poly.coeffs_in("z") if "z" in info.poly.vars else [info.poly]
    lead = coeffs[0].as_univariate("t") if coeffs else np.zeros(1)
    sub = coeffs[1].as_univariate("t") if len(coeffs) > 1 else np.zeros(1)
    return Tops(_pad(lead, d + 1), _pad(sub, d + 1))


def quotient(tops: Tops, base_roots: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """(q, p) with B = q(t)*x - p(t), the quotient of S by A."""
    q = tops.lead
    p = -(tops.sub + tops.lead * np.sum(base_roots))
    return q, p


def has_content(q: np.ndarray, p: np.ndarray, tol: float = CONTENT_TOL) -> bool:
    """True when q and p share a root (the quotient's content depends on t)."""
    qc, pc = trim(q, 1e-12), trim(p, 1e-12)
    if len(qc) < 2 or len(pc) < 2:
        return False
    rq, rp = univar_roots(qc), univar_roots(pc)
    return bool(np.min(np.abs(rq[:, None] - rp[None, :])) < tol)


def _slope_roots(pencil: Pencil, slopes: np.ndarray) -> np.ndarray:
    """Parameters where a pencil member passes through (1 : s : 0)."""
    pts = {"x": np.ones_like(slopes), "y": slopes, "z": np.zeros_like(slopes)}
    return -pencil.h1.evaluate_many(pts) / pencil.h2.evaluate_many(pts)


def recenter(pencil: Pencil, slopes: np.ndarray) -> Tuple[Pencil, complex, float]:
    """Affine change t -> c + T*t spreading the expected roots of q near |t| = 1/2.

    Median centre and scale: a tight group of roots is opened up to unit size
    while an outlier simply lands far out, which keeps every root well
    conditioned in the monomial basis.
    """
    roots = _slope_roots(pencil, slopes)
    c = float(np.median(roots.real))
    T = 2.0 * float(np.median(np.abs(roots - c)))
    T = max(T, 1e-6 * (1 + abs(c)))
    return replace(pencil, h1=pencil.h1 + pencil.h2 * c, h2=pencil.h2 * T), c, T


def _z_radius(points: np.ndarray) -> float:
    return 1.0 / (4.0 * max(1.0, float(np.max(np.abs(points))) if len(points) else 1.0))


def _fold(q1, p1, q2, p2):
    lam = np.vdot(q2, q1) / np.vdot(q2, q2)
    spread = float(np.linalg.norm(q1 - lam * q2) / np.linalg.norm(q1))
    scale = np.linalg.norm(q2)
    return p1 / lam / scale, p2 / scale, q2 / scale, complex(lam), spread


def _realify(c: np.ndarray) -> Tuple[np.ndarray, float]:
    n = np.linalg.norm(c)
    resid = float(np.linalg.norm(c.imag) / n) if n else 0.0
    return c.real.astype(float), resid


def param_from_pencil(f: Poly, pencil: Pencil, clusters: Sequence[Cluster],
                      simple: Sequence[Tuple[complex, complex]]
                      ) -> Tuple[Optional[RationalParam], str]:
    """One pass of the resultant stage; returns (param, '') or (None, reason)."""
    d = pencil.degree
    F = homogenize(f.with_vars(("x", "y")), d).with_vars(XYZ)
    slopes = infinite_points(F)
    centred, c, T = recenter(pencil, slopes)
    ax, ay = base_polys(clusters, simple, d)
    q1, p1 = quotient(resultant_tops(F, centred, "x", _z_radius(ax)), ax)
    q2, p2 = quotient(resultant_tops(F, centred, "y", _z_radius(ay)), ay)
    if abs(q1[-1]) <= 1e-10 * np.linalg.norm(q1) or abs(q2[-1]) <= 1e-10 * np.linalg.norm(q2):
        return None, "unexpected degree drop; infinity hypothesis violated"
    if has_content(q1, p1) or has_content(q2, p2):
        return None, "content depends on t"
    P1, P2, Q, lam, spread = _fold(q1, p1, q2, p2)
    P1, i1 = _realify(P1)
    P2, i2 = _realify(P2)
    Q, i3 = _realify(Q)
    diag = {"imag_residue": max(i1, i2, i3), "t_shift": float(np.real(c)), "t_scale": T}
    return RationalParam(P1, P2, Q, d, centred, lam, spread, list(simple), 1, diag), ""


def parametrize(f: Poly, eps: float, seed: int = 0,
                analysis: Optional[SingularAnalysis] = None,
                simple: Optional[Sequence[Tuple[complex, complex]]] = None) -> ParamResult:
    """Full pipeline: singular locus, rationality, pencil, resultant stage.

    ``simple`` overrides the automatic choice of the d-3 simple points.
    """
    f = f.with_vars(("x", "y"))
    if int(f.degree()) < 3:
        raise ParamError("degree must be at least 3")
    if proper_degree(f, eps) != int(f.degree()):
        raise ParamError("total degree is not proper at this tolerance")
    check_assumptions(f)
    if analysis is None:
        analysis = analyze(f, eps)
    if analysis.report is None:
        raise ParamError(analysis.error or "rationality test failed")
    if not analysis.report.rational:
        return ParamResult(analysis, None)
    d = int(f.degree())
    ctx: PrecisionContext = analysis.ctx
    rng = np.random.default_rng(seed)
    clusters = analysis.clusters
    if simple is None:
        pts = simple_points(f, ctx, d - 3, clusters)
    else:
        pts = [(complex(P[0]), complex(P[1])) for P in simple]
        if len(pts) != d - 3:
            raise ParamError(f"need {d - 3} simple points, got {len(pts)}")
    try:
        spare = simple_points(f, ctx, d - 3, clusters, extra=3)[d - 3:]
    except PencilError:
        spare = []
    base = restrict_to_pencil(d, clusters, pts, spare)
    F = homogenize(f, d).with_vars(XYZ)
    base = fix_infinity(F, base, eps, rng)
    delta = None
    reason = ""
    for attempt in range(MAX_RESAMPLES + 1):
        pencil = delta_perturb(base, delta, eps)
        param, reason = param_from_pencil(f, pencil, clusters, pts)
        if param is not None:
            param.attempts = attempt + 1
            return ParamResult(analysis, param)
        log.info("attempt %d: %s; resampling delta", attempt + 1, reason)
        delta = random_delta(d - 2, eps, rng)
    raise ParamError(f"content persists after {MAX_RESAMPLES} perturbations ({reason})")


# -- output checks -------------------------------------------------------------

def implicitize(param: RationalParam) -> Poly:
    """Res_t(q x - p1, q y - p2), truncated to degree <= d, unit max-norm."""
    x, y = Poly.var("x", ("x", "y", "t")), Poly.var("y", ("x", "y", "t"))

    def in_t(c):
        return Poly({(0, 0, k): v for k, v in enumerate(c)}, ("x", "y", "t"))

    A = in_t(param.q) * x - in_t(param.p1)
    B = in_t(param.q) * y - in_t(param.p2)
    try:
        r = resultant_info(A, B, "t").poly.with_vars(("x", "y"))
    except PolyError as e:
        raise ParamError(f"degenerate parametrization ({e})") from e
    r = Poly({e: c.real for e, c in r.terms.items() if sum(e) <= param.degree}, ("x", "y"))
    if r.is_zero():
        raise ParamError("degenerate parametrization")
    return r.normalized().clean(1e-12)


@dataclass
class InfinityReport:
    ok: bool
    max_point_error: float
    max_lemma_error: float
    implicit_degree: int
    degree: int


def _match(a: np.ndarray, b: np.ndarray) -> float:
    if len(a) != len(b):
        return float("inf")
    cost = np.abs(a[:, None] - b[None, :]) / (1 + np.abs(a[:, None]))
    i, j = linear_sum_assignment(cost)
    return float(cost[i, j].max()) if len(i) else 0.0


def verify_infinity(param: RationalParam, f: Poly, tol: float = MATCH_TOL) -> InfinityReport:
    """Points at infinity of input and output agree; degree does not grow."""
    d = param.degree
    F = homogenize(f.with_vars(("x", "y")), d).with_vars(XYZ)
    slopes = infinite_points(F)
    troots = univar_roots(param.q)
    a = np.polyval(param.p1[::-1], troots)
    b = np.polyval(param.p2[::-1], troots)
    out_slopes = b / a
    err_pts = _match(slopes, out_slopes)
    err_lemma = _match(_slope_roots(param.pencil, slopes), troots)
    deg = int(implicitize(param).degree())
    ok = err_pts <= tol and deg <= d
    return InfinityReport(ok, err_pts, err_lemma, deg, d)
