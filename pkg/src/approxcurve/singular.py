"""Singular locus under tolerance, cluster decomposition and the rationality test."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .epsgeom import EpsilonPoint, annotate, r_out
from .numeric import PrecisionContext, SolveError, coprime_pair, solve_system
from .polycore import Poly

log = logging.getLogger(__name__)

REAL_TOL = 1e-9
CONJ_MATCH = 1e-6


class SingularError(RuntimeError):
    pass


@dataclass
class SingularLocus:
    strata: List[List[EpsilonPoint]]

    @property
    def all_points(self) -> List[EpsilonPoint]:
        return [p for s in self.strata for p in s]


@dataclass
class Cluster:
    members: List[EpsilonPoint]
    representative: EpsilonPoint

    @property
    def multiplicity(self) -> int:
        return self.representative.eps_mult

    @property
    def is_real(self) -> bool:
        return is_real_point(self.representative.coords)


@dataclass
class RationalityReport:
    rational: bool
    deficiency: int
    multiplicities: List[int] = field(default_factory=list)


def is_real_point(P, tol: float = REAL_TOL) -> bool:
    return all(abs(complex(c).imag) <= tol * (1 + abs(c)) for c in P)


def _orders(k: int) -> List[Tuple[int, int]]:
    return [(i, k - i) for i in range(k + 1)]


def _derivative_pairs(k: int) -> List[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """Order-k pairs, pure ones first."""
    pure = ((k, 0), (0, k))
    rest = [pr for pr in combinations(_orders(k), 2) if pr != pure]
    return [pure] + rest


def _below_up_to(f: Poly, P, k: int, ctx: PrecisionContext) -> bool:
    vals = {"x": P[0], "y": P[1]}
    return all(abs(f.partial(v).evaluate(vals)) < ctx.threshold
               for level in range(k + 1) for v in _orders(level))


def eps_singular_locus(f: Poly, ctx: PrecisionContext) -> SingularLocus:
    """Strata S_1..S_{d-1}: near-common zeros of f and its derivatives.

    S_1 solves the critical-point pair {f_x, f_y} filtered by f. For k >= 2 a
    coprime pair of order-k partials generates candidates, which must then
    have every partial of order <= k below the threshold.
    """
    f = f.with_vars(("x", "y"))
    d = int(f.degree())
    strata: List[List[EpsilonPoint]] = []
    # the derivative pair goes first so it generates the candidates
    s1 = solve_system([f.diff("x"), f.diff("y"), f], ctx)
    strata.append([annotate(f, P, ctx) for P in s1])
    for k in range(2, d):
        pts: List = []
        for u1, u2 in _derivative_pairs(k):
            g1, g2 = f.partial(u1), f.partial(u2)
            if g1.is_zero() or g2.is_zero() or not coprime_pair(g1, g2):
                continue
            try:
                cands = solve_system([g1, g2], ctx)
            except SolveError:
                continue
            pts = [P for P in cands if _below_up_to(f, P, k, ctx)]
            break
        else:
            log.debug("S_%d: no coprime derivative pair", k)
        strata.append([annotate(f, P, ctx) for P in pts])
    return SingularLocus(strata)


def _linked(p: EpsilonPoint, q: EpsilonPoint, bound: float) -> bool:
    return p.distance(q) + abs(p.radius - q.radius) < bound


def _pick_representative(members: Sequence[EpsilonPoint]) -> EpsilonPoint:
    top = max(m.eps_mult for m in members)
    cands = [m for m in members if m.eps_mult == top]
    real = [m for m in cands if is_real_point(m.coords)]
    pool = real or cands
    return min(pool, key=lambda m: (m.residual, max(abs(c.imag) for c in m.coords)))


def _conj_point(p: EpsilonPoint) -> EpsilonPoint:
    c = (p.coords[0].conjugate(), p.coords[1].conjugate())
    return EpsilonPoint(c, p.eps_mult, p.pure_dirs, p.weight, p.radius, p.residual)


def cluster_decomposition(points: Sequence[EpsilonPoint],
                          ctx: PrecisionContext) -> List[Cluster]:
    """Connected components of the closeness graph, with representatives.

    Clusters that are complex conjugates of each other get exactly
    conjugated representatives so downstream linear systems stay real.
    """
    pts = list(points)
    n = len(pts)
    if n == 0:
        return []
    bound = r_out(ctx.eps)
    rows, cols = [], []
    for i, j in combinations(range(n), 2):
        if _linked(pts[i], pts[j], bound):
            rows.append(i)
            cols.append(j)
    graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    _, labels = connected_components(graph, directed=False)
    groups: Dict[int, List[EpsilonPoint]] = {}
    for lab, p in zip(labels, pts):
        groups.setdefault(int(lab), []).append(p)
    # deterministic order independent of the input permutation
    ordered = sorted(groups.values(), key=lambda g: min(
        (m.coords[0].real, m.coords[0].imag, m.coords[1].real, m.coords[1].imag) for m in g))
    clusters = [Cluster(g, _pick_representative(g)) for g in ordered]
    done = set()
    for i, c in enumerate(clusters):
        if i in done or c.is_real:
            continue
        target = np.array([z.conjugate() for z in c.representative.coords])
        for j, other in enumerate(clusters):
            if j == i or j in done:
                continue
            if any(np.linalg.norm(np.array(m.coords) - target) < CONJ_MATCH
                   for m in other.members):
                other.representative = _conj_point(c.representative)
                done.update((i, j))
                break
    return clusters


def genus_deficiency(multiplicities: Sequence[int], d: int) -> int:
    return (d - 1) * (d - 2) - sum(r * (r - 1) for r in multiplicities)


def is_eps_rational(clusters: Sequence[Cluster], d: int) -> RationalityReport:
    """Zero deficiency decides rationality; only degree >= 3 is decided here."""
    mults = sorted(c.multiplicity for c in clusters)
    g = genus_deficiency(mults, d)
    if g < 0:
        raise SingularError("cluster multiplicities exceed genus budget")
    return RationalityReport(g == 0 and d >= 3, g, mults)


@dataclass
class SingularAnalysis:
    """Everything the singular stage produces for one curve."""

    f: Poly
    ctx: PrecisionContext
    locus: SingularLocus
    clusters: List[Cluster]
    report: Optional[RationalityReport]
    error: Optional[str] = None

    @property
    def degree(self) -> int:
        return int(self.f.degree())


def analyze(f: Poly, eps: float) -> SingularAnalysis:
    ctx = PrecisionContext.for_poly(f, eps)
    locus = eps_singular_locus(f, ctx)
    clusters = cluster_decomposition(locus.all_points, ctx)
    d = int(f.degree())
    try:
        report = is_eps_rational(clusters, d)
        err = None
    except SingularError as e:
        report, err = None, str(e)
    return SingularAnalysis(f, ctx, locus, clusters, report, err)


def _point_json(P) -> List[float]:
    return [P[0].real, P[0].imag, P[1].real, P[1].imag]


def _eps_point_json(p: EpsilonPoint) -> dict:
    return {"coords": _point_json(p.coords), "eps_mult": p.eps_mult,
            "pure_dirs": sorted(p.pure_dirs), "weight": p.weight,
            "radius": p.radius, "residual": p.residual}


def analysis_to_json(a: SingularAnalysis) -> dict:
    """Report with strata, clusters, genus deficiency and the decision."""
    return {
        "degree": a.degree,
        "epsilon": a.ctx.eps,
        "strata": [[_eps_point_json(p) for p in s] for s in a.locus.strata],
        "clusters": [{"representative": _point_json(c.representative.coords),
                      "multiplicity": c.multiplicity,
                      "members": [_point_json(m.coords) for m in c.members]}
                     for c in a.clusters],
        "genus_deficiency": a.report.deficiency if a.report else None,
        "eps_rational": bool(a.report and a.report.rational),
        "error": a.error,
    }
