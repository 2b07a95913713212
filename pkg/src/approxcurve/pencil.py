"""Adjoint curves of degree d-2 through the cluster divisor, and the pencil.

The linear system is solved over the reals: complex base points enter through
the real and imaginary parts of their conditions, which is equivalent to
imposing them at the point and at its conjugate.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .epsgeom import annotate, is_ramification, r_out
from .numeric import PrecisionContext, SolveError, nullspace, solve_system, univar_roots
from .polycore import Poly
from .singular import Cluster, is_real_point

log = logging.getLogger(__name__)

Point = Tuple[complex, complex]
XYZ = ("x", "y", "z")

MAX_RESAMPLES = 8
PROBE_LINES = 40
# a form vanishes at an infinite point when below this, relative to its scale
INFINITY_TOL = 1e-8


class PencilError(RuntimeError):
    pass


@dataclass(frozen=True)
class Pencil:
    """H1 + t*H2 (homogeneous of degree d-2) with the perturbations applied."""

    h1: Poly
    h2: Poly
    degree: int
    rho: Optional[Tuple[float, float]] = None
    delta: Optional[Tuple[float, ...]] = None

    @property
    def order(self) -> int:
        return self.degree - 2

    def member(self, t: complex) -> Poly:
        return self.h1 + self.h2 * t

    def symbolic(self) -> Poly:
        """H1 + t*H2 as a polynomial in x, y, z, t."""
        return self.h1 + self.h2 * Poly.var("t", XYZ + ("t",))


def monomials(m: int) -> List[Tuple[int, int]]:
    """Exponents (i, j) of x^i y^j z^(m-i-j), a fixed basis of degree-m forms."""
    return [(i, k - i) for k in range(m + 1) for i in range(k, -1, -1)]


def form_from_coeffs(c: Sequence[float], m: int) -> Poly:
    return Poly({(i, j, m - i - j): v for (i, j), v in zip(monomials(m), c)}, XYZ)


def _falling(n: int, k: int) -> int:
    return math.perm(n, k) if k <= n else 0


def _condition_rows(P: Point, order: int, m: int) -> np.ndarray:
    """Rows imposing every partial of order < ``order`` of H(x, y, 1) to vanish at P."""
    rows = []
    x, y = P
    for k in range(order):
        for a in range(k + 1):
            b = k - a
            row = [_falling(i, a) * _falling(j, b) * x ** max(i - a, 0) * y ** max(j - b, 0)
                   for i, j in monomials(m)]
            rows.append(row)
    return np.array(rows, dtype=complex).reshape(-1, len(monomials(m)))


def _realify(rows: np.ndarray, P: Point) -> np.ndarray:
    if is_real_point(P):
        return rows.real
    return np.vstack([rows.real, rows.imag])


def _normalize_rows(M: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(M, axis=1, keepdims=True)
    return M / np.where(n == 0, 1.0, n)


def divisor_points(clusters: Sequence[Cluster]) -> List[Tuple[Point, int]]:
    """Representatives with base-point order r-1; one of each conjugate pair."""
    out: List[Tuple[Point, int]] = []
    for c in clusters:
        P = c.representative.coords
        if c.multiplicity < 2:
            continue
        conj = (P[0].conjugate(), P[1].conjugate())
        if not is_real_point(P) and any(np.allclose(Q, conj, atol=1e-9) for Q, _ in out):
            continue
        out.append((P, c.multiplicity - 1))
    return out


def condition_matrix(d: int, clusters: Sequence[Cluster],
                     simple: Sequence[Point] = ()) -> np.ndarray:
    m = d - 2
    blocks = [np.zeros((0, len(monomials(m))))]
    for P, order in divisor_points(clusters):
        blocks.append(_realify(_condition_rows(P, order, m), P))
    for P in simple:
        blocks.append(_realify(_condition_rows(P, 1, m), P))
    return _normalize_rows(np.vstack(blocks))


def adjoint_system(d: int, clusters: Sequence[Cluster],
                   tol: float = 1e-8) -> np.ndarray:
    """Kernel basis (columns) of the degree-(d-2) forms through the divisor."""
    M = condition_matrix(d, clusters)
    n = len(monomials(d - 2))
    if M.shape[0] == 0:
        return np.eye(n)
    K = nullspace(M, tol)
    if K.shape[1] == 0:
        raise PencilError("system over-constrained")
    return K


# -- simple points ----------------------------------------------------------

def _separated(P: Point, others: Iterable[Point], clusters: Sequence[Cluster],
               bound: float) -> bool:
    """A simple point (radius 0) must not join any cluster or earlier point."""
    v = np.array(P)
    for c in clusters:
        for mbr in c.members:
            if np.linalg.norm(v - np.array(mbr.coords)) + mbr.radius < bound:
                return False
    return all(np.linalg.norm(v - np.array(Q)) >= bound for Q in others)


def ramification_candidates(f: Poly, ctx: PrecisionContext) -> List[Point]:
    """Real eps-ramification points, from {f, f_x} and {f, f_y}."""
    out: List[Point] = []
    for g in (f.diff("x"), f.diff("y")):
        try:
            sols = solve_system([f, g], ctx)
        except SolveError:
            continue
        for P in sols:
            if not is_real_point(P):
                continue
            P = (complex(P[0].real), complex(P[1].real))
            if is_ramification(f, P, ctx):
                out.append(P)
    return out


def _probe_candidates(f: Poly, ctx: PrecisionContext) -> Iterable[Point]:
    """Real simple eps-points on vertical lines x = 0, 1, -1, 2, ..."""
    for k in range(PROBE_LINES):
        c = (k + 1) // 2 * (1 if k % 2 else -1)
        coeffs = f.substitute({"x": c}).as_univariate("y") if f.degree_in("y") > 0 else []
        if len(coeffs) < 2:
            continue
        for y in sorted(univar_roots(coeffs), key=lambda z: (abs(z.imag), z.real)):
            if abs(y.imag) > 1e-9 * (1 + abs(y)):
                continue
            P = (complex(c), complex(y.real))
            if abs(f(x=P[0], y=P[1])) < ctx.threshold and \
                    annotate(f, P, ctx).eps_mult == 1:
                yield P


def _spread_order(cands: List[Point], anchors: List[Point]) -> List[Point]:
    """Greedy order: each next point is the one farthest from what is placed."""
    placed = [np.array(a) for a in anchors]
    rest = list(cands)
    out = []
    while rest:
        if placed:
            score = [min(np.linalg.norm(np.array(P) - a) for a in placed) for P in rest]
            k = int(np.argmax(score))
        else:
            k = 0
        out.append(rest.pop(k))
        placed.append(np.array(out[-1]))
    return out


def simple_points(f: Poly, ctx: PrecisionContext, count: int,
                  forbidden: Sequence[Cluster] = (), extra: int = 0) -> List[Point]:
    """``count`` (+ ``extra``) real simple eps-points, ramification points first.

    Each accepted point is outside every forbidden cluster and outside the
    cluster of every earlier accepted point.
    """
    want = count + extra
    if want <= 0:
        return []
    bound = r_out(ctx.eps)
    anchors = [c.representative.coords for c in forbidden]
    chosen: List[Point] = []
    ram = ramification_candidates(f, ctx)
    ram.sort(key=lambda P: (P[0].real, P[1].real))
    for P in _spread_order(ram, anchors):
        if len(chosen) == want:
            return chosen
        if _separated(P, chosen, forbidden, bound):
            chosen.append(P)
    for P in _probe_candidates(f, ctx):
        if len(chosen) == want:
            break
        if _separated(P, chosen, forbidden, bound):
            chosen.append(P)
    if len(chosen) < want:
        raise PencilError(f"found {len(chosen)} admissible simple points, need {want}")
    return chosen


# -- pencil -----------------------------------------------------------------

def restrict_to_pencil(d: int, clusters: Sequence[Cluster], simple: Sequence[Point],
                       spare: Sequence[Point] = (), tol: float = 1e-8) -> Pencil:
    """Impose the simple points; take extra points from ``spare`` while dim > 1."""
    pts = list(simple)
    spare = list(spare)
    while True:
        M = condition_matrix(d, clusters, pts)
        K = nullspace(M, tol)
        if K.shape[1] == 2:
            break
        if K.shape[1] < 2:
            # a wide matrix always has a kernel of dimension >= 2; fewer means
            # the rows were degenerate beyond repair
            raise PencilError("inconsistent divisor")
        if not spare:
            raise PencilError(f"pencil dimension {K.shape[1] - 1} > 1 and no spare points")
        pts.append(spare.pop(0))
    K = np.real_if_close(K, tol=1e6).real
    m = d - 2
    return Pencil(form_from_coeffs(K[:, 0], m), form_from_coeffs(K[:, 1], m), d)


def infinite_points(F: Poly) -> np.ndarray:
    """Slopes y_k with (1 : y_k : 0) on F; F(0,1,0) != 0 is assumed."""
    top = F.substitute({"x": 1.0, "z": 0.0}).as_univariate("y")
    return univar_roots(top)


def _vanishes_at_infinity(H: Poly, slopes: np.ndarray) -> bool:
    vals = H.substitute({"x": 1.0, "z": 0.0})
    scale = H.inf_norm() * (1 + np.abs(slopes)) ** max(int(H.degree()), 0)
    got = np.abs(vals.evaluate_many({"y": slopes}))
    return bool(np.any(got <= INFINITY_TOL * scale))


def fix_infinity(F: Poly, pencil: Pencil, eps: float,
                 rng: np.random.Generator) -> Pencil:
    """Make H2 share no infinite point with F, perturbing by rho if needed."""
    slopes = infinite_points(F)
    b1 = _vanishes_at_infinity(pencil.h1, slopes)
    b2 = _vanishes_at_infinity(pencil.h2, slopes)
    if not b2:
        return pencil
    if not b1:
        return replace(pencil, h1=pencil.h2, h2=pencil.h1)
    m = pencil.order
    x, y = Poly.var("x", XYZ), Poly.var("y", XYZ)
    for _ in range(MAX_RESAMPLES):
        rho = tuple(float(v) for v in rng.uniform(-eps / 2, eps / 2, 2))
        h2 = pencil.h2 + x ** m * rho[0] + y ** m * rho[1]
        if not _vanishes_at_infinity(h2, slopes):
            return replace(pencil, h2=h2, rho=rho)
    raise PencilError("could not separate H2 from the points at infinity")


def delta_form(delta: Sequence[float], m: int) -> Poly:
    """The perturbation form added to H1 (degree m = d - 2)."""
    x, y, z = (Poly.var(v, XYZ) for v in XYZ)
    if m == 1:
        d1, d2, d3 = delta[:3]
        return y * d1 + z * d2 + x * d3
    terms = (y ** m, y ** (m - 1) * z, x ** m, x ** (m - 1) * z,
             x ** (m - 1) * y, x * y ** (m - 1))
    out = Poly({}, XYZ)
    for c, t in zip(delta, terms):
        out = out + t * c
    return out


def delta_perturb(pencil: Pencil, delta: Optional[Sequence[float]], eps: float) -> Pencil:
    if delta is None or not np.any(delta):
        return replace(pencil, delta=None)
    if any(abs(v) >= eps for v in delta):
        raise PencilError("perturbation coefficients must be below eps")
    g = delta_form(delta, pencil.order)
    return replace(pencil, h1=pencil.h1 + g, delta=tuple(float(v) for v in delta))


def random_delta(m: int, eps: float, rng: np.random.Generator) -> Tuple[float, ...]:
    n = 3 if m == 1 else 6
    return tuple(float(v) for v in rng.uniform(-eps / 2, eps / 2, n))
