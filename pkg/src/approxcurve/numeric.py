"""Root finding, polynomial system solving and numerical kernels.

Everything here works "under fixed precision": a point counts as a solution
of a system when every polynomial is below ``eps * ||f||`` there.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from .polycore import Poly, PolyError, resultant_info, trim

log = logging.getLogger(__name__)

DEDUP_RADIUS = 1e-6
NULLSPACE_TOL = 1e-8
PAIR_RESIDUAL = 1e-11

Point = Tuple[complex, complex]


class SolveError(RuntimeError):
    """Raised when a polynomial system has no usable elimination."""


@dataclass(frozen=True)
class PrecisionContext:
    """Tolerance ``eps`` together with the norm of the curve it applies to."""

    eps: float
    fnorm: float

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise ValueError(f"tolerance must satisfy 0 < eps < 1, got {self.eps}")
        if not self.fnorm > 0:
            raise ValueError("curve norm must be positive")

    @property
    def threshold(self) -> float:
        return self.eps * self.fnorm

    @classmethod
    def for_poly(cls, f: Poly, eps: float) -> "PrecisionContext":
        return cls(eps, f.inf_norm())


# -- univariate roots ---------------------------------------------------------

def _horner(c: np.ndarray, z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Value and derivative of an ascending-coefficient polynomial."""
    p = np.full(z.shape, c[-1], dtype=complex)
    dp = np.zeros(z.shape, dtype=complex)
    for a in c[-2::-1]:
        dp = dp * z + p
        p = p * z + a
    return p, dp


def univar_roots(coeffs) -> np.ndarray:
    """All roots (with repetition) of an ascending-coefficient polynomial.

    Companion-matrix eigenvalues, then a few Newton steps on each root.
    """
    c = trim(np.asarray(coeffs, dtype=complex))
    if not np.any(c):
        raise ValueError("zero polynomial has no finite root set")
    z = np.roots(c[::-1]).astype(complex)
    if z.size == 0:
        return z
    with np.errstate(all="ignore"):
        for _ in range(3):
            p, dp = _horner(c, z)
            step = np.where(dp != 0, p / np.where(dp != 0, dp, 1.0), 0.0)
            ok = np.isfinite(step) & (np.abs(step) < 1e-3 * (1.0 + np.abs(z)))
            z = np.where(ok, z - step, z)
    return z


def roots_residual_ok(coeffs, roots, rtol: float = 1e-8) -> bool:
    """Check ``|p(r)| <= rtol * ||p|| * (1 + |r|)^deg`` for every root."""
    c = trim(np.asarray(coeffs, dtype=complex))
    deg = len(c) - 1
    p, _ = _horner(c, np.asarray(roots, dtype=complex))
    bound = rtol * np.max(np.abs(c)) * (1 + np.abs(roots)) ** deg
    return bool(np.all(np.abs(p) <= bound))


# -- bivariate systems -----------------------------------------------------

# Hadamard ratio of the Sylvester determinant on the unit torus; a shared
# factor leaves only rounding noise
ZERO_RESULTANT = 1e-14


def coprime_pair(g1: Poly, g2: Poly) -> bool:
    """Numerical coprimality: the eliminant is not identically zero.

    The test is on the Hadamard-normalized Sylvester determinant, which is
    scale free (a shared factor drives it to rounding level).
    """
    for var in ("y", "x"):
        try:
            info = resultant_info(g1, g2, var)
        except PolyError:
            continue
        return info.hadamard > ZERO_RESULTANT and not info.poly.is_zero()
    return False


def _matrix_poly(p: Poly, q: Poly, elim: str, keep: str) -> List[np.ndarray]:
    """Coefficients (ascending in ``keep``) of the Sylvester matrix in ``elim``."""
    pc = [c.as_univariate(keep) for c in p.coeffs_in(elim)][::-1]
    qc = [c.as_univariate(keep) for c in q.coeffs_in(elim)][::-1]
    m, n = len(pc) - 1, len(qc) - 1
    D = max(len(c) for c in pc + qc) - 1
    N = m + n
    mats = [np.zeros((N, N), dtype=complex) for _ in range(D + 1)]
    for off, count, coeffs in ((0, n, pc), (n, m, qc)):
        for i in range(count):
            for j, c in enumerate(coeffs):
                for k, v in enumerate(c):
                    mats[k][off + i, i + j] = v
    return mats


def eliminant_roots(p: Poly, q: Poly, elim: str = "y",
                    keep: str = "x") -> np.ndarray:
    """Finite roots in ``keep`` of Res_elim(p, q).

    Solved as the eigenvalues of a companion linearization of the Sylvester
    matrix polynomial, which avoids forming the (badly scaled) resultant
    coefficients. Infinite eigenvalues from a singular leading block are
    dropped.
    """
    mats = _matrix_poly(p, q, elim, keep)
    while len(mats) > 1 and not np.any(mats[-1]):
        mats.pop()
    D = len(mats) - 1
    N = mats[0].shape[0]
    if D == 0 or N == 0:
        return np.zeros(0, dtype=complex)
    norms = [np.linalg.norm(M) for M in mats]
    # balance the eigenvalue scale so the blocks have comparable norms
    scale = (norms[0] / norms[-1]) ** (1.0 / D) if norms[0] > 0 else 1.0
    mats = [M * scale ** k for k, M in enumerate(mats)]
    top = max(np.linalg.norm(M) for M in mats)
    mats = [M / top for M in mats]
    A = np.zeros((N * D, N * D), dtype=complex)
    B = np.eye(N * D, dtype=complex)
    for k in range(D):
        A[:N, k * N:(k + 1) * N] = -mats[D - 1 - k]
    A[N:, :-N] = np.eye(N * (D - 1))
    B[:N, :N] = mats[D]
    alpha, beta = scipy.linalg.eig(A, B, right=False, homogeneous_eigvals=True)
    finite = np.abs(beta) > 1e-10 * np.abs(alpha)
    return alpha[finite] / beta[finite] * scale


def _newton_polish(g1: Poly, g2: Poly, x: np.ndarray, y: np.ndarray,
                   iters: int = 60) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorized Newton iteration on the square system {g1 = 0, g2 = 0}."""
    g1x, g1y = g1.diff("x"), g1.diff("y")
    g2x, g2y = g2.diff("x"), g2.diff("y")
    x = x.astype(complex)
    y = y.astype(complex)
    for _ in range(iters):
        pts = {"x": x, "y": y}
        a, b = g1.evaluate_many(pts), g2.evaluate_many(pts)
        j11, j12 = g1x.evaluate_many(pts), g1y.evaluate_many(pts)
        j21, j22 = g2x.evaluate_many(pts), g2y.evaluate_many(pts)
        det = j11 * j22 - j12 * j21
        ok = np.abs(det) > 1e-300
        safe = np.where(ok, det, 1.0)
        dx = np.where(ok, (a * j22 - b * j12) / safe, 0.0)
        dy = np.where(ok, (j11 * b - j21 * a) / safe, 0.0)
        # damp wild steps so a bad start cannot jump across the plane
        step = np.sqrt(np.abs(dx) ** 2 + np.abs(dy) ** 2)
        lim = 1.0 + np.sqrt(np.abs(x) ** 2 + np.abs(y) ** 2)
        damp = np.where(step > lim, lim / np.maximum(step, 1e-300), 1.0)
        x = x - damp * dx
        y = y - damp * dy
        if np.all(step <= 1e-15 * lim):
            break
    return x, y


def dedup_points(points: Sequence[Point], radius: float = DEDUP_RADIUS) -> List[Point]:
    """Merge points closer than ``radius``; each group becomes its mean."""
    groups: List[List[np.ndarray]] = []
    for p in points:
        v = np.array(p, dtype=complex)
        for g in groups:
            if np.linalg.norm(g[0] - v) < radius:
                g.append(v)
                break
        else:
            groups.append([v])
    out = []
    for g in groups:
        m = np.mean(g, axis=0)
        out.append((complex(m[0]), complex(m[1])))
    return out


def _canonical_key(p: Poly):
    return (max(p.degree(), -1), sorted((e, c.real, c.imag) for e, c in p.terms.items()))


def _bezout(p: Poly, q: Poly) -> float:
    return max(p.degree(), 0) * max(q.degree(), 0)


def solve_system(polys: Sequence[Poly], ctx: PrecisionContext) -> List[Point]:
    """Common near-zeros of ``polys`` under the precision of ``ctx``.

    A coprime pair generates candidates: x from the eliminant, y from the
    univariate restrictions at that x. Each candidate is Newton-polished on
    the pair and kept when ``|g(P)| < threshold`` for all g. The pair is the
    coprime one with the smallest Bezout bound, ties broken by a canonical
    key, so the result does not depend on the order of ``polys``.
    """
    polys = sorted((p.with_vars(("x", "y")) for p in polys), key=_canonical_key)
    if len(polys) < 2:
        raise ValueError("need at least two polynomials")
    pairs = sorted(combinations(range(len(polys)), 2),
                   key=lambda ij: (_bezout(polys[ij[0]], polys[ij[1]]), ij))
    pair = next(((polys[i], polys[j]) for i, j in pairs
                 if not polys[i].is_zero() and not polys[j].is_zero()
                 and coprime_pair(polys[i], polys[j])), None)
    if pair is None:
        raise SolveError("non-finite solution set")
    g1, g2 = pair
    if g1.degree_in("y") <= 0 and g2.degree_in("y") <= 0:
        # coprime polynomials in x alone have no common root
        return []
    xs, ys = [], []
    for x0 in eliminant_roots(g1, g2, "y", "x"):
        for g in (g1, g2):
            c = g.substitute({"x": x0}).as_univariate("y") if g.degree_in("y") > 0 else []
            if len(c) > 1 and np.any(c[1:]):
                for y0 in univar_roots(c):
                    xs.append(x0)
                    ys.append(y0)
    if not xs:
        return []
    X, Y = np.array(xs), np.array(ys)
    X, Y = _newton_polish(g1, g2, X.ravel(), Y.ravel())
    finite = np.isfinite(X) & np.isfinite(Y)
    X, Y = X[finite], Y[finite]
    pts = {"x": X, "y": Y}
    keep = np.ones(X.shape, dtype=bool)
    for g in polys:
        keep &= np.abs(g.evaluate_many(pts)) < ctx.threshold
    # the polished pair must actually be solved: small backward error
    apts = {"x": np.abs(X), "y": np.abs(Y)}
    for g in (g1, g2):
        scale = g.abs_coeffs().evaluate_many(apts).real
        keep &= np.abs(g.evaluate_many(pts)) <= PAIR_RESIDUAL * scale
    cands = [(complex(a), complex(b)) for a, b in zip(X[keep], Y[keep])]
    return dedup_points(cands)


# -- linear algebra -------------------------------------------------------------

def nullspace(M, tol: float = NULLSPACE_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the numerical kernel of ``M``.

    Right singular vectors with singular value ``<= tol * sigma_max``; missing
    singular values of a wide matrix count as zero.
    """
    M = np.atleast_2d(np.asarray(M))
    if M.size == 0:
        raise ValueError("empty matrix")
    m, n = M.shape
    _, s, vh = np.linalg.svd(M, full_matrices=True)
    smax = s[0] if s.size else 0.0
    if smax == 0:
        return np.eye(n, dtype=vh.dtype)
    sv = np.zeros(n)
    sv[:s.size] = s
    mask = sv <= tol * smax
    return vh[mask].conj().T
