"""Empirical distance between a curve and an approximating curve.

Points are sampled on the input curve along random vertical and horizontal
integer lines. From each sample, lines in r real directions are cast and the
nearest intersection with the target curve is recorded. Complex samples are
kept by default; their distances are Hermitian, ``|s|`` for complex s.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from numpy.polynomial import polynomial as npoly

from .numeric import univar_roots
from .polycore import Poly

Point = Tuple[complex, complex]

Z95 = 1.96
REAL_TOL = 1e-8


class DistanceError(RuntimeError):
    pass


@dataclass
class DistanceReport:
    samples: List[Tuple[Point, float]]
    mu: float
    rho: float
    lo: float
    hi: float
    params: Tuple[int, int, int, int]

    @property
    def n_samples(self) -> int:
        return len(self.samples)

    def summary(self) -> dict:
        return {"mu": self.mu, "rho": self.rho, "lo": self.lo, "hi": self.hi,
                "n_samples": self.n_samples}


def _roots(coeffs: np.ndarray, real_only: bool) -> np.ndarray:
    c = np.asarray(coeffs, dtype=complex)
    nz = np.nonzero(np.abs(c) > 0)[0]
    if len(nz) == 0 or nz[-1] == 0:
        return np.zeros(0, dtype=complex)
    r = univar_roots(c[: nz[-1] + 1])
    if real_only:
        r = r[np.abs(r.imag) <= REAL_TOL * (1 + np.abs(r))].real.astype(complex)
    return r


def _on_line(f: Poly, fixed: str, value: float, eps: float,
             real_only: bool) -> List[Point]:
    """Intersections with a probe line, kept when their backward error is below eps.

    The residual is measured against sum |c_e| |P^e| rather than ||f||: far
    intersections carry rounding noise proportional to the size of the terms.
    """
    free = "y" if fixed == "x" else "x"
    g = f.substitute({fixed: value})
    if g.degree_in(free) <= 0:
        return []
    size = f.abs_coeffs()
    norm = f.inf_norm()
    pts = []
    for s in _roots(g.as_univariate(free), real_only):
        P = (complex(value), complex(s)) if fixed == "x" else (complex(s), complex(value))
        scale = max(norm, size(x=abs(P[0]), y=abs(P[1])).real)
        if abs(f(x=P[0], y=P[1])) < eps * scale:
            pts.append(P)
    return pts


def sample_curve_points(f: Poly, a: int, b: int, n: int, seed: int, eps: float = 1e-6,
                        real_only: bool = False) -> List[Point]:
    """Points of f on n lines x = alpha_i and n lines y = beta_i.

    Every intersection counts (so up to 2*n*d points) unless ``real_only``.
    """
    if not a < b:
        raise ValueError("need a < b")
    if n < 1:
        raise ValueError("need n >= 1")
    rng = np.random.default_rng(seed)
    ints = np.arange(int(math.ceil(a)), int(math.floor(b)) + 1)
    alphas = rng.choice(ints, size=min(n, len(ints)), replace=False)
    betas = rng.choice(ints, size=min(n, len(ints)), replace=False)
    pts: List[Point] = []
    for al in alphas:
        pts += _on_line(f, "x", float(al), eps, real_only)
    for be in betas:
        pts += _on_line(f, "y", float(be), eps, real_only)
    if not pts:
        raise DistanceError("no curve points on the probe lines")
    return pts


def _line_poly(coeffs: np.ndarray, P: Point, c: float, s: float) -> np.ndarray:
    """Coefficients in u of target(P + u*(c, s)); ``coeffs[i, j]`` is of x^i y^j."""
    nx, ny = coeffs.shape
    xp = [np.array([1.0 + 0j])]
    yp = [np.array([1.0 + 0j])]
    for _ in range(nx - 1):
        xp.append(npoly.polymul(xp[-1], [P[0], c]))
    for _ in range(ny - 1):
        yp.append(npoly.polymul(yp[-1], [P[1], s]))
    out = np.zeros(nx + ny - 1, dtype=complex)
    for i, j in zip(*np.nonzero(coeffs)):
        term = coeffs[i, j] * npoly.polymul(xp[i], yp[j])
        out[: len(term)] += term
    return out


def min_line_distance(P: Point, target: Poly, r: int, real_only: bool = False) -> float:
    """Nearest intersection of target with r lines through P (inf if none)."""
    if r < 1:
        raise ValueError("need r >= 1")
    if target.is_zero():
        raise ValueError("zero target")
    P = (complex(P[0]), complex(P[1]))
    coeffs = target.with_vars(("x", "y")).to_dense()
    best = math.inf
    for k in range(1, r + 1):
        th = k * math.pi / r
        c = _line_poly(coeffs, P, math.cos(th), math.sin(th))
        if not np.any(c):
            return 0.0  # the line lies on the target
        roots = _roots(c, real_only)
        if len(roots):
            best = min(best, float(np.min(np.abs(roots))))
    return best


def distance_stats(f: Poly, target: Poly, a: int, b: int, n: int, r: int, seed: int,
                   eps: float = 1e-6, real_only: bool = False) -> DistanceReport:
    """Mean and standard error of the sampled distances; infinite ones dropped."""
    pts = sample_curve_points(f, a, b, n, seed, eps, real_only)
    samples = []
    for P in pts:
        dist = min_line_distance(P, target, r, real_only)
        if math.isfinite(dist):
            samples.append((P, dist))
    if len(samples) < 2:
        raise DistanceError("fewer than two finite distances")
    D = np.array([s[1] for s in samples])
    mu = float(D.mean())
    rho = float(D.std(ddof=1) / math.sqrt(len(D)))
    return DistanceReport(samples, mu, rho, mu - Z95 * rho, mu + Z95 * rho, (a, b, n, r))


def write_csv(report: DistanceReport, stream) -> None:
    """One row per sample; imaginary parts of complex samples go last."""
    w = csv.writer(stream)
    w.writerow(["x", "y", "d", "x_im", "y_im"])
    for (x, y), dist in report.samples:
        w.writerow([repr(x.real), repr(y.real), repr(dist), repr(x.imag), repr(y.imag)])
