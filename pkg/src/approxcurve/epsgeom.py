"""Predicates and attributes of points that lie on a curve up to tolerance.

A point P is an eps-point of f when ``|f(P)| < eps * ||f||``. Its
eps-multiplicity is the first derivative order at which some partial derivative
reaches that threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Optional, Tuple

from .numeric import PrecisionContext
from .polycore import Poly

Point = Tuple[complex, complex]

# a pure derivative must clear the threshold by this relative margin; at a
# near-tie the comparison is decided by rounding noise in the coordinates
PURITY_MARGIN = 1e-6


class EpsGeomError(ValueError):
    pass


@dataclass(frozen=True)
class EpsilonPoint:
    coords: Point
    eps_mult: int
    pure_dirs: FrozenSet[int]
    weight: Optional[float]
    radius: float
    residual: float

    @property
    def is_pure(self) -> bool:
        return bool(self.pure_dirs)

    def distance(self, other: "EpsilonPoint") -> float:
        """Hermitian distance in C^2."""
        return math.sqrt(abs(self.coords[0] - other.coords[0]) ** 2
                         + abs(self.coords[1] - other.coords[1]) ** 2)


@lru_cache(maxsize=4096)
def _partial(f: Poly, i: int, j: int) -> Poly:
    return f.partial((i, j))


def derivative_at(f: Poly, v: Tuple[int, int], P: Point) -> complex:
    """Value of the partial derivative of order ``v`` = (i, j) at P."""
    return _partial(f, v[0], v[1]).evaluate({"x": P[0], "y": P[1]})


def is_eps_point(f: Poly, P: Point, ctx: PrecisionContext) -> bool:
    return abs(derivative_at(f, (0, 0), P)) < ctx.threshold


def eps_multiplicity(f: Poly, P: Point, ctx: PrecisionContext) -> int:
    if not is_eps_point(f, P, ctx):
        raise EpsGeomError(f"{P} is not an eps-point")
    d = int(f.degree())
    for r in range(1, d + 1):
        # a whole level is swept before concluding
        if any(abs(derivative_at(f, (i, r - i), P)) >= ctx.threshold
               for i in range(r + 1)):
            return r
    return d


def purity(f: Poly, P: Point, ctx: PrecisionContext,
           mult: Optional[int] = None) -> FrozenSet[int]:
    """Directions k (1 = x, 2 = y) where the pure order-r partial is not small."""
    r = eps_multiplicity(f, P, ctx) if mult is None else mult
    if r <= 1:
        return frozenset()
    bar = ctx.threshold * (1 + PURITY_MARGIN)
    dirs = set()
    if abs(derivative_at(f, (r, 0), P)) >= bar:
        dirs.add(1)
    if abs(derivative_at(f, (0, r), P)) >= bar:
        dirs.add(2)
    return frozenset(dirs)


def is_ramification(f: Poly, P: Point, ctx: PrecisionContext) -> bool:
    if eps_multiplicity(f, P, ctx) != 1:
        return False
    return (abs(derivative_at(f, (1, 0), P)) < ctx.threshold
            or abs(derivative_at(f, (0, 1), P)) < ctx.threshold)


def _direction(k: int, order: int) -> Tuple[int, int]:
    return (order, 0) if k == 1 else (0, order)


def directional_weight(f: Poly, P: Point, k: int, r: int) -> float:
    top = derivative_at(f, _direction(k, r), P)
    if top == 0:
        raise EpsGeomError(f"direction {k} is not pure at {P}")
    best = 0.0
    for i in range(r):
        low = derivative_at(f, _direction(k, i), P)
        ratio = abs(math.factorial(r) * low / (math.factorial(i) * top))
        best = max(best, ratio ** (1.0 / (r - i)))
    return best


def weight(f: Poly, P: Point, ctx: PrecisionContext) -> float:
    r = eps_multiplicity(f, P, ctx)
    dirs = purity(f, P, ctx, r)
    if not dirs:
        raise EpsGeomError(f"{P} is not pure; weight undefined")
    return max(directional_weight(f, P, k, r) for k in sorted(dirs))


def r_in(x: float) -> float:
    if x == -1 / 3:
        raise EpsGeomError("pole at -1/3")
    s = 1 + 3 * x
    return 2 * x * (1 / s + 16 * x / s ** 3)


def r_out(x: float) -> float:
    if x == -1 / 3:
        raise EpsGeomError("pole at -1/3")
    s = 1 + 3 * x
    return 0.5 - x * (1 - 9 * x) / (2 * s) - 32 * x * x / s ** 3


def radius(p: EpsilonPoint) -> float:
    return r_out(p.weight) if p.is_pure else 0.0


def annotate(f: Poly, P: Point, ctx: PrecisionContext) -> EpsilonPoint:
    """Build the full record for an eps-point (raises if P is not one)."""
    P = (complex(P[0]), complex(P[1]))
    r = eps_multiplicity(f, P, ctx)
    dirs = purity(f, P, ctx, r)
    w = max(directional_weight(f, P, k, r) for k in sorted(dirs)) if dirs else None
    rad = r_out(w) if w is not None else 0.0
    return EpsilonPoint(P, r, dirs, w, rad, abs(derivative_at(f, (0, 0), P)))
