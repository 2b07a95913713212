"""Random quartics near the rational family with double points at
(2:0:1), (0:0:1) and (1:1:1).

Every member of the six-parameter base family has exactly those three nodes,
so it is rational; the small random perturbation usually breaks that, and the
parametrizer has to decide whether the perturbed curve is still rational
within tolerance.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import List, Optional, Tuple

import numpy as np

from .errordist import DistanceError, distance_stats
from .param import ParamError, check_assumptions, implicitize, parametrize
from .polycore import Poly, dehomogenize
from .singular import analyze

XYZ = ("x", "y", "z")
NODES = ((2.0, 0.0, 1.0), (0.0, 0.0, 1.0), (1.0, 1.0, 1.0))
N_PARAMS = 6
ROUNDS = 10
MAX_RETRIES = 20


@dataclass(frozen=True)
class FamilySpec:
    u: Tuple[float, ...]
    perturb: Tuple[int, int, int]
    eps: float
    index: Tuple[int, int] = (0, 0)

    def to_json(self) -> dict:
        return asdict(self)


def base_form(u) -> Poly:
    """Quartic form with a double point at each of the three nodes, linear in u."""
    u1, u2, u3, u4, u5, u6 = (float(v) for v in u)
    # exponents (x, y, z)
    terms = {
        (0, 2, 2): u2,
        (0, 3, 1): u3,
        (0, 4, 0): u4,
        (1, 1, 2): u5,
        (1, 2, 1): -2 * u2 - 3 * u3 - 4 * u4 - u5 / 2 - 2 * u6,
        (1, 3, 0): u6,
        (2, 0, 2): u1,
        (2, 1, 1): -1.5 * u5 + 2 * u3 + 4 * u4 + 2 * u6 - u1,
        (2, 2, 0): u2 + u3 + u5 / 2 + u1 / 4 + u4,
        (3, 0, 1): -u1,
        (3, 1, 0): u5 / 2 - u3 - 2 * u4 - u6 + u1 / 2,
        (4, 0, 0): u1 / 4,
    }
    return Poly(terms, XYZ)


def perturbation(perturb: Tuple[int, int, int], eps: float) -> Poly:
    r1, r2, r3 = perturb
    terms = {}
    for deg, r in ((1, r1), (2, r2), (3, r3)):
        for i in range(deg + 1):
            terms[(i, deg - i)] = eps ** deg * r / 100
    return Poly(terms, ("x", "y"))


def perturbed_curve(draw: FamilySpec) -> Poly:
    if not 0 < draw.eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    g = dehomogenize(base_form(draw.u)).with_vars(("x", "y"))
    return (g + perturbation(draw.perturb, draw.eps)).clean(0.0)


def _u_vector(j: int, i: int, r: int) -> Tuple[float, ...]:
    """All ones except slot j, which gets (r/100)^i."""
    return tuple((r / 100) ** i if k == j else 1.0 for k in range(1, N_PARAMS + 1))


def is_admissible(f: Poly) -> bool:
    if int(f.degree()) != 4:
        return False
    try:
        check_assumptions(f)
    except ParamError:
        return False
    return True


def family(seed: int, eps: float = 0.01) -> List[FamilySpec]:
    """The 60 draws, j = 1..6 outer and i = 1..10 inner; bad draws are redrawn."""
    rng = np.random.default_rng(seed)
    out = []
    for j in range(1, N_PARAMS + 1):
        for i in range(1, ROUNDS + 1):
            for _ in range(MAX_RETRIES):
                r = int(rng.integers(0, 101))
                perturb = tuple(int(v) for v in rng.integers(0, 101, size=3))
                draw = FamilySpec(_u_vector(j, i, r), perturb, eps, (i, j))
                if is_admissible(perturbed_curve(draw)):
                    break
            else:
                raise RuntimeError(f"no admissible curve for (i, j) = ({i}, {j})")
            out.append(draw)
    return out


def manifest(draws: List[FamilySpec], seed: int) -> str:
    return json.dumps({"seed": seed, "curves": [s.to_json() for s in draws]}, indent=2)


@dataclass
class FamilyOutcome:
    index: Tuple[int, int]
    status: str
    mu: Optional[float] = None
    rho: Optional[float] = None
    n_samples: int = 0
    message: str = ""


def evaluate_family(draws: List[FamilySpec], a: int = -100, b: int = 100, n: int = 15,
                    r: int = 10, seed: int = 0) -> List[FamilyOutcome]:
    """Decide each curve and, when rational, estimate its distance to the output.

    A cluster total above the genus budget means the curve is not rational
    within tolerance; it is reported under its own status.
    """
    out = []
    for draw in draws:
        f = perturbed_curve(draw)
        analysis = analyze(f, draw.eps)
        if analysis.report is None:
            out.append(FamilyOutcome(draw.index, "over_budget", message=analysis.error or ""))
            continue
        try:
            res = parametrize(f, draw.eps, seed=seed, analysis=analysis)
        except ParamError as e:
            out.append(FamilyOutcome(draw.index, "failed", message=str(e)))
            continue
        if not res.rational:
            out.append(FamilyOutcome(draw.index, "not_rational"))
            continue
        try:
            rep = distance_stats(f, implicitize(res.param), a, b, n, r, seed, draw.eps)
        except DistanceError as e:
            out.append(FamilyOutcome(draw.index, "rational", message=str(e)))
            continue
        out.append(FamilyOutcome(draw.index, "rational", rep.mu, rep.rho, rep.n_samples))
    return out
