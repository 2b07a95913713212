"""Sparse polynomial arithmetic over complex coefficients.

A :class:`Poly` is an immutable map from exponent tuples to complex
coefficients over an ordered tuple of variable names.  Bivariate curves use
``("x", "y")``; homogenized forms add ``z`` and pencils add ``t``.

Resultants are computed by evaluating Sylvester determinants on a tensor grid
of scaled roots of unity and interpolating with an FFT, which keeps the
coefficient recovery well conditioned for the degrees that show up here
(at most a few dozen per variable).
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from functools import reduce
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np

log = logging.getLogger(__name__)

NEG_INF = float("-inf")

#: canonical ordering used when two polynomials over different variable sets meet
VAR_ORDER = ("x", "y", "z", "t", "d1", "d2", "d3", "d4", "d5", "d6", "r1", "r2")

#: relative size under which resultant/division output terms are dropped
CLEAN_REL = 1e-12

Exps = Tuple[int, ...]


class PolyError(ValueError):
    """Raised for invalid polynomial operations (bad degrees, unknown vars)."""


def _var_key(name: str):
    try:
        return (0, VAR_ORDER.index(name), name)
    except ValueError:
        return (1, 0, name)


def _merge_vars(*var_lists: Sequence[str]) -> Tuple[str, ...]:
    names = set()
    for vl in var_lists:
        names.update(vl)
    return tuple(sorted(names, key=_var_key))


class Poly:
    """Immutable sparse polynomial.

    ``terms`` maps exponent tuples (aligned with ``vars``) to complex
    coefficients; exact zeros are never stored.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, terms: Optional[Mapping[Exps, complex]] = None,
                 vars: Sequence[str] = ("x", "y")):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise PolyError(f"duplicate variables in {vars}")
        clean: Dict[Exps, complex] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != len(vars):
                raise PolyError(f"exponent {e} does not match variables {vars}")
            if any(k < 0 for k in e):
                raise PolyError(f"negative exponent {e}")
            c = complex(c)
            if c != 0:
                clean[e] = clean.get(e, 0) + c
                if clean[e] == 0:
                    del clean[e]
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def const(cls, c: complex, vars: Sequence[str] = ("x", "y")) -> "Poly":
        return cls({(0,) * len(tuple(vars)): c}, vars)

    @classmethod
    def var(cls, name: str, vars: Optional[Sequence[str]] = None) -> "Poly":
        vars = tuple(vars) if vars is not None else _merge_vars(("x", "y"), (name,))
        if name not in vars:
            vars = _merge_vars(vars, (name,))
        e = tuple(1 if v == name else 0 for v in vars)
        return cls({e: 1.0}, vars)

    @classmethod
    def from_dense(cls, coeffs, vars: Sequence[str] = ("x", "y")) -> "Poly":
        """Build from an ndarray indexed by exponents (``coeffs[i, j]`` for x^i y^j)."""
        arr = np.asarray(coeffs)
        if arr.ndim != len(tuple(vars)):
            raise PolyError("array rank must equal number of variables")
        terms = {tuple(int(k) for k in idx): arr[idx] for idx in zip(*np.nonzero(arr))}
        return cls(terms, vars)

    @classmethod
    def univariate(cls, coeffs: Sequence[complex], var: str = "t") -> "Poly":
        """Build from ascending coefficients in one variable."""
        return cls({(k,): c for k, c in enumerate(coeffs)}, (var,))

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> float:
        """Total degree; ``-inf`` for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: str) -> float:
        if not self.terms:
            return NEG_INF
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def inf_norm(self) -> float:
        if not self.terms:
            return 0.0
        return max(abs(c) for c in self.terms.values())

    def used_vars(self) -> Tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.vars)
                     if any(e[i] for e in self.terms))

    def coeff(self, exps: Exps) -> complex:
        return self.terms.get(tuple(exps), 0j)

    def is_real(self, rtol: float = 0.0) -> bool:
        tol = rtol * self.inf_norm()
        return all(abs(c.imag) <= tol for c in self.terms.values())

    # -- variable bookkeeping --------------------------------------------

    def with_vars(self, vars: Sequence[str]) -> "Poly":
        """Re-express over a variable tuple that contains every used variable."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        idx = []
        for v in vars:
            idx.append(self.vars.index(v) if v in self.vars else None)
        for i, v in enumerate(self.vars):
            if v not in vars and any(e[i] for e in self.terms):
                raise PolyError(f"variable {v} is used and cannot be dropped")
        terms = {tuple(e[i] if i is not None else 0 for i in idx): c
                 for e, c in self.terms.items()}
        return Poly(terms, vars)

    def _align(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        if self.vars == other.vars:
            return self, other
        vars = _merge_vars(self.vars, other.vars)
        return self.with_vars(vars), other.with_vars(vars)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, float, complex, np.number)):
            return Poly.const(other, self.vars)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._align(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Poly(terms, a.vars)

    __radd__ = __add__

    def __neg__(self):
        return Poly({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return Poly({e: c * other for e, c in self.terms.items()}, self.vars)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._align(other)
        terms: Dict[Exps, complex] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Poly(terms, a.vars)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return self * (1.0 / other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0 or int(n) != n:
            raise PolyError("only nonnegative integer powers")
        result = Poly.const(1.0, self.vars)
        base = self
        n = int(n)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = self._coerce(other)
            if other is NotImplemented:
                return False
        try:
            a, b = self._align(other)
        except PolyError:
            return False
        return a.terms == b.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Poly({to_text(self)!r}, vars={self.vars})"

    # -- calculus ---------------------------------------------------------

    def diff(self, var: str, k: int = 1) -> "Poly":
        """k-th derivative with respect to ``var``."""
        if k == 0:
            return self
        if var not in self.vars:
            return Poly({}, self.vars)
        i = self.vars.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i] >= k:
                f = math.perm(e[i], k)
                ne = list(e)
                ne[i] -= k
                terms[tuple(ne)] = c * f
        return Poly(terms, self.vars)

    def partial(self, v: Tuple[int, int]) -> "Poly":
        """Mixed partial of order ``v = (i, j)`` in (x, y)."""
        i, j = v
        return self.diff("x", i).diff("y", j)

    # -- evaluation -------------------------------------------------------

    def evaluate(self, assignment: Mapping[str, complex]) -> complex:
        """Evaluate at a point; every used variable must be assigned."""
        missing = [v for v in self.used_vars() if v not in assignment]
        if missing:
            raise PolyError(f"missing values for {missing}")
        vals = [complex(assignment.get(v, 0.0)) for v in self.vars]
        total = 0j
        for e, c in self.terms.items():
            m = c
            for val, k in zip(vals, e):
                if k:
                    m *= val ** k
            total += m
        return total

    def __call__(self, *args, **kwargs) -> complex:
        if args:
            kwargs.update(zip(self.vars, args))
        return self.evaluate(kwargs)

    def evaluate_many(self, points: Mapping[str, np.ndarray]) -> np.ndarray:
        """Vectorized evaluation; ``points`` maps var name to equal-shaped arrays."""
        shape = np.broadcast(*points.values()).shape if points else ()
        out = np.zeros(shape, dtype=complex)
        for e, c in self.terms.items():
            m = np.full(shape, c, dtype=complex)
            for v, k in zip(self.vars, e):
                if k:
                    m = m * np.asarray(points[v]) ** k
            out = out + m
        return out

    def substitute(self, values: Mapping[str, complex]) -> "Poly":
        """Specialize some variables to numbers, dropping them from ``vars``."""
        keep = tuple(v for v in self.vars if v not in values)
        kidx = [self.vars.index(v) for v in keep]
        sidx = [(self.vars.index(v), complex(values[v])) for v in self.vars if v in values]
        terms: Dict[Exps, complex] = {}
        for e, c in self.terms.items():
            m = c
            for i, val in sidx:
                if e[i]:
                    m *= val ** e[i]
            ne = tuple(e[i] for i in kidx)
            terms[ne] = terms.get(ne, 0) + m
        return Poly(terms, keep)

    def compose_linear(self, var: str, replacement: "Poly") -> "Poly":
        """Substitute ``var -> replacement`` (any polynomial)."""
        rest = self.coeffs_in(var)
        out = Poly({}, _merge_vars(tuple(v for v in self.vars if v != var), replacement.vars))
        power = Poly.const(1.0, out.vars)
        for c in rest:
            out = out + c * power
            power = power * replacement
        return out

    # -- structure --------------------------------------------------------

    def coeffs_in(self, var: str) -> list:
        """Coefficients (ascending) of ``self`` as a polynomial in ``var``.

        Each coefficient is a Poly over the remaining variables.
        """
        rest = tuple(v for v in self.vars if v != var)
        if var not in self.vars:
            return [self]
        i = self.vars.index(var)
        deg = self.degree_in(var)
        if deg == NEG_INF:
            return []
        buckets = [dict() for _ in range(int(deg) + 1)]
        for e, c in self.terms.items():
            buckets[e[i]][e[:i] + e[i + 1:]] = c
        return [Poly(b, rest) for b in buckets]

    def to_dense(self, vars: Optional[Sequence[str]] = None) -> np.ndarray:
        vars = tuple(vars) if vars is not None else self.vars
        p = self.with_vars(vars)
        if not p.terms:
            return np.zeros((1,) * len(vars), dtype=complex)
        shape = [max(e[i] for e in p.terms) + 1 for i in range(len(vars))]
        arr = np.zeros(shape, dtype=complex)
        for e, c in p.terms.items():
            arr[e] = c
        return arr

    def as_univariate(self, var: Optional[str] = None) -> np.ndarray:
        """Ascending coefficient array of a polynomial in a single variable."""
        used = self.used_vars()
        if var is None:
            if len(used) > 1:
                raise PolyError(f"not univariate: uses {used}")
            var = used[0] if used else (self.vars[0] if self.vars else "t")
        elif any(v != var for v in used):
            raise PolyError(f"not univariate in {var}: uses {used}")
        if not self.terms:
            return np.zeros(1, dtype=complex)
        if var not in self.vars:
            return np.array([self.coeff((0,) * len(self.vars))], dtype=complex)
        i = self.vars.index(var)
        arr = np.zeros(int(self.degree_in(var)) + 1, dtype=complex)
        for e, c in self.terms.items():
            arr[e[i]] += c
        return arr

    def clean(self, rel: float = CLEAN_REL) -> "Poly":
        """Drop terms with ``|c| < rel * ||self||``."""
        tol = rel * self.inf_norm()
        return Poly({e: c for e, c in self.terms.items() if abs(c) >= tol}, self.vars)

    def abs_coeffs(self) -> "Poly":
        """Same support with coefficients replaced by their moduli."""
        return Poly({e: abs(c) for e, c in self.terms.items()}, self.vars)

    def real_part(self) -> "Poly":
        return Poly({e: c.real for e, c in self.terms.items()}, self.vars)

    def conj(self) -> "Poly":
        return Poly({e: c.conjugate() for e, c in self.terms.items()}, self.vars)

    def normalized(self) -> "Poly":
        n = self.inf_norm()
        if n == 0:
            raise PolyError("cannot normalize the zero polynomial")
        return self * (1.0 / n)

    def top_form(self) -> "Poly":
        """Homogeneous component of highest total degree."""
        d = self.degree()
        return Poly({e: c for e, c in self.terms.items() if sum(e) == d}, self.vars)


# -- module-level operations (the public API) ------------------------------

def inf_norm(p: Poly) -> float:
    return p.inf_norm()


def partial(p: Poly, v: Tuple[int, int]) -> Poly:
    return p.partial(v)


def evaluate(p: Poly, assignment: Mapping[str, complex]) -> complex:
    return p.evaluate(assignment)


def homogenize(p: Poly, d: Optional[int] = None, var: str = "z") -> Poly:
    """Homogenize the (x, y) part of ``p`` to degree ``d`` with ``var``.

    Any other variables (e.g. ``t``) are treated as coefficients.
    """
    base = [v for v in ("x", "y") if v in p.vars]
    deg = _degree_in_vars(p, base)
    if d is None:
        d = int(deg) if deg != NEG_INF else 0
    if deg != NEG_INF and d < deg:
        raise PolyError(f"cannot homogenize degree {deg} polynomial to degree {d}")
    vars = _merge_vars(p.vars, (var,))
    q = p.with_vars(vars)
    bidx = [vars.index(v) for v in base]
    zi = vars.index(var)
    terms = {}
    for e, c in q.terms.items():
        ne = list(e)
        ne[zi] += d - sum(e[i] for i in bidx)
        terms[tuple(ne)] = c
    return Poly(terms, vars)


def dehomogenize(P: Poly, var: str = "z") -> Poly:
    return P.substitute({var: 1.0})


def _degree_in_vars(p: Poly, names: Iterable[str]) -> float:
    idx = [p.vars.index(v) for v in names if v in p.vars]
    if not p.terms:
        return NEG_INF
    return max(sum(e[i] for i in idx) for e in p.terms)


def proper_degree(p: Poly, eps: float) -> Optional[int]:
    """Total degree if some top-order derivative exceeds ``eps * ||p||``."""
    if p.is_zero():
        raise PolyError("zero polynomial has no proper degree")
    d = int(p.degree())
    th = eps * p.inf_norm()
    for e, c in p.terms.items():
        if sum(e) == d:
            # the order-d partial along e is the constant c * i! * j!
            if abs(c) * math.prod(math.factorial(k) for k in e) > th:
                return d
    return None


# -- resultants ----------------------------------------------------------

def _batched_det(M: np.ndarray) -> Tuple[np.ndarray, float]:
    """Determinants of a stack of square matrices by partially pivoted LU.

    Returns the determinants and the smallest |pivot| / max|entry| ratio seen.
    """
    A = np.array(M, dtype=complex, copy=True)
    G, n, _ = A.shape
    if n == 0:
        return np.ones(G, dtype=complex), 1.0
    det = np.ones(G, dtype=complex)
    scale = np.maximum(np.abs(A).reshape(G, -1).max(axis=1), np.finfo(float).tiny)
    min_ratio = np.inf
    rows = np.arange(G)
    for k in range(n):
        piv = k + np.argmax(np.abs(A[:, k:, k]), axis=1)
        swap = piv != k
        if np.any(swap):
            tmp = A[rows, k].copy()
            A[rows, k] = A[rows, piv]
            A[rows, piv] = tmp
            det = np.where(swap, -det, det)
        pv = A[:, k, k]
        ratio = np.abs(pv) / scale
        min_ratio = min(min_ratio, float(ratio.min()))
        det = det * pv
        safe = np.where(pv == 0, 1.0, pv)
        if k + 1 < n:
            factors = A[:, k + 1:, k] / safe[:, None]
            factors = np.where((pv == 0)[:, None], 0.0, factors)
            A[:, k + 1:, k:] -= factors[:, :, None] * A[:, k, k:][:, None, :]
    return det, min_ratio


def sylvester_matrix(a: Sequence[complex], b: Sequence[complex]) -> np.ndarray:
    """Sylvester matrix of two univariate polynomials (descending coefficients)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    m, n = len(a) - 1, len(b) - 1
    S = np.zeros((m + n, m + n), dtype=complex)
    for i in range(n):
        S[i, i:i + m + 1] = a
    for i in range(m):
        S[n + i, i:i + n + 1] = b
    return S


def _coef_values(p: Poly, var: str, deg: int, rest: Sequence[str],
                 pts: Mapping[str, np.ndarray]) -> np.ndarray:
    """Values of the coefficients of ``p`` in ``var`` at grid points, descending."""
    coeffs = p.coeffs_in(var) if var in p.vars else [p]
    G = next(iter(pts.values())).shape[0] if pts else 1
    out = np.zeros((G, deg + 1), dtype=complex)
    for k, c in enumerate(coeffs):
        if k > deg:
            break
        c = c.with_vars(_merge_vars(c.vars, rest)) if rest else c
        if pts:
            out[:, deg - k] = c.evaluate_many(pts)
        else:
            out[:, deg - k] = c.evaluate({})
    return out


@dataclass
class ResultantInfo:
    """Diagnostics of a sampled resultant.

    ``hadamard`` is the largest |det| / prod(row norms) over the samples: it
    is ~1e-16 when the inputs share a factor and O(1e-8) or more otherwise.
    """

    poly: Poly
    hadamard: float
    radii: Dict[str, float]


def resultant(p: Poly, q: Poly, var: str,
              radii: Optional[Mapping[str, float]] = None) -> Poly:
    """Resultant of ``p`` and ``q`` with respect to ``var``.

    The Sylvester determinant is sampled on a tensor grid of scaled roots of
    unity in the remaining variables and recovered by an inverse FFT.
    ``radii`` sets the sampling radius per remaining variable (default 1);
    choosing it near the root magnitudes keeps the interpolation well
    conditioned.
    """
    return resultant_info(p, q, var, radii).poly


def resultant_info(p: Poly, q: Poly, var: str,
                   radii: Optional[Mapping[str, float]] = None) -> ResultantInfo:
    p, q = p._align(q)
    m = p.degree_in(var)
    n = q.degree_in(var)
    if p.is_zero() or q.is_zero():
        raise PolyError("resultant of a zero polynomial")
    if m <= 0 and n <= 0:
        raise PolyError(f"both polynomials have degree 0 in {var}")
    m, n = int(m), int(n)
    rest = tuple(v for v in p.vars if v != var and
                 (v in p.used_vars() or v in q.used_vars()))
    radii = {v: float((radii or {}).get(v, 1.0)) for v in rest}
    if m == 0:
        return ResultantInfo((p ** n).with_vars(rest), 1.0, radii)
    if n == 0:
        return ResultantInfo((q ** m).with_vars(rest), 1.0, radii)
    sizes = [n * int(max(p.degree_in(v), 0)) + m * int(max(q.degree_in(v), 0)) + 1
             for v in rest]
    axes = [radii[v] * np.exp(2j * np.pi * np.arange(N) / N) for v, N in zip(rest, sizes)]
    if rest:
        mesh = np.meshgrid(*axes, indexing="ij")
        pts = {v: g.ravel() for v, g in zip(rest, mesh)}
    else:
        pts = {}
    A = _coef_values(p, var, m, rest, pts)
    B = _coef_values(q, var, n, rest, pts)
    G = A.shape[0]
    S = np.zeros((G, m + n, m + n), dtype=complex)
    for i in range(n):
        S[:, i, i:i + m + 1] = A
    for i in range(m):
        S[:, n + i, i:i + n + 1] = B
    dets, ratio = _batched_det(S)
    if ratio < 1e-12:
        log.debug("resultant in %s: pivot ratio %.2e", var, ratio)
    rownorm = np.prod(np.maximum(np.linalg.norm(S, axis=2), 1e-300), axis=1)
    hadamard = float(np.max(np.abs(dets) / rownorm))
    real = p.is_real() and q.is_real()
    if not rest:
        val = dets[0].real if real else dets[0]
        return ResultantInfo(Poly.const(val, ()), hadamard, radii)
    scaled = np.fft.fftn(dets.reshape(sizes)) / np.prod(sizes)
    if real:
        scaled = scaled.real
    # drop interpolation noise relative to the sampled scale, not the raw
    # coefficients, so large-root eliminants keep their small leading terms
    top = np.max(np.abs(scaled)) if scaled.size else 0.0
    scaled = np.where(np.abs(scaled) < CLEAN_REL * top, 0.0, scaled)
    coeffs = scaled
    for ax, (v, N) in enumerate(zip(rest, sizes)):
        shape = [1] * len(rest)
        shape[ax] = N
        coeffs = coeffs / (radii[v] ** np.arange(N)).reshape(shape)
    return ResultantInfo(Poly.from_dense(coeffs, rest), hadamard, radii)


def divide_in(dividend: Poly, divisor: Poly, var: str) -> Tuple[Poly, Poly]:
    """Euclidean division in ``var``; the divisor's leading coefficient in
    ``var`` must be a nonzero constant."""
    if divisor.is_zero():
        raise PolyError("division by zero polynomial")
    a, b = dividend._align(divisor)
    if var not in a.vars:
        a = a.with_vars(_merge_vars(a.vars, (var,)))
        b = b.with_vars(a.vars)
    bc = b.coeffs_in(var)
    lead = bc[-1]
    if lead.used_vars():
        raise PolyError("divisor leading coefficient must be free of other variables")
    lc = lead.coeff((0,) * len(lead.vars))
    db = len(bc) - 1
    rem = a.coeffs_in(var)
    rest = tuple(v for v in a.vars if v != var)
    zero = Poly({}, rest)
    if len(rem) - 1 < db:
        return Poly({}, a.vars), a
    quot = [zero] * (len(rem) - db)
    rem = list(rem)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c.is_zero():
            continue
        qk = c * (1.0 / lc)
        quot[k - db] = qk
        for i, bcoef in enumerate(bc):
            rem[k - db + i] = rem[k - db + i] - qk * bcoef
    rem = rem[:db]
    vi = a.vars.index(var)

    def assemble(parts):
        terms = {}
        for k, part in enumerate(parts):
            for e, c in part.with_vars(rest).terms.items():
                full = list(e)
                full.insert(vi, k)
                terms[tuple(full)] = c
        return Poly(terms, a.vars)

    tol = CLEAN_REL * a.inf_norm()
    q_poly = assemble(quot).clean()
    r_poly = assemble(rem)
    r_poly = Poly({e: c for e, c in r_poly.terms.items() if abs(c) >= tol}, a.vars)
    return q_poly, r_poly


# -- univariate helpers (ascending numpy arrays) ----------------------------

def poly_from_roots(roots: Iterable[complex], var: str) -> Poly:
    """Monic polynomial with the given roots."""
    c = np.array([1.0 + 0j])
    for r in roots:
        c = np.convolve(c, [-r, 1.0])
    return Poly.univariate(c, var)


def trim(c: np.ndarray, rel: float = 0.0) -> np.ndarray:
    """Drop trailing (leading-degree) coefficients below ``rel * max|c|``."""
    c = np.asarray(c, dtype=complex)
    if c.size == 0:
        return c
    tol = rel * np.max(np.abs(c))
    k = c.size
    while k > 1 and abs(c[k - 1]) <= tol:
        k -= 1
    return c[:k]


# -- text format -----------------------------------------------------------

_TOKEN = re.compile(r"""
    \s*(?:
      (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?[ij]?)
    | (?P<var>[A-Za-z_][A-Za-z_0-9]*)
    | (?P<op>\*\*|[-+*/^()])
    )""", re.VERBOSE)


def _tokenize(text: str):
    pos = 0
    text = text.strip()
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyError(f"cannot parse polynomial near {text[pos:pos + 12]!r}")
        pos = m.end()
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
    return out


class _Parser:
    def __init__(self, tokens, vars):
        self.toks = tokens
        self.i = 0
        self.vars = vars

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expr(self):
        kind, val = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term() * sign
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self):
        acc = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in ("*", "/"):
                self.take()
                rhs = self.power()
                if val == "/":
                    if rhs.used_vars():
                        raise PolyError("division by a non-constant")
                    acc = acc * (1.0 / rhs.coeff((0,) * len(rhs.vars)))
                else:
                    acc = acc * rhs
            else:
                return acc

    def power(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val in ("^", "**"):
            self.take()
            k2, v2 = self.take()
            if k2 != "num" or not v2.isdigit():
                raise PolyError(f"exponent must be a nonnegative integer, got {v2!r}")
            return base ** int(v2)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            if val[-1] in "ij":
                return Poly.const(complex(0, float(val[:-1])), self.vars)
            return Poly.const(float(val), self.vars)
        if kind == "var":
            if val not in self.vars:
                raise PolyError(f"unknown variable {val!r}")
            return Poly.var(val, self.vars)
        if kind == "op" and val == "(":
            inner = self.expr()
            k2, v2 = self.take()
            if v2 != ")":
                raise PolyError("unbalanced parenthesis")
            return inner
        if kind == "op" and val == "-":
            return -self.power()
        raise PolyError(f"unexpected token {val!r}")


def parse_poly(text: str, vars: Sequence[str] = ("x", "y")) -> Poly:
    """Parse ``-2.1997*x^2 + 1.0*x*y^2``-style text into a Poly.

    Variables not listed in ``vars`` but in ``x y z t`` are accepted and
    appended; the result drops variables that never occur beyond ``vars``.
    """
    allowed = _merge_vars(vars, ("x", "y", "z", "t"))
    if not text or not text.strip():
        raise PolyError("empty polynomial text")
    p = _Parser(_tokenize(text), allowed)
    result = p.expr()
    if p.i != len(p.toks):
        raise PolyError(f"trailing input after position {p.i}")
    keep = _merge_vars(vars, result.used_vars())
    return result.with_vars(keep)


def _fmt_coef(c: complex) -> str:
    if c.imag == 0:
        return repr(float(c.real))
    return f"({c.real!r}{c.imag:+.17g}j)"


def to_text(p: Poly) -> str:
    """Render in the parseable text format (terms by descending degree)."""
    if not p.terms:
        return "0"
    parts = []
    for e in sorted(p.terms, key=lambda e: (-sum(e), tuple(-k for k in e))):
        c = p.terms[e]
        mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(p.vars, e) if k)
        coef = _fmt_coef(c)
        piece = f"{coef}*{mono}" if mono else coef
        parts.append(piece)
    text = " + ".join(parts)
    return text.replace("+ -", "- ")


def sum_polys(polys: Iterable[Poly], vars: Sequence[str] = ("x", "y")) -> Poly:
    return reduce(lambda a, b: a + b, polys, Poly({}, vars))
