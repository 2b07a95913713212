"""Polylines for real curves and parametrizations, and figures built from them."""

from __future__ import annotations

import csv
import logging
import math
from typing import Iterable, List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .numeric import univar_roots  # noqa: E402
from .polycore import Poly  # noqa: E402

log = logging.getLogger(__name__)

Box = Tuple[float, float, float, float]
MAX_CELLS = 1_000_000
# relative width of the window redrawn around each focus point
FOCUS_FRACTION = 0.05
FOCUS_FACTOR = 4


def _grid(f: Poly, box: Box, n: int):
    x0, x1, y0, y1 = box
    xs = np.linspace(x0, x1, n)
    ys = np.linspace(y0, y1, n)
    X, Y = np.meshgrid(xs, ys)
    Z = f.with_vars(("x", "y")).evaluate_many({"x": X.ravel(), "y": Y.ravel()})
    return X, Y, np.real(Z).reshape(X.shape)


def _zero_lines(X, Y, Z) -> List[np.ndarray]:
    if Z.min() > 0 or Z.max() < 0:
        return []
    fig, ax = plt.subplots()
    try:
        cs = ax.contour(X, Y, Z, levels=[0.0])
        return [seg for seg in cs.allsegs[0] if len(seg) > 1]
    finally:
        plt.close(fig)


def curve_polylines(f: Poly, box: Box, resolution: int = 400,
                    focus: Sequence[Tuple[float, float]] = ()) -> List[np.ndarray]:
    """Zero set of a real polynomial by marching squares on a grid.

    Small windows around each ``focus`` point are redrawn at a finer grid;
    total work stays under MAX_CELLS cells.
    """
    x0, x1, y0, y1 = box
    if not (x0 < x1 and y0 < y1):
        raise ValueError("empty plot box")
    n = min(resolution, int(math.isqrt(MAX_CELLS)))
    lines = _zero_lines(*_grid(f, box, n))
    budget = MAX_CELLS - n * n
    hw = FOCUS_FRACTION * max(x1 - x0, y1 - y0)
    m = min(FOCUS_FACTOR * n // 4, n)
    for px, py in focus:
        if budget < m * m:
            break
        if not (x0 <= px <= x1 and y0 <= py <= y1):
            continue
        sub = (px - hw, px + hw, py - hw, py + hw)
        lines += _zero_lines(*_grid(f, sub, m))
        budget -= m * m
    if not lines:
        log.warning("no real points of the curve in %s", box)
    return lines


def param_polylines(p1: np.ndarray, p2: np.ndarray, q: np.ndarray, box: Box,
                    samples: int = 4000) -> List[np.ndarray]:
    """Image of t over the whole real line, cut at real poles and far outside the box."""
    s = np.linspace(-math.pi / 2, math.pi / 2, samples + 2)[1:-1]
    t = np.tan(s)
    qv = np.polyval(q[::-1], t)
    X = np.polyval(p1[::-1], t) / qv
    Y = np.polyval(p2[::-1], t) / qv
    poles = [r.real for r in univar_roots(q) if abs(r.imag) <= 1e-9 * (1 + abs(r))] \
        if len(q) > 1 else []
    cut = np.zeros(len(t), dtype=bool)
    for r in poles:
        k = np.searchsorted(t, r)
        if 0 < k < len(t):
            cut[k] = True
    x0, x1, y0, y1 = box
    w, h = x1 - x0, y1 - y0
    far = (X < x0 - 10 * w) | (X > x1 + 10 * w) | (Y < y0 - 10 * h) | (Y > y1 + 10 * h)
    lines, cur = [], []
    for i in range(len(t)):
        if cut[i] or far[i] or not (np.isfinite(X[i]) and np.isfinite(Y[i])):
            if len(cur) > 1:
                lines.append(np.array(cur))
            cur = []
            if far[i]:
                continue
        cur.append((X[i], Y[i]))
    if len(cur) > 1:
        lines.append(np.array(cur))
    return lines


def write_polylines_csv(lines: Iterable[np.ndarray], stream) -> None:
    w = csv.writer(stream)
    w.writerow(["line", "x", "y"])
    for k, seg in enumerate(lines):
        for x, y in seg:
            w.writerow([k, repr(float(x)), repr(float(y))])


def figure(path: str, box: Box, curves: Sequence[Tuple[str, List[np.ndarray]]],
           points: Sequence[Tuple[str, Sequence[Tuple[float, float]]]] = (),
           title: Optional[str] = None) -> None:
    """Write a figure; the format follows the file extension."""
    fig, ax = plt.subplots(figsize=(6, 6))
    styles = ["-", "--", ":", "-."]
    for k, (label, lines) in enumerate(curves):
        color = f"C{k}"
        for j, seg in enumerate(lines):
            ax.plot(seg[:, 0], seg[:, 1], styles[k % len(styles)], color=color, lw=1.2,
                    label=label if j == 0 else None)
    for k, (label, pts) in enumerate(points):
        if len(pts):
            a = np.asarray(pts, dtype=float)
            ax.plot(a[:, 0], a[:, 1], "o", ms=4, color=f"C{k + len(curves)}", label=label)
    ax.set_xlim(box[0], box[1])
    ax.set_ylim(box[2], box[3])
    ax.set_aspect("equal", adjustable="box")
    ax.grid(True, lw=0.3)
    if title:
        ax.set_title(title)
    if ax.get_legend_handles_labels()[0]:
        ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def histogram(path: str, values: Sequence[float], title: Optional[str] = None) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.hist(np.asarray(values, dtype=float), bins=30, color="C0")
    ax.set_xlabel("distance")
    ax.set_ylabel("samples")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
