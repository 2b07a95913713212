import csv
import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from approxcurve.errordist import (DistanceError, distance_stats, min_line_distance,
                                   sample_curve_points, write_csv)
from approxcurve.polycore import parse_poly

from conftest import CASES
from fixtures import FAMILY_QUARTIC, FAMILY_QUARTIC_OUT

CIRCLE = parse_poly("x^2 + y^2 - 1")


def brute_distance(P, target, r, grid=200001, reach=5.0):
    """Smallest |s| with a sign change of target along each real line."""
    s = np.linspace(-reach, reach, grid)
    best = math.inf
    for k in range(1, r + 1):
        th = k * math.pi / r
        v = target.evaluate_many({"x": P[0] + s * math.cos(th), "y": P[1] + s * math.sin(th)})
        v = np.real(v)
        idx = np.nonzero(np.sign(v[:-1]) != np.sign(v[1:]))[0]
        if len(idx):
            best = min(best, float(np.min(np.abs(s[idx]))))
    return best


def test_circle_samples_include_poles():
    pts = sample_curve_points(CIRCLE, -1, 1, 3, seed=0, real_only=True)
    pairs = {(round(p[0].real, 9), round(p[1].real, 9)) for p in pts}
    assert {(0.0, 1.0), (0.0, -1.0)} <= pairs


def test_line_samples():
    f = parse_poly("y - x")
    pts = sample_curve_points(f, 5, 6, 2, seed=1)
    assert {(p[0].real, p[1].real) for p in pts} == {(5.0, 5.0), (6.0, 6.0)}


def test_sample_count_law():
    f = parse_poly(FAMILY_QUARTIC)
    pts = sample_curve_points(f, -100, 100, 15, seed=0)
    assert len(pts) == 2 * 15 * 4


def test_real_only_samples_are_real():
    f = parse_poly(FAMILY_QUARTIC)
    pts = sample_curve_points(f, -100, 100, 15, seed=0, real_only=True)
    assert 0 < len(pts) <= 120
    assert all(p[0].imag == 0 and p[1].imag == 0 for p in pts)


def test_sampling_errors():
    with pytest.raises(ValueError):
        sample_curve_points(CIRCLE, 3, 3, 1, 0)
    with pytest.raises(ValueError):
        sample_curve_points(CIRCLE, 0, 3, 0, 0)
    with pytest.raises(DistanceError):
        sample_curve_points(CIRCLE, 50, 60, 3, 0, real_only=True)


def test_min_distance_examples():
    assert min_line_distance((0, 0), CIRCLE, 7) == pytest.approx(1.0)
    assert min_line_distance((2, 0), parse_poly("x - 1"), 2) == pytest.approx(1.0)
    assert min_line_distance((0.6, 0.8), CIRCLE, 5) < 1e-12


def test_min_distance_no_real_intersection():
    assert min_line_distance((0, 0), parse_poly("x^2 + y^2 + 1"), 4, real_only=True) == math.inf
    with pytest.raises(ValueError):
        min_line_distance((0, 0), CIRCLE, 0)


@settings(max_examples=30, deadline=None)
@given(st.floats(-2, 2), st.floats(-2, 2), st.integers(1, 12))
def test_real_distance_matches_scan_oracle(x, y, r):
    got = min_line_distance((x, y), CIRCLE, r, real_only=True)
    want = brute_distance((x, y), CIRCLE, r)
    # the scan brackets each crossing to one grid step; tangencies show no crossing
    if math.isfinite(want):
        assert got <= want + 1e-4


@settings(max_examples=30, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.integers(1, 10), st.booleans())
def test_more_directions_never_increase_distance(x, y, r, real_only):
    target = parse_poly(FAMILY_QUARTIC_OUT)
    # doubling r keeps every old direction
    a = min_line_distance((x, y), target, r, real_only)
    b = min_line_distance((x, y), target, 2 * r, real_only)
    assert b <= a


def test_self_distance_vanishes(case):
    f = parse_poly(CASES[case][0])
    rep = distance_stats(f, f, -100, 100, 5, 4, seed=0)
    assert rep.mu < 1e-6


def test_report_interval():
    f = parse_poly(FAMILY_QUARTIC)
    rep = distance_stats(f, parse_poly(FAMILY_QUARTIC_OUT), -100, 100, 15, 10, seed=2)
    assert rep.lo <= rep.mu <= rep.hi and rep.rho >= 0 and rep.mu >= 0
    assert rep.hi - rep.mu == pytest.approx(1.96 * rep.rho)
    assert rep.n_samples <= 2 * 15 * 4
    assert set(rep.summary()) == {"mu", "rho", "lo", "hi", "n_samples"}
    assert rep.params == (-100, 100, 15, 10)


def test_too_few_samples():
    with pytest.raises(DistanceError):
        distance_stats(parse_poly("y - x"), parse_poly("x^2 + y^2 + 1"), 5, 6, 1, 2, 0,
                       real_only=True)


def test_csv_output():
    f = parse_poly(FAMILY_QUARTIC)
    rep = distance_stats(f, parse_poly(FAMILY_QUARTIC_OUT), -100, 100, 3, 4, seed=0)
    buf = io.StringIO()
    write_csv(rep, buf)
    rows = list(csv.reader(io.StringIO(buf.getvalue())))
    assert rows[0] == ["x", "y", "d", "x_im", "y_im"]
    assert len(rows) == rep.n_samples + 1
    assert float(rows[1][2]) == rep.samples[0][1]


def test_seed_determinism():
    f = parse_poly(FAMILY_QUARTIC)
    g = parse_poly(FAMILY_QUARTIC_OUT)
    a = distance_stats(f, g, -100, 100, 5, 4, seed=9)
    b = distance_stats(f, g, -100, 100, 5, 4, seed=9)
    assert a.mu == b.mu
