import io
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from approxcurve.plot import (curve_polylines, figure, histogram, param_polylines,
                              write_polylines_csv)
from approxcurve.polycore import parse_poly

BOX = (-2.0, 2.0, -2.0, 2.0)


def test_circle_is_one_closed_polyline():
    lines = curve_polylines(parse_poly("x^2 + y^2 - 1"), BOX, 200)
    assert len(lines) == 1
    seg = lines[0]
    assert np.allclose(seg[0], seg[-1], atol=1e-9)
    r = np.hypot(seg[:, 0], seg[:, 1])
    assert np.max(np.abs(r - 1)) < 1e-3


def test_empty_region_warns(caplog):
    assert curve_polylines(parse_poly("x^2 + y^2 + 1"), BOX) == []
    assert "no real points" in caplog.text


def test_bad_box():
    with pytest.raises(ValueError):
        curve_polylines(parse_poly("x"), (1.0, 0.0, 0.0, 1.0))


def test_focus_adds_detail():
    f = parse_poly("y^2 - x^2 - x^3")
    plain = curve_polylines(f, BOX, 50)
    focused = curve_polylines(f, BOX, 50, focus=[(0.0, 0.0)])
    assert sum(map(len, focused)) > sum(map(len, plain))


def test_parametrized_circle_cut_free():
    # ((1 - t^2), 2t) / (1 + t^2): no real pole
    lines = param_polylines(np.array([1.0, 0, -1]), np.array([0, 2.0]), np.array([1.0, 0, 1]),
                            BOX, 2000)
    assert len(lines) == 1
    pts = lines[0]
    assert np.max(np.abs(np.hypot(pts[:, 0], pts[:, 1]) - 1)) < 1e-12


def test_parametrized_hyperbola_cut_at_pole():
    # (t, 1) / (t - 0.5): the image jumps at t = 0.5
    lines = param_polylines(np.array([0, 1.0]), np.array([1.0]), np.array([-0.5, 1.0]), BOX)
    assert len(lines) >= 2
    for seg in lines:
        assert np.all(np.isfinite(seg))


def test_polylines_csv():
    buf = io.StringIO()
    write_polylines_csv([np.array([[0.0, 1.0], [2.0, 3.0]]), np.array([[4.0, 5.0]])], buf)
    assert buf.getvalue().splitlines() == ["line,x,y", "0,0.0,1.0", "0,2.0,3.0", "1,4.0,5.0"]


def test_svg_is_well_formed(tmp_path):
    path = tmp_path / "circle.svg"
    lines = curve_polylines(parse_poly("x^2 + y^2 - 1"), BOX)
    figure(str(path), BOX, [("circle", lines)], [("centre", [(0.0, 0.0)])], title="unit")
    root = ET.parse(path).getroot()
    assert root.tag.endswith("svg")


def test_png_and_histogram(tmp_path):
    figure(str(tmp_path / "a.png"), BOX, [])
    histogram(str(tmp_path / "h.pdf"), [0.1, 0.2, 0.2, 0.5], title="d")
    assert (tmp_path / "a.png").read_bytes()[:4] == b"\x89PNG"
    assert (tmp_path / "h.pdf").read_bytes()[:4] == b"%PDF"
