import csv
import io
import json
import shutil
import subprocess
import sys
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from approxcurve.cli import main
from approxcurve.polycore import parse_poly

from fixtures import (FAMILY_QUARTIC, FAMILY_QUARTIC_OUT, FOLIUM, QUINTIC, QUINTIC_EPS,
                      SEPTIC, SEPTIC_EPS, SEXTIC, SEXTIC_EPS, TRIPLE, TRIPLE_S2)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_triple_point(capsys, tmp_path):
    src = tmp_path / "f.txt"
    src.write_text("# one triple point after clustering\n" + TRIPLE + "\n")
    code, out, _ = run(capsys, "analyze", "--input", src, "--epsilon", 0.001)
    doc = json.loads(out)
    assert code == 0 and doc["eps_rational"] is True
    (c,) = doc["clusters"]
    assert c["multiplicity"] == 3
    assert abs(c["representative"][0] - TRIPLE_S2[0][0]) < 1e-8
    assert {"strata", "clusters", "genus_deficiency", "eps_rational"} <= set(doc)


def test_analyze_exit_codes(capsys):
    assert run(capsys, "analyze", "--input", "x^2 + 2*y^2 - 1")[0] == 2
    code, _, err = run(capsys, "analyze", "--input", "x^2 + * y")
    assert code == 1 and "error" in err


def test_bad_epsilon_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as e:
        main(["analyze", "--input", "x", "--epsilon", "2"])
    assert e.value.code == 2


def test_parametrize_quintic(capsys, tmp_path):
    out = tmp_path / "p.json"
    code, _, _ = run(capsys, "parametrize", "--input", QUINTIC, "--epsilon", QUINTIC_EPS,
                     "--implicitize", "--out", out)
    doc = json.loads(out.read_text())
    assert code == 0
    assert len(doc["q"]) == 6 and doc["degree"] == 5
    assert {"p1", "p2", "q", "delta", "rho", "degree"} <= set(doc)
    assert doc["infinity_check"]["ok"]
    assert int(parse_poly(doc["implicit"]).degree()) <= 5


def test_parametrize_folium_round_trip(capsys):
    code, out, _ = run(capsys, "parametrize", "--input", FOLIUM, "--implicitize")
    imp = parse_poly(json.loads(out)["implicit"]).normalized()
    ref = parse_poly(FOLIUM).normalized()
    keys = set(imp.terms) | set(ref.terms)
    gap = min(max(abs(imp.coeff(k) - s * ref.coeff(k)) for k in keys) for s in (1, -1))
    assert code == 0 and gap < 1e-8


def test_parametrize_not_rational(capsys):
    code, out, _ = run(capsys, "parametrize", "--input", "x^4 + y^4 - 1")
    assert code == 2 and json.loads(out)["genus_deficiency"] == 6


@pytest.mark.parametrize("text,eps", [(QUINTIC, QUINTIC_EPS), (SEXTIC, SEXTIC_EPS),
                                      (SEPTIC, SEPTIC_EPS)])
def test_round_trip_distance(capsys, tmp_path, text, eps):
    p = tmp_path / "p.json"
    run(capsys, "parametrize", "--input", text, "--epsilon", eps, "--implicitize", "--out", p)
    target = tmp_path / "g.txt"
    target.write_text(json.loads(p.read_text())["implicit"])
    code, out, _ = run(capsys, "distance", "--input", text, "--target", target,
                       "--epsilon", eps, "--samples", 5)
    assert code == 0 and json.loads(out)["mu"] < 10 * eps


def test_distance_csv_and_histogram(capsys, tmp_path):
    fig = tmp_path / "h.svg"
    code, out, _ = run(capsys, "distance", "--input", FAMILY_QUARTIC, "--target",
                       FAMILY_QUARTIC_OUT, "--format", "csv", "--samples", 3, "--figure", fig)
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["x", "y", "d", "x_im", "y_im"] and len(rows) > 2
    ET.parse(fig)


def test_distance_default_target(capsys):
    code, out, _ = run(capsys, "distance", "--input", FAMILY_QUARTIC, "--samples", 3,
                       "--seed", 4)
    doc = json.loads(out)
    assert code == 0 and doc["lo"] <= doc["mu"] <= doc["hi"]


def test_generate_is_deterministic(capsys, tmp_path):
    a, b, m = tmp_path / "a.txt", tmp_path / "b.txt", tmp_path / "m.json"
    run(capsys, "generate", "--seed", 7, "--out", a, "--manifest", m)
    run(capsys, "generate", "--seed", 7, "--out", b)
    lines = a.read_text().splitlines()
    assert len(lines) == 60 and a.read_text() == b.read_text()
    assert all(int(parse_poly(s).degree()) == 4 for s in lines)
    assert len(json.loads(m.read_text())["curves"]) == 60


def test_plot_circle(capsys, tmp_path):
    svg = tmp_path / "c.svg"
    assert run(capsys, "plot", "--input", "x^2 + y^2 - 1", "--box=-2,2", "--out", svg)[0] == 0
    ET.parse(svg)
    code, out, _ = run(capsys, "plot", "--input", "x^2 + y^2 - 1", "--box=-2,2",
                       "--format", "csv", "--resolution", 100)
    rows = list(csv.reader(io.StringIO(out)))[1:]
    pts = np.array([[float(v) for v in r[1:]] for r in rows])
    assert code == 0 and np.max(np.abs(np.hypot(pts[:, 0], pts[:, 1]) - 1)) < 1e-3


def test_plot_with_parametrization(capsys, tmp_path):
    p = tmp_path / "p.json"
    run(capsys, "parametrize", "--input", FOLIUM, "--out", p)
    png = tmp_path / "f.png"
    assert run(capsys, "plot", "--input", FOLIUM, "--param", p, "--format", "png",
               "--out", png)[0] == 0
    assert png.read_bytes()[:4] == b"\x89PNG"


def test_plot_needs_out(capsys):
    assert run(capsys, "plot", "--input", "x^2 + y^2 - 1")[0] == 1


def test_analyze_figure(capsys, tmp_path):
    fig = tmp_path / "a.svg"
    assert run(capsys, "analyze", "--input", QUINTIC, "--figure", fig)[0] == 0
    ET.parse(fig)


@pytest.mark.skipif(shutil.which("approxcurve") is None, reason="console script not installed")
def test_console_script():
    r = subprocess.run(["approxcurve", "analyze", "--input", FOLIUM], capture_output=True,
                       text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["eps_rational"]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "approxcurve.cli", "analyze", "--input",
                        "x^2 + y^2 - 1"], capture_output=True, text=True)
    assert r.returncode == 2
