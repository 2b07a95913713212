"""approxcurve command line.

Exit status: 0 success (curve rational for analyze/parametrize), 2 not
rational, 1 error.
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import os
import sys
import tempfile
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import curvegen, errordist, plot
from .param import ParamError, implicitize, parametrize, verify_infinity
from .polycore import Poly, PolyError, parse_poly, to_text
from .singular import analysis_to_json, analyze

log = logging.getLogger("approxcurve")

EXIT_OK, EXIT_ERROR, EXIT_NOT_RATIONAL = 0, 1, 2


class CliError(RuntimeError):
    pass


def _setup_logging() -> None:
    level = os.environ.get("APPROXCURVE_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def read_poly(source: str) -> Poly:
    """A path to a file holding one polynomial, or the polynomial text itself."""
    try:
        is_file = Path(source).is_file()
    except OSError:  # inline text longer than a file name
        is_file = False
    text = Path(source).read_text() if is_file else source
    text = " ".join(line.split("#")[0] for line in text.splitlines()).strip()
    if not text:
        raise CliError(f"no polynomial in {source!r}")
    return parse_poly(text)


def _pair(text: str, cast=float) -> Tuple:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected a,b; got {text!r}")
    a, b = cast(parts[0]), cast(parts[1])
    if not a < b:
        raise argparse.ArgumentTypeError("need a < b")
    return a, b


def _int_pair(text: str) -> Tuple[int, int]:
    return _pair(text, int)


def _epsilon(text: str) -> float:
    v = float(text)
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError("epsilon must lie in (0, 1)")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _emit(payload: str, out: Optional[str]) -> None:
    """Write to stdout, or atomically replace ``out``."""
    if out in (None, "-"):
        sys.stdout.write(payload)
        if not payload.endswith("\n"):
            sys.stdout.write("\n")
        return
    target = Path(out)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=target.name + ".")
    with os.fdopen(fd, "w") as fh:
        fh.write(payload)
    os.replace(tmp, target)


def _box(box: Optional[Tuple[float, float]], pts: Sequence[Tuple[float, float]]):
    if box is not None:
        return (box[0], box[1], box[0], box[1])
    if not pts:
        return (-10.0, 10.0, -10.0, 10.0)
    a = np.asarray(pts, dtype=float)
    half = max(5.0, 1.5 * float(np.max(np.abs(a))))
    return (-half, half, -half, half)


def _real_coords(points) -> List[Tuple[float, float]]:
    return [(P[0].real, P[1].real) for P in points
            if abs(P[0].imag) < 1e-9 and abs(P[1].imag) < 1e-9]


# -- commands -------------------------------------------------------------------

def cmd_analyze(args) -> int:
    f = read_poly(args.input)
    a = analyze(f, args.epsilon)
    _emit(json.dumps(analysis_to_json(a), indent=2), args.out)
    if args.figure:
        reps = _real_coords([c.representative.coords for c in a.clusters])
        box = _box(args.box, reps)
        plot.figure(args.figure, box, [("curve", plot.curve_polylines(f, box, focus=reps))],
                    [("cluster representatives", reps)], title=f"eps = {args.epsilon:g}")
    if a.report is None:
        log.error("%s", a.error)
        return EXIT_ERROR
    return EXIT_OK if a.report.rational else EXIT_NOT_RATIONAL


def cmd_parametrize(args) -> int:
    f = read_poly(args.input)
    res = parametrize(f, args.epsilon, seed=args.seed)
    if not res.rational:
        _emit(json.dumps({"eps_rational": False,
                          "genus_deficiency": res.analysis.report.deficiency}, indent=2),
              args.out)
        return EXIT_NOT_RATIONAL
    par = res.param
    doc = par.to_json()
    doc["simple_points"] = [[P[0].real, P[0].imag, P[1].real, P[1].imag]
                            for P in par.simple_points]
    doc["t_shift"] = par.diagnostics.get("t_shift")
    doc["t_scale"] = par.diagnostics.get("t_scale")
    if args.implicitize:
        imp = implicitize(par)
        inf = verify_infinity(par, f)
        doc["implicit"] = to_text(imp)
        doc["infinity_check"] = {"ok": inf.ok, "max_point_error": inf.max_point_error,
                                 "implicit_degree": inf.implicit_degree}
    _emit(json.dumps(doc, indent=2), args.out)
    if args.figure:
        reps = _real_coords([c.representative.coords for c in res.analysis.clusters])
        simple = _real_coords(par.simple_points)
        box = _box(args.box, reps + simple)
        plot.figure(args.figure, box,
                    [("input", plot.curve_polylines(f, box, focus=reps)),
                     ("parametrization", plot.param_polylines(par.p1, par.p2, par.q, box))],
                    [("cluster representatives", reps), ("simple points", simple)])
    return EXIT_OK


def _target(args, f: Poly) -> Poly:
    if args.target:
        return read_poly(args.target)
    res = parametrize(f, args.epsilon, seed=args.seed)
    if not res.rational:
        raise CliError("input is not rational within tolerance; pass --target")
    return implicitize(res.param)


def cmd_distance(args) -> int:
    f = read_poly(args.input)
    g = _target(args, f)
    a, b = args.range
    rep = errordist.distance_stats(f, g, a, b, args.samples, args.directions, args.seed,
                                   args.epsilon, real_only=args.real_only)
    if args.format == "csv":
        buf = io.StringIO()
        errordist.write_csv(rep, buf)
        _emit(buf.getvalue(), args.out)
    else:
        _emit(json.dumps(rep.summary(), indent=2), args.out)
    if args.figure:
        plot.histogram(args.figure, [d for _, d in rep.samples],
                       title=f"mu = {rep.mu:.6f}, rho = {rep.rho:.6f}")
    return EXIT_OK


def cmd_generate(args) -> int:
    draws = curvegen.family(args.seed, args.epsilon)
    curves = [to_text(curvegen.perturbed_curve(s)) for s in draws]
    _emit("\n".join(curves) + "\n", args.out)
    if args.manifest:
        _emit(curvegen.manifest(draws, args.seed), args.manifest)
    if args.evaluate:
        a, b = args.range
        rows = curvegen.evaluate_family(draws, a, b, args.samples, args.directions, args.seed)
        buf = io.StringIO()
        buf.write("i,j,status,mu,rho,n_samples\n")
        for o in rows:
            mu = "" if o.mu is None else repr(o.mu)
            rho = "" if o.rho is None else repr(o.rho)
            buf.write(f"{o.index[0]},{o.index[1]},{o.status},{mu},{rho},{o.n_samples}\n")
        _emit(buf.getvalue(), args.evaluate)
        if args.figure:
            rational = [curvegen.perturbed_curve(s) for s, o in zip(draws, rows)
                        if o.status == "rational"]
            box = _box(args.box, [(-3.0, 3.0)])
            plot.figure(args.figure, box,
                        [(None, plot.curve_polylines(f, box, 200)) for f in rational],
                        title=f"{len(rational)} of {len(rows)} rational")
    return EXIT_OK


def cmd_plot(args) -> int:
    f = read_poly(args.input)
    box = _box(args.box, [])
    curves = [("input", plot.curve_polylines(f, box, args.resolution))]
    if args.target:
        curves.append(("target", plot.curve_polylines(read_poly(args.target), box,
                                                      args.resolution)))
    if args.param:
        doc = json.loads(Path(args.param).read_text())
        curves.append(("parametrization", plot.param_polylines(
            np.asarray(doc["p1"]), np.asarray(doc["p2"]), np.asarray(doc["q"]), box)))
    if args.format == "csv":
        buf = io.StringIO()
        plot.write_polylines_csv([seg for _, lines in curves for seg in lines], buf)
        _emit(buf.getvalue(), args.out)
    else:
        if args.out in (None, "-"):
            raise CliError("figure output needs --out")
        path = args.out
        if Path(path).suffix.lstrip(".") != args.format:
            path = f"{path}.{args.format}"
        plot.figure(path, box, curves)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="approxcurve",
                                description="Approximate parametrization of plane curves.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, eps_default=0.01):
        sp.add_argument("--epsilon", type=_epsilon, default=eps_default)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", default=None, help="output file (default stdout)")
        sp.add_argument("--box", type=_pair, default=None, metavar="a,b",
                        help="square plot region [a,b]^2")
        sp.add_argument("--figure", default=None, help="also render a figure to this file")

    def sampling(sp):
        sp.add_argument("--samples", type=_positive, default=15, help="probe lines per axis")
        sp.add_argument("--directions", type=_positive, default=10)
        sp.add_argument("--range", type=_int_pair, default=(-100, 100), metavar="a,b")

    sp = sub.add_parser("analyze", help="singular locus, clusters and rationality")
    sp.add_argument("--input", required=True)
    common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("parametrize", help="rational parametrization")
    sp.add_argument("--input", required=True)
    sp.add_argument("--implicitize", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_parametrize)

    sp = sub.add_parser("distance", help="empirical distance to a target curve")
    sp.add_argument("--input", required=True)
    sp.add_argument("--target", default=None,
                    help="target curve (default: implicitized parametrization of the input)")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--real-only", action="store_true",
                    help="sample real points and real intersections only")
    common(sp)
    sampling(sp)
    sp.set_defaults(func=cmd_distance)

    sp = sub.add_parser("generate", help="random quartic family")
    sp.add_argument("--manifest", default=None, help="JSON manifest of the draws")
    sp.add_argument("--evaluate", default=None,
                    help="decide each curve and write a CSV summary here")
    common(sp)
    sampling(sp)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("plot", help="render curves and parametrizations")
    sp.add_argument("--input", required=True)
    sp.add_argument("--target", default=None)
    sp.add_argument("--param", default=None, help="parametrization JSON")
    sp.add_argument("--format", choices=("svg", "png", "pdf", "csv"), default="svg")
    sp.add_argument("--resolution", type=_positive, default=400)
    common(sp)
    sp.set_defaults(func=cmd_plot)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, PolyError, ParamError, errordist.DistanceError, ValueError,
            OSError, RuntimeError) as e:
        log.error("%s", e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
