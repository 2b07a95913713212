from functools import lru_cache

import pytest

from approxcurve.param import implicitize, parametrize
from approxcurve.polycore import parse_poly
from approxcurve.singular import analyze

from fixtures import PIPELINE

CASES = {name: (text, eps, mults) for name, text, eps, mults in PIPELINE}


@lru_cache(maxsize=None)
def run_analysis(name):
    text, eps, _ = CASES[name]
    return analyze(parse_poly(text), eps)


@lru_cache(maxsize=None)
def run_pipeline(name):
    text, eps, _ = CASES[name]
    f = parse_poly(text)
    return f, parametrize(f, eps, analysis=run_analysis(name))


@lru_cache(maxsize=None)
def run_implicit(name):
    _, res = run_pipeline(name)
    return implicitize(res.param)


@pytest.fixture(params=sorted(CASES))
def case(request):
    return request.param


# one line per acceptance criterion, printed after the run
ACCEPTANCE = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE.setdefault(criterion, []).append((ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        rows = ACCEPTANCE[k]
        ok = all(r[0] for r in rows)
        detail = "; ".join(r[1] for r in rows)
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
