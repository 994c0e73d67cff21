import json
import os
from fractions import Fraction

import numpy as np
import pytest

from parabolica.polynomial import BivariatePoly
from parabolica.parsing import ParseError, parse_polynomial
from parabolica import cli

X, Y = BivariatePoly.x(), BivariatePoly.y()


def test_parse_corpus_examples():
    q = parse_polynomial("x^2 + y^2 + y*(x^2 + y^2)")
    assert q == X ** 2 + Y ** 2 + Y * (X ** 2 + Y ** 2)
    assert parse_polynomial("0").is_zero()
    g = parse_polynomial("y*(x+3)*(x-y)*(y+x-3)")
    assert g.degree == 4


def test_parse_rational_coefficients():
    f = parse_polynomial("1/3*x - 2/7")
    assert f.coefficient(1, 0) == Fraction(1, 3)
    assert f.coefficient(0, 0) == Fraction(-2, 7)


def test_parse_errors_have_positions():
    with pytest.raises(ParseError) as e:
        parse_polynomial("x +\n* y")
    assert e.value.line == 2
    for bad in ("2x", "x^", "x^y", "(x+1", "x/(y)", "z+1", "x**2"):
        with pytest.raises(ParseError):
            parse_polynomial(bad)


def test_round_trip_random_200():
    rng = np.random.default_rng(41)
    for _ in range(200):
        terms = {}
        deg = int(rng.integers(0, 7))
        for i in range(deg + 1):
            for j in range(deg + 1 - i):
                c = int(rng.integers(-20, 21))
                if c:
                    terms[(i, j)] = Fraction(c, int(rng.integers(1, 9)))
        f = BivariatePoly(terms) if terms else BivariatePoly.zero()
        assert parse_polynomial(str(f)) == f


@pytest.fixture
def qfile(tmp_path):
    p = tmp_path / "q.txt"
    p.write_text("x^2 + y^2 + y*(x^2 + y^2)\n")
    return str(p)


def test_cli_verify_exit_zero(qfile):
    assert cli.main(["verify", qfile]) == 0


def test_cli_parse_error_exit_two(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("2x + 1")
    assert cli.main(["verify", str(p)]) == cli.EXIT_PARSE


def test_cli_missing_file_exit_one(tmp_path):
    assert cli.main(["verify", str(tmp_path / "missing.txt")]) == cli.EXIT_USAGE


def test_cli_no_command_exit_one():
    assert cli.main([]) == cli.EXIT_USAGE


def test_cli_refusal_exit_three(tmp_path):
    p = tmp_path / "convex.txt"
    p.write_text("x^4 + x^2*y^2 + y^4 + x^2 + y^2\n")   # empty field domain: refusal
    assert cli.main(["verify", str(p)]) == cli.EXIT_REFUSAL


def test_cli_analyze_writes_json(qfile, tmp_path):
    out = tmp_path / "report.json"
    assert cli.main(["analyze", qfile, "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["b_minus_contains"] == "H"
    assert doc["identity"]["passed"] is True


def test_cli_plot_deterministic(qfile, tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert cli.main(["plot", qfile, "--out", str(a)]) == 0
    assert cli.main(["plot", qfile, "--out", str(b)]) == 0
    sa, sb = a.read_text(), b.read_text()
    assert sa == sb
    assert sa.startswith('<?xml version="1.0"')
    assert 'version="1.1"' in sa


def test_cli_plot_unknown_layer(qfile, tmp_path):
    code = cli.main(["plot", qfile, "--layer", "nope", "--out", str(tmp_path / "x.svg")])
    assert code == cli.EXIT_USAGE


def test_cli_seed_env(qfile, tmp_path, monkeypatch):
    monkeypatch.setenv("PARABOLICA_SEED", "5")
    out = tmp_path / "r.json"
    assert cli.main(["analyze", qfile, "--out", str(out)]) == 0
    monkeypatch.setenv("PARABOLICA_SEED", "not-an-int")
    assert cli.main(["analyze", qfile, "--out", str(out)]) == cli.EXIT_USAGE
