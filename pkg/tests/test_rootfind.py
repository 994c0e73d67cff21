from fractions import Fraction

import pytest

from parabolica.polynomial import BivariatePoly, UnivariatePoly, hessian
from parabolica.rootfind import (
    SharedComponentError,
    cauchy_bound,
    distinct_real_linear_factors,
    real_roots,
    solve_system,
)
from parabolica.asymptotic import tangency_polynomial
from parabolica.parsing import parse_polynomial

X, Y = BivariatePoly.x(), BivariatePoly.y()


def test_real_roots_simple():
    p = UnivariatePoly([Fraction(-2), Fraction(0), Fraction(1)])   # x^2 - 2
    roots = real_roots(p)
    assert len(roots) == 2
    mids = sorted(roots.midpoints())
    assert abs(mids[0] + 2 ** 0.5) < 1e-10
    assert abs(mids[1] - 2 ** 0.5) < 1e-10
    assert all(r.multiplicity == 1 for r in roots)


def test_real_roots_multiplicity():
    # (x - 1)^2 (x + 3)
    p = UnivariatePoly([Fraction(3), Fraction(-5), Fraction(1), Fraction(1)])
    roots = sorted(real_roots(p), key=lambda r: r.midpoint)
    assert [r.multiplicity for r in roots] == [1, 2]
    assert abs(roots[0].midpoint + 3) < 1e-10
    assert abs(roots[1].midpoint - 1) < 1e-10


def test_real_roots_none():
    p = UnivariatePoly([Fraction(1), Fraction(0), Fraction(1)])   # x^2 + 1
    assert len(real_roots(p)) == 0


def test_cauchy_bound_contains_roots():
    p = UnivariatePoly([Fraction(-6), Fraction(11), Fraction(-6), Fraction(1)])
    b = cauchy_bound(p)
    assert all(abs(r.midpoint) <= float(b) for r in real_roots(p))


def test_distinct_real_linear_factors():
    h = X ** 3 * Y - X * Y ** 3           # xy(x-y)(x+y)
    k, simple = distinct_real_linear_factors(h)
    assert (k, simple) == (4, True)
    e = X ** 4 + 3 * X ** 2 * Y ** 2 + Y ** 4
    assert distinct_real_linear_factors(e)[0] == 0


def test_solve_system_circle_line():
    sols = solve_system(X ** 2 + Y ** 2 - BivariatePoly.constant(1), X - Y)
    assert len(sols) == 2
    for u, v in sols:
        assert abs(u - v) < 1e-9
        assert abs(u * u + v * v - 1) < 1e-9


def test_solve_system_shared_component():
    p = (X - Y) * (X + Y)
    q = (X - Y) * (X ** 2 + Y ** 2 + BivariatePoly.constant(1))
    with pytest.raises(SharedComponentError):
        solve_system(p, q)


def test_solve_system_godron_counts():
    q = parse_polynomial("x^2 + y^2 + y*(x^2 + y^2)")
    g1, _ = tangency_polynomial(q)
    assert len(solve_system(hessian(q), g1)) == 1

    g = parse_polynomial("y*(x+3)*(x-y)*(y+x-3)")
    g1, _ = tangency_polynomial(g)
    assert len(solve_system(hessian(g), g1)) == 8


def test_solve_system_tangential_intersection():
    # curves tangent at the origin: y - x^2 and y itself
    sols = solve_system(Y - X ** 2, Y)
    assert len(sols) == 1
    assert abs(sols[0][0]) < 1e-6 and abs(sols[0][1]) < 1e-6
