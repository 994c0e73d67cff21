import numpy as np
import pytest

from parabolica.polynomial import BivariatePoly, hessian
from parabolica.topology import (
    SingularCurveError,
    TangentAtInfinityError,
    petrowsky_check,
    projective_topology,
    trace_curve,
)
from parabolica.parsing import parse_polynomial

X, Y = BivariatePoly.x(), BivariatePoly.y()


def _local_scale(p, x, y):
    return max(
        (float(abs(c)) * abs(x) ** i * abs(y) ** j for (i, j), c in p.terms.items()),
        default=1.0,
    )


def test_trace_circle():
    p = X ** 2 + Y ** 2 - BivariatePoly.constant(1)
    comps = trace_curve(p, (-2, 2, -2, 2), 200)
    assert len(comps) == 1
    c = comps[0]
    assert c.closed
    arr = np.asarray(c.points)
    radii = np.hypot(arr[:, 0], arr[:, 1])
    assert np.max(np.abs(radii - 1)) < 1e-6
    # first == last within tolerance
    assert np.hypot(*(arr[0] - arr[-1])) < 0.1


def test_trace_residual_bound():
    g = parse_polynomial("y*(x+3)*(x-y)*(y+x-3)")
    h = hessian(g)
    he = h.evaluator()
    comps = trace_curve(h, (-8, 8, -8, 8), 400)
    for c in comps:
        for x, y in c.points:
            assert abs(he(x, y)) < 1e-10 * _local_scale(h, x, y) + 1e-8


def test_trace_hyperbola_two_branches():
    q = parse_polynomial("x^2 + y^2 + y*(x^2 + y^2)")
    comps = trace_curve(hessian(q), (-6, 6, -6, 6), 300)
    assert len(comps) == 2
    assert all(not c.closed for c in comps)


def test_trace_g_three_closed():
    g = parse_polynomial("y*(x+3)*(x-y)*(y+x-3)")
    comps = trace_curve(hessian(g), (-8, 8, -8, 8), 400)
    assert len(comps) == 3
    assert all(c.closed for c in comps)


def test_singular_curve_detected():
    p = X * Y   # node at the origin
    with pytest.raises(SingularCurveError):
        trace_curve(p, (-1, 1, -1, 1), 100)


def test_projective_topology_g():
    g = parse_polynomial("y*(x+3)*(x-y)*(y+x-3)")
    top = projective_topology(g)
    assert (top.P, top.N) == (3, 0)
    assert top.chi_B_plus == 3 and top.chi_B_minus == -2
    assert not top.transversal_to_infinity
    assert not top.pseudo_line
    assert top.chi_B_plus == top.P - top.N
    assert top.chi_B_minus == top.N - top.P + 1


def test_projective_topology_q_one_oval():
    q = parse_polynomial("x^2 + y^2 + y*(x^2 + y^2)")
    top = projective_topology(q)
    assert (top.P, top.N) == (1, 0)
    assert top.transversal_to_infinity


def test_oval_count_stable_under_refinement(corpus):
    for name in ("q", "g"):
        t1 = projective_topology(corpus[name], resolution=300)
        t2 = projective_topology(corpus[name], resolution=600)
        assert (t1.P, t1.N) == (t2.P, t2.N)


def test_nesting_ray_directions_agree(corpus):
    # three different sampling seeds change the test semicircles; depths agree
    tops = [projective_topology(corpus["g"], seed=s) for s in (0, 1, 2)]
    depths = [sorted(c.nesting_depth for c in t.components) for t in tops]
    assert depths[0] == depths[1] == depths[2]


def test_empty_hessian_curve():
    # convex with definite top-form Hessian: the curve is empty, even at infinity
    f = X ** 4 + X ** 2 * Y ** 2 + Y ** 4 + X ** 2 + Y ** 2
    top = projective_topology(f)
    assert (top.P, top.N) == (0, 0)
    assert top.chi_B_minus == 1


def test_petrowsky_values():
    g = parse_polynomial("y*(x+3)*(x-y)*(y+x-3)")
    top = projective_topology(g)
    v4 = petrowsky_check(top, 4)
    assert (v4.lower, v4.upper) == (-3, 4)
    assert v4.value == 3 and v4.passed
    v6 = petrowsky_check(top, 6)
    assert (v6.lower, v6.upper) == (-9, 10)
    with pytest.raises(ValueError):
        petrowsky_check(top, 5)


def test_petrowsky_equal_counts_always_pass():
    class Dummy:
        P = 2
        N = 2
    for deg in (2, 4, 6, 8):
        assert petrowsky_check(Dummy(), deg).passed
