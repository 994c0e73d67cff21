from fractions import Fraction

from parabolica.polynomial import BivariatePoly
from parabolica.classify import (
    HomKind,
    PointClass,
    classify_point,
    classify_infinity,
    compactness_verdict,
    homogeneous_class,
)
from parabolica.parsing import parse_polynomial

X, Y = BivariatePoly.x(), BivariatePoly.y()


def test_classify_point_saddle_and_bowl():
    saddle = X * Y
    assert classify_point(saddle, (0, 0)) is PointClass.HYPERBOLIC
    bowl = X ** 2 + Y ** 2
    assert classify_point(bowl, (0, 0)) is PointClass.ELLIPTIC
    cyl = X ** 2
    assert classify_point(cyl, (0, 0)) is PointClass.PARABOLIC


def test_classify_point_exact_on_rationals():
    q = parse_polynomial("x^2 + y^2 + y*(x^2 + y^2)")
    # the godron (0, -1) lies on the parabolic curve
    assert classify_point(q, (Fraction(0), Fraction(-1))) is PointClass.PARABOLIC


def test_homogeneous_class_examples():
    hyp = X ** 3 * Y - X * Y ** 3
    assert homogeneous_class(hyp).kind is HomKind.HYPERBOLIC
    ell = X ** 4 + 3 * X ** 2 * Y ** 2 + Y ** 4
    assert homogeneous_class(ell).kind is HomKind.ELLIPTIC
    neither = X ** 2 * Y ** 2
    assert homogeneous_class(neither).kind is HomKind.NEITHER


def test_homogeneous_class_affine_invariance():
    h = X ** 3 * Y - X * Y ** 3
    rotated = h.compose_linear(
        Fraction(3, 5), Fraction(4, 5), Fraction(-4, 5), Fraction(3, 5)
    )
    assert homogeneous_class(rotated).kind is HomKind.HYPERBOLIC


def test_compactness_corpus():
    g = parse_polynomial("y*(x+3)*(x-y)*(y+x-3)")
    v = compactness_verdict(g)
    assert v.hessian_compact
    assert v.unbounded_component_class is HomKind.HYPERBOLIC

    q = parse_polynomial("x^2 + y^2 + y*(x^2 + y^2)")
    assert not compactness_verdict(q).hessian_compact


def test_classify_infinity():
    g = parse_polynomial("y*(x+3)*(x-y)*(y+x-3)")
    # Hess g_4 < 0 away from its factors: hyperbolic at a generic direction
    assert classify_infinity(g, (2, 1)) is PointClass.HYPERBOLIC
