"""Point and polynomial classification: elliptic / parabolic / hyperbolic."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .polynomial import BivariatePoly, DegreeError, hessian, homogeneous_decomposition
from .rootfind import distinct_real_linear_factors, real_roots

PARABOLIC_TOL = 1e-9


class PointClass(enum.Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


class HomKind(enum.Enum):
    HYPERBOLIC = "hyperbolic"
    ELLIPTIC = "elliptic"
    NEITHER = "neither"


@dataclass(frozen=True)
class HomogeneousClass:
    kind: HomKind
    witness: str


@dataclass(frozen=True)
class CompactnessVerdict:
    hessian_compact: bool
    unbounded_component_class: HomKind | None
    reason: str


def classify_point(f: BivariatePoly, p, tol: float = PARABOLIC_TOL) -> PointClass:
    """Class of a finite point by the sign of Hess f there.

    Rational coordinates are decided exactly; float coordinates are decided
    numerically with `tol` (relative to the Hessian coefficient scale), so a
    PARABOLIC result for float input means "numerically parabolic".
    """
    h = hessian(f)
    px, py = p
    exact = not (isinstance(px, float) or isinstance(py, float))
    if exact:
        v = h.eval(px, py)
        if v == 0:
            return PointClass.PARABOLIC
        return PointClass.ELLIPTIC if v > 0 else PointClass.HYPERBOLIC
    v = h.evaluator()(float(px), float(py))
    s = h.coeff_scale() * max(1.0, abs(float(px)), abs(float(py))) ** max(h.degree, 0)
    if abs(v) < tol * s:
        return PointClass.PARABOLIC
    return PointClass.ELLIPTIC if v > 0 else PointClass.HYPERBOLIC


def classify_infinity(f: BivariatePoly, direction) -> PointClass:
    """Class of the point at infinity in the given direction: sign of Hess f_n."""
    n = f.degree
    if n < 3:
        raise DegreeError("classification at infinity needs degree >= 3")
    if (2 * n - 4) % 2 != 0:  # cannot happen; kept for the documented contract
        raise DegreeError("unlabelable at infinity")
    fn = f.homogeneous_part(n)
    hn = hessian(fn)
    u, v = direction
    exact = not (isinstance(u, float) or isinstance(v, float))
    if exact:
        val = hn.eval(u, v)
        if val == 0:
            return PointClass.PARABOLIC
        return PointClass.ELLIPTIC if val > 0 else PointClass.HYPERBOLIC
    val = hn.evaluator()(float(u), float(v))
    if abs(val) < PARABOLIC_TOL * hn.coeff_scale():
        return PointClass.PARABOLIC
    return PointClass.ELLIPTIC if val > 0 else PointClass.HYPERBOLIC


def homogeneous_class(h: BivariatePoly) -> HomogeneousClass:
    """Hyperbolic / elliptic / neither, per the sign behaviour of Hess h.

    Hyperbolic: Hess h has no real linear factors and is <= 0 everywhere;
    elliptic: no real linear factors and >= 0.  With no real linear factors
    the sign of Hess h is constant away from the origin, so one exact sample
    decides the split.
    """
    if h.is_zero() or not h.is_homogeneous():
        raise ValueError("input must be a nonzero homogeneous polynomial")
    if h.degree < 2:
        return HomogeneousClass(HomKind.NEITHER, "degree below 2")
    hh = hessian(h)
    if hh.is_zero():
        return HomogeneousClass(HomKind.NEITHER, "degenerate: Hessian is zero")
    k, _simple = distinct_real_linear_factors(hh)
    if k > 0:
        return HomogeneousClass(
            HomKind.NEITHER, f"Hessian has {k} distinct real linear factor(s)"
        )
    v = hh.eval(1, 0)
    if v == 0:
        v = hh.eval(0, 1)
    if v < 0:
        return HomogeneousClass(HomKind.HYPERBOLIC, "Hessian negative, no real linear factors")
    return HomogeneousClass(HomKind.ELLIPTIC, "Hessian positive, no real linear factors")


def compactness_verdict(f: BivariatePoly) -> CompactnessVerdict:
    """Is the Hessian curve of f compact, and what class is the unbounded region?

    If f_n is hyperbolic or elliptic the curve is compact and the unbounded
    complement component has the same class.  Otherwise compactness is decided
    by whether Hess f_n has real zeros (equator intersections), and the class
    field is left unset.
    """
    n = f.degree
    if n < 3:
        raise DegreeError("verdict needs degree >= 3")
    fn = f.homogeneous_part(n)
    hc = homogeneous_class(fn)
    if hc.kind in (HomKind.HYPERBOLIC, HomKind.ELLIPTIC):
        return CompactnessVerdict(True, hc.kind, f"top part is {hc.kind.value}")
    hn = hessian(fn)
    if hn.is_zero():
        return CompactnessVerdict(False, None, "degenerate top part: Hess f_n is zero")
    k, _ = distinct_real_linear_factors(hn)
    if k == 0:
        return CompactnessVerdict(
            True, None, "Hess f_n has no real zeros; curve misses the line at infinity"
        )
    return CompactnessVerdict(
        False, None, f"Hess f_n vanishes along {k} real direction(s): curve reaches infinity"
    )
