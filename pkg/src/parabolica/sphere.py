"""Extension of the asymptotic direction fields to the Poincare sphere.

The second fundamental form of f pulls back along the central projections to
an analytic quadratic differential form on the sphere whose equator is an
integral curve.  This module builds that form exactly, locates the singular
points on the equator, computes half-integer winding indices of the line
fields around them, and runs the linearization check at each point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .polynomial import (
    BivariatePoly,
    DegreeError,
    TrivariateHomogeneousPoly,
    ZeroPolynomialError,
    hessian,
    homogeneous_decomposition,
    projective_hessian,
)
from .rootfind import distinct_real_linear_factors, real_roots

TAU = 2 * math.pi
SNAP_TOL = 0.05


class FlatPointError(ValueError):
    pass


class RepeatedFactorError(ValueError):
    pass


class InsufficientSamplingError(RuntimeError):
    pass


@dataclass(frozen=True)
class EdlaForm:
    """Coefficient polynomials of the extended quadratic differential form.

    The form is the 3x3 block matrix with entries built from
    (w^2 F_uu, w^2 F_uv, w^2 F_vv, w A, w B, S); variables are named (u, v, w)
    but stored with the generic (x, y, z) slots of TrivariateHomogeneousPoly.
    """

    n: int
    F: TrivariateHomogeneousPoly
    A: TrivariateHomogeneousPoly
    B: TrivariateHomogeneousPoly
    S: TrivariateHomogeneousPoly


@dataclass
class InfinitySingularPoint:
    equator_point: tuple[float, float, float]   # (u, v, 0), u^2 + v^2 = 1
    linear_factor: tuple[Fraction, Fraction] | tuple[float, float]  # (a, b) for a*x + b*y
    multiplicity: int
    index_Y: float | None = None
    index_projective: float | None = None
    a_coeff: float | None = None

    @property
    def antipode(self) -> tuple[float, float, float]:
        u, v, w = self.equator_point
        return (-u, -v, -w)

    @property
    def simple(self) -> bool:
        return self.multiplicity == 1


@dataclass(frozen=True)
class IndexResult:
    raw: float
    snapped: float | None   # nearest multiple of 1/2, None if off by > SNAP_TOL
    samples: int

    @property
    def value(self) -> float:
        return self.snapped if self.snapped is not None else self.raw


def edla(f: BivariatePoly) -> EdlaForm:
    """Construct F, A, B, S exactly and assert the structural identities."""
    n = f.degree
    if n < 3:
        raise DegreeError("extension to the sphere needs degree >= 3")
    parts = homogeneous_decomposition(f)
    F = TrivariateHomogeneousPoly(
        {(i, j, n - i - j): c for d, p in parts.items() for (i, j), c in p.terms.items()}, n
    )
    Fuu, Fuv, Fvv = F.diff("x").diff("x"), F.diff("x").diff("y"), F.diff("y").diff("y")
    u = TrivariateHomogeneousPoly({(1, 0, 0): 1}, 1)
    v = TrivariateHomogeneousPoly({(0, 1, 0): 1}, 1)
    A = -(u * Fuu) - (v * Fuv)
    B = -(u * Fuv) - (v * Fvv)
    S = u * u * Fuu + 2 * (u * v * Fuv) + v * v * Fvv

    # S must equal sum_k k(k-1) w^{n-k} f_k, coefficient for coefficient
    S_alt = TrivariateHomogeneousPoly(
        {
            (i, j, n - d): c * d * (d - 1)
            for d, p in parts.items()
            if d >= 2
            for (i, j), c in p.terms.items()
        },
        n,
    )
    if S != S_alt:
        raise AssertionError("internal: S identity failed")  # build-time bug
    return EdlaForm(n, F, A, B, S)


def chart_form(e: EdlaForm) -> tuple[BivariatePoly, BivariatePoly, BivariatePoly]:
    """Coefficients (a, b, c) of the chart u=1 form a dv^2 + 2b dv dw + c dw^2.

    a = w^2 F_vv(1,v,w), b = w B(1,v,w), c = S(1,v,w); returned as exact
    polynomials in (v, w).
    """
    w = BivariatePoly({(0, 1): 1})
    Fvv = e.F.diff("y").diff("y").dehomogenize("x")
    a = w * w * Fvv
    b = w * e.B.dehomogenize("x")
    c = e.S.dehomogenize("x")
    return a, b, c


def chart_discriminant_identity(f: BivariatePoly) -> bool:
    """Exact check: b^2 - a*c == -w^2 * H_f(1, v, w) in the chart u = 1."""
    e = edla(f)
    a, b, c = chart_form(e)
    w2 = BivariatePoly({(0, 2): 1})
    hf_chart = projective_hessian(f).dehomogenize("x")
    return b * b - a * c == -(w2 * hf_chart)


def singular_points_at_infinity(f: BivariatePoly) -> list[InfinitySingularPoint]:
    """Equator points where f_n vanishes, paired with their antipodes.

    There are 2k of them, k the number of distinct real linear factors of f_n.
    """
    n = f.degree
    if n < 3:
        raise DegreeError("degree >= 3 required")
    fn = f.homogeneous_part(n)
    if fn.is_zero():
        raise ZeroPolynomialError("zero top homogeneous part")
    pts: list[InfinitySingularPoint] = []
    p = fn.restrict_line((1, 0), (0, 1))     # f_n(1, t)
    if not p.is_zero():
        for r in real_roots(p):
            t = r.midpoint
            norm = math.hypot(1.0, t)
            base = (1.0 / norm, t / norm, 0.0)
            # root t of f_n(1,t) corresponds to the factor y - t*x
            lo_mid = (r.low + r.high) / 2
            factor = (-lo_mid, Fraction(1))
            for sgn in (1, -1):
                pts.append(
                    InfinitySingularPoint(
                        (sgn * base[0], sgn * base[1], 0.0), factor, r.multiplicity
                    )
                )
    if fn.eval(0, 1) == 0:
        # factor x; multiplicity = degree drop of f_n(1, t)
        mult = fn.degree - (p.degree if not p.is_zero() else 0)
        for sgn in (1, -1):
            pts.append(
                InfinitySingularPoint((0.0, float(sgn), 0.0), (Fraction(1), Fraction(0)), mult)
            )
    return pts


# ---------------------------------------------------------------------------
# winding indices


def _solutions(a: float, b: float, c: float) -> list[tuple[float, int]]:
    """Direction angles (mod pi) of a dv^2 + 2b dv dw + c dw^2 = 0, labeled.

    Returns [(angle, k)] where k in {1, 2} follows the sign convention of the
    separated fields: branch k has direction (c, -b + (-1)^k sqrt(disc)).
    """
    disc = b * b - a * c
    if disc < 0:
        return []
    sq = math.sqrt(disc)
    out = []
    for k in (1, 2):
        sigma = -1.0 if k == 1 else 1.0
        # two algebraically equivalent representations; pick the stabler one
        dv1, dw1 = c, -b + sigma * sq
        dv2, dw2 = -b - sigma * sq, a
        if math.hypot(dv1, dw1) >= math.hypot(dv2, dw2):
            dv, dw = dv1, dw1
        else:
            dv, dw = dv2, dw2
        if dv == 0 and dw == 0:
            # flat point of the form on the loop
            raise FlatPointError("quadratic form vanishes on the sampling circle")
        out.append((math.atan2(dw, dv) % math.pi, k))
    return out


def _angle_step(prev: float, new: float) -> float:
    d = (new - prev) % math.pi
    if d > math.pi / 2:
        d -= math.pi
    return d


def line_field_index(
    form,
    center=(0.0, 0.0),
    radius: float = 0.05,
    samples: int = 512,
    selector=None,
    max_samples: int = 2**14,
) -> IndexResult:
    """Winding index of the line field of a binary quadratic form around a loop.

    `form` is a triple (a, b, c) of BivariatePoly in the local chart
    coordinates, or a callable (x, y) -> (a, b, c) floats.  The circle is
    walked once; at each sample the quadratic is solved and the branch is
    continued in the RP1 metric (or chosen by `selector(point, labeled)`),
    signed angle increments are accumulated, and the total is divided by 2*pi.
    The result is snapped to the nearest half integer when within 0.05.
    """
    if callable(form):
        coeff = form
    else:
        evs = [p.evaluator() for p in form]
        coeff = lambda x, y: (evs[0](x, y), evs[1](x, y), evs[2](x, y))

    cx, cy = center
    while True:
        total = 0.0
        prev = None
        first = None
        ok = True
        for i in range(samples + 1):
            th = TAU * i / samples
            x, y = cx + radius * math.cos(th), cy + radius * math.sin(th)
            a, b, c = coeff(x, y)
            sols = _solutions(a, b, c)
            if not sols:
                raise FlatPointError("no real direction on the sampling circle")
            if selector is not None:
                ang = selector((x, y), sols, prev)
            elif prev is None:
                ang = sols[0][0]
            else:
                ang = min((s[0] for s in sols), key=lambda s: abs(_angle_step(prev, s)))
            if prev is not None:
                d = _angle_step(prev, ang)
                if abs(d) > math.pi / 2 - 1e-9:
                    ok = False
                    break
                total += d
            else:
                first = ang
            prev = ang
        if ok:
            break
        samples *= 2
        if samples > max_samples:
            raise InsufficientSamplingError("branch jump persists at maximum sampling")
    raw = total / TAU
    snapped = round(raw * 2) / 2
    if abs(snapped - raw) > SNAP_TOL:
        snapped = None
    return IndexResult(raw, snapped, samples)


def _branch_selector(k: int, n: int, projective: bool):
    """Selector keeping branch k; in projective mode the label swaps for w<0
    when n is even (the extension is assembled from the upper hemisphere)."""

    def pick(point, sols, prev):
        kk = k
        if projective and n % 2 == 0 and point[1] < 0:
            kk = 3 - k
        for ang, lab in sols:
            if lab == kk:
                return ang
        return sols[0][0]

    return pick


def _rotate_to_x_axis(direction) -> tuple[Fraction, Fraction]:
    """Exact rational (cos, sin) on the unit circle approximating the rotation
    that sends `direction` to (1, 0); exact when the half-angle tangent is a
    small rational (Pythagorean rationalization)."""
    u0, v0 = float(direction[0]), float(direction[1])
    theta = math.atan2(v0, u0)
    t = Fraction(math.tan(theta / 2)).limit_denominator(10**8)
    c = (1 - t * t) / (1 + t * t)
    s = 2 * t / (1 + t * t)
    return c, s


def rotated_for_point(f: BivariatePoly, point) -> tuple[BivariatePoly, Fraction, Fraction]:
    """Rotate coordinates so the equator point maps to (1, 0, 0); exact rational
    rotation matrix, approximate angle when the direction is irrational."""
    c, s = _rotate_to_x_axis(point[:2])
    # substitute (x, y) -> R(x, y) with R the rotation taking (1,0) to the point
    g = f.compose_linear(c, -s, s, c)
    return g, c, s


def index_at_infinity(
    f: BivariatePoly,
    point: InfinitySingularPoint,
    k: int = 1,
    radius: float = 0.05,
    samples: int = 512,
) -> IndexResult:
    """Poincare index of the sphere field Y_k at a singular point at infinity."""
    g, _, _ = rotated_for_point(f, point.equator_point)
    form = chart_form(edla(g))
    return line_field_index(
        form, (0.0, 0.0), radius, samples, selector=_branch_selector(k, f.degree, False)
    )


def projective_index(
    f: BivariatePoly,
    point: InfinitySingularPoint,
    field_choice: int = 1,
    radius: float = 0.05,
    samples: int = 512,
) -> tuple[float, IndexResult]:
    """Index of a projective extension at [p]: 1/2 for odd n, 1 for even n.

    Returns (parity-rule value, numeric corroboration); a ValueError is raised
    when the numeric winding disagrees with the parity rule beyond tolerance.
    """
    n = f.degree
    rule = 0.5 if n % 2 == 1 else 1.0
    g, _, _ = rotated_for_point(f, point.equator_point)
    form = chart_form(edla(g))
    res = line_field_index(
        form, (0.0, 0.0), radius, samples, selector=_branch_selector(field_choice, n, True)
    )
    if abs(res.raw - rule) > 0.05:
        raise ValueError(
            f"projective index mismatch: parity rule {rule}, winding {res.raw:.4f}"
        )
    return rule, res


# ---------------------------------------------------------------------------
# the homogeneous index formula


def arnold_index(h: BivariatePoly) -> Fraction:
    """Index at the origin of the asymptotic cross field of a homogeneous
    polynomial: 1 - (1/4) * #{circle zeros of h}."""
    if h.is_zero() or not h.is_homogeneous():
        raise ValueError("input must be a nonzero homogeneous polynomial")
    k, _ = distinct_real_linear_factors(h)
    count = 2 * k
    if count % 2 != 0:
        raise AssertionError("internal: circle zeros must pair antipodally")
    return Fraction(1) - Fraction(count, 4)


def second_fundamental_index(
    h: BivariatePoly, radius: float = 1.0, samples: int = 1024
) -> IndexResult:
    """Winding of the asymptotic line field of the graph of h around the origin.

    Defined only when the discriminant h_xy^2 - h_xx h_yy is nonnegative on
    the whole loop (the graph is hyperbolic there); otherwise the branch has
    no real continuation and a FlatPointError is raised.
    """
    axx = h.diff("x").diff("x").evaluator()
    axy = h.diff("x").diff("y").evaluator()
    ayy = h.diff("y").diff("y").evaluator()

    def coeff(x, y):
        return axx(x, y), axy(x, y), ayy(x, y)

    n_neg = 0
    for i in range(samples):
        th = TAU * i / samples
        a, b, c = coeff(radius * math.cos(th), radius * math.sin(th))
        if b * b - a * c < 0:
            n_neg += 1
    if n_neg == 0:
        return line_field_index(coeff, (0.0, 0.0), radius, samples)
    # the asymptotic branch has no real continuation through an elliptic arc,
    # and the principal-axis winding is not a substitute: its index is not
    # invariant under linear changes of coordinates, so it can disagree with
    # the asymptotic index whenever the loop leaves the hyperbolic domain
    if n_neg == samples:
        raise FlatPointError("form is definite on the whole sampling loop")
    raise FlatPointError("sampling loop leaves the hyperbolic domain")


# ---------------------------------------------------------------------------
# linearization at a singular point at infinity


@dataclass(frozen=True)
class LinearizationCheck:
    a_coeff: Fraction
    exact_rotation: bool
    DY1: tuple[tuple[float, float], tuple[float, float]]
    DY2: tuple[tuple[float, float], tuple[float, float]]
    eigenvalues: dict[int, tuple[float, float]]
    node_field: int
    identity_residual: float     # |T1*T2 - 4*S*F_vv| at the point
    identity_exact: bool


def appendix_linearization(f: BivariatePoly, point: InfinitySingularPoint) -> LinearizationCheck:
    """Linearize the separated sphere fields at a simple singular point.

    Coordinates are rotated so the defining linear factor becomes y and the
    point becomes (1, 0, 0); the field having a node there is Y2 when the
    normalized coefficient a_{n-1,1} is positive and Y1 when negative.
    """
    if not point.simple:
        raise RepeatedFactorError("repeated factor: linearization undefined")
    n = f.degree
    g, c, s = rotated_for_point(f, point.equator_point)
    gn = g.homogeneous_part(n)
    a = gn.coefficient(n - 1, 1)
    stray = gn.coefficient(n, 0)     # ~0: residue of an approximate rotation
    exact_rot = stray == 0
    if not exact_rot and abs(float(stray)) > 1e-6 * g.coeff_scale():
        raise ValueError("rotation failed to align the factor with y")
    if a == 0:
        raise RepeatedFactorError("repeated factor: a_{n-1,1} vanishes")

    e = edla(g)
    S_chart = e.S.dehomogenize("x")          # S(1, v, w), variables (v, w)
    Fvv_chart = e.F.diff("y").diff("y").dehomogenize("x")
    B_chart = e.B.dehomogenize("x")
    hf_chart = projective_hessian(g).dehomogenize("x")

    B0 = float(B_chart.eval(0, 0))
    Hf0 = float(hf_chart.eval(0, 0))
    sq = math.sqrt(max(-Hf0, 0.0))
    T = {k: -2 * B0 + 2 * (-1) ** k * sq for k in (1, 2)}

    S0 = float(S_chart.eval(0, 0))
    Fvv0 = float(Fvv_chart.eval(0, 0))
    resid = abs(T[1] * T[2] - 4 * S0 * Fvv0)
    # polynomial identity: T1*T2 = 4 (B^2 + H_f) = 4 S F_vv; the chart
    # polynomials always have rational coefficients, so check it exactly
    ident_exact = B_chart * B_chart + hf_chart == Fvv_chart * S_chart
    if ident_exact:
        resid = 0.0   # float sqrt noise; the identity holds in Q
    elif not (resid < 1e-9 * max(1.0, abs(S0 * Fvv0), B0 * B0)):
        raise AssertionError("internal: T1*T2 = 4*S*F_vv residual too large")

    a_f = float(a)
    dS_dw = float(S_chart.diff("y").eval(0, 0))
    DY = {}
    eig = {}
    for k in (1, 2):
        t_k = 2 * (n - 1) * a_f + 2 * (-1) ** k * (n - 1) * abs(a_f)
        DY[k] = ((2 * n * (n - 1) * a_f, 2 * dS_dw), (0.0, t_k))
        eig[k] = (2 * n * (n - 1) * a_f, t_k)
    node_field = 2 if a > 0 else 1
    return LinearizationCheck(
        a_coeff=a,
        exact_rotation=exact_rot,
        DY1=DY[1],
        DY2=DY[2],
        eigenvalues=eig,
        node_field=node_field,
        identity_residual=resid,
        identity_exact=bool(ident_exact),
    )
