"""Verification of the index-sum identity and godron/index bounds; full report."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict, is_dataclass
from fractions import Fraction

import numpy as np

from .polynomial import BivariatePoly, hessian
from .classify import CompactnessVerdict, compactness_verdict
from .rootfind import distinct_real_linear_factors
from .topology import (
    CurveTopology,
    SingularCurveError,
    TangentAtInfinityError,
    point_depth,
    projective_topology,
)
from .asymptotic import Godron, Tangency, find_godrons
from .sphere import (
    InfinitySingularPoint,
    appendix_linearization,
    index_at_infinity,
    projective_index,
    singular_points_at_infinity,
)


class PreconditionRefusal(ValueError):
    """A theorem hypothesis fails for this input; named reason attached."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class IdentityRecord:
    lhs: Fraction
    rhs: Fraction
    passed: bool
    epsilon: str                    # which of B+/B- hosts the asymptotic field
    chi: int
    p_interior: int
    p_exterior: int
    per_extension: dict | None = None  # n even: index sums of both extensions


@dataclass(frozen=True)
class BoundCheck:
    name: str
    limit: Fraction
    value: Fraction
    passed: bool
    applicable: bool
    note: str = ""


@dataclass
class StructureReport:
    input: str
    degree: int
    compactness: CompactnessVerdict | None = None
    topology: CurveTopology | None = None
    godrons: list[Godron] = field(default_factory=list)
    p_interior: int = 0
    p_exterior: int = 0
    infinity: list[InfinitySingularPoint] = field(default_factory=list)
    index_sum: Fraction | None = None
    identity: IdentityRecord | None = None
    bounds: list[BoundCheck] = field(default_factory=list)
    field_region: str | None = None      # "H in B-" or "E in B-"
    errors: dict = field(default_factory=dict)


def _is_squarefree_top(f: BivariatePoly) -> bool:
    n = f.degree
    fn = f.homogeneous_part(n)
    p = fn.restrict_line((1, 0), (0, 1))     # f_n(1, t)
    if p.is_zero():
        return False
    g = p.gcd(p.derivative())
    if g.degree > 0:
        return False
    x_mult = fn.degree - p.degree
    return x_mult <= 1


def _depth_zero_sign(f: BivariatePoly, top: CurveTopology, seed: int = 0):
    """Sign of Hess f at a point of nesting depth 0, away from the curve."""
    h = hessian(f)
    he = h.evaluator()
    extent = 1.0
    for c in top.components:
        arr = np.asarray(c.points, dtype=float)
        if len(arr):
            extent = max(extent, float(np.abs(arr).max()))
    for r in (2.0 * extent + 3.0, 5.0 * extent + 11.0):
        for j in range(24):
            th = 2 * math.pi * (j + 0.37) / 24
            x, y = r * math.cos(th), r * math.sin(th)
            v = he(x, y)
            local = max(
                (float(abs(cf)) * abs(x) ** i_ * abs(y) ** j_
                 for (i_, j_), cf in h.terms.items()),
                default=1.0,
            )
            if abs(v) < 1e-3 * local:
                continue  # too close to the curve for a trustworthy sign
            p3 = np.array([x, y, 1.0])
            p3 /= np.linalg.norm(p3)
            if point_depth(p3, top, seed) == 0:
                return (1 if v > 0 else -1), (x, y)
    raise PreconditionRefusal("no reliable depth-zero sample point found")


def verify_index_identity(
    f: BivariatePoly,
    seed: int = 0,
    top: CurveTopology | None = None,
    godrons: list[Godron] | None = None,
) -> IdentityRecord:
    """Index-sum identity: sum of indices of the projective extension over its
    singular points equals chi(B^eps) + (P_i - P_e)/2, with eps the sign
    region hosting the asymptotic field (where the Hessian is negative).

    Precomputed topology and godrons may be passed in to avoid re-tracing.
    """
    n = f.degree
    if n < 3:
        raise PreconditionRefusal("degree below 3")
    if not _is_squarefree_top(f):
        raise PreconditionRefusal("f_n not squarefree")
    if top is None:
        try:
            top = projective_topology(f, seed=seed)
        except TangentAtInfinityError as e:
            raise PreconditionRefusal("Hessian curve tangent to the line at infinity") from e
        except SingularCurveError as e:
            raise PreconditionRefusal("projective Hessian appears singular") from e
    if top.transversal_to_infinity is False and any(
        m > 1 for m in _equator_mults(f)
    ):
        raise PreconditionRefusal("Hessian curve tangent to the line at infinity")

    if godrons is None:
        godrons = find_godrons(f)
    p_i = sum(1 for g in godrons if g.tangency is Tangency.INTERIOR)
    p_e = len(godrons) - p_i

    # which side hosts the field
    if not top.components:
        he = hessian(f).evaluator()
        if he(0.382, 0.7614) > 0 and he(-1.3, 2.71) > 0:
            raise PreconditionRefusal("field domain empty")
        s0 = -1
    else:
        s0, _ = _depth_zero_sign(f, top, seed)
    if s0 < 0:
        epsilon, chi = "-", top.chi_B_minus
    else:
        epsilon, chi = "+", top.chi_B_plus

    pts = singular_points_at_infinity(f)
    pairs = [p for p in pts if p.equator_point[1] > 0
             or (p.equator_point[1] == 0 and p.equator_point[0] > 0)]
    per_ext = None
    if n % 2 == 1:
        lhs = Fraction(1, 2) * len(pairs)
    else:
        sums = {1: Fraction(0), 2: Fraction(0)}
        for p in pairs:
            lin = appendix_linearization(f, p)
            rule, _ = projective_index(f, p, field_choice=lin.node_field)
            sums[lin.node_field] += Fraction(rule)
        per_ext = {k: v for k, v in sums.items()}
        if sums[1] != sums[2]:
            raise PreconditionRefusal(
                "ambiguous extension assignment: extension index sums differ"
            )
        lhs = sums[1]

    rhs = Fraction(chi) + Fraction(p_i - p_e, 2)
    return IdentityRecord(
        lhs=lhs,
        rhs=rhs,
        passed=abs(lhs - rhs) < Fraction(1, 10**6),
        epsilon=epsilon,
        chi=chi,
        p_interior=p_i,
        p_exterior=p_e,
        per_extension=per_ext,
    )


def _equator_mults(f: BivariatePoly) -> list[int]:
    from .topology import _equator_data

    try:
        return _equator_data(f)[1]
    except Exception:
        return []


# convexity of traced components


def _convex_hull(points: np.ndarray) -> np.ndarray:
    pts = np.unique(points, axis=0)
    if len(pts) < 3:
        return pts
    pts = pts[np.lexsort((pts[:, 1], pts[:, 0]))]

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2:
                u = out[-1] - out[-2]
                v = p - out[-2]
                if u[0] * v[1] - u[1] * v[0] > 0:
                    break
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(pts[::-1])
    return np.asarray(lower[:-1] + upper[:-1])


def _hull_deviation(points: np.ndarray) -> float:
    """Max distance from the polyline to the boundary of its convex hull."""
    hull = _convex_hull(points)
    if len(hull) < 3:
        return 0.0
    best = np.full(len(points), np.inf)
    for i in range(len(hull)):
        a, b = hull[i], hull[(i + 1) % len(hull)]
        ab = b - a
        t = np.clip((points - a) @ ab / (ab @ ab), 0.0, 1.0)
        proj = a + t[:, None] * ab
        d = np.linalg.norm(points - proj, axis=1)
        best = np.minimum(best, d)
    return float(best.max())


def _is_convex_component(c) -> bool:
    arr = np.asarray(c.points, dtype=float)
    if len(arr) < 4:
        return True
    diam = float(np.linalg.norm(arr.max(axis=0) - arr.min(axis=0)))
    if diam == 0:
        return True
    return _hull_deviation(arr) < 1e-3 * diam


def bound_checks(f: BivariatePoly, rep: StructureReport) -> list[BoundCheck]:
    """All bound families: godron count, interior/exterior godron bounds,
    index-sum range, and the convex-exterior-oval godron bound."""
    n = f.degree
    k, _ = distinct_real_linear_factors(f.homogeneous_part(n))
    checks: list[BoundCheck] = []

    n_god = len(rep.godrons)
    lim = Fraction((n - 2) * (5 * n - 12))
    checks.append(BoundCheck("godron_count", lim, Fraction(n_god), n_god <= lim, True))

    tangent_free = rep.topology is not None
    lim_i = Fraction((n - 2) * (8 * n - 21) + k, 2)
    lim_e = 1 + Fraction((n - 2) * (8 * n - 21) - k, 2)
    checks.append(BoundCheck(
        "interior_godrons", lim_i, Fraction(rep.p_interior),
        rep.p_interior <= lim_i if tangent_free else True, tangent_free,
        "" if tangent_free else "hypotheses not met",
    ))
    checks.append(BoundCheck(
        "exterior_godrons", lim_e, Fraction(rep.p_exterior),
        rep.p_exterior <= lim_e if tangent_free else True, tangent_free,
        "" if tangent_free else "hypotheses not met",
    ))

    if rep.index_sum is not None and rep.topology is not None:
        if rep.topology.transversal_to_infinity:
            lim_s, note = Fraction(n - 2), "Hessian meets infinity transversally"
        else:
            mults = _equator_mults(f)
            if mults:
                lim_s, note = None, "hypotheses not met"
            else:
                lim_s, note = Fraction(n), "Hessian curve misses infinity"
        if lim_s is not None:
            checks.append(BoundCheck(
                "index_sum_range", lim_s, rep.index_sum,
                Fraction(0) <= rep.index_sum <= lim_s, True, note,
            ))
        else:
            checks.append(BoundCheck(
                "index_sum_range", Fraction(0), rep.index_sum, True, False, note))

    psp_ok = (
        rep.topology is not None
        and rep.field_region == "H in B-"
        and all(c.nesting_depth == 0 for c in rep.topology.components)
        and all(_is_convex_component(c) for c in rep.topology.components)
    )
    lim_psp = Fraction(3 * (n - 2) * (n - 3) + k)
    checks.append(BoundCheck(
        "convex_exterior_godron_bound", lim_psp, Fraction(n_god),
        n_god <= lim_psp if psp_ok else True, psp_ok,
        "" if psp_ok else "hypotheses not met",
    ))
    return checks


def full_report(f: BivariatePoly, seed: int = 0) -> StructureReport:
    """Run the whole pipeline with graceful degradation: a failed stage is
    recorded with its reason and the stages depending on it are skipped."""
    rep = StructureReport(input=str(f), degree=f.degree)

    try:
        rep.compactness = compactness_verdict(f)
    except Exception as e:
        rep.errors["compactness"] = str(e)

    try:
        rep.topology = projective_topology(f, seed=seed)
    except Exception as e:
        rep.errors["topology"] = str(e)

    try:
        rep.godrons = find_godrons(f)
        rep.p_interior = sum(1 for g in rep.godrons if g.tangency is Tangency.INTERIOR)
        rep.p_exterior = len(rep.godrons) - rep.p_interior
    except Exception as e:
        rep.errors["godrons"] = str(e)

    try:
        pts = singular_points_at_infinity(f)
        enriched = []
        total = Fraction(0)
        for p in pts:
            res = index_at_infinity(f, p)
            idx = res.value
            if res.snapped is not None:
                total += Fraction(res.snapped).limit_denominator(2)
            else:
                total += Fraction(res.raw).limit_denominator(10**6)
            rule = 0.5 if f.degree % 2 == 1 else 1.0
            enriched.append(InfinitySingularPoint(
                p.equator_point, p.linear_factor, p.multiplicity,
                index_Y=idx, index_projective=rule,
                a_coeff=p.a_coeff,
            ))
        rep.infinity = enriched
        rep.index_sum = total
    except Exception as e:
        rep.errors["infinity"] = str(e)

    if rep.topology is not None:
        try:
            if rep.topology.components:
                s0, _ = _depth_zero_sign(f, rep.topology, seed)
                rep.field_region = "H in B-" if s0 < 0 else "E in B-"
            else:
                he = hessian(f).evaluator()
                rep.field_region = (
                    "E in B-" if he(0.382, 0.7614) > 0 else "H in B-"
                )
        except Exception as e:
            rep.errors["field_region"] = str(e)

    if "topology" not in rep.errors and "godrons" not in rep.errors:
        try:
            rep.identity = verify_index_identity(
                f, seed=seed, top=rep.topology, godrons=rep.godrons
            )
        except PreconditionRefusal as e:
            rep.errors["identity"] = e.reason
        except Exception as e:
            rep.errors["identity"] = str(e)

    try:
        rep.bounds = bound_checks(f, rep)
    except Exception as e:
        rep.errors["bounds"] = str(e)
    return rep


# serialization


def _num(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return float(f"{v:.12g}")
    return v


def to_jsonable(obj):
    """Recursively convert a report (or any piece of one) to JSON-ready data:
    exact rationals as strings, floats at 12 significant digits."""
    if isinstance(obj, (Fraction, float, int, str, bool)) or obj is None:
        return _num(obj)
    if isinstance(obj, np.ndarray):
        return None  # internal sphere lifts are not part of the document
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if is_dataclass(obj) and not isinstance(obj, type):
        out = {}
        for name in obj.__dataclass_fields__:
            out[name] = to_jsonable(getattr(obj, name))
        return out
    if hasattr(obj, "value") and hasattr(obj, "name"):   # enums
        return obj.value
    if hasattr(obj, "__dict__"):
        return {k: to_jsonable(v) for k, v in vars(obj).items() if not k.startswith("_")}
    return str(obj)
