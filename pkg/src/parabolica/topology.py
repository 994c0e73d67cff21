"""Topology of the Hessian curve: tracing, ovals, nesting, Euler characteristics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .polynomial import BivariatePoly, DegreeError, hessian, homogeneous_decomposition
from .rootfind import real_roots
from .polynomial import UnivariatePoly


class SingularCurveError(ValueError):
    """Grid cell with four persistent sign changes: singular curve suspected."""


class TangentAtInfinityError(ValueError):
    """The Hessian curve is tangent to the line at infinity (even multiplicity)."""


@dataclass
class CurveComponent:
    points: list[tuple[float, float]]
    chart: str
    closed: bool
    nesting_depth: int = 0
    sphere_points: np.ndarray | None = field(default=None, repr=False)


@dataclass
class CurveTopology:
    components: list[CurveComponent]
    P: int
    N: int
    pseudo_line: bool
    transversal_to_infinity: bool
    chi_B_plus: int
    chi_B_minus: int


# affine tracing


def _local_scale(p: BivariatePoly, x: float, y: float) -> float:
    s = max(
        (float(abs(c)) * abs(x) ** i * abs(y) ** j for (i, j), c in p.terms.items()),
        default=0.0,
    )
    return max(s, p.coeff_scale() * 1e-6, 1e-300)


def _refine_onto_curve(pe, pxe, pye, p: BivariatePoly, x: float, y: float):
    """Newton steps along the gradient; returns refined point or None."""
    for _ in range(40):
        v = pe(x, y)
        if abs(v) < 1e-12 * _local_scale(p, x, y):
            return x, y
        gx, gy = pxe(x, y), pye(x, y)
        g2 = gx * gx + gy * gy
        if g2 == 0 or not np.isfinite(g2):
            return None
        x, y = x - v * gx / g2, y - v * gy / g2
        if not (np.isfinite(x) and np.isfinite(y)):
            return None
    if abs(pe(x, y)) < 1e-10 * _local_scale(p, x, y):
        return x, y
    return None


def _grid_seeds(pe, box, n: int):
    """Sign-change edge midpoints on an n x n grid; also the ambiguous cells."""
    x0, x1, y0, y1 = box
    xs = np.linspace(x0, x1, n + 1)
    ys = np.linspace(y0, y1, n + 1)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    V = pe(X, Y)
    S = np.sign(V)
    S[S == 0] = 1
    seeds = []
    hedge = S[:-1, :] * S[1:, :] < 0   # edges along x
    vedge = S[:, :-1] * S[:, 1:] < 0   # edges along y
    for i, j in zip(*np.nonzero(hedge)):
        t = V[i, j] / (V[i, j] - V[i + 1, j])
        seeds.append((xs[i] + t * (xs[i + 1] - xs[i]), ys[j]))
    for i, j in zip(*np.nonzero(vedge)):
        t = V[i, j] / (V[i, j] - V[i, j + 1])
        seeds.append((xs[i], ys[j] + t * (ys[j + 1] - ys[j])))
    # cells with all four edges crossed
    amb = hedge[:, :-1] & hedge[:, 1:] & vedge[:-1, :] & vedge[1:, :]
    ambiguous = [
        (xs[i], xs[i + 1], ys[j], ys[j + 1]) for i, j in zip(*np.nonzero(amb))
    ]
    return seeds, ambiguous


def _check_ambiguous(pe, cell, depth: int = 0):
    """Subdivide a four-crossing cell; error if the pattern survives twice."""
    if depth >= 2:
        raise SingularCurveError(
            f"singular curve suspected near cell {tuple(round(c, 6) for c in cell)}"
        )
    x0, x1, y0, y1 = cell
    _, amb = _grid_seeds(pe, cell, 2)
    for sub in amb:
        _check_ambiguous(pe, sub, depth + 1)


def _trace_from(pe, pxe, pye, p, seed, box, step, visited_ok):
    """Follow the curve from a refined seed in one direction.

    Returns (polyline, closed flag).  Open branches stop at the box boundary.
    """
    x0, x1, y0, y1 = box

    def inside(x, y):
        return x0 - step <= x <= x1 + step and y0 - step <= y <= y1 + step

    def tangent(x, y):
        gx, gy = pxe(x, y), pye(x, y)
        nrm = math.hypot(gx, gy)
        if nrm < 1e-13 * max(p.coeff_scale(), 1.0):
            raise SingularCurveError(
                f"singular curve suspected: vanishing gradient near ({x:.6g}, {y:.6g})"
            )
        return -gy / nrm, gx / nrm

    def march(start, d0):
        pts = [start]
        x, y = start
        tx, ty = d0
        max_steps = int(20 * (abs(x1 - x0) + abs(y1 - y0)) / step) + 100
        for k in range(max_steps):
            px_, py_ = x + step * tx, y + step * ty
            ref = _refine_onto_curve(pe, pxe, pye, p, px_, py_)
            if ref is None:
                break
            nx_, ny_ = tangent(*ref)
            if nx_ * tx + ny_ * ty < 0:
                nx_, ny_ = -nx_, -ny_
            x, y = ref
            tx, ty = nx_, ny_
            pts.append((x, y))
            if k > 3 and math.hypot(x - start[0], y - start[1]) < 0.8 * step:
                return pts, True
            if not inside(x, y):
                return pts, False
        return pts, False

    tx, ty = tangent(*seed)
    fwd, closed = march(seed, (tx, ty))
    if closed:
        fwd.append(seed)
        return fwd, True
    bwd, _ = march(seed, (-tx, -ty))
    return list(reversed(bwd))[:-1] + fwd, False


def trace_curve(
    p: BivariatePoly,
    box: tuple = (-4.0, 4.0, -4.0, 4.0),
    resolution: int = 600,
) -> list[CurveComponent]:
    """Trace the real curve p = 0 inside the box.

    Grid sign changes give seed points; each seed is refined onto the curve
    and the component followed by a predictor-corrector march.  Seeds closer
    than a cell diagonal to an already-traced component are dropped.
    """
    if p.is_zero():
        raise ValueError("cannot trace the zero polynomial")
    pe = p.evaluator()
    pxe, pye = p.diff("x").evaluator(), p.diff("y").evaluator()
    x0, x1, y0, y1 = map(float, box)
    step = max(x1 - x0, y1 - y0) / resolution

    seeds, ambiguous = _grid_seeds(pe, (x0, x1, y0, y1), resolution)
    for cell in ambiguous:
        _check_ambiguous(pe, cell)

    components: list[CurveComponent] = []
    traced: list[np.ndarray] = []
    for raw in seeds:
        seed = _refine_onto_curve(pe, pxe, pye, p, *raw)
        if seed is None:
            continue
        skip = False
        for arr in traced:
            d2 = (arr[:, 0] - seed[0]) ** 2 + (arr[:, 1] - seed[1]) ** 2
            if d2.min() < (1.5 * step) ** 2:
                skip = True
                break
        if skip:
            continue
        pts, closed = _trace_from(pe, pxe, pye, p, seed, (x0, x1, y0, y1), 0.5 * step, None)
        if len(pts) < 3:
            continue
        components.append(CurveComponent(pts, "xy", closed))
        traced.append(np.asarray(pts))
    return components


# line at infinity


def _equator_data(f: BivariatePoly):
    """Real directions where the Hessian curve meets infinity.

    Returns (angles in [0, pi), multiplicities) from the real linear factors
    of Hess f_n, covering a possible factor x (direction pi/2) separately.
    """
    n = f.degree
    fn = f.homogeneous_part(n)
    h_top = hessian(fn)
    if h_top.is_zero():
        raise DegeneracyError("Hess f_n vanishes identically: no transversality data")
    # h_top(1, t): roots t give directions atan(t); leading drop = factor x
    coeffs = [h_top.coefficient((2 * n - 4) - j, j) for j in range(2 * n - 3)]
    u = UnivariatePoly(coeffs)
    angles, mults = [], []
    for r in real_roots(u):
        angles.append(math.atan(r.midpoint) % math.pi)
        mults.append(r.multiplicity)
    x_mult = (2 * n - 4) - u.degree
    if x_mult > 0:
        angles.append(math.pi / 2)
        mults.append(x_mult)
    return angles, mults


class DegeneracyError(ValueError):
    pass


# nesting on the sphere


def _semicircle_crossings(circle: np.ndarray, phat: np.ndarray, w: np.ndarray) -> int:
    """Transversal crossings of a closed spherical polyline with the half
    great circle {cos t * phat + sin t * w : t in [0, pi]}."""
    nrm = np.cross(phat, w)
    s = circle @ nrm
    sign = np.sign(s)
    sign[sign == 0] = 1
    flips = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    count = 0
    for i in flips:
        a, b = circle[i], circle[i + 1]
        t = s[i] / (s[i] - s[i + 1])
        x = a + t * (b - a)
        if x @ w > 0:
            count += 1
    return count


def _inside_oval(point3: np.ndarray, circle: np.ndarray, rng: np.random.Generator) -> bool:
    """Point-in-oval parity on RP^2 via the lifted circle.

    The point is on the disk side iff a semicircle from its lift to the
    antipode crosses one lift of the oval an odd number of times.  Three
    random semicircles vote.
    """
    votes = 0
    for _ in range(3):
        v = rng.normal(size=3)
        v -= (v @ point3) * point3
        v /= np.linalg.norm(v)
        votes += _semicircle_crossings(circle, point3, v) % 2
    return votes >= 2


def _lift(points, sign: float) -> np.ndarray:
    arr = np.asarray(points, dtype=float)
    xyz = np.column_stack([arr[:, 0], arr[:, 1], np.ones(len(arr))])
    xyz /= np.linalg.norm(xyz, axis=1)[:, None]
    return sign * xyz


def _equator_point(angle: float) -> np.ndarray:
    return np.array([math.cos(angle), math.sin(angle), 0.0])


def _glue_components(open_comps, angles):
    """Join unbounded affine branches through the line at infinity.

    Each open branch ends heading toward some direction theta or theta+pi with
    theta an equator angle; at a simple equator point the branch arriving with
    direction d continues as the branch leaving with direction -d, on the
    opposite hemisphere of the lift.  Returns closed spherical loops together
    with the participating affine polylines, or None when the matching is
    inconsistent (box too small).
    """
    ends = []  # (comp index, which end, direction angle in [0, 2pi))
    for ci, comp in enumerate(open_comps):
        for which in (0, -1):
            x, y = comp.points[which]
            ends.append([ci, which, math.atan2(y, x) % (2 * math.pi)])
    # assign each end to the nearest equator direction (theta or theta + pi)
    slots: dict[tuple[int, int], list] = {}
    for e in ends:
        best, bd = None, None
        for ai, th in enumerate(angles):
            for half in (0, 1):
                d = abs((e[2] - (th + half * math.pi) + math.pi) % (2 * math.pi) - math.pi)
                if bd is None or d < bd:
                    best, bd = (ai, half), d
        if bd > 0.35:
            return None
        slots.setdefault(best, []).append(e)
    for key, lst in slots.items():
        if len(lst) != 1:
            return None  # transversal simple point takes one arriving branch per side
    for ai in range(len(angles)):
        if (ai, 0) not in slots or (ai, 1) not in slots:
            return None

    # walk the gluing: follow a branch, jump at infinity to the opposite side
    used = set()
    loops = []
    for start_key in list(slots):
        if start_key in used:
            continue
        loop_pts = []
        members = []
        sign = 1.0
        key = start_key
        closed_ok = False
        first_ci, first_end = slots[start_key][0][0], slots[start_key][0][1]
        while True:
            used.add(key)
            ci, which, _ = slots[key][0]
            comp = open_comps[ci]
            pts = comp.points if which == 0 else list(reversed(comp.points))
            loop_pts.append(_lift(pts, sign))
            members.append(ci)
            # the far end of this branch
            ex, ey = pts[-1]
            far_angle = math.atan2(ey, ex) % (2 * math.pi)
            best, bd = None, None
            for ai, th in enumerate(angles):
                for half in (0, 1):
                    d = abs((far_angle - (th + half * math.pi) + math.pi) % (2 * math.pi) - math.pi)
                    if bd is None or d < bd:
                        best, bd = (ai, half), d
            loop_pts.append(sign * _equator_point(angles[best[0]])[None, :]
                            * (1 if best[1] == 0 else -1))
            used.add(best)
            # continue on the antipodal side of the same equator point
            nxt = (best[0], 1 - best[1])
            sign = -sign
            if nxt == start_key:
                closed_ok = True
                break
            if nxt in used or nxt not in slots:
                return None
            key = nxt
        if not closed_ok or sign != 1.0:
            return None  # odd number of hemisphere flips: not an oval
        loops.append((np.vstack(loop_pts + [loop_pts[0][:1]]), members))
    return loops


def projective_topology(
    f: BivariatePoly,
    resolution: int = 600,
    seed: int = 0,
) -> CurveTopology:
    """Ovals, nesting, and Euler characteristics of the projective Hessian curve.

    The affine Hessian is traced in an adaptive box; unbounded branches are
    glued through the line at infinity at the (simple, transversal) real zeros
    of Hess f_n.  Nesting is computed on the sphere lift, where point-in-oval
    is a semicircle crossing parity.
    """
    if f.degree < 3:
        raise DegreeError("projective topology needs degree >= 3")
    h = hessian(f)
    if h.is_zero():
        raise DegeneracyError("identically zero Hessian")
    angles, mults = _equator_data(f)
    if any(m % 2 == 0 for m in mults):
        raise TangentAtInfinityError(
            "Hessian curve tangent to line at infinity (even multiplicity zero)"
        )
    transversal = bool(angles) and all(m == 1 for m in mults)
    rng = np.random.default_rng(seed)

    comps = None
    loops = []
    for radius in (6.0, 16.0, 48.0, 160.0):
        box = (-radius, radius, -radius, radius)
        comps = trace_curve(h, box, resolution)
        open_comps = [c for c in comps if not c.closed]
        if not angles:
            if not open_comps:
                break
            continue  # compact curve must eventually be fully inside
        glued = _glue_components(open_comps, angles)
        if glued is not None:
            loops = glued
            break
    else:
        raise DegeneracyError("could not stabilize the curve near infinity")

    # assemble ovals: closed affine components + glued projective loops
    ovals: list[CurveComponent] = []
    circles: list[np.ndarray] = []
    open_comps = [c for c in comps if not c.closed]
    for c in comps:
        if c.closed:
            ovals.append(c)
            circles.append(_lift(c.points, 1.0))
    for circle, members in loops:
        pts = []
        for ci in members:
            pts.extend(open_comps[ci].points)
        ovals.append(CurveComponent(pts, "xy+infinity", True))
        circles.append(circle)

    # nesting depths
    for i, oval in enumerate(ovals):
        oval.sphere_points = circles[i]
        depth = 0
        sample = circles[i][len(circles[i]) // 3]
        sample = sample / np.linalg.norm(sample)
        for j, other in enumerate(circles):
            if j == i:
                continue
            if _inside_oval(sample, other, rng):
                depth += 1
        oval.nesting_depth = depth

    P = sum(1 for o in ovals if o.nesting_depth % 2 == 0)
    N = len(ovals) - P
    return CurveTopology(
        components=ovals,
        P=P,
        N=N,
        pseudo_line=False,
        transversal_to_infinity=transversal,
        chi_B_plus=P - N,
        chi_B_minus=N - P + 1,
    )


def point_depth(point3: np.ndarray, top: CurveTopology, seed: int = 0) -> int:
    """Number of ovals of the traced topology containing the given RP^2 point
    (unit vector on the sphere)."""
    rng = np.random.default_rng(seed)
    point3 = np.asarray(point3, dtype=float)
    point3 = point3 / np.linalg.norm(point3)
    return sum(
        1 for c in top.components
        if c.sphere_points is not None and _inside_oval(point3, c.sphere_points, rng)
    )


@dataclass(frozen=True)
class PetrowskyVerdict:
    lower: int
    upper: int
    value: int
    passed: bool


def petrowsky_check(top: CurveTopology, degree: int) -> PetrowskyVerdict:
    """Bounds on P - N for a nonsingular real projective curve of even degree."""
    if degree % 2 != 0:
        raise ValueError("Petrowsky bounds apply to even degree only")
    k = degree // 2
    lower = -3 * k * (k - 1) // 2
    upper = 3 * k * (k - 1) // 2 + 1
    value = top.P - top.N
    return PetrowskyVerdict(lower, upper, value, lower <= value <= upper)
