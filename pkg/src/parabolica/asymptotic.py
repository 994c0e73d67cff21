"""Asymptotic direction fields, integral curves, and godrons."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .polynomial import BivariatePoly, DegreeError, hessian
from .rootfind import solve_system


class FlatPointError(ValueError):
    pass


class DegenerateGodronError(ValueError):
    pass


@dataclass(frozen=True)
class DirectionP1:
    """Unoriented line direction: an angle modulo pi."""

    angle: float

    def __post_init__(self):
        object.__setattr__(self, "angle", self.angle % math.pi)

    @staticmethod
    def of_vector(dx: float, dy: float) -> "DirectionP1":
        return DirectionP1(math.atan2(dy, dx))

    def vector(self) -> tuple[float, float]:
        return (math.cos(self.angle), math.sin(self.angle))

    def distance(self, other: "DirectionP1") -> float:
        d = abs(self.angle - other.angle)
        return min(d, math.pi - d)


class Tangency(enum.Enum):
    INTERIOR = "interior"
    EXTERIOR = "exterior"


@dataclass(frozen=True)
class Godron:
    location: tuple[float, float]
    direction: DirectionP1
    tangency: Tangency
    second_derivative: float   # d^2/dt^2 Hess f(p + t v) at t = 0


def _form_at(f: BivariatePoly, evals=None):
    if evals is None:
        evals = (
            f.diff("x").diff("x").evaluator(),
            f.diff("x").diff("y").evaluator(),
            f.diff("y").diff("y").evaluator(),
        )
    return evals


def asymptotic_directions(f: BivariatePoly, p, tol: float = 1e-12) -> list[DirectionP1]:
    """Null directions of the second fundamental form at p: 2 / 1 / 0 of them
    on the hyperbolic / parabolic / elliptic side."""
    axx, axy, ayy = _form_at(f)
    x0, y0 = float(p[0]), float(p[1])
    a, b, c = axx(x0, y0), axy(x0, y0), ayy(x0, y0)
    scale = max(abs(a), abs(b), abs(c))
    if scale == 0:
        raise FlatPointError(f"flat point of the second fundamental form at {p}")
    disc = b * b - a * c
    if disc < -tol * scale * scale:
        return []
    disc = max(disc, 0.0)
    sq = math.sqrt(disc)
    dirs = []
    for sigma in (-1.0, 1.0):
        # direction (dx, dy) with a dx^2 + 2b dx dy + c dy^2 = 0
        d1 = (c, -b + sigma * sq)
        d2 = (-b - sigma * sq, a)
        dx, dy = max(d1, d2, key=lambda v: math.hypot(*v))
        dirs.append(DirectionP1.of_vector(dx, dy))
    if disc <= tol * scale * scale or dirs[0].distance(dirs[1]) < 1e-9:
        return [dirs[0]]
    return dirs


def integrate_asymptotic_curve(
    f: BivariatePoly,
    p0,
    branch: int = 1,
    step: float = 1e-3,
    max_len: float = 10.0,
) -> tuple[list[tuple[float, float]], str]:
    """Integrate one asymptotic direction field from a hyperbolic point.

    Fixed-step midpoint scheme; the direction at each evaluation is the form
    solution closest (RP1 metric) to the previous one, with the orientation
    continuing the march.  Returns (polyline, stopping reason).
    """
    hess_ev = hessian(f).evaluator()
    x0, y0 = float(p0[0]), float(p0[1])
    if hess_ev(x0, y0) >= 0:
        raise ValueError("seed point is not hyperbolic")
    dirs = asymptotic_directions(f, (x0, y0))
    if len(dirs) < 2:
        raise ValueError("no transversal pair of directions at the seed")
    current = dirs[branch - 1]
    sign = 1.0
    pts = [(x0, y0)]
    reason = "max length reached"
    n_steps = int(max_len / step)

    def dir_at(pt, ref: DirectionP1) -> DirectionP1 | None:
        ds = asymptotic_directions(f, pt)
        if not ds:
            return None
        return min(ds, key=ref.distance)

    x, y = x0, y0
    for _ in range(n_steps):
        vx, vy = current.vector()
        vx, vy = sign * vx, sign * vy
        mid = (x + 0.5 * step * vx, y + 0.5 * step * vy)
        if hess_ev(*mid) >= 0:
            reason = "left the hyperbolic domain"
            break
        try:
            dmid = dir_at(mid, current)
        except FlatPointError:
            reason = "flat point"
            break
        if dmid is None:
            reason = "left the hyperbolic domain"
            break
        if current.distance(dmid) > 0.2:
            reason = "direction field discontinuity"
            break
        wx, wy = dmid.vector()
        if wx * vx + wy * vy < 0:
            wx, wy = -wx, -wy
        x, y = x + step * wx, y + step * wy
        if hess_ev(x, y) >= 0:
            reason = "left the hyperbolic domain"
            pts.append((x, y))
            break
        pts.append((x, y))
        sign = 1.0
        current = dmid
        if wx * vx + wy * vy < 0:
            sign = -1.0
    return pts, reason


def tangency_polynomial(f: BivariatePoly) -> tuple[BivariatePoly, BivariatePoly]:
    """Directional derivatives of Hess f along the two kernel representatives
    of the second fundamental form on the parabolic set.

    On {Hess f = 0}, (-f_xy, f_xx) and (f_yy, -f_xy) span the (double) null
    direction wherever they do not vanish, so godrons are exactly the common
    zeros of Hess f with G1 (or G2) where the representative used is nonzero.
    """
    if f.degree < 3:
        raise DegreeError("tangency polynomial needs degree >= 3")
    h = hessian(f)
    hx, hy = h.diff("x"), h.diff("y")
    fxx = f.diff("x").diff("x")
    fxy = f.diff("x").diff("y")
    fyy = f.diff("y").diff("y")
    g1 = hx * (-fxy) + hy * fxx
    g2 = hx * fyy + hy * (-fxy)
    return g1, g2


def find_godrons(
    f: BivariatePoly,
    box: tuple | None = None,
    precision: float = 1e-10,
    degenerate_tol: float = 1e-7,
) -> list[Godron]:
    """Locate all godrons: parabolic points whose null direction is tangent to
    the parabolic curve, classified by interior/exterior tangency.

    Tangency is interior iff the second derivative of Hess f along the
    asymptotic line is negative (the line locally enters the hyperbolic
    domain).
    """
    if f.degree < 3:
        raise DegreeError("godron search needs degree >= 3")
    h = hessian(f)
    if h.is_zero():
        return []
    g1, g2 = tangency_polynomial(f)
    fxx = f.diff("x").diff("x").evaluator()
    fxy = f.diff("x").diff("y").evaluator()
    fyy = f.diff("y").diff("y").evaluator()

    candidates: list[tuple[float, float, int]] = []
    for which, g in ((1, g1), (2, g2)):
        if g.is_zero():
            continue
        for u, v in solve_system(h, g, box, precision):
            candidates.append((u, v, which))

    scale = max(f.coeff_scale(), 1.0)
    godrons: list[Godron] = []
    for u, v, which in candidates:
        a, b, c = fxx(u, v), fxy(u, v), fyy(u, v)
        rep = (-b, a) if which == 1 else (c, -b)
        if math.hypot(*rep) < 1e-9 * scale:
            continue  # the representative used degenerates here
        if any((u - g.location[0]) ** 2 + (v - g.location[1]) ** 2 < (100 * precision) ** 2
               for g in godrons):
            continue
        dirs = asymptotic_directions(f, (u, v), tol=1e-6)
        if len(dirs) != 1:
            # pick the direction along the kernel representative
            direction = DirectionP1.of_vector(*rep)
        else:
            direction = dirs[0]
        dx, dy = direction.vector()
        hline = h.restrict_line((u, v), (dx, dy))
        d2 = 2.0 * float(hline.coeffs[2]) if hline.degree >= 2 else 0.0
        if abs(d2) < degenerate_tol * h.coeff_scale():
            raise DegenerateGodronError(
                f"degenerate godron (non-generic) near ({u:.6g}, {v:.6g})"
            )
        tang = Tangency.INTERIOR if d2 < 0 else Tangency.EXTERIOR
        godrons.append(Godron((u, v), direction, tang, d2))
    godrons.sort(key=lambda g: g.location)
    return godrons


def godron_count_bound(n: int) -> int:
    """Upper bound for the number of godrons of a generic degree-n graph."""
    return (n - 2) * (5 * n - 12)
