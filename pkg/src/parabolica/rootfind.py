"""Real root isolation (Sturm sequences, exact) and bivariate system solving."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy as sp

from .polynomial import BivariatePoly, UnivariatePoly, ZeroPolynomialError


class SharedComponentError(ValueError):
    """The two input curves appear to share a positive-dimensional component."""


@dataclass(frozen=True)
class IsolatedRoot:
    low: Fraction
    high: Fraction          # isolating interval [low, high], exact endpoints
    midpoint: float         # refined to the requested precision
    multiplicity: int

    def contains(self, t: Fraction) -> bool:
        return self.low <= t <= self.high


@dataclass(frozen=True)
class RootList:
    roots: tuple[IsolatedRoot, ...]

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def midpoints(self) -> list[float]:
        return [r.midpoint for r in self.roots]


def _sturm_chain(p: UnivariatePoly) -> list[UnivariatePoly]:
    chain = [p, p.derivative()]
    while chain[-1].degree > 0:
        r = chain[-2].divmod(chain[-1])[1]
        if r.is_zero():
            break
        chain.append(-r)
    return [c for c in chain if not c.is_zero()]


def _sign_variations(chain, t: Fraction) -> int:
    signs = []
    for p in chain:
        v = p(t)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def cauchy_bound(p: UnivariatePoly) -> Fraction:
    """All real roots of p lie in [-B, B]."""
    if p.degree < 1:
        return Fraction(1)
    lc = abs(p.coeffs[-1])
    return 1 + max(abs(c) for c in p.coeffs[:-1]) / lc


def real_roots(
    p: UnivariatePoly,
    interval: tuple | None = None,
    precision: Fraction = Fraction(1, 10**12),
) -> RootList:
    """Isolate and refine all distinct real roots of p in the interval.

    Isolation runs on the squarefree part via Sturm sign variations;
    multiplicities come from repeated gcd with the derivative.
    """
    if p.is_zero():
        raise ZeroPolynomialError("cannot isolate roots of the zero polynomial")
    if p.degree == 0:
        return RootList(())
    precision = Fraction(precision)

    sf = p.squarefree_part()
    chain = _sturm_chain(sf)

    if interval is None:
        b = cauchy_bound(sf)
        lo, hi = -b, b
    else:
        lo, hi = Fraction(interval[0]), Fraction(interval[1])

    # nudge endpoints off roots of the squarefree part
    eps = Fraction(1, 10**6)
    while sf(lo) == 0:
        lo -= eps
    while sf(hi) == 0:
        hi += eps

    def count(a: Fraction, b: Fraction) -> int:
        return _sign_variations(chain, a) - _sign_variations(chain, b)

    # bisect into intervals containing exactly one root each
    isolating: list[tuple[Fraction, Fraction]] = []
    stack = [(lo, hi, count(lo, hi))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            isolating.append((a, b))
            continue
        m = (a + b) / 2
        while sf(m) == 0:
            m = (a + 2 * m) / 3
        na = count(a, m)
        stack.append((a, m, na))
        stack.append((m, b, n - na))
    isolating.sort()

    # multiplicity structure: p = prod g_k^k with g_k squarefree (Yun)
    multi_factors = _yun(p)

    roots = []
    for a, b in isolating:
        # bisection refinement on the squarefree part
        fa = sf(a)
        while b - a > 2 * precision:
            m = (a + b) / 2
            fm = sf(m)
            if fm == 0:
                a = b = m
                break
            if (fa > 0) == (fm > 0):
                a, fa = m, fm
            else:
                b = m
        mid = float((a + b) / 2)
        mult = 1
        for k, g in multi_factors.items():
            if k == 1:
                continue
            # the root belongs to g_k iff g_k changes sign / vanishes there
            ga, gb = g(a), g(b)
            if ga == 0 or gb == 0 or (ga > 0) != (gb > 0):
                mult = k
        roots.append(IsolatedRoot(a, b, mid, mult))
    return RootList(tuple(roots))


def _yun(p: UnivariatePoly) -> dict[int, UnivariatePoly]:
    """Yun squarefree decomposition: returns {multiplicity: factor}."""
    out: dict[int, UnivariatePoly] = {}
    g = p.gcd(p.derivative())
    if g.degree <= 0:
        out[1] = p.monic()
        return out
    c = p.divmod(g)[0]
    d = p.derivative().divmod(g)[0] - c.derivative()
    k = 1
    while not c.is_zero() and c.degree > 0:
        a = c.gcd(d)
        if a.degree > 0:
            out[k] = a
        if a.degree <= 0:
            a = UnivariatePoly([1])
        c = c.divmod(a)[0]
        d = d.divmod(a)[0] - c.derivative()
        k += 1
    return out


def distinct_real_linear_factors(h: BivariatePoly) -> tuple[int, bool]:
    """Count distinct real linear factors of a homogeneous polynomial.

    Returns (k, simple): k distinct factors; simple is True iff every real
    linear factor has multiplicity one.
    """
    if h.is_zero():
        raise ZeroPolynomialError("zero polynomial")
    if not h.is_homogeneous():
        raise ValueError("input must be homogeneous")
    # h(1, t): roots t correspond to factors (y - t x); factor x shows up as h(0,1)=0
    p = h.restrict_line((1, 0), (0, 1))
    rl = real_roots(p) if not p.is_zero() else RootList(())
    k = len(rl)
    simple = all(r.multiplicity == 1 for r in rl)
    deg_drop = h.degree - (p.degree if not p.is_zero() else 0)
    if h.eval(0, 1) == 0:
        k += 1
        # multiplicity of the factor x equals the degree drop of h(1, t)
        if deg_drop > 1:
            simple = False
    return k, simple


# ---------------------------------------------------------------------------
# bivariate systems


def _to_sympy(p: BivariatePoly, x, y):
    return sp.Add(*[sp.Rational(c) * x**i * y**j for (i, j), c in p.terms.items()])


def _resultant_roots(p: BivariatePoly, q: BivariatePoly, axis: str) -> UnivariatePoly:
    x, y = sp.symbols("x y")
    sp_p, sp_q = _to_sympy(p, x, y), _to_sympy(q, x, y)
    elim = y if axis == "x" else x
    keep = x if axis == "x" else y
    res = sp.resultant(sp_p, sp_q, elim)
    res = sp.Poly(sp.expand(res), keep)
    if res.is_zero:
        raise SharedComponentError("resultant is identically zero: shared component suspected")
    coeffs = [Fraction(sp.Rational(c)) for c in reversed(res.all_coeffs())]
    return UnivariatePoly(coeffs)


def solve_system(
    p: BivariatePoly,
    q: BivariatePoly,
    box: tuple | None = None,
    precision: float = 1e-10,
) -> list[tuple[float, float]]:
    """All common real zeros of p and q in the box.

    Candidate coordinates come from the resultants with respect to each
    variable (each isolated exactly to ~1e-12), so every solution is a pair of
    candidates; a pair is accepted when both residuals, evaluated in exact
    rational arithmetic, fall under a Lipschitz-scaled threshold.  This stays
    stable at tangential intersections where float Newton would stall.
    """
    rx = _resultant_roots(p, q, "x")
    ry = _resultant_roots(p, q, "y")
    if rx.degree < 1 or ry.degree < 1:
        return []
    root_prec = Fraction(1, 10**12)
    xs = real_roots(rx, precision=root_prec).midpoints()
    ys = real_roots(ry, precision=root_prec).midpoints()

    if box is None:
        mx = max((abs(v) for v in xs), default=1.0)
        my = max((abs(v) for v in ys), default=1.0)
        box = (-mx - 1, mx + 1, -my - 1, my + 1)
    x0, x1, y0, y1 = map(float, box)

    # Lipschitz bound for a polynomial over |x|,|y| <= R, crude but safe
    radius = max(abs(x0), abs(x1), abs(y0), abs(y1), 1.0)

    def lipschitz(poly: BivariatePoly) -> float:
        return sum(
            float(abs(c)) * (i + j) * radius ** max(i + j - 1, 0)
            for (i, j), c in poly.terms.items()
        )

    tol_p = max(lipschitz(p), p.coeff_scale()) * 1e-9
    tol_q = max(lipschitz(q), q.coeff_scale()) * 1e-9

    pe, qe = p.evaluator(), q.evaluator()
    pxe, pye = p.diff("x").evaluator(), p.diff("y").evaluator()
    qxe, qye = q.diff("x").evaluator(), q.diff("y").evaluator()

    sols: list[tuple[float, float]] = []
    for cx in xs:
        if not (x0 - 1e-9 <= cx <= x1 + 1e-9):
            continue
        for cy in ys:
            if not (y0 - 1e-9 <= cy <= y1 + 1e-9):
                continue
            fx = Fraction(cx)
            fy = Fraction(cy)
            if abs(p.eval(fx, fy)) > tol_p or abs(q.eval(fx, fy)) > tol_q:
                continue
            # one guarded Newton polish where the intersection is transversal
            u, v = cx, cy
            a, b, c, d = pxe(u, v), pye(u, v), qxe(u, v), qye(u, v)
            det = a * d - b * c
            if np.isfinite(det) and abs(det) > 1e-6 * max(abs(a * d), abs(b * c), 1.0):
                for _ in range(5):
                    fv, gv = pe(u, v), qe(u, v)
                    a, b, c, d = pxe(u, v), pye(u, v), qxe(u, v), qye(u, v)
                    det = a * d - b * c
                    if det == 0 or not np.isfinite(det):
                        break
                    du = (fv * d - gv * b) / det
                    dv = (gv * a - fv * c) / det
                    if abs(du) > 1e-6 or abs(dv) > 1e-6:
                        break  # refuse to drift away from the certified candidate
                    u, v = u - du, v - dv
            if all((u - su) ** 2 + (v - sv) ** 2 > (10 * precision) ** 2 for su, sv in sols):
                sols.append((u, v))
    sols.sort()
    return sols
