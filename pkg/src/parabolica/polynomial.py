"""Exact bivariate/trivariate polynomial arithmetic over the rationals.

All coefficients are ``fractions.Fraction``; arithmetic, differentiation and
restriction are exact.  Floating point enters only through the evaluators
returned by :meth:`BivariatePoly.evaluator` (used for tracing and sampling).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

import numpy as np

Rat = Fraction


class ZeroPolynomialError(ValueError):
    pass


class DegreeError(ValueError):
    pass


def _rat(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        return Fraction(c)
    return Fraction(c)


class BivariatePoly:
    """Polynomial in (x, y) stored as a sparse map (i, j) -> Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        self.terms: dict[tuple[int, int], Fraction] = {}
        if terms:
            for (i, j), c in terms.items():
                c = _rat(c)
                if c != 0:
                    self.terms[(int(i), int(j))] = c

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "BivariatePoly":
        return BivariatePoly()

    @staticmethod
    def constant(c) -> "BivariatePoly":
        return BivariatePoly({(0, 0): c})

    @staticmethod
    def x() -> "BivariatePoly":
        return BivariatePoly({(1, 0): 1})

    @staticmethod
    def y() -> "BivariatePoly":
        return BivariatePoly({(0, 1): 1})

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(i + j for i, j in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        degs = {i + j for i, j in self.terms}
        return len(degs) == 1

    def coefficient(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other) -> "BivariatePoly":
        other = self._coerce(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            s = t.get(k, Fraction(0)) + c
            if s == 0:
                t.pop(k, None)
            else:
                t[k] = s
        out = BivariatePoly()
        out.terms = t
        return out

    __radd__ = __add__

    def __neg__(self) -> "BivariatePoly":
        out = BivariatePoly()
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other) -> "BivariatePoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "BivariatePoly":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "BivariatePoly":
        other = self._coerce(other)
        t: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                s = t.get(k, Fraction(0)) + c1 * c2
                if s == 0:
                    t.pop(k, None)
                else:
                    t[k] = s
        out = BivariatePoly()
        out.terms = t
        return out

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "BivariatePoly":
        if e < 0:
            raise ValueError("negative power")
        out = BivariatePoly.constant(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    @staticmethod
    def _coerce(other) -> "BivariatePoly":
        if isinstance(other, BivariatePoly):
            return other
        return BivariatePoly.constant(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivariatePoly):
            other = BivariatePoly.constant(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- calculus and restriction ---------------------------------------

    def diff(self, var: str) -> "BivariatePoly":
        t: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in self.terms.items():
            if var == "x" and i > 0:
                t[(i - 1, j)] = c * i
            elif var == "y" and j > 0:
                t[(i, j - 1)] = c * j
        out = BivariatePoly()
        out.terms = t
        return out

    def eval(self, px, py) -> Fraction:
        """Exact evaluation at rational (px, py)."""
        px, py = _rat(px), _rat(py)
        s = Fraction(0)
        for (i, j), c in self.terms.items():
            s += c * px**i * py**j
        return s

    def homogeneous_part(self, d: int) -> "BivariatePoly":
        out = BivariatePoly()
        out.terms = {k: c for k, c in self.terms.items() if k[0] + k[1] == d}
        return out

    def compose_linear(self, a, b, c, d) -> "BivariatePoly":
        """Substitute x -> a*x + b*y, y -> c*x + d*y (exact)."""
        X = BivariatePoly({(1, 0): a, (0, 1): b})
        Y = BivariatePoly({(1, 0): c, (0, 1): d})
        out = BivariatePoly.zero()
        # group by powers to limit repeated exponentiation
        xp: dict[int, BivariatePoly] = {0: BivariatePoly.constant(1)}
        yp: dict[int, BivariatePoly] = {0: BivariatePoly.constant(1)}
        for (i, j), coef in self.terms.items():
            if i not in xp:
                xp[i] = X**i
            if j not in yp:
                yp[j] = Y**j
            out = out + coef * xp[i] * yp[j]
        return out

    def restrict_line(self, point, direction) -> "UnivariatePoly":
        """Exact univariate restriction t -> p(point + t*direction)."""
        ax, ay = _rat(point[0]), _rat(point[1])
        dx, dy = _rat(direction[0]), _rat(direction[1])
        n = max(self.degree, 0)
        coeffs = [Fraction(0)] * (n + 1)
        # binomial expansion of (ax + t dx)^i (ay + t dy)^j
        from math import comb

        for (i, j), c in self.terms.items():
            cx = [Fraction(comb(i, k)) * ax ** (i - k) * dx**k for k in range(i + 1)]
            cy = [Fraction(comb(j, k)) * ay ** (j - k) * dy**k for k in range(j + 1)]
            for k1, a1 in enumerate(cx):
                if a1 == 0:
                    continue
                for k2, a2 in enumerate(cy):
                    if a2 == 0:
                        continue
                    coeffs[k1 + k2] += c * a1 * a2
        return UnivariatePoly(coeffs)

    def substitute_x(self, value) -> "UnivariatePoly":
        """Exact restriction y -> p(value, y)."""
        return self.restrict_line((value, 0), (0, 1))

    def substitute_y(self, value) -> "UnivariatePoly":
        return self.restrict_line((0, value), (1, 0))

    # -- float machinery -------------------------------------------------

    def coeff_array(self) -> np.ndarray:
        n = max(self.degree, 0)
        C = np.zeros((n + 1, n + 1))
        for (i, j), c in self.terms.items():
            C[i, j] = float(c)
        return C

    def evaluator(self) -> Callable:
        """Vectorized float evaluator (x, y) -> p(x, y)."""
        C = self.coeff_array()
        rows = [np.array(r[::-1]) for r in C]

        def ev(x, y):
            x = np.asarray(x, dtype=float)
            y = np.asarray(y, dtype=float)
            acc = np.zeros(np.broadcast(x, y).shape)
            for r in reversed(rows):
                acc = acc * x + np.polyval(r, y)
            if acc.shape == ():
                return float(acc)
            return acc

        return ev

    def coeff_scale(self) -> float:
        return float(sum(abs(c) for c in self.terms.values())) or 1.0

    # -- printing ----------------------------------------------------------

    def __repr__(self):
        return f"BivariatePoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[0]))
        parts = []
        for i, j in keys:
            c = self.terms[(i, j)]
            mono = []
            if i == 1:
                mono.append("x")
            elif i > 1:
                mono.append(f"x^{i}")
            if j == 1:
                mono.append("y")
            elif j > 1:
                mono.append(f"y^{j}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(mono)
            else:
                body = str(abs(c)) + "*" + "*".join(mono)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        s = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


class TrivariateHomogeneousPoly:
    """Homogeneous polynomial in (x, y, z) with exact rational coefficients."""

    __slots__ = ("terms", "degree")

    def __init__(self, terms: Mapping[tuple[int, int, int], object] | None, degree: int):
        self.terms: dict[tuple[int, int, int], Fraction] = {}
        self.degree = int(degree)
        if terms:
            for (i, j, k), c in terms.items():
                c = _rat(c)
                if c != 0:
                    if i + j + k != self.degree:
                        raise ValueError("non-homogeneous term")
                    self.terms[(int(i), int(j), int(k))] = c

    def is_zero(self) -> bool:
        return not self.terms

    @staticmethod
    def homogenize(p: BivariatePoly, degree: int | None = None) -> "TrivariateHomogeneousPoly":
        d = p.degree if degree is None else degree
        if d < p.degree:
            raise DegreeError("homogenization degree below polynomial degree")
        d = max(d, 0)
        return TrivariateHomogeneousPoly(
            {(i, j, d - i - j): c for (i, j), c in p.terms.items()}, d
        )

    def restrict_z0(self) -> BivariatePoly:
        """Restriction to z = 0 as a bivariate polynomial."""
        return BivariatePoly({(i, j): c for (i, j, k), c in self.terms.items() if k == 0})

    def dehomogenize(self, chart: str = "z") -> BivariatePoly:
        """Set one variable to 1; remaining variables keep their order."""
        idx = {"x": 0, "y": 1, "z": 2}[chart]
        keep = [m for m in range(3) if m != idx]
        return BivariatePoly(
            {(k[keep[0]], k[keep[1]]): c for k, c in self.terms.items()}
        )

    def diff(self, var: str) -> "TrivariateHomogeneousPoly":
        idx = {"x": 0, "y": 1, "z": 2}[var]
        t: dict[tuple[int, int, int], Fraction] = {}
        for k, c in self.terms.items():
            if k[idx] > 0:
                nk = list(k)
                nk[idx] -= 1
                t[tuple(nk)] = t.get(tuple(nk), Fraction(0)) + c * k[idx]
        return TrivariateHomogeneousPoly(t, max(self.degree - 1, 0))

    def eval(self, px, py, pz) -> Fraction:
        px, py, pz = _rat(px), _rat(py), _rat(pz)
        s = Fraction(0)
        for (i, j, k), c in self.terms.items():
            s += c * px**i * py**j * pz**k
        return s

    def eval_float(self, px: float, py: float, pz: float) -> float:
        return float(sum(float(c) * px**i * py**j * pz**k for (i, j, k), c in self.terms.items()))

    def __add__(self, other: "TrivariateHomogeneousPoly") -> "TrivariateHomogeneousPoly":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise DegreeError("degree mismatch in homogeneous sum")
        t = dict(self.terms)
        for k, c in other.terms.items():
            s = t.get(k, Fraction(0)) + c
            if s == 0:
                t.pop(k, None)
            else:
                t[k] = s
        return TrivariateHomogeneousPoly(t, self.degree)

    def __neg__(self):
        return TrivariateHomogeneousPoly({k: -c for k, c in self.terms.items()}, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "TrivariateHomogeneousPoly":
        if not isinstance(other, TrivariateHomogeneousPoly):
            c = _rat(other)
            return TrivariateHomogeneousPoly({k: v * c for k, v in self.terms.items()}, self.degree)
        t: dict[tuple[int, int, int], Fraction] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2])
                s = t.get(k, Fraction(0)) + c1 * c2
                if s == 0:
                    t.pop(k, None)
                else:
                    t[k] = s
        return TrivariateHomogeneousPoly(t, self.degree + other.degree)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, TrivariateHomogeneousPoly)
            and self.terms == other.terms
        )

    def __repr__(self):
        return f"TrivariateHomogeneousPoly(deg={self.degree}, {self.terms})"


class UnivariatePoly:
    """Dense univariate polynomial, coefficients low to high, exact rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t) -> Fraction:
        t = _rat(t)
        s = Fraction(0)
        for c in reversed(self.coeffs):
            s = s * t + c
        return s

    def eval_float(self, t: float) -> float:
        s = 0.0
        for c in reversed(self.coeffs):
            s = s * t + float(c)
        return s

    def derivative(self) -> "UnivariatePoly":
        return UnivariatePoly([c * k for k, c in enumerate(self.coeffs)][1:])

    def __add__(self, other: "UnivariatePoly") -> "UnivariatePoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + [Fraction(0)] * (n - len(self.coeffs))
        b = other.coeffs + [Fraction(0)] * (n - len(other.coeffs))
        return UnivariatePoly([x + y for x, y in zip(a, b)])

    def __neg__(self):
        return UnivariatePoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "UnivariatePoly":
        if not isinstance(other, UnivariatePoly):
            c = _rat(other)
            return UnivariatePoly([v * c for v in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UnivariatePoly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UnivariatePoly(out)

    __rmul__ = __mul__

    def divmod(self, other: "UnivariatePoly"):
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        q = [Fraction(0)] * max(len(self.coeffs) - len(other.coeffs) + 1, 1)
        r = list(self.coeffs)
        d = other.degree
        lc = other.coeffs[-1]
        while len(r) - 1 >= d and any(c != 0 for c in r):
            while r and r[-1] == 0:
                r.pop()
            if len(r) - 1 < d:
                break
            k = len(r) - 1 - d
            f = r[-1] / lc
            q[k] = f
            for i, b in enumerate(other.coeffs):
                r[k + i] -= f * b
            r.pop()
        return UnivariatePoly(q), UnivariatePoly(r)

    def monic(self) -> "UnivariatePoly":
        if self.is_zero():
            return self
        lc = self.coeffs[-1]
        return UnivariatePoly([c / lc for c in self.coeffs])

    def gcd(self, other: "UnivariatePoly") -> "UnivariatePoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero() else a

    def squarefree_part(self) -> "UnivariatePoly":
        if self.degree <= 0:
            return self.monic()
        g = self.gcd(self.derivative())
        if g.degree <= 0:
            return self.monic()
        return self.divmod(g)[0].monic()

    def __eq__(self, other):
        return isinstance(other, UnivariatePoly) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"UnivariatePoly({self.coeffs})"


# ---------------------------------------------------------------------------
# operations on the surface polynomial


def homogeneous_decomposition(f: BivariatePoly) -> dict[int, BivariatePoly]:
    """Split f into its homogeneous parts {degree: part}; empty parts omitted."""
    if f.is_zero():
        raise ZeroPolynomialError("zero polynomial has no decomposition")
    out: dict[int, BivariatePoly] = {}
    for (i, j), c in f.terms.items():
        d = i + j
        out.setdefault(d, BivariatePoly()).terms[(i, j)] = c
    return dict(sorted(out.items()))


def hessian(f: BivariatePoly) -> BivariatePoly:
    """f_xx * f_yy - f_xy^2, exact."""
    fxx = f.diff("x").diff("x")
    fyy = f.diff("y").diff("y")
    fxy = f.diff("x").diff("y")
    return fxx * fyy - fxy * fxy


def projective_hessian(f: BivariatePoly) -> TrivariateHomogeneousPoly:
    """Degree-(2n-4) homogenization of the Hessian of f (n = deg f >= 3)."""
    n = f.degree
    if n < 3:
        raise DegreeError("projective Hessian needs degree >= 3")
    h = hessian(f)
    return TrivariateHomogeneousPoly.homogenize(h, 2 * n - 4)


def euler_second_order(p: BivariatePoly) -> BivariatePoly:
    """x^2 p_xx + 2xy p_xy + y^2 p_yy (equals m(m-1)p for homogeneous p)."""
    x2 = BivariatePoly({(2, 0): 1})
    xy = BivariatePoly({(1, 1): 1})
    y2 = BivariatePoly({(0, 2): 1})
    return x2 * p.diff("x").diff("x") + 2 * xy * p.diff("x").diff("y") + y2 * p.diff("y").diff("y")
