#!/usr/bin/env python3
"""Two quartics that differ in one coefficient but put the hyperbolic region
on opposite sides of the parabolic curve.

f has -10*x^2 where g has +10*x^2.  Both parabolic curves are compact, yet
for f the hyperbolic domain lies inside the disk bounded by the curve and
for g the elliptic domain does.  The report records this as the region
containing B^-, the side that carries the asymptotic field.
"""

from parabolica import full_report, parse_polynomial

base = "x^4 + 6*x^2*y^2 - y^4 + 3*x^2*y - 3*x*y^2 + 10*y^2"
for name, sign in (("f", "-"), ("g", "+")):
    poly = parse_polynomial(base + f" {sign} 10*x^2")
    rep = full_report(poly)
    t = rep.topology
    print(f"{name}: ovals P={t.P} N={t.N}  chi(B+)={t.chi_B_plus} "
          f"chi(B-)={t.chi_B_minus}  {rep.field_region}")
    rec = rep.identity
    print(f"   index sum {rec.lhs} = rhs {rec.rhs}   "
          f"godrons: {rep.p_interior} interior, {rep.p_exterior} exterior")
