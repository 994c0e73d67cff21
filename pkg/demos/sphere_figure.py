#!/usr/bin/env python3
"""Render the quartic with a compact parabolic curve and save an SVG.

The figure has three panels: the affine plane with the parabolic curve,
godron markers and a sample of asymptotic curves, plus the two hemisphere
views of the Poincare sphere with the curve lifted onto it and the
singular points on the equator.

Run:  python3 demos/sphere_figure.py [out.svg]
"""

import sys

from parabolica import build_figure, emit_svg, figure_svg, parse_polynomial

g = parse_polynomial("y*(x+3)*(x-y)*(y+x-3)")

specs = build_figure(g, ["hessian", "godrons", "asymptotic", "sphere"],
                     box=(-6, 6, -6, 6), seed=0)
out = sys.argv[1] if len(sys.argv) > 1 else "quartic_figure.svg"
emit_svg(specs, out)
print("wrote", out, f"({len(figure_svg(specs))} bytes)")
