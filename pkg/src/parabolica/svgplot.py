"""Static SVG 1.1 figures: plane view plus two hemisphere-disk views."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .polynomial import BivariatePoly, hessian
from .asymptotic import Tangency, find_godrons, integrate_asymptotic_curve
from .sphere import singular_points_at_infinity
from .topology import trace_curve


@dataclass
class Layer:
    polylines: list = field(default_factory=list)   # each: list of (x, y)
    points: list = field(default_factory=list)      # each: (x, y, marker)
    labels: list = field(default_factory=list)      # each: (x, y, text)
    style: dict = field(default_factory=dict)


@dataclass
class PlotSpec:
    layers: list[Layer]
    viewport: tuple            # ("rect", x0, x1, y0, y1) or ("disk",)
    title: str = ""

    def validate(self):
        for layer in self.layers:
            for pl in layer.polylines:
                for x, y in pl:
                    if not (math.isfinite(x) and math.isfinite(y)):
                        raise ValueError("non-finite coordinate in plot layer")
        if self.viewport[0] == "rect":
            _, x0, x1, y0, y1 = self.viewport
            if not (x1 > x0 and y1 > y0):
                raise ValueError("empty viewport")


_STYLES = {
    "hessian": 'fill="none" stroke="#1a3faa" stroke-width="1.4"',
    "asymptotic": 'fill="none" stroke="#888888" stroke-width="0.7"',
    "equator": 'fill="none" stroke="#000000" stroke-width="1.2"',
    "axes": 'stroke="#cccccc" stroke-width="0.6"',
}


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def _marker_svg(cx: float, cy: float, marker: str) -> str:
    if marker == "godron_interior":
        return (f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="4" '
                f'fill="#c62828" stroke="#000000" stroke-width="0.8"/>')
    if marker == "godron_exterior":
        return (f'<rect x="{_fmt(cx - 3.5)}" y="{_fmt(cy - 3.5)}" width="7" height="7" '
                f'fill="#ffffff" stroke="#c62828" stroke-width="1.2"/>')
    if marker == "singular_infinity":
        return (f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="3.2" '
                f'fill="#000000"/>')
    return f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="2.5" fill="#444444"/>'


def _render_panel(spec: PlotSpec, size: float, ox: float, oy: float) -> list[str]:
    """Render one PlotSpec into SVG elements inside a size x size panel at (ox, oy)."""
    spec.validate()
    out = []
    if spec.viewport[0] == "rect":
        _, x0, x1, y0, y1 = spec.viewport
        sx = size / (x1 - x0)
        sy = size / (y1 - y0)

        def tr(x, y):
            return ox + (x - x0) * sx, oy + (y1 - y) * sy

        out.append(f'<rect x="{_fmt(ox)}" y="{_fmt(oy)}" width="{_fmt(size)}" '
                   f'height="{_fmt(size)}" fill="#ffffff" stroke="#000000" stroke-width="1"/>')
        if x0 < 0 < x1:
            a, b = tr(0, y0), tr(0, y1)
            out.append(f'<line x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" x2="{_fmt(b[0])}" '
                       f'y2="{_fmt(b[1])}" {_STYLES["axes"]}/>')
        if y0 < 0 < y1:
            a, b = tr(x0, 0), tr(x1, 0)
            out.append(f'<line x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" x2="{_fmt(b[0])}" '
                       f'y2="{_fmt(b[1])}" {_STYLES["axes"]}/>')

        def clip(x, y):
            return x0 - 1e-9 <= x <= x1 + 1e-9 and y0 - 1e-9 <= y <= y1 + 1e-9
    else:
        cx, cy, r = ox + size / 2, oy + size / 2, size / 2 - 2

        def tr(x, y):
            return cx + x * r, cy - y * r

        out.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" '
                   f'fill="#ffffff" stroke="#000000" stroke-width="1.2"/>')

        def clip(x, y):
            return x * x + y * y <= 1.0 + 1e-9

    for layer in spec.layers:
        style = _STYLES.get(layer.style.get("name", ""), _STYLES["asymptotic"])
        for pl in layer.polylines:
            run = []
            for x, y in pl:
                if clip(x, y):
                    run.append(tr(x, y))
                else:
                    if len(run) >= 2:
                        pts = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in run)
                        out.append(f'<polyline points="{pts}" {style}/>')
                    run = []
            if len(run) >= 2:
                pts = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in run)
                out.append(f'<polyline points="{pts}" {style}/>')
        for x, y, marker in layer.points:
            if clip(x, y):
                a, b = tr(x, y)
                out.append(_marker_svg(a, b, marker))
        for x, y, text in layer.labels:
            if clip(x, y):
                a, b = tr(x, y)
                out.append(f'<text x="{_fmt(a)}" y="{_fmt(b)}" font-size="10" '
                           f'font-family="monospace">{text}</text>')
    if spec.title:
        out.append(f'<text x="{_fmt(ox + 4)}" y="{_fmt(oy + 14)}" font-size="12" '
                   f'font-family="monospace">{spec.title}</text>')
    return out


def _hemisphere_project(points, upper: bool):
    """Orthographic (u, v) image of affine points lifted to one hemisphere."""
    arr = np.asarray(points, dtype=float)
    nrm = np.sqrt(arr[:, 0] ** 2 + arr[:, 1] ** 2 + 1.0)
    sgn = 1.0 if upper else -1.0
    return np.column_stack([sgn * arr[:, 0] / nrm, sgn * arr[:, 1] / nrm])


def _asymptotic_polylines(f: BivariatePoly, box, seed: int) -> list:
    """A deterministic bundle of integral curves of both asymptotic fields."""
    he = hessian(f).evaluator()
    x0, x1, y0, y1 = box
    rng = np.random.default_rng(seed)
    polylines = []
    for _ in range(60):
        px = float(rng.uniform(x0, x1))
        py = float(rng.uniform(y0, y1))
        if he(px, py) >= 0:
            continue
        for branch in (1, 2):
            try:
                pts, _ = integrate_asymptotic_curve(
                    f, (px, py), branch=branch,
                    step=max(x1 - x0, y1 - y0) / 800.0,
                    max_len=0.8 * (x1 - x0),
                )
            except ValueError:
                continue
            if len(pts) > 5:
                polylines.append(pts)
        if len(polylines) >= 40:
            break
    return polylines


def build_figure(
    f: BivariatePoly,
    layers: tuple = ("hessian", "asymptotic", "godrons", "sphere"),
    box: tuple = (-5.0, 5.0, -5.0, 5.0),
    seed: int = 0,
) -> list[PlotSpec]:
    """Plane view and two hemisphere-disk views for the requested layers."""
    plane = PlotSpec([], ("rect", *box), title="plane")
    upper = PlotSpec([], ("disk",), title="upper hemisphere")
    lower = PlotSpec([], ("disk",), title="lower hemisphere")

    hess_polys = []
    if "hessian" in layers:
        h = hessian(f)
        if not h.is_zero():
            for comp in trace_curve(h, box, 400):
                hess_polys.append(comp.points)
        plane.layers.append(Layer(polylines=hess_polys, style={"name": "hessian"}))

    asym_polys = []
    if "asymptotic" in layers or "sphere" in layers:
        asym_polys = _asymptotic_polylines(f, box, seed)
        if "asymptotic" in layers:
            plane.layers.append(Layer(polylines=asym_polys, style={"name": "asymptotic"}))

    if "godrons" in layers:
        markers = []
        try:
            for g in find_godrons(f):
                kind = ("godron_interior" if g.tangency is Tangency.INTERIOR
                        else "godron_exterior")
                markers.append((g.location[0], g.location[1], kind))
        except ValueError:
            pass
        plane.layers.append(Layer(points=markers))

    if "sphere" in layers:
        for spec, is_upper in ((upper, True), (lower, False)):
            curves = Layer(style={"name": "asymptotic"})
            for pl in asym_polys:
                curves.polylines.append([tuple(p) for p in _hemisphere_project(pl, is_upper)])
            hcurves = Layer(style={"name": "hessian"})
            for pl in hess_polys:
                hcurves.polylines.append([tuple(p) for p in _hemisphere_project(pl, is_upper)])
            marks = Layer()
            for p in singular_points_at_infinity(f):
                u, v, _ = p.equator_point
                marks.points.append((u, v, "singular_infinity"))
            spec.layers.extend([curves, hcurves, marks])

    return [plane, upper, lower]


def figure_svg(specs: list[PlotSpec], panel: float = 360.0) -> str:
    """Assemble panels left to right into one standalone SVG 1.1 document."""
    pad = 16.0
    width = pad + len(specs) * (panel + pad)
    height = panel + 2 * pad
    body = []
    for i, spec in enumerate(specs):
        body.extend(_render_panel(spec, panel, pad + i * (panel + pad), pad))
    content = "\n".join(body)
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">\n'
        f"{content}\n</svg>\n"
    )


def emit_svg(specs: list[PlotSpec], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(figure_svg(specs))
