"""Static SVG figures for planar instances.

Coordinates are converted to floats here and only here, purely for drawing;
output is formatted to fixed precision so files are byte-stable.
"""
from __future__ import annotations

from .convex_thrackle import ThrackleInstance, ccw_hull
from .geometry import PointConfiguration

SIZE = 400
MARGIN = 24
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")


class RenderError(ValueError):
    pass


class _Viewport:
    def __init__(self, points):
        xs = [float(p[0]) for p in points]
        ys = [float(p[1]) for p in points]
        self.x0, self.y1 = min(xs), max(ys)
        span = max(max(xs) - self.x0, self.y1 - min(ys)) or 1.0
        self.scale = (SIZE - 2 * MARGIN) / span

    def __call__(self, p):
        x = MARGIN + (float(p[0]) - self.x0) * self.scale
        y = MARGIN + (self.y1 - float(p[1])) * self.scale
        return f"{x:.3f}", f"{y:.3f}"


def _document(body):
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
            f'viewBox="0 0 {SIZE} {SIZE}">\n'
            f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>\n')
    return head + "".join(line + "\n" for line in body) + "</svg>\n"


def render_thrackle(inst: ThrackleInstance) -> str:
    if inst.dim != 2:
        raise RenderError(f"cannot draw a {inst.dim}-dimensional instance; use the JSON output")
    view = _Viewport([p for _, p in inst.W])
    body = []
    for i in range(inst.m):
        colour = PALETTE[i % len(PALETTE)]
        verts = [inst.point(v) for v in inst.extreme_vertices(i)]
        if inst.body_dim(i) == 2:
            pts = " ".join(",".join(view(p)) for p in ccw_hull(verts))
            body.append(f'<polygon class="body" points="{pts}" fill="{colour}" fill-opacity="0.15" '
                        f'stroke="{colour}" stroke-width="2"/>')
        else:
            (x1, y1), (x2, y2) = view(verts[0]), view(verts[1])
            body.append(f'<line class="body" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                        f'stroke="{colour}" stroke-width="2"/>')
    vertices = set(inst.V)
    for wid, p in inst.W:
        x, y = view(p)
        if wid in vertices:
            body.append(f'<circle class="vertex" cx="{x}" cy="{y}" r="4" fill="black"/>')
        else:
            body.append(f'<circle class="transversal" cx="{x}" cy="{y}" r="3" fill="white" '
                        f'stroke="black" stroke-width="1.5"/>')
    return _document(body)


def render_config(config: PointConfiguration) -> str:
    if config.dim != 2:
        raise RenderError(f"cannot draw points in R^{config.dim}; use the JSON output")
    view = _Viewport(config.points)
    body = []
    for i, p in enumerate(config.points):
        x, y = view(p)
        colour = PALETTE[config.colors[i] % len(PALETTE)] if config.colors else "black"
        body.append(f'<circle class="point" cx="{x}" cy="{y}" r="4" fill="{colour}"/>')
    return _document(body)
