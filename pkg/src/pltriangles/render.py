"""SVG drawings of wiring diagrams and line arrangements.

Plain SVG text is written by hand so the output is stable and diffable.
"""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

from mpmath import mp

from .diagram import WiringDiagram
from .errors import InvalidParameter
from .faces import count_triangles
from .geometry import LineArrangement, crossing_x, crossing_y

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"]


@dataclass(frozen=True)
class RenderOptions:
    width: int = 640
    height: int = 320
    margin: int = 24
    label_wires: bool = True
    highlight_triangles: bool = False

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0 or self.margin < 0:
            raise InvalidParameter("render dimensions must be positive")
        if 2 * self.margin >= min(self.width, self.height):
            raise InvalidParameter("margin leaves no drawing area")


def _fmt(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".")


def _points(pts) -> str:
    return " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)


def _svg(opts: RenderOptions, body: list[str]) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{opts.width}" '
            f'height="{opts.height}" viewBox="0 0 {opts.width} {opts.height}">')
    return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *body, "</svg>"]) + "\n"


class _DiagramLayout:
    def __init__(self, d: WiringDiagram, opts: RenderOptions):
        self.d = d
        self.opts = opts
        inner_w = opts.width - 2 * opts.margin - (30 if opts.label_wires else 0)
        self.x0 = opts.margin + (30 if opts.label_wires else 0)
        self.dx = inner_w / (d.m + 1)
        self.dy = (opts.height - 2 * opts.margin) / max(d.n - 1, 1)

    def cx(self, k: int) -> float:
        return self.x0 + k * self.dx

    def track(self, p: int) -> float:
        return self.opts.margin + (p - 1) * self.dy

    def gap_mid(self, g: int) -> float:
        return (self.track(g) + self.track(g + 1)) / 2

    def wire_paths(self) -> dict[int, list[tuple[float, float]]]:
        d = self.d
        order = list(range(1, d.n + 1))
        paths = {w: [(self.x0, self.track(p))] for p, w in enumerate(order, start=1)}
        half = self.dx / 2
        for k, col in enumerate(d.columns, start=1):
            new = order[:]
            for r in col:
                new[r - 1], new[r] = order[r], order[r - 1]
            for p in range(1, d.n + 1):
                if new[p - 1] != order[p - 1]:
                    w = order[p - 1]
                    q = new.index(w) + 1
                    paths[w].append((self.cx(k) - half, self.track(p)))
                    paths[w].append((self.cx(k) + half, self.track(q)))
            order = new
        end = self.x0 + (d.m + 1) * self.dx
        for p, w in enumerate(order, start=1):
            paths[w].append((end, self.track(p)))
        return paths

    def face_polygon(self, c1: int, g: int) -> list[tuple[float, float]]:
        """Outline of the face opened at column ``c1`` in gap ``g``."""
        cols = self.d.columns
        c2 = next(k for k in range(c1 + 1, len(cols) + 1) if g in cols[k - 1])
        half = self.dx / 2
        top = [(self.cx(c1), self.gap_mid(g)), (self.cx(c1) + half, self.track(g))]
        bottom = [(self.cx(c1), self.gap_mid(g)), (self.cx(c1) + half, self.track(g + 1))]
        for k in range(c1 + 1, c2):
            if g - 1 in cols[k - 1]:
                top += [(self.cx(k) - half, self.track(g)), (self.cx(k), self.gap_mid(g - 1)),
                        (self.cx(k) + half, self.track(g))]
            if g + 1 in cols[k - 1]:
                bottom += [(self.cx(k) - half, self.track(g + 1)), (self.cx(k), self.gap_mid(g + 1)),
                           (self.cx(k) + half, self.track(g + 1))]
        top += [(self.cx(c2) - half, self.track(g)), (self.cx(c2), self.gap_mid(g))]
        bottom += [(self.cx(c2) - half, self.track(g + 1))]
        return top + bottom[::-1]


def render_diagram(d: WiringDiagram, opts: RenderOptions = RenderOptions()) -> str:
    lay = _DiagramLayout(d, opts)
    body = []
    if opts.highlight_triangles:
        for c1, g in count_triangles(d).triangles:
            body.append(f'<polygon class="triangle" points="{_points(lay.face_polygon(c1, g))}" '
                        f'fill="#fde68a" stroke="none"/>')
    for w, pts in lay.wire_paths().items():
        color = PALETTE[(w - 1) % len(PALETTE)]
        body.append(f'<polyline class="wire" data-wire="{w}" points="{_points(pts)}" '
                    f'fill="none" stroke="{color}" stroke-width="2"/>')
        if opts.label_wires:
            body.append(f'<text x="{_fmt(opts.margin)}" y="{_fmt(lay.track(w) + 4)}" '
                        f'font-family="sans-serif" font-size="12">{w}</text>')
    for k, col in enumerate(d.columns, start=1):
        for r in col:
            body.append(f'<circle class="switch" cx="{_fmt(lay.cx(k))}" cy="{_fmt(lay.gap_mid(r))}" '
                        f'r="3" fill="black"/>')
    return _svg(opts, body)


def render_arrangement(A: LineArrangement, opts: RenderOptions = RenderOptions()) -> str:
    """Straight lines clipped to the bounding box of all crossings plus a margin."""
    prec = A.precision
    pts = []
    for i in range(len(A)):
        for j in range(i + 1, len(A)):
            a, b = A.lines[i], A.lines[j]
            x, y = crossing_x(a, b).interval(prec), crossing_y(a, b).interval(prec)
            pts.append((float(mp.mpf(x.mid)), float(mp.mpf(y.mid))))
    xs = [p[0] for p in pts] or [0.0]
    ys = [p[1] for p in pts] or [0.0]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    padx = (xmax - xmin) * 0.1 or 1.0
    pady = (ymax - ymin) * 0.1 or 1.0
    xmin, xmax, ymin, ymax = xmin - padx, xmax + padx, ymin - pady, ymax + pady
    m = opts.margin
    sx = (opts.width - 2 * m) / (xmax - xmin)
    sy = (opts.height - 2 * m) / (ymax - ymin)

    def to_px(x: float, y: float) -> tuple[float, float]:
        return m + (x - xmin) * sx, opts.height - m - (y - ymin) * sy

    body = [f'<clipPath id="box"><rect x="{m}" y="{m}" width="{opts.width - 2 * m}" '
            f'height="{opts.height - 2 * m}"/></clipPath>', '<g clip-path="url(#box)">']
    for idx, ln in enumerate(A.lines):
        s = float(mp.mpf(ln.slope.interval(prec).mid))
        a = float(mp.mpf(ln.anchor.interval(prec).mid))
        p1, p2 = to_px(xmin, s * (xmin - a)), to_px(xmax, s * (xmax - a))
        color = PALETTE[idx % len(PALETTE)]
        body.append(f'<line class="line" data-label="{escape(ln.label)}" x1="{_fmt(p1[0])}" '
                    f'y1="{_fmt(p1[1])}" x2="{_fmt(p2[0])}" y2="{_fmt(p2[1])}" '
                    f'stroke="{color}" stroke-width="1.5"/>')
    body.append("</g>")
    body.append(f'<rect x="{m}" y="{m}" width="{opts.width - 2 * m}" height="{opts.height - 2 * m}" '
                f'fill="none" stroke="#999"/>')
    return _svg(opts, body)
