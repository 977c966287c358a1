"""SVG pictures of plane cubics: an affine view and a projective-triangle view.

Curves are traced by marching squares: the cubic is evaluated on a grid,
and every cell whose corners change sign contributes a segment between
linearly interpolated edge crossings.  Exact coefficients are converted to
floats only here.

Projective view: (X, Y, Z) with X, Y, Z >= 0 is drawn at the barycentric
combination of the triangle vertices (0,0,1) = left, (1,0,0) = right,
(0,1,0) = top.  Points with mixed signs are folded onto the same triangle
via (|X|, |Y|, |Z|), so all four sign charts are overlaid and the whole
real curve is visible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from xml.sax.saxutils import escape

import numpy as np

from .core import MONOMIALS, TernaryCubic, fmt_rational

SIZE = 400.0
MARGIN = 20.0


@dataclass(frozen=True)
class PlotConfig:
    samples: int = 800
    size: float = SIZE
    window: tuple[float, float, float, float] | None = None  # x0, x1, y0, y1
    pad: float = 0.25


def _coefficients(C: TernaryCubic) -> list[tuple[float, tuple[int, int, int]]]:
    big = max(abs(g) for g in C.gamma) or Fraction(1)
    return [(float(g / big), tuple(int(d) for d in e)) for g, e in zip(C.gamma, MONOMIALS) if g]


def _evaluate(coeffs, X, Y, Z):
    out = np.zeros_like(X)
    for c, (i, j, k) in coeffs:
        out = out + c * X**i * Y**j * Z**k
    return out


def _march(F: np.ndarray, to_svg) -> list[tuple[tuple[float, float], tuple[float, float]]]:
    """Segments of the zero set of F sampled on an index grid (rows = v, cols = u)."""
    neg = F < 0
    valid = ~np.isnan(F)
    ok = valid[:-1, :-1] & valid[:-1, 1:] & valid[1:, 1:] & valid[1:, :-1]
    same = (neg[:-1, :-1] == neg[:-1, 1:]) & (neg[:-1, 1:] == neg[1:, 1:]) & (neg[1:, 1:] == neg[1:, :-1])
    segments = []
    for v, u in np.argwhere(ok & ~same):
        corners = ((u, v), (u + 1, v), (u + 1, v + 1), (u, v + 1))
        vals = [F[b, a] for a, b in corners]
        crossings = []
        for e in range(4):
            (a0, b0), (a1, b1) = corners[e], corners[(e + 1) % 4]
            f0, f1 = vals[e], vals[(e + 1) % 4]
            if (f0 < 0) != (f1 < 0):
                t = f0 / (f0 - f1)
                crossings.append(to_svg(a0 + t * (a1 - a0), b0 + t * (b1 - b0)))
        for i in range(0, len(crossings) - 1, 2):
            segments.append((crossings[i], crossings[i + 1]))
    return segments


def _path(segments) -> str:
    return " ".join(f"M{x0:.2f} {y0:.2f}L{x1:.2f} {y1:.2f}" for (x0, y0), (x1, y1) in segments)


def _real_axis_roots(C: TernaryCubic) -> list[tuple[float, float]]:
    pts = []
    for idx, axis in ((("300", "201", "102", "003"), 0), (("030", "021", "012", "003"), 1)):
        coeffs = [float(C[k]) for k in idx]
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
        if len(coeffs) < 2:
            continue
        for r in np.roots(coeffs):
            if abs(r.imag) < 1e-9:
                pts.append((float(r.real), 0.0) if axis == 0 else (0.0, float(r.real)))
    return pts


def auto_window(C: TernaryCubic, marked, pad: float = 0.25) -> tuple[float, float, float, float]:
    """Bounding box of the finite marked points and the real axis crossings, padded."""
    pts = [(float(P[0] / P[2]), float(P[1] / P[2])) for P in marked if P[2] != 0]
    pts += _real_axis_roots(C)
    if not pts:
        return (-10.0, 10.0, -10.0, 10.0)
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    cx, cy = (max(xs) + min(xs)) / 2, (max(ys) + min(ys)) / 2
    half = span * (0.5 + pad)
    return (cx - half, cx + half, cy - half, cy + half)


def _document(title: str, body: list[str], size: float) -> str:
    total = size + 2 * MARGIN
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{total:.0f}" height="{total:.0f}" '
            f'viewBox="0 0 {total:.0f} {total:.0f}">')
    return "\n".join([head, f"  <title>{escape(title)}</title>",
                      f'  <rect x="0" y="0" width="{total:.0f}" height="{total:.0f}" fill="white"/>',
                      *("  " + b for b in body), "</svg>", ""])


def _marker(x: float, y: float, P) -> str:
    label = ",".join(fmt_rational(Fraction(c)) for c in P)
    return (f'<circle class="marked" cx="{x:.2f}" cy="{y:.2f}" r="4" fill="red" '
            f'data-point="{label}"/>')


def affine_svg(C: TernaryCubic, marked=(), config: PlotConfig = PlotConfig(), title: str = "") -> str:
    """The real affine part Z = 1 of the cubic in the configured window."""
    x0, x1, y0, y1 = config.window or auto_window(C, marked, config.pad)
    n, size = config.samples, config.size
    us = np.linspace(x0, x1, n + 1)
    vs = np.linspace(y1, y0, n + 1)  # SVG y grows downwards
    U, V = np.meshgrid(us, vs)
    F = _evaluate(_coefficients(C), U, V, np.ones_like(U))

    def to_svg(a, b):
        return (MARGIN + a * size / n, MARGIN + b * size / n)

    def world(x, y):
        return (MARGIN + (x - x0) / (x1 - x0) * size, MARGIN + (y1 - y) / (y1 - y0) * size)

    body = [f'<g class="window" data-window="{x0:g},{x1:g},{y0:g},{y1:g}"/>']
    if x0 <= 0 <= x1:
        ax, _ = world(0, 0)
        body.append(f'<line class="axis" x1="{ax:.2f}" y1="{MARGIN:.2f}" x2="{ax:.2f}" '
                    f'y2="{MARGIN + size:.2f}" stroke="#aaa"/>')
    if y0 <= 0 <= y1:
        _, ay = world(0, 0)
        body.append(f'<line class="axis" x1="{MARGIN:.2f}" y1="{ay:.2f}" x2="{MARGIN + size:.2f}" '
                    f'y2="{ay:.2f}" stroke="#aaa"/>')
    segments = _march(F, to_svg)
    if segments:
        body.append(f'<path class="curve" d="{_path(segments)}" fill="none" stroke="black"/>')
    for P in marked:
        if P[2] == 0:
            continue
        x, y = float(P[0] / P[2]), float(P[1] / P[2])
        if x0 <= x <= x1 and y0 <= y <= y1:
            body.append(_marker(*world(x, y), P))
    return _document(title or "affine view", body, size)


def _triangle(size: float):
    left = (MARGIN, MARGIN + size)
    right = (MARGIN + size, MARGIN + size)
    top = (MARGIN + size / 2, MARGIN + size * (1 - 3 ** 0.5 / 2))
    return left, right, top


def projective_svg(C: TernaryCubic, marked=(), config: PlotConfig = PlotConfig(), title: str = "") -> str:
    """Barycentric triangle view with the four sign charts folded together."""
    n, size = config.samples, config.size
    left, right, top = _triangle(size)
    # grid in barycentric (a, b) = weights of (1,0,0) and (0,1,0); c = 1 - a - b
    a = np.linspace(0.0, 1.0, n + 1)
    A, Bw = np.meshgrid(a, a[::-1])
    Cw = 1.0 - A - Bw
    Cw[Cw < -1e-12] = np.nan
    Cw = np.clip(Cw, 0.0, None)
    coeffs = _coefficients(C)

    def to_svg(u, v):
        wa = u / n
        wb = 1 - v / n
        wc = 1 - wa - wb
        return (wa * right[0] + wb * top[0] + wc * left[0], wa * right[1] + wb * top[1] + wc * left[1])

    body = [f'<polygon class="triangle" points="{left[0]:.2f},{left[1]:.2f} {right[0]:.2f},{right[1]:.2f} '
            f'{top[0]:.2f},{top[1]:.2f}" fill="none" stroke="#aaa"/>']
    segments = []
    for sx, sy in ((1, 1), (-1, 1), (1, -1), (-1, -1)):
        F = _evaluate(coeffs, sx * A, sy * Bw, Cw)
        segments += _march(F, to_svg)
    if segments:
        body.append(f'<path class="curve" d="{_path(segments)}" fill="none" stroke="black"/>')
    for P in marked:
        w = [abs(float(c)) for c in P]
        s = sum(w)
        x = (w[0] * right[0] + w[1] * top[0] + w[2] * left[0]) / s
        y = (w[0] * right[1] + w[1] * top[1] + w[2] * left[1]) / s
        body.append(_marker(x, y, P))
    return _document(title or "projective view", body, size)
