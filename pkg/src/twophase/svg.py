"""Hand-written SVG 1.1 output: region maps with free-boundary overlay and line plots.

Every number is printed with a fixed format, so identical inputs give
byte-identical documents.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .grid import Annulus, Disk, HalfDisk, Rectangle

__all__ = ["plot_field", "plot_traces", "FILLS"]

FILLS = {"plus": "#d6604d", "minus": "#4393c3", "lambda": "#d9d9d9", "band": "#ffffff"}
SERIES_COLORS = ("#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02")


def _f(x: float) -> str:
    return f"{x:.2f}"


class _Frame:
    """Affine map from physical coordinates (x2 across, x1 up) to the canvas."""

    def __init__(self, bbox, box):
        (a1, b1), (a2, b2) = bbox
        x0, y0, w, h = box
        self.s = min(w / (b2 - a2), h / (b1 - a1))
        self.ox = x0 + 0.5 * (w - self.s * (b2 - a2)) - self.s * a2
        self.oy = y0 + 0.5 * (h + self.s * (b1 - a1)) + self.s * a1

    def __call__(self, x1, x2):
        return self.ox + self.s * x2, self.oy - self.s * x1


def _outline(shape, fr: _Frame) -> list[str]:
    style = 'fill="none" stroke="#000000" stroke-width="2"'
    if isinstance(shape, Rectangle):
        (a1, b1), (a2, b2) = shape.bbox()
        x, y = fr(b1, a2)
        return [f'<rect x="{_f(x)}" y="{_f(y)}" width="{_f(fr.s * (b2 - a2))}" '
                f'height="{_f(fr.s * (b1 - a1))}" {style}/>']
    if isinstance(shape, (Disk, Annulus)):
        c = shape.center
        radii = [shape.radius] if isinstance(shape, Disk) else [shape.inner, shape.outer]
        out = []
        for r in radii:
            x, y = fr(c[0], c[1])
            out.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="{_f(fr.s * r)}" {style}/>')
        return out
    if isinstance(shape, HalfDisk):
        R = shape.radius
        x0, y0 = fr(0.0, -R)
        x1, y1 = fr(0.0, R)
        rr = _f(fr.s * R)
        return [f'<path d="M {_f(x0)} {_f(y0)} A {rr} {rr} 0 0 1 {_f(x1)} {_f(y1)} Z" {style}/>']
    raise TypeError(f"cannot draw {type(shape).__name__}")


def _legend(items, x, y) -> list[str]:
    out = []
    for k, (label, kind, color) in enumerate(items):
        yy = y + 24 * k
        if kind == "fill":
            out.append(f'<rect x="{_f(x)}" y="{_f(yy - 12)}" width="16" height="16" '
                       f'fill="{color}" stroke="#000000" stroke-width="0.5"/>')
        else:
            out.append(f'<line x1="{_f(x)}" y1="{_f(yy - 4)}" x2="{_f(x + 16)}" y2="{_f(yy - 4)}" '
                       f'stroke="{color}" stroke-width="2" {kind}/>')
        out.append(f'<text x="{_f(x + 24)}" y="{_f(yy)}" font-family="sans-serif" '
                   f'font-size="14">{label}</text>')
    return out


def plot_field(u, decomp, gamma, title: str = "") -> str:
    """Region map of Omega+, Omega-, Lambda with dashed Gamma and the domain outline.

    The canvas is 800x800; each node owns the ``h x h`` square around it and
    equal neighbours along a row merge into one rectangle.
    """
    W = H = 800
    mask = u.mask
    grid = u.grid
    fr = _Frame(mask.shape.bbox(), (40, 50, 720, 620))
    h = grid.h
    labels = np.full(mask.node_class.shape, "", dtype=object)
    labels[decomp.omega_plus] = "plus"
    labels[decomp.omega_minus] = "minus"
    labels[decomp.lambda_set] = "lambda"
    # boundary nodes are not classified by the decomposition: colour them by sign
    rest = mask.inside & ~mask.interior
    with np.errstate(invalid="ignore"):
        v = u.values
        labels[rest & (v > decomp.tau_u)] = "plus"
        labels[rest & (v < -decomp.tau_u)] = "minus"
        labels[rest & (np.abs(v) <= decomp.tau_u)] = "lambda"
    labels[mask.inside & (labels == "")] = "band"
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" '
             f'viewBox="0 0 {W} {H}">',
             f'<rect x="0" y="0" width="{W}" height="{H}" fill="#ffffff"/>']
    if title:
        parts.append(f'<text x="{W // 2}" y="30" text-anchor="middle" font-family="sans-serif" '
                     f'font-size="18">{title}</text>')
    x1s, x2s = grid.x1, grid.x2
    for name in ("lambda", "plus", "minus", "band"):
        rects = []
        for i in range(grid.n1):
            row = labels[i] == name
            j = 0
            while j < grid.n2:
                if not row[j]:
                    j += 1
                    continue
                k = j
                while k + 1 < grid.n2 and row[k + 1]:
                    k += 1
                # clip node squares to the domain bounding box
                (a1, b1), (a2, b2) = mask.shape.bbox()
                lo1, hi1 = max(x1s[i] - h / 2, a1), min(x1s[i] + h / 2, b1)
                lo2, hi2 = max(x2s[j] - h / 2, a2), min(x2s[k] + h / 2, b2)
                px, py = fr(hi1, lo2)
                rects.append(f'<rect x="{_f(px)}" y="{_f(py)}" width="{_f(fr.s * (hi2 - lo2))}" '
                             f'height="{_f(fr.s * (hi1 - lo1))}"/>')
                j = k + 1
        if rects:
            parts.append(f'<g fill="{FILLS[name]}" stroke="none">')
            parts.extend(rects)
            parts.append("</g>")
    if gamma is not None and gamma.polylines:
        parts.append('<g fill="none" stroke="#000000" stroke-width="2" stroke-dasharray="8,5">')
        for line in gamma.polylines:
            pts = " ".join(f"{_f(a)},{_f(b)}" for a, b in (fr(p[0], p[1]) for p in line))
            parts.append(f'<polyline points="{pts}"/>')
        parts.append("</g>")
    parts.extend(_outline(mask.shape, fr))
    parts.extend(_legend([("u &gt; 0", "fill", FILLS["plus"]),
                          ("u &lt; 0", "fill", FILLS["minus"]),
                          ("u = 0, |grad u| = 0", "fill", FILLS["lambda"]),
                          ("free boundary", 'stroke-dasharray="8,5"', "#000000")], 60, 700))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    step = 10 ** math.floor(math.log10((hi - lo) / n))
    for m in (1, 2, 5, 10):
        if (hi - lo) / (m * step) <= n:
            step *= m
            break
    start = math.ceil(lo / step) * step
    return [start + k * step for k in range(int((hi - start) / step + 1e-9) + 1)]


def plot_traces(series: dict[str, tuple[Sequence[float], Sequence[float]]], title: str = "",
                xlabel: str = "r", ylabel: str = "value", logx: bool = False) -> str:
    """Line plot of radial traces; non-finite values are left out."""
    W, H = 800, 500
    L, R, T, B = 80, 180, 50, 60
    clean = {}
    for name, (xs, ys) in series.items():
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        ok = np.isfinite(xs) & np.isfinite(ys) & ((xs > 0) if logx else True)
        clean[name] = (xs[ok], ys[ok])
    allx = np.concatenate([v[0] for v in clean.values()]) if clean else np.zeros(0)
    ally = np.concatenate([v[1] for v in clean.values()]) if clean else np.zeros(0)
    tx = np.log10(allx) if logx else allx
    xlo, xhi = (float(tx.min()), float(tx.max())) if tx.size else (0.0, 1.0)
    ylo, yhi = (float(ally.min()), float(ally.max())) if ally.size else (0.0, 1.0)
    if xhi <= xlo:
        xlo, xhi = xlo - 0.5, xhi + 0.5
    pad = 0.05 * (yhi - ylo) if yhi > ylo else max(abs(yhi), 1.0) * 0.05
    ylo, yhi = ylo - pad, yhi + pad

    def X(x):
        x = math.log10(x) if logx else x
        return L + (W - L - R) * (x - xlo) / (xhi - xlo)

    def Y(y):
        return H - B - (H - T - B) * (y - ylo) / (yhi - ylo)

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" '
             f'viewBox="0 0 {W} {H}">',
             f'<rect x="0" y="0" width="{W}" height="{H}" fill="#ffffff"/>',
             f'<rect x="{L}" y="{T}" width="{W - L - R}" height="{H - T - B}" fill="none" '
             f'stroke="#000000" stroke-width="1"/>']
    if title:
        parts.append(f'<text x="{(W - R + L) // 2}" y="30" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="18">{title}</text>')
    for yt in _ticks(ylo, yhi):
        parts.append(f'<line x1="{L - 5}" y1="{_f(Y(yt))}" x2="{L}" y2="{_f(Y(yt))}" stroke="#000000"/>')
        parts.append(f'<text x="{L - 8}" y="{_f(Y(yt) + 4)}" text-anchor="end" '
                     f'font-family="sans-serif" font-size="12">{yt:.4g}</text>')
    xt = sorted({float(x) for x in allx}) if allx.size <= 12 else _ticks(xlo, xhi)
    for x in xt:
        parts.append(f'<line x1="{_f(X(x))}" y1="{H - B}" x2="{_f(X(x))}" y2="{H - B + 5}" stroke="#000000"/>')
        parts.append(f'<text x="{_f(X(x))}" y="{H - B + 20}" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="12">{x:.4g}</text>')
    parts.append(f'<text x="{(W - R + L) // 2}" y="{H - 15}" text-anchor="middle" '
                 f'font-family="sans-serif" font-size="14">{xlabel}</text>')
    parts.append(f'<text x="20" y="{(H - B + T) // 2}" text-anchor="middle" font-family="sans-serif" '
                 f'font-size="14" transform="rotate(-90 20 {(H - B + T) // 2})">{ylabel}</text>')
    for k, (name, (xs, ys)) in enumerate(clean.items()):
        color = SERIES_COLORS[k % len(SERIES_COLORS)]
        order = np.argsort(xs)
        pts = " ".join(f"{_f(X(x))},{_f(Y(y))}" for x, y in zip(xs[order], ys[order]))
        if len(xs) > 1:
            parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="2"/>')
        for x, y in zip(xs[order], ys[order]):
            parts.append(f'<circle cx="{_f(X(x))}" cy="{_f(Y(y))}" r="3" fill="{color}"/>')
        ly = T + 20 + 22 * k
        parts.append(f'<line x1="{W - R + 15}" y1="{ly - 4}" x2="{W - R + 35}" y2="{ly - 4}" '
                     f'stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{W - R + 42}" y="{ly}" font-family="sans-serif" '
                     f'font-size="13">{name}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
