"""Static SVG renderings of diagrams, barcodes and landscapes.

Hand-rolled SVG keeps the output byte-identical across runs (no library
metadata or timestamps), which the batch pipelines promise.
"""
from __future__ import annotations

import math

import numpy as np

from .landscapes import Landscape
from .persistence import PersistenceDiagram

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _color(dim: int) -> str:
    return _PALETTE[dim % len(_PALETTE)]


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _svg(width, height, body) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'<rect width="{width}" height="{height}" fill="white"/>\n'
    )
    return head + body + "</svg>\n"


def _diagram_range(dgm: PersistenceDiagram) -> float:
    finite = dgm.deaths[np.isfinite(dgm.deaths)]
    hi = max(
        float(finite.max()) if len(finite) else 0.0,
        float(dgm.births.max()) if len(dgm.births) else 0.0,
        1e-9,
    )
    return 1.05 * hi


def diagram_svg(dgm: PersistenceDiagram, band_eta: float = None, size: int = 480) -> str:
    """Persistence diagram: birth vs death, one color per dimension, infinite
    deaths drawn on a dashed top line.  With band_eta, the region within
    persistence 2*eta of the diagonal is shaded (points outside it are the
    significant ones)."""
    pad, plot = 40.0, size - 60.0
    hi = _diagram_range(dgm)
    inf_y = pad - 14.0

    def sx(v):
        return pad + plot * v / hi

    def sy(v):
        return pad + plot - plot * v / hi

    parts = []
    if band_eta is not None and band_eta > 0:
        w = min(2.0 * band_eta, hi)
        pts = [(0.0, 0.0), (hi, hi), (hi - w, hi), (0.0, w)] if w < hi else [(0.0, 0.0), (hi, hi), (0.0, hi)]
        path = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in pts)
        parts.append(f'<polygon points="{path}" fill="#fdd" stroke="none"/>\n')
    parts.append(
        f'<line x1="{_fmt(sx(0))}" y1="{_fmt(sy(0))}" x2="{_fmt(sx(hi))}" y2="{_fmt(sy(hi))}" '
        f'stroke="#999" stroke-width="1"/>\n'
    )
    parts.append(
        f'<line x1="{_fmt(pad)}" y1="{_fmt(inf_y)}" x2="{_fmt(pad + plot)}" y2="{_fmt(inf_y)}" '
        f'stroke="#bbb" stroke-width="1" stroke-dasharray="4 3"/>\n'
    )
    parts.append(f'<text x="{_fmt(pad + plot + 4)}" y="{_fmt(inf_y + 4)}" font-size="11">inf</text>\n')
    for d, b, de in dgm:
        y = inf_y if math.isinf(de) else sy(de)
        parts.append(
            f'<circle cx="{_fmt(sx(b))}" cy="{_fmt(y)}" r="3.5" fill="{_color(int(d))}" '
            f'fill-opacity="0.75"/>\n'
        )
    parts.append(
        f'<rect x="{_fmt(pad)}" y="{_fmt(pad)}" width="{_fmt(plot)}" height="{_fmt(plot)}" '
        f'fill="none" stroke="#333" stroke-width="1"/>\n'
    )
    parts.append(f'<text x="{_fmt(pad + plot / 2)}" y="{_fmt(size - 6)}" font-size="12" text-anchor="middle">birth</text>\n')
    parts.append(
        f'<text x="12" y="{_fmt(pad + plot / 2)}" font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 12 {_fmt(pad + plot / 2)})">death</text>\n'
    )
    return _svg(size, size, "".join(parts))


def barcode_svg(dgm: PersistenceDiagram, size: int = 480) -> str:
    """Barcode: one horizontal bar per diagram point, grouped by dimension,
    infinite bars running to the right edge with an arrowhead notch."""
    hi = _diagram_range(dgm)
    n = max(len(dgm), 1)
    row_h = 12.0
    pad = 40.0
    height = int(2 * pad + row_h * n)
    width = size

    def sx(v):
        return pad + (width - 2 * pad) * v / hi

    parts = []
    y = pad
    for d, b, de in dgm:
        x1 = sx(b)
        x2 = sx(hi) if math.isinf(de) else sx(de)
        parts.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y)}" x2="{_fmt(x2)}" y2="{_fmt(y)}" '
            f'stroke="{_color(int(d))}" stroke-width="4"/>\n'
        )
        if math.isinf(de):
            parts.append(
                f'<text x="{_fmt(x2 + 2)}" y="{_fmt(y + 4)}" font-size="10">&#8734;</text>\n'
            )
        y += row_h
    parts.append(
        f'<line x1="{_fmt(pad)}" y1="{_fmt(y)}" x2="{_fmt(sx(hi))}" y2="{_fmt(y)}" stroke="#333"/>\n'
    )
    return _svg(width, height, "".join(parts))


def landscape_svg(ls: Landscape, size: int = 560) -> str:
    """Landscape levels as polylines over the grid, first level on top."""
    width, height = size, int(size * 0.55)
    pad = 40.0
    vmax = max(float(ls.values.max()), 1e-9)
    tmax = ls.tmax if ls.tmax > 0 else 1.0

    def sx(t):
        return pad + (width - 2 * pad) * t / tmax

    def sy(v):
        return height - pad - (height - 2 * pad) * v / vmax

    parts = [
        f'<line x1="{_fmt(pad)}" y1="{_fmt(sy(0))}" x2="{_fmt(sx(tmax))}" y2="{_fmt(sy(0))}" stroke="#333"/>\n'
    ]
    for k in range(ls.num_levels - 1, -1, -1):
        pts = " ".join(f"{_fmt(sx(t))},{_fmt(sy(v))}" for t, v in zip(ls.grid, ls.values[k]))
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{_color(k)}" stroke-width="1.5"/>\n'
        )
    return _svg(width, height, "".join(parts))
