"""Minimal dependency-free SVG charts (scatter and line) with axes and legend."""

import math
from xml.sax.saxutils import escape

import numpy as np

WIDTH, HEIGHT = 720, 440
MARGIN = dict(left=70, right=150, top=40, bottom=60)

TECH_COLORS = {"2.4GHz": "#d62728", "UWB": "#1f77b4", "mmWave": "#2ca02c"}
SOURCE_COLORS = {"rf": "#9467bd", "vibration": "#ff7f0e", "thermal": "#8c564b",
                 "total": "#333333"}
_FALLBACK = ("#17becf", "#bcbd22", "#e377c2", "#7f7f7f")


def nice_ticks(lo, hi, count=6):
    if not (math.isfinite(lo) and math.isfinite(hi)):
        lo, hi = 0.0, 1.0
    if hi <= lo:
        lo, hi = lo - 1.0, hi + 1.0
    raw = (hi - lo) / max(count - 1, 1)
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    start = math.floor(lo / step) * step
    stop = math.ceil(hi / step) * step
    n = int(round((stop - start) / step))
    return [start + i * step for i in range(n + 1)]


def _fmt(v):
    return f"{v:.2f}"


def _label(v):
    return f"{v:g}" if abs(v) < 1e5 else f"{v:.1e}"


def decimate(x, y, max_points=2000):
    """Keep min and max per bucket so peaks survive downsampling."""
    x, y = np.asarray(x), np.asarray(y)
    if len(x) <= max_points:
        return x, y
    buckets = max_points // 2
    edges = np.linspace(0, len(x), buckets + 1).astype(int)
    idx = []
    for a, b in zip(edges[:-1], edges[1:]):
        if b <= a:
            continue
        seg = y[a:b]
        i, j = a + int(np.argmin(seg)), a + int(np.argmax(seg))
        idx.extend(sorted({i, j}))
    idx = np.array(idx)
    return x[idx], y[idx]


def _chart(series, title, xlabel, ylabel, colors, kind):
    """series: list of (name, x, y)."""
    xs = [np.asarray(x, float) for _, x, _ in series if len(x)]
    ys = [np.asarray(y, float) for _, _, y in series if len(y)]
    xlo = min((x.min() for x in xs), default=0.0)
    xhi = max((x.max() for x in xs), default=1.0)
    ylo = min((y.min() for y in ys), default=0.0)
    yhi = max((y.max() for y in ys), default=1.0)
    xt, yt = nice_ticks(xlo, xhi), nice_ticks(ylo, yhi)
    x0, x1, y0, y1 = xt[0], xt[-1], yt[0], yt[-1]
    left, top = MARGIN["left"], MARGIN["top"]
    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def px(v):
        return left + (v - x0) / (x1 - x0) * pw

    def py(v):
        return top + ph - (v - y0) / (y1 - y0) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" '
           f'width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">',
           f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
           f'<text x="{WIDTH / 2:.0f}" y="22" text-anchor="middle" font-size="15">'
           f'{escape(title)}</text>']
    for v in xt:
        out.append(f'<line x1="{_fmt(px(v))}" y1="{top}" x2="{_fmt(px(v))}" y2="{top + ph}" '
                   f'stroke="#e0e0e0"/>')
        out.append(f'<text x="{_fmt(px(v))}" y="{top + ph + 16}" text-anchor="middle">'
                   f'{_label(v)}</text>')
    for v in yt:
        out.append(f'<line x1="{left}" y1="{_fmt(py(v))}" x2="{left + pw}" y2="{_fmt(py(v))}" '
                   f'stroke="#e0e0e0"/>')
        out.append(f'<text x="{left - 6}" y="{_fmt(py(v) + 4)}" text-anchor="end">'
                   f'{_label(v)}</text>')
    out.append(f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" '
               f'stroke="black"/>')
    out.append(f'<text x="{left + pw / 2:.0f}" y="{HEIGHT - 18}" text-anchor="middle">'
               f'{escape(xlabel)}</text>')
    out.append(f'<text x="18" y="{top + ph / 2:.0f}" text-anchor="middle" '
               f'transform="rotate(-90 18 {top + ph / 2:.0f})">{escape(ylabel)}</text>')

    spare = iter(_FALLBACK * 4)
    for k, (name, x, y) in enumerate(series):
        color = colors.get(name) or next(spare)
        x, y = np.asarray(x, float), np.asarray(y, float)
        if kind == "line":
            x, y = decimate(x, y)
            pts = " ".join(f"{_fmt(px(a))},{_fmt(py(b))}" for a, b in zip(x, y))
            if pts:
                out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.2" '
                           f'points="{pts}"/>')
        else:
            for a, b in zip(x, y):
                out.append(f'<circle cx="{_fmt(px(a))}" cy="{_fmt(py(b))}" r="2.5" '
                           f'fill="{color}" fill-opacity="0.75"/>')
        ly = top + 10 + 20 * k
        lx = left + pw + 14
        out.append(f'<rect x="{lx}" y="{ly - 8}" width="12" height="12" fill="{color}"/>')
        out.append(f'<text x="{lx + 18}" y="{ly + 2}">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def scatter_svg(series, title, xlabel, ylabel, colors=TECH_COLORS):
    return _chart(series, title, xlabel, ylabel, colors, "scatter")


def line_svg(series, title, xlabel, ylabel, colors=SOURCE_COLORS):
    return _chart(series, title, xlabel, ylabel, colors, "line")
