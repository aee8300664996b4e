"""Minimal SVG line plots for density profiles (no plotting dependency)."""

import math
from xml.sax.saxutils import escape

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
W, H = 640, 400
_L, _R, _T, _B = 60, 150, 30, 50


def _fmt(v):
    return f"{v:.2f}"


def line_plot_svg(series, title="", xlabel="n", ylabel="", logx=True, ymax=None):
    """Render ``{name: [(x, y), ...]}`` as an SVG document string.

    With ``logx`` the horizontal axis is log2(x).  Output is deterministic for
    equal input.
    """
    pts = [(x, y) for s in series.values() for x, y in s]
    if not pts:
        pts = [(1, 0), (2, 1)]
    fx = (lambda v: math.log2(v)) if logx else float
    xs = [fx(x) for x, _ in pts]
    x0, x1 = min(xs), max(xs)
    if x1 == x0:
        x1 = x0 + 1
    y0 = 0.0
    y1 = float(ymax) if ymax is not None else max(1.0, max(float(y) for _, y in pts))
    pw, ph = W - _L - _R, H - _T - _B

    def px(x):
        return _L + (fx(x) - x0) / (x1 - x0) * pw

    def py(y):
        return _T + ph - (float(y) - y0) / (y1 - y0) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" '
           f'viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="11">',
           f'<rect width="{W}" height="{H}" fill="white"/>',
           f'<text x="{W / 2 - _R / 2:.0f}" y="18" text-anchor="middle" font-size="13">'
           f'{escape(title)}</text>',
           f'<line x1="{_L}" y1="{_T + ph}" x2="{_L + pw}" y2="{_T + ph}" stroke="black"/>',
           f'<line x1="{_L}" y1="{_T}" x2="{_L}" y2="{_T + ph}" stroke="black"/>']
    for i in range(5):
        yv = y0 + (y1 - y0) * i / 4
        yy = py(yv)
        out.append(f'<line x1="{_L - 4}" y1="{_fmt(yy)}" x2="{_L}" y2="{_fmt(yy)}" stroke="black"/>')
        out.append(f'<text x="{_L - 6}" y="{_fmt(yy + 4)}" text-anchor="end">{yv:.2f}</text>')
    for t in range(math.floor(x0), math.ceil(x1) + 1):
        if x0 <= t <= x1:
            xx = _L + (t - x0) / (x1 - x0) * pw
            label = f"2^{t}" if logx else str(t)
            out.append(f'<line x1="{_fmt(xx)}" y1="{_T + ph}" x2="{_fmt(xx)}" y2="{_T + ph + 4}" stroke="black"/>')
            out.append(f'<text x="{_fmt(xx)}" y="{_T + ph + 16}" text-anchor="middle">{label}</text>')
    out.append(f'<text x="{_L + pw / 2:.0f}" y="{H - 12}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="14" y="{_T + ph / 2:.0f}" text-anchor="middle" '
               f'transform="rotate(-90 14 {_T + ph / 2:.0f})">{escape(ylabel)}</text>')
    for idx, (name, s) in enumerate(series.items()):
        color = _COLORS[idx % len(_COLORS)]
        s = sorted(s)
        if s:
            path = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in s)
            out.append(f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="1.5"/>')
            for x, y in s:
                out.append(f'<circle cx="{_fmt(px(x))}" cy="{_fmt(py(y))}" r="2.5" fill="{color}"/>')
        ly = _T + 14 * idx + 8
        out.append(f'<line x1="{W - _R + 12}" y1="{ly}" x2="{W - _R + 30}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{W - _R + 34}" y="{ly + 4}">{escape(str(name))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
