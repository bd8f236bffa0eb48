"""SVG rendering of a fitted density with the probability up to x0 shaded.

Coordinate map (also written into every document as a leading comment)::

    px = left + (x - x_lo) / (x_hi - x_lo) * (width - left - right)
    py = top + (1 - min(y, y_max) / y_max) * (height - top - bottom)
"""

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .errors import InvalidOptions
from .quadrature import DEFAULT_SETTINGS, quantile

MARGINS = {"left": 64, "right": 24, "top": 56, "bottom": 44}


@dataclass(frozen=True)
class PlotOptions:
    width_px: int = 640
    height_px: int = 400
    x_range: tuple | None = None
    samples: int = 512
    title: str | None = None

    def __post_init__(self):
        for name in ("width_px", "height_px"):
            v = getattr(self, name)
            if not (isinstance(v, int) and 64 <= v <= 8192):
                raise InvalidOptions(f"{name} must be an integer in [64, 8192], got {v!r}")
        if not (isinstance(self.samples, int) and self.samples >= 64):
            raise InvalidOptions(f"samples must be an integer >= 64, got {self.samples!r}")
        if self.x_range is not None:
            lo, hi = self.x_range
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise InvalidOptions(f"x_range must be a finite increasing pair, got {self.x_range!r}")


def default_x_range(f, s=DEFAULT_SETTINGS):
    """Central 99.9% of the probability mass, clipped to the support."""
    lo, hi = f.support
    return max(lo, quantile(f, 0.0005, s)), min(hi, quantile(f, 0.9995, s))


def nice_ticks(lo, hi, target=6):
    span = hi - lo
    raw = span / max(target - 1, 1)
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return ticks


def _fmt(v):
    return f"{v:.3f}"


def _tick_label(v):
    return f"{v:.6g}"


class _Frame:
    def __init__(self, opts, x_range, y_max):
        self.width, self.height = opts.width_px, opts.height_px
        self.x_lo, self.x_hi = x_range
        self.y_max = y_max
        self.left = MARGINS["left"]
        self.top = MARGINS["top"]
        self.right = self.width - MARGINS["right"]
        self.bottom = self.height - MARGINS["bottom"]

    def px(self, x):
        return self.left + (x - self.x_lo) / (self.x_hi - self.x_lo) * (self.right - self.left)

    def py(self, y):
        y = np.minimum(y, self.y_max)
        return self.top + (1 - y / self.y_max) * (self.bottom - self.top)


def render_density_plot(f, x0, result, opts=PlotOptions()):
    """Return an SVG document showing the density of ``f`` and ``result.p`` at ``x0``."""
    x_lo, x_hi = opts.x_range if opts.x_range is not None else default_x_range(f)
    xs = np.linspace(x_lo, x_hi, opts.samples)
    ys = np.asarray(f.density(xs), dtype=float)
    finite = ys[np.isfinite(ys)]
    y_max = 1.2 * float(np.percentile(finite, 99)) if finite.size else 0.0
    if not y_max > 0:
        y_max = 1.0
    fr = _Frame(opts, (x_lo, x_hi), y_max)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f"<!-- pearsonprob plot: x_range={x_lo!r},{x_hi!r} y_range=0,{y_max!r} "
        f"width={fr.width} height={fr.height} "
        f"plot_area={fr.left},{fr.top},{fr.right},{fr.bottom} -->",
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{fr.width}" '
        f'height="{fr.height}" viewBox="0 0 {fr.width} {fr.height}">',
        f'<rect width="{fr.width}" height="{fr.height}" fill="white"/>',
    ]

    title = opts.title if opts.title is not None else f"Pearson type {f.type_tag.value} density"
    out.append(f'<text id="title" x="{fr.width / 2:.1f}" y="20" text-anchor="middle" '
               f'font-family="sans-serif" font-size="15">{escape(title)}</text>')
    if result.domain_warning:
        out.append(f'<text id="warning" x="{fr.width / 2:.1f}" y="38" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="11" fill="#b00">'
                   f'{escape(result.domain_warning)}</text>')

    # shaded probability region
    lo, _ = f.support
    a = max(lo, x_lo)
    b = min(x0, x_hi)
    if a < b:
        inner = xs[(xs > a) & (xs < b)]
        sx = np.concatenate([[a], inner, [b]])
        sy = fr.py(np.asarray(f.density(sx), dtype=float))
        pts = [f"M {_fmt(fr.px(a))},{_fmt(fr.bottom)}"]
        pts += [f"L {_fmt(fr.px(x))},{_fmt(y)}" for x, y in zip(sx, sy)]
        pts.append(f"L {_fmt(fr.px(b))},{_fmt(fr.bottom)} Z")
        out.append(f'<path id="shaded" d="{" ".join(pts)}" fill="#9ecae1" stroke="none"/>')

    # axes and ticks
    out.append(f'<g id="axes" stroke="black" stroke-width="1" font-family="sans-serif" font-size="11">')
    out.append(f'<line x1="{fr.left}" y1="{fr.bottom}" x2="{fr.right}" y2="{fr.bottom}"/>')
    out.append(f'<line x1="{fr.left}" y1="{fr.top}" x2="{fr.left}" y2="{fr.bottom}"/>')
    for t in nice_ticks(x_lo, x_hi):
        p = fr.px(t)
        out.append(f'<line x1="{_fmt(p)}" y1="{fr.bottom}" x2="{_fmt(p)}" y2="{fr.bottom + 5}"/>')
        out.append(f'<text class="xtick" x="{_fmt(p)}" y="{fr.bottom + 18}" text-anchor="middle" '
                   f'stroke="none">{_tick_label(t)}</text>')
    for t in nice_ticks(0.0, y_max):
        p = float(fr.py(t))
        out.append(f'<line x1="{fr.left - 5}" y1="{_fmt(p)}" x2="{fr.left}" y2="{_fmt(p)}"/>')
        out.append(f'<text class="ytick" x="{fr.left - 8}" y="{_fmt(p + 4)}" text-anchor="end" '
                   f'stroke="none">{_tick_label(t)}</text>')
    out.append("</g>")

    curve = [f"{'M' if i == 0 else 'L'} {_fmt(fr.px(x))},{_fmt(y)}"
             for i, (x, y) in enumerate(zip(xs, fr.py(np.where(np.isnan(ys), 0.0, ys))))]
    out.append(f'<path id="density" d="{" ".join(curve)}" fill="none" stroke="#08519c" '
               f'stroke-width="1.5"/>')

    if x_lo <= x0 <= x_hi:
        p = fr.px(x0)
        out.append(f'<line id="x0-marker" x1="{_fmt(p)}" y1="{fr.top}" x2="{_fmt(p)}" '
                   f'y2="{fr.bottom}" stroke="#d94801" stroke-dasharray="4 3"/>')
    out.append(f'<text id="probability" x="{fr.right}" y="{fr.top + 14}" text-anchor="end" '
               f'font-family="sans-serif" font-size="13">'
               f'P(X ≤ {x0:g}) = {result.p:.6f}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
