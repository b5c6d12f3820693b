"""Minimal static SVG line/scatter plots; enough to reproduce the two figures."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 720, 460
MARGIN = dict(left=80, right=80, top=40, bottom=60)


def _fmt(x):
    return f"{x:.2f}"


def _nice_ticks(lo, hi, count=6):
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=10 * mag)
    start = math.floor(lo / step) * step
    ticks = []
    t = start
    while t <= hi + 1e-9 * step:
        if t >= lo - 1e-9 * step:
            ticks.append(round(t, 12))
        t += step
    return ticks


class Figure:
    """One plotting area with a linear or log10 scale per axis."""

    def __init__(self, xlim, ylim, xlog=False, ylog=False, title=""):
        self.xlim, self.ylim = xlim, ylim
        self.xlog, self.ylog = xlog, ylog
        self.parts = []
        self.title = title
        self.x0, self.x1 = MARGIN["left"], WIDTH - MARGIN["right"]
        self.y0, self.y1 = HEIGHT - MARGIN["bottom"], MARGIN["top"]

    def _t(self, v, lim, log, a, b):
        lo, hi = lim
        if log:
            v, lo, hi = math.log10(v), math.log10(lo), math.log10(hi)
        return a + (v - lo) / (hi - lo) * (b - a)

    def px(self, x):
        return self._t(x, self.xlim, self.xlog, self.x0, self.x1)

    def py(self, y):
        return self._t(y, self.ylim, self.ylog, self.y0, self.y1)

    def line(self, xs, ys, color="black", width=1.5, dash=None):
        pts = " ".join(f"{_fmt(self.px(x))},{_fmt(self.py(y))}" for x, y in zip(xs, ys))
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="{width}"'
                          f'{extra} points="{pts}"/>')

    def band(self, xs, lo, hi, color="#cccccc"):
        upper = [f"{_fmt(self.px(x))},{_fmt(self.py(y))}" for x, y in zip(xs, hi)]
        lower = [f"{_fmt(self.px(x))},{_fmt(self.py(y))}" for x, y in zip(reversed(xs), reversed(lo))]
        self.parts.append(f'<polygon fill="{color}" stroke="none" points="{" ".join(upper + lower)}"/>')

    def points(self, xs, ys, color="red", r=3.5):
        for x, y in zip(xs, ys):
            self.parts.append(f'<circle cx="{_fmt(self.px(x))}" cy="{_fmt(self.py(y))}" '
                              f'r="{r}" fill="{color}"/>')

    def text(self, x, y, s, anchor="start", size=13, rotate=None):
        tr = f' transform="rotate({rotate} {_fmt(x)} {_fmt(y)})"' if rotate is not None else ""
        self.parts.append(f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="{size}" '
                          f'text-anchor="{anchor}" font-family="sans-serif"{tr}>{escape(s)}</text>')

    def _ticks(self, lim, log):
        if log:
            lo, hi = math.floor(math.log10(lim[0])), math.ceil(math.log10(lim[1]))
            return [10.0 ** k for k in range(lo, hi + 1) if lim[0] <= 10.0 ** k <= lim[1]]
        return _nice_ticks(*lim)

    def axes(self, xlabel, ylabel, right=None):
        """Frame, ticks and labels; ``right=(label, factor)`` adds a scaled right axis."""
        p = self.parts
        p.append(f'<rect x="{self.x0}" y="{self.y1}" width="{self.x1 - self.x0}" '
                 f'height="{self.y0 - self.y1}" fill="none" stroke="black"/>')
        for t in self._ticks(self.xlim, self.xlog):
            x = self.px(t)
            p.append(f'<line x1="{_fmt(x)}" y1="{self.y0}" x2="{_fmt(x)}" y2="{self.y0 + 5}" stroke="black"/>')
            self.text(x, self.y0 + 20, f"{t:g}", anchor="middle", size=11)
        for t in self._ticks(self.ylim, self.ylog):
            y = self.py(t)
            p.append(f'<line x1="{self.x0 - 5}" y1="{_fmt(y)}" x2="{self.x0}" y2="{_fmt(y)}" stroke="black"/>')
            self.text(self.x0 - 8, y + 4, f"{t:g}", anchor="end", size=11)
        self.text((self.x0 + self.x1) / 2, HEIGHT - 15, xlabel, anchor="middle")
        self.text(20, (self.y0 + self.y1) / 2, ylabel, anchor="middle", rotate=-90)
        if right is not None:
            label, factor = right
            lo, hi = self.ylim[0] * factor, self.ylim[1] * factor
            for t in _nice_ticks(lo, hi):
                y = self.py(t / factor)
                p.append(f'<line x1="{self.x1}" y1="{_fmt(y)}" x2="{self.x1 + 5}" y2="{_fmt(y)}" stroke="black"/>')
                self.text(self.x1 + 8, y + 4, f"{t:g}", size=11)
            self.text(WIDTH - 15, (self.y0 + self.y1) / 2, label, anchor="middle", rotate=90)
        if self.title:
            self.text((self.x0 + self.x1) / 2, 25, self.title, anchor="middle", size=14)

    def render(self) -> str:
        body = "\n".join(self.parts)
        return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
                f'viewBox="0 0 {WIDTH} {HEIGHT}">\n<rect width="100%" height="100%" fill="white"/>\n'
                f"{body}\n</svg>\n")


def diurnal_figure(hours, clean, noisy, noise_half_width, velocity_per_amplitude_kms, title=""):
    """A_m against local time with the equivalent horizontal speed on the right axis."""
    top = max(max(clean), max(noisy)) + noise_half_width
    fig = Figure((min(hours), max(hours)), (0.0, top * 1.1 if top > 0 else 1.0), title=title)
    if noise_half_width > 0:
        fig.band(hours, [c - noise_half_width for c in clean], [c + noise_half_width for c in clean])
    fig.line(hours, clean, color="black")
    fig.points(hours, noisy, color="#b00000", r=2.5)
    fig.axes("local time, h", "A_m = X_m / X_o",
             right=("v_hor, km/s", velocity_per_amplitude_kms))
    return fig.render()


def sweep_figure(deps, x_m, fit=None, title=""):
    """Log-log scatter of reduced fringe shift against eps1 - eps2, with the fitted line."""
    xlo = 10 ** math.floor(math.log10(min(deps)))
    xhi = 10 ** math.ceil(math.log10(max(deps)))
    ylo = 10 ** math.floor(math.log10(min(x_m)))
    yhi = 10 ** math.ceil(math.log10(max(x_m)))
    if xhi == xlo:
        xhi *= 10
    if yhi == ylo:
        yhi *= 10
    fig = Figure((xlo, xhi), (ylo, yhi), xlog=True, ylog=True, title=title)
    if fit is not None:
        xs = [xlo, xhi]
        ys = [math.exp(fit.intercept) * x ** fit.slope for x in xs]
        fig.parts.append(f'<clipPath id="plot"><rect x="{fig.x0}" y="{fig.y1}" '
                         f'width="{fig.x1 - fig.x0}" height="{fig.y0 - fig.y1}"/></clipPath>')
        fig.parts.append('<g clip-path="url(#plot)">')
        fig.line(xs, ys, color="#1f4e9c", dash="6,3")
        fig.parts.append("</g>")
        fig.text(fig.x0 + 10, fig.y1 + 20, f"slope = {fit.slope:.6f}, r^2 = {fit.r_squared:.6f}")
    fig.points(deps, x_m)
    fig.axes("eps1 - eps2", "X_m / X_o (reduced)")
    return fig.render()


def rotation_figure(angles_deg, fringes, title=""):
    lo, hi = min(fringes), max(fringes)
    pad = 0.1 * (hi - lo) if hi > lo else 1.0
    fig = Figure((0.0, 360.0), (lo - pad, hi + pad), title=title)
    fig.line(angles_deg, fringes)
    fig.axes("rotation angle, deg", "X_m / X_o")
    return fig.render()
