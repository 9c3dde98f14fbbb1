"""A small SVG emitter: axes, polylines, markers, labels and raster masks."""

from xml.sax.saxutils import escape

import numpy as np

__all__ = ["SvgFigure", "PALETTE"]

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"]


def _num(x):
    return format(float(x), ".6g")


class SvgFigure:
    """Plot area mapping the data window ``[x0, x1] x [y0, y1]`` onto pixels."""

    def __init__(self, window, width=640, height=480, margin=48):
        self.x0, self.x1, self.y0, self.y1 = (float(v) for v in window)
        self.width, self.height, self.margin = width, height, margin
        self._body = []

    def px(self, x, y):
        m = self.margin
        u = m + (np.asarray(x) - self.x0) / (self.x1 - self.x0) * (self.width - 2 * m)
        v = self.height - m - (np.asarray(y) - self.y0) / (self.y1 - self.y0) * (self.height - 2 * m)
        return u, v

    def axes(self, xlabel="Re", ylabel="Im", ticks=5):
        m, w, h = self.margin, self.width, self.height
        self._body.append(
            f'<rect x="{m}" y="{m}" width="{w - 2 * m}" height="{h - 2 * m}" fill="none" stroke="#444"/>'
        )
        for k in range(ticks + 1):
            x = self.x0 + (self.x1 - self.x0) * k / ticks
            y = self.y0 + (self.y1 - self.y0) * k / ticks
            u, _ = self.px(x, self.y0)
            _, v = self.px(self.x0, y)
            self._body.append(f'<text x="{_num(u)}" y="{h - m + 16}" font-size="10" text-anchor="middle">{_num(x)}</text>')
            self._body.append(f'<text x="{m - 6}" y="{_num(v + 3)}" font-size="10" text-anchor="end">{_num(y)}</text>')
        self._body.append(f'<text x="{w / 2}" y="{h - 8}" font-size="12" text-anchor="middle">{escape(xlabel)}</text>')
        self._body.append(f'<text x="12" y="{h / 2}" font-size="12" text-anchor="middle">{escape(ylabel)}</text>')

    def polyline(self, points, color="#000", width=1.5, label=None):
        pts = np.asarray(points, dtype=complex)
        keep = (pts.real >= self.x0) & (pts.real <= self.x1) & (pts.imag >= self.y0) & (pts.imag <= self.y1)
        pts = pts[keep]
        if pts.size == 0:
            return
        u, v = self.px(pts.real, pts.imag)
        path = " ".join(f"{_num(a)},{_num(b)}" for a, b in zip(u, v))
        title = f"<title>{escape(label)}</title>" if label else ""
        self._body.append(
            f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="{width}">{title}</polyline>'
        )

    def marker(self, x, y, color="#000", radius=3, label=None):
        u, v = self.px(x, y)
        self._body.append(f'<circle cx="{_num(u)}" cy="{_num(v)}" r="{radius}" fill="{color}"/>')
        if label:
            self.text(x, y, label, dx=5, dy=-5, color=color)

    def text(self, x, y, label, dx=0, dy=0, color="#000", size=10):
        u, v = self.px(x, y)
        self._body.append(
            f'<text x="{_num(u + dx)}" y="{_num(v + dy)}" font-size="{size}" fill="{color}">{escape(label)}</text>'
        )

    def legend(self, entries):
        for i, (label, color) in enumerate(entries):
            y = self.margin + 14 + 14 * i
            x = self.width - self.margin - 110
            self._body.append(f'<line x1="{x}" y1="{y - 4}" x2="{x + 18}" y2="{y - 4}" stroke="{color}" stroke-width="2"/>')
            self._body.append(f'<text x="{x + 22}" y="{y}" font-size="10">{escape(label)}</text>')

    def mask(self, mask, color="#9ecae1"):
        """Filled cells for ``True`` entries; row 0 is the bottom of the window."""
        mask = np.asarray(mask, dtype=bool)
        rows, cols = mask.shape
        cw = (self.width - 2 * self.margin) / cols
        ch = (self.height - 2 * self.margin) / rows
        for i in range(rows):
            row = mask[i]
            j = 0
            while j < cols:
                if not row[j]:
                    j += 1
                    continue
                start = j
                while j < cols and row[j]:
                    j += 1
                x = self.margin + start * cw
                y = self.height - self.margin - (i + 1) * ch
                self._body.append(
                    f'<rect x="{_num(x)}" y="{_num(y)}" width="{_num((j - start) * cw)}" height="{_num(ch)}" fill="{color}"/>'
                )

    def to_string(self):
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" height="{self.height}" '
            f'viewBox="0 0 {self.width} {self.height}">'
        )
        return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *self._body, "</svg>"]) + "\n"
