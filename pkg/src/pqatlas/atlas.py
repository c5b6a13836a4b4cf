"""(p,q)-plane grid scans and their CSV/SVG/PNG emitters.

Scans classify cell centers; the separating curves are drawn analytically as
overlay polylines rather than inferred from the raster.  CSV and SVG output
is deterministic byte for byte for identical scans.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .domains import (
    LIOUVILLE,
    LIOUVILLE_BOUNDED,
    RADIAL,
    UNKNOWN,
    G_roots,
    H_roots,
    ParamPoint,
    classify,
    curve_V,
    mawu_q_lower,
)

__all__ = ["GridScan", "scan_grid", "emit_csv", "emit_svg", "render_png"]


@dataclass(frozen=True)
class GridScan:
    n: int
    bounded: bool
    p_range: tuple
    q_range: tuple
    res_p: int
    res_q: int
    cells: tuple  # cells[iq][ip], q ascending then p ascending
    overlays: tuple  # (name, ((p,q), ...)) pairs

    def p_center(self, ip: int) -> float:
        lo, hi = self.p_range
        return lo + (ip + 0.5) * (hi - lo) / self.res_p

    def q_center(self, iq: int) -> float:
        lo, hi = self.q_range
        return lo + (iq + 0.5) * (hi - lo) / self.res_q


_OVERLAY_SAMPLES = 512


def _curve_overlays(n: int, p_range, q_range) -> list:
    p_lo, p_hi = p_range
    q_lo, q_hi = q_range
    out = []

    def sample_q(q_max_open):
        hi = min(q_hi, q_max_open)
        lo = max(q_lo, 0.0)
        if hi <= lo:
            return []
        return [lo + i * (hi - lo) / _OVERLAY_SAMPLES for i in range(_OVERLAY_SAMPLES + 1)]

    # Critical existence curve, q in [0,1).
    pts = []
    for q in sample_q(1.0 - 1e-6):
        p = curve_V(n, q) + 1.0 - q
        if p_lo <= p <= p_hi:
            pts.append((p, q))
    if pts:
        out.append(("critical", tuple(pts)))

    # Roots of the two comparison quadratics.
    for name, rootfn in (("G=0", G_roots), ("H=0", H_roots)):
        lo_pts, hi_pts = [], []
        for i in range(_OVERLAY_SAMPLES + 1):
            q = q_lo + i * (q_hi - q_lo) / _OVERLAY_SAMPLES
            r = rootfn(n, q)
            if r is None:
                continue
            for p, acc in zip(r, (lo_pts, hi_pts)):
                if p_lo <= p <= p_hi:
                    acc.append((p, q))
        if lo_pts:
            out.append((f"{name} (lower)", tuple(lo_pts)))
        if hi_pts:
            out.append((f"{name} (upper)", tuple(hi_pts)))

    # Tangent line p + q = (n+2)/(n-2).
    s = (n + 2) / (n - 2)
    pts = []
    for i in range(_OVERLAY_SAMPLES + 1):
        q = q_lo + i * (q_hi - q_lo) / _OVERLAY_SAMPLES
        p = s - q
        if p_lo <= p <= p_hi:
            pts.append((p, q))
    if pts:
        out.append(("p+q=(n+2)/(n-2)", tuple(pts)))

    # Horizontal separators.
    for name, q in (
        ("q=1-1/sqrt(n-1)", mawu_q_lower(n)),
        ("q=1", 1.0),
        ("q=3/2", 1.5),
        ("q=5/3", 5.0 / 3.0),
        ("q=2", 2.0),
    ):
        if q_lo <= q <= q_hi:
            out.append((name, ((p_lo, q), (p_hi, q))))
    return out


def scan_grid(n: int, p_range, q_range, resolution: int, bounded: bool, cache=None) -> GridScan:
    """Classify every cell center of a resolution x resolution grid.

    The disjointness audit is implicit: classification raises
    RegionConflictError if any cell fires both a Liouville criterion and
    radial existence.
    """
    p_lo, p_hi = p_range
    q_lo, q_hi = q_range
    if not (p_hi > p_lo and q_hi > q_lo):
        raise ValueError("ranges must be non-degenerate")
    if q_lo < 0:
        raise ValueError("q range must lie in [0, inf)")
    if resolution < 2:
        raise ValueError("resolution >= 2 required")

    rows = []
    for iq in range(resolution):
        q = q_lo + (iq + 0.5) * (q_hi - q_lo) / resolution
        row = []
        for ip in range(resolution):
            p = p_lo + (ip + 0.5) * (p_hi - p_lo) / resolution
            row.append(classify(ParamPoint(n, p, q), bounded=bounded, cache=cache))
        rows.append(tuple(row))
    return GridScan(
        n,
        bounded,
        (float(p_lo), float(p_hi)),
        (float(q_lo), float(q_hi)),
        resolution,
        resolution,
        tuple(rows),
        tuple(_curve_overlays(n, p_range, q_range)),
    )


def emit_csv(scan: GridScan, path) -> None:
    """One row per cell, row-major over q then p, 9-decimal fixed format."""
    lines = ["p,q,status,criteria"]
    for iq in range(scan.res_q):
        q = scan.q_center(iq)
        for ip in range(scan.res_p):
            p = scan.p_center(ip)
            v = scan.cells[iq][ip]
            lines.append(f"{p:.9f},{q:.9f},{v.status},{';'.join(v.criteria_fired)}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


_STATUS_FILL = {
    LIOUVILLE: "#7b3fd4",
    LIOUVILLE_BOUNDED: "#4a90d9",
    RADIAL: "#ffffff",
    UNKNOWN: "#cccccc",
}

_OVERLAY_STROKE = {
    "critical": "#d0021b",
    "G=0 (lower)": "#222222",
    "G=0 (upper)": "#222222",
    "H=0 (lower)": "#9013fe",
    "H=0 (upper)": "#9013fe",
    "p+q=(n+2)/(n-2)": "#f5a623",
}

_MARGIN = 50.0
_PLOT_W = 640.0
_PLOT_H = 640.0


def emit_svg(scan: GridScan, path) -> None:
    """Render the scan as SVG 1.1: one rect per cell, analytic overlay
    polylines, integer axis ticks."""
    p_lo, p_hi = scan.p_range
    q_lo, q_hi = scan.q_range

    def X(p):
        return _MARGIN + (p - p_lo) / (p_hi - p_lo) * _PLOT_W

    def Y(q):
        return _MARGIN + (q_hi - q) / (q_hi - q_lo) * _PLOT_H

    width = _PLOT_W + 2 * _MARGIN
    height = _PLOT_H + 2 * _MARGIN
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect x="0" y="0" width="{width:.0f}" height="{height:.0f}" fill="#ffffff"/>',
        f"<!-- region scan n={scan.n} bounded={str(scan.bounded).lower()} -->",
    ]

    cw = _PLOT_W / scan.res_p
    ch = _PLOT_H / scan.res_q
    for iq in range(scan.res_q):
        y = _MARGIN + _PLOT_H - (iq + 1) * ch
        for ip in range(scan.res_p):
            x = _MARGIN + ip * cw
            fill = _STATUS_FILL[scan.cells[iq][ip].status]
            parts.append(
                f'<rect x="{x:.2f}" y="{y:.2f}" width="{cw + 0.01:.2f}" '
                f'height="{ch + 0.01:.2f}" fill="{fill}"/>'
            )

    for name, pts in scan.overlays:
        if len(pts) < 2:
            continue
        stroke = _OVERLAY_STROKE.get(name, "#666666")
        coords = " ".join(f"{X(p):.2f},{Y(q):.2f}" for p, q in pts)
        dash = ' stroke-dasharray="6,4"' if name.startswith("q=") or "+" in name else ""
        parts.append(
            f'<polyline fill="none" stroke="{stroke}" stroke-width="1.5"{dash} points="{coords}"/>'
        )
        lp, lq = pts[-1]
        parts.append(
            f'<text x="{X(lp) - 4:.2f}" y="{Y(lq) - 4:.2f}" font-size="11" '
            f'font-family="sans-serif" fill="{stroke}">{name}</text>'
        )

    # Axes with ticks at integers.
    x0, y0 = _MARGIN, _MARGIN + _PLOT_H
    parts.append(
        f'<rect x="{_MARGIN:.2f}" y="{_MARGIN:.2f}" width="{_PLOT_W:.2f}" '
        f'height="{_PLOT_H:.2f}" fill="none" stroke="#000000" stroke-width="1"/>'
    )
    for p in range(math.ceil(p_lo), math.floor(p_hi) + 1):
        parts.append(
            f'<line x1="{X(p):.2f}" y1="{y0:.2f}" x2="{X(p):.2f}" y2="{y0 + 6:.2f}" '
            f'stroke="#000000" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{X(p):.2f}" y="{y0 + 20:.2f}" font-size="12" font-family="sans-serif" '
            f'text-anchor="middle">{p}</text>'
        )
    for q in range(math.ceil(q_lo), math.floor(q_hi) + 1):
        parts.append(
            f'<line x1="{x0 - 6:.2f}" y1="{Y(q):.2f}" x2="{x0:.2f}" y2="{Y(q):.2f}" '
            f'stroke="#000000" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x0 - 10:.2f}" y="{Y(q) + 4:.2f}" font-size="12" font-family="sans-serif" '
            f'text-anchor="end">{q}</text>'
        )
    parts.append(
        f'<text x="{_MARGIN + _PLOT_W / 2:.2f}" y="{height - 8:.2f}" font-size="14" '
        f'font-family="sans-serif" text-anchor="middle">p</text>'
    )
    parts.append(
        f'<text x="14" y="{_MARGIN + _PLOT_H / 2:.2f}" font-size="14" '
        f'font-family="sans-serif" text-anchor="middle">q</text>'
    )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")


def render_png(scan: GridScan, path, dpi: int = 150) -> None:
    """Raster companion figure for reports (matplotlib, Agg backend)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    import numpy as np
    from matplotlib.colors import ListedColormap

    order = [LIOUVILLE, LIOUVILLE_BOUNDED, RADIAL, UNKNOWN]
    index = {s: i for i, s in enumerate(order)}
    img = np.array(
        [[index[v.status] for v in row] for row in scan.cells], dtype=float
    )
    cmap = ListedColormap([_STATUS_FILL[s] for s in order])
    fig, ax = plt.subplots(figsize=(7, 7))
    ax.imshow(
        img,
        origin="lower",
        extent=(*scan.p_range, *scan.q_range),
        aspect="auto",
        cmap=cmap,
        vmin=-0.5,
        vmax=len(order) - 0.5,
        interpolation="nearest",
    )
    for name, pts in scan.overlays:
        ps = [p for p, _ in pts]
        qs = [q for _, q in pts]
        ax.plot(ps, qs, lw=1.2, label=name, color=_OVERLAY_STROKE.get(name, "#666666"))
    ax.set_xlabel("p")
    ax.set_ylabel("q")
    ax.set_title(f"n={scan.n}" + (" (bounded)" if scan.bounded else ""))
    ax.legend(loc="upper right", fontsize=7)
    fig.savefig(path, dpi=dpi, bbox_inches="tight")
    plt.close(fig)
