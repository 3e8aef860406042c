"""Stacked stripe-chart construction and deterministic SVG rendering.

A compared set of distributions is brought to a common range, each row's
bin edges are mapped into the unit workspace, and every bin becomes a
color-coded stripe. Counts map onto a 12-level discrete Viridis scale;
empty stripes take the dark background color so missing data reads as
background at a glance. Three layouts share identical stripe geometry:

* ``Bin``         - rectangles only
* ``BinCurve``    - rectangles plus the density polyline
* ``FilledCurve`` - the area under the density curve, filled per stripe

Rendering is pure and byte-deterministic (fixed 3-decimal coordinates), so
golden-file comparisons are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence
from xml.sax.saxutils import escape

import numpy as np

from .core import (BinPartition, DensityEstimate, Distribution,
                   MismatchedInputs, MissingDensity, NormalizedRange,
                   common_range)

# Discrete Viridis: the published 256-entry lookup table sampled at
# t = (level - 0.5) / 12; regenerated against matplotlib in the test suite.
VIRIDIS_12 = (
    "#471063", "#472d7b", "#404688", "#365d8d", "#2c728e", "#24868e",
    "#1f9a8a", "#28ae80", "#48c16e", "#75d054", "#addc30", "#e5e419",
)

BACKGROUND = "#1e1e1e"
CURVE_STROKE = "#d0d0d0"

LAYOUTS = ("Bin", "BinCurve", "FilledCurve")
_LAYOUT_ALIASES = {
    "bin": "Bin", "bin-curve": "BinCurve", "filled-curve": "FilledCurve",
    "bincurve": "BinCurve", "filledcurve": "FilledCurve",
}
SCOPES = ("Global", "PerDistribution")
_SCOPE_ALIASES = {"global": "Global", "per": "PerDistribution",
                  "perdistribution": "PerDistribution"}

# A stripe is split at data voids wider than this fraction of the common
# range, so gaps show as background in every binning method.
VOID_FRACTION = 0.02

CURVE_SAMPLES = 512


def normalize_layout(name: str) -> str:
    key = name.strip().lower()
    if key in _LAYOUT_ALIASES:
        return _LAYOUT_ALIASES[key]
    if name in LAYOUTS:
        return name
    raise ValueError(f"unknown layout {name!r}")


def normalize_scope(name: str) -> str:
    key = name.strip().lower()
    if key in _SCOPE_ALIASES:
        return _SCOPE_ALIASES[key]
    if name in SCOPES:
        return name
    raise ValueError(f"unknown color scope {name!r}")


def color_index(count: int, c_max: int) -> int:
    """Map a bin count onto 0..12; 0 is the background (empty bin)."""
    if count < 0 or count > c_max:
        raise ValueError("count must be in [0, c_max]")
    if count == 0:
        return 0
    return min(12, max(1, -(-12 * count // c_max)))


@dataclass(frozen=True)
class ColorScale:
    levels: tuple = VIRIDIS_12
    background: str = BACKGROUND
    scope: str = "Global"

    def to_json_dict(self) -> dict:
        return {"levels": list(self.levels), "background": self.background,
                "scope": self.scope}

    def fill(self, index: int) -> str:
        return self.background if index == 0 else self.levels[index - 1]


@dataclass(frozen=True)
class Geometry:
    row_height_px: float = 60.0
    row_gap_px: float = 8.0
    width_px: float = 900.0
    label_gutter_px: float = 120.0

    def to_json_dict(self) -> dict:
        return {"rowHeightPx": self.row_height_px, "rowGapPx": self.row_gap_px,
                "widthPx": self.width_px, "labelGutterPx": self.label_gutter_px}


@dataclass(frozen=True)
class Stripe:
    x0: float
    x1: float
    color_index: int

    def to_json_dict(self) -> dict:
        return {"x0": self.x0, "x1": self.x1, "colorIndex": self.color_index}


@dataclass(frozen=True)
class Row:
    name: str
    stripes: tuple
    curve: Optional[tuple]  # ((x, y) pairs in unit coords, y max-normalized)
    layout: str

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "stripes": [s.to_json_dict() for s in self.stripes],
            "curve": (None if self.curve is None
                      else [{"x": x, "y": y} for x, y in self.curve]),
            "layout": self.layout,
        }


@dataclass(frozen=True)
class RenderSpec:
    rows: tuple
    range: NormalizedRange
    color_scale: ColorScale
    geometry: Geometry

    def to_json_dict(self) -> dict:
        return {
            "rows": [r.to_json_dict() for r in self.rows],
            "range": {"lo": self.range.lo, "hi": self.range.hi},
            "colorScale": self.color_scale.to_json_dict(),
            "geometry": self.geometry.to_json_dict(),
        }

    @staticmethod
    def from_json_dict(obj: dict) -> "RenderSpec":
        rows = tuple(
            Row(
                name=r["name"],
                stripes=tuple(Stripe(s["x0"], s["x1"], s["colorIndex"])
                              for s in r["stripes"]),
                curve=(None if r.get("curve") is None
                       else tuple((p["x"], p["y"]) for p in r["curve"])),
                layout=r["layout"],
            )
            for r in obj["rows"]
        )
        scale = ColorScale(levels=tuple(obj["colorScale"]["levels"]),
                           background=obj["colorScale"]["background"],
                           scope=obj["colorScale"]["scope"])
        geo = obj["geometry"]
        return RenderSpec(
            rows=rows,
            range=NormalizedRange(obj["range"]["lo"], obj["range"]["hi"]),
            color_scale=scale,
            geometry=Geometry(geo["rowHeightPx"], geo["rowGapPx"],
                              geo["widthPx"], geo["labelGutterPx"]),
        )


def _void_splits(values: np.ndarray, lo: float, hi: float,
                 threshold: float) -> list:
    """Empty sub-intervals of [lo, hi] wider than `threshold`.

    `values` are the data points falling inside the bin (sorted). Leading,
    interior, and trailing voids all count; an empty bin is one full void.
    """
    if len(values) == 0:
        return [(lo, hi)] if hi - lo >= threshold else []
    voids = []
    if values[0] - lo >= threshold:
        voids.append((lo, float(values[0])))
    if len(values) > 1:
        gaps = np.diff(values)
        for i in np.flatnonzero(gaps >= threshold):
            voids.append((float(values[i]), float(values[i + 1])))
    if hi - values[-1] >= threshold:
        voids.append((float(values[-1]), hi))
    return voids


def _row_stripes(dist: Distribution, partition: BinPartition,
                 rng: NormalizedRange, c_max: int) -> tuple:
    """Stripes tiling [0, 1]: bins mapped via the common range, padded with
    background outside the distribution's support, split at wide voids."""
    span = rng.hi - rng.lo
    unit = lambda x: (x - rng.lo) / span
    threshold = VOID_FRACTION * span
    values = dist.values
    edges = partition.edges
    stripes = []
    if unit(edges[0]) > 0.0:
        stripes.append(Stripe(0.0, unit(edges[0]), 0))
    for i, count in enumerate(partition.counts):
        e_lo, e_hi = float(edges[i]), float(edges[i + 1])
        last = i == len(partition.counts) - 1
        hi_idx = np.searchsorted(values, e_hi, side="right" if last else "left")
        inside = values[np.searchsorted(values, e_lo, side="left"):hi_idx]
        idx = color_index(int(count), c_max)
        cursor = e_lo
        for v_lo, v_hi in _void_splits(inside, e_lo, e_hi, threshold):
            if v_lo > cursor:
                stripes.append(Stripe(unit(cursor), unit(v_lo), idx))
            stripes.append(Stripe(unit(v_lo), unit(v_hi), 0))
            cursor = v_hi
        if cursor < e_hi:
            stripes.append(Stripe(unit(cursor), unit(e_hi), idx))
    if stripes[-1].x1 < 1.0:
        stripes.append(Stripe(stripes[-1].x1, 1.0, 0))
    # force exact tiling at the ends against float round-off
    stripes[0] = replace(stripes[0], x0=0.0)
    stripes[-1] = replace(stripes[-1], x1=1.0)
    return tuple(stripes)


def _row_curve(density: DensityEstimate, rng: NormalizedRange) -> tuple:
    """Density resampled onto the unit workspace, peak-normalized to 1."""
    grid = np.linspace(rng.lo, rng.hi, CURVE_SAMPLES)
    ys = np.interp(grid, density.xs, density.ys, left=0.0, right=0.0)
    peak = ys.max()
    if peak > 0:
        ys = ys / peak
    xs = np.linspace(0.0, 1.0, CURVE_SAMPLES)
    return tuple((float(x), float(y)) for x, y in zip(xs, ys))


def build_render_spec(dists: Sequence[Distribution],
                      partitions: Sequence[BinPartition],
                      densities: Optional[Sequence[DensityEstimate]] = None,
                      layout: str = "Bin",
                      scope: str = "Global",
                      geometry: Geometry = Geometry()) -> RenderSpec:
    """Assemble the resolution-independent chart description.

    Stripe boundaries and color indices depend only on the data, binning,
    and color scope, never on the layout; the layout picks what the
    renderer draws. Densities are required for the curve layouts.
    """
    layout = normalize_layout(layout)
    scope = normalize_scope(scope)
    if len(dists) != len(partitions) or not dists:
        raise MismatchedInputs(
            f"{len(dists)} distributions vs {len(partitions)} partitions")
    needs_curve = layout in ("BinCurve", "FilledCurve")
    if needs_curve:
        if densities is None or len(densities) != len(dists):
            raise MissingDensity(f"layout {layout} requires one density per row")
    rng = common_range(dists)
    if scope == "Global":
        c_max = max(int(p.counts.max()) for p in partitions)
    rows = []
    for i, (dist, part) in enumerate(zip(dists, partitions)):
        row_max = c_max if scope == "Global" else int(part.counts.max())
        curve = _row_curve(densities[i], rng) if needs_curve else None
        rows.append(Row(name=dist.name,
                        stripes=_row_stripes(dist, part, rng, row_max),
                        curve=curve, layout=layout))
    return RenderSpec(rows=tuple(rows), range=rng,
                      color_scale=ColorScale(scope=scope), geometry=geometry)


# ---------------------------------------------------------------------------
# SVG output
# ---------------------------------------------------------------------------

def _fmt(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def render_svg(spec: RenderSpec) -> str:
    """Serialize a RenderSpec as an SVG 1.1 document (byte-deterministic)."""
    geo = spec.geometry
    rows = spec.rows
    margin = geo.row_gap_px
    width = geo.width_px
    height = 2 * margin + len(rows) * geo.row_height_px \
        + (len(rows) - 1) * geo.row_gap_px
    plot_x0 = geo.label_gutter_px
    plot_w = width - geo.label_gutter_px
    px = lambda u: plot_x0 + u * plot_w

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f'<rect x="0.000" y="0.000" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" fill="{spec.color_scale.background}"/>',
    ]
    for i, row in enumerate(rows):
        y0 = margin + i * (geo.row_height_px + geo.row_gap_px)
        y1 = y0 + geo.row_height_px
        out.append(
            f'<text x="8.000" y="{_fmt(y0 + geo.row_height_px / 2 + 4)}" '
            f'fill="{CURVE_STROKE}" font-family="sans-serif" '
            f'font-size="12">{escape(row.name)}</text>')
        if row.layout in ("Bin", "BinCurve"):
            for s in row.stripes:
                out.append(
                    f'<rect x="{_fmt(px(s.x0))}" y="{_fmt(y0)}" '
                    f'width="{_fmt((s.x1 - s.x0) * plot_w)}" '
                    f'height="{_fmt(geo.row_height_px)}" '
                    f'fill="{spec.color_scale.fill(s.color_index)}"/>')
        if row.layout == "BinCurve":
            pts = " ".join(
                f"{_fmt(px(x))},{_fmt(y1 - 0.9 * geo.row_height_px * y)}"
                for x, y in row.curve)
            out.append(f'<polyline points="{pts}" fill="none" '
                       f'stroke="{CURVE_STROKE}" stroke-width="1.5"/>')
        if row.layout == "FilledCurve":
            xs = np.array([p[0] for p in row.curve])
            ys = np.array([p[1] for p in row.curve])
            for s in row.stripes:
                seg_x, seg_y = _clip_curve(xs, ys, s.x0, s.x1)
                d = [f"M{_fmt(px(s.x0))},{_fmt(y1)}"]
                for x, y in zip(seg_x, seg_y):
                    d.append(f"L{_fmt(px(x))},{_fmt(y1 - geo.row_height_px * y)}")
                d.append(f"L{_fmt(px(s.x1))},{_fmt(y1)}")
                d.append("Z")
                out.append(f'<path d="{" ".join(d)}" '
                           f'fill="{spec.color_scale.fill(s.color_index)}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _clip_curve(xs: np.ndarray, ys: np.ndarray, x0: float, x1: float):
    """Curve restricted to [x0, x1] with interpolated endpoints."""
    inside = (xs > x0) & (xs < x1)
    seg_x = np.concatenate([[x0], xs[inside], [x1]])
    seg_y = np.concatenate([[np.interp(x0, xs, ys)], ys[inside],
                            [np.interp(x1, xs, ys)]])
    return seg_x, seg_y


__all__ = [
    "VIRIDIS_12", "BACKGROUND", "CURVE_STROKE", "LAYOUTS", "SCOPES",
    "VOID_FRACTION", "CURVE_SAMPLES",
    "normalize_layout", "normalize_scope", "color_index",
    "ColorScale", "Geometry", "Stripe", "Row", "RenderSpec",
    "build_render_spec", "render_svg",
]
