"""File emitters: deterministic CSV, binary PPM heatmaps, and SVG geometry.

All numeric text uses 12 significant digits and '\\n' line endings so
identical configurations produce byte-identical files. Writes go through a
temp file and an atomic rename.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .config import ConfigError
from .farey_ford import FareyTree, ford_circle, parents, thales_rect

SVG_SCALE = 800  # pixels per unit length in farey diagrams
SVG_MARGIN = 40


def fmt(value: float | int | str) -> str:
    """Fixed formatting: 12 significant digits for floats, str otherwise."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def atomic_write_bytes(path: Path, payload: bytes) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(payload)
    os.replace(tmp, path)


def atomic_write_text(path: Path, payload: str) -> None:
    atomic_write_bytes(path, payload.encode("utf-8"))


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    """Comma-separated table with a header row; values preformatted via fmt."""
    lines = [",".join(header)]
    lines.extend(",".join(fmt(cell) for cell in row) for row in rows)
    atomic_write_text(path, "\n".join(lines) + "\n")


# A short anchor table resembling viridis; intermediate values interpolate.
_VIRIDIS_ANCHORS = np.array(
    [
        (68, 1, 84),
        (72, 40, 120),
        (62, 74, 137),
        (49, 104, 142),
        (38, 130, 142),
        (31, 158, 137),
        (53, 183, 121),
        (109, 205, 89),
        (180, 222, 44),
        (253, 231, 37),
    ],
    dtype=float,
)

COLORMAPS = ("grayscale", "viridis")


@dataclass(frozen=True)
class HeatmapStyle:
    """Raster output shape and coloring; dimensions default to the lattice."""

    width: int | None = None
    height: int | None = None
    colormap: str = "grayscale"

    def __post_init__(self) -> None:
        if self.width is not None and self.width < 1:
            raise ConfigError(f"width: need >= 1, got {self.width}")
        if self.height is not None and self.height < 1:
            raise ConfigError(f"height: need >= 1, got {self.height}")
        if self.colormap not in COLORMAPS:
            raise ConfigError(
                f"colormap: unknown {self.colormap!r}, pick from {COLORMAPS}"
            )


def _apply_colormap(unit: np.ndarray, colormap: str) -> np.ndarray:
    if colormap == "grayscale":
        byte = np.rint(unit * 255).astype(np.uint8)
        return np.stack([byte, byte, byte], axis=-1)
    anchors = np.linspace(0.0, 1.0, len(_VIRIDIS_ANCHORS))
    channels = [
        np.interp(unit, anchors, _VIRIDIS_ANCHORS[:, c]) for c in range(3)
    ]
    return np.rint(np.stack(channels, axis=-1)).astype(np.uint8)


def heatmap_rgb(values: np.ndarray, style: HeatmapStyle = HeatmapStyle()) -> np.ndarray:
    """Map a nonnegative 2-D field to RGB, linear in the value itself.

    Rows render top to bottom in input order; nearest-neighbor resampling
    applies only when the style requests different output dimensions.
    """
    field = np.asarray(values, dtype=float)
    if field.ndim != 2:
        raise ValueError(f"values: expected 2-D field, got shape {field.shape}")
    peak = field.max()
    unit = field / peak if peak > 0 else np.zeros_like(field)
    height = style.height or field.shape[0]
    width = style.width or field.shape[1]
    if (height, width) != field.shape:
        rows = np.floor(np.linspace(0, field.shape[0] - 1e-9, height)).astype(int)
        cols = np.floor(np.linspace(0, field.shape[1] - 1e-9, width)).astype(int)
        unit = unit[np.ix_(rows, cols)]
    return _apply_colormap(unit, style.colormap)


def write_ppm(path: Path, rgb: np.ndarray, comments: Sequence[str] = ()) -> None:
    """Binary P6 image; comments land between the magic number and size."""
    if rgb.ndim != 3 or rgb.shape[2] != 3 or rgb.dtype != np.uint8:
        raise ValueError(f"rgb: expected (H, W, 3) uint8, got {rgb.shape} {rgb.dtype}")
    height, width = rgb.shape[:2]
    head = ["P6"]
    head.extend(f"# {c}" for c in comments)
    head.append(f"{width} {height}")
    head.append("255")
    atomic_write_bytes(path, ("\n".join(head) + "\n").encode("ascii") + rgb.tobytes())


def _sx(x: float) -> str:
    return fmt(SVG_MARGIN + x * SVG_SCALE)


def _sy(y: float) -> str:
    # math y-up to screen y-down
    return fmt(SVG_MARGIN + (1.0 - y) * SVG_SCALE)


def farey_svg(tree: FareyTree, include_rects: bool = True) -> str:
    """Ford-circle diagram of the tree in the unit square.

    Circles carry their scaled radius (r = SVG_SCALE / (2 d^2)) and a
    data-fraction attribute; the two depth-1 circles are clipped to the
    square so they render as the usual pair of half circles. Each fraction's
    vector line runs from the origin to its tangent point on the top line.
    """
    size = SVG_SCALE + 2 * SVG_MARGIN
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f"<desc>unit square scaled by {SVG_SCALE}, margin {SVG_MARGIN}, y flipped</desc>",
        '<defs><clipPath id="unit-square">'
        f'<rect x="{_sx(0)}" y="{_sy(1)}" width="{SVG_SCALE}" height="{SVG_SCALE}"/>'
        "</clipPath></defs>",
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
        f'<rect x="{_sx(0)}" y="{_sy(1)}" width="{SVG_SCALE}" height="{SVG_SCALE}" '
        'fill="none" stroke="#888" stroke-width="1"/>',
    ]
    for depth, frac in tree.levels:
        circle = ford_circle(frac)
        cx, cy = circle.center
        clip = ' clip-path="url(#unit-square)"' if depth == 1 else ""
        parts.append(
            f'<circle data-fraction="{frac}" cx="{_sx(cx)}" cy="{_sy(cy)}" '
            f'r="{fmt(circle.radius * SVG_SCALE)}" fill="none" '
            f'stroke="#1f4e8c" stroke-width="1"{clip}/>'
        )
        parts.append(
            f'<line data-fraction="{frac}" x1="{_sx(0)}" y1="{_sy(0)}" '
            f'x2="{_sx(float(frac))}" y2="{_sy(1)}" '
            'stroke="#c04040" stroke-width="0.75"/>'
        )
    if include_rects:
        for depth, frac in tree.levels:
            if frac in (0, 1):
                continue
            rect = thales_rect(frac)
            points = " ".join(f"{_sx(x)},{_sy(y)}" for x, y in rect.corners)
            parts.append(
                f'<polygon data-fraction="{frac}" data-pixels='
                f'"{rect.pixel_rows}x{rect.pixel_cols}" points="{points}" '
                'fill="none" stroke="#208020" stroke-width="0.75"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def farey_table(tree: FareyTree) -> list[list]:
    """CSV rows: fraction, depth, circle center and radius, parents."""
    rows: list[list] = []
    for depth, frac in tree.levels:
        circle = ford_circle(frac)
        if 0 < frac < 1:
            left, right = parents(frac)
            left_s, right_s = str(left), str(right)
        else:
            left_s = right_s = ""
        rows.append(
            [
                str(frac),
                depth,
                circle.center[0],
                circle.center[1],
                circle.radius,
                left_s,
                right_s,
            ]
        )
    return rows
