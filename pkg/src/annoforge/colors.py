"""Group color palette.

Singletons always show DEFAULT_COLOR (grey). Real groups draw from a fixed
ordered palette of 20 distinct colors; once the palette is exhausted, new
colors come from a golden-ratio hue walk so neighbours stay far apart.
"""

from __future__ import annotations

import colorsys

DEFAULT_COLOR = "#999999"

BASE_PALETTE: tuple[str, ...] = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#bcbd22", "#17becf", "#aec7e8",
    "#ffbb78", "#98df8a", "#ff9896", "#c5b0d5", "#c49c94",
    "#f7b6d2", "#dbdb8d", "#9edae5", "#393b79", "#637939",
)

_GOLDEN_CONJUGATE = 0.618033988749895


def color_for_index(index: int, palette: tuple[str, ...] = BASE_PALETTE) -> str:
    """Color for the index-th issued group, deterministic for any index >= 0."""
    if index < 0:
        raise ValueError("color index must be non-negative")
    if index < len(palette):
        return palette[index]
    hue = ((index - len(palette)) * _GOLDEN_CONJUGATE) % 1.0
    r, g, b = colorsys.hls_to_rgb(hue, 0.5, 0.75)
    return "#%02x%02x%02x" % (round(r * 255), round(g * 255), round(b * 255))
