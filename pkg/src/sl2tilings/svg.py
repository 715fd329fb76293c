"""Deterministic SVG rendering of tiling windows.

One square per cell, colored by the wildness legend: wild cells are black,
parameters yellow, background +1 / -1 pale blue / pale red, tame zeros
white, any other nonzero grey.  Output is byte-identical across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

from .errors import ValidationError
from .matrices import det3
from .tiling import (
    CellColor,
    Patched,
    PeriodicBlock,
    RuleBased,
    TilingModel,
    Violation,
    Window,
    _value_color,
    verify_sl2,
    verify_window,
    wildness_report,
)

COLOR_HEX = {
    CellColor.PLUS_ONE: "#cfe8ff",
    CellColor.MINUS_ONE: "#ffd6d6",
    CellColor.ZERO_TAME: "#ffffff",
    CellColor.ZERO_WILD: "#000000",
    CellColor.PARAMETER: "#ffe066",
    CellColor.OTHER_NONZERO: "#d9d9d9",
}

GRID_STROKE = "#888888"


@dataclass(frozen=True)
class RenderOptions:
    cell_size: int = 24
    labels: bool = False

    def __post_init__(self) -> None:
        if self.cell_size < 4:
            raise ValidationError(f"cell size must be at least 4, got {self.cell_size}")


class UnverifiedModelError(ValueError):
    """Refusal to render a model that fails SL2 verification."""

    def __init__(self, violation: Violation):
        super().__init__(
            f"refusing to render: determinant {violation.value} at "
            f"({violation.i}, {violation.j}); use force to override"
        )
        self.violation = violation


def default_region(obj: TilingModel | Window) -> tuple[int, int, int, int]:
    """The window drawn when the caller does not pick one."""
    if isinstance(obj, Window):
        return (*obj.origin, obj.rows, obj.cols)
    if isinstance(obj, PeriodicBlock):
        return (0, 0, obj.h, obj.w)
    if isinstance(obj, Patched):
        return (0, 0, 20, 20)
    return (0, 0, 8, 8)


def _window_cells(win: Window) -> tuple[list[list[CellColor]], list[list[str]]]:
    """Colors and labels for a bare window; boundary cells have no visible
    3x3 neighborhood, so only interior cells can show as wild."""
    colors = []
    labels = []
    for r in range(win.rows):
        crow = []
        lrow = []
        for c in range(win.cols):
            v = win.at(r, c)
            wild = False
            if 1 <= r < win.rows - 1 and 1 <= c < win.cols - 1:
                d3 = det3(
                    [[win.at(r + dr, c + dc) for dc in (-1, 0, 1)] for dr in (-1, 0, 1)]
                )
                wild = not d3.is_zero()
            crow.append(_value_color(v, wild, False))
            lrow.append(str(v))
        colors.append(crow)
        labels.append(lrow)
    return colors, labels


def render_svg(
    obj: TilingModel | Window,
    region: tuple[int, int, int, int] | None = None,
    options: RenderOptions | None = None,
    force: bool = False,
) -> str:
    opts = options or RenderOptions()
    if isinstance(obj, Window):
        if not force:
            fault = verify_window(obj)
            if fault is not None:
                raise UnverifiedModelError(fault)
        win = obj
        colors, labels = _window_cells(win)
        h, w = win.rows, win.cols
    else:
        if not force:
            fault = verify_sl2(obj)
            if fault is not None:
                raise UnverifiedModelError(fault)
        i0, j0, h, w = region if region is not None else default_region(obj)
        report = wildness_report(obj, i0, j0, h, w)
        colors = [list(row) for row in report.colors]
        labels = [
            [str(obj.entry(i0 + r, j0 + c)) for c in range(w)] for r in range(h)
        ]
    size = opts.cell_size
    width = w * size
    height = h * size
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">'
    ]
    font = max(6, (size * 2) // 5)
    for r in range(h):
        for c in range(w):
            color = colors[r][c]
            parts.append(
                f'<rect x="{c * size}" y="{r * size}" width="{size}" height="{size}" '
                f'fill="{COLOR_HEX[color]}" stroke="{GRID_STROKE}" stroke-width="1"/>'
            )
            if opts.labels:
                text_fill = "#ffffff" if color is CellColor.ZERO_WILD else "#000000"
                parts.append(
                    f'<text x="{c * size + size // 2}" y="{r * size + size // 2}" '
                    f'font-family="monospace" font-size="{font}" fill="{text_fill}" '
                    f'text-anchor="middle" dominant-baseline="central">'
                    f"{escape(labels[r][c])}</text>"
                )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
