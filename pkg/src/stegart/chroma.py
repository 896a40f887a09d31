"""Colored renderings of stego canvases (truecolor ANSI and HTML) and their verification."""

from __future__ import annotations

import html
import re
from dataclasses import dataclass
from itertools import groupby
from typing import NamedTuple, Optional

from .canvas import Canvas, is_printable
from .errors import BadEscape, NonPrintable
from .stego import SegmentMap, cell_owner, validate_map

ESC = "\x1b"
RESET = ESC + "[0m"
_SGR = re.compile(r"\x1b\[(?:0|38;2;(\d{1,3});(\d{1,3});(\d{1,3}))m")


def hex_to_rgb(color: str) -> tuple[int, int, int]:
    return int(color[1:3], 16), int(color[3:5], 16), int(color[5:7], 16)


def rgb_to_hex(r: int, g: int, b: int) -> str:
    return f"#{r:02x}{g:02x}{b:02x}"


def sgr(color: str) -> str:
    r, g, b = hex_to_rgb(color)
    return f"{ESC}[38;2;{r};{g};{b}m"


@dataclass(frozen=True)
class ColoredCanvas:
    canvas: Canvas
    cell_colors: tuple[Optional[str], ...]

    def __post_init__(self):
        if len(self.cell_colors) != self.canvas.size:
            raise ValueError("color grid does not match canvas dimensions")


class ColorMismatch(NamedTuple):
    index: int
    expected: Optional[str]
    found: Optional[str]


def expected_colors(c: Canvas, m: SegmentMap) -> tuple[Optional[str], ...]:
    owner = cell_owner(m)
    return tuple(owner[i].color if i in owner else None for i in range(c.size))


def _runs(c: Canvas, m: SegmentMap):
    validate_map(m, c)
    colors = expected_colors(c, m)
    w = c.width
    for r, row in enumerate(c.rows):
        row_colors = colors[r * w:(r + 1) * w]
        runs, pos = [], 0
        for color, grp in groupby(row_colors):
            n = len(list(grp))
            runs.append((color, row[pos:pos + n]))
            pos += n
        yield runs


def render_ansi(c: Canvas, m: SegmentMap) -> str:
    lines = []
    for runs in _runs(c, m):
        lines.append("".join(text if color is None else sgr(color) + text + RESET
                             for color, text in runs))
    return "\n".join(lines)


def render_html(c: Canvas, m: SegmentMap) -> str:
    lines = []
    for runs in _runs(c, m):
        parts = []
        for color, text in runs:
            text = html.escape(text, quote=False)
            parts.append(text if color is None else f'<span style="color:{color}">{text}</span>')
        lines.append("".join(parts))
    return "<pre>" + "\n".join(lines) + "</pre>"


def parse_ansi(text: str) -> ColoredCanvas:
    """Read back text produced by :func:`render_ansi`.

    Only the truecolor foreground form ``ESC[38;2;R;G;Bm`` and the reset
    ``ESC[0m`` are accepted. Ragged rows are space-padded with default color.
    """
    if text.endswith("\n"):
        text = text[:-1]
    rows: list[list[tuple[str, Optional[str]]]] = [[]]
    color: Optional[str] = None
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch == ESC:
            m = _SGR.match(text, pos)
            if m is None:
                raise BadEscape(pos)
            if m.group(1) is None:
                color = None
            else:
                rgb = tuple(int(g) for g in m.groups())
                if max(rgb) > 255:
                    raise BadEscape(pos)
                color = rgb_to_hex(*rgb)
            pos = m.end()
            continue
        if ch == "\n":
            rows.append([])
        elif is_printable(ch):
            rows[-1].append((ch, color))
        else:
            raise NonPrintable(pos)
        pos += 1

    width = max(len(r) for r in rows)
    chars, colors = [], []
    for r in rows:
        r = r + [(" ", None)] * (width - len(r))
        chars.append("".join(ch for ch, _ in r))
        colors.extend(col for _, col in r)
    return ColoredCanvas(Canvas(tuple(chars)), tuple(colors))


def check_colors(cc: ColoredCanvas, m: SegmentMap) -> list[ColorMismatch]:
    """List every cell whose color differs from what the map prescribes; empty means ok."""
    expected = expected_colors(cc.canvas, m)
    return [ColorMismatch(i, exp, found)
            for i, (exp, found) in enumerate(zip(expected, cc.cell_colors)) if exp != found]
