"""ASCII-art canvases: parsing, serialization, cell addressing and PGM conversion.

Cells are addressed row-major with newlines excluded, so cell ``(r, c)`` has
linear index ``r * width + c``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BadImage, BadRamp, EmptyInput, IndexOutOfBounds, NonPrintable

DEFAULT_RAMP = " .:-=+*#%@"
ASPECT = 0.5


def is_printable(ch: str) -> bool:
    return " " <= ch <= "~"


@dataclass(frozen=True)
class Canvas:
    """Immutable rectangular grid of printable ASCII characters."""

    rows: tuple[str, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows or not rows[0]:
            raise EmptyInput()
        width = len(rows[0])
        for r, row in enumerate(rows):
            if len(row) != width:
                raise ValueError(f"row {r} has length {len(row)}, expected {width}")
            for c, ch in enumerate(row):
                if not is_printable(ch):
                    raise NonPrintable(r * width + c)

    @property
    def width(self) -> int:
        return len(self.rows[0])

    @property
    def height(self) -> int:
        return len(self.rows)

    @property
    def size(self) -> int:
        return self.width * self.height

    def cells(self) -> str:
        """All cells in linear order."""
        return "".join(self.rows)

    def __str__(self) -> str:
        return serialize_canvas(self)


def parse_canvas(text: str) -> Canvas:
    """Parse newline-separated text, right-padding short lines with spaces.

    A single trailing newline is ignored. ``NonPrintable`` carries the offset
    into ``text``.
    """
    if text.endswith("\n"):
        text = text[:-1]
    for pos, ch in enumerate(text):
        if ch != "\n" and not is_printable(ch):
            raise NonPrintable(pos)
    lines = text.split("\n")
    width = max(len(line) for line in lines)
    if width == 0:
        raise EmptyInput()
    return Canvas(tuple(line.ljust(width) for line in lines))


def serialize_canvas(c: Canvas) -> str:
    return "\n".join(c.rows)


def get_char(c: Canvas, i: int) -> str:
    if not 0 <= i < c.size:
        raise IndexOutOfBounds(i, c.size)
    r, col = divmod(i, c.width)
    return c.rows[r][col]


def set_chars(c: Canvas, assignments: Iterable[tuple[int, str]]) -> Canvas:
    """Return a copy of ``c`` with the given cells replaced."""
    cells = list(c.cells())
    for i, ch in assignments:
        if not 0 <= i < c.size:
            raise IndexOutOfBounds(i, c.size)
        if len(ch) != 1 or not is_printable(ch):
            raise NonPrintable(i)
        cells[i] = ch
    w = c.width
    return Canvas(tuple("".join(cells[r * w:(r + 1) * w]) for r in range(c.height)))


# -- PGM ----------------------------------------------------------------------

_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


def _header_tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    tokens, pos = [], 0
    for _ in range(count):
        m = _TOKEN.match(data, pos)
        if m is None:
            raise BadImage("truncated PGM header")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens, pos


def read_pgm(data: bytes) -> tuple[np.ndarray, int]:
    """Decode a P2 or P5 PGM into a (height, width) integer array and its maxval."""
    tokens, pos = _header_tokens(data, 4)
    magic = tokens[0]
    if magic not in (b"P2", b"P5"):
        raise BadImage(f"unsupported magic {magic!r}")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise BadImage("non-numeric PGM header field") from None
    if width < 1 or height < 1:
        raise BadImage("PGM dimensions must be positive")
    if not 1 <= maxval <= 255:
        raise BadImage(f"maxval {maxval} outside 1..255")
    npix = width * height

    if magic == b"P5":
        # exactly one whitespace byte separates the header from the raster
        if pos >= len(data) or not data[pos:pos + 1].isspace():
            raise BadImage("missing separator before raster")
        raster = data[pos + 1:pos + 1 + npix]
        if len(raster) != npix:
            raise BadImage(f"expected {npix} raster bytes, got {len(raster)}")
        pixels = np.frombuffer(raster, dtype=np.uint8).astype(np.int64)
    else:
        body = re.sub(rb"#[^\n]*", b"", data[pos:]).split()
        if len(body) != npix:
            raise BadImage(f"expected {npix} samples, got {len(body)}")
        try:
            pixels = np.array([int(v) for v in body], dtype=np.int64)
        except ValueError:
            raise BadImage("non-numeric sample") from None
    if pixels.size and (pixels.min() < 0 or pixels.max() > maxval):
        raise BadImage("sample outside 0..maxval")
    return pixels.reshape(height, width), maxval


def _block_edges(n_in: int, n_out: int) -> np.ndarray:
    starts = np.arange(n_out, dtype=np.int64) * n_in // n_out
    # upsampling leaves some blocks empty; give each at least one source pixel
    return np.minimum(starts, n_in - 1)


def _block_sums(a: np.ndarray, n_out: int, axis: int) -> tuple[np.ndarray, np.ndarray]:
    n_in = a.shape[axis]
    starts = _block_edges(n_in, n_out)
    ends = np.maximum(np.append(starts[1:], n_in), starts + 1)
    csum = np.cumsum(a, axis=axis)
    zero = np.zeros_like(np.take(csum, [0], axis=axis))
    csum = np.concatenate([zero, csum], axis=axis)
    sums = np.take(csum, ends, axis=axis) - np.take(csum, starts, axis=axis)
    return sums, ends - starts


def image_to_ascii(pgm: bytes, out_width: int, ramp: Sequence[str] = DEFAULT_RAMP,
                   aspect: float = ASPECT) -> Canvas:
    """Render a grayscale PGM as ASCII art.

    The image is block-averaged to ``out_width`` columns and
    ``round(height * out_width / width * aspect)`` rows (at least one). A cell
    with mean luminance ``L`` becomes ``ramp[floor((255 - L) * len(ramp) / 256)]``,
    so ``ramp`` runs from lightest to densest.
    """
    ramp = "".join(ramp)
    if len(ramp) < 2:
        raise BadRamp("ramp needs at least two characters")
    if not all(is_printable(ch) for ch in ramp):
        raise BadRamp("ramp contains non-printable characters")
    if out_width < 1:
        raise ValueError("out_width must be positive")

    pixels, maxval = read_pgm(pgm)
    h_px, w_px = pixels.shape
    out_height = max(1, int(np.floor(h_px * (out_width / w_px) * aspect + 0.5)))

    col_sums, col_counts = _block_sums(pixels, out_width, axis=1)
    sums, row_counts = _block_sums(col_sums, out_height, axis=0)
    counts = row_counts[:, None] * col_counts[None, :]

    # exact integer form of floor((255 - L) * n / 256) with L = 255 * s / (maxval * count)
    n = len(ramp)
    num = (255 * maxval * counts - 255 * sums) * n
    idx = num // (256 * maxval * counts)
    return Canvas(tuple("".join(ramp[k] for k in row) for row in idx.tolist()))
