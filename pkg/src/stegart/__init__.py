"""Hide encrypted payloads inside ASCII-art canvases.

Payload ciphertext is written into coordinate-defined, color-tagged segments
of an ASCII-art canvas. An offline manifest plus a master key recovers it,
and digests in the manifest flag any modification of the art.
"""

from .canvas import Canvas, get_char, image_to_ascii, parse_canvas, serialize_canvas, set_chars
from .chroma import ColoredCanvas, check_colors, parse_ansi, render_ansi, render_html
from .codec94 import b94_decode, b94_encode, encoded_len, max_payload
from .cryptobox import MasterKey, derive_keys, digest, open_, pad_chars, row_digest, seal
from .stego import (
    IntegrityReport,
    Manifest,
    Segment,
    SegmentMap,
    Verdict,
    canonical_aad,
    capacity,
    embed,
    extract,
    manifest_read,
    manifest_write,
    validate_map,
    verify,
)
from .tamper import TamperReport, tamper_sim

__version__ = "0.1.0"
