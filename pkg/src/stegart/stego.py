"""Segment maps, payload injection and extraction, integrity verification, manifests.

A segment is a half-open, 0-based range ``[start, end)`` of linear cell
indices with an expected display color and a sequence rank. Segments are read
in ascending rank and, within a segment, in ascending index. Ciphertext goes
first; whatever room is left in the segments is filled with key-derived
padding so the payload boundary does not show.
"""

from __future__ import annotations

import enum
import json
import re
import secrets
from dataclasses import dataclass, field
from typing import Iterator, Optional

from . import codec94
from .canvas import Canvas, serialize_canvas, set_chars
from .cryptobox import (
    NONCE_LEN,
    SALT_LEN,
    TAG_LEN,
    DatasetContext,
    MasterKey,
    check_label,
    derive_keys,
    digest,
    open_,
    pad_chars,
    row_digest,
    seal,
)
from .errors import (
    AuthenticationFailed,
    BadChar,
    BadColor,
    BadManifest,
    CapacityExceeded,
    DimensionMismatch,
    DuplicateSeq,
    EmptyMap,
    IntegrityRefusal,
    MapError,
    OutOfBounds,
    Overflow,
    Overlap,
    StegartError,
)

VERSION = 1
DEFAULT_THRESHOLD = 0.10
_COLOR = re.compile(r"#[0-9a-f]{6}")


@dataclass(frozen=True)
class Segment:
    start: int
    end: int
    color: str
    seq: int

    def __post_init__(self):
        if isinstance(self.color, str):
            object.__setattr__(self, "color", self.color.lower())

    def __len__(self) -> int:
        return self.end - self.start

    def indices(self) -> range:
        return range(self.start, self.end)


@dataclass(frozen=True)
class SegmentMap:
    """Segments kept in ascending ``seq`` order regardless of input order."""

    segments: tuple[Segment, ...]

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(sorted(self.segments, key=lambda s: s.seq)))

    def __iter__(self) -> Iterator[Segment]:
        return iter(self.segments)

    def __len__(self) -> int:
        return len(self.segments)

    def cell_indices(self) -> list[int]:
        """Payload cells in reading order."""
        return [i for s in self.segments for i in s.indices()]

    def to_json(self) -> list[dict]:
        return [{"start": s.start, "end": s.end, "color": s.color, "seq": s.seq}
                for s in self.segments]

    @classmethod
    def of(cls, *ranges: tuple) -> SegmentMap:
        """Build from ``(start, end, color)`` tuples ranked 1, 2, ... in argument order."""
        return cls(tuple(Segment(start, end, color, k)
                         for k, (start, end, color) in enumerate(ranges, start=1)))


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def validate_map(m: SegmentMap, c: Canvas | tuple[int, int]) -> None:
    """Raise the first violated map invariant against canvas ``c`` (or its (width, height))."""
    width, height = (c.width, c.height) if isinstance(c, Canvas) else c
    size = width * height
    if not m.segments:
        raise EmptyMap()
    seen = set()
    for s in m.segments:
        if not (_is_int(s.seq) and s.seq >= 0):
            raise MapError(f"seq {s.seq!r} must be a non-negative integer")
        if s.seq in seen:
            raise DuplicateSeq(s.seq)
        seen.add(s.seq)
        if not (isinstance(s.color, str) and _COLOR.fullmatch(s.color)):
            raise BadColor(s.seq)
        if not (_is_int(s.start) and _is_int(s.end) and 0 <= s.start < s.end <= size):
            raise OutOfBounds(s.seq)
    segs = m.segments
    for i, a in enumerate(segs):
        for b in segs[i + 1:]:
            if a.start < b.end and b.start < a.end:
                raise Overlap(a.seq, b.seq)


def capacity(m: SegmentMap) -> int:
    return sum(len(s) for s in m.segments)


def canonical_aad(label: str, width: int, height: int, m: SegmentMap) -> bytes:
    parts = [f"v{VERSION}|{label}|{width}x{height}|"]
    parts += [f"{s.start},{s.end},{s.color},{s.seq};" for s in m.segments]
    return "".join(parts).encode("ascii")


def segment_text(c: Canvas, s: Segment) -> str:
    return c.cells()[s.start:s.end]


# -- manifest -----------------------------------------------------------------

@dataclass(frozen=True)
class Manifest:
    label: str
    width: int
    height: int
    segments: SegmentMap
    salt: bytes
    nonce: bytes
    ct_len: int
    canvas_digest: bytes
    segment_digests: tuple[bytes, ...]
    row_digests: tuple[bytes, ...]
    version: int = VERSION

    @property
    def dims(self) -> tuple[int, int]:
        return (self.width, self.height)


_FIELDS = ("version", "label", "width", "height", "segments", "salt", "nonce", "ct_len",
           "canvas_digest", "segment_digests", "row_digests")
_SEGMENT_FIELDS = ("start", "end", "color", "seq")


def manifest_to_dict(man: Manifest) -> dict:
    return {
        "version": man.version,
        "label": man.label,
        "width": man.width,
        "height": man.height,
        "segments": man.segments.to_json(),
        "salt": man.salt.hex(),
        "nonce": man.nonce.hex(),
        "ct_len": man.ct_len,
        "canvas_digest": man.canvas_digest.hex(),
        "segment_digests": [d.hex() for d in man.segment_digests],
        "row_digests": [d.hex() for d in man.row_digests],
    }


def manifest_write(man: Manifest) -> str:
    return json.dumps(manifest_to_dict(man), indent=2) + "\n"


def _hex(value, nbytes: int, name: str) -> bytes:
    if not isinstance(value, str) or not re.fullmatch(rf"[0-9a-f]{{{2 * nbytes}}}", value):
        raise BadManifest(name)
    return bytes.fromhex(value)


def _nonneg_int(v, name: str) -> int:
    if not _is_int(v) or v < 0:
        raise BadManifest(name)
    return v


def _exact_keys(obj, keys: tuple[str, ...], name: str) -> None:
    if not isinstance(obj, dict):
        raise BadManifest(f"{name} must be an object")
    missing = [k for k in keys if k not in obj]
    extra = [k for k in obj if k not in keys]
    if missing:
        raise BadManifest(f"missing field {missing[0]}")
    if extra:
        raise BadManifest(f"unknown field {extra[0]}")


def parse_segments(raw) -> SegmentMap:
    """Parse the ``segments`` array shared by map files and manifests."""
    if not isinstance(raw, list):
        raise BadManifest("segments")
    segs = []
    for item in raw:
        _exact_keys(item, _SEGMENT_FIELDS, "segment")
        if not isinstance(item["color"], str):
            raise BadManifest("segments.color")
        segs.append(Segment(_nonneg_int(item["start"], "segments.start"),
                            _nonneg_int(item["end"], "segments.end"),
                            item["color"],
                            _nonneg_int(item["seq"], "segments.seq")))
    return SegmentMap(tuple(segs))


def manifest_from_dict(obj) -> Manifest:
    _exact_keys(obj, _FIELDS, "manifest")
    if obj["version"] != VERSION or not _is_int(obj["version"]):
        raise BadManifest("version")
    label = obj["label"]
    if not isinstance(label, str):
        raise BadManifest("label")
    try:
        check_label(label)
    except StegartError:
        raise BadManifest("label") from None
    width = _nonneg_int(obj["width"], "width")
    height = _nonneg_int(obj["height"], "height")
    if width < 1 or height < 1:
        raise BadManifest("dimensions")
    segments = parse_segments(obj["segments"])
    for key in ("segment_digests", "row_digests"):
        if not isinstance(obj[key], list):
            raise BadManifest(key)
    man = Manifest(
        label=label,
        width=width,
        height=height,
        segments=segments,
        salt=_hex(obj["salt"], SALT_LEN, "salt"),
        nonce=_hex(obj["nonce"], NONCE_LEN, "nonce"),
        ct_len=_nonneg_int(obj["ct_len"], "ct_len"),
        canvas_digest=_hex(obj["canvas_digest"], 32, "canvas_digest"),
        segment_digests=tuple(_hex(d, 32, "segment_digests") for d in obj["segment_digests"]),
        row_digests=tuple(_hex(d, 8, "row_digests") for d in obj["row_digests"]),
    )
    if len(man.segment_digests) != len(segments):
        raise BadManifest("segment_digests")
    if len(man.row_digests) != height:
        raise BadManifest("row_digests")
    if man.ct_len < TAG_LEN:
        raise BadManifest("ct_len")
    return man


def manifest_read(text: str) -> Manifest:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadManifest(f"invalid JSON ({exc.msg})") from None
    man = manifest_from_dict(obj)
    try:
        validate_map(man.segments, man.dims)
    except StegartError as exc:
        raise BadManifest(f"segments ({exc})") from None
    if codec94.encoded_len(man.ct_len) > capacity(man.segments):
        raise BadManifest("ct_len exceeds segment capacity")
    return man


# -- integrity ----------------------------------------------------------------

class Verdict(enum.Enum):
    CLEAN = "Clean"
    DECORATIVE_MODIFIED = "DecorativeModified"
    SIGNIFICANTLY_MODIFIED = "SignificantlyModified"
    SEGMENT_TAMPERED = "SegmentTampered"


@dataclass(frozen=True)
class IntegrityReport:
    verdict: Verdict
    modified_row_ratio: float = 0.0
    mismatched_segments: tuple[int, ...] = field(default_factory=tuple)

    def summary(self) -> str:
        return f"{self.verdict.value} {self.modified_row_ratio:.3f}"


def _digests(c: Canvas, m: SegmentMap) -> tuple[bytes, tuple[bytes, ...], tuple[bytes, ...]]:
    cells = c.cells()
    return (
        digest(serialize_canvas(c).encode("ascii")),
        tuple(digest(cells[s.start:s.end].encode("ascii")) for s in m.segments),
        tuple(row_digest(row.encode("ascii")) for row in c.rows),
    )


def _check_dims(c: Canvas, man: Manifest) -> None:
    if (c.width, c.height) != man.dims:
        raise DimensionMismatch(man.dims, (c.width, c.height))


def verify(c: Canvas, man: Manifest, threshold: float = DEFAULT_THRESHOLD) -> IntegrityReport:
    """Classify how far ``c`` has drifted from the canvas the manifest describes.

    Clean when the whole-canvas digest matches; SegmentTampered when any
    segment digest differs; otherwise the share of rows whose digest differs
    decides between DecorativeModified (``<= threshold``) and
    SignificantlyModified.
    """
    _check_dims(c, man)
    canvas_d, seg_ds, row_ds = _digests(c, man.segments)
    if canvas_d == man.canvas_digest:
        return IntegrityReport(Verdict.CLEAN, 0.0, ())
    changed_rows = sum(a != b for a, b in zip(row_ds, man.row_digests))
    ratio = changed_rows / man.height
    bad = tuple(s.seq for s, d, ref in zip(man.segments, seg_ds, man.segment_digests) if d != ref)
    if bad:
        return IntegrityReport(Verdict.SEGMENT_TAMPERED, ratio, bad)
    if ratio <= threshold:
        return IntegrityReport(Verdict.DECORATIVE_MODIFIED, ratio, ())
    return IntegrityReport(Verdict.SIGNIFICANTLY_MODIFIED, ratio, ())


# -- embed / extract ------------------------------------------------------------

def embed(c: Canvas, m: SegmentMap, mk: MasterKey, label: str, plaintext: bytes,
          nonce_override: Optional[bytes] = None,
          salt_override: Optional[bytes] = None) -> tuple[Canvas, Manifest]:
    """Encrypt ``plaintext`` and write it into the map's segment cells.

    Returns the stego canvas and the manifest needed to read it back.
    """
    validate_map(m, c)
    check_label(label)
    needed = codec94.encoded_len(len(plaintext) + TAG_LEN)
    available = capacity(m)
    if needed > available:
        raise CapacityExceeded(needed, available)

    salt = secrets.token_bytes(SALT_LEN) if salt_override is None else bytes(salt_override)
    nonce = secrets.token_bytes(NONCE_LEN) if nonce_override is None else bytes(nonce_override)
    if len(salt) != SALT_LEN or len(nonce) != NONCE_LEN:
        raise ValueError(f"salt must be {SALT_LEN} bytes and nonce {NONCE_LEN} bytes")

    aad = canonical_aad(label, c.width, c.height, m)
    keys = derive_keys(mk, DatasetContext(salt, label, nonce, aad))
    ct = seal(keys.data_key, nonce, bytes(plaintext), aad)
    enc = codec94.b94_encode(ct)
    fill = enc + pad_chars(keys.pad_secret, available - len(enc))

    stego = set_chars(c, zip(m.cell_indices(), fill))
    canvas_d, seg_ds, row_ds = _digests(stego, m)
    man = Manifest(label=label, width=c.width, height=c.height, segments=m, salt=salt,
                   nonce=nonce, ct_len=len(ct), canvas_digest=canvas_d,
                   segment_digests=seg_ds, row_digests=row_ds)
    return stego, man


def extract(stego: Canvas, man: Manifest, mk: MasterKey, strict: bool = False,
            threshold: float = DEFAULT_THRESHOLD) -> tuple[bytes, IntegrityReport]:
    """Recover the plaintext hidden in ``stego``.

    Any change to a segment cell, to the key, or to the manifest's label,
    dimensions, ranges, colors or ranks raises ``AuthenticationFailed``.
    """
    report = verify(stego, man, threshold)
    if strict and report.verdict is not Verdict.CLEAN:
        raise IntegrityRefusal(report)

    cells = stego.cells()
    payload_cells = "".join(cells[i] for i in man.segments.cell_indices())
    n = codec94.encoded_len(man.ct_len)
    enc, padding = payload_cells[:n], payload_cells[n:]

    try:
        ct = codec94.b94_decode(enc)
    except Overflow:
        raise AuthenticationFailed("segment characters are not a valid encoding") from None
    except BadChar as exc:
        raise BadChar(man.segments.cell_indices()[exc.position]) from None
    # decoding is many-to-one inside a truncated final group; insist on the canonical form
    if len(ct) != man.ct_len or codec94.b94_encode(ct) != enc:
        raise AuthenticationFailed("segment characters are not a canonical encoding")

    aad = canonical_aad(man.label, man.width, man.height, man.segments)
    keys = derive_keys(mk, DatasetContext(man.salt, man.label, man.nonce, aad))
    plaintext = open_(keys.data_key, man.nonce, ct, aad)
    if padding != pad_chars(keys.pad_secret, len(padding)):
        raise AuthenticationFailed("camouflage padding does not match the key")
    return plaintext, report


def cell_owner(m: SegmentMap) -> dict[int, Segment]:
    return {i: s for s in m.segments for i in s.indices()}


def decorative_indices(c: Canvas, m: SegmentMap) -> list[int]:
    owned = cell_owner(m)
    return [i for i in range(c.size) if i not in owned]


def map_from_json(text: str) -> SegmentMap:
    """Parse a map file: ``{"segments": [{"start", "end", "color", "seq"}, ...]}``."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadManifest(f"invalid map JSON ({exc.msg})") from None
    _exact_keys(obj, ("segments",), "map")
    return parse_segments(obj["segments"])


def map_to_json(m: SegmentMap) -> str:
    return json.dumps({"segments": m.to_json()}, indent=2) + "\n"

