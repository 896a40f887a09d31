"""Command-line interface.

Exit codes: 0 success / Clean / colors ok, 1 usage, I/O or crypto error,
2 DecorativeModified, 3 SignificantlyModified, 4 SegmentTampered,
5 color mismatch.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import chroma
from .canvas import DEFAULT_RAMP, image_to_ascii, parse_canvas, serialize_canvas
from .cryptobox import MasterKey
from .errors import StegartError
from .stego import (
    Verdict,
    embed,
    extract,
    manifest_read,
    manifest_write,
    map_from_json,
    verify,
)
from .tamper import HEADER, KINDS, tamper_sim

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_COLOR_MISMATCH = 5
VERDICT_EXIT = {
    Verdict.CLEAN: 0,
    Verdict.DECORATIVE_MODIFIED: 2,
    Verdict.SIGNIFICANTLY_MODIFIED: 3,
    Verdict.SEGMENT_TAMPERED: 4,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read_text(path: str) -> str:
    with open(path, encoding="ascii", newline="") as fh:
        return fh.read()


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(text)


def _read_key(path: str) -> MasterKey:
    return MasterKey.from_hex(_read_text(path))


def _hex_arg(n: int):
    def parse(value: str) -> bytes:
        try:
            raw = bytes.fromhex(value)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not hex: {value!r}") from None
        if len(raw) != n:
            raise argparse.ArgumentTypeError(f"expected {n} bytes, got {len(raw)}")
        return raw
    return parse


def cmd_keygen(args) -> int:
    path = Path(args.out)
    _write_text(str(path), MasterKey(secrets.token_bytes(32)).to_hex() + "\n")
    path.chmod(0o600)
    return EXIT_OK


def cmd_artify(args) -> int:
    art = image_to_ascii(Path(args.input).read_bytes(), args.width, args.ramp, args.aspect)
    _write_text(args.out, serialize_canvas(art) + "\n")
    return EXIT_OK


def cmd_embed(args) -> int:
    art = parse_canvas(_read_text(args.art))
    seg_map = map_from_json(_read_text(args.map))
    payload = Path(args.payload).read_bytes()
    stego, man = embed(art, seg_map, _read_key(args.key), args.label, payload,
                       nonce_override=args.nonce, salt_override=args.salt)
    _write_text(args.out_canvas, serialize_canvas(stego) + "\n")
    _write_text(args.out_manifest, manifest_write(man))
    return EXIT_OK


def cmd_extract(args) -> int:
    stego = parse_canvas(_read_text(args.canvas))
    man = manifest_read(_read_text(args.manifest))
    plaintext, report = extract(stego, man, _read_key(args.key), strict=args.strict,
                                threshold=args.threshold)
    Path(args.out).write_bytes(plaintext)
    print(report.summary())
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify(parse_canvas(_read_text(args.canvas)), manifest_read(_read_text(args.manifest)),
                    threshold=args.threshold)
    print(report.summary())
    if report.mismatched_segments:
        print("segments: " + " ".join(map(str, report.mismatched_segments)))
    return VERDICT_EXIT[report.verdict]


def cmd_render(args) -> int:
    stego = parse_canvas(_read_text(args.canvas))
    man = manifest_read(_read_text(args.manifest))
    if (stego.width, stego.height) != man.dims:
        raise StegartError(f"canvas is {stego.width}x{stego.height}, manifest expects "
                           f"{man.width}x{man.height}")
    render = chroma.render_ansi if args.format == "ansi" else chroma.render_html
    _write_text(args.out, render(stego, man.segments) + "\n")
    return EXIT_OK


def cmd_check_colors(args) -> int:
    cc = chroma.parse_ansi(_read_text(args.rendered))
    man = manifest_read(_read_text(args.manifest))
    if (cc.canvas.width, cc.canvas.height) != man.dims:
        raise StegartError("rendered canvas dimensions differ from manifest")
    mismatches = chroma.check_colors(cc, man.segments)
    if not mismatches:
        print("ok")
        return EXIT_OK
    for mm in mismatches:
        print(f"{mm.index}\t{mm.expected or 'default'}\t{mm.found or 'default'}")
    return EXIT_COLOR_MISMATCH


def cmd_tamper_sim(args) -> int:
    stego = parse_canvas(_read_text(args.canvas))
    man = manifest_read(_read_text(args.manifest))
    key = _read_key(args.key)
    kinds = KINDS if args.kind == "all" else (args.kind,)
    reports = [tamper_sim(stego, man, key, kind, args.trials, args.seed) for kind in kinds]
    print(HEADER)
    for rep in reports:
        print(rep.row())
    if args.out:
        _write_text(args.out, json.dumps([r.to_dict() for r in reports], indent=2) + "\n")
    if args.figure:
        from .report import plot_tamper_reports
        plot_tamper_reports(reports, args.figure)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stegart",
                     description="Hide encrypted payloads in ASCII art at color-tagged segments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="write a new 32-byte master key as hex")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("artify", help="convert a PGM image to ASCII art")
    p.add_argument("--input", required=True, help="P2 or P5 PGM file")
    p.add_argument("--width", required=True, type=int)
    p.add_argument("--ramp", default=DEFAULT_RAMP, help="characters from lightest to densest")
    p.add_argument("--aspect", default=0.5, type=float, help="character aspect correction")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_artify)

    p = sub.add_parser("embed", help="encrypt a payload into the art's segments")
    p.add_argument("--art", required=True)
    p.add_argument("--map", required=True, help="segment map JSON")
    p.add_argument("--key", required=True)
    p.add_argument("--label", required=True)
    p.add_argument("--payload", required=True)
    p.add_argument("--salt", type=_hex_arg(16), help="fixed 16-byte salt (hex), for reproducible output")
    p.add_argument("--nonce", type=_hex_arg(12), help="fixed 12-byte nonce (hex)")
    p.add_argument("--out-canvas", required=True)
    p.add_argument("--out-manifest", required=True)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("extract", help="recover a payload using the manifest and key")
    p.add_argument("--canvas", required=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--key", required=True)
    p.add_argument("--strict", action="store_true", help="refuse unless the canvas is Clean")
    p.add_argument("--threshold", type=float, default=0.10)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("verify", help="classify canvas integrity against the manifest")
    p.add_argument("--canvas", required=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--threshold", type=float, default=0.10,
                   help="largest modified-row ratio still counted as decorative")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="render segments in color")
    p.add_argument("--canvas", required=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--format", choices=("ansi", "html"), default="ansi")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("check-colors", help="check an ANSI rendering against the manifest colors")
    p.add_argument("--rendered", required=True)
    p.add_argument("--manifest", required=True)
    p.set_defaults(func=cmd_check_colors)

    p = sub.add_parser("tamper-sim", help="measure detection of random perturbations")
    p.add_argument("--canvas", required=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--key", required=True)
    p.add_argument("--kind", choices=KINDS + ("all",), default="all")
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write reports as JSON")
    p.add_argument("--figure", help="write a bar chart (format from extension)")
    p.set_defaults(func=cmd_tamper_sim)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
    except (StegartError, OSError, UnicodeDecodeError, ValueError) as exc:
        print(f"stegart: error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
