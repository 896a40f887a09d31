"""Base-94 binary-to-text codec over the printable characters ``!`` .. ``~``.

Works like Ascii85 with a wider radix: each 4-byte big-endian group becomes
five digits, and a trailing group of n bytes is zero-padded, encoded, and
truncated to n + 1 digits. Decoding refills truncated groups with the top
digit ``~`` before dropping the padding bytes.
"""

from __future__ import annotations

from .errors import BadChar, BadLength, Overflow

RADIX = 94
FIRST = 0x21
ALPHABET = "".join(chr(FIRST + d) for d in range(RADIX))
_MAX_GROUP = 0xFFFFFFFF


def _digits(v: int) -> str:
    out = []
    for _ in range(5):
        v, d = divmod(v, RADIX)
        out.append(chr(FIRST + d))
    return "".join(reversed(out))


def b94_encode(data: bytes) -> str:
    data = bytes(data)
    out = []
    full = len(data) - len(data) % 4
    for i in range(0, full, 4):
        out.append(_digits(int.from_bytes(data[i:i + 4], "big")))
    tail = data[full:]
    if tail:
        v = int.from_bytes(tail.ljust(4, b"\0"), "big")
        out.append(_digits(v)[:len(tail) + 1])
    return "".join(out)


def b94_decode(text: str) -> bytes:
    if len(text) % 5 == 1:
        raise BadLength(len(text))
    out = bytearray()
    for start in range(0, len(text), 5):
        group = text[start:start + 5]
        v = 0
        for k, ch in enumerate(group):
            d = ord(ch) - FIRST
            if not 0 <= d < RADIX:
                raise BadChar(start + k)
            v = v * RADIX + d
        missing = 5 - len(group)
        for _ in range(missing):
            v = v * RADIX + RADIX - 1
        if v > _MAX_GROUP:
            raise Overflow(start)
        out += v.to_bytes(4, "big")[:4 - missing]
    return bytes(out)


def encoded_len(n: int) -> int:
    q, r = divmod(n, 4)
    return 5 * q + (r + 1 if r else 0)


def max_payload(capacity: int) -> int:
    """Largest byte count whose encoding fits in ``capacity`` characters."""
    q, r = divmod(capacity, 5)
    # a 1-character remainder cannot hold anything
    return 4 * q + (r - 1 if r >= 2 else 0)
