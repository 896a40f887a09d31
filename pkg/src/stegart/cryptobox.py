"""Key derivation, authenticated encryption, digests and camouflage padding."""

from __future__ import annotations

import hashlib
import hmac
import re
from dataclasses import dataclass

from cryptography.exceptions import InvalidTag
from cryptography.hazmat.primitives.ciphers.aead import ChaCha20Poly1305

from .codec94 import ALPHABET
from .errors import AuthenticationFailed, BadKey, BadLabel

KEY_LEN = 32
SALT_LEN = 16
NONCE_LEN = 12
TAG_LEN = 16
MAX_LABEL = 64

DATA_INFO = b"ascii-stego/v1/data"
PAD_INFO = b"ascii-stego/v1/pad"
FILL_INFO = b"fill"

_HASH_LEN = hashlib.sha256().digest_size
_MAX_EXPAND = 255 * _HASH_LEN


@dataclass(frozen=True)
class MasterKey:
    secret: bytes

    def __post_init__(self):
        if len(self.secret) != KEY_LEN:
            raise BadKey(f"master key must be {KEY_LEN} bytes, got {len(self.secret)}")

    def __repr__(self) -> str:
        return "MasterKey(<redacted>)"

    @classmethod
    def from_hex(cls, text: str) -> MasterKey:
        """Parse the key-file format: 64 lowercase hex digits, optional trailing newline."""
        if text.endswith("\n"):
            text = text[:-1]
        if not re.fullmatch(r"[0-9a-f]{64}", text):
            raise BadKey("key file must hold exactly 64 lowercase hex digits")
        return cls(bytes.fromhex(text))

    def to_hex(self) -> str:
        return self.secret.hex()


@dataclass(frozen=True)
class DatasetContext:
    salt: bytes
    label: str
    nonce: bytes
    color_string: bytes = b""


@dataclass(frozen=True, repr=False)
class DerivedKeys:
    data_key: bytes
    pad_secret: bytes

    def __repr__(self) -> str:
        return "DerivedKeys(<redacted>)"


def hkdf_extract(salt: bytes, ikm: bytes) -> bytes:
    return hmac.new(salt, ikm, hashlib.sha256).digest()


def hkdf_expand(prk: bytes, info: bytes, length: int) -> bytes:
    if length > _MAX_EXPAND:
        raise ValueError(f"HKDF-Expand output limited to {_MAX_EXPAND} bytes")
    blocks, prev = [], b""
    for counter in range(1, -(-length // _HASH_LEN) + 1):
        prev = hmac.new(prk, prev + info + bytes([counter]), hashlib.sha256).digest()
        blocks.append(prev)
    return b"".join(blocks)[:length]


def check_label(label: str) -> bytes:
    if not isinstance(label, str) or not all(" " <= ch <= "~" for ch in label):
        raise BadLabel("label must be printable ASCII")
    raw = label.encode("ascii")
    if len(raw) > MAX_LABEL:
        raise BadLabel(f"label longer than {MAX_LABEL} bytes")
    return raw


def derive_keys(mk: MasterKey, ctx: DatasetContext) -> DerivedKeys:
    label = check_label(ctx.label)
    if len(ctx.salt) != SALT_LEN:
        raise ValueError(f"salt must be {SALT_LEN} bytes")
    prk = hkdf_extract(ctx.salt, mk.secret)
    return DerivedKeys(
        data_key=hkdf_expand(prk, DATA_INFO + label + bytes(ctx.color_string), KEY_LEN),
        pad_secret=hkdf_expand(prk, PAD_INFO + label, KEY_LEN),
    )


def seal(key: bytes, nonce: bytes, plaintext: bytes, aad: bytes) -> bytes:
    """ChaCha20-Poly1305 encryption; the 16-byte tag is appended."""
    return ChaCha20Poly1305(key).encrypt(nonce, plaintext, aad)


def open_(key: bytes, nonce: bytes, ciphertext: bytes, aad: bytes) -> bytes:
    try:
        return ChaCha20Poly1305(key).decrypt(nonce, ciphertext, aad)
    except InvalidTag:
        raise AuthenticationFailed("tag mismatch (tampered data or wrong key)") from None


def digest(data: bytes) -> bytes:
    return hashlib.sha256(data).digest()


def row_digest(data: bytes) -> bytes:
    return digest(data)[:8]


def pad_chars(pad_secret: bytes, n: int) -> str:
    """Key-derived printable filler for segment cells not holding ciphertext.

    Up to 8160 characters come from one HKDF-Expand call; longer streams
    append further blocks expanded under ``b"fill" + block_index`` so any
    length works and shorter outputs stay prefixes of longer ones.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    chunks, block = [], 0
    while n > 0:
        info = FILL_INFO if block == 0 else FILL_INFO + block.to_bytes(4, "big")
        take = min(n, _MAX_EXPAND)
        chunks.append(hkdf_expand(pad_secret, info, take))
        n -= take
        block += 1
    return "".join(ALPHABET[b % 94] for b in b"".join(chunks))
