import random

import pytest

from stegart.codec94 import ALPHABET
from stegart.cryptobox import (
    DatasetContext,
    MasterKey,
    derive_keys,
    digest,
    hkdf_expand,
    hkdf_extract,
    open_,
    pad_chars,
    row_digest,
    seal,
)
from stegart.errors import AuthenticationFailed, BadKey, BadLabel

from .oracles import hkdf_expand_oracle, hkdf_oracle

MK = MasterKey(b"\x0b" * 32)
CTX = DatasetContext(salt=bytes(16), label="L", nonce=bytes(12), color_string=b"")

# RFC 8439 section 2.8.2
RFC_KEY = bytes(range(0x80, 0xA0))
RFC_NONCE = bytes.fromhex("070000004041424344454647")
RFC_AAD = bytes.fromhex("50515253c0c1c2c3c4c5c6c7")
RFC_PT = (b"Ladies and Gentlemen of the class of '99: If I could offer you only one tip "
          b"for the future, sunscreen would be it.")
RFC_CT = bytes.fromhex(
    "d31a8d34648e60db7b86afbc53ef7ec2a4aded51296e08fea9e2b5a736ee62d63dbea45e8ca967128"
    "2fafb69da92728b1a71de0a9e060b2905d6a5b67ecd3b3692ddbd7f2d778b8c9803aee328091b58fab3"
    "24e4fad675945585808b4831d7bc3ff4def08e4b7a9de576d26586cec64b6116"
    "1ae10b594f09e26a7e902ecbd0600691")


def test_hkdf_matches_oracle():
    rng = random.Random(1)
    for _ in range(200):
        ikm, salt, info = rng.randbytes(32), rng.randbytes(16), rng.randbytes(rng.randrange(60))
        length = rng.randrange(1, 300)
        assert hkdf_expand(hkdf_extract(salt, ikm), info, length) == hkdf_oracle(ikm, salt, info, length)


def test_derive_keys_vector():
    keys = derive_keys(MK, CTX)
    # frozen from the independent HKDF oracle
    assert keys.data_key.hex() == "ec893c56951a16c39896a72b731afb09e0026ed2c1d121eec130910e0946d80b"
    assert keys.pad_secret.hex() == "e710c7aa851ee495c50003da2ab21519a25b2622f0e5f1627e64096a5f7fdab7"
    assert keys.data_key == hkdf_oracle(MK.secret, CTX.salt, b"ascii-stego/v1/dataL")


def test_derive_keys_deterministic_and_separated():
    assert derive_keys(MK, CTX) == derive_keys(MK, CTX)
    a = derive_keys(MK, DatasetContext(bytes(16), "L", bytes(12), b"1,3,#ff0000,1;"))
    b = derive_keys(MK, DatasetContext(bytes(16), "L", bytes(12), b"1,3,#ff0001,1;"))
    assert a.data_key != b.data_key
    assert a.pad_secret == b.pad_secret
    assert a.data_key != a.pad_secret


def test_any_context_change_changes_data_key():
    rng = random.Random(2)
    for _ in range(200):
        ctx = DatasetContext(rng.randbytes(16), "lbl", bytes(12), rng.randbytes(20))
        base = derive_keys(MK, ctx).data_key
        for changed in (
            DatasetContext(rng.randbytes(16), ctx.label, ctx.nonce, ctx.color_string),
            DatasetContext(ctx.salt, "lbm", ctx.nonce, ctx.color_string),
            DatasetContext(ctx.salt, ctx.label, ctx.nonce, ctx.color_string + b"x"),
        ):
            assert derive_keys(MK, changed).data_key != base


@pytest.mark.parametrize("label", ["\x00", "é", "x" * 65])
def test_bad_label(label):
    with pytest.raises(BadLabel):
        derive_keys(MK, DatasetContext(bytes(16), label, bytes(12)))


def test_rfc8439_vector():
    assert seal(RFC_KEY, RFC_NONCE, RFC_PT, RFC_AAD) == RFC_CT
    assert open_(RFC_KEY, RFC_NONCE, RFC_CT, RFC_AAD) == RFC_PT


def test_empty_plaintext():
    ct = seal(bytes(32), bytes(12), b"", b"")
    assert len(ct) == 16
    assert open_(bytes(32), bytes(12), ct, b"") == b""


def test_seal_open_and_bit_flips():
    rng = random.Random(3)
    for _ in range(1000):
        key, nonce = rng.randbytes(32), rng.randbytes(12)
        pt, aad = rng.randbytes(rng.randrange(64)), rng.randbytes(rng.randrange(32))
        ct = seal(key, nonce, pt, aad)
        assert len(ct) == len(pt) + 16
        assert open_(key, nonce, ct, aad) == pt

        bit = rng.randrange(8 * len(ct))
        bad = bytearray(ct)
        bad[bit // 8] ^= 1 << (bit % 8)
        with pytest.raises(AuthenticationFailed):
            open_(key, nonce, bytes(bad), aad)
        if aad:
            bit = rng.randrange(8 * len(aad))
            bad_aad = bytearray(aad)
            bad_aad[bit // 8] ^= 1 << (bit % 8)
            with pytest.raises(AuthenticationFailed):
                open_(key, nonce, ct, bytes(bad_aad))


def test_wrong_key_or_nonce():
    ct = seal(bytes(32), bytes(12), b"hi", b"a")
    with pytest.raises(AuthenticationFailed):
        open_(b"\1" + bytes(31), bytes(12), ct, b"a")
    with pytest.raises(AuthenticationFailed):
        open_(bytes(32), b"\1" + bytes(11), ct, b"a")


def test_digest():
    assert digest(b"").hex() == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
    assert row_digest(b"abc") == digest(b"abc")[:8]
    seen = {digest(bytes([i, j])) for i in range(64) for j in range(64)}
    assert len(seen) == 64 * 64


def test_pad_chars():
    secret = bytes(range(32))
    assert pad_chars(secret, 0) == ""
    long = pad_chars(secret, 100_000)
    assert len(long) == 100_000 and set(long) <= set(ALPHABET)
    assert pad_chars(secret, 100_000) == long
    assert pad_chars(secret, 50) == long[:50]
    assert pad_chars(secret, 9000) == long[:9000]
    stream = hkdf_expand_oracle(secret, b"fill", 8160)
    assert long[:8160] == "".join(ALPHABET[b % 94] for b in stream)


def test_master_key_file_format():
    hexkey = "0b" * 32
    assert MasterKey.from_hex(hexkey + "\n").secret == b"\x0b" * 32
    assert MasterKey.from_hex(hexkey).to_hex() == hexkey
    for bad in ["0B" * 32, "0b" * 31, "0b" * 32 + "\n\n", "zz" * 32]:
        with pytest.raises(BadKey):
            MasterKey.from_hex(bad)
    assert "0b" not in repr(MasterKey(b"\x0b" * 32))
