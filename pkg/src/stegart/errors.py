"""Exception hierarchy. Every error raised on purpose by stegart derives from StegartError."""

from __future__ import annotations


class StegartError(ValueError):
    pass


# canvas

class NonPrintable(StegartError):
    def __init__(self, position: int):
        super().__init__(f"non-printable character at position {position}")
        self.position = position


class EmptyInput(StegartError):
    def __init__(self):
        super().__init__("empty canvas input")


class IndexOutOfBounds(StegartError, IndexError):
    def __init__(self, index: int, size: int):
        super().__init__(f"cell index {index} outside canvas of {size} cells")
        self.index = index
        self.size = size


class BadImage(StegartError):
    pass


class BadRamp(StegartError):
    pass


# codec94

class BadChar(StegartError):
    def __init__(self, position: int):
        super().__init__(f"character outside the base-94 alphabet at position {position}")
        self.position = position


class BadLength(StegartError):
    def __init__(self, length: int):
        super().__init__(f"encoded length {length} is 1 mod 5")
        self.length = length


class Overflow(StegartError):
    def __init__(self, position: int):
        super().__init__(f"group starting at position {position} exceeds 32 bits")
        self.position = position


# cryptobox

class BadLabel(StegartError):
    pass


class BadKey(StegartError):
    pass


class AuthenticationFailed(StegartError):
    def __init__(self, detail: str = "ciphertext failed authentication"):
        super().__init__(f"authentication failed: {detail}")


# segment maps

class MapError(StegartError):
    pass


class EmptyMap(MapError):
    def __init__(self):
        super().__init__("segment map has no segments")


class Overlap(MapError):
    def __init__(self, seq_a: int, seq_b: int):
        super().__init__(f"segments {seq_a} and {seq_b} overlap")
        self.seqs = (seq_a, seq_b)


class OutOfBounds(MapError):
    def __init__(self, seq: int):
        super().__init__(f"segment {seq} has an empty or out-of-bounds range")
        self.seq = seq


class BadColor(MapError):
    def __init__(self, seq: int):
        super().__init__(f"segment {seq} color is not #rrggbb")
        self.seq = seq


class DuplicateSeq(MapError):
    def __init__(self, seq: int):
        super().__init__(f"sequence rank {seq} used more than once")
        self.seq = seq


# embedding / extraction

class CapacityExceeded(StegartError):
    def __init__(self, needed: int, available: int):
        super().__init__(f"payload needs {needed} cells, map provides {available}")
        self.needed = needed
        self.available = available


class DimensionMismatch(StegartError):
    def __init__(self, expected: tuple[int, int], found: tuple[int, int]):
        super().__init__(
            f"canvas is {found[0]}x{found[1]}, manifest expects {expected[0]}x{expected[1]}"
        )
        self.expected = expected
        self.found = found


class IntegrityRefusal(StegartError):
    def __init__(self, report):
        super().__init__(f"strict mode refused canvas with verdict {report.verdict.value}")
        self.report = report


class BadManifest(StegartError):
    def __init__(self, reason: str):
        super().__init__(f"bad manifest: {reason}")
        self.reason = reason


# chroma

class BadEscape(StegartError):
    def __init__(self, position: int):
        super().__init__(f"unrecognized escape sequence at offset {position}")
        self.position = position
