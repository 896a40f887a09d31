"""Random generators shared by the stego, chroma and acceptance tests."""

from __future__ import annotations

import random

from stegart.canvas import Canvas
from stegart.codec94 import max_payload
from stegart.cryptobox import TAG_LEN
from stegart.stego import Segment, SegmentMap, capacity

ART_CHARS = " .:-=+*#%@/\\|_()<>"


def random_canvas(rng: random.Random, width: int, height: int) -> Canvas:
    return Canvas(tuple("".join(rng.choice(ART_CHARS) for _ in range(width))
                        for _ in range(height)))


def random_color(rng: random.Random) -> str:
    return "#%06x" % rng.randrange(1 << 24)


def random_map(rng: random.Random, size: int, min_capacity: int = 0,
               max_segments: int = 5) -> SegmentMap:
    """Disjoint segments with shuffled, gappy sequence ranks."""
    while True:
        k = rng.randint(1, min(max_segments, (size + 1) // 2))
        cuts = sorted(rng.sample(range(size + 1), 2 * k))
        ranks = rng.sample(range(100), k)
        segs = [Segment(cuts[2 * i], cuts[2 * i + 1], random_color(rng), ranks[i])
                for i in range(k) if cuts[2 * i] < cuts[2 * i + 1]]
        if segs:
            m = SegmentMap(tuple(segs))
            if capacity(m) >= min_capacity:
                return m


def random_case(rng: random.Random, min_cells: int = 200):
    while True:
        width = rng.randint(10, 60)
        height = rng.randint(-(-min_cells // width), 30)
        if width * height >= min_cells:
            break
    canvas = random_canvas(rng, width, height)
    seg_map = random_map(rng, canvas.size, min_capacity=20)
    limit = max_payload(capacity(seg_map)) - TAG_LEN
    payload = rng.randbytes(rng.randint(0, limit))
    return canvas, seg_map, payload
