"""Seeded perturbation harness measuring tamper detection and payload recovery."""

from __future__ import annotations

import dataclasses
import json
import random
from dataclasses import dataclass

from .canvas import Canvas, set_chars
from .codec94 import ALPHABET
from .cryptobox import MasterKey
from .errors import StegartError
from .stego import Manifest, SegmentMap, Verdict, decorative_indices, extract, verify

KINDS = ("segment", "decorative", "color")
_HEX = "0123456789abcdef"


@dataclass(frozen=True)
class TamperReport:
    kind: str
    trials: int
    detected: int
    recovered: int

    @property
    def detection_rate(self) -> float:
        return self.detected / self.trials

    @property
    def recovery_rate(self) -> float:
        return self.recovered / self.trials

    def to_dict(self) -> dict:
        return {"kind": self.kind, "trials": self.trials, "detected": self.detected,
                "detection_rate": self.detection_rate, "recovered": self.recovered}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    def row(self) -> str:
        return f"{self.kind}\t{self.trials}\t{self.detected}\t{self.detection_rate:.3f}\t{self.recovered}"


HEADER = "kind\ttrials\tdetected\tdetection_rate\trecovered"


def _replace_cell(rng: random.Random, c: Canvas, candidates: list[int]) -> Canvas:
    i = rng.choice(candidates)
    old = c.cells()[i]
    new = rng.choice([ch for ch in ALPHABET if ch != old])
    return set_chars(c, [(i, new)])


def _recolor(rng: random.Random, man: Manifest) -> Manifest:
    segs = list(man.segments.segments)
    k = rng.randrange(len(segs))
    color = segs[k].color
    pos = rng.randrange(1, 7)
    digit = rng.choice([h for h in _HEX if h != color[pos]])
    segs[k] = dataclasses.replace(segs[k], color=color[:pos] + digit + color[pos + 1:])
    return dataclasses.replace(man, segments=SegmentMap(tuple(segs)))


def tamper_sim(canvas: Canvas, manifest: Manifest, key: MasterKey, kind: str,
               trials: int, seed: int) -> TamperReport:
    """Apply ``trials`` random single-point perturbations of one ``kind``.

    A trial counts as detected when verify reports anything but Clean or
    extraction fails; it counts as recovered when extraction still returns
    the original payload. Replacement characters are drawn from the 94
    non-space printables.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {', '.join(KINDS)}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    original, _ = extract(canvas, manifest, key)
    rng = random.Random(seed)
    segment_cells = manifest.segments.cell_indices()
    decorative_cells = decorative_indices(canvas, manifest.segments)
    if kind == "decorative" and not decorative_cells:
        raise ValueError("map covers the whole canvas; no decorative cells to perturb")

    detected = recovered = 0
    for _ in range(trials):
        c, man = canvas, manifest
        if kind == "segment":
            c = _replace_cell(rng, canvas, segment_cells)
        elif kind == "decorative":
            c = _replace_cell(rng, canvas, decorative_cells)
        else:
            man = _recolor(rng, manifest)

        flagged = verify(c, man).verdict is not Verdict.CLEAN
        try:
            payload, _ = extract(c, man, key)
        except StegartError:
            flagged, payload = True, None
        detected += flagged
        recovered += payload == original
    return TamperReport(kind, trials, detected, recovered)
