"""Seeded simulation of dice totals and shooter hands.

Every roll consumes a fixed block of uniforms in recipe order: three for the
SS model (``U0`` control, ``U1`` and ``U2`` faces) and five for WS (``U3`` and
``U4`` resolve the pitch).  Fixing the block size keeps replications aligned
with their stream regardless of which branch a roll takes.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numba
import numpy as np

from .dice import (
    HARDWAYS_SET,
    SEVENS_SET,
    FullSet,
    Model,
    PairSet,
    _scalars,
)

# integer codes for the five sampling recipes
SET_AA, SET_AB, SET_AC, SET_1562, SET_2424 = range(5)


@dataclass(frozen=True)
class RngStream:
    """Independent uniform stream for replication ``stream_id`` of ``seed``."""

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.Philox(ss))


def set_code(model: Model | str, dice_set) -> int:
    model = Model.parse(model)
    if model is Model.SS:
        pair = PairSet.parse(dice_set)
        codes = {PairSet.AA: SET_AA, PairSet.AB: SET_AB, PairSet.AC: SET_AC}
        if pair not in codes:
            raise ValueError(f"SS sampling is defined for AA, AB and AC, not {pair.value}")
        return codes[pair]
    full = FullSet.parse(dice_set)
    if full == SEVENS_SET:
        return SET_1562
    if full == HARDWAYS_SET:
        return SET_2424
    raise ValueError(f"WS sampling is defined for 1562 and 2424, not {full}")


@numba.njit(cache=True)
def _draw_total(code, theta, gen):
    u0 = gen.random()
    u1 = gen.random()
    u2 = gen.random()
    controlled = u0 >= 1.0 - theta
    if code <= SET_AC:
        if not controlled:
            return int(6 * u1) + int(6 * u2) + 2
        left = int(4 * u1) + 2
        if code == SET_AA:
            return left + int(4 * u2) + 2
        if code == SET_AB:
            return left + (2 * int(4 * u2) + 1 if u2 < 0.5 else 2 * int(4 * u2))
        return left + (int(4 * u2) + 1 if u2 < 0.5 else int(4 * u2) + 3)
    u3 = gen.random()
    u4 = gen.random()
    pre = int(6 * u1) + int(6 * u2) + 2
    if not controlled:
        return pre
    if code == SET_1562:
        off = abs(pre - 7)
        if off == 5 or (off == 3 and u3 < 1.0 / 3.0):
            return 7
        return pre
    if pre == 7 and u3 < 2.0 / 3.0:
        return 2 * (int(4 * u4) + 2)
    return pre


@numba.njit(cache=True)
def _draw_totals(code, theta, size, gen):
    out = np.empty(size, dtype=np.int64)
    for i in range(size):
        out[i] = _draw_total(code, theta, gen)
    return out


@numba.njit(cache=True)
def _is_point(total):
    return total == 4 or total == 5 or total == 6 or total == 8 or total == 9 or total == 10


@numba.njit(cache=True)
def _draw_hand(is_ss, theta, gen):
    come_out = SET_AA if is_ss else SET_1562
    length = 0
    point = 0
    while True:
        length += 1
        if point == 0:
            total = _draw_total(come_out, theta, gen)
            if _is_point(total):
                point = total
        else:
            if is_ss:
                code = SET_AB if point == 6 or point == 8 else SET_AC
            else:
                code = SET_2424
            total = _draw_total(code, theta, gen)
            if total == 7:
                return length
            if total == point:
                point = 0


@numba.njit(cache=True)
def _draw_hands(is_ss, theta, size, gen):
    out = np.empty(size, dtype=np.int64)
    for i in range(size):
        out[i] = _draw_hand(is_ss, theta, gen)
    return out


def _generator(stream) -> np.random.Generator:
    if isinstance(stream, RngStream):
        return stream.generator()
    if isinstance(stream, np.random.Generator):
        return stream
    raise TypeError("stream must be an RngStream or numpy Generator")


def _theta(theta) -> float:
    theta, _, _ = _scalars(theta)
    return float(theta)


def sample_total(model: Model | str, dice_set, theta, stream) -> int:
    return int(_draw_total(set_code(model, dice_set), _theta(theta), _generator(stream)))


def sample_totals(model: Model | str, dice_set, theta, size: int, stream) -> np.ndarray:
    return _draw_totals(set_code(model, dice_set), _theta(theta), int(size), _generator(stream))


def simulate_hand(model: Model | str, theta, stream) -> int:
    is_ss = Model.parse(model) is Model.SS
    return int(_draw_hand(is_ss, _theta(theta), _generator(stream)))


def simulate_hands(model: Model | str, theta, n: int, stream) -> np.ndarray:
    is_ss = Model.parse(model) is Model.SS
    return _draw_hands(is_ss, _theta(theta), int(n), _generator(stream))


# ---------------------------------------------------------------- samples


class SampleFormatError(ValueError):
    pass


@dataclass
class HandSample:
    """Run-length representation of a sample of hand lengths."""

    counts: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, v in self.counts.items():
            k, v = int(k), int(v)
            if k < 2:
                raise SampleFormatError(f"hand length {k} is below the minimum of 2")
            if v < 0:
                raise SampleFormatError(f"count for length {k} is negative ({v})")
            if v:
                clean[k] = v
        self.counts = dict(sorted(clean.items()))

    @property
    def n(self) -> int:
        return sum(self.counts.values())

    @property
    def max_length(self) -> int:
        return max(self.counts, default=0)

    @classmethod
    def from_lengths(cls, lengths) -> HandSample:
        return cls(dict(Counter(int(x) for x in lengths)))

    @classmethod
    def from_run_length(cls, counts, start: int = 2) -> HandSample:
        """Counts for consecutive lengths ``start, start+1, ...``."""
        return cls({start + i: c for i, c in enumerate(counts)})

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        xs = np.fromiter(self.counts.keys(), dtype=np.int64, count=len(self.counts))
        cs = np.fromiter(self.counts.values(), dtype=np.int64, count=len(self.counts))
        return xs, cs

    def to_json(self) -> str:
        return json.dumps({str(k): v for k, v in self.counts.items()})

    def to_lines(self) -> str:
        return "".join(f"{k}\n" * v for k, v in self.counts.items())

    @classmethod
    def from_json(cls, text: str) -> HandSample:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SampleFormatError(f"invalid JSON sample: {exc}") from None
        if not isinstance(data, dict):
            raise SampleFormatError("JSON sample must be an object mapping length to count")
        counts = {}
        for key, value in data.items():
            try:
                length = int(key)
            except ValueError:
                raise SampleFormatError(f"key {key!r} is not an integer hand length") from None
            if isinstance(value, bool) or not isinstance(value, int):
                raise SampleFormatError(f"count for key {key!r} must be an integer, got {value!r}")
            if length < 2:
                raise SampleFormatError(f"key {key!r}: hand length is below 2")
            if value < 0:
                raise SampleFormatError(f"key {key!r}: count {value} is negative")
            counts[length] = value
        return cls(counts)

    @classmethod
    def from_lines(cls, text: str) -> HandSample:
        lengths = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                value = int(line)
            except ValueError:
                raise SampleFormatError(f"line {lineno}: {line!r} is not an integer") from None
            if value < 2:
                raise SampleFormatError(f"line {lineno}: hand length {value} is below 2")
            lengths.append(value)
        return cls.from_lengths(lengths)

    @classmethod
    def parse(cls, text: str) -> HandSample:
        """Accept either the JSON run-length form or one length per line."""
        looks_json = text.lstrip()[:1] in ("{", "[")
        sample = cls.from_json(text) if looks_json else cls.from_lines(text)
        if sample.n == 0:
            raise SampleFormatError("sample is empty")
        return sample

    @classmethod
    def read(cls, path: str | Path) -> HandSample:
        return cls.parse(Path(path).read_text())
