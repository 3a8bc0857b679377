"""NEC-style pulse-distance coding between mark/space trains and 32-bit codes.

Bits are sent most-significant first over the whole 32-bit value, so the stored
code is exactly what a decode returns.  Codes are kept 32 bits wide; a remote
code written as six hex digits (``0xFF6897``) has a zero high byte.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Iterator, Sequence

log = logging.getLogger(__name__)

CODE_BITS = 32
FRAME_LENGTH = 2 + 2 * CODE_BITS + 1


class Button(enum.Enum):
    Button1 = 0x00FF6897
    Button2 = 0x00FF9867


def button_code(button: Button | str) -> int:
    if isinstance(button, str):
        button = Button[button]
    return button.value


def format_code(code: int) -> str:
    return f"0x{code:08X}"


class Mark(enum.Enum):
    MARK = "mark"
    SPACE = "space"


class NecFrame(enum.Enum):
    """Non-data decode outcomes."""

    REPEAT = "repeat"


REPEAT = NecFrame.REPEAT


@dataclass(frozen=True)
class NecTiming:
    header_mark: float = 9000.0
    header_space: float = 4500.0
    bit_mark: float = 560.0
    zero_space: float = 560.0
    one_space: float = 1690.0
    stop_mark: float = 560.0
    repeat_space: float = 2250.0
    tolerance_fraction: float = 0.25

    def __post_init__(self):
        for name in ("header_mark", "header_space", "bit_mark", "zero_space",
                     "one_space", "stop_mark", "repeat_space"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not 0 < self.tolerance_fraction < 0.5:
            raise ValueError("tolerance_fraction must lie in (0, 0.5)")

    def matches(self, duration: float, nominal: float) -> bool:
        return abs(duration - nominal) <= self.tolerance_fraction * nominal


NEC = NecTiming()


@dataclass(frozen=True)
class PulseTrain:
    """Alternating mark/space durations in microseconds, starting with a mark."""

    durations: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "durations", tuple(self.durations))
        if any(not d > 0 for d in self.durations):
            raise ValueError("pulse durations must be positive")

    def __len__(self):
        return len(self.durations)

    def __iter__(self) -> Iterator[tuple[Mark, float]]:
        for i, d in enumerate(self.durations):
            yield (Mark.MARK if i % 2 == 0 else Mark.SPACE), d

    def scaled(self, factor: float) -> "PulseTrain":
        return PulseTrain(tuple(d * factor for d in self.durations))

    def to_text(self) -> str:
        """Signed integers: positive = mark, negative = space."""
        return " ".join(str(round(d)) if i % 2 == 0 else str(-round(d))
                        for i, d in enumerate(self.durations))

    @classmethod
    def from_text(cls, text: str) -> "PulseTrain":
        values = [int(tok) for tok in text.split()]
        for i, v in enumerate(values):
            if v == 0 or (v > 0) != (i % 2 == 0):
                raise ValueError(f"entry {i} ({v}): marks must be positive, spaces negative, alternating from a mark")
        return cls(tuple(float(abs(v)) for v in values))


class NecDecodeError(ValueError):
    pass


class BadHeader(NecDecodeError):
    pass


class BadBit(NecDecodeError):
    def __init__(self, index: int, message: str = ""):
        super().__init__(message or f"bad bit {index}")
        self.index = index


class Truncated(NecDecodeError):
    pass


def encode_nec(code: int, timing: NecTiming = NEC) -> PulseTrain:
    if not 0 <= code < 1 << CODE_BITS:
        raise ValueError(f"code {code:#x} does not fit in {CODE_BITS} bits")
    out = [timing.header_mark, timing.header_space]
    for bit in range(CODE_BITS - 1, -1, -1):
        out.append(timing.bit_mark)
        out.append(timing.one_space if (code >> bit) & 1 else timing.zero_space)
    out.append(timing.stop_mark)
    return PulseTrain(tuple(out))


def encode_repeat(timing: NecTiming = NEC) -> PulseTrain:
    return PulseTrain((timing.header_mark, timing.repeat_space, timing.stop_mark))


def decode_nec(train: PulseTrain | Sequence[float], timing: NecTiming = NEC) -> int | NecFrame:
    """Decode one frame; returns the 32-bit code or :data:`REPEAT`.

    Raises :class:`BadHeader`, :class:`BadBit` or :class:`Truncated`.
    Entries after the stop mark are ignored.
    """
    d = train.durations if isinstance(train, PulseTrain) else tuple(train)
    if len(d) < 2:
        raise Truncated(f"{len(d)} entries, need at least 2 for a header")
    if not timing.matches(d[0], timing.header_mark):
        raise BadHeader(f"header mark {d[0]:.0f} us")
    if timing.matches(d[1], timing.repeat_space):
        if len(d) < 3:
            raise Truncated("repeat frame without stop mark")
        if not timing.matches(d[2], timing.stop_mark):
            raise BadBit(0, f"repeat stop mark {d[2]:.0f} us")
        return REPEAT
    if not timing.matches(d[1], timing.header_space):
        raise BadHeader(f"header space {d[1]:.0f} us")
    if len(d) < FRAME_LENGTH:
        raise Truncated(f"{len(d)} entries, need {FRAME_LENGTH}")

    tol = timing.tolerance_fraction
    mark_lo, mark_hi = timing.bit_mark * (1 - tol), timing.bit_mark * (1 + tol)
    zero_lo, zero_hi = timing.zero_space * (1 - tol), timing.zero_space * (1 + tol)
    one_lo, one_hi = timing.one_space * (1 - tol), timing.one_space * (1 + tol)
    code = 0
    for bit in range(CODE_BITS):
        mark, space = d[2 + 2 * bit], d[3 + 2 * bit]
        if not mark_lo <= mark <= mark_hi:
            raise BadBit(bit, f"bit {bit}: mark {mark:.0f} us")
        if zero_lo <= space <= zero_hi:
            code <<= 1
        elif one_lo <= space <= one_hi:
            code = (code << 1) | 1
        else:
            raise BadBit(bit, f"bit {bit}: space {space:.0f} us")
    if not timing.matches(d[FRAME_LENGTH - 1], timing.stop_mark):
        raise BadBit(CODE_BITS, f"stop mark {d[FRAME_LENGTH - 1]:.0f} us")

    addr, naddr, cmd, ncmd = (code >> 24) & 0xFF, (code >> 16) & 0xFF, (code >> 8) & 0xFF, code & 0xFF
    if addr ^ naddr != 0xFF or cmd ^ ncmd != 0xFF:
        log.warning("code %s fails the NEC complement check", format_code(code))
    return code
