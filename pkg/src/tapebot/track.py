"""Tape course as a scaled reflectance grid.

Row 0 of the grid is the minimum-y edge; cell ``(row, col)`` covers
``[col, col + 1) / cells_per_meter`` in x and ``[row, row + 1) / cells_per_meter``
in y.  Anything outside the grid is bare floor and reads as ``light_value``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

DARK = 0.1
LIGHT = 0.9
HEADER = "TRACK v1"


class TrackFormatError(ValueError):
    """Raised when TRACK v1 text cannot be parsed."""

    def __init__(self, line: int, message: str):
        super().__init__(f"{message} at line {line}")
        self.line = line


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x}, {self.y})")


@dataclass(frozen=True, eq=False)
class Track:
    reflectance: np.ndarray
    cells_per_meter: float
    dark_value: float = DARK
    light_value: float = LIGHT

    def __post_init__(self):
        grid = np.array(self.reflectance, dtype=float)
        if grid.ndim != 2 or grid.shape[0] < 1 or grid.shape[1] < 1:
            raise ValueError("reflectance must be a non-empty 2-D grid")
        if not self.cells_per_meter > 0:
            raise ValueError("cells_per_meter must be positive")
        if np.any(grid < 0.0) or np.any(grid > 1.0):
            raise ValueError("reflectance values must lie in [0, 1]")
        grid.flags.writeable = False
        object.__setattr__(self, "reflectance", grid)

    @property
    def width_cells(self) -> int:
        return self.reflectance.shape[1]

    @property
    def height_cells(self) -> int:
        return self.reflectance.shape[0]

    @property
    def width_m(self) -> float:
        return self.width_cells / self.cells_per_meter

    @property
    def height_m(self) -> float:
        return self.height_cells / self.cells_per_meter

    @classmethod
    def from_mask(cls, dark: np.ndarray, cells_per_meter: float,
                  dark_value: float = DARK, light_value: float = LIGHT) -> "Track":
        """Build a two-level track from a boolean grid (``True`` = tape)."""
        dark = np.asarray(dark, dtype=bool)
        grid = np.where(dark, dark_value, light_value)
        return cls(grid, cells_per_meter, dark_value, light_value)

    def cell_index(self, p: Point2) -> tuple[int, int]:
        return (math.floor(p.y * self.cells_per_meter),
                math.floor(p.x * self.cells_per_meter))


def sample_reflectance(track: Track, p: Point2) -> float:
    row, col = track.cell_index(p)
    if 0 <= row < track.height_cells and 0 <= col < track.width_cells:
        return float(track.reflectance[row, col])
    return track.light_value


def load_track(text: str | Iterable[str]) -> Track:
    """Parse TRACK v1 text (a string or an iterable of lines)."""
    if isinstance(text, str):
        lines = text.split("\n")
    else:
        lines = [ln.rstrip("\n") for ln in text]
    # a single terminating newline is allowed
    if lines and lines[-1] == "":
        lines = lines[:-1]

    def line(i: int) -> str:
        if i >= len(lines):
            raise TrackFormatError(i + 1, "unexpected end of input")
        return lines[i]

    if line(0) != HEADER:
        raise TrackFormatError(1, f"expected {HEADER!r} header")

    parts = line(1).split(" ")
    if len(parts) != 2 or parts[0] != "cells_per_meter" or not parts[1].isdigit() or int(parts[1]) <= 0:
        raise TrackFormatError(2, "malformed cells_per_meter header")
    cpm = int(parts[1])

    parts = line(2).split(" ")
    if (len(parts) != 3 or parts[0] != "size" or not parts[1].isdigit()
            or not parts[2].isdigit() or int(parts[1]) < 1 or int(parts[2]) < 1):
        raise TrackFormatError(3, "malformed size header")
    width, height = int(parts[1]), int(parts[2])

    if len(lines) != 3 + height:
        raise TrackFormatError(min(len(lines), 3 + height) + 1,
                               f"expected {height} grid rows, found {len(lines) - 3}")

    dark = np.zeros((height, width), dtype=bool)
    for k in range(height):
        lineno = 4 + k
        row_text = lines[3 + k]
        if len(row_text) != width:
            raise TrackFormatError(lineno, "row length mismatch")
        bad = set(row_text) - {"#", "."}
        if bad:
            raise TrackFormatError(lineno, f"unknown cell character {sorted(bad)[0]!r}")
        # first grid line is the maximum-y row
        dark[height - 1 - k] = np.frombuffer(row_text.encode("ascii"), dtype=np.uint8) == ord("#")
    return Track.from_mask(dark, cpm)


def dump_track(track: Track) -> str:
    """Serialize a two-level track back to TRACK v1 text."""
    grid = track.reflectance
    is_dark = grid == track.dark_value
    if not np.all(is_dark | (grid == track.light_value)):
        raise ValueError("only two-level tracks can be written as TRACK v1")
    cpm = track.cells_per_meter
    if float(cpm) != int(cpm):
        raise ValueError("TRACK v1 requires an integer cells_per_meter")
    chars = np.where(is_dark[::-1], ord("#"), ord(".")).astype(np.uint8)
    rows = [r.tobytes().decode("ascii") for r in chars]
    out = [HEADER, f"cells_per_meter {int(cpm)}", f"size {track.width_cells} {track.height_cells}"]
    return "\n".join(out + rows) + "\n"


def read_track_file(path) -> Track:
    with open(path, encoding="ascii") as fh:
        return load_track(fh.read())


def write_track_file(track: Track, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(dump_track(track))


class TrackCanvas:
    """Paint tape shapes onto an empty floor, then freeze into a :class:`Track`.

    Coordinates are in meters.  A cell is painted when its center falls inside
    the shape, so tape edges land on cell boundaries deterministically.
    """

    def __init__(self, width_m: float, height_m: float, cells_per_meter: int = 1000):
        self.cells_per_meter = cells_per_meter
        self.dark = np.zeros((round(height_m * cells_per_meter),
                              round(width_m * cells_per_meter)), dtype=bool)

    def _window(self, xmin, ymin, xmax, ymax):
        c = self.cells_per_meter
        h, w = self.dark.shape
        c0, c1 = max(0, math.floor(xmin * c)), min(w, math.ceil(xmax * c) + 1)
        r0, r1 = max(0, math.floor(ymin * c)), min(h, math.ceil(ymax * c) + 1)
        xs = (np.arange(c0, c1) + 0.5) / c
        ys = (np.arange(r0, r1) + 0.5) / c
        return (slice(r0, r1), slice(c0, c1)), xs[None, :], ys[:, None]

    def rect(self, xmin: float, ymin: float, xmax: float, ymax: float) -> "TrackCanvas":
        win, xs, ys = self._window(xmin, ymin, xmax, ymax)
        self.dark[win] |= (xs >= xmin) & (xs < xmax) & (ys >= ymin) & (ys < ymax)
        return self

    def line(self, x0: float, y0: float, x1: float, y1: float, width: float) -> "TrackCanvas":
        """Straight tape strip with square ends."""
        half = width / 2
        win, xs, ys = self._window(min(x0, x1) - half, min(y0, y1) - half,
                                   max(x0, x1) + half, max(y0, y1) + half)
        dx, dy = x1 - x0, y1 - y0
        length = math.hypot(dx, dy)
        ux, uy = dx / length, dy / length
        along = (xs - x0) * ux + (ys - y0) * uy
        across = -(xs - x0) * uy + (ys - y0) * ux
        self.dark[win] |= (along >= 0) & (along <= length) & (np.abs(across) < half)
        return self

    def arc(self, cx: float, cy: float, radius: float, start: float, sweep: float,
            width: float) -> "TrackCanvas":
        """Circular tape arc; ``start`` and ``sweep`` in radians (sweep may be negative)."""
        half = width / 2
        outer = radius + half
        win, xs, ys = self._window(cx - outer, cy - outer, cx + outer, cy + outer)
        r = np.hypot(xs - cx, ys - cy)
        lo, hi = (start, start + sweep) if sweep >= 0 else (start + sweep, start)
        rel = np.mod(np.arctan2(ys - cy, xs - cx) - lo, 2 * math.pi)
        self.dark[win] |= (np.abs(r - radius) < half) & (rel <= hi - lo + 1e-12)
        return self

    def to_track(self) -> Track:
        return Track.from_mask(self.dark.copy(), self.cells_per_meter)


def straight_track(length: float = 2.0, tape_width: float = 0.018, *, margin: float = 0.05,
                   lane_height: float = 0.1, cells_per_meter: int = 1000) -> Track:
    """Single straight tape along +x from x=0 to ``length``, centered at y = lane_height/2."""
    canvas = TrackCanvas(length + margin, lane_height, cells_per_meter)
    y = lane_height / 2
    canvas.line(0.0, y, length, y, tape_width)
    return canvas.to_track()


def loop_track(straight_x: float = 0.6, straight_y: float = 0.4, radius: float = 0.3,
               tape_width: float = 0.018, *, margin: float = 0.1,
               cells_per_meter: int = 1000) -> Track:
    """Closed rounded-rectangle course: four straights joined by 90 degree arcs.

    The bottom straight starts at ``(margin + radius, margin)`` and runs along +x,
    so a robot placed there heading 0 drives the loop counterclockwise.
    """
    x0, y0 = margin + radius, margin
    x1, y1 = x0 + straight_x, y0 + 2 * radius + straight_y
    width = x1 + radius + margin
    height = y1 + margin
    c = TrackCanvas(width, height, cells_per_meter)
    c.line(x0, y0, x1, y0, tape_width)
    c.line(x1 + radius, y0 + radius, x1 + radius, y1 - radius, tape_width)
    c.line(x1, y1, x0, y1, tape_width)
    c.line(x0 - radius, y1 - radius, x0 - radius, y0 + radius, tape_width)
    c.arc(x1, y0 + radius, radius, -math.pi / 2, math.pi / 2, tape_width)
    c.arc(x1, y1 - radius, radius, 0.0, math.pi / 2, tape_width)
    c.arc(x0, y1 - radius, radius, math.pi / 2, math.pi / 2, tape_width)
    c.arc(x0, y0 + radius, radius, math.pi, math.pi / 2, tape_width)
    return c.to_track()


def delivery_track(approach: float = 0.5, pad_length: float = 0.2, pad_width: float = 0.04,
                   exit_length: float = 0.6, tape_width: float = 0.018, *,
                   lane_height: float = 0.1, cells_per_meter: int = 1000) -> Track:
    """Straight tape with a solid black delivery pad, then the tape continues.

    The pad spans ``[approach, approach + pad_length]`` in x and is ``pad_width``
    wide across the tape, wide enough to cover all three line sensors.
    """
    total = approach + pad_length + exit_length
    canvas = TrackCanvas(total + 0.05, lane_height, cells_per_meter)
    y = lane_height / 2
    canvas.line(0.0, y, total, y, tape_width)
    canvas.rect(approach, y - pad_width / 2, approach + pad_length, y + pad_width / 2)
    return canvas.to_track()
