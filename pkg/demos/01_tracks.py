"""Tracks are reflectance grids: dark tape (0.1) on a light floor (0.9)."""

import numpy as np

from tapebot import Point2, Track, dump_track, load_track, sample_reflectance, straight_track
from tapebot.track import TrackCanvas

# a 2 m straight strip of 18 mm tape at 1 mm per cell
track = straight_track(2.0)
print("cells:", track.width_cells, "x", track.height_cells)
print("meters:", track.width_m, "x", track.height_m)

# point samples: on the tape, beside it, and off the map entirely
for x, y in [(1.0, 0.05), (1.0, 0.07), (-1.0, 0.0)]:
    print(f"reflectance at ({x}, {y}) = {sample_reflectance(track, Point2(x, y))}")

# draw your own course on a canvas; a cell is painted when its center is inside the shape
canvas = TrackCanvas(0.3, 0.2, 100)
canvas.line(0.02, 0.1, 0.2, 0.1, 0.02)
canvas.arc(0.2, 0.05, 0.05, np.pi / 2, -np.pi / 2, 0.02)
small = canvas.to_track()

# the text format round-trips exactly
text = dump_track(small)
print(text)
assert np.array_equal(load_track(text).reflectance, small.reflectance)

# or build one straight from a boolean mask (row 0 is the bottom edge)
mask = np.zeros((5, 8), bool)
mask[2, :] = True
print(dump_track(Track.from_mask(mask, 100)))
