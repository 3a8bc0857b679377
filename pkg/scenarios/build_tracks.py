"""Regenerate the TRACK v1 files used by the scenario documents in this folder."""

from pathlib import Path

import numpy as np

from tapebot.track import Track, delivery_track, loop_track, straight_track, write_track_file

HERE = Path(__file__).parent


def main():
    write_track_file(straight_track(2.0, lane_height=0.1), HERE / "straight.track")
    write_track_file(delivery_track(), HERE / "delivery.track")
    write_track_file(loop_track(0.4, 0.2, 0.3, margin=0.05, cells_per_meter=500), HERE / "loop.track")
    write_track_file(Track.from_mask(np.zeros((200, 400), bool), 1000), HERE / "white.track")


if __name__ == "__main__":
    main()
