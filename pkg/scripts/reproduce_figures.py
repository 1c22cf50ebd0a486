#!/usr/bin/env python3
"""Regenerate the CSV data behind all four figure protocols into out/."""
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from uavcovert.cli import main  # noqa: E402

ROOT = pathlib.Path(__file__).resolve().parents[1]
OUT = ROOT / "out"
OUT.mkdir(exist_ok=True)

RUNS = [
    ["detect-sweep", "--scenario", str(ROOT / "scenarios/fig2.json"),
     "--out", str(OUT / "fig2_detection.csv"),
     "--seed", "7", "--trials", "100000"],
    ["rate-sweep", "--scenario", str(ROOT / "scenarios/fig3.json"),
     "--out", str(OUT / "fig3_secrecy_rate.csv"),
     "--start", "0", "--stop", "100", "--steps", "26",
     "--overlay-values", "7,8,9"],
    ["rate-sweep", "--scenario", str(ROOT / "scenarios/fig4.json"),
     "--out", str(OUT / "fig4_covert_rate.csv"),
     "--start", "0", "--stop", "100", "--steps", "26",
     "--overlay-values", "2,3,4"],
    ["covertness-sweep", "--scenario", str(ROOT / "scenarios/fig5.json"),
     "--out", str(OUT / "fig5_optimized_rate.csv"),
     "--start", "0.01", "--stop", "0.02", "--steps", "20",
     "--overlay-values", "5,10,15", "--seed", "7"],
]

if __name__ == "__main__":
    for argv in RUNS:
        print("$ uavcovert " + " ".join(argv))
        code = main(argv)
        if code != 0:
            sys.exit(code)
