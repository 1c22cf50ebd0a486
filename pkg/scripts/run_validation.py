#!/usr/bin/env python3
"""Run the closed-form vs Monte Carlo validation suite on every preset."""
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from uavcovert.cli import main  # noqa: E402

ROOT = pathlib.Path(__file__).resolve().parents[1]

if __name__ == "__main__":
    worst = 0
    for preset in sorted((ROOT / "scenarios").glob("fig*.json")):
        print(f"== {preset.name} ==")
        worst = max(worst, main(["validate", "--scenario", str(preset), "--seed", "11"]))
    sys.exit(worst)
