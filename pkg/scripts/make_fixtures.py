#!/usr/bin/env python3
"""Regenerate the JSON fixtures shipped in fixtures/.

Everything is seeded, so a rerun reproduces the files byte for byte.
"""

import pathlib
import random

from vspace.fixtures import f1_space, f2_space, interval_space
from vspace.hypercube import random_partition, save_partition
from vspace.instances import generate, save_explicit, save_seb
from vspace.seeding import spawn

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXDIR = ROOT / "fixtures"
SEED = 20260817


def main() -> None:
    FIXDIR.mkdir(exist_ok=True)
    save_explicit(f1_space(), FIXDIR / "f1.json")
    save_explicit(f2_space(), FIXDIR / "f2.json")
    save_explicit(interval_space(), FIXDIR / "interval12.json")
    save_seb(generate("uniform-square", {"n": 8, "dim": 2}, SEED), FIXDIR / "seb8.json")
    save_partition(random_partition(4, random.Random(spawn(SEED, 1))),
                   FIXDIR / "hpart4.json")
    for path in sorted(FIXDIR.iterdir()):
        print(f"wrote {path.relative_to(ROOT)} ({path.stat().st_size} bytes)")


if __name__ == "__main__":
    main()
