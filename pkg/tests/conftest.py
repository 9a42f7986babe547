import random

import pytest

from vspace.fixtures import (
    empty_violators_space,
    f1_space,
    f2_space,
    interval_space,
    singleton_pattern_space,
)
from vspace.hypercube import partition_to_space, random_partition
from vspace.instances import SebSpace, generate, tabulate
from vspace.seeding import spawn

FIXTURE_SEED = 20260817

# Every entry is a certified explicit table; n spans 2..12 and the set
# deliberately includes one degenerate space (f2) and one tabulated
# point-set instance (seb8).
ROSTER_KEYS = ("f1", "f2", "seb8", "empty6", "singleton5", "hpart4", "interval12")


def build_roster() -> dict:
    hpart = partition_to_space(
        random_partition(4, random.Random(spawn(FIXTURE_SEED, 1))))
    return {
        "f1": f1_space(),
        "f2": f2_space(),
        "seb8": tabulate(SebSpace(generate("uniform-square",
                                           {"n": 8, "dim": 2}, FIXTURE_SEED))),
        "empty6": empty_violators_space(),
        "singleton5": singleton_pattern_space(),
        "hpart4": hpart,
        "interval12": interval_space(),
    }


@pytest.fixture(scope="session")
def roster() -> dict:
    return build_roster()
