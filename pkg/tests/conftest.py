# vim: expandtab:ts=4:sw=4
import functools
import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from qmknot import laurent  # noqa: E402
from qmknot.braiding import build_matrices  # noqa: E402

SEED = 20240611


@functools.lru_cache(maxsize=None)
def matrices(family, rank):
    """``(spec, fusion, braiding, inverse)`` shared by every test module."""
    return build_matrices(family, rank)


def random_element(rng, terms=4, span=6, gaussian=True):
    out = {}
    for _ in range(rng.randint(1, terms)):
        re_ = rng.randint(-5, 5)
        im = rng.randint(-5, 5) if gaussian else 0
        out[rng.randint(-span, span)] = (re_, im)
    return laurent.RingElement(out)


def random_braid_word(rng, strands, length):
    return [rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(length)]


@pytest.fixture
def rng():
    return random.Random(SEED)
