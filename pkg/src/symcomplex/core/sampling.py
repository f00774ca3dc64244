"""Seeded random rational points and symbols."""
from __future__ import annotations

import os
import random

from gmpy2 import mpq

from .coeff import QQi

NUM_BOUND = 1000
DEN_BOUND = 100
MAX_RETRIES = 1000


def default_seed() -> int:
    try:
        return int(os.environ.get("SYMCOMPLEX_SEED", "0"))
    except ValueError:
        return 0


def rng(seed=None) -> random.Random:
    return random.Random(default_seed() if seed is None else seed)


def random_rational(gen: random.Random, num_bound=NUM_BOUND, den_bound=DEN_BOUND):
    return mpq(gen.randint(-num_bound, num_bound), gen.randint(1, den_bound))


def random_point(gen: random.Random, d: int, complex_=False):
    while True:
        if complex_:
            pt = [QQi(random_rational(gen), random_rational(gen)) for _ in range(d)]
        else:
            pt = [random_rational(gen) for _ in range(d)]
        if any(pt):
            return [x.re if isinstance(x, QQi) and x.im == 0 else x for x in pt]


def sample_points(d: int, count: int, seed=None, avoid=None, complex_=False):
    """``count`` nonzero rational points; ``avoid(pt)`` true means resample.

    Raises ``RuntimeError`` if the rejection loop runs out of retries.
    """
    gen = rng(seed)
    out = []
    for _ in range(count):
        for _ in range(MAX_RETRIES):
            pt = random_point(gen, d, complex_)
            if avoid is None or not avoid(pt):
                out.append(pt)
                break
        else:
            raise RuntimeError("could not sample a point outside the excluded set")
    return out
