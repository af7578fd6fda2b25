import random
from fractions import Fraction as Q

import pytest

from dunklops.poly import MultiPoly


def rand_poly(rng: random.Random, d: int, deg: int, terms: int = 6) -> MultiPoly:
    """Sparse random polynomial with small integer coefficients."""
    out = {}
    for _ in range(terms):
        e = [0] * d
        for _ in range(rng.randint(0, deg)):
            e[rng.randrange(d)] += 1
        key = tuple(e)
        out[key] = out.get(key, 0) + rng.randint(-9, 9)
    return MultiPoly(d, {e: Q(c) for e, c in out.items() if c})


@pytest.fixture
def rng():
    return random.Random(20240809)
