from fractions import Fraction as F

import pytest

from hahnbispec.params import Params, draw_many


@pytest.fixture
def generic():
    return Params(F(1, 2), F(1, 3), 3)


def draws(Ns, count, seed=0):
    return [p for N in Ns for p in draw_many(seed, N, count)]
