import random
from fractions import Fraction

import pytest

from cyclic_ainfty.graded import BilinearForm, DgSpace, GradedMap, GradedSpace

F = Fraction
Z, I = F(0), F(1)


@pytest.fixture
def contractible_pair():
    """a even, b odd, d b = a; odd symmetric form <a,b> = <b,a> = 1."""
    sp = GradedSpace(("a", "b"), (0, 1))
    d = GradedMap(sp, sp, 1, ((Z, I), (Z, Z)))
    V = DgSpace(sp, d)
    B = BilinearForm(sp, 1, 1, ((Z, I), (I, Z)))
    return V, B


@pytest.fixture
def rng():
    return random.Random(20240817)


def rational_matrix(rng, rows, cols, lo=-4, hi=4, den=(1, 2, 3)):
    return tuple(
        tuple(F(rng.randint(lo, hi), rng.choice(den)) for _ in range(cols))
        for _ in range(rows)
    )
