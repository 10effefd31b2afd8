import os
import sys
from math import gcd

import pytest
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))


@st.composite
def coprime_pairs(draw, max_value=50):
    p = draw(st.integers(2, max_value - 1))
    q = draw(st.integers(p + 1, max_value).filter(lambda q: gcd(p, q) == 1))
    return p, q


@st.composite
def generator_sets(draw, max_value=20, max_size=4):
    gens = draw(st.lists(st.integers(2, max_value), min_size=2, max_size=max_size, unique=True))
    g = 0
    for x in gens:
        g = gcd(g, x)
    if g != 1:
        gens.append(draw(st.integers(2, max_value).filter(lambda x: gcd(g, x) == 1)))
    return sorted(set(gens))


@pytest.fixture
def t47():
    from curvebound.semigroup import from_generators

    return from_generators([4, 7])
