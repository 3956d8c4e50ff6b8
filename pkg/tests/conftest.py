import random

import pytest
from hypothesis import strategies as st

from hogdb import _bits
from hogdb.graphs import Graph
from hogdb.store import Store


def random_graph(rng: random.Random, n: int) -> Graph:
    code = rng.getrandbits(_bits.pair_count(n)) if n > 1 else 0
    return Graph(n, _bits.rows_from_code(n, code))


@st.composite
def graphs(draw, max_n=10, min_n=0):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    bits = _bits.pair_count(n)
    code = draw(st.integers(min_value=0, max_value=(1 << bits) - 1))
    return Graph(n, _bits.rows_from_code(n, code))


@st.composite
def permutations_of(draw, n):
    return tuple(draw(st.permutations(range(n))))


@pytest.fixture
def store():
    s = Store()
    s.register_user("alice")
    s.register_user("bob")
    return s


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
