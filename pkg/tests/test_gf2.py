import itertools

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from ticc import gf2


def brute_rank(vectors, width):
    """Size of the span, by enumerating all subset sums."""
    span = {0}
    for v in vectors:
        span |= {s ^ v for s in span}
    return int(np.log2(len(span)))


@given(st.lists(st.integers(0, 2**10 - 1), max_size=8))
def test_rank_matches_span_size(vectors):
    assert gf2.rank(vectors) == brute_rank(vectors, 10)
    assert gf2.independent(vectors) == (brute_rank(vectors, 10) == len(vectors))


def test_pack():
    assert gf2.pack([0, 3, 3, 5]) == 0b100001
    assert gf2.pack([]) == 0


def test_reduce_in_span():
    b = gf2.XorBasis()
    for v in (0b1100, 0b0110):
        assert b.insert(v)
    assert not b.insert(0b1010)
    assert b.reduce(0b1010) == 0
    assert b.reduce(0b0001) == 0b0001


def test_identity_is_independent():
    assert gf2.independent([1 << i for i in range(100)])
    assert not gf2.independent([1 << i for i in range(5)] + [0b11111])
