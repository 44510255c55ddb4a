import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ticc.code_ensemble import (
    CodeSpec,
    DiffVector,
    constraint_length,
    diff_vectors,
    has_distinct_vectors,
    memory,
    parse,
    sample,
    serialize,
)
from ticc.errors import InvalidParameters, SpecParseError
from ticc.seeding import derive_seed

from conftest import code_specs


def test_sample_single_draw():
    for seed in range(5):
        assert sample(2, 1, 1, seed).delays == ((0, 0),)


def test_sample_deterministic():
    a = sample(4, 2, 6, 1234)
    b = sample(4, 2, 6, 1234)
    assert a == b
    assert all(0 <= d <= 5 for row in a.delays for d in row)
    assert sample(4, 2, 6, 1235) != a


@pytest.mark.parametrize("n,k,w", [(2, 2, 5), (3, 0, 5), (3, 4, 5), (3, 1, 0)])
def test_sample_rejects_bad_parameters(n, k, w):
    with pytest.raises(InvalidParameters):
        sample(n, k, w, 0)


def test_sample_uniform_law():
    w, N = 1000, 10_000
    draws = np.array([sample(6, 3, w, derive_seed(7, "u", i)).delays for i in range(N)])
    sd = math.sqrt((w * w - 1) / 12)
    means = draws.reshape(N, -1).mean(axis=0)
    # per-entry mean within 3 sigma of (w - 1) / 2
    assert np.all(np.abs(means - 499.5) < 3 * sd / math.sqrt(N))
    # pooled chi-square over 10 equal bins, df = 9; 27.88 is the 0.999 quantile
    counts = np.bincount(draws.ravel() // 100, minlength=10)
    expected = draws.size / 10
    chi2 = ((counts - expected) ** 2 / expected).sum()
    assert chi2 < 27.88


def test_memory_and_constraint_length():
    zero = CodeSpec(3, 1, 4, ((0, 0, 0), (0, 0, 0)))
    assert memory(zero) == 0 and constraint_length(zero) == 0
    s = CodeSpec(2, 1, 6, ((0, 5),))
    assert memory(s) == constraint_length(s) == 5
    two = CodeSpec(4, 2, 6, ((0, 5, 1, 1), (3, 2, 0, 0)))
    assert memory(two) == 5
    assert constraint_length(two) == 8


def test_memory_range():
    for seed in range(50):
        assert 0 <= memory(sample(5, 2, 1000, seed)) <= 999


def test_diff_vectors_two_streams():
    s = CodeSpec(2, 1, 6, ((0, 5),))
    assert sorted(diff_vectors(s)) == sorted([(1, DiffVector(1, 5)), (1, DiffVector(-1, -5))])
    assert has_distinct_vectors(s)


def test_diff_vectors_repeat():
    s = CodeSpec(3, 2, 5, ((0, 2, 4),))
    got = [v for _, v in diff_vectors(s)]
    # independent enumeration of ordered stream pairs
    want = [(b - a, s.delays[0][b] - s.delays[0][a]) for a, b in itertools.permutations(range(3), 2)]
    assert sorted(got) == sorted(want)
    assert got.count(DiffVector(1, 2)) == 2
    assert not has_distinct_vectors(s)


def test_distinct_across_checks():
    # same offsets on two different checks collide even though each row alone is fine
    s = CodeSpec(3, 1, 9, ((0, 3, 8), (1, 4, 0)))
    assert not has_distinct_vectors(s)


@given(code_specs())
def test_diff_vector_count(spec):
    assert len(diff_vectors(spec)) == spec.c * spec.n * (spec.n - 1)


def _distinct_rate(w, N=1000):
    return sum(has_distinct_vectors(sample(6, 3, w, derive_seed(11, w, i))) for i in range(N)) / N


def test_distinct_rate_large_w():
    # reference 0.876 +- 0.0007: vectorised sort-and-compare over 2e5 draws
    N = 1000
    rate = _distinct_rate(1000, N)
    assert abs(rate - 0.876) < 3 * math.sqrt(0.876 * 0.124 / N)


def test_distinct_rate_grows_with_w():
    N = 1000
    rates = [_distinct_rate(w, N) for w in (10, 100, 1000)]
    for a, b in zip(rates, rates[1:]):
        sig = math.sqrt(a * (1 - a) / N + b * (1 - b) / N)
        assert b >= a - 2 * sig


@given(code_specs(max_n=7, max_w=50), st.one_of(st.none(), st.integers(0, 2**64 - 1)))
def test_serialize_round_trip(spec, seed):
    spec = CodeSpec(spec.n, spec.k, spec.w, spec.delays, seed=seed, prng=None if seed is None else "pcg64")
    assert parse(serialize(spec)) == spec


def test_round_trip_literal():
    s = CodeSpec(4, 2, 6, ((0, 5, 1, 2), (3, 2, 0, 4)))
    text = serialize(s)
    assert text.splitlines()[0] == "ticc 1"
    assert text.splitlines()[1] == "4 2 6 - -"
    assert parse(text) == s


def test_parse_comments_and_blank_lines():
    text = "# sampled by hand\nticc 1\n\n2 1 6 42 pcg64\n# row 1\n0 5\n"
    s = parse(text)
    assert s.delays == ((0, 5),) and s.seed == 42 and s.prng == "pcg64"


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("ticc 1\n2 1 6\n0 6\n", 3, 3),  # delay == w
        ("ticc 1\n4 2 6\n0 1 2 3\n", 4, 1),  # n-k-1 rows
        ("ticc 1\n2 1 6\n0 1 2\n", 3, 1),  # too many columns
        ("ticc 1\n2 1 6\n0 x\n", 3, 3),
        ("tic 1\n2 1 6\n0 1\n", 1, 1),
        ("ticc 2\n2 1 6\n0 1\n", 1, 6),
        ("ticc 1\n2 2 6\n0 1\n", 2, 1),
        ("", 1, 1),
    ],
)
def test_parse_errors(text, line, column):
    with pytest.raises(SpecParseError) as info:
        parse(text)
    assert info.value.line == line
    assert info.value.column == column


def test_codespec_validation():
    with pytest.raises(InvalidParameters):
        CodeSpec(2, 1, 3, ((0, 3),))
    with pytest.raises(InvalidParameters):
        CodeSpec(3, 1, 3, ((0, 1, 2),))


def test_identical_rows_flagged():
    s = CodeSpec(4, 1, 5, ((0, 1, 2, 3), (4, 4, 4, 4), (0, 1, 2, 3)))
    assert s.identical_rows() == [(1, 3)]


@settings(max_examples=30)
@given(code_specs())
def test_distinctness_is_pure(spec):
    np.random.seed(0)
    a = has_distinct_vectors(spec)
    np.random.random(10)
    assert has_distinct_vectors(spec) == a
