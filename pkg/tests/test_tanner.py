import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ticc.code_ensemble import CodeSpec, memory, sample
from ticc.errors import InvalidId, InvalidParameters, ResourceLimit
from ticc.tanner import build, co_checks, dump, neighbors

from conftest import code_specs


def brute_shifts(row, P):
    return [s for s in range(-3 * P, 3 * P) if all(0 <= s + d < P for d in row)]


def test_two_stream_example():
    spec = CodeSpec(2, 1, 3, ((0, 2),))
    g = build(spec, 10)
    assert g.positions == 16
    assert brute_shifts((0, 2), 16) == list(range(0, 14))
    assert g.num_checks == 14
    assert g.chk_shift.tolist() == list(range(14))
    for cid in range(g.num_checks):
        s = int(g.chk_shift[cid])
        assert [g.var_pos(v) for v in neighbors(g, cid)] == [(1, s), (2, s + 2)]


def test_no_spread_keeps_every_shift():
    g = build(CodeSpec(3, 1, 4, ((2, 2, 2), (0, 3, 1))), 7)
    types = g.chk_type.tolist()
    assert types.count(0) == 7 + 8
    assert types.count(1) == 7 + 8 - 3


@given(code_specs(), st.integers(1, 12))
def test_instance_counts_match_brute_force(spec, L):
    g = build(spec, L)
    P = L + 2 * spec.w
    for i, row in enumerate(spec.delays):
        shifts = g.chk_shift[g.chk_type == i].tolist()
        assert shifts == brute_shifts(row, P)
        assert len(shifts) == P - (max(row) - min(row))


@given(code_specs(), st.integers(1, 12))
def test_handshake_and_symmetry(spec, L):
    g = build(spec, L)
    assert g.chk_adj.shape == (g.num_checks, spec.n)
    assert int(g.var_ptr[-1]) == g.num_edges == spec.n * g.num_checks
    assert (g.chk_adj >= 0).all() and (g.chk_adj < g.num_variables).all()
    P = g.positions
    # neighbours are in ascending stream order
    assert ((g.chk_adj % spec.n) == np.arange(spec.n)).all()
    for cid in range(g.num_checks):
        for v in neighbors(g, cid):
            assert cid in co_checks(g, v)
    for v in range(g.num_variables):
        for cid in co_checks(g, v):
            assert v in neighbors(g, cid)


def test_interior_and_boundary_degrees():
    spec = CodeSpec(2, 1, 3, ((0, 2),))
    g = build(spec, 10)
    W = spec.w
    for j in (1, 2):
        for p in range(2 * W, g.positions - 2 * W):
            assert len(co_checks(g, g.var_id(j, p))) == spec.c
    spec = sample(6, 3, 20, 3)
    g = build(spec, 200)
    for j in range(1, 7):
        assert len(co_checks(g, g.var_id(j, 0))) <= spec.c
        checks = co_checks(g, g.var_id(j, 100))
        assert sorted(int(g.chk_type[c]) for c in checks) == [0, 1, 2]


def _neighbourhood(g, vid):
    """Radius-2 neighbourhood in coordinates relative to vid."""
    n = g.spec.n
    _, p0 = g.var_pos(vid)
    checks = co_checks(g, vid)
    shape = set()
    for c in checks:
        t, s = g.check_label(c)
        shape.add(("c", t, s - p0))
        for v in neighbors(g, c):
            shape.add(("v", v % n, v // n - p0))
    return shape


def test_shift_invariance():
    spec = sample(5, 2, 15, 21)
    g = build(spec, 300)
    lo = spec.w + memory(spec) + 2 * spec.w
    ref = {j: _neighbourhood(g, g.var_id(j, lo)) for j in range(1, 6)}
    for p in (lo + 1, lo + 37, 300 - lo):
        for j in range(1, 6):
            assert _neighbourhood(g, g.var_id(j, p)) == ref[j]


def test_check_ids_round_trip():
    spec = sample(4, 2, 9, 5)
    g = build(spec, 30)
    for cid in range(g.num_checks):
        t, s = g.check_label(cid)
        assert g.check_id(t, s) == cid
    with pytest.raises(InvalidId):
        g.check_id(1, 10_000)


def test_invalid_ids():
    g = build(CodeSpec(2, 1, 3, ((0, 2),)), 10)
    with pytest.raises(InvalidId):
        neighbors(g, g.num_checks)
    with pytest.raises(InvalidId):
        co_checks(g, -1)
    with pytest.raises(InvalidId):
        g.var_id(3, 0)


def test_seeded_flags():
    g = build(CodeSpec(2, 1, 3, ((0, 2),)), 10)
    assert [g.is_seeded(g.var_id(1, p)) for p in range(16)] == [True] * 3 + [False] * 10 + [True] * 3
    assert g.payload_mask().sum() == g.payload_size == 20


def test_build_errors():
    spec = CodeSpec(2, 1, 3, ((0, 2),))
    with pytest.raises(InvalidParameters):
        build(spec, 0)
    with pytest.raises(ResourceLimit):
        build(spec, 1000, variable_budget=100)


def test_dump_format():
    g = build(CodeSpec(2, 1, 3, ((0, 2),)), 1)
    lines = dump(g).splitlines()
    assert lines[0] == "c 1 0: (1,0) (2,2)"
    assert len(lines) == g.num_checks


def test_deterministic():
    spec = sample(4, 2, 7, 9)
    a, b = build(spec, 40), build(spec, 40)
    for name in ("chk_adj", "var_ptr", "var_adj", "chk_shift"):
        assert np.array_equal(getattr(a, name), getattr(b, name))


@settings(max_examples=20)
@given(code_specs(), st.integers(1, 8))
def test_payload_checks_never_dropped(spec, L):
    # every payload variable keeps one check of each type
    g = build(spec, L)
    for v in g.payload_ids().tolist():
        assert sorted(int(g.chk_type[c]) for c in co_checks(g, v)) == list(range(spec.c))
