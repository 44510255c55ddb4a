import numpy as np
import pytest
from hypothesis import strategies as st

from ticc import _kernels
from ticc.code_ensemble import CodeSpec

KERNELS = [pytest.param(_kernels.python_peel_kernel, id="python")]
if _kernels.compiled_peel_kernel is not None:
    KERNELS.append(pytest.param(_kernels.compiled_peel_kernel, id="cython"))


@pytest.fixture(params=KERNELS)
def kernel(request):
    return request.param


@st.composite
def code_specs(draw, max_n=5, max_w=6):
    n = draw(st.integers(2, max_n))
    k = draw(st.integers(1, n - 1))
    w = draw(st.integers(1, max_w))
    rows = draw(
        st.lists(st.lists(st.integers(0, w - 1), min_size=n, max_size=n), min_size=n - k, max_size=n - k)
    )
    return CodeSpec(n, k, w, tuple(map(tuple, rows)))


def brute_max_stopping_set(graph, erased_ids):
    """Union of every stopping set inside ``erased_ids``, by subset enumeration."""
    ids = list(erased_ids)
    union = set()
    adj = graph.chk_adj
    for mask in range(1, 1 << len(ids)):
        members = np.array([ids[b] for b in range(len(ids)) if mask >> b & 1])
        flags = np.zeros(graph.num_variables, dtype=np.uint8)
        flags[members] = 1
        if not (flags[adj].sum(axis=1) == 1).any():
            union.update(members.tolist())
    return union
