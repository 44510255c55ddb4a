"""Peeling decoder for the erasure channel, and an exact elimination oracle."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels, gf2
from .channel import ErasurePattern
from .errors import BudgetExceeded, InvalidId, InvalidParameters
from .tanner import TannerGraph

DEFAULT_ORACLE_BUDGET = 5000


@dataclass(frozen=True, eq=False)
class DecodeResult:
    residual: np.ndarray  # sorted variable ids still erased
    resolved_count: int
    success: bool
    peel_rounds: int

    def residual_set(self) -> frozenset[int]:
        return frozenset(self.residual.tolist())


def peel(graph: TannerGraph, pattern: ErasurePattern, order: str = "fifo", kernel=None) -> DecodeResult:
    """Resolve every check with a single erased neighbour until none is left.

    The residual is the largest stopping set inside the erased set and does
    not depend on ``order`` ("fifo" queue or "lifo" stack); ``peel_rounds`` is
    the number of parallel peeling rounds only under "fifo".
    """
    if order not in ("fifo", "lifo"):
        raise InvalidParameters(f"unknown peeling order {order!r}")
    if pattern.erased.shape != (graph.num_variables,):
        raise InvalidParameters("erasure pattern does not match graph")
    kernel = kernel or _kernels.peel_kernel
    work = pattern.erased.astype(np.uint8)
    resolved, rounds = kernel(graph.chk_adj, graph.var_ptr, graph.var_adj, work, order == "lifo")
    residual = np.flatnonzero(work)
    return DecodeResult(residual, int(resolved), residual.size == 0, int(rounds))


def _as_ids(graph: TannerGraph, ids) -> np.ndarray:
    arr = np.fromiter((int(i) for i in ids), dtype=np.int64) if not isinstance(ids, np.ndarray) else ids.astype(np.int64)
    if arr.size and (arr.min() < 0 or arr.max() >= graph.num_variables):
        raise InvalidId("variable id out of range")
    return arr


def check_member_counts(graph: TannerGraph, ids) -> np.ndarray:
    """Number of members of ``ids`` on every check instance."""
    mask = np.zeros(graph.num_variables, dtype=np.uint8)
    mask[_as_ids(graph, ids)] = 1
    return mask[graph.chk_adj].sum(axis=1, dtype=np.int32)


def is_stopping_set(graph: TannerGraph, ids) -> bool:
    """True iff no check instance sees exactly one member. The empty set is one."""
    arr = _as_ids(graph, ids)
    if arr.size and not graph.payload_mask()[arr].all():
        raise InvalidId("stopping sets contain payload variables only")
    return not bool((check_member_counts(graph, arr) == 1).any())


def map_oracle(graph: TannerGraph, pattern: ErasurePattern, budget: int = DEFAULT_ORACLE_BUDGET) -> str:
    """'unique' iff the erased columns of H are independent over GF(2).

    That is exactly when the transmitted word is the only codeword matching
    the unerased positions, i.e. optimal erasure decoding succeeds.
    """
    erased = pattern.erased_ids()
    if erased.size > budget:
        raise BudgetExceeded(f"{erased.size} erased variables exceed the oracle budget of {budget}")
    if erased.size == 0:
        return "unique"
    ptr, adj = graph.var_ptr, graph.var_adj
    rows = np.unique(np.concatenate([adj[ptr[v] : ptr[v + 1]] for v in erased]))
    row_index = {int(c): r for r, c in enumerate(rows.tolist())}
    basis = gf2.XorBasis()
    for v in erased.tolist():
        col = gf2.pack(row_index[int(c)] for c in adj[ptr[v] : ptr[v + 1]].tolist())
        if not basis.insert(col):
            return "ambiguous"
    return "unique"


def peel_values(graph: TannerGraph, pattern: ErasurePattern, received) -> tuple[np.ndarray, DecodeResult]:
    """Value-tracking peel for round-trip tests; ``received`` entries at erased ids are ignored."""
    values = np.array(received, dtype=np.uint8).copy()
    er = pattern.erased.copy()
    values[er] = 0
    adj = graph.chk_adj
    ptr, vadj = graph.var_ptr, graph.var_adj
    deg = er[adj].sum(axis=1).astype(np.int64)
    work = list(np.flatnonzero(deg == 1)[::-1])
    resolved = 0
    while work:
        cid = work.pop()
        if deg[cid] != 1:
            continue
        nbrs = adj[cid]
        v = int(nbrs[er[nbrs]][0])
        er[v] = False
        values[v] = int(values[nbrs].sum()) & 1  # values[v] is still 0 here
        resolved += 1
        for c2 in vadj[ptr[v] : ptr[v + 1]].tolist():
            deg[c2] -= 1
            if deg[c2] == 1:
                work.append(c2)
    residual = np.flatnonzero(er)
    return values, DecodeResult(residual, resolved, residual.size == 0, 0)
