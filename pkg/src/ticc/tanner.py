"""Unrolled, terminated Tanner graphs.

Each stream has ``P = L + 2W`` positions: ``W`` known-zero seeded positions on
each side of ``L`` payload positions. Variable ``(j, p)`` (stream ``j`` is
1-based) has the flat id ``p * n + (j - 1)``. Check instance ``(i, s)`` of
type ``i`` at shift ``s`` touches ``(j, s + d[i][j])`` for every stream and is
kept only when all ``n`` taps land inside ``[0, P)``. Check ids are ordered by
shift, then type.

Both orderings are position-major so that a check's neighbours, and a
variable's checks, sit close together in memory.

Adjacency is stored twice as flat int32 arrays: check-major ``chk_adj`` with
shape ``(m, n)`` and variable-major CSR ``(var_ptr, var_adj)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .code_ensemble import CodeSpec
from .errors import InvalidId, InvalidParameters, ResourceLimit

DEFAULT_VARIABLE_BUDGET = 50_000_000
INDEX_DTYPE = np.int32


@dataclass(frozen=True, eq=False)
class TannerGraph:
    spec: CodeSpec
    stream_len: int
    chk_adj: np.ndarray  # (m, n) variable ids, column j = stream j+1
    chk_type: np.ndarray  # (m,) 0-based check type
    chk_shift: np.ndarray  # (m,)
    var_ptr: np.ndarray  # (nvar + 1,)
    var_adj: np.ndarray  # (edges,) check ids, grouped by variable

    @property
    def w(self) -> int:
        return self.spec.w

    @property
    def positions(self) -> int:
        """Positions per stream, L + 2W."""
        return self.stream_len + 2 * self.spec.w

    @property
    def num_variables(self) -> int:
        return self.spec.n * self.positions

    @property
    def num_checks(self) -> int:
        return self.chk_adj.shape[0]

    @property
    def num_edges(self) -> int:
        return self.chk_adj.size

    @property
    def payload_size(self) -> int:
        return self.spec.n * self.stream_len

    def var_id(self, stream: int, position: int) -> int:
        if not (1 <= stream <= self.spec.n and 0 <= position < self.positions):
            raise InvalidId(f"no variable ({stream}, {position})")
        return position * self.spec.n + stream - 1

    def var_pos(self, vid: int) -> tuple[int, int]:
        """(stream, position) of a variable id, stream 1-based."""
        self._check_var(vid)
        pos, stream = divmod(int(vid), self.spec.n)
        return stream + 1, pos

    def is_seeded(self, vid: int) -> bool:
        _, p = self.var_pos(vid)
        return p < self.w or p >= self.stream_len + self.w

    def payload_mask(self) -> np.ndarray:
        """Boolean mask over all variable ids, True on payload positions."""
        mask = np.zeros((self.positions, self.spec.n), dtype=bool)
        mask[self.w : self.w + self.stream_len] = True
        return mask.ravel()

    def payload_ids(self) -> np.ndarray:
        return np.flatnonzero(self.payload_mask())

    def check_id(self, check_type: int, shift: int) -> int:
        """Id of check instance (type, shift); type is 1-based."""
        if not 1 <= check_type <= self.spec.c:
            raise InvalidId(f"no check type {check_type}")
        lo, hi = shift_range(self.spec, check_type - 1, self.positions)
        if not lo <= shift <= hi:
            raise InvalidId(f"check ({check_type}, {shift}) was dropped or is out of range")
        keys = self.chk_shift * self.spec.c + self.chk_type
        return int(np.searchsorted(keys, shift * self.spec.c + check_type - 1))

    def check_label(self, cid: int) -> tuple[int, int]:
        """(check type 1-based, shift) of a check id."""
        self._check_chk(cid)
        return int(self.chk_type[cid]) + 1, int(self.chk_shift[cid])

    def _check_var(self, vid):
        if not 0 <= int(vid) < self.num_variables:
            raise InvalidId(f"variable id {vid} out of range")

    def _check_chk(self, cid):
        if not 0 <= int(cid) < self.num_checks:
            raise InvalidId(f"check id {cid} out of range")


def shift_range(spec: CodeSpec, i: int, positions: int) -> tuple[int, int]:
    """Inclusive shift range of check type i (0-based) with every tap in range."""
    row = spec.delays[i]
    return -min(row), positions - 1 - max(row)


def build(spec: CodeSpec, stream_len: int, variable_budget: int = DEFAULT_VARIABLE_BUDGET) -> TannerGraph:
    if stream_len < 1:
        raise InvalidParameters(f"stream_len must be >= 1, got {stream_len}")
    P = stream_len + 2 * spec.w
    nvar = spec.n * P
    if nvar > variable_budget:
        raise ResourceLimit(f"{nvar} variables exceed the budget of {variable_budget}")
    if spec.n * spec.c * P >= np.iinfo(INDEX_DTYPE).max:
        raise ResourceLimit("graph too large for 32-bit indices")

    n = spec.n
    d = spec.delay_array()
    streams = np.arange(n, dtype=np.int64)
    blocks, types, shifts = [], [], []
    for i in range(spec.c):
        lo, hi = shift_range(spec, i, P)
        s = np.arange(lo, hi + 1, dtype=np.int64)
        blocks.append((s[:, None] + d[i][None, :]) * n + streams[None, :])
        types.append(np.full(s.size, i, dtype=INDEX_DTYPE))
        shifts.append(s)
    chk_type = np.concatenate(types)
    chk_shift = np.concatenate(shifts)
    order = np.lexsort((chk_type, chk_shift))
    chk_adj = np.ascontiguousarray(np.concatenate(blocks)[order], dtype=INDEX_DTYPE)
    chk_type = chk_type[order]
    chk_shift = chk_shift[order]

    flat = chk_adj.ravel()
    by_var = np.argsort(flat, kind="stable")
    var_adj = (by_var // n).astype(INDEX_DTYPE)
    counts = np.bincount(flat, minlength=nvar)
    var_ptr = np.zeros(nvar + 1, dtype=INDEX_DTYPE)
    np.cumsum(counts, out=var_ptr[1:])

    for arr in (chk_adj, chk_type, chk_shift, var_ptr, var_adj):
        arr.setflags(write=False)
    return TannerGraph(spec, stream_len, chk_adj, chk_type, chk_shift, var_ptr, var_adj)


def neighbors(graph: TannerGraph, cid: int) -> list[int]:
    """Variable ids of a check instance, in ascending stream order."""
    graph._check_chk(cid)
    return graph.chk_adj[cid].tolist()


def co_checks(graph: TannerGraph, vid: int) -> list[int]:
    """Check ids adjacent to a variable, ascending."""
    graph._check_var(vid)
    return graph.var_adj[graph.var_ptr[vid] : graph.var_ptr[vid + 1]].tolist()


def dump(graph: TannerGraph) -> str:
    """Debug listing, one check per line: ``c <type> <shift>: (j,p) ...``."""
    n = graph.spec.n
    out = []
    for cid in range(graph.num_checks):
        t, s = graph.check_label(cid)
        taps = " ".join(f"({v % n + 1},{v // n})" for v in graph.chk_adj[cid].tolist())
        out.append(f"c {t} {s}: {taps}")
    return "\n".join(out) + "\n"
