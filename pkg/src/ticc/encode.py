"""Staircase encodability and sequential parity computation.

Streams ``1..n-k`` carry parity and streams ``n-k+1..n`` carry information.
An assignment of check types to parity streams is causal when the check that
solves parity stream ``i`` (at its tap offset ``o_i``) touches every other
parity stream ``j`` either strictly earlier, or at the same offset with
``j < i``. Parity bits can then be filled in ascending position order and,
within one position, ascending stream order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .code_ensemble import CodeSpec
from .errors import InconsistentBoundary, InvalidParameters
from .tanner import TannerGraph, shift_range


@dataclass(frozen=True)
class EncodeOrder:
    check_to_stream: tuple[int, ...]  # check type t (0-based index) -> parity stream (1-based)

    @property
    def stream_to_check(self) -> tuple[int, ...]:
        """Parity stream i (index i-1) -> check type (1-based)."""
        inv = [0] * len(self.check_to_stream)
        for t, i in enumerate(self.check_to_stream):
            inv[i - 1] = t + 1
        return tuple(inv)

    def __str__(self):
        return " ".join(f"c{t + 1}->s{i}" for t, i in enumerate(self.check_to_stream))


def is_causal(spec: CodeSpec, check_to_stream) -> bool:
    c = spec.c
    if sorted(check_to_stream) != list(range(1, c + 1)):
        return False
    for t, i in enumerate(check_to_stream):
        row = spec.delays[t]
        own = row[i - 1]
        for j in range(1, c + 1):
            if j == i:
                continue
            o = row[j - 1]
            if o > own or (o == own and j > i):
                return False
    return True


def find_staircase(spec: CodeSpec) -> EncodeOrder | None:
    """Lexicographically first causal assignment, or None."""
    for perm in itertools.permutations(range(1, spec.c + 1)):
        if is_causal(spec, perm):
            return EncodeOrder(tuple(perm))
    return None


def encode(graph: TannerGraph, order: EncodeOrder, info_bits, boundary: str = "strict") -> np.ndarray:
    """Fill the parity streams for the given information bits.

    ``info_bits`` has shape ``(k, L)``: row ``r`` is stream ``n-k+1+r`` over
    its payload positions. Returns a uint8 array indexed by variable id.

    With ``boundary="strict"`` every seeded position is 0 and a check left
    violated by that forcing raises :class:`InconsistentBoundary`. With
    ``boundary="open"`` only the information streams are seeded with zeros;
    parity bits are computed wherever a solving check exists, so every check
    instance holds for arbitrary information bits.
    """
    # x is indexed [stream, position] here; variable ids are position-major
    spec = graph.spec
    if not is_causal(spec, order.check_to_stream):
        raise InvalidParameters(f"order {order} is not causal for this code")
    if boundary not in ("strict", "open"):
        raise InvalidParameters(f"unknown boundary mode {boundary!r}")
    n, c, k = spec.n, spec.c, spec.k
    L, W, P = graph.stream_len, graph.w, graph.positions
    info = np.asarray(info_bits, dtype=np.uint8)
    if info.shape != (k, L):
        raise InvalidParameters(f"info_bits must have shape ({k}, {L}), got {info.shape}")
    if (info > 1).any():
        raise InvalidParameters("info_bits must be 0/1")

    x = np.zeros((n, P), dtype=np.uint8)
    x[c:, W : W + L] = info
    solver = order.stream_to_check
    plan = []
    for i in range(c):
        t = solver[i] - 1
        row = spec.delays[t]
        lo, hi = shift_range(spec, t, P)
        others = [(j, row[j] - row[i]) for j in range(n) if j != i]
        plan.append((i, row[i], lo, hi, others))

    first, last = (W, W + L) if boundary == "strict" else (0, P)
    for p in range(first, last):
        for i, own, lo, hi, others in plan:
            s = p - own
            if lo <= s <= hi:
                acc = 0
                for j, rel in others:
                    acc ^= x[j, p + rel]
                x[i, p] = acc

    bits = np.ascontiguousarray(x.T).ravel()
    if boundary == "strict":
        bad = np.flatnonzero(np.bitwise_xor.reduce(bits[graph.chk_adj], axis=1))
        if bad.size:
            t, s = graph.check_label(int(bad[0]))
            raise InconsistentBoundary(
                f"{bad.size} check instance(s) violated by zero seeding, first is type {t} at shift {s}"
            )
    return bits


def syndrome(graph: TannerGraph, bits) -> np.ndarray:
    """Parity of every check instance (0 = satisfied)."""
    bits = np.asarray(bits, dtype=np.uint8)
    return np.bitwise_xor.reduce(bits[graph.chk_adj], axis=1)
