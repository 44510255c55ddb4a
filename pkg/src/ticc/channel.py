"""Binary erasure channel over the payload region of a graph."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameters
from .seeding import make_rng
from .tanner import TannerGraph


@dataclass(frozen=True, eq=False)
class ErasurePattern:
    """Erased flags for every variable id. Seeded positions are never erased.

    Only flags are kept: the all-zero codeword is assumed, so the received
    values carry no information beyond which positions were erased.
    """

    erased: np.ndarray  # bool, shape (num_variables,)
    epsilon: float
    seed: int | None = None

    @property
    def count(self) -> int:
        return int(self.erased.sum())

    def erased_ids(self) -> np.ndarray:
        return np.flatnonzero(self.erased)


def erase(graph: TannerGraph, epsilon: float, seed) -> ErasurePattern:
    if not 0.0 <= epsilon <= 1.0:
        raise InvalidParameters(f"epsilon must lie in [0, 1], got {epsilon}")
    rng = make_rng(seed)
    n, L, W, P = graph.spec.n, graph.stream_len, graph.w, graph.positions
    flags = np.zeros((P, n), dtype=bool)
    flags[W : W + L] = rng.random((L, n)) < epsilon
    erased = flags.ravel()
    erased.setflags(write=False)
    recorded = None if isinstance(seed, np.random.Generator) else int(seed)
    return ErasurePattern(erased, float(epsilon), recorded)


def from_ids(graph: TannerGraph, ids, epsilon: float = float("nan")) -> ErasurePattern:
    """Pattern erasing exactly the given variable ids (must be payload)."""
    erased = np.zeros(graph.num_variables, dtype=bool)
    ids = np.asarray(list(ids) if not isinstance(ids, np.ndarray) else ids, dtype=np.int64)
    if ids.size:
        if ids.min() < 0 or ids.max() >= graph.num_variables:
            raise InvalidParameters("variable id out of range")
        if not graph.payload_mask()[ids].all():
            raise InvalidParameters("seeded variables cannot be erased")
        erased[ids] = True
    erased.setflags(write=False)
    return ErasurePattern(erased, epsilon, None)
