"""GF(2) elimination on Python-int bitsets."""

from __future__ import annotations

from typing import Iterable


def pack(indices: Iterable[int]) -> int:
    v = 0
    for i in indices:
        v ^= 1 << int(i)
    return v


class XorBasis:
    """Incremental row-echelon basis keyed by leading bit."""

    def __init__(self):
        self.rows: dict[int, int] = {}

    def reduce(self, v: int) -> int:
        while v:
            top = v.bit_length() - 1
            row = self.rows.get(top)
            if row is None:
                return v
            v ^= row
        return 0

    def insert(self, v: int) -> bool:
        """Add v; False when v is already in the span."""
        v = self.reduce(v)
        if not v:
            return False
        self.rows[v.bit_length() - 1] = v
        return True

    def __len__(self):
        return len(self.rows)


def rank(vectors: Iterable[int]) -> int:
    basis = XorBasis()
    for v in vectors:
        basis.insert(v)
    return len(basis)


def independent(vectors: Iterable[int]) -> bool:
    basis = XorBasis()
    return all(basis.insert(v) for v in vectors)
