"""Simulation workbench for time-invariant LDPC convolutional codes on the erasure channel."""

__version__ = "0.1.0"

from ._kernels import BACKEND  # noqa: E402
from .channel import ErasurePattern, erase  # noqa: E402
from .code_ensemble import (  # noqa: E402
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
from .decode import DecodeResult, is_stopping_set, map_oracle, peel  # noqa: E402
from .encode import EncodeOrder, encode, find_staircase  # noqa: E402
from .stopping import lemma_bound, sample_stopping_sets, search_min_stopping_set  # noqa: E402
from .tanner import TannerGraph, build, co_checks, neighbors  # noqa: E402

__all__ = [
    "BACKEND",
    "CodeSpec",
    "DecodeResult",
    "DiffVector",
    "EncodeOrder",
    "ErasurePattern",
    "TannerGraph",
    "build",
    "co_checks",
    "constraint_length",
    "diff_vectors",
    "encode",
    "erase",
    "find_staircase",
    "has_distinct_vectors",
    "is_stopping_set",
    "lemma_bound",
    "map_oracle",
    "memory",
    "neighbors",
    "parse",
    "peel",
    "sample",
    "sample_stopping_sets",
    "search_min_stopping_set",
    "serialize",
]
