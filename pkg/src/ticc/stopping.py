"""Minimum stopping-set size: closed-form lower bound and exact search."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .channel import erase
from .code_ensemble import check_parameters, memory
from .decode import is_stopping_set, peel
from .errors import BudgetExceeded, InvalidParameters
from .seeding import derive_seed
from .tanner import TannerGraph

DEFAULT_NODE_BUDGET = 5_000_000


def lemma_bound(n: int, k: int) -> int:
    """ceil(3**c / sqrt(2c)) with c = n - k, in exact integer arithmetic."""
    check_parameters(n, k, 1)
    c = n - k
    num = 9**c  # compare m**2 * 2c >= 3**(2c)
    m = math.isqrt(num // (2 * c))
    while m * m * 2 * c < num:
        m += 1
    while m > 1 and (m - 1) * (m - 1) * 2 * c >= num:
        m -= 1
    return m


@dataclass(frozen=True)
class StoppingSearchResult:
    found: tuple[int, ...] | None
    size_bound_proved: int
    nodes_expanded: int
    anchors: int
    scope: str


def _interior_anchor(graph: TannerGraph, max_size: int):
    """Centre payload position if every set grown from it stays in the payload."""
    W, L = graph.w, graph.stream_len
    reach = (max_size - 1) * max(graph.w - 1, 0)
    p0 = W + (L - 1 - reach) // 2
    if p0 >= W and p0 + reach <= W + L - 1:
        return p0
    return None


def search_min_stopping_set(
    graph: TannerGraph,
    max_size: int,
    scope: tuple[int, int] | None = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
    include_boundary: bool = False,
) -> StoppingSearchResult:
    """Branch-and-bound search for a smallest nonempty stopping set.

    Without ``scope`` the search uses shift invariance: every payload stopping
    set can be translated so that its least member (ordered by position, then
    stream) sits at one interior anchor position, so one anchor per stream is
    exhaustive for the whole payload. When the payload is too short for that,
    every payload position is an anchor instead. With ``scope=(lo, hi)`` every
    variable at positions ``lo..hi`` is an anchor and the result is exact for
    sets containing an anchored variable.

    Growth step: pick the check with exactly one member and the fewest
    admissible extensions, then branch on each extension, excluding the
    extensions already tried in earlier sibling branches.
    """
    if max_size < 1:
        raise InvalidParameters("max_size must be >= 1")
    spec = graph.spec
    n, c, W, L = spec.n, spec.c, graph.w, graph.stream_len

    passes = []  # (anchor positions, least-member pruning)
    if scope is None:
        p0 = _interior_anchor(graph, max_size)
        if p0 is not None:
            passes.append(([p0], True))
            label = f"interior anchor p={p0} (translation-exhaustive)"
        else:
            passes.append((list(range(W, W + L)), True))
            label = "all payload positions"
    else:
        lo, hi = scope
        if not (W <= lo <= hi < W + L):
            raise InvalidParameters(f"scope {scope} outside payload [{W}, {W + L - 1}]")
        passes.append((list(range(lo, hi + 1)), False))
        label = f"positions {lo}..{hi}"
    if include_boundary:
        edge = W + memory(spec)
        left = list(range(W, min(W + edge, W + L)))
        right = list(range(max(W + L - edge, W), W + L))
        passes.append((sorted(set(left) | set(right)), False))
        label += " + boundary pass"

    chk_adj = graph.chk_adj.tolist()
    ptr = graph.var_ptr.tolist()
    vadj = graph.var_adj.tolist()
    payload = graph.payload_mask()

    members: list[int] = []
    in_set: set[int] = set()
    forbidden: set[int] = set()
    count: dict[int, int] = {}
    violated: set[int] = set()
    best = {"size": max_size + 1, "set": None}
    nodes = 0
    # ids are position-major, so id order is (position, stream) order
    least = [None]  # smallest admissible id, or None

    def admissible(v):
        if v in in_set or v in forbidden or not payload[v]:
            return False
        return least[0] is None or v >= least[0]

    def add(v):
        members.append(v)
        in_set.add(v)
        for e in range(ptr[v], ptr[v + 1]):
            ch = vadj[e]
            cnt = count.get(ch, 0) + 1
            count[ch] = cnt
            if cnt == 1:
                violated.add(ch)
            elif cnt == 2:
                violated.discard(ch)

    def remove(v):
        members.pop()
        in_set.discard(v)
        for e in range(ptr[v], ptr[v + 1]):
            ch = vadj[e]
            cnt = count[ch] - 1
            count[ch] = cnt
            if cnt == 1:
                violated.add(ch)
            elif cnt == 0:
                violated.discard(ch)

    def grow():
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded(f"stopping-set search exceeded {node_budget} node expansions")
        if not violated:
            best["size"] = len(members)
            best["set"] = tuple(sorted(members))
            return
        if len(members) + -(-len(violated) // c) >= best["size"]:
            return
        pick = None
        for ch in violated:
            cands = [v for v in chk_adj[ch] if admissible(v)]
            if pick is None or len(cands) < len(pick):
                pick = cands
                if not cands:
                    return
        tried = []
        for v in pick:
            add(v)
            grow()
            remove(v)
            forbidden.add(v)
            tried.append(v)
            if len(members) + 1 >= best["size"]:
                break
        for v in tried:
            forbidden.discard(v)

    anchors = 0
    for positions, prune_least in passes:
        for p in positions:
            for j in range(n):
                v = p * n + j
                anchors += 1
                least[0] = v if prune_least else None
                add(v)
                grow()
                remove(v)

    found = best["set"]
    bound = len(found) if found is not None else max_size + 1
    return StoppingSearchResult(found, bound, nodes, anchors, label)


def sample_stopping_sets(graph: TannerGraph, epsilon_high: float, trials: int, seed) -> Counter:
    """Multiset of nonempty peeling residual sizes over random erasure patterns.

    Each residual is a stopping set, so the smallest size seen is an upper
    bound on the code's minimum stopping-set size.
    """
    sizes: Counter = Counter()
    for t in range(trials):
        pattern = erase(graph, epsilon_high, derive_seed(seed, "stopping-sample", t))
        res = peel(graph, pattern)
        if res.residual.size:
            sizes[int(res.residual.size)] += 1
    return sizes


def verify_found(graph: TannerGraph, result: StoppingSearchResult) -> bool:
    return result.found is None or is_stopping_set(graph, np.array(result.found))
