"""Pure-Python peeling kernel; same contract as the compiled ``_peel`` module."""

from collections import deque

import numpy as np


def peel_kernel(chk_adj, var_ptr, var_adj, erased, lifo=False):
    """Peel in place.

    ``erased`` is a writable uint8 array; on return it holds the residual.
    Returns ``(resolved, rounds)``; ``rounds`` is the depth of the deepest
    resolving check, counting checks that start at degree one as depth 1.
    """
    m, n = chk_adj.shape
    adj = chk_adj.tolist()
    ptr = var_ptr.tolist()
    vadj = var_adj.tolist()
    er = erased.tolist()

    deg = [0] * m
    for cid in range(m):
        row = adj[cid]
        cnt = 0
        for v in row:
            cnt += er[v]
        deg[cid] = cnt

    depth = [0] * m
    start = [cid for cid in range(m) if deg[cid] == 1]
    if lifo:
        work = start[::-1]
        pop = work.pop
    else:
        work = deque(start)
        pop = work.popleft
    for cid in start:
        depth[cid] = 1

    resolved = 0
    rounds = 0
    push = work.append
    while work:
        cid = pop()
        if deg[cid] != 1:
            continue
        for v in adj[cid]:
            if er[v]:
                break
        er[v] = 0
        resolved += 1
        dc = depth[cid]
        if dc > rounds:
            rounds = dc
        for e in range(ptr[v], ptr[v + 1]):
            c2 = vadj[e]
            deg[c2] -= 1
            if deg[c2] == 1:
                depth[c2] = dc + 1
                push(c2)

    erased[:] = np.asarray(er, dtype=np.uint8)
    return resolved, rounds
