# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled peeling kernel. Contract identical to ``ticc._peel_py.peel_kernel``."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()


def peel_kernel(const cnp.int32_t[:, ::1] chk_adj,
                const cnp.int32_t[::1] var_ptr,
                const cnp.int32_t[::1] var_adj,
                cnp.uint8_t[::1] erased,
                bint lifo=False):
    cdef Py_ssize_t m = chk_adj.shape[0]
    cdef Py_ssize_t n = chk_adj.shape[1]
    if n > 255:
        raise ValueError("check degree above 255 is not supported")
    cdef Py_ssize_t cid, c2, j, e, head, tail, v = 0
    cdef long resolved = 0
    cdef int rounds = 0, dc, cnt

    cdef unsigned char *deg = <unsigned char *> malloc(m * sizeof(unsigned char))
    cdef int *depth = <int *> malloc(m * sizeof(int))
    # degrees only decrease, so each check is queued at most once
    cdef Py_ssize_t cap = m + 1
    cdef cnp.int32_t *work = <cnp.int32_t *> malloc(cap * sizeof(cnp.int32_t))
    if deg == NULL or depth == NULL or work == NULL:
        free(deg); free(depth); free(work)
        raise MemoryError()

    try:
        head = 0
        tail = 0
        with nogil:
            for cid in range(m):
                cnt = 0
                for j in range(n):
                    cnt += erased[chk_adj[cid, j]]
                deg[cid] = <unsigned char> cnt
                depth[cid] = 0
            if lifo:
                # pushed in descending id order so the stack pops ascending ids first
                cid = m - 1
                while cid >= 0:
                    if deg[cid] == 1:
                        depth[cid] = 1
                        work[tail] = <cnp.int32_t> cid
                        tail += 1
                    cid -= 1
            else:
                for cid in range(m):
                    if deg[cid] == 1:
                        depth[cid] = 1
                        work[tail] = <cnp.int32_t> cid
                        tail += 1

            while head < tail:
                if lifo:
                    tail -= 1
                    cid = work[tail]
                else:
                    cid = work[head]
                    head += 1
                if deg[cid] != 1:
                    continue
                for j in range(n):
                    v = chk_adj[cid, j]
                    if erased[v]:
                        break
                erased[v] = 0
                resolved += 1
                dc = depth[cid]
                if dc > rounds:
                    rounds = dc
                for e in range(var_ptr[v], var_ptr[v + 1]):
                    c2 = var_adj[e]
                    deg[c2] -= 1
                    if deg[c2] == 1:
                        depth[c2] = dc + 1
                        work[tail] = <cnp.int32_t> c2
                        tail += 1
    finally:
        free(deg)
        free(depth)
        free(work)
    return resolved, rounds
