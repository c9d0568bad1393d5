# cython: language_level=3, boundscheck=False, wraparound=False, nonecheck=False, cdivision=True
"""Compiled search kernels.

Twin of ``pure.py``: identical algorithm, identical results, identical node
counts.  Keep the two in lockstep.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memset


cdef long _extend(int k, int n, int* colours, int* order, int* parent,
                  int* img, char* used, list found) except -1:
    cdef int v, vb, u, col, iub, w, wb, j, x, ok
    cdef long nodes = 0
    if k == n:
        for u in range(n):
            iub = img[u] * n
            for v in range(n):
                if colours[u * n + v] != colours[iub + img[v]]:
                    return 0
        found.append(tuple([img[v] for v in range(n)]))
        return 0
    v = order[k]
    vb = v * n
    if k == 0:
        iub = 0
        col = -2  # unused in the root branch
    else:
        u = parent[v]
        col = colours[u * n + v]
        iub = img[u] * n
    for w in range(n):
        if k != 0 and colours[iub + w] != col:
            continue
        if used[w]:
            continue
        wb = w * n
        ok = 1
        for j in range(k):
            x = order[j]
            if colours[vb + x] != colours[wb + img[x]]:
                ok = 0
                break
        if not ok:
            continue
        img[v] = w
        used[w] = 1
        nodes += 1 + _extend(k + 1, n, colours, order, parent, img, used, found)
        used[w] = 0
        img[v] = -1
    return nodes


def search(int n, colours):
    """Compiled twin of ``pure.search``; see that docstring for the contract."""
    if n <= 0:
        raise ValueError("graph must have at least one vertex")
    cdef int* M = <int*> malloc(n * n * sizeof(int))
    cdef int* order = <int*> malloc(n * sizeof(int))
    cdef int* parent = <int*> malloc(n * sizeof(int))
    cdef int* img = <int*> malloc(n * sizeof(int))
    cdef char* used = <char*> malloc(n)
    cdef char* seen = <char*> malloc(n)
    cdef int i, qi, qlen, u, v, ub
    cdef long nodes
    found = []
    try:
        if M == NULL or order == NULL or parent == NULL or img == NULL \
                or used == NULL or seen == NULL:
            raise MemoryError()
        for i in range(n * n):
            M[i] = colours[i]
        # breadth-first order from vertex 0, neighbours ascending
        memset(seen, 0, n)
        memset(used, 0, n)
        order[0] = 0
        seen[0] = 1
        parent[0] = -1
        qi = 0
        qlen = 1
        while qi < qlen:
            u = order[qi]
            qi += 1
            ub = u * n
            for v in range(n):
                if M[ub + v] >= 0 and not seen[v]:
                    seen[v] = 1
                    parent[v] = u
                    order[qlen] = v
                    qlen += 1
        if qlen != n:
            raise ValueError("graph is not connected")
        for i in range(n):
            img[i] = -1
        nodes = _extend(0, n, M, order, parent, img, used, found)
    finally:
        free(M)
        free(order)
        free(parent)
        free(img)
        free(used)
        free(seen)
    found.sort()
    return found, nodes


def check_assoc(int n, table):
    """Compiled twin of ``pure.check_assoc``."""
    cdef int* T = <int*> malloc(n * n * sizeof(int))
    if not T:
        raise MemoryError()
    cdef int i, j, k, ib, jb, ijb
    cdef long bad = -1
    try:
        for i in range(n * n):
            T[i] = table[i]
        for i in range(n):
            ib = i * n
            for j in range(n):
                ijb = T[ib + j] * n
                jb = j * n
                for k in range(n):
                    if T[ijb + k] != T[ib + T[jb + k]]:
                        bad = (<long> i * n + j) * n + k
                        return bad
    finally:
        free(T)
    return bad
